// levyc — command-line front end over the levycodec C API.
//
// Subcommands: simulate, encode, decode, roundtrip, sweep, theory, slopes.
// Exit code 0 only when every certificate of the run passes.

#include <cstdint>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "levycodec.h"

namespace {

using nlohmann::json;
namespace fs = std::filesystem;

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open " + path);
  std::ostringstream out;
  out << in.rdbuf();
  return out.str();
}

void write_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + path);
  out << content;
}

[[noreturn]] void fail_api(const std::string& what) {
  throw std::runtime_error(what + ": " + lvc_last_error());
}

struct ManagedString {
  char* ptr = nullptr;
  ~ManagedString() { lvc_string_free(ptr); }
  std::string str() const { return ptr != nullptr ? std::string(ptr) : std::string(); }
};

struct ManagedTriplet {
  lvc_triplet* ptr = nullptr;
  ~ManagedTriplet() { lvc_triplet_free(ptr); }
};

struct ManagedPath {
  lvc_path* ptr = nullptr;
  ~ManagedPath() { lvc_path_free(ptr); }
};

struct CommonFlags {
  std::string config;
  std::optional<std::uint64_t> seed;
  std::optional<int> replicas;
  std::optional<std::string> mode;
  std::string out = ".";
};

json load_config(const CommonFlags& flags) {
  json cfg = json::parse(read_file(flags.config));
  if (flags.seed) cfg["sim"]["seed"] = *flags.seed;
  if (flags.replicas) cfg["replicas"] = *flags.replicas;
  if (flags.mode)
    cfg["mode"] = *flags.mode == "quant" ? "quantization" : *flags.mode;
  return cfg;
}

void add_common(CLI::App* cmd, CommonFlags& flags, bool needs_config = true) {
  auto* opt = cmd->add_option("--config", flags.config,
                              "experiment config JSON file");
  if (needs_config) opt->required();
  cmd->add_option("--seed", flags.seed, "override the RNG seed");
  cmd->add_option("--replicas", flags.replicas, "override the replica count");
  cmd->add_option("--mode", flags.mode, "entropy|quant")
      ->check(CLI::IsMember({"entropy", "quant", "quantization"}));
  cmd->add_option("--out", flags.out, "output directory");
}

ManagedTriplet triplet_of(const json& cfg) {
  ManagedTriplet t;
  t.ptr = lvc_triplet_from_json(cfg.at("triplet").dump().c_str());
  if (t.ptr == nullptr) fail_api("triplet");
  return t;
}

struct SimSettings {
  double grid_step;
  double cutoff_ratio;
  std::uint64_t seed;
  double eps_min;
};

SimSettings sim_settings(const json& cfg) {
  SimSettings s{0x1p-14, 0.01, 0, 0.0};
  if (cfg.contains("sim")) {
    const json& sim = cfg.at("sim");
    s.grid_step = sim.value("grid_step", s.grid_step);
    s.cutoff_ratio = sim.value("cutoff_ratio", s.cutoff_ratio);
    s.seed = sim.value("seed", s.seed);
  }
  auto grid = cfg.at("eps_grid").get<std::vector<double>>();
  if (grid.empty()) throw std::runtime_error("config: empty eps_grid");
  s.eps_min = grid.back();
  return s;
}

int mode_of(const json& cfg) {
  return cfg.value("mode", std::string("entropy")) == "entropy" ? 0 : 1;
}

// --- subcommand bodies ----------------------------------------------------

int run_simulate(const CommonFlags& flags) {
  json cfg = load_config(flags);
  ManagedTriplet t = triplet_of(cfg);
  SimSettings s = sim_settings(cfg);
  ManagedPath path;
  if (lvc_simulate(t.ptr, s.grid_step, s.cutoff_ratio, s.seed, s.eps_min,
                   &path.ptr) != LVC_OK)
    fail_api("simulate");
  ManagedString csv;
  if (lvc_path_to_csv(path.ptr, &csv.ptr) != LVC_OK) fail_api("path_to_csv");
  fs::create_directories(flags.out);
  std::string out_path = (fs::path(flags.out) / "path.csv").string();
  write_file(out_path, csv.str());
  std::cout << "wrote " << out_path << "\n";
  return 0;
}

int run_encode(const CommonFlags& flags, const std::string& in_file,
               std::optional<double> eps_opt) {
  json cfg = load_config(flags);
  ManagedTriplet t = triplet_of(cfg);
  double eps = eps_opt ? *eps_opt
                       : cfg.at("eps_grid").get<std::vector<double>>().front();
  double p = cfg.value("p", 1.0);
  int mode = mode_of(cfg);
  double c1 = cfg.value("c1", 8.0), c2 = cfg.value("c2", 8.0);

  ManagedPath path;
  path.ptr = lvc_path_from_csv(read_file(in_file).c_str());
  if (path.ptr == nullptr) fail_api("path_from_csv");

  lvc_buffer buf{nullptr, 0};
  if (lvc_encode(path.ptr, t.ptr, eps, p, mode, c1, c2, &buf) != LVC_OK)
    fail_api("encode");
  fs::create_directories(flags.out);
  std::string out_path = (fs::path(flags.out) / "stream.lvc").string();
  std::ofstream out(out_path, std::ios::binary);
  out.write(reinterpret_cast<const char*>(buf.data),
            static_cast<std::streamsize>(buf.size));
  lvc_buffer_free(&buf);
  std::cout << "wrote " << out_path << "\n";
  return 0;
}

int run_decode(const CommonFlags& flags, const std::string& in_file,
               double grid_step) {
  std::string bytes = read_file(in_file);
  ManagedPath path;
  if (lvc_decode(reinterpret_cast<const uint8_t*>(bytes.data()), bytes.size(),
                 grid_step, &path.ptr) != LVC_OK)
    fail_api("decode");
  ManagedString csv;
  if (lvc_path_to_csv(path.ptr, &csv.ptr) != LVC_OK) fail_api("path_to_csv");
  fs::create_directories(flags.out);
  std::string out_path = (fs::path(flags.out) / "decoded.csv").string();
  write_file(out_path, csv.str());
  std::cout << "wrote " << out_path << "\n";
  return 0;
}

int run_roundtrip(const CommonFlags& flags, std::optional<double> eps_opt) {
  json cfg = load_config(flags);
  ManagedTriplet t = triplet_of(cfg);
  SimSettings s = sim_settings(cfg);
  double eps = eps_opt ? *eps_opt
                       : cfg.at("eps_grid").get<std::vector<double>>().front();
  std::uint64_t bits = 0;
  double error = 0.0;
  int cert = 0, truncated = 0;
  if (lvc_roundtrip(t.ptr, eps, s.grid_step, s.cutoff_ratio,
                    cfg.value("p", 1.0), mode_of(cfg), cfg.value("c1", 8.0),
                    cfg.value("c2", 8.0), s.seed, s.eps_min, &bits, &error,
                    &cert, &truncated) != LVC_OK)
    fail_api("roundtrip");
  json result = {{"eps", eps},
                 {"bits", bits},
                 {"error_lp", error},
                 {"certificate_ok", cert != 0},
                 {"truncated", truncated != 0}};
  std::cout << result.dump(2) << "\n";
  return cert != 0 ? 0 : 1;
}

int run_sweep(const CommonFlags& flags) {
  json cfg = load_config(flags);
  ManagedString csv, summary;
  if (lvc_sweep(cfg.dump().c_str(), &csv.ptr, &summary.ptr) != LVC_OK)
    fail_api("sweep");
  fs::create_directories(flags.out);
  std::string csv_path = (fs::path(flags.out) / "rd.csv").string();
  std::string summary_path = (fs::path(flags.out) / "summary.json").string();
  write_file(csv_path, csv.str());
  write_file(summary_path, summary.str());
  std::cout << summary.str() << "\n";
  json s = json::parse(summary.str());
  return s.value("all_certificates_ok", false) ? 0 : 1;
}

int run_theory(const CommonFlags& flags) {
  json cfg = load_config(flags);
  ManagedTriplet t = triplet_of(cfg);
  auto grid = cfg.at("eps_grid").get<std::vector<double>>();
  json th = cfg.value("theory", json::object());
  ManagedString csv;
  if (lvc_theory_curves(t.ptr, grid.data(), grid.size(), th.value("c", 1.0),
                        th.value("r0", 0.3), th.value("c_user", 1.0),
                        cfg.value("p", 1.0), &csv.ptr) != LVC_OK)
    fail_api("theory_curves");
  fs::create_directories(flags.out);
  std::string out_path = (fs::path(flags.out) / "theory.csv").string();
  write_file(out_path, csv.str());
  std::cout << "wrote " << out_path << "\n";
  return 0;
}

int run_slopes(const std::string& in_file, const std::string& x_col,
               const std::string& y_col) {
  std::istringstream in(read_file(in_file));
  std::string header;
  if (!std::getline(in, header)) throw std::runtime_error("empty CSV");
  std::vector<std::string> cols;
  {
    std::istringstream hs(header);
    std::string c;
    while (std::getline(hs, c, ',')) cols.push_back(c);
  }
  auto col_index = [&](const std::string& name) -> int {
    for (std::size_t i = 0; i < cols.size(); ++i)
      if (cols[i] == name) return static_cast<int>(i);
    if (name == "inv_eps") return -1;  // derived column 1/eps
    throw std::runtime_error("column not found: " + name);
  };
  int xi = col_index(x_col), yi = col_index(y_col);
  int eps_i = col_index("eps");

  std::vector<double> xs, ys;
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    std::istringstream ls(line);
    std::vector<double> vals;
    std::string cell;
    while (std::getline(ls, cell, ',')) vals.push_back(std::stod(cell));
    auto value_of = [&](int idx) {
      return idx >= 0 ? vals.at(idx) : 1.0 / vals.at(eps_i);
    };
    xs.push_back(value_of(xi));
    ys.push_back(value_of(yi));
  }
  double slope = 0.0, intercept = 0.0, r2 = 0.0;
  if (lvc_slope_fit(xs.data(), ys.data(), xs.size(), &slope, &intercept,
                    &r2) != LVC_OK)
    fail_api("slope_fit");
  json result = {{"x", x_col}, {"y", y_col},     {"n", xs.size()},
                 {"slope", slope}, {"intercept", intercept}, {"r2", r2}};
  std::cout << result.dump(2) << "\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Lévy-path codec experiment harness"};
  app.require_subcommand(1);

  CommonFlags f_sim, f_enc, f_dec, f_rt, f_sweep, f_theory;
  std::string enc_in, dec_in, slopes_in;
  std::optional<double> enc_eps, rt_eps;
  double dec_grid_step = 0x1p-14;
  std::string slopes_x = "inv_eps", slopes_y = "mean_bits";

  auto* c_sim = app.add_subcommand("simulate", "sample one path to CSV");
  add_common(c_sim, f_sim);

  auto* c_enc = app.add_subcommand("encode", "encode a path CSV to LVC1");
  add_common(c_enc, f_enc);
  c_enc->add_option("--in", enc_in, "input path CSV")->required();
  c_enc->add_option("--eps", enc_eps, "resolution (default: first grid point)");

  auto* c_dec = app.add_subcommand("decode", "decode an LVC1 container");
  add_common(c_dec, f_dec, /*needs_config=*/false);
  c_dec->add_option("--in", dec_in, "input .lvc file")->required();
  c_dec->add_option("--grid-step", dec_grid_step, "grid step for the output path");

  auto* c_rt = app.add_subcommand("roundtrip", "simulate, encode, decode, measure");
  add_common(c_rt, f_rt);
  c_rt->add_option("--eps", rt_eps, "resolution (default: first grid point)");

  auto* c_sweep = app.add_subcommand("sweep", "Monte-Carlo sweep over the eps grid");
  add_common(c_sweep, f_sweep);

  auto* c_theory = app.add_subcommand("theory", "lower-bound curves CSV");
  add_common(c_theory, f_theory);

  auto* c_slopes = app.add_subcommand("slopes", "log-log slope fit on a sweep CSV");
  c_slopes->add_option("--in", slopes_in, "input rd.csv")->required();
  c_slopes->add_option("--x", slopes_x, "x column (or inv_eps)");
  c_slopes->add_option("--y", slopes_y, "y column");

  CLI11_PARSE(app, argc, argv);

  try {
    if (c_sim->parsed()) return run_simulate(f_sim);
    if (c_enc->parsed()) return run_encode(f_enc, enc_in, enc_eps);
    if (c_dec->parsed()) return run_decode(f_dec, dec_in, dec_grid_step);
    if (c_rt->parsed()) return run_roundtrip(f_rt, rt_eps);
    if (c_sweep->parsed()) return run_sweep(f_sweep);
    if (c_theory->parsed()) return run_theory(f_theory);
    if (c_slopes->parsed()) return run_slopes(slopes_in, slopes_x, slopes_y);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 2;
}
