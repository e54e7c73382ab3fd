#include "levy/harness.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <sstream>
#include <thread>

#include "levy/errors.hpp"
#include "json.hpp"

namespace levy {

namespace {

constexpr double kLog2e = 1.4426950408889634;

std::string fmt17(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

}  // namespace

CodecParams harness_params(const LevyTriplet& t, double eps, double p,
                           Mode mode, double c1, double c2) {
  CodecParams params;
  params.eps = eps;
  params.b_eps = drift_compensation(t, eps);
  double m = f1(t, eps);
  params.m = m > 0.0 ? m : 1.0;  // the zero process still needs one box
  params.p = p;
  if (mode == Mode::Quantization)
    params.truncation = Truncation{c1, c2, f_total_bits(t, eps)};
  return params;
}

TrialResult roundtrip_trial(const LevyTriplet& t, double eps,
                            const SimConfig& sim, double p, Mode mode,
                            double c1, double c2, std::uint64_t stream_seed,
                            double eps_min) {
  SimConfig local = sim;
  local.seed = stream_seed;
  CadlagPath path = simulate(t, local, eps_min);
  CodecParams params = harness_params(t, eps, p, mode, c1, c2);

  EncodeResult enc = mode == Mode::Entropy ? encode_path(path, params)
                                           : encode_truncated(path, params);
  Reconstruction rec = decode(enc.stream, params, enc.truncated_to_zero);
  CadlagPath decoded = rec.to_path(path.grid_step());

  TrialResult out;
  out.bits = enc.stream.size();
  out.error_lp = lp_distance(path, decoded, p);
  out.truncated = enc.truncated_to_zero;

  const double tol = sim_tolerance(path.grid_step());
  if (mode == Mode::Entropy) {
    double bound = audit_bit_bound(enc.records, params, enc.records.size());
    out.certificate_ok = static_cast<double>(out.bits) <= bound &&
                         out.error_lp <= 3.0 * eps + tol;
  } else {
    // Quantization certificate: the deterministic budget always holds; the
    // distortion bound applies only to non-truncated replicas.
    out.certificate_ok =
        static_cast<double>(out.bits) <= worst_case_bits(params) &&
        (out.truncated || out.error_lp <= 3.0 * eps + tol);
  }
  return out;
}

namespace {

void validate_config(const ExperimentConfig& cfg) {
  if (cfg.eps_grid.empty()) throw DomainError("sweep: empty eps grid");
  for (std::size_t i = 0; i < cfg.eps_grid.size(); ++i) {
    if (!(cfg.eps_grid[i] > 0.0)) throw DomainError("sweep: eps must be > 0");
    if (i > 0 && !(cfg.eps_grid[i] < cfg.eps_grid[i - 1]))
      throw DomainError("sweep: eps grid must be sorted descending");
  }
  if (cfg.replicas < 1) throw DomainError("sweep: replicas must be >= 1");
  if (!(cfg.p >= 1.0)) throw DomainError("sweep: p must be >= 1");
}

}  // namespace

std::vector<RDPoint> sweep(const ExperimentConfig& cfg) {
  validate_config(cfg);
  const double eps_min = cfg.eps_grid.back();
  const std::size_t points = cfg.eps_grid.size();
  const std::size_t total = points * static_cast<std::size_t>(cfg.replicas);

  struct Slot {
    TrialResult result;
    bool failed = false;
  };
  std::vector<Slot> slots(total);

  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    while (true) {
      std::size_t k = next.fetch_add(1);
      if (k >= total) break;
      std::size_t point = k / cfg.replicas;
      std::uint64_t stream_seed = derive_stream_seed(cfg.sim.seed, k);
      try {
        slots[k].result =
            roundtrip_trial(cfg.triplet, cfg.eps_grid[point], cfg.sim, cfg.p,
                            cfg.mode, cfg.c1, cfg.c2, stream_seed, eps_min);
      } catch (const std::exception&) {
        slots[k].failed = true;
      }
    }
  };

  unsigned n_threads = cfg.threads > 0
                           ? static_cast<unsigned>(cfg.threads)
                           : std::max(1u, std::thread::hardware_concurrency());
  n_threads = std::min<unsigned>(n_threads, static_cast<unsigned>(total));
  if (n_threads <= 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    pool.reserve(n_threads);
    for (unsigned i = 0; i < n_threads; ++i) pool.emplace_back(worker);
    for (auto& th : pool) th.join();
  }

  std::size_t failed_total = 0;
  std::vector<RDPoint> out;
  out.reserve(points);
  for (std::size_t point = 0; point < points; ++point) {
    const double eps = cfg.eps_grid[point];
    RDPoint rd;
    rd.eps = eps;
    rd.f1 = f1(cfg.triplet, eps);
    rd.f2 = f2(cfg.triplet, eps);
    rd.f_total = rd.f1 + rd.f2;
    rd.tol = sim_tolerance(cfg.sim.grid_step);

    double bit_sum = 0.0, err_sum = 0.0;
    // Deterministic fold in replica-index order.
    for (int r = 0; r < cfg.replicas; ++r) {
      const Slot& slot = slots[point * cfg.replicas + r];
      if (slot.failed) {
        ++failed_total;
        continue;
      }
      const TrialResult& tr = slot.result;
      bit_sum += static_cast<double>(tr.bits);
      err_sum += tr.error_lp;
      rd.max_bits = std::max(rd.max_bits, static_cast<double>(tr.bits));
      rd.max_error_lp = std::max(rd.max_error_lp, tr.error_lp);
      if (tr.truncated) ++rd.truncated_count;
      if (!tr.certificate_ok) ++rd.certificate_failures;
      ++rd.replicas;
    }
    if (rd.replicas > 0) {
      rd.mean_bits = bit_sum / rd.replicas;
      rd.mean_error_lp = err_sum / rd.replicas;
    }
    if (cfg.mode == Mode::Quantization) {
      // The quantization-constraint rate is the deterministic codebook budget.
      CodecParams params = harness_params(cfg.triplet, eps, cfg.p, cfg.mode,
                                          cfg.c1, cfg.c2);
      rd.max_bits = worst_case_bits(params);
    }
    out.push_back(rd);
  }
  if (failed_total * 100 > total)
    throw std::runtime_error("sweep: more than 1% of replicas failed (" +
                             std::to_string(failed_total) + "/" +
                             std::to_string(total) + ")");
  return out;
}

SlopeFit slope_fit(const std::vector<std::pair<double, double>>& points) {
  if (points.size() < 3) throw DomainError("slope_fit: need at least 3 points");
  double sx = 0.0, sy = 0.0;
  const double n = static_cast<double>(points.size());
  std::vector<std::pair<double, double>> logs;
  logs.reserve(points.size());
  for (const auto& [x, y] : points) {
    if (!(x > 0.0) || !(y > 0.0))
      throw DomainError("slope_fit: coordinates must be positive");
    logs.emplace_back(std::log(x), std::log(y));
    sx += logs.back().first;
    sy += logs.back().second;
  }
  const double mx = sx / n, my = sy / n;
  double sxx = 0.0, sxy = 0.0, syy = 0.0;
  for (const auto& [lx, ly] : logs) {
    sxx += (lx - mx) * (lx - mx);
    sxy += (lx - mx) * (ly - my);
    syy += (ly - my) * (ly - my);
  }
  if (sxx <= 0.0) throw DomainError("slope_fit: degenerate abscissa");
  SlopeFit fit;
  fit.slope = sxy / sxx;
  fit.intercept = my - fit.slope * mx;
  double ss_res = syy - fit.slope * sxy;
  fit.r2 = syy > 0.0 ? 1.0 - ss_res / syy : 1.0;
  return fit;
}

std::vector<TheoryRow> theory_curves(const LevyTriplet& t,
                                     const std::vector<double>& eps_grid,
                                     const TheoryParams& params) {
  std::vector<TheoryRow> rows;
  rows.reserve(eps_grid.size());
  for (double eps : eps_grid) {
    TheoryRow row;
    row.eps = eps;
    row.f1 = f1(t, eps);
    row.f2 = f2(t, eps);
    row.f_total = row.f1 + row.f2;
    if (tail_mass(t, eps) > 0.0 && std::isfinite(row.f2))
      row.f2_bound = lower_bound_f2(t, eps, params.c);
    if (f1(t, 2.0 * eps) >= 18.0)
      row.f1_bound =
          lower_bound_f1(t, eps, params.r0, params.c_user, params.p);
    rows.push_back(row);
  }
  return rows;
}

std::string rd_points_to_csv(const std::vector<RDPoint>& points) {
  std::ostringstream out;
  out << "eps,mean_bits,max_bits,mean_error_lp,max_error_lp,f1,f2,f_total,"
         "replicas,tol,truncated_count,certificate_failures\n";
  for (const auto& p : points) {
    out << fmt17(p.eps) << ',' << fmt17(p.mean_bits) << ',' << fmt17(p.max_bits)
        << ',' << fmt17(p.mean_error_lp) << ',' << fmt17(p.max_error_lp) << ','
        << fmt17(p.f1) << ',' << fmt17(p.f2) << ',' << fmt17(p.f_total) << ','
        << p.replicas << ',' << fmt17(p.tol) << ',' << p.truncated_count << ','
        << p.certificate_failures << '\n';
  }
  return out.str();
}

std::vector<RDPoint> rd_points_from_csv(const std::string& text) {
  std::istringstream in(text);
  std::string line;
  if (!std::getline(in, line)) throw MalformedStream("RD CSV: empty");
  std::vector<RDPoint> out;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    RDPoint p;
    long long replicas = 0;
    if (std::sscanf(line.c_str(),
                    "%lf,%lf,%lf,%lf,%lf,%lf,%lf,%lf,%lld,%lf,%lld,%lld",
                    &p.eps, &p.mean_bits, &p.max_bits, &p.mean_error_lp,
                    &p.max_error_lp, &p.f1, &p.f2, &p.f_total, &replicas,
                    &p.tol, &p.truncated_count,
                    &p.certificate_failures) != 12)
      throw MalformedStream("RD CSV: bad row: " + line);
    p.replicas = static_cast<int>(replicas);
    out.push_back(p);
  }
  return out;
}

std::string theory_rows_to_csv(const std::vector<TheoryRow>& rows) {
  std::ostringstream out;
  out << "eps,kind,rate_nats,rate_bits,distortion_lb,degenerate,f1,f2,f_total\n";
  auto emit = [&](double eps, const TheoryRow& row, const LowerBoundPoint& b) {
    out << fmt17(eps) << ','
        << (b.kind == LowerBoundPoint::Kind::F2Bound ? "F2Bound" : "F1Bound")
        << ',' << fmt17(b.rate_nats) << ',' << fmt17(b.rate_nats * kLog2e)
        << ',' << fmt17(b.distortion_lb) << ',' << (b.degenerate ? 1 : 0) << ','
        << fmt17(row.f1) << ',' << fmt17(row.f2) << ',' << fmt17(row.f_total)
        << '\n';
  };
  for (const auto& row : rows) {
    if (row.f2_bound) emit(row.eps, row, *row.f2_bound);
    if (row.f1_bound) emit(row.eps, row, *row.f1_bound);
  }
  return out.str();
}

namespace {

using nlohmann::json;

}  // namespace

ExperimentConfig config_from_json(const std::string& json_text) {
  json j;
  try {
    j = json::parse(json_text);
  } catch (const json::exception& e) {
    throw DomainError(std::string("config JSON parse error: ") + e.what());
  }
  try {
    ExperimentConfig cfg{triplet_from_json(j.at("triplet").dump()),
                         j.at("eps_grid").get<std::vector<double>>()};
    cfg.replicas = j.value("replicas", 1);
    cfg.p = j.value("p", 1.0);
    std::string mode = j.value("mode", std::string("entropy"));
    if (mode == "entropy")
      cfg.mode = Mode::Entropy;
    else if (mode == "quantization" || mode == "quant")
      cfg.mode = Mode::Quantization;
    else
      throw DomainError("config: unknown mode " + mode);
    cfg.c1 = j.value("c1", 8.0);
    cfg.c2 = j.value("c2", 8.0);
    cfg.threads = j.value("threads", 0);
    if (j.contains("sim")) {
      const json& s = j.at("sim");
      cfg.sim.grid_step = s.value("grid_step", 0x1p-14);
      cfg.sim.small_jump_cutoff_ratio = s.value("cutoff_ratio", 0.01);
      cfg.sim.seed = s.value("seed", std::uint64_t{0});
    }
    return cfg;
  } catch (const json::exception& e) {
    throw DomainError(std::string("config JSON schema error: ") + e.what());
  }
}

std::string config_to_json(const ExperimentConfig& cfg) {
  json j;
  j["triplet"] = json::parse(triplet_to_json(cfg.triplet));
  j["eps_grid"] = cfg.eps_grid;
  j["replicas"] = cfg.replicas;
  j["p"] = cfg.p;
  j["mode"] = cfg.mode == Mode::Entropy ? "entropy" : "quantization";
  j["c1"] = cfg.c1;
  j["c2"] = cfg.c2;
  j["threads"] = cfg.threads;
  j["sim"] = {{"grid_step", cfg.sim.grid_step},
              {"cutoff_ratio", cfg.sim.small_jump_cutoff_ratio},
              {"seed", cfg.sim.seed}};
  return j.dump(2);
}

}  // namespace levy
