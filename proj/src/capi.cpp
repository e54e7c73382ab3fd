#include "levycodec.h"

#include <cstring>
#include <new>
#include <string>

#include "levy/container.hpp"
#include "levy/errors.hpp"
#include "levy/harness.hpp"
#include "json.hpp"

namespace {

thread_local std::string g_last_error;

char* dup_string(const std::string& s) {
  char* out = new char[s.size() + 1];
  std::memcpy(out, s.c_str(), s.size() + 1);
  return out;
}

lvc_status record_error(const std::exception& e, lvc_status code) {
  g_last_error = e.what();
  return code;
}

template <typename Fn>
lvc_status guarded(Fn&& fn) {
  try {
    fn();
    return LVC_OK;
  } catch (const levy::DomainError& e) {
    return record_error(e, LVC_ERR_DOMAIN);
  } catch (const levy::QuadratureError& e) {
    return record_error(e, LVC_ERR_QUADRATURE);
  } catch (const levy::ResolutionError& e) {
    return record_error(e, LVC_ERR_RESOLUTION);
  } catch (const levy::MalformedStream& e) {
    return record_error(e, LVC_ERR_MALFORMED);
  } catch (const std::bad_alloc& e) {
    return record_error(e, LVC_ERR_INTERNAL);
  } catch (const std::exception& e) {
    return record_error(e, LVC_ERR_INTERNAL);
  }
}

levy::EvalMethod method_of(int method) {
  return method == 1 ? levy::EvalMethod::Quadrature : levy::EvalMethod::Auto;
}

}  // namespace

struct lvc_triplet {
  levy::LevyTriplet value;
};

struct lvc_path {
  levy::CadlagPath value;
};

extern "C" {

const char* lvc_last_error(void) { return g_last_error.c_str(); }

lvc_triplet* lvc_triplet_from_json(const char* json_text) {
  lvc_triplet* out = nullptr;
  lvc_status rc = guarded([&] {
    if (json_text == nullptr) throw levy::DomainError("null json_text");
    out = new lvc_triplet{levy::triplet_from_json(json_text)};
  });
  return rc == LVC_OK ? out : nullptr;
}

lvc_status lvc_triplet_to_json(const lvc_triplet* t, char** out_json) {
  return guarded([&] {
    if (t == nullptr || out_json == nullptr)
      throw levy::DomainError("null argument");
    *out_json = dup_string(levy::triplet_to_json(t->value));
  });
}

void lvc_triplet_free(lvc_triplet* t) { delete t; }
void lvc_string_free(char* s) { delete[] s; }

#define LVC_FUNCTIONAL(NAME, EXPR)                                        \
  lvc_status NAME {                                                       \
    return guarded([&] {                                                  \
      if (t == nullptr || out == nullptr)                                 \
        throw levy::DomainError("null argument");                         \
      *out = (EXPR);                                                      \
    });                                                                   \
  }

LVC_FUNCTIONAL(lvc_tail_mass(const lvc_triplet* t, double eps, int method,
                             double* out),
               levy::tail_mass(t->value, eps, method_of(method)))
LVC_FUNCTIONAL(lvc_f1(const lvc_triplet* t, double eps, int method, double* out),
               levy::f1(t->value, eps, method_of(method)))
LVC_FUNCTIONAL(lvc_f2(const lvc_triplet* t, double eps, int method, double* out),
               levy::f2(t->value, eps, method_of(method)))
LVC_FUNCTIONAL(lvc_f_total(const lvc_triplet* t, double eps, int method,
                           double* out),
               levy::f_total(t->value, eps, method_of(method)))
LVC_FUNCTIONAL(lvc_drift_compensation(const lvc_triplet* t, double eps,
                                      int method, double* out),
               levy::drift_compensation(t->value, eps, method_of(method)))
LVC_FUNCTIONAL(lvc_moment_diag(const lvc_triplet* t, double q, double* out),
               levy::moment_diag(t->value, q))
LVC_FUNCTIONAL(lvc_condition_b_ratio(const lvc_triplet* t, double mu,
                                     double eps, double* out),
               levy::condition_b_ratio(t->value, mu, eps))

#undef LVC_FUNCTIONAL

lvc_status lvc_simulate(const lvc_triplet* t, double grid_step,
                        double cutoff_ratio, uint64_t seed, double eps_min,
                        lvc_path** out) {
  return guarded([&] {
    if (t == nullptr || out == nullptr)
      throw levy::DomainError("null argument");
    levy::SimConfig cfg;
    cfg.grid_step = grid_step;
    cfg.small_jump_cutoff_ratio = cutoff_ratio;
    cfg.seed = seed;
    *out = new lvc_path{levy::simulate(t->value, cfg, eps_min)};
  });
}

lvc_status lvc_path_value_at(const lvc_path* path, double time, double* out) {
  return guarded([&] {
    if (path == nullptr || out == nullptr)
      throw levy::DomainError("null argument");
    *out = path->value.value_at(time);
  });
}

lvc_status lvc_lp_distance(const lvc_path* a, const lvc_path* b, double p,
                           double* out) {
  return guarded([&] {
    if (a == nullptr || b == nullptr || out == nullptr)
      throw levy::DomainError("null argument");
    *out = levy::lp_distance(a->value, b->value, p);
  });
}

lvc_status lvc_path_to_csv(const lvc_path* path, char** out_csv) {
  return guarded([&] {
    if (path == nullptr || out_csv == nullptr)
      throw levy::DomainError("null argument");
    *out_csv = dup_string(path->value.to_csv());
  });
}

lvc_path* lvc_path_from_csv(const char* csv_text) {
  lvc_path* out = nullptr;
  lvc_status rc = guarded([&] {
    if (csv_text == nullptr) throw levy::DomainError("null csv_text");
    out = new lvc_path{levy::CadlagPath::from_csv(csv_text)};
  });
  return rc == LVC_OK ? out : nullptr;
}

void lvc_path_free(lvc_path* path) { delete path; }

void lvc_buffer_free(lvc_buffer* buf) {
  if (buf != nullptr) {
    delete[] buf->data;
    buf->data = nullptr;
    buf->size = 0;
  }
}

lvc_status lvc_encode(const lvc_path* path, const lvc_triplet* t, double eps,
                      double p, int mode, double c1, double c2,
                      lvc_buffer* out) {
  return guarded([&] {
    if (path == nullptr || t == nullptr || out == nullptr)
      throw levy::DomainError("null argument");
    levy::Mode m = mode == 1 ? levy::Mode::Quantization : levy::Mode::Entropy;
    levy::CodecParams params = levy::harness_params(t->value, eps, p, m, c1, c2);
    levy::EncodeResult enc = m == levy::Mode::Entropy
                                 ? levy::encode_path(path->value, params)
                                 : levy::encode_truncated(path->value, params);
    levy::Container c;
    c.eps = params.eps;
    c.b_eps = params.b_eps;
    c.m = params.m;
    c.p = params.p;
    c.truncated_to_zero = enc.truncated_to_zero;
    c.payload = enc.stream;
    std::vector<uint8_t> bytes = levy::container_write(c);
    out->data = new uint8_t[bytes.size()];
    out->size = bytes.size();
    std::memcpy(out->data, bytes.data(), bytes.size());
  });
}

lvc_status lvc_decode(const uint8_t* data, size_t size, double grid_step,
                      lvc_path** out) {
  return guarded([&] {
    if (data == nullptr || out == nullptr)
      throw levy::DomainError("null argument");
    levy::Container c =
        levy::container_read(std::vector<uint8_t>(data, data + size));
    levy::CodecParams params{c.eps, c.b_eps, c.m, c.p, std::nullopt};
    levy::Reconstruction rec =
        levy::decode(c.payload, params, c.truncated_to_zero);
    *out = new lvc_path{rec.to_path(grid_step)};
  });
}

lvc_status lvc_roundtrip(const lvc_triplet* t, double eps, double grid_step,
                         double cutoff_ratio, double p, int mode, double c1,
                         double c2, uint64_t seed, double eps_min,
                         uint64_t* out_bits, double* out_error,
                         int* out_certificate_ok, int* out_truncated) {
  return guarded([&] {
    if (t == nullptr) throw levy::DomainError("null triplet");
    levy::SimConfig cfg;
    cfg.grid_step = grid_step;
    cfg.small_jump_cutoff_ratio = cutoff_ratio;
    levy::Mode m = mode == 1 ? levy::Mode::Quantization : levy::Mode::Entropy;
    levy::TrialResult tr =
        levy::roundtrip_trial(t->value, eps, cfg, p, m, c1, c2, seed, eps_min);
    if (out_bits != nullptr) *out_bits = tr.bits;
    if (out_error != nullptr) *out_error = tr.error_lp;
    if (out_certificate_ok != nullptr)
      *out_certificate_ok = tr.certificate_ok ? 1 : 0;
    if (out_truncated != nullptr) *out_truncated = tr.truncated ? 1 : 0;
  });
}

lvc_status lvc_sweep(const char* config_json, char** out_csv,
                     char** out_summary) {
  return guarded([&] {
    if (config_json == nullptr) throw levy::DomainError("null config");
    levy::ExperimentConfig cfg = levy::config_from_json(config_json);
    std::vector<levy::RDPoint> points = levy::sweep(cfg);
    if (out_csv != nullptr) *out_csv = dup_string(levy::rd_points_to_csv(points));
    if (out_summary != nullptr) {
      nlohmann::json summary;
      summary["points"] = points.size();
      long long truncated = 0, cert_failures = 0, replicas = 0;
      for (const auto& pt : points) {
        truncated += pt.truncated_count;
        cert_failures += pt.certificate_failures;
        replicas += pt.replicas;
      }
      summary["replicas_total"] = replicas;
      summary["truncated_total"] = truncated;
      summary["certificate_failures"] = cert_failures;
      summary["all_certificates_ok"] = cert_failures == 0;
      *out_summary = dup_string(summary.dump(2));
    }
  });
}

lvc_status lvc_theory_curves(const lvc_triplet* t, const double* eps_grid,
                             size_t n_eps, double c, double r0, double c_user,
                             double p, char** out_csv) {
  return guarded([&] {
    if (t == nullptr || eps_grid == nullptr || out_csv == nullptr)
      throw levy::DomainError("null argument");
    std::vector<double> grid(eps_grid, eps_grid + n_eps);
    levy::TheoryParams params{c, r0, c_user, p};
    *out_csv =
        dup_string(levy::theory_rows_to_csv(levy::theory_curves(t->value, grid, params)));
  });
}

lvc_status lvc_slope_fit(const double* x, const double* y, size_t n,
                         double* out_slope, double* out_intercept,
                         double* out_r2) {
  return guarded([&] {
    if (x == nullptr || y == nullptr) throw levy::DomainError("null argument");
    std::vector<std::pair<double, double>> pts;
    pts.reserve(n);
    for (size_t i = 0; i < n; ++i) pts.emplace_back(x[i], y[i]);
    levy::SlopeFit fit = levy::slope_fit(pts);
    if (out_slope != nullptr) *out_slope = fit.slope;
    if (out_intercept != nullptr) *out_intercept = fit.intercept;
    if (out_r2 != nullptr) *out_r2 = fit.r2;
  });
}

}  // extern "C"
