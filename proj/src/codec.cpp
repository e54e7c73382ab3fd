#include "levy/codec.hpp"

#include <cmath>

#include "levy/codes.hpp"
#include "levy/errors.hpp"

namespace levy {

namespace {

void validate_params(const CodecParams& params) {
  if (!(params.eps > 0.0)) throw DomainError("codec: eps must be > 0");
  if (!(params.m > 0.0)) throw DomainError("codec: m must be > 0");
  if (!(params.p >= 1.0)) throw DomainError("codec: p must be >= 1");
}

long long box_count(double m) {
  return static_cast<long long>(std::ceil(m));
}

}  // namespace

double grid_project(double x, double eps) {
  if (!(eps > 0.0)) throw DomainError("grid_project: eps must be > 0");
  // std::round breaks ties away from zero, which is the tie rule we want.
  return eps * std::round(x / eps);
}

std::vector<ExitRecord> detect_exits(const CadlagPath& path_minus_drift,
                                     double eps) {
  if (!(eps > 0.0)) throw DomainError("detect_exits: eps must be > 0");
  const double d = path_minus_drift.drift_rate();
  const double band = 2.0 * eps;

  std::vector<ExitRecord> out;
  double anchor = 0.0;  // g(X'_{S_{i-1}}), a grid point; starts at g(0) = 0
  double x = 0.0;       // current value X'_t
  double t = 0.0;

  // Advance linearly to t_end, recording threshold crossings strictly before
  // it.  At a drift crossing the value hits anchor +- 2*eps exactly, which is
  // itself a grid point, so the new anchor equals the crossed level.
  auto drift_to = [&](double t_end) {
    if (d != 0.0) {
      while (true) {
        double target = d > 0.0 ? anchor + band : anchor - band;
        double dt = (target - x) / d;
        if (dt < 0.0) dt = 0.0;
        double s = t + dt;
        if (s >= t_end) break;
        out.push_back({s, target - anchor});
        anchor = target;
        x = target;
        t = s;
      }
    }
    x += d * (t_end - t);
    t = t_end;
  };

  for (const auto& e : path_minus_drift.events()) {
    drift_to(e.time);
    x += e.increment;
    if (std::abs(x - anchor) >= band) {
      double g = grid_project(x, eps);
      out.push_back({e.time, g - anchor});
      anchor = g;
    }
  }
  drift_to(1.0);
  return out;
}

namespace {

EncodeResult encode_exits(const std::vector<ExitRecord>& exits,
                          const CodecParams& params) {
  const double eps = params.eps;
  const long long mc = box_count(params.m);
  const std::size_t M = exits.size();

  EncodeResult result;
  result.records.reserve(M);
  std::size_t i = 0;
  for (long long j = 0; j < mc; ++j) {
    while (i < M && exits[i].s * mc < static_cast<double>(j + 1)) {
      const double S = exits[i].s;
      // Canonical quantized height: the exact grid differences can be off by
      // an ulp from hq*eps, and the decoder reconstructs hq*eps.
      const long long hq = std::llround(exits[i].h / eps);
      const double H = static_cast<double>(hq) * eps;
      const double S_next = (i + 1 < M) ? exits[i + 1].s : 1.0;
      const double precision =
          std::pow(eps, params.p) /
          (std::pow(std::abs(H), params.p) * static_cast<double>(M));
      const double D = std::min(S_next - S, precision);
      // The half factor keeps s_hat strictly below S_{i+1} even when the
      // dyadic round-up lands at the top of its admissible window.
      const double delta = 0.5 * mc * D;
      const int level = dyadic_level(delta);  // ResolutionError on underflow
      double r = S * mc - static_cast<double>(j);
      if (r < 0.0) r = 0.0;
      if (r > 1.0) r = 1.0;

      result.stream.append(false);  // jump marker
      result.stream.append(encode_integer(hq));
      // The decoder cannot recompute delta (it depends on S_{i+1}), so the
      // grid exponent is transmitted explicitly.
      result.stream.append(encode_integer(level + 1));
      DyadicCode dc = encode_dyadic_level(r, level);
      result.stream.append(dc.bits);

      result.records.push_back({S, (static_cast<double>(j) + dc.v) / mc, H});
      ++i;
    }
    result.stream.append(true);  // box terminator
  }
  return result;
}

}  // namespace

EncodeResult encode_path(const CadlagPath& path, const CodecParams& params) {
  validate_params(params);
  CadlagPath compensated(path.events(), path.drift_rate() - params.b_eps,
                         path.grid_step());
  return encode_exits(detect_exits(compensated, params.eps), params);
}

EncodeResult encode_truncated(const CadlagPath& path,
                              const CodecParams& params) {
  validate_params(params);
  if (!params.truncation)
    throw DomainError("encode_truncated: truncation thresholds missing");
  const Truncation& tr = *params.truncation;
  if (!std::isfinite(tr.f_eps_bits))
    throw DomainError("encode_truncated: F(eps) must be finite");

  CadlagPath compensated(path.events(), path.drift_rate() - params.b_eps,
                         path.grid_step());
  auto exits = detect_exits(compensated, params.eps);

  double height_complexity = 0.0;
  for (const auto& e : exits)
    height_complexity += std::log2(std::abs(e.h) / params.eps);

  // Strict inequality trips truncation; equality encodes normally.
  bool trip = static_cast<double>(exits.size()) > tr.c1 * tr.f_eps_bits ||
              height_complexity > tr.c2 * tr.f_eps_bits;
  if (!trip) {
    EncodeResult result = encode_exits(exits, params);
    if (static_cast<double>(result.stream.size()) <= worst_case_bits(params))
      return result;
    trip = true;  // third trigger: deterministic bit budget exceeded
  }
  EncodeResult zero;
  zero.stream.append(false);  // the 1-bit zero codeword
  zero.truncated_to_zero = true;
  return zero;
}

Reconstruction decode(const BitStream& stream, const CodecParams& params,
                      bool truncated_to_zero) {
  validate_params(params);
  Reconstruction rec;
  rec.b_eps = params.b_eps;
  rec.truncated_to_zero = truncated_to_zero;
  if (truncated_to_zero) {
    if (stream.size() != 1 || stream.bit(0))
      throw MalformedStream("decode: bad zero codeword");
    return rec;
  }

  BitReader in(stream);
  const long long mc = box_count(params.m);
  double prev_s_hat = 0.0;
  for (long long j = 0; j < mc; ++j) {
    while (!in.read()) {  // '0' introduces a jump, '1' closes the box
      long long hq = decode_integer(in);
      if (std::llabs(hq) < 2)
        throw MalformedStream("decode: height multiple below 2");
      long long level = decode_integer(in) - 1;
      if (level < 0 || level > 60)
        throw MalformedStream("decode: dyadic level out of range");
      double v = decode_dyadic_level(in, static_cast<int>(level));
      double s_hat = (static_cast<double>(j) + v) / mc;
      if (s_hat < prev_s_hat)
        throw MalformedStream("decode: jump times out of order");
      prev_s_hat = s_hat;
      rec.jumps.emplace_back(s_hat, static_cast<double>(hq) * params.eps);
    }
  }
  if (!in.exhausted()) throw MalformedStream("decode: trailing bits");
  return rec;
}

CadlagPath Reconstruction::to_path(double grid_step) const {
  std::vector<CadlagPath::Event> events;
  if (!truncated_to_zero) {
    for (const auto& [s_hat, h] : jumps) {
      if (s_hat >= 1.0) continue;  // a jump at t = 1 is invisible in L^p[0,1]
      if (!events.empty() && events.back().time == s_hat)
        events.back().increment += h;
      else
        events.push_back({s_hat, h});
    }
  }
  return CadlagPath(std::move(events), truncated_to_zero ? 0.0 : b_eps,
                    grid_step);
}

double audit_bit_bound(const std::vector<JumpRecord>& records,
                       const CodecParams& params, std::size_t M) {
  validate_params(params);
  const double mc = static_cast<double>(box_count(params.m));
  double bound = mc;
  for (std::size_t i = 0; i < records.size(); ++i) {
    const double S = records[i].s;
    const double S_next = (i + 1 < records.size()) ? records[i + 1].s : 1.0;
    const double abs_h = std::abs(records[i].h);
    const double precision = std::pow(params.eps, params.p) /
                             (std::pow(abs_h, params.p) * static_cast<double>(M));
    const double D = std::min(S_next - S, precision);
    const double L = std::max(0.0, std::log2(1.0 / (mc * D)));
    bound += 2.0 * std::log2(abs_h / params.eps) + 2.0 * L +
             2.0 * std::log2(L + 3.0) + 16.0;
  }
  return bound;
}

double worst_case_bits(const CodecParams& params) {
  validate_params(params);
  if (!params.truncation)
    throw DomainError("worst_case_bits: truncation thresholds missing");
  const Truncation& tr = *params.truncation;
  return static_cast<double>(box_count(params.m)) +
         16.0 * tr.c1 * tr.f_eps_bits + 4.0 * tr.c2 * tr.f_eps_bits;
}

}  // namespace levy
