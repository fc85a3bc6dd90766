#include "sponge/verify.hpp"

#include <cmath>
#include <cstdio>
#include <limits>

namespace sponge {

std::uint64_t ScanRng::below(std::uint64_t bound) {
  if (bound == 0) throw SpongeError(ErrorKind::OutOfRange, "empty sampling range");
  const std::uint64_t max = std::numeric_limits<std::uint64_t>::max();
  const std::uint64_t limit = max - (max % bound + 1) % bound;  // largest multiple of bound, minus one
  while (true) {
    const std::uint64_t x = engine_();
    if (x <= limit) return x % bound;
  }
}

namespace {

std::string word_text(const SymbolicWord& w) {
  std::string out;
  for (std::size_t t = 0; t < w.size(); ++t) {
    if (t) out += ';';
    out += format_tuple(w[t]);
  }
  return out;
}

std::string point_text(const std::vector<Rational>& x) {
  std::string out;
  for (std::size_t l = 0; l < x.size(); ++l) {
    if (l) out += ';';
    out += to_string(x[l]);
  }
  return out;
}

SymbolicWord random_word(const Sponge& s, ScanRng& rng, int length) {
  SymbolicWord w;
  w.reserve(length);
  for (int t = 0; t < length; ++t) w.push_back(s.digits()[rng.below(s.size())]);
  return w;
}

// log(mu(Q(w,R)) / mu(Q(w,r))), exact when both cubes are within budget.
double log_cube_ratio(const BernoulliMeasure& m, const ApproximateCube& big, const ApproximateCube& small) {
  const RationalLog num = cube_measure(m, big);
  const RationalLog den = cube_measure(m, small);
  if (num.exact && den.exact) return log_rational(*num.exact / *den.exact);
  return num.log_value - den.log_value;
}

void record(ScanReport& report, ScanSample sample, double lower_slack, double upper_slack, bool keep_rows) {
  report.worst_lower_slack = std::min(report.worst_lower_slack, lower_slack);
  report.worst_upper_slack = std::min(report.worst_upper_slack, upper_slack);
  if (lower_slack < -kScanLogTolerance) report.violations.push_back({sample, false});
  if (upper_slack < -kScanLogTolerance) report.violations.push_back({sample, true});
  if (keep_rows) report.rows.push_back(std::move(sample));
}

}  // namespace

ScanReport scan_cube_ratios(const Sponge& s, const BernoulliMeasure& m, std::uint64_t samples, std::uint64_t seed,
                            int depth, bool keep_rows) {
  const double dim_a = assouad_dim(s);
  const double dim_l = lower_dim(s);
  if (depth < 1) throw SpongeError(ErrorKind::OutOfRange, "scan depth must be at least 1");
  const int d = s.dim();
  const int n1 = s.bases().front();
  const double log_nd = std::log(static_cast<double>(s.bases().back()));

  // Extremal conditional probabilities per coordinate.
  std::vector<double> log_pmin(d, INFINITY), log_pmax(d, -INFINITY);
  for (int l = 0; l < d; ++l) {
    for (const Prefix& p : s.level(l)) {
      for (int c : s.children(p)) {
        const double lp = log_rational(m.conditional(p, c));
        log_pmin[l] = std::min(log_pmin[l], lp);
        log_pmax[l] = std::max(log_pmax[l], lp);
      }
    }
  }

  ScanReport report;
  report.samples = samples;
  report.c0 = std::exp(-d * log_nd);
  report.c1 = std::exp(d * log_nd);
  report.lower_exponent = dim_l;
  report.upper_exponent = dim_a;
  double own_lower = INFINITY, own_upper = INFINITY;

  ScanRng rng(seed);
  for (std::uint64_t i = 0; i < samples; ++i) {
    const int b = 1 + static_cast<int>(rng.below(depth));
    const int a = static_cast<int>(rng.below(b));
    const SymbolicWord w = random_word(s, rng, b);
    const Rational big_r = inverse_power(n1, a);
    const Rational small_r = inverse_power(n1, b);
    const ApproximateCube big = approximate_cube(s, w, big_r);
    const ApproximateCube small = approximate_cube(s, w, small_r);
    const double log_ratio = log_cube_ratio(m, big, small);
    const double log_rr = (b - a) * std::log(static_cast<double>(n1));
    const double log_lower = -d * log_nd + dim_l * log_rr;
    const double log_upper = d * log_nd + dim_a * log_rr;

    double own_lo = 0.0, own_hi = 0.0;
    for (int l = 0; l < d; ++l) {
      const int extra = small.k[l] - big.k[l];
      own_lo -= extra * log_pmax[l];
      own_hi -= extra * log_pmin[l];
    }
    const double own_lower_slack = log_ratio - own_lo;
    const double own_upper_slack = own_hi - log_ratio;
    own_lower = std::min(own_lower, own_lower_slack);
    own_upper = std::min(own_upper, own_upper_slack);
    if (own_lower_slack < -kScanLogTolerance || own_upper_slack < -kScanLogTolerance) ++report.own_violations;

    const double lower_slack = log_ratio - log_lower;
    const double upper_slack = log_upper - log_ratio;
    const bool keep = keep_rows || lower_slack < -kScanLogTolerance || upper_slack < -kScanLogTolerance;
    ScanSample sample;
    if (keep) {
      sample = ScanSample{word_text(w), small_r, big_r, std::exp(log_ratio), std::exp(log_ratio),
                          std::exp(log_lower), std::exp(log_upper)};
    }
    record(report, std::move(sample), lower_slack, upper_slack, keep_rows);
  }
  report.own_worst_lower_slack = own_lower;
  report.own_worst_upper_slack = own_upper;
  return report;
}

ScanReport scan_ball_ratios_vssc(const Sponge& s, std::uint64_t samples, std::uint64_t seed, int depth,
                                 bool keep_rows) {
  if (!satisfies_vssc(s)) {
    throw SpongeError(ErrorKind::VsscNotSatisfied, "the digit set does not satisfy the very strong separation condition");
  }
  const double dim_a = assouad_dim(s);
  const double dim_l = lower_dim(s);
  const int d = s.dim();
  const int n1 = s.bases().front();
  int base_sum = 0;
  for (int n : s.bases()) base_sum += n;
  const double log_nd = std::log(static_cast<double>(s.bases().back()));
  const double log_inner = std::log(2.0 * base_sum * n1 * n1);
  const double log_c1 = d * log_nd + dim_a * log_inner;
  const double log_c0 = -d * log_nd - dim_l * log_inner;

  // Smallest g with n_1^g >= sqrt(d).
  int margin = 0;
  for (BigInt p = 1; p * p < d; p *= n1) ++margin;
  const int max_b = depth - margin;
  if (max_b < 1) throw SpongeError(ErrorKind::OutOfRange, "ball scan depth too small for this dimension");

  const BernoulliMeasure m = coordinate_uniform(s);
  ScanReport report;
  report.samples = samples;
  report.c0 = std::exp(log_c0);
  report.c1 = std::exp(log_c1);
  report.lower_exponent = dim_l;
  report.upper_exponent = dim_a;

  ScanRng rng(seed);
  for (std::uint64_t i = 0; i < samples; ++i) {
    const int b = 1 + static_cast<int>(rng.below(max_b));
    const int a = static_cast<int>(rng.below(b));
    const SymbolicWord w = random_word(s, rng, depth);
    const DigitTuple& tail = s.digits()[rng.below(s.size())];
    std::vector<Rational> center;
    for (int l = 0; l < d; ++l) {
      const int n = s.bases()[l];
      BigInt a_l = 0;
      for (const auto& digit : w) a_l = a_l * n + digit[l];
      // tau(w tail tail ...) = (a_l + tail_l / (n - 1)) / n^depth
      center.push_back((Rational(a_l) + Rational(tail[l], n - 1)) / pow_int(BigInt(n), static_cast<unsigned>(depth)));
    }
    const Rational big_r = inverse_power(n1, a);
    const Rational small_r = inverse_power(n1, b);
    const BallBracket big = ball_measure_bounds(m, center, big_r, depth);
    const BallBracket small = ball_measure_bounds(m, center, small_r, depth);
    const double log_hi = big.upper.log_value - small.lower.log_value;
    const double log_lo = big.lower.log_value - small.upper.log_value;
    const double log_rr = (b - a) * std::log(static_cast<double>(n1));
    const double log_lower = log_c0 + dim_l * log_rr;
    const double log_upper = log_c1 + dim_a * log_rr;
    const double lower_slack = log_lo - log_lower;
    const double upper_slack = log_upper - log_hi;
    ScanSample sample;
    if (keep_rows || lower_slack < -kScanLogTolerance || upper_slack < -kScanLogTolerance) {
      sample = ScanSample{point_text(center), small_r, big_r, std::exp(log_hi), std::exp(log_lo),
                          std::exp(log_lower), std::exp(log_upper)};
    }
    record(report, std::move(sample), lower_slack, upper_slack, keep_rows);
  }
  return report;
}

std::string scan_rows_csv(const ScanReport& report) {
  std::string out = "word,r,R,ratio,lower_bound,upper_bound,ratio_low\n";
  char buf[128];
  for (const auto& row : report.rows) {
    out += '"' + row.word + "\"," + to_string(row.r) + ',' + to_string(row.R);
    std::snprintf(buf, sizeof buf, ",%.17g,%.17g,%.17g,%.17g\n", row.ratio, row.lower_bound, row.upper_bound,
                  row.ratio_low);
    out += buf;
  }
  return out;
}

}  // namespace sponge
