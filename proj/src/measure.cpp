#include "sponge/measure.hpp"

#include <algorithm>
#include <cmath>

namespace sponge {

RationalLog RationalLog::from_exact(const Rational& value) {
  RationalLog out;
  out.exact = value;
  out.log_value = value > 0 ? log_rational(value) : -INFINITY;
  return out;
}

double RationalLog::value() const { return exact ? to_double(*exact) : std::exp(log_value); }

BernoulliMeasure::BernoulliMeasure(Sponge s, std::vector<Rational> weights)
    : sponge_(std::move(s)), weights_(std::move(weights)) {
  const int d = sponge_.dim();
  std::vector<std::map<Prefix, Rational>> exact(d + 1);
  for (std::size_t i = 0; i < sponge_.size(); ++i) {
    const DigitTuple& t = sponge_.digits()[i];
    for (int l = 0; l <= d; ++l) exact[l][project(t, l)] += weights_[i];
  }
  mass_.resize(d + 1);
  for (int l = 0; l <= d; ++l) {
    for (auto& [p, value] : exact[l]) mass_[l].emplace(p, std::make_pair(value, log_rational(value)));
  }
}

BernoulliMeasure BernoulliMeasure::from_weights(const Sponge& s, std::vector<Rational> weights) {
  if (weights.size() != s.size()) {
    throw SpongeError(ErrorKind::InvalidMeasure, "expected " + std::to_string(s.size()) + " weights, got " +
                                                     std::to_string(weights.size()));
  }
  Rational total = 0;
  for (std::size_t i = 0; i < weights.size(); ++i) {
    if (weights[i] <= 0) {
      throw SpongeError(ErrorKind::InvalidMeasure,
                        "weight of (" + format_tuple(s.digits()[i]) + ") must be positive, got " + to_string(weights[i]));
    }
    total += weights[i];
  }
  if (total != 1) throw SpongeError(ErrorKind::InvalidMeasure, "weights sum to " + to_string(total) + ", not 1");
  return BernoulliMeasure(s, std::move(weights));
}

BernoulliMeasure BernoulliMeasure::from_map(const Sponge& s, const std::map<DigitTuple, Rational>& weights) {
  std::vector<Rational> aligned;
  for (const auto& t : s.digits()) {
    auto it = weights.find(t);
    if (it == weights.end()) throw SpongeError(ErrorKind::InvalidMeasure, "no weight for digit (" + format_tuple(t) + ")");
    aligned.push_back(it->second);
  }
  for (const auto& [t, w] : weights) {
    if (!std::binary_search(s.digits().begin(), s.digits().end(), t)) {
      throw SpongeError(ErrorKind::InvalidMeasure, "weight given for (" + format_tuple(t) + "), which is not a digit");
    }
  }
  return from_weights(s, std::move(aligned));
}

const Rational& BernoulliMeasure::weight(const DigitTuple& digit) const {
  auto it = std::lower_bound(sponge_.digits().begin(), sponge_.digits().end(), digit);
  if (it == sponge_.digits().end() || *it != digit) {
    throw SpongeError(ErrorKind::PrefixNotInSponge, "(" + format_tuple(digit) + ") is not a digit");
  }
  return weights_[it - sponge_.digits().begin()];
}

const Rational& BernoulliMeasure::mass(const Prefix& p) const {
  static const Rational zero = 0;
  if (p.size() >= mass_.size()) return zero;
  auto it = mass_[p.size()].find(p);
  return it == mass_[p.size()].end() ? zero : it->second.first;
}

double BernoulliMeasure::log_mass(const Prefix& p) const {
  if (p.size() < mass_.size()) {
    auto it = mass_[p.size()].find(p);
    if (it != mass_[p.size()].end()) return it->second.second;
  }
  throw SpongeError(ErrorKind::PrefixNotInSponge, "prefix (" + format_tuple(p) + ") is not in the sponge");
}

Rational BernoulliMeasure::conditional(const Prefix& p, int next) const {
  if (static_cast<int>(p.size()) >= sponge_.dim() || !sponge_.contains(p)) {
    throw SpongeError(ErrorKind::PrefixNotInSponge, "prefix (" + format_tuple(p) + ") is not a proper prefix in the sponge");
  }
  Prefix extended = p;
  extended.push_back(next);
  return mass(extended) / mass(p);
}

BernoulliMeasure coordinate_uniform(const Sponge& s) {
  std::vector<Rational> weights;
  for (const auto& t : s.digits()) {
    BigInt den = 1;
    for (int l = 0; l < s.dim(); ++l) den *= s.fibre_count(project(t, l));
    weights.emplace_back(BigInt(1), den);
  }
  return BernoulliMeasure::from_weights(s, std::move(weights));
}

BernoulliMeasure uniform_measure(const Sponge& s) {
  return BernoulliMeasure::from_weights(s, std::vector<Rational>(s.size(), Rational(BigInt(1), BigInt(s.size()))));
}

Rational conditional_prob(const BernoulliMeasure& m, const Prefix& p, int next) { return m.conditional(p, next); }

Rational cube_measure_exact(const BernoulliMeasure& m, const ApproximateCube& q) {
  Rational value = 1;
  const int length = q.k.empty() ? 0 : q.k.front();
  for (int t = 1; t <= length; ++t) value *= m.mass(q.position_prefix(t));
  return value;
}

double cube_log_measure(const BernoulliMeasure& m, const ApproximateCube& q) {
  double value = 0.0;
  const int length = q.k.empty() ? 0 : q.k.front();
  for (int t = 1; t <= length; ++t) value += m.log_mass(q.position_prefix(t));
  return value;
}

RationalLog cube_measure(const BernoulliMeasure& m, const ApproximateCube& q, int budget) {
  int factors = 0;
  for (int kl : q.k) factors += kl;
  const int length = q.k.empty() ? 0 : q.k.front();
  for (int t = 1; t <= length; ++t) {
    if (m.mass(q.position_prefix(t)) == 0) {
      throw SpongeError(ErrorKind::ZeroMeasure, "cube has a zero conditional probability at position " + std::to_string(t));
    }
  }
  if (factors <= budget) return RationalLog::from_exact(cube_measure_exact(m, q));
  RationalLog out;
  out.log_value = cube_log_measure(m, q);
  return out;
}

RationalLog cube_measure(const BernoulliMeasure& m, const SymbolicWord& w, const Rational& r, int budget) {
  return cube_measure(m, approximate_cube(m.sponge(), w, r), budget);
}

namespace {

struct BallSearch {
  const BernoulliMeasure& m;
  const std::vector<Rational>& center;
  Rational radius_sq;
  int depth;
  std::uint64_t cap;
  std::uint64_t visited = 0;
  Rational lower = 0;
  Rational upper = 0;

  // Box [a_l / n_l^j, (a_l + 1) / n_l^j] per coordinate.
  void visit(std::vector<BigInt>& a, int j, const Rational& weight) {
    if (++visited > cap) {
      throw SpongeError(ErrorKind::EnumerationTooLarge,
                        "ball bracket needs more than " + std::to_string(cap) + " cylinders");
    }
    const Sponge& s = m.sponge();
    Rational near = 0;
    Rational far = 0;
    for (int l = 0; l < s.dim(); ++l) {
      const BigInt scale = pow_int(BigInt(s.bases()[l]), static_cast<unsigned>(j));
      const Rational lo(a[l], scale);
      const Rational hi(BigInt(a[l] + 1), scale);
      const Rational& c = center[l];
      Rational gap = 0;
      if (c < lo) gap = lo - c;
      else if (c > hi) gap = c - hi;
      near += gap * gap;
      const Rational reach = c - lo > hi - c ? c - lo : hi - c;
      far += reach * reach;
    }
    if (near > radius_sq) return;
    if (far <= radius_sq) {
      lower += weight;
      upper += weight;
      return;
    }
    if (j == depth) {
      upper += weight;
      return;
    }
    const auto& digits = s.digits();
    for (std::size_t i = 0; i < digits.size(); ++i) {
      std::vector<BigInt> child(a.size());
      for (int l = 0; l < s.dim(); ++l) child[l] = a[l] * s.bases()[l] + digits[i][l];
      visit(child, j + 1, weight * m.weights()[i]);
    }
  }
};

}  // namespace

BallBracket ball_measure_bounds(const BernoulliMeasure& m, const std::vector<Rational>& center, const Rational& radius,
                                int depth, std::uint64_t cap) {
  const Sponge& s = m.sponge();
  if (static_cast<int>(center.size()) != s.dim()) {
    throw SpongeError(ErrorKind::DimensionMismatch, "ball center has " + std::to_string(center.size()) +
                                                        " coordinates, sponge has " + std::to_string(s.dim()));
  }
  if (radius < 0 || depth < 0) throw SpongeError(ErrorKind::OutOfRange, "radius and depth must be non-negative");
  BallSearch search{m, center, radius * radius, depth, cap};
  std::vector<BigInt> origin(s.dim(), BigInt(0));
  search.visit(origin, 0, Rational(1));
  return BallBracket{RationalLog::from_exact(search.lower), RationalLog::from_exact(search.upper)};
}

std::vector<std::vector<Rational>> positive_simplex_grid(int parts, int components) {
  if (parts < 1 || components < 1) throw SpongeError(ErrorKind::OutOfRange, "simplex grid needs positive sizes");
  std::vector<std::vector<Rational>> out;
  std::vector<int> counts;
  auto fill = [&](auto&& self, int remaining, int slots) -> void {
    if (slots == 1) {
      if (remaining < 1) return;
      counts.push_back(remaining);
      std::vector<Rational> point;
      for (int c : counts) point.emplace_back(BigInt(c), BigInt(parts));
      out.push_back(std::move(point));
      counts.pop_back();
      return;
    }
    for (int c = 1; c <= remaining - (slots - 1); ++c) {
      counts.push_back(c);
      self(self, remaining - c, slots - 1);
      counts.pop_back();
    }
  };
  fill(fill, parts, components);
  return out;
}

}  // namespace sponge
