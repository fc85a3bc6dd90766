#pragma once

#include "sponge/cubes.hpp"
#include "sponge/model.hpp"
#include "sponge/rational.hpp"

#include <map>
#include <optional>
#include <vector>

namespace sponge {

/// Products with more factors than this are kept in log space only.
inline constexpr int kDefaultPrecisionBudget = 512;

/// A measure value carried both exactly (when affordable) and as a natural log.
struct RationalLog {
  std::optional<Rational> exact;
  double log_value = 0.0;

  static RationalLog from_exact(const Rational& value);
  double value() const;
};

/// Bernoulli measure on D^N with exact positive weights summing to one. The
/// marginal mass of every prefix in D_0, ..., D_d is tabulated on
/// construction, so conditional probabilities are lookups.
class BernoulliMeasure {
 public:
  /// `weights` is aligned with s.digits(). Throws InvalidMeasure when a weight
  /// is not positive or the sum differs from 1.
  static BernoulliMeasure from_weights(const Sponge& s, std::vector<Rational> weights);
  /// Same, keyed by digit tuple; every digit must be present exactly once.
  static BernoulliMeasure from_map(const Sponge& s, const std::map<DigitTuple, Rational>& weights);

  const Sponge& sponge() const noexcept { return sponge_; }
  const std::vector<Rational>& weights() const noexcept { return weights_; }
  const Rational& weight(const DigitTuple& digit) const;

  /// Total weight of digits starting with `p` (0 if p is not in D_|p|).
  const Rational& mass(const Prefix& p) const;
  /// log mass(p); p must be admissible.
  double log_mass(const Prefix& p) const;

  /// p(next | p) = mass(p, next) / mass(p); 0 when (p, next) is not in D_{|p|+1}.
  /// Throws PrefixNotInSponge if p itself is not admissible or |p| >= d.
  Rational conditional(const Prefix& p, int next) const;

 private:
  BernoulliMeasure(Sponge s, std::vector<Rational> weights);

  Sponge sponge_;
  std::vector<Rational> weights_;
  std::vector<std::map<Prefix, std::pair<Rational, double>>> mass_;  // per level: exact and log
};

/// p_i = 1 / (N * prod_{l>=2} N(i_1, ..., i_{l-1})).
BernoulliMeasure coordinate_uniform(const Sponge& s);
/// p_i = 1 / |D|.
BernoulliMeasure uniform_measure(const Sponge& s);

Rational conditional_prob(const BernoulliMeasure& m, const Prefix& p, int next);

/// Measure of Q: the product over word positions t of mass(position_prefix(t)),
/// which equals the product of the conditional probabilities
/// p(i_{t,l} | i_{t,1}, ..., i_{t,l-1}) for l <= L_t. Exact when the number of
/// conditional factors sum_l k_l is within `budget`.
RationalLog cube_measure(const BernoulliMeasure& m, const ApproximateCube& q, int budget = kDefaultPrecisionBudget);
RationalLog cube_measure(const BernoulliMeasure& m, const SymbolicWord& w, const Rational& r,
                         int budget = kDefaultPrecisionBudget);
/// Always exact.
Rational cube_measure_exact(const BernoulliMeasure& m, const ApproximateCube& q);
/// Always in log space.
double cube_log_measure(const BernoulliMeasure& m, const ApproximateCube& q);

struct BallBracket {
  RationalLog lower;
  RationalLog upper;
};

/// Brackets mu(B(center, radius)) for the closed Euclidean ball using the
/// depth-`depth` cylinders: `lower` sums cylinders whose boxes lie inside the
/// ball, `upper` sums cylinders whose boxes meet it. Subtrees entirely inside
/// or outside are pruned. Throws EnumerationTooLarge when more than `cap`
/// cylinders would be visited.
BallBracket ball_measure_bounds(const BernoulliMeasure& m, const std::vector<Rational>& center, const Rational& radius,
                                int depth, std::uint64_t cap = kDefaultEnumerationCap);

/// Strictly positive probability vectors with entries in (1/parts) Z.
std::vector<std::vector<Rational>> positive_simplex_grid(int parts, int components);

}  // namespace sponge
