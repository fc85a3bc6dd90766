#include "support.hpp"

#include "sponge/cubes.hpp"
#include "sponge/measure.hpp"

#include <gtest/gtest.h>

#include <cmath>

using namespace sponge;
using testing_support::worked_sponge;

namespace {

Rational q(long a, long b) { return Rational(BigInt(a), BigInt(b)); }

// Product of conditional probabilities p(i_{t,l} | i_{t,1..l-1}) over the
// constrained coordinates of every position.
Rational conditional_product(const BernoulliMeasure& m, const ApproximateCube& c) {
  Rational value = 1;
  for (int t = 1; t <= (c.k.empty() ? 0 : c.k.front()); ++t) {
    const Prefix p = c.position_prefix(t);
    for (std::size_t l = 0; l < p.size(); ++l) value *= m.conditional(Prefix(p.begin(), p.begin() + l), p[l]);
  }
  return value;
}

}  // namespace

TEST(Measure, CoordinateUniformWeightTable) {
  const Sponge s = worked_sponge();
  const BernoulliMeasure m = coordinate_uniform(s);
  EXPECT_EQ(m.weight({0, 0, 0}), q(1, 8));
  EXPECT_EQ(m.weight({0, 0, 3}), q(1, 8));
  EXPECT_EQ(m.weight({0, 1, 2}), q(1, 4));
  EXPECT_EQ(m.weight({1, 0, 2}), q(1, 6));
  for (const DigitTuple& t : std::vector<DigitTuple>{{1, 1, 0}, {1, 1, 1}, {1, 1, 2}, {1, 2, 0}, {1, 2, 2}, {1, 2, 3}}) {
    EXPECT_EQ(m.weight(t), q(1, 18));
  }
  Rational total = 0;
  for (const auto& w : m.weights()) total += w;
  EXPECT_EQ(total, Rational(1));
}

TEST(Measure, FullGridCoordinateUniformIsUniform) {
  std::vector<DigitTuple> grid;
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 3; ++j)
      for (int k = 0; k < 5; ++k) grid.push_back({i, j, k});
  const BernoulliMeasure m = coordinate_uniform(Sponge::validate({2, 3, 5}, grid));
  for (const auto& w : m.weights()) EXPECT_EQ(w, q(1, 30));
}

TEST(Measure, ConditionalProbabilities) {
  const Sponge s = worked_sponge();
  const BernoulliMeasure m = coordinate_uniform(s);
  EXPECT_EQ(conditional_prob(m, {}, 0), q(1, 2));
  EXPECT_EQ(conditional_prob(m, {1, 1}, 5), Rational(0));
  EXPECT_EQ(conditional_prob(m, {0}, 2), Rational(0));
  // Coordinate uniform: p(next | p) = 1 / N(p) on every admissible extension.
  for (int l = 0; l < 3; ++l) {
    for (const Prefix& p : s.level(l)) {
      for (int c : s.children(p)) EXPECT_EQ(m.conditional(p, c), q(1, s.fibre_count(p)));
    }
  }
  try {
    m.conditional({0, 2}, 0);
    FAIL();
  } catch (const SpongeError& e) {
    EXPECT_EQ(e.kind(), ErrorKind::PrefixNotInSponge);
  }
  const BernoulliMeasure u = uniform_measure(testing_support::no_doubling_carpet());
  EXPECT_EQ(conditional_prob(u, {}, 1), q(2, 3));
}

TEST(Measure, CubeMeasureExamples) {
  const Sponge s = worked_sponge();
  const BernoulliMeasure m = coordinate_uniform(s);
  const RationalLog v = cube_measure(m, SymbolicWord{{0, 0, 0}, {0, 0, 0}}, q(1, 4));
  ASSERT_TRUE(v.exact.has_value());
  EXPECT_EQ(*v.exact, q(1, 16));
  EXPECT_NEAR(v.log_value, std::log(1.0 / 16), 1e-14);
  const RationalLog one = cube_measure(m, SymbolicWord{}, Rational(1));
  EXPECT_EQ(*one.exact, Rational(1));

  const RationalLog logged = cube_measure(m, approximate_cube(s, {{0, 0, 0}, {0, 0, 0}}, q(1, 4)), 0);
  EXPECT_FALSE(logged.exact.has_value());
  EXPECT_NEAR(logged.log_value, std::log(1.0 / 16), 1e-14);
  EXPECT_THROW(cube_measure(m, SymbolicWord{{0, 0, 0}}, q(1, 4)), SpongeError);
}

TEST(Measure, ExactAndLogValuesAgreeDeep) {
  const Sponge s = worked_sponge();
  const BernoulliMeasure m = coordinate_uniform(s);
  testing_support::TestRng rng(3);
  for (int i = 0; i < 30; ++i) {
    SymbolicWord w;
    for (int t = 0; t < 60; ++t) w.push_back(s.digits()[rng.next() % s.size()]);
    const ApproximateCube c = approximate_cube(s, w, inverse_power(2, 60));
    const Rational exact = cube_measure_exact(m, c);
    EXPECT_NEAR(cube_log_measure(m, c), log_rational(exact), 1e-12 * std::abs(log_rational(exact)));
    EXPECT_EQ(exact, conditional_product(m, c));
  }
}

TEST(Measure, CubeMeasureMatchesBruteForce) {
  const Sponge s = worked_sponge();
  for (const BernoulliMeasure& m : {coordinate_uniform(s), uniform_measure(s)}) {
    for (const Rational& r : {q(1, 2), q(1, 3), q(1, 4), q(1, 8), q(1, 9)}) {
      const int k1 = scale_exponents(s, r).k[0];
      const auto oracle = testing_support::oracle_cube_masses(s.bases(), s.digits(), m.weights(), r, k1 + 1);
      const auto all = subcubes(s, approximate_cube(s, {}, Rational(1)), r);
      ASSERT_EQ(all.size(), oracle.size());
      Rational total = 0;
      for (const auto& c : all) {
        const Rational v = cube_measure_exact(m, c);
        EXPECT_EQ(v, oracle.at(c.constraints));
        EXPECT_EQ(v, conditional_product(m, c));
        total += v;
      }
      EXPECT_EQ(total, Rational(1));
    }
  }
}

TEST(Measure, RefinementAdditivity) {
  const Sponge s = worked_sponge();
  const BernoulliMeasure m = BernoulliMeasure::from_weights(
      s, {q(1, 20), q(1, 10), q(1, 5), q(1, 20), q(1, 10), q(1, 20), q(1, 10), q(1, 10), q(1, 10), q(3, 20)});
  for (const auto& c : subcubes(s, approximate_cube(s, {}, Rational(1)), q(1, 4))) {
    Rational sum = 0;
    for (const auto& f : subcubes(s, c, q(1, 27))) sum += cube_measure_exact(m, f);
    EXPECT_EQ(sum, cube_measure_exact(m, c));
  }
}

TEST(Measure, NeighbourFamiliesOfTheNoDoublingCarpet) {
  const Sponge s = testing_support::no_doubling_carpet();  // digits (0,1), (1,1), (1,3)
  for (const auto& w : std::vector<std::vector<Rational>>{{q(1, 3), q(1, 3), q(1, 3)}, {q(1, 2), q(1, 6), q(1, 3)},
                                                          {q(1, 5), q(3, 5), q(1, 5)}}) {
    const BernoulliMeasure m = BernoulliMeasure::from_weights(s, w);
    const Rational right = w[1] + w[2];
    for (int k = 2; k <= 9; ++k) {
      const Rational R = inverse_power(4, static_cast<unsigned>(k));
      SymbolicWord a(k, {0, 1}), b(k, {0, 1});
      a.push_back({0, 1});
      b.push_back({1, 1});
      for (int t = 0; t < k - 1; ++t) {
        a.push_back({1, 1});
        b.push_back({0, 1});
      }
      const ApproximateCube qa = approximate_cube(s, a, R), qb = approximate_cube(s, b, R);
      const Hypercuboid ba = geometric_box(s, qa), bb = geometric_box(s, qb);
      EXPECT_EQ(ba.sides[0].hi, bb.sides[0].lo);
      EXPECT_EQ(ba.sides[1], bb.sides[1]);
      EXPECT_EQ(cube_measure_exact(m, qa) / cube_measure_exact(m, qb), pow_rational(right / w[0], k - 2));

      SymbolicWord c{{0, 1}}, d{{1, 1}};
      for (int t = 0; t < 2 * k - 1; ++t) {
        c.push_back({1, 1});
        d.push_back({0, 1});
      }
      const ApproximateCube qc = approximate_cube(s, c, R), qd = approximate_cube(s, d, R);
      EXPECT_EQ(geometric_box(s, qc).sides[0].hi, geometric_box(s, qd).sides[0].lo);
      const Rational ratio = cube_measure_exact(m, qc) / cube_measure_exact(m, qd);
      EXPECT_EQ(ratio, pow_rational(w[1], k - 2) * pow_rational(right, k) / pow_rational(w[0], 2 * k - 2));
      if (w[0] == right) EXPECT_EQ(ratio, pow_rational(w[1] / right, k - 2));
    }
  }
}

TEST(Measure, InvalidWeightVectors) {
  const Sponge s = testing_support::no_doubling_carpet();
  auto kind = [&](std::vector<Rational> w) {
    try {
      BernoulliMeasure::from_weights(s, std::move(w));
    } catch (const SpongeError& e) {
      return e.kind();
    }
    return ErrorKind::ParseError;
  };
  EXPECT_EQ(kind({q(1, 2), q(1, 2), Rational(0)}), ErrorKind::InvalidMeasure);
  EXPECT_EQ(kind({q(1, 2), q(1, 2), q(1, 2)}), ErrorKind::InvalidMeasure);
  EXPECT_EQ(kind({q(1, 2), q(1, 2)}), ErrorKind::InvalidMeasure);
  EXPECT_THROW(BernoulliMeasure::from_map(s, {{{0, 1}, q(1, 2)}, {{1, 1}, q(1, 2)}}), SpongeError);
}

TEST(Measure, BallBracketTrivialCases) {
  const Sponge s = worked_sponge();
  const BernoulliMeasure m = coordinate_uniform(s);
  const std::vector<Rational> corner{Rational(0), Rational(0), Rational(0)};
  const BallBracket all = ball_measure_bounds(m, {q(1, 3), q(2, 3), q(1, 7)}, Rational(2), 3);
  EXPECT_EQ(*all.lower.exact, Rational(1));
  EXPECT_EQ(*all.upper.exact, Rational(1));
  const BallBracket point = ball_measure_bounds(m, corner, Rational(0), 4);
  EXPECT_EQ(*point.lower.exact, Rational(0));
  EXPECT_EQ(*point.upper.exact, pow_rational(q(1, 8), 4));
  EXPECT_THROW(ball_measure_bounds(m, {Rational(0)}, Rational(1), 2), SpongeError);
  EXPECT_THROW(ball_measure_bounds(m, corner, q(1, 2), 12, 1000), SpongeError);
}

TEST(Measure, BallBracketTightensWithDepth) {
  const Sponge s = worked_sponge();
  const BernoulliMeasure m = coordinate_uniform(s);
  const std::vector<Rational> corner{Rational(0), Rational(0), Rational(0)};
  Rational last_lower = 0, last_upper = 1;
  for (int depth = 0; depth <= 6; ++depth) {
    const BallBracket b = ball_measure_bounds(m, corner, q(1, 8), depth);
    EXPECT_LE(*b.lower.exact, *b.upper.exact);
    EXPECT_GE(*b.lower.exact, last_lower);
    EXPECT_LE(*b.upper.exact, last_upper);
    last_lower = *b.lower.exact;
    last_upper = *b.upper.exact;
  }
  const BallBracket d4 = ball_measure_bounds(m, corner, q(1, 8), 4);
  const BallBracket d6 = ball_measure_bounds(m, corner, q(1, 8), 6);
  EXPECT_LT(*d6.upper.exact - *d6.lower.exact, *d4.upper.exact - *d4.lower.exact);
}

TEST(Measure, SimplexGrid) {
  const auto grid = positive_simplex_grid(8, 3);
  EXPECT_EQ(grid.size(), 21u);
  for (const auto& p : grid) {
    Rational total = 0;
    for (const auto& v : p) {
      EXPECT_GT(v, 0);
      total += v;
    }
    EXPECT_EQ(total, Rational(1));
  }
  EXPECT_TRUE(positive_simplex_grid(2, 3).empty());
}
