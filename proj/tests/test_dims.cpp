#include "support.hpp"

#include "sponge/dims.hpp"

#include <gtest/gtest.h>

#include <cmath>

using namespace sponge;
using testing_support::worked_sponge;

namespace {

double worked_hausdorff_closed_form() {
  const double a = std::log(3.0) / std::log(4.0);
  const double b = std::log(2.0) / std::log(3.0);
  return std::log2(std::pow(std::pow(2.0, a) + 1.0, b) + std::pow(2.0 * std::pow(3.0, a) + 1.0, b));
}

Sponge full_grid(const std::vector<int>& bases) {
  std::vector<DigitTuple> digits{{}};
  for (int n : bases) {
    std::vector<DigitTuple> next;
    for (const auto& t : digits) {
      for (int c = 0; c < n; ++c) {
        DigitTuple u = t;
        u.push_back(c);
        next.push_back(u);
      }
    }
    digits = next;
  }
  return Sponge::validate(bases, digits);
}

}  // namespace

TEST(Dims, WorkedSpongeMatchesClosedForms) {
  const Sponge s = worked_sponge();
  EXPECT_NEAR(assouad_dim(s), 2.0 + std::log(3.0) / std::log(4.0), 1e-9);
  EXPECT_NEAR(lower_dim(s), 1.0 + std::log(2.0) / std::log(3.0), 1e-9);
  EXPECT_NEAR(box_dim(s), 1.0 + std::log(2.5) / std::log(3.0) + std::log(2.0) / std::log(4.0), 1e-9);
  EXPECT_NEAR(hausdorff_dim(s), worked_hausdorff_closed_form(), 1e-9);
}

TEST(Dims, WorkedSpongeMatchesPrintedDecimals) {
  const Sponge s = worked_sponge();
  EXPECT_NEAR(assouad_dim(s), 2.792, 5e-4);
  EXPECT_NEAR(lower_dim(s), 1.631, 5e-4);
  EXPECT_NEAR(box_dim(s), 2.3340, 5e-4);
  EXPECT_NEAR(hausdorff_dim(s), 2.296, 5e-4);
}

TEST(Dims, LowerViaZPrimeAgreesWithClosedForm) {
  const Sponge s = worked_sponge();
  EXPECT_NEAR(lower_via_zprime(s), lower_dim(s), 1e-12);
}

TEST(Dims, EqualBasesKeepBoxAndHausdorffButRejectAssouadAndLower) {
  const Sponge s = testing_support::equal_bases_sponge();
  const double product = std::log(2.0) / std::log(3.0) + std::log(5.0) / std::log(4.0);
  EXPECT_NEAR(box_dim(s), product, 1e-9);
  EXPECT_NEAR(box_dim(s), 1.792, 5e-4);
  EXPECT_NEAR(hausdorff_dim(s), product, 1e-9);
  for (auto f : {assouad_dim, lower_dim, lower_via_zprime}) {
    try {
      f(s);
      FAIL() << "expected NonStrictBases";
    } catch (const SpongeError& e) {
      EXPECT_EQ(e.kind(), ErrorKind::NonStrictBases);
    }
  }
  const DimReport r = dim_report(s);
  EXPECT_FALSE(r.assouad.has_value());
  EXPECT_FALSE(r.lower.has_value());
  EXPECT_FALSE(r.dichotomy.has_value());
  EXPECT_EQ(r.strictness_error, "NonStrictBases");
  EXPECT_FALSE(r.strictness_ok);
}

TEST(Dims, PlanarCarpetClosedForms) {
  const Sponge s = Sponge::validate({2, 3}, {{0, 0}, {0, 2}, {1, 1}});
  EXPECT_NEAR(hausdorff_dim(s), std::log(std::pow(2.0, std::log(2.0) / std::log(3.0)) + 1.0) / std::log(2.0), 1e-12);
  EXPECT_NEAR(box_dim(s), 1.0 + std::log(1.5) / std::log(3.0), 1e-12);
  EXPECT_NEAR(assouad_dim(s), 1.0 + std::log(2.0) / std::log(3.0), 1e-12);
  EXPECT_NEAR(lower_dim(s), 1.0, 1e-12);
}

TEST(Dims, FullGridHasFullDimension) {
  for (const auto& bases : std::vector<std::vector<int>>{{2, 3}, {2, 3, 5}, {4}}) {
    const Sponge s = full_grid(bases);
    const double d = static_cast<double>(bases.size());
    EXPECT_NEAR(assouad_dim(s), d, 1e-12);
    EXPECT_NEAR(lower_dim(s), d, 1e-12);
    EXPECT_NEAR(box_dim(s), d, 1e-12);
    EXPECT_NEAR(hausdorff_dim(s), d, 1e-12);
    EXPECT_EQ(dichotomy(s), Dichotomy::AllEqual);
  }
}

TEST(Dims, DichotomyVerdicts) {
  EXPECT_EQ(dichotomy(worked_sponge()), Dichotomy::AllDistinct);
  const DimReport r = dim_report(worked_sponge());
  ASSERT_TRUE(r.dichotomy.has_value());
  EXPECT_EQ(*r.dichotomy, Dichotomy::AllDistinct);
  EXPECT_TRUE(r.strictness_ok);
  EXPECT_FALSE(r.uniform_fibres);
  EXPECT_THROW(dichotomy(testing_support::equal_bases_sponge()), SpongeError);
}

TEST(Dims, ZTablesHaveOneEntryPerPrefix) {
  const Sponge s = worked_sponge();
  const ZTables z = hausdorff_z_tables(s);
  ASSERT_EQ(z.z.size(), 4u);
  for (int l = 0; l <= 3; ++l) EXPECT_EQ(z.z[l].size(), s.level(l).size());
  // Z_2(p) = N(p)^{log 4 / log 4}.
  EXPECT_DOUBLE_EQ(z.z[2].at({1, 2}), 3.0);
  EXPECT_DOUBLE_EQ(z.z[2].at({0, 1}), 1.0);
}

TEST(Dims, FamilyMatchesClosedForms) {
  for (double lambda : {0.1, 0.25, 0.4}) {
    const FamilyDims f = lg_family_dims(lambda);
    EXPECT_DOUBLE_EQ(f.lower, 1.0);
    EXPECT_NEAR(f.hausdorff, std::log(1.0 + std::pow(2.0, -std::log(2.0) / std::log(lambda))) / std::log(2.0), 1e-12);
    EXPECT_NEAR(f.box, 1.0 + std::log(1.5) / -std::log(lambda), 1e-12);
    EXPECT_NEAR(f.assouad, 1.0 + std::log(2.0) / -std::log(lambda), 1e-12);
  }
  const FamilyDims half = lg_family_dims(0.5);
  const double t = std::log(3.0) / std::log(2.0);
  EXPECT_DOUBLE_EQ(half.lower, t);
  EXPECT_DOUBLE_EQ(half.hausdorff, t);
  EXPECT_DOUBLE_EQ(half.box, t);
  EXPECT_DOUBLE_EQ(half.assouad, t);
  EXPECT_THROW(lg_family_dims(0.0), SpongeError);
  EXPECT_THROW(lg_family_dims(0.6), SpongeError);
}

TEST(Dims, FamilyAgreesWithEquivalentGridCarpets) {
  // For lambda = 1/m the family member is the grid carpet with bases (2, m).
  for (int m : {4, 8, 16}) {
    const Sponge s = Sponge::validate({2, m}, {{0, 0}, {1, 0}, {1, m - 1}});
    const FamilyDims f = lg_family_dims(1.0 / m);
    EXPECT_NEAR(f.lower, lower_dim(s), 1e-12);
    EXPECT_NEAR(f.hausdorff, hausdorff_dim(s), 1e-12);
    EXPECT_NEAR(f.box, box_dim(s), 1e-12);
    EXPECT_NEAR(f.assouad, assouad_dim(s), 1e-12);
  }
}

TEST(Dims, FamilyJumpAtOneHalf) {
  const double just_below = lg_family_dims(0.5 - 1e-9).assouad;
  EXPECT_NEAR(just_below, 2.0, 1e-6);
  EXPECT_NEAR(lg_family_dims(0.5).assouad, std::log(3.0) / std::log(2.0), 1e-12);
  EXPECT_NEAR(lg_family_dims(0.5 - 1e-9).lower, 1.0, 1e-12);
}

TEST(Dims, FamilyGridAndCsv) {
  const auto grid = lg_family_grid(0.1, 0.5, 0.1);
  ASSERT_EQ(grid.size(), 5u);
  EXPECT_DOUBLE_EQ(grid.back(), 0.5);
  const std::string csv = lg_family_csv({0.25});
  EXPECT_EQ(csv.rfind("lambda,lower,hausdorff,box,assouad\n", 0), 0u);
  EXPECT_THROW(lg_family_grid(0.3, 0.1, 0.1), SpongeError);
}
