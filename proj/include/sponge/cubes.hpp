#pragma once

#include "sponge/model.hpp"
#include "sponge/rational.hpp"

#include <cstdint>
#include <string>
#include <vector>

namespace sponge {

inline constexpr std::uint64_t kDefaultEnumerationCap = 10'000'000;

/// The unique k_l(r) with n_l^{-(k_l+1)} < r <= n_l^{-k_l}, one per coordinate.
struct ScaleExponents {
  Rational r;
  std::vector<int> k;
};

/// Integer search on exact powers, so r = n_l^{-k} maps to k. 0 < r <= 1.
ScaleExponents scale_exponents(const Sponge& s, const Rational& r);

/// Symbolic cube Q(w, r): coordinate l fixes the first k_l(r) digits of the
/// coordinate-l track of w.
struct ApproximateCube {
  Rational scale;
  std::vector<int> k;
  std::vector<std::vector<int>> constraints;  // constraints[l].size() == k[l]

  /// Number of coordinates fixed at 1-based word position t.
  int fixed_at(int t) const;
  /// Digits fixed at position t (a member of D_{fixed_at(t)}).
  Prefix position_prefix(int t) const;

  friend bool operator==(const ApproximateCube&, const ApproximateCube&) = default;
};

/// Checks every entry of `w` belongs to D (InvalidWord otherwise).
void check_word(const Sponge& s, const SymbolicWord& w);

ApproximateCube approximate_cube(const Sponge& s, const SymbolicWord& w, const Rational& r);

/// The cube whose position prefixes are `prefixes` (prefixes[t-1] in D_{L_t}).
ApproximateCube cube_from_prefixes(const Sponge& s, const Rational& r, const std::vector<Prefix>& prefixes);

/// Lexicographically smallest word of length k_1 lying in the cube.
SymbolicWord representative_word(const Sponge& s, const ApproximateCube& q);

struct Interval {
  Rational lo;
  Rational hi;
  friend bool operator==(const Interval&, const Interval&) = default;
};

/// Axis-aligned box in [0,1]^d with exact rational corners.
struct Hypercuboid {
  std::vector<Interval> sides;
  friend bool operator==(const Hypercuboid&, const Hypercuboid&) = default;
};

using BoxSet = std::vector<Hypercuboid>;

Hypercuboid unit_cube(int d);
bool contains(const Hypercuboid& outer, const Hypercuboid& inner);
bool interiors_disjoint(const Hypercuboid& a, const Hypercuboid& b);

/// Natural hypercuboid containing tau(Q): coordinate l is
/// [sum_t i_{t,l} n_l^{-t}, that + n_l^{-k_l}].
Hypercuboid geometric_box(const Sponge& s, const ApproximateCube& q);

/// Sub-cubes of Q at the finer scale r in lexicographic order (positions
/// outer to inner). Throws ScaleOrder if r > Q.scale and EnumerationTooLarge
/// when the count exceeds `cap`.
std::vector<ApproximateCube> subcubes(const Sponge& s, const ApproximateCube& q, const Rational& r,
                                      std::uint64_t cap = kDefaultEnumerationCap);

/// |subcubes(s, q, r)| without enumerating.
BigInt count_subcubes(const Sponge& s, const ApproximateCube& q, const Rational& r);

/// Number of distinct scale-r cubes: prod_l |D_l|^{k_l(r) - k_{l+1}(r)}, k_{d+1} = 0.
BigInt count_cubes(const Sponge& s, const Rational& r);

/// log count_cubes(n_1^{-depth}) / (depth log n_1).
double box_dim_slope(const Sponge& s, int depth);

/// Level-m pre-fractal: one box S_w([0,1]^d) per word w in D^m.
BoxSet prefractal(const Sponge& s, int m, std::uint64_t cap = kDefaultEnumerationCap);

/// CSV with header lo_1,hi_1,...,lo_d,hi_d and "p/q" entries.
std::string boxes_to_csv(const BoxSet& boxes, int d);
/// SVG over the unit square (d = 2 only), y axis pointing up.
std::string boxes_to_svg(const BoxSet& boxes);

}  // namespace sponge
