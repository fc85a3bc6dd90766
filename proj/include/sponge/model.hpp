#pragma once

#include "sponge/errors.hpp"

#include <map>
#include <memory>
#include <string>
#include <vector>

namespace sponge {

/// One symbol (i_1, ..., i_d) of the digit set.
using DigitTuple = std::vector<int>;
/// A truncated tuple (i_1, ..., i_l); the empty prefix stands for level 0.
using Prefix = std::vector<int>;
/// A finite word over the digit set, outermost symbol first.
using SymbolicWord = std::vector<DigitTuple>;

/// First `l` coordinates of `t`. Throws OutOfRange unless 0 <= l <= t.size().
Prefix project(const DigitTuple& t, int l);

/// Digit set and bases after deleting one coordinate; offered when the input
/// lies in an axis-aligned hyperplane.
struct ReducedSponge {
  std::vector<int> bases;
  std::vector<DigitTuple> digits;
};

class DegenerateCoordinateError : public SpongeError {
 public:
  DegenerateCoordinateError(int coordinate, ReducedSponge suggestion);

  /// 1-based index of the constant coordinate.
  int coordinate() const noexcept { return coordinate_; }
  const ReducedSponge& suggestion() const noexcept { return suggestion_; }

 private:
  int coordinate_;
  ReducedSponge suggestion_;
};

/// A validated self-affine sponge: bases n_1 <= ... <= n_d and a digit set D.
///
/// Instances are immutable and cheap to copy. The projected digit sets
/// D_0 = {()}, D_1, ..., D_d = D and the fibre tables are materialized at
/// construction, so every query below is a lookup.
class Sponge {
 public:
  /// Checks every model invariant and returns the sponge. Digits are stored
  /// in lexicographic order.
  static Sponge validate(std::vector<int> bases, std::vector<DigitTuple> digits);

  int dim() const noexcept { return static_cast<int>(data_->bases.size()); }
  const std::vector<int>& bases() const noexcept { return data_->bases; }
  /// Base of coordinate `l`, 1-based.
  int base(int l) const;
  const std::vector<DigitTuple>& digits() const noexcept { return data_->levels.back().prefixes; }
  std::size_t size() const noexcept { return digits().size(); }
  /// True when n_1 < n_2 < ... < n_d.
  bool strict() const noexcept { return data_->strict; }

  /// D_l for 0 <= l <= d, sorted and deduplicated.
  const std::vector<Prefix>& level(int l) const;
  bool contains(const Prefix& p) const;

  /// Admissible next digits after `p` (sorted). Defined for |p| < d.
  const std::vector<int>& children(const Prefix& p) const;
  /// N(p); N(()) is the number of distinct first digits.
  int fibre_count(const Prefix& p) const { return static_cast<int>(children(p).size()); }
  /// Extremes of N over D_l, 0 <= l < d.
  int max_fibre(int l) const;
  int min_fibre(int l) const;

  friend bool operator==(const Sponge& a, const Sponge& b) {
    return a.bases() == b.bases() && a.digits() == b.digits();
  }

 private:
  struct Level {
    std::vector<Prefix> prefixes;
    std::map<Prefix, std::vector<int>> children;  // empty at level d
    int max_fibre = 0;
    int min_fibre = 0;
  };
  struct Data {
    std::vector<int> bases;
    bool strict = false;
    std::vector<Level> levels;  // levels[l] holds D_l
  };

  explicit Sponge(std::shared_ptr<const Data> data) : data_(std::move(data)) {}

  std::shared_ptr<const Data> data_;
};

/// D_l for 1 <= l <= d.
const std::vector<Prefix>& digit_set_projection(const Sponge& s, int l);

/// Every fibre count is constant on each level D_1, ..., D_{d-1}.
bool has_uniform_fibres(const Sponge& s);

/// Digits that agree on the first l-1 coordinates and differ in coordinate l
/// differ there by more than one.
bool satisfies_vssc(const Sponge& s);

/// "0,1,2" style rendering used in messages and file keys.
std::string format_tuple(const std::vector<int>& t);

}  // namespace sponge
