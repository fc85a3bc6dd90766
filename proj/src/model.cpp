#include "sponge/model.hpp"

#include <algorithm>
#include <set>

namespace sponge {

std::string format_tuple(const std::vector<int>& t) {
  std::string out;
  for (std::size_t i = 0; i < t.size(); ++i) {
    if (i) out += ',';
    out += std::to_string(t[i]);
  }
  return out;
}

Prefix project(const DigitTuple& t, int l) {
  if (l < 0 || l > static_cast<int>(t.size())) {
    throw SpongeError(ErrorKind::OutOfRange,
                      "projection length " + std::to_string(l) + " outside 0.." + std::to_string(t.size()));
  }
  return Prefix(t.begin(), t.begin() + l);
}

namespace {

std::string describe_reduced(const ReducedSponge& r) {
  std::string out = "bases (" + format_tuple(r.bases) + "), digits {";
  for (std::size_t i = 0; i < r.digits.size(); ++i) {
    if (i) out += ' ';
    out += '(' + format_tuple(r.digits[i]) + ')';
  }
  return out + "}";
}

ReducedSponge drop_coordinate(const std::vector<int>& bases, const std::vector<DigitTuple>& digits,
                              int coordinate) {
  ReducedSponge r;
  for (int l = 0; l < static_cast<int>(bases.size()); ++l) {
    if (l != coordinate - 1) r.bases.push_back(bases[l]);
  }
  std::set<DigitTuple> unique;
  for (const auto& t : digits) {
    DigitTuple reduced;
    for (int l = 0; l < static_cast<int>(t.size()); ++l) {
      if (l != coordinate - 1) reduced.push_back(t[l]);
    }
    unique.insert(std::move(reduced));
  }
  r.digits.assign(unique.begin(), unique.end());
  return r;
}

}  // namespace

DegenerateCoordinateError::DegenerateCoordinateError(int coordinate, ReducedSponge suggestion)
    : SpongeError(ErrorKind::DegenerateCoordinate,
                  "coordinate " + std::to_string(coordinate) +
                      " is constant over the digit set; the attractor lies in a hyperplane. "
                      "Suggested reduced sponge: " + describe_reduced(suggestion)),
      coordinate_(coordinate),
      suggestion_(std::move(suggestion)) {}

Sponge Sponge::validate(std::vector<int> bases, std::vector<DigitTuple> digits) {
  if (bases.empty()) throw SpongeError(ErrorKind::InvalidBases, "at least one base is required");
  for (std::size_t l = 0; l < bases.size(); ++l) {
    if (bases[l] < 2) {
      throw SpongeError(ErrorKind::InvalidBases,
                        "base n_" + std::to_string(l + 1) + " = " + std::to_string(bases[l]) + " is below 2");
    }
    if (l > 0 && bases[l] < bases[l - 1]) {
      throw SpongeError(ErrorKind::DecreasingBases,
                        "bases must be non-decreasing but n_" + std::to_string(l) + " = " +
                            std::to_string(bases[l - 1]) + " > n_" + std::to_string(l + 1) + " = " +
                            std::to_string(bases[l]));
    }
  }
  if (digits.size() < 2) {
    throw SpongeError(ErrorKind::EmptyOrSingletonDigits,
                      "the digit set needs at least two elements, got " + std::to_string(digits.size()));
  }
  const int d = static_cast<int>(bases.size());
  for (const auto& t : digits) {
    if (static_cast<int>(t.size()) != d) {
      throw SpongeError(ErrorKind::DimensionMismatch, "digit (" + format_tuple(t) + ") has length " +
                                                          std::to_string(t.size()) + ", expected " +
                                                          std::to_string(d));
    }
    for (int l = 0; l < d; ++l) {
      if (t[l] < 0 || t[l] >= bases[l]) {
        throw SpongeError(ErrorKind::DigitOutOfRange,
                          "digit (" + format_tuple(t) + "): coordinate " + std::to_string(l + 1) + " value " +
                              std::to_string(t[l]) + " outside 0.." + std::to_string(bases[l] - 1));
      }
    }
  }
  std::sort(digits.begin(), digits.end());
  if (auto dup = std::adjacent_find(digits.begin(), digits.end()); dup != digits.end()) {
    throw SpongeError(ErrorKind::DuplicateDigit, "digit (" + format_tuple(*dup) + ") is listed twice");
  }
  for (int l = 0; l < d; ++l) {
    const bool constant = std::all_of(digits.begin(), digits.end(),
                                      [&](const DigitTuple& t) { return t[l] == digits.front()[l]; });
    if (constant) throw DegenerateCoordinateError(l + 1, drop_coordinate(bases, digits, l + 1));
  }

  auto data = std::make_shared<Data>();
  data->strict = std::adjacent_find(bases.begin(), bases.end(), std::greater_equal<>()) == bases.end();
  data->levels.resize(d + 1);
  for (int l = 0; l <= d; ++l) {
    std::set<Prefix> unique;
    for (const auto& t : digits) unique.insert(Prefix(t.begin(), t.begin() + l));
    data->levels[l].prefixes.assign(unique.begin(), unique.end());
  }
  for (int l = 0; l < d; ++l) {
    Level& level = data->levels[l];
    for (const auto& p : level.prefixes) level.children[p];
    for (const auto& q : data->levels[l + 1].prefixes) {
      level.children[Prefix(q.begin(), q.end() - 1)].push_back(q.back());
    }
    level.max_fibre = 0;
    level.min_fibre = bases[l];
    for (const auto& [prefix, next] : level.children) {
      level.max_fibre = std::max(level.max_fibre, static_cast<int>(next.size()));
      level.min_fibre = std::min(level.min_fibre, static_cast<int>(next.size()));
    }
  }
  data->bases = std::move(bases);
  return Sponge(std::move(data));
}

int Sponge::base(int l) const {
  if (l < 1 || l > dim()) throw SpongeError(ErrorKind::OutOfRange, "coordinate " + std::to_string(l) + " out of range");
  return data_->bases[l - 1];
}

const std::vector<Prefix>& Sponge::level(int l) const {
  if (l < 0 || l > dim()) {
    throw SpongeError(ErrorKind::OutOfRange, "level " + std::to_string(l) + " outside 0.." + std::to_string(dim()));
  }
  return data_->levels[l].prefixes;
}

bool Sponge::contains(const Prefix& p) const {
  if (static_cast<int>(p.size()) > dim()) return false;
  const auto& prefixes = data_->levels[p.size()].prefixes;
  return std::binary_search(prefixes.begin(), prefixes.end(), p);
}

const std::vector<int>& Sponge::children(const Prefix& p) const {
  if (static_cast<int>(p.size()) >= dim()) {
    throw SpongeError(ErrorKind::OutOfRange, "fibres are defined for prefixes shorter than " + std::to_string(dim()));
  }
  const auto& table = data_->levels[p.size()].children;
  auto it = table.find(p);
  if (it == table.end()) {
    throw SpongeError(ErrorKind::PrefixNotInSponge, "prefix (" + format_tuple(p) + ") is not in D_" +
                                                        std::to_string(p.size()));
  }
  return it->second;
}

int Sponge::max_fibre(int l) const {
  if (l < 0 || l >= dim()) throw SpongeError(ErrorKind::OutOfRange, "fibre level " + std::to_string(l) + " out of range");
  return data_->levels[l].max_fibre;
}

int Sponge::min_fibre(int l) const {
  if (l < 0 || l >= dim()) throw SpongeError(ErrorKind::OutOfRange, "fibre level " + std::to_string(l) + " out of range");
  return data_->levels[l].min_fibre;
}

const std::vector<Prefix>& digit_set_projection(const Sponge& s, int l) {
  if (l < 1 || l > s.dim()) {
    throw SpongeError(ErrorKind::OutOfRange, "projection level " + std::to_string(l) + " outside 1.." + std::to_string(s.dim()));
  }
  return s.level(l);
}

bool has_uniform_fibres(const Sponge& s) {
  for (int l = 1; l < s.dim(); ++l) {
    if (s.max_fibre(l) != s.min_fibre(l)) return false;
  }
  return true;
}

bool satisfies_vssc(const Sponge& s) {
  for (int l = 0; l < s.dim(); ++l) {
    for (const auto& p : s.level(l)) {
      const auto& next = s.children(p);
      for (std::size_t i = 1; i < next.size(); ++i) {
        if (next[i] - next[i - 1] <= 1) return false;
      }
    }
  }
  return true;
}

}  // namespace sponge
