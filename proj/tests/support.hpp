#pragma once

#include "sponge/io.hpp"
#include "sponge/model.hpp"
#include "sponge/rational.hpp"

#include <cstdint>
#include <map>
#include <set>
#include <string>
#include <vector>

namespace testing_support {

using sponge::DigitTuple;
using sponge::Rational;

inline std::string data_path(const std::string& name) { return std::string(SPONGE_DATA_DIR) + "/" + name; }

inline sponge::Sponge worked_sponge() { return sponge::load_sponge(data_path("worked_sponge_234.json")); }
inline sponge::Sponge equal_bases_sponge() { return sponge::load_sponge(data_path("equal_bases_sponge_344.json")); }
inline sponge::Sponge no_doubling_carpet() { return sponge::load_sponge(data_path("no_doubling_carpet_24.json")); }
inline sponge::Sponge vssc_carpet() { return sponge::load_sponge(data_path("vssc_carpet_34.json")); }

/// splitmix64; test-side randomness independent of the library generator.
class TestRng {
 public:
  explicit TestRng(std::uint64_t seed) : state_(seed) {}
  std::uint64_t next() {
    std::uint64_t z = (state_ += 0x9E3779B97F4A7C15ull);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
    return z ^ (z >> 31);
  }
  int uniform(int lo, int hi) { return lo + static_cast<int>(next() % static_cast<std::uint64_t>(hi - lo + 1)); }

 private:
  std::uint64_t state_;
};

struct RawSponge {
  std::vector<int> bases;
  std::vector<DigitTuple> digits;
};

/// Random strict sponge: dimension in [min_dim, max_dim], bases strictly
/// increasing within [2, max_base], 2..max_digits distinct digits and no
/// constant coordinate.
inline RawSponge random_strict_raw(TestRng& rng, int min_dim, int max_dim, int max_base, int max_digits) {
  while (true) {
    RawSponge raw;
    const int d = rng.uniform(min_dim, max_dim);
    std::set<int> chosen;
    while (static_cast<int>(chosen.size()) < d) chosen.insert(rng.uniform(2, max_base));
    raw.bases.assign(chosen.begin(), chosen.end());
    long long grid = 1;
    for (int n : raw.bases) grid *= n;
    const int target = rng.uniform(2, static_cast<int>(std::min<long long>(grid, max_digits)));
    std::set<DigitTuple> digits;
    while (static_cast<int>(digits.size()) < target) {
      DigitTuple t;
      for (int n : raw.bases) t.push_back(rng.uniform(0, n - 1));
      digits.insert(t);
    }
    raw.digits.assign(digits.begin(), digits.end());
    bool degenerate = false;
    for (int l = 0; l < d; ++l) {
      bool constant = true;
      for (const auto& t : raw.digits) constant = constant && t[l] == raw.digits.front()[l];
      degenerate = degenerate || constant;
    }
    if (!degenerate) return raw;
  }
}

inline sponge::Sponge random_strict_sponge(TestRng& rng, int min_dim = 1, int max_dim = 3, int max_base = 6,
                                           int max_digits = 20) {
  RawSponge raw = random_strict_raw(rng, min_dim, max_dim, max_base, max_digits);
  return sponge::Sponge::validate(raw.bases, raw.digits);
}

// ---------------------------------------------------------------------------
// Independent oracles working on the raw digit list.

inline std::set<DigitTuple> raw_projection(const std::vector<DigitTuple>& digits, int l) {
  std::set<DigitTuple> out;
  for (const auto& t : digits) out.insert(DigitTuple(t.begin(), t.begin() + l));
  return out;
}

/// Fibre counts over D_l keyed by prefix.
inline std::map<DigitTuple, int> raw_fibres(const std::vector<DigitTuple>& digits, int l) {
  std::map<DigitTuple, std::set<int>> sets;
  for (const auto& t : digits) sets[DigitTuple(t.begin(), t.begin() + l)].insert(t[l]);
  std::map<DigitTuple, int> out;
  for (const auto& [p, s] : sets) out[p] = static_cast<int>(s.size());
  return out;
}

/// Largest k with n^k <= 1 / r by repeated multiplication.
inline int oracle_exponent(int n, const Rational& r) {
  int k = 0;
  Rational power = 1;
  while (power * n * r <= 1) {
    power *= n;
    ++k;
  }
  return k;
}

using CubeKey = std::vector<std::vector<int>>;

/// Brute force: visit all |D|^m words, cut each coordinate track at its own
/// exponent and add the word weight to that constraint pattern.
inline std::map<CubeKey, Rational> oracle_cube_masses(const std::vector<int>& bases,
                                                      const std::vector<DigitTuple>& digits,
                                                      const std::vector<Rational>& weights, const Rational& r, int m) {
  const int d = static_cast<int>(bases.size());
  std::vector<int> k;
  for (int n : bases) k.push_back(oracle_exponent(n, r));
  std::map<CubeKey, Rational> out;
  std::vector<std::size_t> word(m, 0);
  while (true) {
    CubeKey key(d);
    Rational w = 1;
    for (int t = 0; t < m; ++t) w *= weights[word[t]];
    for (int l = 0; l < d; ++l) {
      for (int t = 0; t < k[l]; ++t) key[l].push_back(digits[word[t]][l]);
    }
    out[key] += w;
    int t = m;
    while (t > 0 && ++word[t - 1] == digits.size()) {
      word[t - 1] = 0;
      --t;
    }
    if (t == 0) break;
  }
  return out;
}

}  // namespace testing_support
