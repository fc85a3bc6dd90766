#include "sponge/verify.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace sponge {

std::string to_string(DoublingVerdict v) {
  return v == DoublingVerdict::NonDoubling ? "NonDoubling" : "DoublingUpToDepth";
}

AdjacencyScan::AdjacencyScan(const Sponge& s, int max_depth, std::uint64_t cap) : sponge_(s) {
  if (max_depth < 1) throw SpongeError(ErrorKind::OutOfRange, "max depth must be at least 1");
  const int d = s.dim();
  const int nd = s.bases().back();
  const std::uint64_t limit = std::min<std::uint64_t>(cap, 0xFFFFFFFFull);
  for (int depth = 1; depth <= max_depth; ++depth) {
    Level level;
    level.scale = inverse_power(nd, static_cast<unsigned>(depth));
    const ScaleExponents se = scale_exponents(s, level.scale);
    level.k = se.k;
    const BigInt count = count_cubes(s, level.scale);
    if (count > limit) {
      throw SpongeError(ErrorKind::EnumerationTooLarge, count.str() + " cubes at depth " + std::to_string(depth) +
                                                            " exceed the enumeration cap of " + std::to_string(limit));
    }
    level.cubes = count.convert_to<std::uint64_t>();
    std::vector<std::uint64_t> extent(d);
    for (int l = 0; l < d; ++l) {
      const BigInt e = pow_int(BigInt(s.bases()[l]), static_cast<unsigned>(se.k[l]));
      if (e >= BigInt(1) << 62) throw SpongeError(ErrorKind::Unsupported, "grid too fine for 64-bit cube indices");
      extent[l] = e.convert_to<std::uint64_t>();
    }
    for (int t = 1; t <= se.k.front(); ++t) {
      int fixed = 0;
      for (int kl : se.k) fixed += kl >= t ? 1 : 0;
      level.fixed.push_back(fixed);
    }

    // Grid index of every cube, enumerated with the last position fastest.
    const std::size_t positions = level.fixed.size();
    std::vector<std::uint64_t> keys(level.cubes * d);
    std::vector<std::size_t> odometer(positions, 0);
    for (std::uint64_t c = 0; c < level.cubes; ++c) {
      std::uint64_t* key = &keys[c * d];
      for (std::size_t t = 0; t < positions; ++t) {
        const Prefix& p = s.level(level.fixed[t])[odometer[t]];
        for (std::size_t l = 0; l < p.size(); ++l) key[l] = key[l] * s.bases()[l] + p[l];
      }
      std::size_t t = positions;
      while (t > 0 && ++odometer[t - 1] == s.level(level.fixed[t - 1]).size()) {
        odometer[t - 1] = 0;
        --t;
      }
    }

    std::vector<std::uint32_t> order(level.cubes);
    std::iota(order.begin(), order.end(), 0u);
    auto less = [&](std::uint32_t a, std::uint32_t b) {
      return std::lexicographical_compare(&keys[a * d], &keys[a * d] + d, &keys[b * d], &keys[b * d] + d);
    };
    std::sort(order.begin(), order.end(), less);
    std::vector<std::uint64_t> probe(d);
    for (std::uint32_t c = 0; c < level.cubes; ++c) {
      for (int l = 0; l < d; ++l) {
        if (keys[c * d + l] + 1 >= extent[l]) continue;
        std::copy(&keys[c * d], &keys[c * d] + d, probe.begin());
        ++probe[l];
        auto it = std::lower_bound(order.begin(), order.end(), probe, [&](std::uint32_t a, const auto& key) {
          return std::lexicographical_compare(&keys[a * d], &keys[a * d] + d, key.begin(), key.end());
        });
        if (it != order.end() && std::equal(probe.begin(), probe.end(), &keys[*it * d])) {
          level.pairs.emplace_back(c, *it);
        }
      }
    }
    levels_.push_back(std::move(level));
  }
}

ApproximateCube AdjacencyScan::decode(const Level& level, std::uint64_t ordinal) const {
  std::vector<Prefix> prefixes(level.fixed.size());
  for (std::size_t t = level.fixed.size(); t-- > 0;) {
    const auto& choices = sponge_.level(level.fixed[t]);
    prefixes[t] = choices[ordinal % choices.size()];
    ordinal /= choices.size();
  }
  return cube_from_prefixes(sponge_, level.scale, prefixes);
}

std::vector<double> AdjacencyScan::log_measures(const Level& level, const BernoulliMeasure& m) const {
  const std::size_t positions = level.fixed.size();
  std::vector<std::vector<double>> table(positions);
  for (std::size_t t = 0; t < positions; ++t) {
    for (const Prefix& p : sponge_.level(level.fixed[t])) table[t].push_back(m.log_mass(p));
  }
  std::vector<double> out;
  out.reserve(level.cubes);
  std::vector<double> partial(positions + 1, 0.0);
  auto walk = [&](auto&& self, std::size_t t) -> void {
    if (t == positions) {
      out.push_back(partial[t]);
      return;
    }
    for (double v : table[t]) {
      partial[t + 1] = partial[t] + v;
      self(self, t + 1);
    }
  };
  walk(walk, 0);
  return out;
}

DoublingVerdict doubling_verdict(const std::vector<DepthRatio>& depths, double growth_rate,
                                 const DoublingOptions& options) {
  if (!(growth_rate > 1.0 + options.growth_tolerance)) return DoublingVerdict::DoublingUpToDepth;
  const int m = options.monotone_depths;
  if (static_cast<int>(depths.size()) < m) return DoublingVerdict::DoublingUpToDepth;
  for (std::size_t i = depths.size() - m + 1; i < depths.size(); ++i) {
    if (!(depths[i].log_max_ratio > depths[i - 1].log_max_ratio)) return DoublingVerdict::DoublingUpToDepth;
  }
  return DoublingVerdict::NonDoubling;
}

DoublingReport AdjacencyScan::report(const BernoulliMeasure& m, const DoublingOptions& options) const {
  if (!(m.sponge() == sponge_)) throw SpongeError(ErrorKind::InvalidMeasure, "measure belongs to a different sponge");
  DoublingReport out;
  for (std::size_t i = 0; i < levels_.size(); ++i) {
    const Level& level = levels_[i];
    const std::vector<double> logs = log_measures(level, m);
    DepthRatio row;
    row.depth = static_cast<int>(i) + 1;
    row.scale = level.scale;
    row.cubes = level.cubes;
    row.adjacent_pairs = level.pairs.size();
    std::optional<std::pair<std::uint32_t, std::uint32_t>> best;
    for (const auto& [a, b] : level.pairs) {
      const double gap = std::abs(logs[a] - logs[b]);
      if (!best || gap > row.log_max_ratio) {
        row.log_max_ratio = gap;
        best = logs[a] >= logs[b] ? std::make_pair(a, b) : std::make_pair(b, a);
      }
    }
    if (best) row.witness = std::make_pair(decode(level, best->first), decode(level, best->second));
    out.depths.push_back(std::move(row));
  }

  // Least-squares slope of log max ratio against depth.
  const double n = static_cast<double>(out.depths.size());
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (const auto& row : out.depths) {
    sx += row.depth;
    sy += row.log_max_ratio;
    sxx += static_cast<double>(row.depth) * row.depth;
    sxy += row.depth * row.log_max_ratio;
  }
  const double denom = n * sxx - sx * sx;
  const double slope = denom > 0 ? (n * sxy - sx * sy) / denom : sy / sx;
  out.growth_rate = std::exp(slope);
  out.verdict = doubling_verdict(out.depths, out.growth_rate, options);
  return out;
}

DoublingReport doubling_report(const Sponge& s, const BernoulliMeasure& m, int max_depth,
                               const DoublingOptions& options) {
  return AdjacencyScan(s, max_depth, options.cap).report(m, options);
}

}  // namespace sponge
