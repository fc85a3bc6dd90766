#include "sponge/verify.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace sponge {

std::string to_string(TangentMode mode) { return mode == TangentMode::Max ? "max" : "min"; }

TangentMode parse_tangent_mode(const std::string& text) {
  if (text == "max") return TangentMode::Max;
  if (text == "min") return TangentMode::Min;
  throw SpongeError(ErrorKind::ParseError, "mode must be 'max' or 'min', got '" + text + "'");
}

namespace {

void require_strict(const Sponge& s) {
  if (!s.strict()) throw SpongeError(ErrorKind::NonStrictBases, "weak tangents need strictly increasing bases");
}

void check_witness_shape(const Sponge& s, const std::vector<DigitTuple>& witnesses) {
  if (static_cast<int>(witnesses.size()) != s.dim() - 1) {
    throw SpongeError(ErrorKind::DimensionMismatch, "expected " + std::to_string(s.dim() - 1) + " witness digits");
  }
  for (const auto& w : witnesses) {
    if (!std::binary_search(s.digits().begin(), s.digits().end(), w)) {
      throw SpongeError(ErrorKind::InvalidWord, "witness (" + format_tuple(w) + ") is not a digit");
    }
  }
}

// Interval indices A in [0, n^m) whose m base-n digits all lie in `digits`.
std::vector<std::uint64_t> factor_indices(int n, const std::vector<int>& digits, int m) {
  std::vector<std::uint64_t> out{0};
  for (int j = 0; j < m; ++j) {
    std::vector<std::uint64_t> next;
    next.reserve(out.size() * digits.size());
    for (std::uint64_t a : out) {
      for (int c : digits) next.push_back(a * n + c);
    }
    out.swap(next);
  }
  return out;
}

std::uint64_t checked_power(int n, int m) {
  const BigInt p = pow_int(BigInt(n), static_cast<unsigned>(m));
  if (p >= BigInt(1) << 62) throw SpongeError(ErrorKind::EnumerationTooLarge, "grid too fine for 64-bit indices");
  return p.convert_to<std::uint64_t>();
}

bool single_endpoint(int n, const std::vector<int>& digits) {
  return digits.size() == 1 && (digits.front() == 0 || digits.front() == n - 1);
}

// Squared distance transform along one axis: f(i) <- min_j f(j) + w (i - j)^2.
void distance_transform_1d(std::vector<double>& f, double w, std::vector<double>& out, std::vector<std::size_t>& v,
                           std::vector<double>& z) {
  const std::size_t n = f.size();
  v.assign(n, 0);
  z.assign(n + 1, 0.0);
  std::size_t k = 0;
  bool any = false;
  for (std::size_t q = 0; q < n; ++q) {
    if (!std::isfinite(f[q])) continue;
    if (!any) {
      any = true;
      v[0] = q;
      z[0] = -INFINITY;
      z[1] = INFINITY;
      continue;
    }
    while (true) {
      const std::size_t p = v[k];
      const double qd = static_cast<double>(q), pd = static_cast<double>(p);
      const double s = ((f[q] + w * qd * qd) - (f[p] + w * pd * pd)) / (2.0 * w * (qd - pd));
      if (s <= z[k]) {
        if (k == 0) {
          v[0] = q;
          z[0] = -INFINITY;
          z[1] = INFINITY;
          break;
        }
        --k;
        continue;
      }
      ++k;
      v[k] = q;
      z[k] = s;
      z[k + 1] = INFINITY;
      break;
    }
  }
  out.assign(n, INFINITY);
  if (!any) return;
  k = 0;
  for (std::size_t q = 0; q < n; ++q) {
    while (z[k + 1] < static_cast<double>(q)) ++k;
    const double diff = static_cast<double>(q) - static_cast<double>(v[k]);
    out[q] = f[v[k]] + w * diff * diff;
  }
}

// Exact Euclidean squared distance from every grid cell to the nearest
// occupied cell; axis l has cell side `side[l]`.
std::vector<double> squared_distance_field(const std::vector<char>& occupied, const std::vector<std::uint64_t>& extent,
                                           const std::vector<double>& side) {
  std::vector<double> field(occupied.size());
  for (std::size_t i = 0; i < occupied.size(); ++i) field[i] = occupied[i] ? 0.0 : INFINITY;
  const std::size_t d = extent.size();
  std::vector<double> line, out, z;
  std::vector<std::size_t> v;
  for (std::size_t axis = 0; axis < d; ++axis) {
    std::uint64_t stride = 1;
    for (std::size_t l = axis + 1; l < d; ++l) stride *= extent[l];
    const std::uint64_t len = extent[axis];
    const std::uint64_t block = stride * len;
    const double w = side[axis] * side[axis];
    for (std::uint64_t base = 0; base < field.size(); base += block) {
      for (std::uint64_t offset = 0; offset < stride; ++offset) {
        line.resize(len);
        for (std::uint64_t i = 0; i < len; ++i) line[i] = field[base + offset + i * stride];
        distance_transform_1d(line, w, out, v, z);
        for (std::uint64_t i = 0; i < len; ++i) field[base + offset + i * stride] = out[i];
      }
    }
  }
  return field;
}

}  // namespace

std::vector<DigitTuple> tangent_witnesses(const Sponge& s, TangentMode mode) {
  require_strict(s);
  std::vector<DigitTuple> out;
  for (int l = 2; l <= s.dim(); ++l) {
    const int target = mode == TangentMode::Max ? s.max_fibre(l - 1) : s.min_fibre(l - 1);
    for (const auto& t : s.digits()) {
      if (s.fibre_count(project(t, l - 1)) == target) {
        out.push_back(t);
        break;
      }
    }
  }
  return out;
}

void check_witnesses(const Sponge& s, TangentMode mode, const std::vector<DigitTuple>& witnesses) {
  check_witness_shape(s, witnesses);
  for (int l = 2; l <= s.dim(); ++l) {
    const int target = mode == TangentMode::Max ? s.max_fibre(l - 1) : s.min_fibre(l - 1);
    if (s.fibre_count(project(witnesses[l - 2], l - 1)) != target) {
      throw SpongeError(ErrorKind::InvalidWord, "witness (" + format_tuple(witnesses[l - 2]) +
                                                    ") does not attain the extremal fibre at coordinate " +
                                                    std::to_string(l));
    }
  }
}

SymbolicWord tangent_word(const Sponge& s, const Rational& R, const std::vector<DigitTuple>& witnesses) {
  require_strict(s);
  check_witness_shape(s, witnesses);
  const ScaleExponents se = scale_exponents(s, R);
  const int d = s.dim();
  SymbolicWord w(se.k.front(), s.digits().front());
  for (int l = d; l >= 2; --l) {
    for (int t = se.k[l - 1] + 1; t <= se.k[l - 2]; ++t) w[t - 1] = witnesses[l - 2];
  }
  return w;
}

SymbolicWord tangent_word(const Sponge& s, const Rational& R, TangentMode mode) {
  return tangent_word(s, R, tangent_witnesses(s, mode));
}

Hypercuboid TangentMap::apply(const Hypercuboid& box) const {
  Hypercuboid out;
  for (std::size_t l = 0; l < box.sides.size(); ++l) {
    out.sides.push_back(Interval{(box.sides[l].lo - offset[l]) * scale[l], (box.sides[l].hi - offset[l]) * scale[l]});
  }
  return out;
}

TangentMap tangent_map(const Sponge& s, const ApproximateCube& q) {
  TangentMap map;
  map.source = q;
  const Hypercuboid box = geometric_box(s, q);
  for (int l = 0; l < s.dim(); ++l) {
    map.scale.emplace_back(pow_int(BigInt(s.bases()[l]), static_cast<unsigned>(q.k[l])));
    map.offset.push_back(box.sides[l].lo);
  }
  map.a = *std::min_element(map.scale.begin(), map.scale.end());
  map.b = *std::max_element(map.scale.begin(), map.scale.end());
  return map;
}

std::vector<std::vector<int>> hat_factor_digits(const Sponge& s, const std::vector<DigitTuple>& witnesses) {
  check_witness_shape(s, witnesses);
  std::vector<std::vector<int>> out;
  std::vector<int> first;
  for (const Prefix& p : s.level(1)) first.push_back(p[0]);
  out.push_back(first);
  for (int l = 2; l <= s.dim(); ++l) out.push_back(s.children(project(witnesses[l - 2], l - 1)));
  return out;
}

BoxSet hat_set_prefractal(const Sponge& s, const std::vector<DigitTuple>& witnesses, int level, std::uint64_t cap) {
  require_strict(s);
  if (level < 0) throw SpongeError(ErrorKind::OutOfRange, "pre-fractal level must be non-negative");
  const auto factors = hat_factor_digits(s, witnesses);
  const int d = s.dim();
  std::vector<std::vector<Interval>> sides(d);
  BigInt count = 1;
  for (int l = 0; l < d; ++l) {
    const int n = s.bases()[l];
    const bool full = static_cast<int>(factors[l].size()) == n;
    count *= full ? BigInt(1) : pow_int(BigInt(factors[l].size()), static_cast<unsigned>(level));
  }
  if (count > cap) {
    throw SpongeError(ErrorKind::EnumerationTooLarge,
                      count.str() + " hat-set boxes exceed the enumeration cap of " + std::to_string(cap));
  }
  for (int l = 0; l < d; ++l) {
    const int n = s.bases()[l];
    if (static_cast<int>(factors[l].size()) == n) {
      sides[l].push_back(Interval{Rational(0), Rational(1)});
      continue;
    }
    const BigInt scale = pow_int(BigInt(n), static_cast<unsigned>(level));
    for (std::uint64_t a : factor_indices(n, factors[l], level)) {
      sides[l].push_back(Interval{Rational(BigInt(a), scale), Rational(BigInt(a + 1), scale)});
    }
  }
  BoxSet out;
  std::vector<std::size_t> odometer(d, 0);
  while (true) {
    Hypercuboid box;
    for (int l = 0; l < d; ++l) box.sides.push_back(sides[l][odometer[l]]);
    out.push_back(std::move(box));
    int l = d;
    while (l > 0 && ++odometer[l - 1] == sides[l - 1].size()) {
      odometer[l - 1] = 0;
      --l;
    }
    if (l == 0) break;
  }
  return out;
}

BoxSet hat_set_prefractal(const Sponge& s, TangentMode mode, int level, std::uint64_t cap) {
  return hat_set_prefractal(s, tangent_witnesses(s, mode), level, cap);
}

double hat_box_dim(const Sponge& s, const std::vector<DigitTuple>& witnesses) {
  const auto factors = hat_factor_digits(s, witnesses);
  double total = 0.0;
  for (int l = 0; l < s.dim(); ++l) {
    total += std::log(static_cast<double>(factors[l].size())) / std::log(static_cast<double>(s.bases()[l]));
  }
  return total;
}

TangentImage tangent_image(const Sponge& s, const Rational& R, const std::vector<DigitTuple>& witnesses, int level,
                           std::uint64_t cap) {
  const SymbolicWord w = tangent_word(s, R, witnesses);
  const ApproximateCube q = approximate_cube(s, w, R);
  if (level < q.k.front()) {
    throw SpongeError(ErrorKind::OutOfRange, "tangent level " + std::to_string(level) + " is below k_1(R) = " +
                                                 std::to_string(q.k.front()));
  }
  const auto& digits = s.digits();
  const int d = s.dim();
  // Digit ranges allowed at each word position.
  std::vector<std::pair<std::size_t, std::size_t>> ranges;
  BigInt count = 1;
  for (int t = 1; t <= level; ++t) {
    std::size_t lo = 0, hi = digits.size();
    if (t <= q.k.front()) {
      const Prefix p = q.position_prefix(t);
      auto first = std::lower_bound(digits.begin(), digits.end(), p);
      auto last = first;
      while (last != digits.end() && std::equal(p.begin(), p.end(), last->begin())) ++last;
      lo = first - digits.begin();
      hi = last - digits.begin();
    }
    ranges.emplace_back(lo, hi);
    count *= hi - lo;
  }
  if (count > cap) {
    throw SpongeError(ErrorKind::EnumerationTooLarge,
                      count.str() + " tangent image boxes exceed the enumeration cap of " + std::to_string(cap));
  }
  TangentImage image{tangent_map(s, q), level, {}};
  image.boxes.reserve(count.convert_to<std::size_t>());
  std::vector<BigInt> scale(d);
  for (int l = 0; l < d; ++l) scale[l] = pow_int(BigInt(s.bases()[l]), static_cast<unsigned>(level));
  std::vector<std::size_t> odometer(level);
  for (int t = 0; t < level; ++t) odometer[t] = ranges[t].first;
  while (true) {
    Hypercuboid cylinder;
    for (int l = 0; l < d; ++l) {
      BigInt a = 0;
      for (int t = 0; t < level; ++t) a = a * s.bases()[l] + digits[odometer[t]][l];
      cylinder.sides.push_back(Interval{Rational(a, scale[l]), Rational(BigInt(a + 1), scale[l])});
    }
    image.boxes.push_back(image.map.apply(cylinder));
    int t = level;
    while (t > 0 && ++odometer[t - 1] == ranges[t - 1].second) {
      odometer[t - 1] = ranges[t - 1].first;
      --t;
    }
    if (t == 0) break;
  }
  return image;
}

TangentImage tangent_image(const Sponge& s, const Rational& R, TangentMode mode, int level, std::uint64_t cap) {
  return tangent_image(s, R, tangent_witnesses(s, mode), level, cap);
}

std::uint64_t count_uncontained(const Sponge& s, const std::vector<DigitTuple>& witnesses, const TangentImage& image) {
  const auto factors = hat_factor_digits(s, witnesses);
  const auto& k = image.map.source.k;
  const int d = s.dim();
  // Sorted hat intervals per coordinate, factor l refined to the depth its image digits are known.
  std::vector<std::vector<Interval>> sides(d);
  for (int l = 0; l < d; ++l) {
    const int n = s.bases()[l];
    const int m = l == 0 ? image.level - k[0] : std::min(image.level, k[l - 1]) - k[l];
    const BigInt scale = pow_int(BigInt(n), static_cast<unsigned>(m));
    for (std::uint64_t a : factor_indices(n, factors[l], m)) {
      sides[l].push_back(Interval{Rational(BigInt(a), scale), Rational(BigInt(a + 1), scale)});
    }
    std::sort(sides[l].begin(), sides[l].end(), [](const Interval& x, const Interval& y) { return x.lo < y.lo; });
  }
  std::uint64_t missing = 0;
  for (const auto& box : image.boxes) {
    bool inside = true;
    for (int l = 0; l < d && inside; ++l) {
      const Interval& x = box.sides[l];
      auto it = std::upper_bound(sides[l].begin(), sides[l].end(), x.lo,
                                 [](const Rational& v, const Interval& iv) { return v < iv.lo; });
      inside = it != sides[l].begin() && std::prev(it)->lo <= x.lo && x.hi <= std::prev(it)->hi;
    }
    if (!inside) ++missing;
  }
  return missing;
}

TangentConvergence check_tangent_convergence(const Sponge& s, const Rational& R,
                                             const std::vector<DigitTuple>& witnesses, int level, std::uint64_t cap) {
  const TangentImage image = tangent_image(s, R, witnesses, level, cap);
  const auto factors = hat_factor_digits(s, witnesses);
  const auto& k = image.map.source.k;
  const int d = s.dim();

  TangentConvergence out;
  out.R = R;
  out.k = k;
  out.lipschitz_ratio = image.map.lipschitz_ratio();
  out.image_boxes = image.boxes.size();
  out.uncontained = count_uncontained(s, witnesses, image);
  for (int l = 0; l < d; ++l) out.boundary_case = out.boundary_case || single_endpoint(s.bases()[l], factors[l]);

  std::vector<std::uint64_t> extent(d);
  std::vector<double> side(d);
  BigInt cells = 1;
  for (int l = 0; l < d; ++l) {
    extent[l] = checked_power(s.bases()[l], level - k[l]);
    side[l] = 1.0 / static_cast<double>(extent[l]);
    cells *= extent[l];
  }
  if (cells > cap) {
    throw SpongeError(ErrorKind::EnumerationTooLarge,
                      cells.str() + " grid cells exceed the enumeration cap of " + std::to_string(cap));
  }
  const std::size_t total = cells.convert_to<std::size_t>();
  auto flat = [&](const std::vector<std::uint64_t>& idx) {
    std::uint64_t i = 0;
    for (int l = 0; l < d; ++l) i = i * extent[l] + idx[l];
    return i;
  };

  std::vector<char> image_cells(total, 0);
  std::vector<std::uint64_t> idx(d);
  for (const auto& box : image.boxes) {
    for (int l = 0; l < d; ++l) {
      const Rational scaled = box.sides[l].lo * extent[l];
      idx[l] = numerator(scaled).convert_to<std::uint64_t>();
    }
    image_cells[flat(idx)] = 1;
  }
  std::vector<std::vector<std::uint64_t>> hat_axes(d);
  for (int l = 0; l < d; ++l) hat_axes[l] = factor_indices(s.bases()[l], factors[l], level - k[l]);
  std::vector<char> hat_cells(total, 0);
  std::vector<std::size_t> odometer(d, 0);
  while (true) {
    for (int l = 0; l < d; ++l) idx[l] = hat_axes[l][odometer[l]];
    hat_cells[flat(idx)] = 1;
    int l = d;
    while (l > 0 && ++odometer[l - 1] == hat_axes[l - 1].size()) {
      odometer[l - 1] = 0;
      --l;
    }
    if (l == 0) break;
  }

  double worst = 0.0;
  {
    const std::vector<double> to_image = squared_distance_field(image_cells, extent, side);
    for (std::size_t i = 0; i < total; ++i) {
      if (hat_cells[i]) worst = std::max(worst, to_image[i]);
    }
  }
  {
    const std::vector<double> to_hat = squared_distance_field(hat_cells, extent, side);
    for (std::size_t i = 0; i < total; ++i) {
      if (image_cells[i]) worst = std::max(worst, to_hat[i]);
    }
  }
  out.distance = std::sqrt(worst);

  const double root_d = std::sqrt(static_cast<double>(d));
  double limit = 0.0, resolution = 0.0;
  for (int l = 1; l < d; ++l) limit = std::max(limit, std::pow(static_cast<double>(s.bases()[l]), -(k[l - 1] - k[l])));
  for (int l = 0; l < d; ++l) resolution = std::max(resolution, side[l]);
  out.limit_bound = root_d * limit;
  out.resolution_slack = 3.0 * root_d * resolution;
  out.bound = out.limit_bound + out.resolution_slack;
  out.ok = out.distance <= out.bound;
  return out;
}

TangentConvergence check_tangent_convergence(const Sponge& s, const Rational& R, TangentMode mode, int level,
                                             std::uint64_t cap) {
  return check_tangent_convergence(s, R, tangent_witnesses(s, mode), level, cap);
}

double box_matching_distance(const BoxSet& a, const BoxSet& b) {
  auto box_distance_sq = [](const Hypercuboid& x, const Hypercuboid& y) {
    double total = 0.0;
    for (std::size_t l = 0; l < x.sides.size(); ++l) {
      const double lo = std::abs(to_double(x.sides[l].lo - y.sides[l].lo));
      const double hi = std::abs(to_double(x.sides[l].hi - y.sides[l].hi));
      const double m = std::max(lo, hi);
      total += m * m;
    }
    return total;
  };
  auto directed = [&](const BoxSet& from, const BoxSet& to) {
    double worst = 0.0;
    for (const auto& x : from) {
      double best = INFINITY;
      for (const auto& y : to) best = std::min(best, box_distance_sq(x, y));
      worst = std::max(worst, best);
    }
    return worst;
  };
  if (a.empty() || b.empty()) return a.empty() && b.empty() ? 0.0 : INFINITY;
  return std::sqrt(std::max(directed(a, b), directed(b, a)));
}

}  // namespace sponge
