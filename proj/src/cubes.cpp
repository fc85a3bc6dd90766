#include "sponge/cubes.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>

namespace sponge {

ScaleExponents scale_exponents(const Sponge& s, const Rational& r) {
  if (r <= 0 || r > 1) throw SpongeError(ErrorKind::OutOfRange, "scale " + to_string(r) + " outside (0, 1]");
  // n^k <= 1/r  <=>  n^k * num(r) <= den(r)
  const BigInt& num = numerator(r);
  const BigInt& den = denominator(r);
  ScaleExponents out{r, {}};
  for (int n : s.bases()) {
    const double guess = std::floor(log_rational(Rational(1) / r) / std::log(static_cast<double>(n)));
    int k = std::max(0, static_cast<int>(guess) - 1);
    BigInt power = pow_int(BigInt(n), static_cast<unsigned>(k));
    while (power * num > den) {
      power /= n;
      --k;
    }
    while (power * n * num <= den) {
      power *= n;
      ++k;
    }
    out.k.push_back(k);
  }
  return out;
}

int ApproximateCube::fixed_at(int t) const {
  int count = 0;
  for (int kl : k) count += kl >= t ? 1 : 0;
  return count;
}

Prefix ApproximateCube::position_prefix(int t) const {
  Prefix p;
  for (std::size_t l = 0; l < k.size() && k[l] >= t; ++l) p.push_back(constraints[l][t - 1]);
  return p;
}

void check_word(const Sponge& s, const SymbolicWord& w) {
  for (std::size_t t = 0; t < w.size(); ++t) {
    if (!std::binary_search(s.digits().begin(), s.digits().end(), w[t])) {
      throw SpongeError(ErrorKind::InvalidWord, "word entry " + std::to_string(t + 1) + " (" + format_tuple(w[t]) +
                                                    ") is not in the digit set");
    }
  }
}

ApproximateCube approximate_cube(const Sponge& s, const SymbolicWord& w, const Rational& r) {
  check_word(s, w);
  const ScaleExponents se = scale_exponents(s, r);
  const int needed = se.k.front();
  if (static_cast<int>(w.size()) < needed) {
    throw SpongeError(ErrorKind::WordTooShort, "word of length " + std::to_string(w.size()) + " cannot pin a cube at scale " +
                                                   to_string(r) + " (needs " + std::to_string(needed) + " symbols)");
  }
  ApproximateCube q{r, se.k, {}};
  q.constraints.resize(s.dim());
  for (int l = 0; l < s.dim(); ++l) {
    for (int t = 0; t < se.k[l]; ++t) q.constraints[l].push_back(w[t][l]);
  }
  return q;
}

ApproximateCube cube_from_prefixes(const Sponge& s, const Rational& r, const std::vector<Prefix>& prefixes) {
  const ScaleExponents se = scale_exponents(s, r);
  ApproximateCube q{r, se.k, {}};
  q.constraints.resize(s.dim());
  if (static_cast<int>(prefixes.size()) != se.k.front()) {
    throw SpongeError(ErrorKind::WordTooShort, "expected " + std::to_string(se.k.front()) + " position prefixes");
  }
  for (int t = 1; t <= se.k.front(); ++t) {
    const Prefix& p = prefixes[t - 1];
    if (static_cast<int>(p.size()) != q.fixed_at(t) || !s.contains(p)) {
      throw SpongeError(ErrorKind::PrefixNotInSponge, "position " + std::to_string(t) + " prefix (" + format_tuple(p) +
                                                          ") is not admissible");
    }
    for (std::size_t l = 0; l < p.size(); ++l) q.constraints[l].push_back(p[l]);
  }
  return q;
}

SymbolicWord representative_word(const Sponge& s, const ApproximateCube& q) {
  SymbolicWord w;
  const int length = q.k.empty() ? 0 : q.k.front();
  for (int t = 1; t <= length; ++t) {
    Prefix p = q.position_prefix(t);
    while (static_cast<int>(p.size()) < s.dim()) p.push_back(s.children(p).front());
    w.push_back(std::move(p));
  }
  return w;
}

Hypercuboid unit_cube(int d) { return Hypercuboid{std::vector<Interval>(d, Interval{Rational(0), Rational(1)})}; }

bool contains(const Hypercuboid& outer, const Hypercuboid& inner) {
  for (std::size_t l = 0; l < outer.sides.size(); ++l) {
    if (inner.sides[l].lo < outer.sides[l].lo || inner.sides[l].hi > outer.sides[l].hi) return false;
  }
  return true;
}

bool interiors_disjoint(const Hypercuboid& a, const Hypercuboid& b) {
  for (std::size_t l = 0; l < a.sides.size(); ++l) {
    if (a.sides[l].hi <= b.sides[l].lo || b.sides[l].hi <= a.sides[l].lo) return true;
  }
  return false;
}

namespace {

// [A / n^k, (A + 1) / n^k] with A the base-n value of `digits`.
Interval adic_interval(int n, const std::vector<int>& digits) {
  BigInt a = 0;
  for (int c : digits) a = a * n + c;
  const BigInt scale = pow_int(BigInt(n), static_cast<unsigned>(digits.size()));
  return Interval{Rational(a, scale), Rational(BigInt(a + 1), scale)};
}

// Elements of D_length (sorted) whose first fixed.size() coordinates equal `fixed`.
std::vector<Prefix> extensions(const Sponge& s, const Prefix& fixed, int length) {
  const auto& all = s.level(length);
  auto lo = std::lower_bound(all.begin(), all.end(), fixed);
  std::vector<Prefix> out;
  for (auto it = lo; it != all.end() && std::equal(fixed.begin(), fixed.end(), it->begin()); ++it) out.push_back(*it);
  return out;
}

std::vector<std::vector<Prefix>> subcube_choices(const Sponge& s, const ApproximateCube& q, const Rational& r,
                                                 ScaleExponents& fine) {
  if (r > q.scale) {
    throw SpongeError(ErrorKind::ScaleOrder, "sub-cube scale " + to_string(r) + " exceeds the cube scale " + to_string(q.scale));
  }
  fine = scale_exponents(s, r);
  ApproximateCube shape{r, fine.k, {}};
  std::vector<std::vector<Prefix>> choices;
  for (int t = 1; t <= fine.k.front(); ++t) {
    choices.push_back(extensions(s, q.position_prefix(t), shape.fixed_at(t)));
  }
  return choices;
}

}  // namespace

Hypercuboid geometric_box(const Sponge& s, const ApproximateCube& q) {
  Hypercuboid box;
  for (int l = 0; l < s.dim(); ++l) box.sides.push_back(adic_interval(s.bases()[l], q.constraints[l]));
  return box;
}

BigInt count_subcubes(const Sponge& s, const ApproximateCube& q, const Rational& r) {
  ScaleExponents fine;
  BigInt count = 1;
  for (const auto& c : subcube_choices(s, q, r, fine)) count *= c.size();
  return count;
}

std::vector<ApproximateCube> subcubes(const Sponge& s, const ApproximateCube& q, const Rational& r,
                                      std::uint64_t cap) {
  ScaleExponents fine;
  const auto choices = subcube_choices(s, q, r, fine);
  BigInt count = 1;
  for (const auto& c : choices) count *= c.size();
  if (count > cap) {
    throw SpongeError(ErrorKind::EnumerationTooLarge,
                      count.str() + " sub-cubes exceed the enumeration cap of " + std::to_string(cap));
  }
  std::vector<ApproximateCube> out;
  out.reserve(count.convert_to<std::size_t>());
  std::vector<std::size_t> odometer(choices.size(), 0);
  std::vector<Prefix> prefixes(choices.size());
  while (true) {
    for (std::size_t t = 0; t < choices.size(); ++t) prefixes[t] = choices[t][odometer[t]];
    ApproximateCube cube{r, fine.k, std::vector<std::vector<int>>(s.dim())};
    for (const auto& p : prefixes) {
      for (std::size_t l = 0; l < p.size(); ++l) cube.constraints[l].push_back(p[l]);
    }
    out.push_back(std::move(cube));
    // Innermost position varies fastest.
    std::size_t t = choices.size();
    while (t > 0 && ++odometer[t - 1] == choices[t - 1].size()) {
      odometer[t - 1] = 0;
      --t;
    }
    if (t == 0) break;
  }
  return out;
}

BigInt count_cubes(const Sponge& s, const Rational& r) {
  const ScaleExponents se = scale_exponents(s, r);
  BigInt count = 1;
  for (int l = 0; l < s.dim(); ++l) {
    const int next = l + 1 < s.dim() ? se.k[l + 1] : 0;
    count *= pow_int(BigInt(s.level(l + 1).size()), static_cast<unsigned>(se.k[l] - next));
  }
  return count;
}

double box_dim_slope(const Sponge& s, int depth) {
  if (depth < 1) throw SpongeError(ErrorKind::OutOfRange, "depth must be at least 1");
  const int n1 = s.bases().front();
  const BigInt count = count_cubes(s, inverse_power(n1, static_cast<unsigned>(depth)));
  return log_bigint(count) / (depth * std::log(static_cast<double>(n1)));
}

BoxSet prefractal(const Sponge& s, int m, std::uint64_t cap) {
  if (m < 0) throw SpongeError(ErrorKind::OutOfRange, "pre-fractal level must be non-negative");
  const BigInt count = pow_int(BigInt(s.size()), static_cast<unsigned>(m));
  if (count > cap) {
    throw SpongeError(ErrorKind::EnumerationTooLarge,
                      count.str() + " pre-fractal boxes exceed the enumeration cap of " + std::to_string(cap));
  }
  const int d = s.dim();
  BoxSet out;
  out.reserve(count.convert_to<std::size_t>());
  std::vector<std::size_t> odometer(m, 0);
  std::vector<int> track(m);
  while (true) {
    Hypercuboid box;
    for (int l = 0; l < d; ++l) {
      for (int t = 0; t < m; ++t) track[t] = s.digits()[odometer[t]][l];
      box.sides.push_back(adic_interval(s.bases()[l], track));
    }
    out.push_back(std::move(box));
    int t = m;
    while (t > 0 && ++odometer[t - 1] == s.size()) {
      odometer[t - 1] = 0;
      --t;
    }
    if (t == 0) break;
  }
  return out;
}

std::string boxes_to_csv(const BoxSet& boxes, int d) {
  std::string out;
  for (int l = 1; l <= d; ++l) {
    if (l > 1) out += ',';
    out += "lo_" + std::to_string(l) + ",hi_" + std::to_string(l);
  }
  out += '\n';
  for (const auto& box : boxes) {
    for (std::size_t l = 0; l < box.sides.size(); ++l) {
      if (l) out += ',';
      out += to_string(box.sides[l].lo) + ',' + to_string(box.sides[l].hi);
    }
    out += '\n';
  }
  return out;
}

std::string boxes_to_svg(const BoxSet& boxes) {
  std::string out = "<svg xmlns=\"http://www.w3.org/2000/svg\" viewBox=\"0 0 1 1\">\n";
  char line[256];
  for (const auto& box : boxes) {
    if (box.sides.size() != 2) throw SpongeError(ErrorKind::Unsupported, "SVG rendering needs d = 2");
    const double x = to_double(box.sides[0].lo);
    const double w = to_double(box.sides[0].hi - box.sides[0].lo);
    const double y = 1.0 - to_double(box.sides[1].hi);
    const double h = to_double(box.sides[1].hi - box.sides[1].lo);
    std::snprintf(line, sizeof line, "<rect x=\"%.12g\" y=\"%.12g\" width=\"%.12g\" height=\"%.12g\"/>\n", x, y, w, h);
    out += line;
  }
  out += "</svg>\n";
  return out;
}

}  // namespace sponge
