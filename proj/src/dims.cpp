#include "sponge/dims.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <stdexcept>

namespace sponge {

namespace {

void require_strict(const Sponge& s, const char* what) {
  if (!s.strict()) {
    throw SpongeError(ErrorKind::NonStrictBases,
                      std::string(what) + " needs strictly increasing bases; the closed form is not valid "
                                          "when two bases coincide");
  }
}

// log N / log n_1 + sum_{l>=2} log F(l-1) / log n_l, F picking a fibre extreme.
template <typename Extreme>
double fibre_sum(const Sponge& s, Extreme extreme) {
  double total = 0.0;
  for (int l = 0; l < s.dim(); ++l) {
    total += std::log(static_cast<double>(extreme(l))) / std::log(static_cast<double>(s.bases()[l]));
  }
  return total;
}

// log n_l / log n_{l+1} for 1-based l, with n_{d+1} = n_d.
double level_exponent(const Sponge& s, int l) {
  const int d = s.dim();
  const double here = std::log(static_cast<double>(s.bases()[l - 1]));
  const double next = std::log(static_cast<double>(s.bases()[std::min(l, d - 1)]));
  return here / next;
}

}  // namespace

double assouad_dim(const Sponge& s) {
  require_strict(s, "assouad_dim");
  return fibre_sum(s, [&](int l) { return s.max_fibre(l); });
}

double lower_dim(const Sponge& s) {
  require_strict(s, "lower_dim");
  return fibre_sum(s, [&](int l) { return s.min_fibre(l); });
}

double box_dim(const Sponge& s) {
  double total = 0.0;
  for (int l = 1; l <= s.dim(); ++l) {
    const double ratio = static_cast<double>(s.level(l).size()) / static_cast<double>(s.level(l - 1).size());
    total += std::log(ratio) / std::log(static_cast<double>(s.bases()[l - 1]));
  }
  return total;
}

ZTables hausdorff_z_tables(const Sponge& s) {
  const int d = s.dim();
  ZTables t;
  t.z.resize(d + 1);
  for (const auto& p : s.level(d)) t.z[d][p] = 1.0;
  for (int l = d; l >= 1; --l) {
    const double e = level_exponent(s, l);
    for (const auto& p : s.level(l - 1)) {
      double sum = 0.0;
      Prefix child = p;
      child.push_back(0);
      for (int c : s.children(p)) {
        child.back() = c;
        sum += std::pow(t.z[l].at(child), e);
      }
      t.z[l - 1][p] = sum;
    }
  }
  return t;
}

ZTables lower_z_tables(const Sponge& s) {
  const int d = s.dim();
  ZTables t;
  t.z.resize(d + 1);
  for (const auto& p : s.level(d)) t.z[d][p] = 1.0;
  for (int l = d; l >= 1; --l) {
    const double e = level_exponent(s, l);
    double smallest = std::numeric_limits<double>::infinity();
    for (const auto& [prefix, value] : t.z[l]) smallest = std::min(smallest, std::pow(value, e));
    for (const auto& p : s.level(l - 1)) t.z[l - 1][p] = s.fibre_count(p) * smallest;
  }
  return t;
}

double hausdorff_dim(const Sponge& s) {
  const ZTables t = hausdorff_z_tables(s);
  return std::log(t.z[0].at(Prefix{})) / std::log(static_cast<double>(s.bases()[0]));
}

double lower_via_zprime(const Sponge& s) {
  require_strict(s, "lower_via_zprime");
  const ZTables t = lower_z_tables(s);
  return std::log(t.z[0].at(Prefix{})) / std::log(static_cast<double>(s.bases()[0]));
}

std::string to_string(Dichotomy d) { return d == Dichotomy::AllEqual ? "AllEqual" : "AllDistinct"; }

Dichotomy dichotomy(const Sponge& s) {
  require_strict(s, "dichotomy");
  const double values[] = {lower_dim(s), hausdorff_dim(s), box_dim(s), assouad_dim(s)};
  const bool uniform = has_uniform_fibres(s);
  for (int i = 0; i < 4; ++i) {
    for (int j = i + 1; j < 4; ++j) {
      const bool close = std::abs(values[i] - values[j]) <= kDichotomyTolerance;
      if (uniform != close) {
        throw std::logic_error("dimension values contradict the uniform-fibres dichotomy");
      }
    }
  }
  return uniform ? Dichotomy::AllEqual : Dichotomy::AllDistinct;
}

DimReport dim_report(const Sponge& s) {
  DimReport r;
  r.box = box_dim(s);
  r.hausdorff = hausdorff_dim(s);
  r.strictness_ok = s.strict();
  r.uniform_fibres = has_uniform_fibres(s);
  if (s.strict()) {
    r.assouad = assouad_dim(s);
    r.lower = lower_dim(s);
    r.lower_via_zprime = lower_via_zprime(s);
    r.dichotomy = dichotomy(s);
  } else {
    r.strictness_error = std::string(error_name(ErrorKind::NonStrictBases));
  }
  return r;
}

FamilyDims lg_family_dims(double lambda) {
  if (!(lambda > 0.0 && lambda <= 0.5)) {
    throw SpongeError(ErrorKind::OutOfRange, "lambda must lie in (0, 1/2]");
  }
  FamilyDims f;
  f.lambda = lambda;
  if (lambda == 0.5) {
    // Sierpinski triangle: self-similar, all four dimensions coincide.
    const double v = std::log(3.0) / std::log(2.0);
    f.lower = f.hausdorff = f.box = f.assouad = v;
    return f;
  }
  const double minus_log = -std::log(lambda);
  f.lower = 1.0;
  f.hausdorff = std::log(1.0 + std::pow(2.0, -std::log(2.0) / std::log(lambda))) / std::log(2.0);
  f.box = 1.0 + std::log(1.5) / minus_log;
  f.assouad = 1.0 + std::log(2.0) / minus_log;
  return f;
}

std::vector<double> lg_family_grid(double min, double max, double step) {
  if (!(step > 0.0) || min > max) throw SpongeError(ErrorKind::OutOfRange, "need min <= max and step > 0");
  std::vector<double> out;
  for (long i = 0;; ++i) {
    const double v = min + static_cast<double>(i) * step;
    if (v > max + 1e-12) break;
    out.push_back(std::min(v, max));
  }
  return out;
}

std::string lg_family_csv(const std::vector<double>& lambdas) {
  std::string out = "lambda,lower,hausdorff,box,assouad\n";
  char line[256];
  for (double lambda : lambdas) {
    const FamilyDims f = lg_family_dims(lambda);
    std::snprintf(line, sizeof line, "%.17g,%.17g,%.17g,%.17g,%.17g\n", f.lambda, f.lower, f.hausdorff, f.box,
                  f.assouad);
    out += line;
  }
  return out;
}

}  // namespace sponge
