#pragma once

#include "sponge/model.hpp"

#include <map>
#include <optional>
#include <string>
#include <vector>

namespace sponge {

/// Assouad dimension: log N / log n_1 + sum_{l>=2} log max N(i_1..i_{l-1}) / log n_l,
/// with each maximum taken independently per level. Requires strictly
/// increasing bases (NonStrictBases otherwise).
double assouad_dim(const Sponge& s);

/// Lower dimension: the same sum with minima. Requires strict bases.
double lower_dim(const Sponge& s);

/// Box dimension log N / log n_1 + sum_{l>=2} log(|D_l| / |D_{l-1}|) / log n_l.
/// Valid for non-strict bases too.
double box_dim(const Sponge& s);

/// Z-recursion tables. `z[l]` maps each prefix in D_l to Z_l (resp. Z'_l).
struct ZTables {
  std::vector<std::map<Prefix, double>> z;
};

/// Z_d = 1, Z_{l-1}(p) = sum over children c of Z_l(p,c)^{log n_l / log n_{l+1}}
/// with n_{d+1} = n_d.
ZTables hausdorff_z_tables(const Sponge& s);
/// Z'_d = 1, Z'_{l-1}(p) = N(p) * min over all of D_l of Z'_l^{log n_l / log n_{l+1}}.
ZTables lower_z_tables(const Sponge& s);

/// log Z_0 / log n_1.
double hausdorff_dim(const Sponge& s);

/// log Z'_0 / log n_1; an independent route to the lower dimension. Requires
/// strict bases.
double lower_via_zprime(const Sponge& s);

enum class Dichotomy { AllEqual, AllDistinct };
std::string to_string(Dichotomy d);

/// Tolerance used when comparing dimension values for the dichotomy.
inline constexpr double kDichotomyTolerance = 1e-9;

/// AllEqual exactly when the sponge has uniform fibres. Throws NonStrictBases
/// for non-strict bases and std::logic_error if the four values contradict the
/// verdict.
Dichotomy dichotomy(const Sponge& s);

struct DimReport {
  std::optional<double> assouad;
  std::optional<double> lower;
  double box = 0.0;
  double hausdorff = 0.0;
  std::optional<double> lower_via_zprime;
  bool strictness_ok = false;
  bool uniform_fibres = false;
  std::optional<Dichotomy> dichotomy;
  /// Error name recorded in place of assouad/lower when bases are not strict.
  std::optional<std::string> strictness_error;
};

/// All four dimensions; assouad/lower/dichotomy are left empty (with
/// strictness_error set) when the bases are not strictly increasing.
DimReport dim_report(const Sponge& s);

/// Dimensions of the planar family generated by
/// (x/2, a y), (x/2 + 1/2, a y), (x/2 + 1/2, a y + 1 - a) for a in (0, 1/2].
struct FamilyDims {
  double lambda = 0.0;
  double lower = 0.0;
  double hausdorff = 0.0;
  double box = 0.0;
  double assouad = 0.0;
};

FamilyDims lg_family_dims(double lambda);

/// CSV with header "lambda,lower,hausdorff,box,assouad".
std::string lg_family_csv(const std::vector<double>& lambdas);
/// lambdas min, min+step, ... up to max (inclusive within 1e-12).
std::vector<double> lg_family_grid(double min, double max, double step);

}  // namespace sponge
