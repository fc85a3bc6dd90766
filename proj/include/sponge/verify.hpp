#pragma once

#include "sponge/cubes.hpp"
#include "sponge/dims.hpp"
#include "sponge/measure.hpp"
#include "sponge/model.hpp"

#include <cmath>
#include <cstdint>
#include <optional>
#include <random>
#include <string>
#include <vector>

namespace sponge {

/// Seeded generator shared by all scans. Draws use rejection sampling on the
/// raw 64-bit output so results do not depend on the standard library.
class ScanRng {
 public:
  explicit ScanRng(std::uint64_t seed) : engine_(seed) {}
  /// Uniform integer in [0, bound).
  std::uint64_t below(std::uint64_t bound);

 private:
  std::mt19937_64 engine_;
};

// ---------------------------------------------------------------------------
// Measure-ratio scans

struct ScanSample {
  std::string word;  // "i;j;..." tuples, or the ball center for ball scans
  Rational r;
  Rational R;
  double ratio = 0.0;        // estimate used for the upper check
  double ratio_low = 0.0;    // estimate used for the lower check (same as ratio for cube scans)
  double lower_bound = 0.0;
  double upper_bound = 0.0;
};

struct ScanViolation {
  ScanSample sample;
  bool upper = false;  // which side failed
};

struct ScanReport {
  std::uint64_t samples = 0;
  /// min over samples of log(ratio / lower bound) and log(upper bound / ratio).
  double worst_lower_slack = INFINITY;
  double worst_upper_slack = INFINITY;
  std::vector<ScanViolation> violations;
  double c0 = 0.0;
  double c1 = 0.0;
  double lower_exponent = 0.0;
  double upper_exponent = 0.0;

  /// Cube scans only: the same ratios checked against the bounds that follow
  /// from the measure's own extremal conditional probabilities, which hold for
  /// every Bernoulli measure.
  std::optional<double> own_worst_lower_slack;
  std::optional<double> own_worst_upper_slack;
  std::uint64_t own_violations = 0;

  /// True when the dim_L / dim_A exponent bounds held on every sample.
  bool sharp() const { return violations.empty(); }

  std::vector<ScanSample> rows;  // filled when requested
};

/// Log-space tolerance for a bound check; ratios within this of a bound count
/// as satisfied.
inline constexpr double kScanLogTolerance = 1e-12;

/// Cube-measure ratio sandwich n_d^{-d}(R/r)^{dim_L} <= mu(Q(w,R))/mu(Q(w,r)) <= n_d^d (R/r)^{dim_A}
/// on `samples` random words, with R = n_1^{-a}, r = n_1^{-b}, 0 <= a < b <= depth.
ScanReport scan_cube_ratios(const Sponge& s, const BernoulliMeasure& m, std::uint64_t samples, std::uint64_t seed,
                            int depth = 40, bool keep_rows = false);

/// Ball-measure ratio scan for the coordinate uniform measure on a VSSC sponge,
/// checking C0 (R/r)^{dim_L} <= mu(B(x,R))/mu(B(x,r)) <= C1 (R/r)^{dim_A} with
/// C1 = n_d^d (2(n_1+...+n_d) n_1^2)^{dim_A} and C0 = n_d^{-d}(2(n_1+...+n_d) n_1^2)^{-dim_L}.
/// Ratios are bracketed conservatively: upper(R)/lower(r) against C1 and
/// lower(R)/upper(r) against C0. Centers are tau(w e e e ...) for a random
/// word w of length `depth`; radii are n_1^{-a} > n_1^{-b} with b small enough
/// that depth-`depth` cylinders have diameter at most n_1^{-b}.
ScanReport scan_ball_ratios_vssc(const Sponge& s, std::uint64_t samples, std::uint64_t seed, int depth,
                                 bool keep_rows = false);

std::string scan_rows_csv(const ScanReport& report);

// ---------------------------------------------------------------------------
// Doubling

struct DoublingOptions {
  double growth_tolerance = 1e-6;
  int monotone_depths = 3;
  std::uint64_t cap = kDefaultEnumerationCap;
};

struct DepthRatio {
  int depth = 0;
  Rational scale;
  std::uint64_t cubes = 0;
  std::uint64_t adjacent_pairs = 0;
  double log_max_ratio = 0.0;  // 0 when there are no adjacent pairs
  /// Witness pair attaining the maximum (heavier cube first).
  std::optional<std::pair<ApproximateCube, ApproximateCube>> witness;
};

enum class DoublingVerdict { DoublingUpToDepth, NonDoubling };
std::string to_string(DoublingVerdict v);

struct DoublingReport {
  std::vector<DepthRatio> depths;
  double growth_rate = 1.0;  // exp of the least-squares slope of log max ratio against depth
  DoublingVerdict verdict = DoublingVerdict::DoublingUpToDepth;
};

/// Adjacency of the cubes at scales n_d^{-1}, ..., n_d^{-max_depth}; two cubes
/// are adjacent when their geometric boxes share a (d-1)-dimensional face.
/// Build once and evaluate many measures.
class AdjacencyScan {
 public:
  AdjacencyScan(const Sponge& s, int max_depth, std::uint64_t cap = kDefaultEnumerationCap);

  DoublingReport report(const BernoulliMeasure& m, const DoublingOptions& options = {}) const;

  const Sponge& sponge() const noexcept { return sponge_; }
  int max_depth() const noexcept { return static_cast<int>(levels_.size()); }

 private:
  struct Level {
    Rational scale;
    std::vector<int> k;
    std::vector<int> fixed;  // L_t for t = 1..k_1
    std::uint64_t cubes = 0;
    std::vector<std::pair<std::uint32_t, std::uint32_t>> pairs;
  };
  ApproximateCube decode(const Level& level, std::uint64_t ordinal) const;
  std::vector<double> log_measures(const Level& level, const BernoulliMeasure& m) const;

  Sponge sponge_;
  std::vector<Level> levels_;
};

DoublingReport doubling_report(const Sponge& s, const BernoulliMeasure& m, int max_depth,
                               const DoublingOptions& options = {});

/// Verdict rule: NonDoubling iff growth > 1 + tolerance and the last
/// `monotone_depths` maxima strictly increase.
DoublingVerdict doubling_verdict(const std::vector<DepthRatio>& depths, double growth_rate,
                                 const DoublingOptions& options);

// ---------------------------------------------------------------------------
// Weak tangents

enum class TangentMode { Max, Min };
std::string to_string(TangentMode mode);
TangentMode parse_tangent_mode(const std::string& text);

/// Witness digits i(2), ..., i(d) (returned at indices 0..d-2): i(l) is the
/// lexicographically smallest digit whose projection to D_{l-1} has the
/// largest (Max) or smallest (Min) fibre count N.
std::vector<DigitTuple> tangent_witnesses(const Sponge& s, TangentMode mode);

/// Checks that explicit witnesses are digits attaining the extremal fibre.
void check_witnesses(const Sponge& s, TangentMode mode, const std::vector<DigitTuple>& witnesses);

/// omega(R) truncated to length k_1(R): positions 1..k_d carry the smallest
/// digit of D, positions k_l+1..k_{l-1} carry i(l).
SymbolicWord tangent_word(const Sponge& s, const Rational& R, TangentMode mode);
SymbolicWord tangent_word(const Sponge& s, const Rational& R, const std::vector<DigitTuple>& witnesses);

/// T^Q(x)_l = n_l^{k_l} (x_l - lo_l): maps the geometric box of Q onto [0,1]^d.
struct TangentMap {
  ApproximateCube source;
  std::vector<Rational> scale;   // n_l^{k_l(R)}
  std::vector<Rational> offset;  // lo_l of the geometric box
  Rational a;                    // min scale
  Rational b;                    // max scale

  Hypercuboid apply(const Hypercuboid& box) const;
  Rational lipschitz_ratio() const { return b / a; }
};

TangentMap tangent_map(const Sponge& s, const ApproximateCube& q);

/// Digit sets of the factors of Khat = pi_1 K x K_2 x ... x K_d: index 0 is D_1
/// (base n_1), index l-1 is the fibre of pi_{l-1}(i(l)) (base n_l).
std::vector<std::vector<int>> hat_factor_digits(const Sponge& s, const std::vector<DigitTuple>& witnesses);

/// Level-`level` pre-fractal of Khat. A factor whose digit set is the full
/// range is kept as the single interval [0,1].
BoxSet hat_set_prefractal(const Sponge& s, TangentMode mode, int level, std::uint64_t cap = kDefaultEnumerationCap);
BoxSet hat_set_prefractal(const Sponge& s, const std::vector<DigitTuple>& witnesses, int level,
                          std::uint64_t cap = kDefaultEnumerationCap);

/// Box dimension of Khat: sum over factors of log |digits| / log n_l.
double hat_box_dim(const Sponge& s, const std::vector<DigitTuple>& witnesses);

struct TangentImage {
  TangentMap map;
  int level = 0;
  BoxSet boxes;  // T^Q(S_w[0,1]^d) for words w of length `level` inside Q
};

/// Images under T^Q of the level-`level` cylinder boxes lying in Q(omega(R), R).
/// Requires level >= k_1(R).
TangentImage tangent_image(const Sponge& s, const Rational& R, TangentMode mode, int level,
                           std::uint64_t cap = kDefaultEnumerationCap);
TangentImage tangent_image(const Sponge& s, const Rational& R, const std::vector<DigitTuple>& witnesses, int level,
                           std::uint64_t cap = kDefaultEnumerationCap);

/// Number of image boxes not contained in the Khat pre-fractal whose factor l
/// is refined to level min(level, k_{l-1}) - k_l (and level - k_1 for l = 1).
std::uint64_t count_uncontained(const Sponge& s, const std::vector<DigitTuple>& witnesses, const TangentImage& image);

struct TangentConvergence {
  Rational R;
  std::vector<int> k;
  double distance = 0.0;
  double limit_bound = 0.0;       // sqrt(d) max_l n_l^{-(k_{l-1} - k_l)}
  double resolution_slack = 0.0;  // 3 sqrt(d) max_l n_l^{-(level - k_l)}
  double bound = 0.0;
  bool ok = false;
  Rational lipschitz_ratio;
  std::uint64_t image_boxes = 0;
  std::uint64_t uncontained = 0;
  /// Some factor of Khat is a single endpoint, so Khat misses (0,1)^d.
  bool boundary_case = false;
};

/// Box-matching Hausdorff distance between the tangent image and the Khat
/// pre-fractal refined to the same grid (factor l at level level - k_l).
/// Both sets are unions of equal grid cells, so the distance is computed with
/// an exact squared-distance transform over the grid.
TangentConvergence check_tangent_convergence(const Sponge& s, const Rational& R, TangentMode mode, int level,
                                             std::uint64_t cap = kDefaultEnumerationCap);
TangentConvergence check_tangent_convergence(const Sponge& s, const Rational& R,
                                             const std::vector<DigitTuple>& witnesses, int level,
                                             std::uint64_t cap = kDefaultEnumerationCap);

/// Hausdorff distance between two finite box sets, treating each box as a
/// point and comparing boxes by sqrt(sum_l h_l^2) with h_l the Hausdorff
/// distance of the coordinate-l sides. This bounds the true box-to-box
/// distance from above and equals it for translates. Quadratic; meant for
/// small sets.
double box_matching_distance(const BoxSet& a, const BoxSet& b);

// ---------------------------------------------------------------------------
// Dichotomy audit

struct LevelAudit {
  int level = 0;  // l in 2..d: fibres N(i_1..i_{l-1}) over D_{l-1}
  std::size_t projected = 0;   // |D_l|
  std::size_t previous = 0;    // |D_{l-1}|
  int min_fibre = 0;
  int max_fibre = 0;
  bool uniform = false;
  bool chain_ok = false;  // min N <= |D_l| / |D_{l-1}| <= max N
};

struct DichotomyAudit {
  Dichotomy verdict = Dichotomy::AllEqual;
  bool uniform_fibres = false;
  bool verdict_matches = false;
  bool ordering_ok = false;  // lower <= hausdorff <= box <= assouad
  bool zprime_matches_lower = false;
  double lower = 0.0, hausdorff = 0.0, box = 0.0, assouad = 0.0, lower_via_zprime = 0.0;
  std::vector<LevelAudit> levels;
  /// Smallest and largest l whose fibre counts are not constant.
  std::optional<int> first_nonuniform;
  std::optional<int> last_nonuniform;
};

DichotomyAudit dichotomy_audit(const Sponge& s);

}  // namespace sponge
