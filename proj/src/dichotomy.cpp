#include "sponge/verify.hpp"

#include <cmath>

namespace sponge {

DichotomyAudit dichotomy_audit(const Sponge& s) {
  if (!s.strict()) throw SpongeError(ErrorKind::NonStrictBases, "the dichotomy needs strictly increasing bases");
  DichotomyAudit out;
  out.assouad = assouad_dim(s);
  out.lower = lower_dim(s);
  out.box = box_dim(s);
  out.hausdorff = hausdorff_dim(s);
  out.lower_via_zprime = lower_via_zprime(s);
  out.uniform_fibres = has_uniform_fibres(s);

  const double tol = kDichotomyTolerance;
  const bool all_equal = std::abs(out.assouad - out.lower) <= tol && std::abs(out.box - out.lower) <= tol &&
                         std::abs(out.hausdorff - out.lower) <= tol;
  const bool all_distinct = out.lower + tol < out.hausdorff && out.hausdorff + tol < out.box &&
                            out.box + tol < out.assouad;
  out.verdict = all_equal ? Dichotomy::AllEqual : Dichotomy::AllDistinct;
  out.verdict_matches = out.uniform_fibres ? all_equal : all_distinct;
  out.ordering_ok = out.lower <= out.hausdorff + tol && out.hausdorff <= out.box + tol && out.box <= out.assouad + tol;
  out.zprime_matches_lower = std::abs(out.lower_via_zprime - out.lower) <= 1e-12;

  for (int l = 2; l <= s.dim(); ++l) {
    LevelAudit level;
    level.level = l;
    level.projected = s.level(l).size();
    level.previous = s.level(l - 1).size();
    level.min_fibre = s.min_fibre(l - 1);
    level.max_fibre = s.max_fibre(l - 1);
    level.uniform = level.min_fibre == level.max_fibre;
    level.chain_ok = static_cast<std::size_t>(level.min_fibre) * level.previous <= level.projected &&
                     level.projected <= static_cast<std::size_t>(level.max_fibre) * level.previous;
    if (!level.uniform) {
      if (!out.first_nonuniform) out.first_nonuniform = l;
      out.last_nonuniform = l;
    }
    out.levels.push_back(level);
  }
  return out;
}

}  // namespace sponge
