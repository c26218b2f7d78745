#include <algorithm>

#include "layercode/analysis.hpp"

namespace lc::analysis {

const char* to_string(LowerStatus s) {
  switch (s) {
    case LowerStatus::found: return "exact";
    case LowerStatus::cutoff: return "cutoff";
    case LowerStatus::budget: return "unknown";
  }
  return "?";
}

namespace {

TypeBounds bounds_for(const layer::LayerCode& lc, const css::LogicalBasis& basis, PauliType t,
                      const DistanceOptions& opts) {
  const auto& reps = t == PauliType::X ? basis.x : basis.z;
  const BitMatrix& stab = t == PauliType::X ? lc.hx : lc.hz;
  const BitMatrix& det = t == PauliType::X ? lc.hz : lc.hx;
  TypeBounds b;
  b.upper = lc.n() + 1;

  // Upper bound from the images of the input basis; all combinations when
  // there are few of them.
  std::vector<BitVector> images;
  for (const auto& v : reps)
    images.push_back(logical::quasiconcatenated_logical(lc, v, t).support);
  std::vector<BitVector> cands;
  if (images.size() <= 6) {
    for (uint64_t m = 1; m < (uint64_t{1} << images.size()); ++m) {
      BitVector v(lc.n());
      for (std::size_t i = 0; i < images.size(); ++i)
        if ((m >> i) & 1u) v ^= images[i];
      cands.push_back(std::move(v));
    }
  } else {
    cands = images;
  }
  for (const auto& v : cands) {
    auto r = gf2::min_weight_in_coset(v, stab, gf2::SearchMode::randomized, opts.search);
    if (r.weight < b.upper || (r.weight == b.upper && gf2::support_less(r.witness, b.witness))) {
      b.upper = r.weight;
      b.witness = r.witness;
    }
  }

  try {
    auto s = css::find_light_logical(det, stab, std::min(opts.cutoff, b.upper), opts.node_budget);
    b.nodes = s.nodes;
    if (s.weight) {
      b.lower = *s.weight;
      b.status = LowerStatus::found;
      if (*s.weight <= b.upper) {
        b.upper = *s.weight;
        b.witness = s.witness;
      }
    } else {
      // Nothing at or below the cutoff; if the cutoff reached the upper
      // bound the upper bound is exact.
      const std::size_t searched = std::min(opts.cutoff, b.upper);
      b.lower = searched + 1;
      b.status = LowerStatus::cutoff;
      if (searched >= b.upper) throw IntegrityError("upper-bound witness is not a logical");
    }
  } catch (const BudgetExceeded&) {
    b.lower = 1;
    b.status = LowerStatus::budget;
    b.nodes = opts.node_budget;
  }
  return b;
}

}  // namespace

DistanceBounds layer_distance_bounds(const layer::LayerCode& lc, const DistanceOptions& opts) {
  if (css::logical_qubit_count(lc.input) == 0) throw InputError("no logicals: input has k = 0");
  const auto basis = css::logical_basis(lc.input);
  DistanceBounds out;
  out.cutoff = opts.cutoff;
  out.x = bounds_for(lc, basis, PauliType::X, opts);
  out.z = bounds_for(lc, basis, PauliType::Z, opts);
  return out;
}

}  // namespace lc::analysis
