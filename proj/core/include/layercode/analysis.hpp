#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "layercode/layer.hpp"
#include "layercode/logical.hpp"

namespace lc::analysis {

using css::PauliType;
using gf2::BitMatrix;
using gf2::BitVector;

enum class Bound { exact, upper };
const char* to_string(Bound b);

struct BarrierResult {
  std::size_t value = 0;
  Bound mode = Bound::exact;
  std::vector<std::size_t> witness;  // qubits flipped in order
};

// Largest syndrome weight seen while applying the flips one at a time.
std::size_t replay_barrier(const BitMatrix& detectors, std::size_t n,
                           const std::vector<std::size_t>& flips);

// Bottleneck shortest path over {0,1}^n from 0 to any nontrivial type-t
// logical. Throws BudgetExceeded when n > max_qubits.
BarrierResult energy_barrier_exact(const css::CssCode& code, PauliType t,
                                   std::size_t max_qubits = 20);

// Builds the quasiconcatenated image of `input` string by string, in the
// piece order and directions that minimize the peak syndrome.
BarrierResult energy_barrier_sweep(const layer::LayerCode& lc, const BitVector& input,
                                   PauliType t);

// How the lower bound was settled: a logical of that weight was found (so it
// equals the distance), nothing up to the cutoff exists (lower = cutoff + 1),
// or the node budget ran out (lower = 1, unknown).
enum class LowerStatus { found, cutoff, budget };
const char* to_string(LowerStatus s);

struct TypeBounds {
  std::size_t lower = 0;
  std::size_t upper = 0;
  LowerStatus status = LowerStatus::found;
  uint64_t nodes = 0;
  BitVector witness;  // weight-`upper` logical
};

struct DistanceBounds {
  TypeBounds x, z;
  std::size_t cutoff = 8;
  std::size_t lower() const { return std::min(x.lower, z.lower); }
  std::size_t upper() const { return std::min(x.upper, z.upper); }
};

struct DistanceOptions {
  std::size_t cutoff = 8;
  uint64_t node_budget = uint64_t{1} << 26;
  gf2::SearchBudget search;
};

// Upper: lightest randomized coset search over the quasiconcatenated basis
// (and small combinations). Lower: exhaustive search up to the cutoff.
DistanceBounds layer_distance_bounds(const layer::LayerCode& lc, const DistanceOptions& opts = {});

struct BallReport {
  layer::Coord site;
  std::string kind;
  std::size_t size = 0;  // |A|
  long lhs = 0;          // 2|A|
  long rhs = 0;          // rank(H) + rank(H|A) - rank(H|complement)
  bool pass = false;
};

struct CorrectabilityReport {
  long radius = 0;
  std::vector<BallReport> balls;
  bool all_pass() const;
};

// Both check types are folded into H; A is a Chebyshev ball around a site.
BallReport ball_correctability(const layer::LayerCode& lc, const layer::Coord& site, long radius);
CorrectabilityReport point_defect_correctability(const layer::LayerCode& lc, long radius);

struct RelationCertificate {
  BitVector product;      // sum of the quasiconcatenated stabilizers
  BitVector combination;  // layer checks of the same type summing to it
};

// `relation` lists type-t input checks summing to zero. Throws InputError if
// it is not a relation, IntegrityError if no certificate exists.
RelationCertificate relation_inheritance(const css::CssCode& code,
                                         const std::vector<std::size_t>& relation, PauliType t,
                                         const layer::LayerCode& lc);

}  // namespace lc::analysis
