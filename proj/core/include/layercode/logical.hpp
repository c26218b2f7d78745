#pragma once

#include <cstddef>
#include <vector>

#include "layercode/layer.hpp"

namespace lc::logical {

using css::PauliType;
using gf2::BitVector;

struct PauliOperator {
  PauliType type = PauliType::X;
  BitVector support;  // over layer-code qubits
};

// Opposite-type checks applied to the support.
BitVector syndrome(const layer::LayerCode& lc, const PauliOperator& op);

// One string per supported qubit layer (along x for X, along z for Z) plus
// strings inside the check layers of the other type that join consecutive
// pairs of its supported qubits. Throws IntegrityError on a residual syndrome.
PauliOperator quasiconcatenated_logical(const layer::LayerCode& lc, const BitVector& input,
                                        PauliType t);
// The same operator as disjoint strings, each listed end to end.
std::vector<std::vector<std::size_t>> quasiconcatenated_pieces(const layer::LayerCode& lc,
                                                               const BitVector& input, PauliType t);
// Sum of the type-t checks living on the layer of input check `check`.
PauliOperator quasiconcatenated_stabilizer(const layer::LayerCode& lc, std::size_t check,
                                           PauliType t);

// Slabs run along x for type X (one yz-layer each) and along z for type Z
// (one xy-layer each). Boundaries are the cut positions between them; a code
// with a single such layer gets one cut next to the x = 0 (z = 1) face.
std::vector<long> slab_boundaries(const layer::LayerCode& lc, PauliType t);
long reference_boundary(const layer::LayerCode& lc, PauliType t);

// Parity of excitations per qubit layer (xz bits) and per segment of each
// crossing check layer, segments being cut at that layer's qubit layers.
struct MConfiguration {
  PauliType type = PauliType::X;
  long cut = 0;
  BitVector xz;
  std::vector<BitVector> segments;

  std::size_t weight() const;
  bool xz_only() const;
  bool operator==(const MConfiguration& o) const = default;
  MConfiguration& operator^=(const MConfiguration& o);
};

MConfiguration zero_config(const layer::LayerCode& lc, PauliType t, long cut);
// Excitations created on the cut by the part of op below it.
MConfiguration boundary_config(const layer::LayerCode& lc, const PauliOperator& op, long cut);
// Same, at boundary `index` of slab_boundaries. Throws InputError out of range.
MConfiguration slab_boundary_config(const layer::LayerCode& lc, const PauliOperator& op,
                                    std::size_t index);
// Moves that relate boundary-equivalent configurations: at each junction
// of a crossing layer with qubit layer s_t, flip D_{s_t} with the two
// adjacent segments; a weight-1 layer's open end absorbs its segment.
std::vector<MConfiguration> equivalence_moves(const layer::LayerCode& lc, PauliType t, long cut);
// Pushes every segment excitation onto qubit layers, to whichever side
// gives the lighter result (left on ties).
MConfiguration reduce_to_xz(const MConfiguration& cfg, const layer::LayerCode& lc);
BitVector config_to_input_pauli(const MConfiguration& cfg);
// Truncation at the reference boundary. Throws InputError if op has a
// syndrome, IntegrityError if the image is outside the input normalizer.
BitVector map_layer_logical_to_input(const layer::LayerCode& lc, const PauliOperator& op);

}  // namespace lc::logical
