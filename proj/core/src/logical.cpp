#include "layercode/logical.hpp"

#include <algorithm>

namespace lc::logical {

using layer::Coord;
using layer::LayerCode;
using layer::LayerId;
using layer::LayerType;

namespace {

const gf2::BitMatrix& detectors(const LayerCode& lc, PauliType t) {
  return t == PauliType::X ? lc.hz : lc.hx;
}

// Check layers that cross the slab boundaries for type t; the other check
// layers sit inside slabs and carry the pairing strings.
const std::vector<layer::CheckLayer>& crossing(const LayerCode& lc, PauliType t) {
  return t == PauliType::X ? lc.layout.xcheck_layers : lc.layout.zcheck_layers;
}
const std::vector<layer::CheckLayer>& inside(const LayerCode& lc, PauliType t) {
  return t == PauliType::X ? lc.layout.zcheck_layers : lc.layout.xcheck_layers;
}

std::size_t segment_count(const layer::CheckLayer& l) {
  if (l.empty()) return 0;
  return l.support.size() == 1 ? 1 : l.support.size() - 1;
}

std::size_t segment_of(const LayerCode& lc, const layer::CheckLayer& l, long y) {
  std::size_t below = 0;
  for (auto i : l.support)
    if (lc.layout.y_of(i) <= y) ++below;
  return std::min(below == 0 ? 0 : below - 1, segment_count(l) - 1);
}

std::size_t qubit(const LayerCode& lc, LayerId layer, Coord pos) {
  auto q = lc.find_qubit(layer, pos);
  if (!q)
    throw IntegrityError("no qubit of layer " + layer.str() + " at (" + std::to_string(pos.x) + "," +
                         std::to_string(pos.y) + "," + std::to_string(pos.z) + ")");
  return *q;
}

long axis(const Coord& p, PauliType t) { return t == PauliType::X ? p.x : p.z; }

}  // namespace

BitVector syndrome(const LayerCode& lc, const PauliOperator& op) {
  return detectors(lc, op.type).apply(op.support);
}

std::vector<std::vector<std::size_t>> quasiconcatenated_pieces(const LayerCode& lc,
                                                               const BitVector& input, PauliType t) {
  const auto& lay = lc.layout;
  if (input.size() != lc.input.n) throw InputError("input logical has the wrong length");
  const bool X = t == PauliType::X;
  std::vector<std::vector<std::size_t>> pieces;
  for (auto i : input.support()) {
    const long y = lay.y_of(i);
    const LayerId d{LayerType::D, i};
    auto& p = pieces.emplace_back();
    if (X) {
      for (long x = 0; x <= lay.extent.x; x += 2) p.push_back(qubit(lc, d, {x, y, 1}));
    } else {
      for (long z = 1; z <= lay.extent.z - 1; z += 2) p.push_back(qubit(lc, d, {0, y, z}));
    }
  }
  // Each check layer of the other kind sees an even number of supported
  // layers; a string along y joins them in consecutive pairs.
  for (const auto& cl : inside(lc, t)) {
    std::vector<std::size_t> hit;
    for (auto i : cl.support)
      if (input.get(i)) hit.push_back(i);
    if (hit.size() % 2)
      throw IntegrityError("input operator meets check " + std::to_string(cl.check) +
                           " an odd number of times");
    const LayerId id{X ? LayerType::Z : LayerType::X, cl.check};
    for (std::size_t h = 0; h < hit.size(); h += 2) {
      const long lo = lay.y_of(hit[h]) + (hit[h] == cl.support.front() ? 2 : 0);
      const long hi = lay.y_of(hit[h + 1]) - 2;
      std::vector<std::size_t> p;
      for (long y = lo; y <= hi; y += 2)
        p.push_back(X ? qubit(lc, id, {cl.coord, y, 1}) : qubit(lc, id, {0, y, cl.coord}));
      if (!p.empty()) pieces.push_back(std::move(p));
    }
  }
  return pieces;
}

PauliOperator quasiconcatenated_logical(const LayerCode& lc, const BitVector& input, PauliType t) {
  PauliOperator op{t, BitVector(lc.n())};
  for (const auto& p : quasiconcatenated_pieces(lc, input, t))
    for (auto q : p) op.support.flip(q);
  if (syndrome(lc, op).any())
    throw IntegrityError("quasiconcatenated operator has a residual syndrome");
  return op;
}

PauliOperator quasiconcatenated_stabilizer(const LayerCode& lc, std::size_t check, PauliType t) {
  const auto& h = t == PauliType::X ? lc.input.hx : lc.input.hz;
  if (check >= h.rows()) throw InputError("check index out of range");
  const LayerId id{t == PauliType::X ? LayerType::X : LayerType::Z, check};
  PauliOperator op{t, BitVector(lc.n())};
  const auto& checks = lc.checks(t);
  const auto& m = t == PauliType::X ? lc.hx : lc.hz;
  for (std::size_t r = 0; r < checks.size(); ++r)
    if (checks[r].layer == id) op.support ^= m.row(r);
  return op;
}

std::vector<long> slab_boundaries(const LayerCode& lc, PauliType t) {
  const auto& layers = inside(lc, t);
  const long half = 2 * (lc.c / 2) + 1;
  std::vector<long> cuts;
  for (std::size_t i = 0; i + 1 < layers.size(); ++i) cuts.push_back(layers[i].coord + half);
  if (cuts.empty()) cuts.push_back(t == PauliType::X ? 1 : 2);
  return cuts;
}

long reference_boundary(const LayerCode& lc, PauliType t) {
  const auto cuts = slab_boundaries(lc, t);
  return cuts[(cuts.size() - 1) / 2];
}

std::size_t MConfiguration::weight() const {
  std::size_t w = xz.weight();
  for (const auto& s : segments) w += s.weight();
  return w;
}

bool MConfiguration::xz_only() const {
  return std::all_of(segments.begin(), segments.end(), [](const auto& s) { return s.none(); });
}

MConfiguration& MConfiguration::operator^=(const MConfiguration& o) {
  xz ^= o.xz;
  for (std::size_t k = 0; k < segments.size(); ++k) segments[k] ^= o.segments[k];
  return *this;
}

MConfiguration zero_config(const LayerCode& lc, PauliType t, long cut) {
  MConfiguration cfg{t, cut, BitVector(lc.input.n), {}};
  for (const auto& l : crossing(lc, t)) cfg.segments.emplace_back(segment_count(l));
  return cfg;
}

MConfiguration boundary_config(const LayerCode& lc, const PauliOperator& op, long cut) {
  const PauliType t = op.type;
  BitVector part(lc.n());
  for (auto q : op.support.support())
    if (axis(lc.qubits[q].pos, t) < cut) part.set(q);
  MConfiguration cfg = zero_config(lc, t, cut);
  const auto& checks = lc.checks(css::dual(t));
  const auto& cross = crossing(lc, t);
  const LayerType cross_type = t == PauliType::X ? LayerType::X : LayerType::Z;
  for (auto r : detectors(lc, t).apply(part).support()) {
    const auto& ch = checks[r];
    if (axis(ch.pos, t) != cut)
      throw IntegrityError("operator has a syndrome away from the slab boundary at " + ch.origin());
    if (ch.layer.type == LayerType::D) {
      cfg.xz.flip(ch.layer.index);
    } else if (ch.layer.type == cross_type) {
      const auto& l = cross[ch.layer.index];
      cfg.segments[ch.layer.index].flip(segment_of(lc, l, ch.pos.y));
    } else {
      throw IntegrityError("slab boundary crosses layer " + ch.layer.str());
    }
  }
  return cfg;
}

MConfiguration slab_boundary_config(const LayerCode& lc, const PauliOperator& op,
                                    std::size_t index) {
  const auto cuts = slab_boundaries(lc, op.type);
  if (index >= cuts.size())
    throw InputError("slab boundary " + std::to_string(index) + " out of range (" +
                     std::to_string(cuts.size()) + " boundaries)");
  return boundary_config(lc, op, cuts[index]);
}

std::vector<MConfiguration> equivalence_moves(const LayerCode& lc, PauliType t, long cut) {
  std::vector<MConfiguration> out;
  const auto& cross = crossing(lc, t);
  for (std::size_t k = 0; k < cross.size(); ++k) {
    const auto& l = cross[k];
    const std::size_t segs = segment_count(l);
    for (std::size_t s = 0; s < l.support.size(); ++s) {
      auto m = zero_config(lc, t, cut);
      m.xz.set(l.support[s]);
      if (s >= 1) m.segments[k].flip(s - 1);
      if (s < segs) m.segments[k].flip(s);
      out.push_back(std::move(m));
    }
    if (l.open_end) {
      auto m = zero_config(lc, t, cut);
      m.segments[k].set(0);
      out.push_back(std::move(m));
    }
  }
  return out;
}

MConfiguration reduce_to_xz(const MConfiguration& cfg, const LayerCode& lc) {
  MConfiguration out = cfg;
  const auto& cross = crossing(lc, cfg.type);
  for (std::size_t k = 0; k < cross.size(); ++k) {
    const auto& s = cross[k].support;
    for (auto t : cfg.segments[k].support()) {
      BitVector left = out.xz, right = out.xz;
      for (std::size_t i = 0; i <= t; ++i) left.flip(s[i]);
      for (std::size_t i = t + 1; i < s.size(); ++i) right.flip(s[i]);
      out.xz = right.weight() < left.weight() ? right : left;
    }
    out.segments[k] = BitVector(out.segments[k].size());
  }
  return out;
}

BitVector config_to_input_pauli(const MConfiguration& cfg) {
  if (!cfg.xz_only()) throw InputError("configuration still has segment excitations");
  return cfg.xz;
}

BitVector map_layer_logical_to_input(const LayerCode& lc, const PauliOperator& op) {
  if (syndrome(lc, op).any()) throw InputError("operator has a nonzero syndrome");
  auto cfg = boundary_config(lc, op, reference_boundary(lc, op.type));
  auto v = config_to_input_pauli(reduce_to_xz(cfg, lc));
  if (lc.input.detectors(op.type).apply(v).any())
    throw IntegrityError("truncated operator is outside the input normalizer");
  return v;
}

}  // namespace lc::logical
