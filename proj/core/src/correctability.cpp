#include <algorithm>

#include "layercode/analysis.hpp"

namespace lc::analysis {

bool CorrectabilityReport::all_pass() const {
  return std::all_of(balls.begin(), balls.end(), [](const auto& b) { return b.pass; });
}

namespace {

long split_rank(const layer::LayerCode& lc, const std::vector<std::size_t>& cols) {
  return long(gf2::rank(lc.hx.select_columns(cols)) + gf2::rank(lc.hz.select_columns(cols)));
}

}  // namespace

BallReport ball_correctability(const layer::LayerCode& lc, const layer::Coord& site, long radius) {
  std::vector<std::size_t> in, out;
  for (const auto& q : lc.qubits) (layer::chebyshev(q.pos, site) <= radius ? in : out).push_back(q.id);
  const long full = long(gf2::rank(lc.hx) + gf2::rank(lc.hz));
  BallReport r;
  r.site = site;
  r.size = in.size();
  r.lhs = 2 * long(in.size());
  r.rhs = full + split_rank(lc, in) - split_rank(lc, out);
  r.pass = r.lhs == r.rhs;
  return r;
}

CorrectabilityReport point_defect_correctability(const layer::LayerCode& lc, long radius) {
  CorrectabilityReport rep;
  rep.radius = radius;
  for (const auto& p : lc.defects.points) {
    auto b = ball_correctability(lc, p.site, radius);
    b.kind = p.kind.str();
    rep.balls.push_back(std::move(b));
  }
  return rep;
}

RelationCertificate relation_inheritance(const css::CssCode& code,
                                         const std::vector<std::size_t>& relation, PauliType t,
                                         const layer::LayerCode& lc) {
  const auto& h = code.stabilizers(t);
  BitVector sum(code.n);
  for (auto r : relation) {
    if (r >= h.rows()) throw InputError("relation names check " + std::to_string(r) + " out of range");
    sum ^= h.row(r);
  }
  if (sum.any()) throw InputError("the listed checks do not sum to zero");
  RelationCertificate cert{BitVector(lc.n()), {}};
  for (auto r : relation) cert.product ^= logical::quasiconcatenated_stabilizer(lc, r, t).support;
  const auto& m = t == PauliType::X ? lc.hx : lc.hz;
  auto c = gf2::solve_rows(m, cert.product);
  if (!c) throw IntegrityError("relation product is outside the layer stabilizer group");
  cert.combination = *c;
  return cert;
}

}  // namespace lc::analysis
