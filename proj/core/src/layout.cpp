#include <algorithm>
#include <cstdlib>
#include <regex>

#include "layercode/layer.hpp"

namespace lc::layer {

long chebyshev(const Coord& a, const Coord& b) {
  return std::max({std::labs(a.x - b.x), std::labs(a.y - b.y), std::labs(a.z - b.z)});
}

const char* plane_name(LayerType t) {
  switch (t) {
    case LayerType::D: return "xz";
    case LayerType::Z: return "yz";
    case LayerType::X: return "xy";
  }
  return "?";
}

std::string LayerId::str() const { return static_cast<char>(type) + std::to_string(index); }

LayerId LayerId::parse(const std::string& s) {
  static const std::regex re(R"(([DZX])(\d+))");
  std::smatch m;
  if (!std::regex_match(s, m, re)) throw InputError("bad layer id '" + s + "'");
  return {static_cast<LayerType>(m.str(1)[0]), std::stoul(m.str(2))};
}

const char* to_string(LineKind k) {
  switch (k) {
    case LineKind::trivialY: return "trivialY";
    case LineKind::nontrivialY: return "nontrivialY";
    case LineKind::firstZ: return "firstZ";
    case LineKind::middleZ: return "middleZ";
    case LineKind::lastZ: return "lastZ";
    case LineKind::trivialZ: return "trivialZ";
    case LineKind::firstX: return "firstX";
    case LineKind::middleX: return "middleX";
    case LineKind::lastX: return "lastX";
    case LineKind::trivialX: return "trivialX";
  }
  return "?";
}

std::optional<LineKind> parse_line_kind(const std::string& s) {
  for (auto k : kAllLineKinds)
    if (s == to_string(k)) return k;
  return std::nullopt;
}

std::string PointKind::str() const {
  return (boundary ? "boundary" : "bulk") + std::to_string(index);
}

std::optional<PointKind> PointKind::parse(const std::string& s) {
  static const std::regex re(R"((bulk|boundary)(\d+))");
  std::smatch m;
  if (!std::regex_match(s, m, re)) return std::nullopt;
  PointKind k{m.str(1) == "boundary", std::stoi(m.str(2))};
  if (k.index < 1 || k.index > (k.boundary ? 12 : 10)) return std::nullopt;
  return k;
}

std::size_t DefectRegistry::count(LineKind k) const {
  return std::count_if(lines.begin(), lines.end(), [&](const auto& l) { return l.kind == k; });
}

std::size_t DefectRegistry::count(PointKind k) const {
  return std::count_if(points.begin(), points.end(), [&](const auto& p) { return p.kind == k; });
}

LayerLayout plan_layout(const css::CssCode& code, long c) {
  if (c < 2) throw InputError("spacing c must be at least 2, got " + std::to_string(c));
  const auto rep = css::validate(code);
  if (!rep.ok) throw InputError("input code does not validate: " + rep.describe());

  LayerLayout out;
  out.c = c;
  out.extent.x = 2 * c * static_cast<long>(code.n_z() + 1);
  out.extent.z = 2 * c * static_cast<long>(code.n_x() + 1);
  for (std::size_t i = 0; i < code.n; ++i)
    out.qubit_layers.push_back({i, 2 * c * static_cast<long>(i), out.extent.x, out.extent.z});
  out.extent.y = code.n ? out.qubit_layers.back().y : 0;

  auto check_layers = [&](const gf2::BitMatrix& h, auto coord_of) {
    std::vector<CheckLayer> layers;
    for (std::size_t r = 0; r < h.rows(); ++r) {
      CheckLayer l;
      l.check = r;
      l.coord = coord_of(r);
      l.support = h.row(r).support();
      if (!l.empty()) {
        l.y0 = out.y_of(l.support.front());
        l.y1 = out.y_of(l.support.back());
        if (l.support.size() == 1) {
          l.open_end = true;
          l.y1 = l.y0 + 2 * c - 1;
        }
        out.extent.y = std::max(out.extent.y, l.y1);
      }
      layers.push_back(std::move(l));
    }
    return layers;
  };
  out.zcheck_layers = check_layers(code.hz, [&](std::size_t j) { return 2 * c * long(j + 1); });
  out.xcheck_layers = check_layers(code.hx, [&](std::size_t k) { return 2 * c * long(k + 1) + 1; });
  return out;
}

bool OverlapPairing::paired_between(std::size_t k, std::size_t j, std::size_t q1,
                                    std::size_t q2) const {
  auto it = pairs.find({k, j});
  if (it == pairs.end()) return false;
  for (auto [a, b] : it->second)
    if (a <= q1 && q2 <= b) return true;
  return false;
}

OverlapPairing compute_pairing(const css::CssCode& code) {
  // Position of each qubit in the input order.
  std::vector<std::size_t> pos(code.n);
  for (std::size_t i = 0; i < code.qubit_order.size(); ++i) pos[code.qubit_order[i]] = i;
  OverlapPairing out;
  for (std::size_t k = 0; k < code.n_x(); ++k)
    for (std::size_t j = 0; j < code.n_z(); ++j) {
      auto shared = (code.hx.row(k) & code.hz.row(j)).support();
      if (shared.empty()) continue;
      if (shared.size() % 2)
        throw IntegrityError("X check " + std::to_string(k) + " and Z check " + std::to_string(j) +
                             " share an odd number of qubits");
      std::sort(shared.begin(), shared.end(),
                [&](std::size_t a, std::size_t b) { return pos[a] < pos[b]; });
      auto& v = out.pairs[{k, j}];
      for (std::size_t t = 0; t < shared.size(); t += 2)
        v.emplace_back(std::min(shared[t], shared[t + 1]), std::max(shared[t], shared[t + 1]));
    }
  return out;
}

namespace {

enum class Role { first, middle, last, through };

Role role_of(const CheckLayer& l, std::size_t i) {
  if (!std::binary_search(l.support.begin(), l.support.end(), i)) return Role::through;
  if (i == l.support.front()) return Role::first;
  if (i == l.support.back()) return Role::last;
  return Role::middle;
}

LineKind z_kind(Role r) {
  switch (r) {
    case Role::first: return LineKind::firstZ;
    case Role::middle: return LineKind::middleZ;
    case Role::last: return LineKind::lastZ;
    default: return LineKind::trivialZ;
  }
}

LineKind x_kind(Role r) {
  switch (r) {
    case Role::first: return LineKind::firstX;
    case Role::middle: return LineKind::middleX;
    case Role::last: return LineKind::lastX;
    default: return LineKind::trivialX;
  }
}

bool in_span(const CheckLayer& l, long y) { return !l.empty() && l.y0 <= y && y <= l.y1; }

}  // namespace

DefectRegistry classify_junctions(const LayerLayout& layout, const OverlapPairing& pairing) {
  DefectRegistry reg;
  const long X = layout.extent.x, Z = layout.extent.z;
  std::map<std::pair<std::size_t, std::size_t>, std::size_t> zline, xline;  // (j|k, i) -> line

  for (const auto& zl : layout.zcheck_layers)
    for (const auto& ql : layout.qubit_layers) {
      if (!in_span(zl, ql.y)) continue;
      zline[{zl.check, ql.qubit}] = reg.lines.size();
      reg.lines.push_back({z_kind(role_of(zl, ql.qubit)), {zl.coord, ql.y, 0}, {zl.coord, ql.y, Z},
                           {{LayerType::Z, zl.check}, {LayerType::D, ql.qubit}}});
    }
  for (const auto& xl : layout.xcheck_layers)
    for (const auto& ql : layout.qubit_layers) {
      if (!in_span(xl, ql.y)) continue;
      xline[{xl.check, ql.qubit}] = reg.lines.size();
      reg.lines.push_back({x_kind(role_of(xl, ql.qubit)), {0, ql.y, xl.coord}, {X, ql.y, xl.coord},
                           {{LayerType::X, xl.check}, {LayerType::D, ql.qubit}}});
    }

  // y segments between Z and X layers, split at qubit layers.
  std::map<std::tuple<std::size_t, std::size_t, long>, std::size_t> yseg;  // (j, k, y from)
  for (const auto& zl : layout.zcheck_layers)
    for (const auto& xl : layout.xcheck_layers) {
      if (zl.empty() || xl.empty()) continue;
      const long lo = std::max(zl.y0, xl.y0), hi = std::min(zl.y1, xl.y1);
      if (lo >= hi) continue;
      std::vector<long> cuts{lo};
      for (const auto& ql : layout.qubit_layers)
        if (lo < ql.y && ql.y < hi) cuts.push_back(ql.y);
      cuts.push_back(hi);
      for (std::size_t s = 0; s + 1 < cuts.size(); ++s) {
        bool nontrivial = false;
        if (auto it = pairing.pairs.find({xl.check, zl.check}); it != pairing.pairs.end())
          for (auto [a, b] : it->second)
            nontrivial |= layout.y_of(a) <= cuts[s] && cuts[s + 1] <= layout.y_of(b);
        yseg[{zl.check, xl.check, cuts[s]}] = reg.lines.size();
        reg.lines.push_back({nontrivial ? LineKind::nontrivialY : LineKind::trivialY,
                             {zl.coord, cuts[s], xl.coord},
                             {zl.coord, cuts[s + 1], xl.coord},
                             {{LayerType::Z, zl.check}, {LayerType::X, xl.check}}});
      }
    }

  auto fail = [](const std::string& what, const Coord& at) {
    throw IntegrityError("unclassifiable junction (" + what + ") at (" + std::to_string(at.x) +
                         "," + std::to_string(at.y) + "," + std::to_string(at.z) + ")");
  };

  for (const auto& zl : layout.zcheck_layers)
    for (const auto& xl : layout.xcheck_layers)
      for (const auto& ql : layout.qubit_layers) {
        if (!in_span(zl, ql.y) || !in_span(xl, ql.y)) continue;
        const std::size_t i = ql.qubit;
        const Coord site{zl.coord, ql.y, xl.coord};
        bool above = false, below = false;
        if (auto it = pairing.pairs.find({xl.check, zl.check}); it != pairing.pairs.end())
          for (auto [a, b] : it->second) {
            above |= a <= i && i < b;
            below |= a < i && i <= b;
          }
        const Role rz = role_of(zl, i), rx = role_of(xl, i);
        int kind = 0;
        if (rz != Role::through && rx != Role::through) {
          if (above == below) fail("shared qubit is not a pair end", site);
          if (rz == Role::first && rx == Role::first) kind = 1;
          else if (rz == Role::last && rx == Role::last) kind = 2;
          else if (rz == Role::middle && rx == Role::middle) kind = above ? 3 : 4;
          else if (rz == Role::first && rx == Role::middle) kind = 5;
          else if (rz == Role::last && rx == Role::middle) kind = 6;
          else if (rz == Role::middle && rx == Role::first) kind = 7;
          else if (rz == Role::middle && rx == Role::last) kind = 8;
          else fail("opposite end roles", site);
        } else {
          if (above != below) fail("pair ends on an unshared qubit", site);
          if (above && rz == Role::middle && rx == Role::through) kind = 9;
          else if (above && rx == Role::middle && rz == Role::through) kind = 10;
          else if (above && (rz != Role::through || rx != Role::through))
            fail("layer ends inside a paired interval", site);
        }
        if (!kind) continue;
        PointDefect p{{false, kind}, site, {zline.at({zl.check, i}), xline.at({xl.check, i})}};
        auto seg = [&](long y) {
          if (auto it = yseg.find({zl.check, xl.check, y}); it != yseg.end())
            p.lines.push_back(it->second);
        };
        for (const auto& [key, idx] : yseg)
          if (std::get<0>(key) == zl.check && std::get<1>(key) == xl.check &&
              reg.lines[idx].to.y == ql.y)
            p.lines.push_back(idx);
        seg(ql.y);
        reg.points.push_back(std::move(p));
      }

  // Boundary points where z lines meet the rough faces and x lines the smooth ones.
  for (std::size_t li = 0; li < reg.lines.size(); ++li) {
    const auto& l = reg.lines[li];
    int base = 0;
    switch (l.kind) {
      case LineKind::firstZ: base = 1; break;
      case LineKind::lastZ: base = 3; break;
      case LineKind::middleZ: base = 5; break;
      case LineKind::firstX: base = 7; break;
      case LineKind::lastX: base = 9; break;
      case LineKind::middleX: base = 11; break;
      default: continue;
    }
    reg.points.push_back({{true, base}, l.from, {li}});
    reg.points.push_back({{true, base + 1}, l.to, {li}});
  }
  return reg;
}

}  // namespace lc::layer
