#include <algorithm>
#include <functional>
#include <limits>

#include "layercode/layer.hpp"

namespace lc::layer {

namespace {

// Cell of the 3D complex. D: (qubit, x, z). Z: (check, y, z). X: (check, x, y).
struct Key {
  char t;
  long a, b, c;
  auto operator<=>(const Key&) const = default;
};

// Cell of a 2D cross-section. D: (qubit, x|z). Z|X: (check, y).
struct Key2 {
  char t;
  long a, b;
  auto operator<=>(const Key2&) const = default;
};

struct Cell {
  int grade = 0;
  std::set<Key> bd;
};

struct Cell2 {
  int grade = 0;
  std::set<Key2> bd;
};

// 1D path [lo, hi]; even points are vertices. Edges drop endpoints outside
// [keep_lo, keep_hi], which makes that end rough.
std::map<long, std::pair<int, std::set<long>>> path(long lo, long hi, long keep_lo, long keep_hi) {
  std::map<long, std::pair<int, std::set<long>>> p;
  for (long v = lo; v <= hi; ++v) {
    if (v % 2 == 0) {
      p[v] = {0, {}};
    } else {
      std::set<long> bd;
      for (long w : {v - 1, v + 1})
        if (keep_lo <= w && w <= keep_hi) bd.insert(w);
      p[v] = {1, bd};
    }
  }
  return p;
}

class Complex {
 public:
  Complex(const css::CssCode& code, const LayerLayout& layout, const OverlapPairing& pairing)
      : code_(code), lay_(layout), pairing_(pairing) {}

  void build() {
    const long c = lay_.c, Xm = lay_.extent.x, Zm = lay_.extent.z;
    std::map<Key2, Cell2> K, L;

    // xy cross-section: D lines along x, Z-check lines along y.
    for (const auto& ql : lay_.qubit_layers)
      for (long x = 0; x <= Xm; ++x) {
        const long i = ql.qubit;
        K[{'D', i, x}] = x % 2 == 0 ? Cell2{0, {}} : Cell2{1, {{'D', i, x - 1}, {'D', i, x + 1}}};
      }
    for (const auto& zl : lay_.zcheck_layers) {
      if (zl.empty()) continue;
      const long j = zl.check;
      // The line starts and ends on the vertices of its end qubit layers.
      auto vert = [&](long y) -> Key2 {
        if (y % (2 * c) == 0) {
          const long i = y / (2 * c);
          if (i == long(zl.support.front()) || i == long(zl.support.back())) return {'D', i, zl.coord};
        }
        return {'Z', j, y};
      };
      for (long y = zl.y0; y <= zl.y1; ++y) {
        if (y % 2 == 0) {
          if (auto v = vert(y); v.t == 'Z') K[v] = {0, {}};
        } else {
          Cell2 e{1, {}};
          for (long w : {y - 1, y + 1})
            if (w <= zl.y1) e.bd.insert(vert(w));
          K[{'Z', j, y}] = e;
        }
      }
      for (std::size_t s = 1; s + 1 < zl.support.size(); ++s) {
        const long i = zl.support[s];
        K.at({'Z', j, lay_.y_of(i) - 1}).bd.insert({'D', i, zl.coord});
      }
    }

    // yz cross-section: D lines along z, X-check lines along y.
    for (const auto& ql : lay_.qubit_layers)
      for (long z = 1; z <= Zm - 1; ++z) {
        const long i = ql.qubit;
        Cell2 cell{static_cast<int>(z % 2), {}};
        if (z % 2)
          for (long w : {z - 1, z + 1})
            if (2 <= w && w <= Zm - 2) cell.bd.insert({'D', i, w});
        L[{'D', i, z}] = cell;
      }
    for (const auto& xl : lay_.xcheck_layers) {
      if (xl.empty()) continue;
      const long k = xl.check;
      auto edge = [&](long y) -> Key2 {
        if (y % (2 * c) == 0) {
          const long i = y / (2 * c);
          if (i == long(xl.support.front()) || i == long(xl.support.back())) return {'D', i, xl.coord};
        }
        return {'X', k, y};
      };
      for (long y = xl.y0; y <= xl.y1; ++y) {
        if (y % 2) {
          L[{'X', k, y}] = {0, {}};
        } else if (auto e = edge(y); e.t == 'X') {
          L[e] = {1, {}};
        }
      }
      for (long y = xl.y0; y <= xl.y1; y += 2) {
        auto& e = L.at(edge(y));
        for (long w : {y - 1, y + 1})
          if (xl.y0 < w && w <= xl.y1) e.bd.insert({'X', k, w});
      }
      for (std::size_t s = 1; s + 1 < xl.support.size(); ++s) {
        const long i = xl.support[s];
        L.at({'D', i, xl.coord}).bd.insert({'X', k, lay_.y_of(i) - 1});
      }
    }

    // Z side is K x P_z, X side is P_x x L; shared D cells merge.
    const auto Pz = path(1, Zm - 1, 2, Zm - 2);
    const auto Px = path(0, Xm, 0, Xm);
    auto gK = [](const Key2& k, long z) -> Key { return {k.t, k.a, k.b, z}; };
    auto gL = [](long x, const Key2& l) -> Key {
      return l.t == 'D' ? Key{'D', l.a, x, l.b} : Key{'X', l.a, x, l.b};
    };
    for (const auto& [kc, kcell] : K)
      for (const auto& [z, zcell] : Pz) {
        std::set<Key> bd;
        for (const auto& b : kcell.bd) bd.insert(gK(b, z));
        for (long b : zcell.second) bd.insert(gK(kc, b));
        add(gK(kc, z), kcell.grade + zcell.first, bd);
      }
    for (const auto& [x, xcell] : Px)
      for (const auto& [lc, lcell] : L) {
        std::set<Key> bd;
        for (long b : xcell.second) bd.insert(gL(b, lc));
        for (const auto& b : lcell.bd) bd.insert(gL(x, b));
        add(gL(x, lc), xcell.first + lcell.grade, bd);
      }
    staircase();
  }

  Coord pos(const Key& k) const {
    switch (k.t) {
      case 'D': return {k.b, lay_.y_of(k.a), k.c};
      case 'Z': return {lay_.zcheck_layers[k.a].coord, k.b, k.c};
      default: return {k.b, k.c, lay_.xcheck_layers[k.a].coord};
    }
  }
  static LayerId layer(const Key& k) {
    return {static_cast<LayerType>(k.t), static_cast<std::size_t>(k.a)};
  }

  const std::map<Key, Cell>& cells() const { return cells_; }
  const std::set<Key>& staircase_checks() const { return modified_; }

 private:
  void add(const Key& key, int grade, const std::set<Key>& bd) {
    auto [it, fresh] = cells_.try_emplace(key, Cell{grade, bd});
    if (!fresh) {
      if (it->second.grade != grade) throw IntegrityError("cell merged across grades");
      it->second.bd.insert(bd.begin(), bd.end());
    }
  }

  static long yof(const Key& k) { return k.t == 'Z' ? k.b : k.c; }

  // Nontrivial y junctions. Between the two paired qubit layers the shared
  // D qubit is in one plaquette of Z_j and one vertex of X_k at each end; a
  // staircase of single-qubit additions joins the plaquette chain of Z_j to
  // the vertex chain of X_k so that every check still commutes. The path
  // minimizes the largest y offset subject to weight <= 6.
  void staircase() {
    std::map<Key, std::vector<Key>> zchecks_of, qubits_of;
    for (const auto& [key, cell] : cells_) {
      if (cell.grade == 2)
        for (const auto& q : cell.bd) zchecks_of[q].push_back(key);
      if (cell.grade == 1)
        for (const auto& v : cell.bd) qubits_of[v].push_back(key);
    }
    std::vector<std::pair<Key, Key>> w_adds, q_adds;  // (check, qubit)

    for (const auto& [kj, pairs] : pairing_.pairs) {
      const long k = kj.first, j = kj.second;
      const long x = lay_.zcheck_layers[j].coord, z = lay_.xcheck_layers[k].coord;
      auto qnb = [&](const Key& q) {
        std::vector<Key> out;
        if (auto it = zchecks_of.find(q); it != zchecks_of.end())
          for (const auto& t : it->second)
            if (t.t == 'Z' && t.a == j) out.push_back(t);
        return out;
      };
      auto wnb = [&](const Key& q) {
        std::vector<Key> out;
        for (const auto& w : cells_.at(q).bd)
          if (w.t == 'X' && w.a == k) out.push_back(w);
        return out;
      };
      auto one = [&](std::vector<Key> v, const char* what) {
        if (v.size() != 1)
          throw IntegrityError(std::string("y junction: expected one ") + what + " at a paired qubit");
        return v[0];
      };
      // Walk from `first` to `last` through connector qubits with exactly two
      // neighbouring nodes, always moving up in y.
      auto chain = [&](Key first, Key last, auto candidates, auto nbf) {
        std::vector<Key> nodes{first}, conns;
        std::optional<Key> prev;
        while (nodes.back() != last) {
          const Key cur = nodes.back();
          std::optional<std::pair<Key, Key>> found;
          for (const auto& cq : candidates(cur)) {
            if (prev && cq == *prev) continue;
            auto nb = nbf(cq);
            if (nb.size() != 2 || (nb[0] != cur && nb[1] != cur)) continue;
            const Key other = nb[0] == cur ? nb[1] : nb[0];
            if (yof(other) > yof(cur)) {
              found = {cq, other};
              break;
            }
          }
          if (!found) throw IntegrityError("y junction: chain is broken");
          conns.push_back(found->first);
          nodes.push_back(found->second);
          prev = found->first;
        }
        return std::pair{nodes, conns};
      };
      auto q_candidates = [&](const Key& cur) {
        std::vector<Key> out;
        for (const auto& q : cells_.at(cur).bd)
          if (q.t == 'Z' && q.c == z && q.b % 2 == 0) out.push_back(q);
        return out;
      };
      auto w_candidates = [&](const Key& cur) {
        std::vector<Key> out;
        for (const auto& q : qubits_of[cur])
          if (q.t == 'X' && q.a == k && q.b == x) out.push_back(q);
        return out;
      };

      for (auto [i1, i2] : pairs) {
        const Key q1{'D', long(i1), x, z}, q2{'D', long(i2), x, z};
        auto [Qn, Qc] = chain(one(qnb(q1), "plaquette"), one(qnb(q2), "plaquette"), q_candidates, qnb);
        auto [Wn, Wc] = chain(one(wnb(q1), "vertex"), one(wnb(q2), "vertex"), w_candidates, wnb);
        const std::size_t p = Qc.size(), qn = Wc.size();
        std::vector<long> capW, capQ;
        for (const auto& w : Wn) capW.push_back(6 - long(qubits_of[w].size()));
        for (const auto& t : Qn) capQ.push_back(6 - long(cells_.at(t).bd.size()));

        // best[rs][rt][lw][lq]: min over paths of the max y offset.
        constexpr long kInf = std::numeric_limits<long>::max();
        constexpr int kLoad = 7;
        auto idx = [&](std::size_t rs, std::size_t rt, int lw, int lq) {
          return ((rs * (p + 1) + rt) * kLoad + lw) * kLoad + lq;
        };
        std::vector<long> memo((qn + 1) * (p + 1) * kLoad * kLoad, -1);
        std::vector<char> move(memo.size(), 0);
        std::function<long(std::size_t, std::size_t, int, int)> dp =
            [&](std::size_t rs, std::size_t rt, int lw, int lq) -> long {
          if (rs == qn && rt == p) return 0;
          auto& m = memo[idx(rs, rt, lw, lq)];
          if (m != -1) return m;
          long best = kInf;
          char mv = 0;
          if (rt < p && lw + 1 <= capW[rs]) {
            const long r = dp(rs, rt + 1, lw + 1, 0);
            if (r != kInf) {
              best = std::max(r, std::labs(yof(Wn[rs]) - yof(Qc[rt])));
              mv = 'a';
            }
          }
          if (rs < qn && lq + 1 <= capQ[rt]) {
            const long r = dp(rs + 1, rt, 0, lq + 1);
            if (r != kInf) {
              const long v = std::max(r, std::labs(yof(Qn[rt]) - yof(Wc[rs])));
              if (v < best) best = v, mv = 'b';
            }
          }
          move[idx(rs, rt, lw, lq)] = mv;
          return m = best;
        };
        if (dp(0, 0, 0, 0) == kInf)
          throw IntegrityError("y junction between qubits " + std::to_string(i1) + " and " +
                               std::to_string(i2) + " has no weight-6 staircase");
        std::size_t rs = 0, rt = 0;
        int lw = 0, lq = 0;
        while (rs != qn || rt != p) {
          if (move[idx(rs, rt, lw, lq)] == 'a') {
            w_adds.push_back({Wn[rs], Qc[rt]});
            ++rt, ++lw, lq = 0;
          } else {
            q_adds.push_back({Qn[rt], Wc[rs]});
            ++rs, ++lq, lw = 0;
          }
        }
      }
    }
    for (const auto& [chk, q] : w_adds) {
      auto& bd = cells_.at(q).bd;
      if (!bd.erase(chk)) bd.insert(chk);
      modified_.insert(chk);
    }
    for (const auto& [chk, q] : q_adds) {
      auto& bd = cells_.at(chk).bd;
      if (!bd.erase(q)) bd.insert(q);
      modified_.insert(chk);
    }
  }

  const css::CssCode& code_;
  const LayerLayout& lay_;
  const OverlapPairing& pairing_;
  std::map<Key, Cell> cells_;
  std::set<Key> modified_;
};

bool is_plain(const std::string& kind) { return kind == "bulk" || kind == "boundary"; }

}  // namespace

css::CssCode LayerCode::as_css() const {
  css::CssCode out;
  out.name = input.name + "-layer";
  out.n = qubits.size();
  out.hx = hx;
  out.hz = hz;
  out.qubit_order.resize(out.n);
  for (std::size_t i = 0; i < out.n; ++i) out.qubit_order[i] = i;
  return out;
}

std::optional<std::size_t> LayerCode::find_qubit(LayerId layer, const Coord& pos) const {
  auto it = index_.find({layer, pos});
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

void LayerCode::reindex() {
  index_.clear();
  for (const auto& q : qubits) index_[{q.layer, q.pos}] = q.id;
  auto matrix = [&](const std::vector<Check>& cs) {
    gf2::BitMatrix m(0, qubits.size());
    for (const auto& ch : cs) m.append_row(gf2::BitVector::from_support(qubits.size(), ch.support));
    return m;
  };
  hx = matrix(x_checks);
  hz = matrix(z_checks);
}

LayerCode build_layer_code(const css::CssCode& code, long c, const BuildOptions& opts) {
  LayerCode out;
  out.input = code;
  out.input_hash = css::content_hash(code);
  out.c = c;
  out.layout = plan_layout(code, c);
  out.pairing = compute_pairing(code);
  out.defects = classify_junctions(out.layout, out.pairing);

  Complex cx(code, out.layout, out.pairing);
  cx.build();
  const auto& cells = cx.cells();

  std::map<Key, std::size_t> qid;
  for (const auto& [key, cell] : cells)
    if (cell.grade == 1) {
      qid[key] = out.qubits.size();
      out.qubits.push_back({out.qubits.size(), cx.pos(key), Complex::layer(key)});
    }

  // Line kind between a check's own layer and a layer it reaches into.
  std::map<std::pair<LayerId, LayerId>, LineKind> line_kind;
  for (const auto& l : out.defects.lines)
    if (l.layers.size() == 2) {
      line_kind[{l.layers[0], l.layers[1]}] = l.kind;
      line_kind[{l.layers[1], l.layers[0]}] = l.kind;
    }

  auto classify = [&](const Key& key, Check& ch) {
    for (const auto& p : out.defects.points)
      if (chebyshev(p.site, ch.pos) <= 1) {
        ch.kind = p.kind.str();
        return;
      }
    if (cx.staircase_checks().count(key)) {
      ch.kind = to_string(LineKind::nontrivialY);
      return;
    }
    std::optional<LineKind> best;
    for (auto q : ch.support) {
      const auto& other = out.qubits[q].layer;
      if (other == ch.layer) continue;
      auto it = line_kind.find({ch.layer, other});
      const LineKind k = it == line_kind.end() ? LineKind::nontrivialY : it->second;
      if (!best || k < *best) best = k;
    }
    if (best) ch.kind = to_string(*best);
    else ch.kind = ch.support.size() == 4 ? "bulk" : "boundary";
  };

  std::map<Key, std::vector<std::size_t>> xsupp;
  for (const auto& [key, cell] : cells)
    if (cell.grade == 1)
      for (const auto& v : cell.bd) xsupp[v].push_back(qid.at(key));
  for (const auto& [key, cell] : cells) {
    if (cell.grade == 1) continue;
    Check ch;
    ch.pos = cx.pos(key);
    ch.layer = Complex::layer(key);
    if (cell.grade == 0) {
      if (auto it = xsupp.find(key); it != xsupp.end()) ch.support = it->second;
    } else {
      for (const auto& q : cell.bd) ch.support.push_back(qid.at(q));
    }
    std::sort(ch.support.begin(), ch.support.end());
    // Isolated vertices (no incident qubits) carry no check.
    if (ch.support.empty()) continue;
    classify(key, ch);
    if (opts.ablate.count(ch.kind)) continue;
    (cell.grade == 0 ? out.x_checks : out.z_checks).push_back(std::move(ch));
  }
  out.reindex();

  // Every pair of checks must commute; report the first offender.
  std::vector<std::vector<std::size_t>> z_of(out.n());
  for (std::size_t r = 0; r < out.z_checks.size(); ++r)
    for (auto q : out.z_checks[r].support) z_of[q].push_back(r);
  std::map<std::size_t, std::size_t> hits;
  for (const auto& xc : out.x_checks) {
    hits.clear();
    for (auto q : xc.support)
      for (auto r : z_of[q]) ++hits[r];
    for (auto [r, h] : hits)
      if (h % 2) {
        const auto& zc = out.z_checks[r];
        throw IntegrityError("checks " + xc.origin() + " and " + zc.origin() +
                             " anticommute near (" + std::to_string(xc.pos.x) + "," +
                             std::to_string(xc.pos.y) + "," + std::to_string(xc.pos.z) + ")");
      }
  }
  return out;
}

LayerCode tile_blocks(const css::CssCode& code, long c, std::size_t block_count) {
  if (block_count == 0) throw InputError("block count must be at least 1");
  LayerCode one = build_layer_code(code, c);
  if (block_count == 1) return one;
  LayerCode out = one;
  out.blocks = block_count;
  out.qubits.clear();
  out.x_checks.clear();
  out.z_checks.clear();
  out.defects = {};
  const long dx = one.layout.extent.x + 2 * c;
  for (std::size_t b = 0; b < block_count; ++b) {
    const long off = long(b) * dx;
    const std::size_t qoff = b * one.n(), loff = out.defects.lines.size();
    auto shift = [&](Coord p) { return Coord{p.x + off, p.y, p.z}; };
    for (auto q : one.qubits) {
      q.id += qoff;
      q.pos = shift(q.pos);
      out.qubits.push_back(q);
    }
    auto copy_checks = [&](const std::vector<Check>& src, std::vector<Check>& dst) {
      for (auto ch : src) {
        for (auto& q : ch.support) q += qoff;
        ch.pos = shift(ch.pos);
        dst.push_back(std::move(ch));
      }
    };
    copy_checks(one.x_checks, out.x_checks);
    copy_checks(one.z_checks, out.z_checks);
    for (auto l : one.defects.lines) {
      l.from = shift(l.from);
      l.to = shift(l.to);
      out.defects.lines.push_back(std::move(l));
    }
    for (auto p : one.defects.points) {
      p.site = shift(p.site);
      for (auto& li : p.lines) li += loff;
      out.defects.points.push_back(std::move(p));
    }
  }
  out.reindex();
  return out;
}

std::vector<CheckTemplate> template_catalog(const LayerCode& lc) {
  std::map<std::tuple<std::string, css::PauliType, std::vector<Coord>>, std::size_t> shapes;
  for (auto t : {css::PauliType::X, css::PauliType::Z})
    for (const auto& ch : lc.checks(t)) {
      if (is_plain(ch.kind)) continue;
      std::vector<Coord> off;
      for (auto q : ch.support) {
        const auto& p = lc.qubits[q].pos;
        off.push_back({p.x - ch.pos.x, p.y - ch.pos.y, p.z - ch.pos.z});
      }
      std::sort(off.begin(), off.end());
      ++shapes[{ch.kind, t, off}];
    }
  std::vector<CheckTemplate> out;
  for (const auto& [key, count] : shapes)
    out.push_back({std::get<0>(key), std::get<1>(key), std::get<2>(key), count});
  return out;
}

std::vector<std::string> template_kinds(const LayerCode& lc) {
  std::set<std::string> kinds;
  for (auto t : {css::PauliType::X, css::PauliType::Z})
    for (const auto& ch : lc.checks(t))
      if (!is_plain(ch.kind)) kinds.insert(ch.kind);
  return {kinds.begin(), kinds.end()};
}

StructureReport check_structure(const LayerCode& lc) {
  StructureReport rep;
  std::vector<std::vector<std::size_t>> z_of(lc.n());
  for (std::size_t r = 0; r < lc.z_checks.size(); ++r)
    for (auto q : lc.z_checks[r].support) {
      if (q >= lc.n()) {
        rep.failures.push_back("check support out of range");
        return rep;
      }
      z_of[q].push_back(r);
    }
  std::map<std::size_t, std::size_t> hits;
  for (std::size_t r = 0; r < lc.x_checks.size() && rep.commutes; ++r) {
    hits.clear();
    for (auto q : lc.x_checks[r].support) {
      if (q >= lc.n()) {
        rep.failures.push_back("check support out of range");
        return rep;
      }
      for (auto s : z_of[q]) ++hits[s];
    }
    for (auto [s, h] : hits)
      if (h % 2) {
        rep.commutes = false;
        rep.failures.push_back("commutation: " + lc.x_checks[r].origin() + " (x" +
                               std::to_string(r) + ") anticommutes with " +
                               lc.z_checks[s].origin() + " (z" + std::to_string(s) + ")");
        break;
      }
  }
  for (auto t : {css::PauliType::X, css::PauliType::Z})
    for (const auto& ch : lc.checks(t)) {
      rep.max_weight = std::max(rep.max_weight, ch.support.size());
      if (ch.support.empty()) continue;
      Coord lo = lc.qubits[ch.support[0]].pos, hi = lo;
      for (auto q : ch.support) {
        const auto& p = lc.qubits[q].pos;
        lo = {std::min(lo.x, p.x), std::min(lo.y, p.y), std::min(lo.z, p.z)};
        hi = {std::max(hi.x, p.x), std::max(hi.y, p.y), std::max(hi.z, p.z)};
      }
      rep.max_extent = std::max({rep.max_extent, hi.x - lo.x, hi.y - lo.y, hi.z - lo.z});
    }
  if (rep.max_weight > 6)
    rep.failures.push_back("weight: a check has weight " + std::to_string(rep.max_weight) + " > 6");
  if (rep.max_extent > 2 * lc.c + 1)
    rep.failures.push_back("locality: a check spans " + std::to_string(rep.max_extent) +
                           " units > 2c+1 = " + std::to_string(2 * lc.c + 1));
  if (rep.commutes) {
    rep.k = css::logical_qubit_count(lc.as_css());
    rep.input_k = lc.blocks * css::logical_qubit_count(lc.input);
    if (rep.k != rep.input_k)
      rep.failures.push_back("k: layer code encodes " + std::to_string(rep.k) + ", input " +
                             std::to_string(rep.input_k));
  }
  return rep;
}

}  // namespace lc::layer
