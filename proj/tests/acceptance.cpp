// One line per acceptance criterion; exit status is nonzero if any fails.
#include <chrono>
#include <cstdio>
#include <functional>
#include <sstream>
#include <string>

#include "corpus.hpp"
#include "layercode/analysis.hpp"

using namespace lc;
using css::PauliType;
using gf2::BitVector;

namespace {

struct Outcome {
  bool pass;
  std::string detail;
};

int failures = 0;

void criterion(int id, const char* title, const std::function<Outcome()>& body) {
  const auto t0 = std::chrono::steady_clock::now();
  Outcome o;
  try {
    o = body();
  } catch (const std::exception& e) {
    o = {false, std::string("exception: ") + e.what()};
  }
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  if (!o.pass) ++failures;
  std::printf("[%s] %d %s: %s (%.2fs)\n", o.pass ? "PASS" : "FAIL", id, title, o.detail.c_str(), secs);
  std::fflush(stdout);
}

std::vector<css::CssCode> corpus() {
  auto codes = fixtures::random_corpus();
  for (const auto& n : fixtures::paper_builtins()) codes.push_back(css::builtin(n));
  return codes;
}

// Exhaustive bottleneck oracle, written independently of the library search:
// Bellman-Ford style relaxation over all 2^n flip states.
std::size_t oracle_barrier(const css::CssCode& code, PauliType t) {
  const std::size_t S = std::size_t{1} << code.n;
  std::vector<std::size_t> cost(S), best(S, SIZE_MAX);
  auto vec = [&](std::size_t s) {
    BitVector v(code.n);
    for (std::size_t q = 0; q < code.n; ++q)
      if ((s >> q) & 1u) v.set(q);
    return v;
  };
  for (std::size_t s = 0; s < S; ++s) cost[s] = code.detectors(t).apply(vec(s)).weight();
  best[0] = 0;
  for (std::size_t round = 0; round < S; ++round)
    for (std::size_t s = 0; s < S; ++s)
      if (best[s] != SIZE_MAX)
        for (std::size_t q = 0; q < code.n; ++q) {
          const std::size_t u = s ^ (std::size_t{1} << q);
          best[u] = std::min(best[u], std::max(best[s], cost[u]));
        }
  std::size_t out = SIZE_MAX;
  for (std::size_t s = 1; s < S; ++s)
    if (css::is_nontrivial_logical(code, vec(s), t)) out = std::min(out, best[s]);
  return out;
}

std::string pipeline(const std::string& name, uint64_t seed) {
  std::ostringstream out;
  const auto lc = layer::build_layer_code(css::builtin(name), 2);
  out << layer::to_json(lc) << layer::geometry_json(lc);
  gf2::write_matrix_market(out, lc.hx);
  gf2::write_matrix_market(out, lc.hz);
  analysis::DistanceOptions o;
  o.search.seed = seed;
  o.node_budget = uint64_t{1} << 20;
  auto d = analysis::layer_distance_bounds(lc, o);
  for (const auto* t : {&d.x, &d.z})
    out << t->lower << ' ' << t->upper << ' ' << analysis::to_string(t->status) << ' ' << t->witness.to_string() << '\n';
  auto basis = css::logical_basis(lc.input);
  for (const auto& v : basis.x) {
    auto b = analysis::energy_barrier_sweep(lc, v, PauliType::X);
    out << b.value;
    for (auto q : b.witness) out << ' ' << q;
    out << '\n';
  }
  return out.str();
}

}  // namespace

int main() {
  criterion(1, "layer-count goldens", [] {
    struct Row { const char* name; std::size_t xz, xy, yz; };
    std::ostringstream d;
    bool ok = true;
    for (auto r : {Row{"rep3", 3, 0, 2}, Row{"c422", 4, 1, 1}, Row{"shor", 9, 2, 6}, Row{"steane", 7, 3, 3}}) {
      const auto lc = layer::build_layer_code(css::builtin(r.name), 2);
      const auto& l = lc.layout;
      const bool row = l.qubit_layers.size() == r.xz && l.xcheck_layers.size() == r.xy &&
                       l.zcheck_layers.size() == r.yz && lc.layer_count() == r.xz + r.xy + r.yz;
      ok &= row;
      d << r.name << '=' << l.qubit_layers.size() << '+' << l.xcheck_layers.size() << '+'
        << l.zcheck_layers.size() << ' ';
    }
    return Outcome{ok, d.str()};
  });

  criterion(2, "structural invariants", [] {
    std::size_t bad = 0, n = 0, max_w = 0;
    long max_extent = 0;
    for (const auto& code : corpus()) {
      ++n;
      const auto s = layer::check_structure(layer::build_layer_code(code, 2));
      if (!s.commutes || s.max_weight > 6 || s.max_extent > 5) ++bad;
      max_w = std::max(max_w, s.max_weight);
      max_extent = std::max(max_extent, s.max_extent);
    }
    return Outcome{bad == 0, std::to_string(n) + " codes, max weight " + std::to_string(max_w) +
                                 ", max extent " + std::to_string(max_extent) + " <= 5, " +
                                 std::to_string(bad) + " failing"};
  });

  criterion(3, "k-preservation", [] {
    std::size_t bad = 0, n = 0;
    std::ostringstream named;
    for (const auto& code : corpus()) {
      ++n;
      const auto k_in = css::logical_qubit_count(code);
      const auto k_out = css::logical_qubit_count(layer::build_layer_code(code, 2).as_css());
      if (k_in != k_out) ++bad;
      if (code.name.rfind("random", 0) != 0) named << code.name << "->" << k_out << ' ';
    }
    return Outcome{bad == 0, named.str() + "(" + std::to_string(n) + " codes, " + std::to_string(bad) + " mismatched)"};
  });

  criterion(4, "logical round trip", [] {
    std::size_t total = 0, ok = 0, pairing_ok = 0;
    for (const auto& name : fixtures::paper_builtins()) {
      const auto lc = layer::build_layer_code(css::builtin(name), 2);
      const auto basis = css::logical_basis(lc.input);
      std::vector<BitVector> xs, zs;
      for (auto t : {PauliType::X, PauliType::Z})
        for (const auto& v : t == PauliType::X ? basis.x : basis.z) {
          ++total;
          const auto op = logical::quasiconcatenated_logical(lc, v, t);
          (t == PauliType::X ? xs : zs).push_back(op.support);
          const auto back = logical::map_layer_logical_to_input(lc, op);
          if (gf2::in_row_space(lc.input.stabilizers(t), back ^ v)) ++ok;
        }
      if (css::pairing_matrix(xs, zs) == basis.pairing) ++pairing_ok;
    }
    return Outcome{ok == total && pairing_ok == 4, std::to_string(ok) + "/" + std::to_string(total) +
                                                       " logicals recovered, pairing equal on " +
                                                       std::to_string(pairing_ok) + "/4 codes"};
  });

  criterion(5, "distance at desk scale", [] {
    analysis::DistanceOptions o;
    o.cutoff = 16;
    const auto rep2 = analysis::layer_distance_bounds(layer::build_layer_code(css::builtin("rep2"), 2), o);
    const bool certified = rep2.x.status == analysis::LowerStatus::found &&
                           rep2.z.status == analysis::LowerStatus::found &&
                           rep2.x.lower == rep2.x.upper && rep2.z.lower == rep2.z.upper;
    std::ostringstream d;
    d << "rep2 d_X=" << rep2.x.lower << "=" << rep2.x.upper << " d_Z=" << rep2.z.lower << "=" << rep2.z.upper
      << "; d_X upper over rep2..5:";
    bool increasing = true;
    std::size_t prev = 0;
    for (int m = 2; m <= 5; ++m) {
      const auto b = analysis::layer_distance_bounds(layer::build_layer_code(css::builtin("rep" + std::to_string(m)), 2));
      d << ' ' << b.x.upper;
      increasing &= b.x.upper > prev;
      prev = b.x.upper;
    }
    return Outcome{certified && increasing, d.str()};
  });

  criterion(6, "energy barrier", [] {
    const auto rep3 = css::builtin("rep3");
    const auto ex = analysis::energy_barrier_exact(rep3, PauliType::X);
    const auto ez = analysis::energy_barrier_exact(rep3, PauliType::Z);
    const auto ox = oracle_barrier(rep3, PauliType::X), oz = oracle_barrier(rep3, PauliType::Z);
    const auto lc = layer::build_layer_code(rep3, 2);
    const auto sw = analysis::energy_barrier_sweep(lc, BitVector::from_string("111"), PauliType::X);
    const bool replay = analysis::replay_barrier(lc.hz, lc.n(), sw.witness) == sw.value;
    const bool ok = ex.value == 1 && ez.value == 0 && ox == 1 && oz == 0 && sw.value <= ex.value + 1 && replay;
    return Outcome{ok, "exact X=" + std::to_string(ex.value) + " Z=" + std::to_string(ez.value) + " (oracle " +
                           std::to_string(ox) + "," + std::to_string(oz) + "), layer sweep " +
                           std::to_string(sw.value) + " <= " + std::to_string(ex.value + 1)};
  });

  criterion(7, "correctability", [] {
    auto lc = layer::build_layer_code(css::builtin("steane"), 2);
    const auto rep = analysis::point_defect_correctability(lc, lc.c);
    std::size_t pass = 0;
    for (const auto& b : rep.balls) pass += b.pass;
    const auto& site = lc.defects.points.front().site;
    for (std::size_t r = 0; r < lc.z_checks.size(); ++r)
      if (layer::chebyshev(lc.z_checks[r].pos, site) <= 1) {
        lc.z_checks.erase(lc.z_checks.begin() + long(r));
        break;
      }
    lc.reindex();
    const auto mutated = analysis::point_defect_correctability(lc, lc.c);
    std::size_t broken = 0;
    for (const auto& b : mutated.balls) broken += !b.pass;
    return Outcome{pass == rep.balls.size() && broken > 0,
                   std::to_string(pass) + "/" + std::to_string(rep.balls.size()) + " balls pass at radius " +
                       std::to_string(rep.radius) + "; deletion mutation fails " + std::to_string(broken)};
  });

  criterion(8, "relation inheritance", [] {
    const auto code = css::CssCode::make("rep3+", 3, {}, {{0, 1}, {1, 2}, {0, 2}});
    const auto lc = layer::build_layer_code(code, 2);
    const auto cert = analysis::relation_inheritance(code, {0, 1, 2}, PauliType::Z, lc);
    BitVector sum(lc.n());
    for (auto r : cert.combination.support()) sum ^= lc.hz.row(r);
    const bool ok = sum == cert.product && gf2::in_row_space(lc.hz, cert.product);
    return Outcome{ok, "product weight " + std::to_string(cert.product.weight()) + " = sum of " +
                           std::to_string(cert.combination.weight()) + " layer checks"};
  });

  criterion(9, "determinism", [] {
    bool same = true;
    std::size_t bytes = 0;
    for (const auto& name : fixtures::paper_builtins()) {
      const auto a = pipeline(name, 7), b = pipeline(name, 7);
      same &= a == b;
      bytes += a.size();
    }
    return Outcome{same, std::to_string(bytes) + " bytes compared across two runs"};
  });

  return failures == 0 ? 0 : 1;
}
