#include "layercode/css.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>

namespace lc::css {

using gf2::BitMatrix;
using gf2::BitVector;

const char* to_string(PauliType t) { return t == PauliType::X ? "X" : "Z"; }

std::size_t CssCode::max_weight() const {
  return std::max(hx.max_row_weight(), hz.max_row_weight());
}

CssCode CssCode::make(std::string name, std::size_t n,
                      const std::vector<std::vector<std::size_t>>& hx,
                      const std::vector<std::vector<std::size_t>>& hz) {
  CssCode c;
  c.name = std::move(name);
  c.n = n;
  c.hx = BitMatrix::from_supports(n, hx);
  c.hz = BitMatrix::from_supports(n, hz);
  c.qubit_order.resize(n);
  std::iota(c.qubit_order.begin(), c.qubit_order.end(), std::size_t{0});
  return c;
}

std::string ValidationReport::describe() const {
  if (ok) return "ok";
  std::ostringstream os;
  os << violations.size() << " anticommuting check pair(s):";
  for (const auto& v : violations)
    os << " (X" << v.x_row << ", Z" << v.z_row << ", overlap " << v.overlap << ")";
  return os.str();
}

ValidationReport validate(const CssCode& code) {
  if (code.hx.cols() != code.n || code.hz.cols() != code.n)
    throw InputError("check matrices must have n = " + std::to_string(code.n) + " columns");
  ValidationReport rep;
  for (std::size_t i = 0; i < code.n_x(); ++i)
    for (std::size_t j = 0; j < code.n_z(); ++j) {
      const auto ov = code.hx.row(i).overlap(code.hz.row(j));
      if (ov % 2) rep.violations.push_back({i, j, ov});
    }
  rep.ok = rep.violations.empty();
  return rep;
}

std::size_t logical_qubit_count(const CssCode& code) {
  const auto rx = gf2::rank(code.hx), rz = gf2::rank(code.hz);
  if (rx + rz > code.n)
    throw IntegrityError("rank(hx) + rank(hz) exceeds n; checks do not commute");
  return code.n - rx - rz;
}

BitMatrix pairing_matrix(const std::vector<BitVector>& x, const std::vector<BitVector>& z) {
  BitMatrix p(x.size(), z.size());
  for (std::size_t i = 0; i < x.size(); ++i)
    for (std::size_t j = 0; j < z.size(); ++j)
      if (x[i].dot(z[j])) p.set(i, j);
  return p;
}

bool is_nontrivial_logical(const CssCode& code, const BitVector& v, PauliType t) {
  if (code.detectors(t).apply(v).any()) return false;
  return !gf2::in_row_space(code.stabilizers(t), v);
}

namespace {

// Lightest-first greedy choice of k logical classes of type t. Small codes
// enumerate candidates by (weight, support); larger ones reduce a kernel basis.
std::vector<BitVector> canonical_logicals(const CssCode& code, PauliType t, std::size_t k) {
  const BitMatrix& det = code.detectors(t);
  gf2::RowBasis span(code.stabilizers(t));
  std::vector<BitVector> out;
  const std::size_t n = code.n;
  if (k == 0) return out;

  if (n <= 24) {
    std::vector<std::size_t> idx;
    for (std::size_t w = 1; w <= n && out.size() < k; ++w) {
      idx.resize(w);
      std::iota(idx.begin(), idx.end(), std::size_t{0});
      while (true) {
        BitVector v = BitVector::from_support(n, idx);
        if (det.apply(v).none() && span.insert(v)) {
          out.push_back(v);
          if (out.size() == k) break;
        }
        // Next combination in lexicographic order.
        std::size_t i = w;
        while (i > 0 && idx[i - 1] == n - w + i - 1) --i;
        if (i == 0) break;
        ++idx[i - 1];
        for (std::size_t j = i; j < w; ++j) idx[j] = idx[j - 1] + 1;
      }
    }
    return out;
  }

  BitMatrix ker = gf2::nullspace_basis(det);
  for (const auto& v : ker.row_vectors()) {
    if (span.insert(v)) out.push_back(v);
    if (out.size() == k) break;
  }
  return out;
}

std::optional<BitMatrix> invert(const BitMatrix& p) {
  const std::size_t k = p.rows();
  std::vector<BitVector> a = p.row_vectors();
  std::vector<BitVector> inv = BitMatrix::identity(k).row_vectors();
  for (std::size_t col = 0; col < k; ++col) {
    std::size_t piv = col;
    while (piv < k && !a[piv].get(col)) ++piv;
    if (piv == k) return std::nullopt;
    std::swap(a[col], a[piv]);
    std::swap(inv[col], inv[piv]);
    for (std::size_t r = 0; r < k; ++r)
      if (r != col && a[r].get(col)) {
        a[r] ^= a[col];
        inv[r] ^= inv[col];
      }
  }
  BitMatrix out(0, k);
  for (auto& r : inv) out.append_row(std::move(r));
  return out;
}

BitVector lightest_in_coset(const BitVector& v, const BitMatrix& stab) {
  gf2::SearchBudget b;
  b.exhaustion_limit = uint64_t{1} << 20;
  try {
    return gf2::min_weight_in_coset(v, stab, gf2::SearchMode::exact, b).witness;
  } catch (const BudgetExceeded&) {
    return gf2::min_weight_in_coset(v, stab, gf2::SearchMode::randomized, b).witness;
  }
}

}  // namespace

LogicalBasis logical_basis(const CssCode& code) {
  const std::size_t k = logical_qubit_count(code);
  LogicalBasis out;
  out.pairing = BitMatrix(0, 0);
  if (k == 0) return out;
  out.x = canonical_logicals(code, PauliType::X, k);
  auto z = canonical_logicals(code, PauliType::Z, k);
  if (out.x.size() != k || z.size() != k) throw IntegrityError("logical basis is incomplete");

  // Rotate the Z side so that x_i . z_j = delta_ij, then re-lighten each
  // z_j inside its stabilizer coset (which keeps the pairing).
  auto inv = invert(pairing_matrix(out.x, z));
  if (!inv) throw IntegrityError("logical pairing matrix is singular");
  for (std::size_t i = 0; i < k; ++i) {
    BitVector zi(code.n);
    for (std::size_t j = 0; j < k; ++j)
      if (inv->get(j, i)) zi ^= z[j];
    out.z.push_back(lightest_in_coset(zi, code.hz));
  }
  for (auto& xi : out.x) xi = lightest_in_coset(xi, code.hx);
  out.pairing = pairing_matrix(out.x, out.z);
  if (!(out.pairing == BitMatrix::identity(k)))
    throw IntegrityError("logical pairing is not the identity after canonicalization");
  return out;
}

LogicalSearch find_light_logical(const BitMatrix& detectors, const BitMatrix& stabilizers,
                                 std::size_t cutoff, uint64_t node_budget) {
  const std::size_t n = detectors.cols();
  std::vector<std::vector<std::size_t>> check_qubits = detectors.supports();
  std::vector<std::vector<std::size_t>> qubit_checks(n);
  std::size_t max_col = 1;
  for (std::size_t c = 0; c < check_qubits.size(); ++c)
    for (auto q : check_qubits[c]) qubit_checks[q].push_back(c);
  for (const auto& qc : qubit_checks) max_col = std::max(max_col, qc.size());
  gf2::RowBasis stab(stabilizers.rows() ? stabilizers : BitMatrix(0, n));

  LogicalSearch res;
  res.cutoff = cutoff;
  std::vector<uint8_t> parity(check_qubits.size(), 0);
  std::vector<std::size_t> violated;
  std::vector<uint8_t> in_set(n, 0);
  std::vector<std::size_t> chosen;

  auto toggle = [&](std::size_t q) {
    in_set[q] ^= 1;
    for (auto c : qubit_checks[q]) {
      parity[c] ^= 1;
      if (parity[c]) {
        violated.push_back(c);
      } else {
        violated.erase(std::find(violated.begin(), violated.end(), c));
      }
    }
  };

  std::size_t limit = 0, seed = 0;
  auto dfs = [&](auto&& self) -> bool {
    if (++res.nodes > node_budget)
      throw BudgetExceeded("logical search exceeded its node budget");
    if (violated.empty()) {
      BitVector v = BitVector::from_support(n, chosen);
      if (stab.contains(v)) return false;
      res.weight = chosen.size();
      res.witness = std::move(v);
      return true;
    }
    const std::size_t need = (violated.size() + max_col - 1) / max_col;
    if (chosen.size() + need > limit) return false;
    const std::size_t c = *std::min_element(violated.begin(), violated.end());
    for (auto u : check_qubits[c]) {
      if (u <= seed || in_set[u]) continue;
      toggle(u);
      chosen.push_back(u);
      const bool hit = self(self);
      chosen.pop_back();
      toggle(u);
      if (hit) return true;
    }
    return false;
  };

  for (limit = 1; limit <= cutoff && limit <= n; ++limit) {
    for (seed = 0; seed < n; ++seed) {
      toggle(seed);
      chosen.assign(1, seed);
      const bool hit = dfs(dfs);
      toggle(seed);
      if (hit) return res;
    }
  }
  return res;
}

DistanceResult distance(const CssCode& code, gf2::SearchMode mode,
                        const gf2::SearchBudget& budget) {
  const auto rep = validate(code);
  if (!rep.ok) throw InputError("code does not validate: " + rep.describe());
  if (logical_qubit_count(code) == 0) throw InputError("code encodes no logical qubits");
  DistanceResult out;
  out.mode = mode;
  if (mode == gf2::SearchMode::exact) {
    auto sx = find_light_logical(code.hz, code.hx, code.n, budget.exhaustion_limit);
    auto sz = find_light_logical(code.hx, code.hz, code.n, budget.exhaustion_limit);
    if (!sx.weight || !sz.weight) throw IntegrityError("k > 0 but no logical operator found");
    out.d_x = *sx.weight;
    out.d_z = *sz.weight;
    out.x_witness = sx.witness;
    out.z_witness = sz.witness;
  } else {
    const auto basis = logical_basis(code);
    auto best_over = [&](const std::vector<BitVector>& reps, const BitMatrix& stab,
                         BitVector& witness) {
      std::size_t best = code.n + 1;
      const std::size_t k = reps.size();
      const uint64_t combos = k <= 8 ? (uint64_t{1} << k) : 0;
      std::vector<BitVector> cands;
      if (combos) {
        for (uint64_t m = 1; m < combos; ++m) {
          BitVector v(code.n);
          for (std::size_t i = 0; i < k; ++i)
            if ((m >> i) & 1u) v ^= reps[i];
          cands.push_back(std::move(v));
        }
      } else {
        cands = reps;
      }
      for (const auto& v : cands) {
        auto r = gf2::min_weight_in_coset(v, stab, gf2::SearchMode::randomized, budget);
        if (r.weight < best || (r.weight == best && gf2::support_less(r.witness, witness))) {
          best = r.weight;
          witness = r.witness;
        }
      }
      return best;
    };
    out.d_x = best_over(basis.x, code.hx, out.x_witness);
    out.d_z = best_over(basis.z, code.hz, out.z_witness);
  }
  out.d = std::min(out.d_x, out.d_z);
  return out;
}

}  // namespace lc::css
