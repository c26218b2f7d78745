#include <algorithm>
#include <limits>
#include <queue>
#include <tuple>

#include "layercode/analysis.hpp"

namespace lc::analysis {

const char* to_string(Bound b) { return b == Bound::exact ? "exact" : "upper-bound"; }

namespace {

// Checks touching each qubit.
std::vector<std::vector<std::size_t>> columns(const BitMatrix& h, std::size_t n) {
  std::vector<std::vector<std::size_t>> cols(n);
  for (std::size_t r = 0; r < h.rows(); ++r)
    for (auto q : h.row(r).support()) cols[q].push_back(r);
  return cols;
}

// Syndrome bits with a running weight.
struct Syndrome {
  std::vector<uint8_t> bits;
  std::size_t weight = 0;
  explicit Syndrome(std::size_t m) : bits(m, 0) {}
  void flip(const std::vector<std::size_t>& checks) {
    for (auto c : checks) {
      bits[c] ^= 1;
      weight += bits[c] ? 1 : std::size_t(-1);
    }
  }
};

}  // namespace

std::size_t replay_barrier(const BitMatrix& detectors, std::size_t n,
                           const std::vector<std::size_t>& flips) {
  const auto cols = columns(detectors, n);
  Syndrome s(detectors.rows());
  std::size_t peak = 0;
  for (auto q : flips) {
    if (q >= n) throw InputError("flip index out of range");
    s.flip(cols[q]);
    peak = std::max(peak, s.weight);
  }
  return peak;
}

BarrierResult energy_barrier_exact(const css::CssCode& code, PauliType t, std::size_t max_qubits) {
  const std::size_t n = code.n;
  if (n > max_qubits || n > 24)
    throw BudgetExceeded("exact barrier needs n <= " + std::to_string(max_qubits) + " (n = " +
                         std::to_string(n) + "); use the sweep bound");
  const BitMatrix& det = code.detectors(t);
  gf2::RowBasis stab(code.stabilizers(t).rows() ? code.stabilizers(t) : BitMatrix(0, n));
  // Syndrome of each basis vector, packed in words.
  const std::size_t words = (det.rows() + 63) / 64;
  std::vector<uint64_t> col(n * std::max<std::size_t>(words, 1), 0);
  for (std::size_t r = 0; r < det.rows(); ++r)
    for (auto q : det.row(r).support()) col[q * words + r / 64] ^= uint64_t{1} << (r % 64);

  const uint64_t states = uint64_t{1} << n;
  std::vector<uint32_t> syn_weight(states, 0);
  {
    std::vector<uint64_t> syn(words, 0);
    // Gray-code walk fills in every syndrome weight.
    uint64_t g = 0;
    for (uint64_t i = 1; i < states; ++i) {
      const unsigned q = __builtin_ctzll(i);
      g ^= uint64_t{1} << q;
      uint32_t w = 0;
      for (std::size_t k = 0; k < words; ++k) {
        syn[k] ^= col[q * words + k];
        w += __builtin_popcountll(syn[k]);
      }
      syn_weight[g] = w;
    }
  }
  auto nontrivial = [&](uint64_t v) {
    if (v == 0 || syn_weight[v] != 0) return false;
    gf2::BitVector b(n);
    for (std::size_t q = 0; q < n; ++q)
      if ((v >> q) & 1u) b.set(q);
    return !stab.contains(b);
  };

  constexpr uint32_t kUnseen = std::numeric_limits<uint32_t>::max();
  std::vector<uint32_t> best(states, kUnseen);
  std::vector<int8_t> via(states, -1);
  using Item = std::tuple<uint32_t, uint32_t, uint64_t>;  // (peak, current weight, state)
  std::priority_queue<Item, std::vector<Item>, std::greater<>> pq;
  best[0] = 0;
  pq.push({0, 0, 0});
  while (!pq.empty()) {
    auto [peak, w, v] = pq.top();
    pq.pop();
    if (peak != best[v]) continue;
    if (nontrivial(v)) {
      BarrierResult out{peak, Bound::exact, {}};
      for (uint64_t u = v; u != 0; u ^= uint64_t{1} << via[u]) out.witness.push_back(via[u]);
      std::reverse(out.witness.begin(), out.witness.end());
      return out;
    }
    for (std::size_t q = 0; q < n; ++q) {
      const uint64_t u = v ^ (uint64_t{1} << q);
      const uint32_t p = std::max(peak, syn_weight[u]);
      if (p < best[u]) {
        best[u] = p;
        via[u] = static_cast<int8_t>(q);
        pq.push({p, syn_weight[u], u});
      }
    }
  }
  throw InputError("code has no nontrivial " + std::string(css::to_string(t)) + " logical");
}

BarrierResult energy_barrier_sweep(const layer::LayerCode& lc, const BitVector& input,
                                   PauliType t) {
  const auto pieces = logical::quasiconcatenated_pieces(lc, input, t);
  const BitMatrix& det = t == PauliType::X ? lc.hz : lc.hx;
  const auto cols = columns(det, lc.n());
  const std::size_t P = pieces.size();
  BarrierResult out{0, Bound::upper, {}};
  if (P == 0) return out;

  // Peak while laying piece p in direction d on top of syndrome s.
  auto lay = [&](Syndrome s, std::size_t p, bool reverse, std::size_t* end_weight) {
    std::size_t peak = s.weight;
    const auto& qs = pieces[p];
    for (std::size_t i = 0; i < qs.size(); ++i) {
      s.flip(cols[qs[reverse ? qs.size() - 1 - i : i]]);
      peak = std::max(peak, s.weight);
    }
    if (end_weight) *end_weight = s.weight;
    return peak;
  };
  auto apply = [&](Syndrome& s, std::size_t p) {
    for (auto q : pieces[p]) s.flip(cols[q]);
  };

  std::vector<std::pair<std::size_t, bool>> order;
  constexpr std::size_t kMaxPieces = 14;
  if (P <= kMaxPieces) {
    // Bottleneck path over subsets of finished pieces.
    const std::size_t S = std::size_t{1} << P;
    constexpr std::size_t kInf = std::numeric_limits<std::size_t>::max();
    std::vector<std::size_t> best(S, kInf);
    std::vector<std::pair<int8_t, bool>> step(S, {-1, false});
    best[0] = 0;
    for (std::size_t mask = 0; mask < S; ++mask) {
      if (best[mask] == kInf) continue;
      Syndrome s(det.rows());
      for (std::size_t p = 0; p < P; ++p)
        if ((mask >> p) & 1u) apply(s, p);
      for (std::size_t p = 0; p < P; ++p) {
        if ((mask >> p) & 1u) continue;
        for (bool rev : {false, true}) {
          const std::size_t v = std::max(best[mask], lay(s, p, rev, nullptr));
          const std::size_t next = mask | (std::size_t{1} << p);
          if (v < best[next]) {
            best[next] = v;
            step[next] = {static_cast<int8_t>(p), rev};
          }
        }
      }
    }
    for (std::size_t mask = S - 1; mask; mask ^= std::size_t{1} << step[mask].first)
      order.emplace_back(step[mask].first, step[mask].second);
    std::reverse(order.begin(), order.end());
  } else {
    // Greedy: always lay the piece that keeps the peak lowest.
    Syndrome s(det.rows());
    std::vector<bool> done(P, false);
    for (std::size_t round = 0; round < P; ++round) {
      std::tuple<std::size_t, std::size_t, std::size_t, bool> pick{
          std::numeric_limits<std::size_t>::max(), 0, 0, false};
      for (std::size_t p = 0; p < P; ++p) {
        if (done[p]) continue;
        for (bool rev : {false, true}) {
          std::size_t end = 0;
          const std::size_t peak = lay(s, p, rev, &end);
          pick = std::min(pick, std::tuple{peak, end, p, rev});
        }
      }
      const auto p = std::get<2>(pick);
      done[p] = true;
      apply(s, p);
      order.emplace_back(p, std::get<3>(pick));
    }
  }
  for (auto [p, rev] : order) {
    const auto& qs = pieces[p];
    if (rev) out.witness.insert(out.witness.end(), qs.rbegin(), qs.rend());
    else out.witness.insert(out.witness.end(), qs.begin(), qs.end());
  }
  out.value = replay_barrier(det, lc.n(), out.witness);
  return out;
}

}  // namespace lc::analysis
