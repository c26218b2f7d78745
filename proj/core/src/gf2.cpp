#include "layercode/gf2.hpp"

#include <algorithm>
#include <bit>
#include <mutex>
#include <numeric>
#include <random>
#include <thread>

namespace lc::gf2 {

BitVector BitVector::from_support(std::size_t n, std::span<const std::size_t> idx) {
  BitVector v(n);
  for (auto i : idx) {
    if (i >= n) throw InputError("support index " + std::to_string(i) + " out of range");
    v.flip(i);
  }
  return v;
}

BitVector BitVector::from_string(std::string_view bits) {
  BitVector v(bits.size());
  for (std::size_t i = 0; i < bits.size(); ++i) {
    if (bits[i] == '1') v.set(i);
    else if (bits[i] != '0') throw InputError("bit string may only hold 0 and 1");
  }
  return v;
}

std::size_t BitVector::weight() const {
  std::size_t w = 0;
  for (auto x : w_) w += std::popcount(x);
  return w;
}

bool BitVector::any() const {
  return std::any_of(w_.begin(), w_.end(), [](uint64_t x) { return x != 0; });
}

bool BitVector::dot(const BitVector& o) const { return overlap(o) & 1u; }

std::size_t BitVector::overlap(const BitVector& o) const {
  std::size_t s = 0;
  for (std::size_t i = 0; i < w_.size(); ++i) s += std::popcount(w_[i] & o.w_[i]);
  return s;
}

std::vector<std::size_t> BitVector::support() const {
  std::vector<std::size_t> out;
  for (std::size_t k = 0; k < w_.size(); ++k) {
    uint64_t x = w_[k];
    while (x) {
      out.push_back(k * 64 + std::countr_zero(x));
      x &= x - 1;
    }
  }
  return out;
}

std::optional<std::size_t> BitVector::first() const {
  for (std::size_t k = 0; k < w_.size(); ++k)
    if (w_[k]) return k * 64 + std::countr_zero(w_[k]);
  return std::nullopt;
}

std::string BitVector::to_string() const {
  std::string s(n_, '0');
  for (auto i : support()) s[i] = '1';
  return s;
}

BitVector& BitVector::operator^=(const BitVector& o) {
  if (o.n_ != n_) throw InputError("bit vector length mismatch");
  for (std::size_t i = 0; i < w_.size(); ++i) w_[i] ^= o.w_[i];
  return *this;
}

BitVector& BitVector::operator&=(const BitVector& o) {
  if (o.n_ != n_) throw InputError("bit vector length mismatch");
  for (std::size_t i = 0; i < w_.size(); ++i) w_[i] &= o.w_[i];
  return *this;
}

BitVector& BitVector::operator|=(const BitVector& o) {
  if (o.n_ != n_) throw InputError("bit vector length mismatch");
  for (std::size_t i = 0; i < w_.size(); ++i) w_[i] |= o.w_[i];
  return *this;
}

bool support_less(const BitVector& a, const BitVector& b) {
  // The first differing position decides: whoever holds it has the smaller
  // support at that point, unless the other ran out earlier.
  auto sa = a.support(), sb = b.support();
  return std::lexicographical_compare(sa.begin(), sa.end(), sb.begin(), sb.end());
}

BitMatrix::BitMatrix(std::size_t rows, std::size_t cols)
    : cols_(cols), rows_(rows, BitVector(cols)) {}

BitMatrix BitMatrix::from_supports(std::size_t cols,
                                   const std::vector<std::vector<std::size_t>>& rows) {
  BitMatrix m(0, cols);
  for (const auto& r : rows) m.append_row(BitVector::from_support(cols, r));
  return m;
}

BitMatrix BitMatrix::from_strings(const std::vector<std::string>& rows) {
  if (rows.empty()) return {};
  BitMatrix m(0, rows.front().size());
  for (const auto& r : rows) m.append_row(BitVector::from_string(r));
  return m;
}

BitMatrix BitMatrix::identity(std::size_t n) {
  BitMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m.set(i, i);
  return m;
}

void BitMatrix::append_row(BitVector v) {
  if (v.size() != cols_) throw InputError("row length does not match column count");
  rows_.push_back(std::move(v));
}

void BitMatrix::erase_row(std::size_t r) { rows_.erase(rows_.begin() + static_cast<long>(r)); }

BitVector BitMatrix::apply(const BitVector& v) const {
  if (v.size() != cols_) throw InputError("vector length does not match column count");
  BitVector out(rows_.size());
  for (std::size_t r = 0; r < rows_.size(); ++r)
    if (rows_[r].dot(v)) out.set(r);
  return out;
}

BitMatrix BitMatrix::transpose() const {
  BitMatrix t(cols_, rows_.size());
  for (std::size_t r = 0; r < rows_.size(); ++r)
    for (auto c : rows_[r].support()) t.set(c, r);
  return t;
}

BitMatrix BitMatrix::mul_transpose(const BitMatrix& n) const {
  if (n.cols_ != cols_) throw InputError("column count mismatch");
  BitMatrix out(rows_.size(), n.rows());
  for (std::size_t i = 0; i < rows_.size(); ++i)
    for (std::size_t j = 0; j < n.rows(); ++j)
      if (rows_[i].dot(n.row(j))) out.set(i, j);
  return out;
}

BitMatrix BitMatrix::select_columns(std::span<const std::size_t> cols) const {
  BitMatrix out(rows_.size(), cols.size());
  for (std::size_t r = 0; r < rows_.size(); ++r)
    for (std::size_t k = 0; k < cols.size(); ++k)
      if (rows_[r].get(cols[k])) out.set(r, k);
  return out;
}

std::size_t BitMatrix::max_row_weight() const {
  std::size_t w = 0;
  for (const auto& r : rows_) w = std::max(w, r.weight());
  return w;
}

std::vector<std::vector<std::size_t>> BitMatrix::supports() const {
  std::vector<std::vector<std::size_t>> out;
  out.reserve(rows_.size());
  for (const auto& r : rows_) out.push_back(r.support());
  return out;
}

RowBasis::RowBasis(const BitMatrix& m) : cols_(m.cols()) {
  for (const auto& r : m.row_vectors()) insert(r);
}

BitVector RowBasis::reduce(BitVector v) const {
  for (std::size_t i = 0; i < rows_.size(); ++i)
    if (v.get(pivots_[i])) v ^= rows_[i];
  return v;
}

bool RowBasis::insert(BitVector v) {
  v = reduce(std::move(v));
  auto p = v.first();
  if (!p) return false;
  // Keep the basis fully reduced so reduce() needs one pass.
  for (auto& r : rows_)
    if (r.get(*p)) r ^= v;
  rows_.push_back(std::move(v));
  pivots_.push_back(*p);
  return true;
}

std::size_t rank(const BitMatrix& m) {
  // Plain in-place elimination; cheaper than RowBasis for one-shot ranks.
  std::vector<BitVector> rows = m.row_vectors();
  std::size_t r = 0;
  const std::size_t nwords = (m.cols() + 63) / 64;
  for (std::size_t w = 0; w < nwords && r < rows.size(); ++w) {
    for (int b = 0; b < 64 && r < rows.size(); ++b) {
      const uint64_t mask = uint64_t{1} << b;
      std::size_t piv = r;
      while (piv < rows.size() && !(rows[piv].words()[w] & mask)) ++piv;
      if (piv == rows.size()) continue;
      std::swap(rows[r], rows[piv]);
      for (std::size_t i = r + 1; i < rows.size(); ++i)
        if (rows[i].words()[w] & mask) {
          auto dst = rows[i].words();
          auto src = rows[r].words();
          for (std::size_t k = w; k < nwords; ++k) dst[k] ^= src[k];
        }
      ++r;
    }
  }
  return r;
}

bool in_row_space(const BitMatrix& m, const BitVector& v) {
  if (v.size() != m.cols()) throw InputError("in_row_space: length mismatch");
  return RowBasis(m).contains(v);
}

BitMatrix nullspace_basis(const BitMatrix& m) {
  RowBasis b(m);
  std::vector<bool> is_pivot(m.cols(), false);
  for (auto p : b.pivots()) is_pivot[p] = true;
  BitMatrix out(0, m.cols());
  for (std::size_t f = 0; f < m.cols(); ++f) {
    if (is_pivot[f]) continue;
    BitVector v(m.cols());
    v.set(f);
    for (std::size_t i = 0; i < b.rank(); ++i)
      if (b.rows()[i].get(f)) v.set(b.pivots()[i]);
    out.append_row(std::move(v));
  }
  return out;
}

std::optional<BitVector> solve_rows(const BitMatrix& m, const BitVector& v) {
  if (v.size() != m.cols()) throw InputError("solve_rows: length mismatch");
  // Eliminate on [M | I] and carry the identity part as the combination.
  const std::size_t r = m.rows();
  std::vector<BitVector> rows;
  std::vector<BitVector> combo;
  std::vector<std::size_t> piv;
  for (std::size_t i = 0; i < r; ++i) {
    BitVector x = m.row(i);
    BitVector c(r);
    c.set(i);
    for (std::size_t k = 0; k < rows.size(); ++k)
      if (x.get(piv[k])) {
        x ^= rows[k];
        c ^= combo[k];
      }
    auto p = x.first();
    if (!p) continue;
    for (std::size_t k = 0; k < rows.size(); ++k)
      if (rows[k].get(*p)) {
        rows[k] ^= x;
        combo[k] ^= c;
      }
    rows.push_back(std::move(x));
    combo.push_back(std::move(c));
    piv.push_back(*p);
  }
  BitVector rest = v;
  BitVector coeff(r);
  for (std::size_t k = 0; k < rows.size(); ++k)
    if (rest.get(piv[k])) {
      rest ^= rows[k];
      coeff ^= combo[k];
    }
  if (rest.any()) return std::nullopt;
  return coeff;
}

const char* to_string(SearchMode m) { return m == SearchMode::exact ? "exact" : "randomized"; }

namespace {

bool better(const BitVector& cand, std::size_t cw, const BitVector& best, std::size_t bw) {
  if (cw != bw) return cw < bw;
  return support_less(cand, best);
}

CosetResult exact_coset(const BitVector& v, const BitMatrix& m, const SearchBudget& budget) {
  RowBasis basis(m);
  const std::size_t r = basis.rank();
  if (r >= 63 || (uint64_t{1} << r) > budget.exhaustion_limit)
    throw BudgetExceeded("exact coset search needs 2^" + std::to_string(r) +
                         " members, over the exhaustion limit");
  BitVector cur = v;
  BitVector best = v;
  std::size_t bw = v.weight();
  const uint64_t total = uint64_t{1} << r;
  for (uint64_t g = 1; g < total; ++g) {
    cur ^= basis.rows()[std::countr_zero(g)];
    const std::size_t w = cur.weight();
    if (w < bw || (w == bw && support_less(cur, best))) {
      best = cur;
      bw = w;
    }
  }
  return {bw, best, SearchMode::exact};
}

// One information-set pass: pick pivots in a random column order, clear them
// from v, then also try every single basis row on top (Lee-Brickell, p = 1).
void isd_pass(const BitVector& v, const BitMatrix& m, std::mt19937_64& rng, BitVector& best,
              std::size_t& bw) {
  std::vector<std::size_t> order(m.cols());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::shuffle(order.begin(), order.end(), rng);
  std::vector<BitVector> rows = m.row_vectors();
  std::vector<std::size_t> piv;
  std::size_t used = 0;
  for (auto col : order) {
    if (used == rows.size()) break;
    std::size_t p = used;
    while (p < rows.size() && !rows[p].get(col)) ++p;
    if (p == rows.size()) continue;
    std::swap(rows[used], rows[p]);
    for (std::size_t i = 0; i < rows.size(); ++i)
      if (i != used && rows[i].get(col)) rows[i] ^= rows[used];
    piv.push_back(col);
    ++used;
  }
  BitVector cand = v;
  for (std::size_t i = 0; i < used; ++i)
    if (cand.get(piv[i])) cand ^= rows[i];
  std::size_t cw = cand.weight();
  if (better(cand, cw, best, bw)) {
    best = cand;
    bw = cw;
  }
  for (std::size_t i = 0; i < used; ++i) {
    BitVector alt = cand ^ rows[i];
    const std::size_t aw = alt.weight();
    if (better(alt, aw, best, bw)) {
      best = std::move(alt);
      bw = aw;
    }
  }
}

CosetResult randomized_coset(const BitVector& v, const BitMatrix& m, const SearchBudget& budget) {
  const unsigned workers = std::max(1u, budget.workers);
  std::vector<BitVector> best(workers, v);
  std::vector<std::size_t> bw(workers, v.weight());
  auto run = [&](unsigned w) {
    std::seed_seq seq{budget.seed, static_cast<uint64_t>(w)};
    std::mt19937_64 rng(seq);
    for (uint64_t t = w; t < budget.restarts; t += workers) isd_pass(v, m, rng, best[w], bw[w]);
  };
  if (workers == 1) {
    run(0);
  } else {
    std::vector<std::jthread> pool;
    for (unsigned w = 0; w < workers; ++w) pool.emplace_back(run, w);
  }
  std::size_t pick = 0;
  for (unsigned w = 1; w < workers; ++w)
    if (better(best[w], bw[w], best[pick], bw[pick])) pick = w;
  return {bw[pick], best[pick], SearchMode::randomized};
}

}  // namespace

CosetResult min_weight_in_coset(const BitVector& v, const BitMatrix& m, SearchMode mode,
                                const SearchBudget& budget) {
  if (!m.empty() && v.size() != m.cols())
    throw InputError("min_weight_in_coset: length mismatch");
  // Empty generator set: the coset is the single point v. Zero v: the zero
  // vector is in the coset and nothing is lighter.
  if (m.empty() || v.none()) return {v.weight(), v, mode};
  return mode == SearchMode::exact ? exact_coset(v, m, budget) : randomized_coset(v, m, budget);
}

}  // namespace lc::gf2
