#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "layercode/errors.hpp"

namespace lc::gf2 {

// Packed bit vector. Word size and bit order are internal; everything that
// leaves the library goes through support lists.
class BitVector {
 public:
  BitVector() = default;
  explicit BitVector(std::size_t n) : n_(n), w_((n + 63) / 64, 0) {}

  static BitVector from_support(std::size_t n, std::span<const std::size_t> idx);
  static BitVector from_string(std::string_view bits);  // "1011"

  std::size_t size() const { return n_; }
  bool get(std::size_t i) const { return (w_[i >> 6] >> (i & 63)) & 1u; }
  void set(std::size_t i, bool v = true) {
    if (v) w_[i >> 6] |= (uint64_t{1} << (i & 63));
    else w_[i >> 6] &= ~(uint64_t{1} << (i & 63));
  }
  void flip(std::size_t i) { w_[i >> 6] ^= (uint64_t{1} << (i & 63)); }

  std::size_t weight() const;
  bool any() const;
  bool none() const { return !any(); }
  // Parity of the overlap with `o`.
  bool dot(const BitVector& o) const;
  std::size_t overlap(const BitVector& o) const;
  std::vector<std::size_t> support() const;
  std::optional<std::size_t> first() const;
  std::string to_string() const;

  BitVector& operator^=(const BitVector& o);
  BitVector& operator&=(const BitVector& o);
  BitVector& operator|=(const BitVector& o);
  friend BitVector operator^(BitVector a, const BitVector& b) { return a ^= b; }
  friend BitVector operator&(BitVector a, const BitVector& b) { return a &= b; }
  friend BitVector operator|(BitVector a, const BitVector& b) { return a |= b; }
  bool operator==(const BitVector& o) const = default;

  std::span<const uint64_t> words() const { return w_; }
  std::span<uint64_t> words() { return w_; }

 private:
  std::size_t n_ = 0;
  std::vector<uint64_t> w_;
};

// Lexicographic order on sorted supports; used as the witness tie-break.
bool support_less(const BitVector& a, const BitVector& b);

class BitMatrix {
 public:
  BitMatrix() = default;
  BitMatrix(std::size_t rows, std::size_t cols);
  static BitMatrix from_supports(std::size_t cols,
                                 const std::vector<std::vector<std::size_t>>& rows);
  static BitMatrix from_strings(const std::vector<std::string>& rows);
  static BitMatrix identity(std::size_t n);

  std::size_t rows() const { return rows_.size(); }
  std::size_t cols() const { return cols_; }
  bool empty() const { return rows_.empty(); }

  const BitVector& row(std::size_t r) const { return rows_[r]; }
  BitVector& row(std::size_t r) { return rows_[r]; }
  const std::vector<BitVector>& row_vectors() const { return rows_; }
  bool get(std::size_t r, std::size_t c) const { return rows_[r].get(c); }
  void set(std::size_t r, std::size_t c, bool v = true) { rows_[r].set(c, v); }

  void append_row(BitVector v);
  void erase_row(std::size_t r);

  // M * v over GF(2): one bit per row.
  BitVector apply(const BitVector& v) const;
  BitMatrix transpose() const;
  // M * N^T (row-by-row overlap parities).
  BitMatrix mul_transpose(const BitMatrix& n) const;
  BitMatrix select_columns(std::span<const std::size_t> cols) const;
  std::size_t max_row_weight() const;
  std::vector<std::vector<std::size_t>> supports() const;

  bool operator==(const BitMatrix& o) const = default;

 private:
  std::size_t cols_ = 0;
  std::vector<BitVector> rows_;
};

// Reduced row echelon form of a row space, kept incrementally.
class RowBasis {
 public:
  explicit RowBasis(std::size_t cols) : cols_(cols) {}
  explicit RowBasis(const BitMatrix& m);

  // Returns false when v already lies in the span.
  bool insert(BitVector v);
  // Clears every pivot bit of v using the basis.
  BitVector reduce(BitVector v) const;
  bool contains(const BitVector& v) const { return reduce(v).none(); }

  std::size_t rank() const { return rows_.size(); }
  std::size_t cols() const { return cols_; }
  const std::vector<BitVector>& rows() const { return rows_; }
  const std::vector<std::size_t>& pivots() const { return pivots_; }

 private:
  std::size_t cols_;
  std::vector<BitVector> rows_;
  std::vector<std::size_t> pivots_;
};

std::size_t rank(const BitMatrix& m);
bool in_row_space(const BitMatrix& m, const BitVector& v);
BitMatrix nullspace_basis(const BitMatrix& m);
// Coefficients c with c^T M = v, if any.
std::optional<BitVector> solve_rows(const BitMatrix& m, const BitVector& v);

enum class SearchMode { exact, randomized };
const char* to_string(SearchMode m);

struct SearchBudget {
  uint64_t exhaustion_limit = uint64_t{1} << 24;  // coset members, exact mode
  uint64_t restarts = 256;                        // randomized mode
  uint64_t seed = 0;
  unsigned workers = 1;
};

struct CosetResult {
  std::size_t weight = 0;
  BitVector witness;
  SearchMode mode = SearchMode::exact;
};

// Minimum weight over v + rowspace(m).
CosetResult min_weight_in_coset(const BitVector& v, const BitMatrix& m, SearchMode mode,
                                const SearchBudget& budget = {});

// Matrix Market coordinate pattern, 1-based.
void write_matrix_market(std::ostream& os, const BitMatrix& m);
BitMatrix read_matrix_market(std::istream& is);

}  // namespace lc::gf2
