#pragma once

#include <cstddef>
#include <istream>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "layercode/gf2.hpp"

namespace lc::css {

enum class PauliType { X, Z };
const char* to_string(PauliType t);
inline PauliType dual(PauliType t) { return t == PauliType::X ? PauliType::Z : PauliType::X; }

struct CssCode {
  std::string name;
  std::size_t n = 0;
  gf2::BitMatrix hx;  // n_X x n
  gf2::BitMatrix hz;  // n_Z x n
  // Input file order; the pairing rule reads qubits in this order.
  std::vector<std::size_t> qubit_order;

  std::size_t n_x() const { return hx.rows(); }
  std::size_t n_z() const { return hz.rows(); }
  std::size_t max_weight() const;

  // Checks whose syndrome detects errors of type t (hz for X errors).
  const gf2::BitMatrix& detectors(PauliType t) const { return t == PauliType::X ? hz : hx; }
  // Stabilizers of type t.
  const gf2::BitMatrix& stabilizers(PauliType t) const { return t == PauliType::X ? hx : hz; }

  static CssCode make(std::string name, std::size_t n,
                      const std::vector<std::vector<std::size_t>>& hx,
                      const std::vector<std::vector<std::size_t>>& hz);
};

struct Violation {
  std::size_t x_row;
  std::size_t z_row;
  std::size_t overlap;
};

struct ValidationReport {
  bool ok = true;
  std::vector<Violation> violations;
  std::string describe() const;
};

ValidationReport validate(const CssCode& code);
// n - rank(hx) - rank(hz). Throws IntegrityError on a negative count.
std::size_t logical_qubit_count(const CssCode& code);

struct LogicalBasis {
  std::vector<gf2::BitVector> x;
  std::vector<gf2::BitVector> z;
  gf2::BitMatrix pairing;  // pairing(i, j) = x_i . z_j
  std::size_t k() const { return x.size(); }
};

LogicalBasis logical_basis(const CssCode& code);
gf2::BitMatrix pairing_matrix(const std::vector<gf2::BitVector>& x,
                              const std::vector<gf2::BitVector>& z);
// True iff v commutes with the opposite checks and is not a stabilizer.
bool is_nontrivial_logical(const CssCode& code, const gf2::BitVector& v, PauliType t);

// Exhaustive search for the lightest nontrivial logical of weight <= cutoff:
// branch on the qubits of the first violated check. Complete for every cutoff.
struct LogicalSearch {
  std::optional<std::size_t> weight;  // empty: none up to the cutoff
  gf2::BitVector witness;
  std::size_t cutoff = 0;
  uint64_t nodes = 0;
};
LogicalSearch find_light_logical(const gf2::BitMatrix& detectors,
                                 const gf2::BitMatrix& stabilizers, std::size_t cutoff,
                                 uint64_t node_budget);

struct DistanceResult {
  std::size_t d_x = 0;
  std::size_t d_z = 0;
  std::size_t d = 0;
  gf2::SearchMode mode = gf2::SearchMode::exact;
  gf2::BitVector x_witness;
  gf2::BitVector z_witness;
};

// Exact mode is certified and throws BudgetExceeded past budget.exhaustion_limit
// search nodes; randomized mode returns upper bounds.
DistanceResult distance(const CssCode& code, gf2::SearchMode mode,
                        const gf2::SearchBudget& budget = {});

// rep(m) / repN, c422, shor, steane, surface(L) / surfaceL.
CssCode builtin(std::string_view name);
std::vector<std::string> builtin_names();
// Planar patch with smooth x ends and rough z ends: a plaquette columns wide
// and b rows high, in the same cell layout the layer builder uses.
CssCode planar_patch(std::size_t a, std::size_t b, std::string name);

CssCode parse_json(std::string_view text);
std::string to_json(const CssCode& code);
CssCode from_matrix_market(std::istream& hx, std::istream& hz, std::string name);
// SHA-256 over the canonical JSON serialization.
std::string content_hash(const CssCode& code);

}  // namespace lc::css
