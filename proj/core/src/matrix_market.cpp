#include <istream>
#include <ostream>
#include <sstream>
#include <string>

#include "layercode/gf2.hpp"

namespace lc::gf2 {

void write_matrix_market(std::ostream& os, const BitMatrix& m) {
  std::size_t nnz = 0;
  for (const auto& r : m.row_vectors()) nnz += r.weight();
  os << "%%MatrixMarket matrix coordinate pattern general\n";
  os << m.rows() << ' ' << m.cols() << ' ' << nnz << '\n';
  for (std::size_t r = 0; r < m.rows(); ++r)
    for (auto c : m.row(r).support()) os << r + 1 << ' ' << c + 1 << '\n';
}

BitMatrix read_matrix_market(std::istream& is) {
  std::string line;
  if (!std::getline(is, line)) throw InputError("matrix market: empty input");
  std::istringstream head(line);
  std::string banner, object, format, field, symmetry;
  head >> banner >> object >> format >> field >> symmetry;
  if (banner != "%%MatrixMarket" || object != "matrix" || format != "coordinate")
    throw InputError("matrix market: expected a coordinate matrix header");
  if (field != "pattern")
    throw InputError("matrix market: only the pattern field is supported, got '" + field + "'");
  if (symmetry != "general") throw InputError("matrix market: only general symmetry is supported");

  while (std::getline(is, line))
    if (!line.empty() && line[0] != '%') break;
  std::size_t rows = 0, cols = 0, nnz = 0;
  {
    std::istringstream sz(line);
    if (!(sz >> rows >> cols >> nnz)) throw InputError("matrix market: bad size line");
  }
  BitMatrix m(rows, cols);
  for (std::size_t k = 0; k < nnz; ++k) {
    std::size_t r = 0, c = 0;
    if (!(is >> r >> c)) throw InputError("matrix market: truncated entry list");
    if (r == 0 || c == 0 || r > rows || c > cols)
      throw InputError("matrix market: entry out of range");
    // Repeated entries would cancel over GF(2); treat the file as a pattern.
    m.set(r - 1, c - 1);
  }
  return m;
}

}  // namespace lc::gf2
