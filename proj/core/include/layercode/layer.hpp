#pragma once

#include <compare>
#include <cstddef>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "layercode/css.hpp"
#include "layercode/gf2.hpp"

namespace lc::layer {

// Integer lattice point. One unit is half a lattice edge: vertices sit on
// even coordinates, edges have one odd coordinate, faces two.
struct Coord {
  long x = 0, y = 0, z = 0;
  auto operator<=>(const Coord&) const = default;
};
long chebyshev(const Coord& a, const Coord& b);

// D: one xz-layer per input qubit. Z: one yz-layer per Z check.
// X: one xy-layer per X check.
enum class LayerType : char { D = 'D', Z = 'Z', X = 'X' };
const char* plane_name(LayerType t);

struct LayerId {
  LayerType type = LayerType::D;
  std::size_t index = 0;
  auto operator<=>(const LayerId&) const = default;
  std::string str() const;
  static LayerId parse(const std::string& s);
};

struct QubitLayer {
  std::size_t qubit;
  long y;
  long x_extent;
  long z_extent;
};

struct CheckLayer {
  std::size_t check;
  long coord;  // x for Z-check layers, z for X-check layers
  long y0 = 0, y1 = 0;
  std::vector<std::size_t> support;
  bool open_end = false;  // weight-1 check: extends past its only qubit layer
  bool empty() const { return support.empty(); }
};

struct LayerLayout {
  long c = 2;
  std::vector<QubitLayer> qubit_layers;
  std::vector<CheckLayer> zcheck_layers;
  std::vector<CheckLayer> xcheck_layers;
  Coord extent;  // cells live in [0, extent.x] x [0, extent.y] x [1, extent.z - 1]

  std::size_t layer_count() const {
    return qubit_layers.size() + zcheck_layers.size() + xcheck_layers.size();
  }
  long y_of(std::size_t qubit) const { return qubit_layers[qubit].y; }
};

// c >= 2. Throws InputError otherwise or when the code does not validate.
LayerLayout plan_layout(const css::CssCode& code, long c);

// Keyed by (X check, Z check); consecutive pairs of the sorted shared support.
struct OverlapPairing {
  std::map<std::pair<std::size_t, std::size_t>, std::vector<std::pair<std::size_t, std::size_t>>>
      pairs;
  // True when y-interval (qubit a, qubit b) of some pair of (k, j) contains q1..q2.
  bool paired_between(std::size_t k, std::size_t j, std::size_t q1, std::size_t q2) const;
};
OverlapPairing compute_pairing(const css::CssCode& code);

enum class LineKind {
  trivialY,
  nontrivialY,
  firstZ,
  middleZ,
  lastZ,
  trivialZ,
  firstX,
  middleX,
  lastX,
  trivialX,
};
const char* to_string(LineKind k);
std::optional<LineKind> parse_line_kind(const std::string& s);
inline constexpr LineKind kAllLineKinds[] = {
    LineKind::trivialY, LineKind::nontrivialY, LineKind::firstZ,  LineKind::middleZ,
    LineKind::lastZ,    LineKind::trivialZ,    LineKind::firstX,  LineKind::middleX,
    LineKind::lastX,    LineKind::trivialX};

struct LineDefect {
  LineKind kind;
  Coord from, to;
  std::vector<LayerId> layers;
};

// bulk1..bulk10 and boundary1..boundary12.
struct PointKind {
  bool boundary = false;
  int index = 0;
  auto operator<=>(const PointKind&) const = default;
  std::string str() const;
  static std::optional<PointKind> parse(const std::string& s);
};

struct PointDefect {
  PointKind kind;
  Coord site;
  std::vector<std::size_t> lines;  // indices into DefectRegistry::lines
};

struct DefectRegistry {
  std::vector<LineDefect> lines;
  std::vector<PointDefect> points;
  std::size_t count(LineKind k) const;
  std::size_t count(PointKind k) const;
};

// Throws IntegrityError on an adjacency pattern outside the taxonomy.
DefectRegistry classify_junctions(const LayerLayout& layout, const OverlapPairing& pairing);

struct Qubit {
  std::size_t id;
  Coord pos;
  LayerId layer;
};

struct Check {
  std::vector<std::size_t> support;  // sorted qubit ids
  Coord pos;
  LayerId layer;
  std::string kind;  // bulk, boundary, a line kind or a point kind
  std::string origin() const { return layer.str() + ":" + kind; }
};

struct LayerCode {
  css::CssCode input;
  std::string input_hash;
  long c = 2;
  std::size_t blocks = 1;
  LayerLayout layout;
  OverlapPairing pairing;
  DefectRegistry defects;
  std::vector<Qubit> qubits;
  std::vector<Check> x_checks;
  std::vector<Check> z_checks;
  gf2::BitMatrix hx, hz;

  std::size_t n() const { return qubits.size(); }
  std::size_t layer_count() const { return blocks * layout.layer_count(); }
  const std::vector<Check>& checks(css::PauliType t) const {
    return t == css::PauliType::X ? x_checks : z_checks;
  }
  css::CssCode as_css() const;
  // Qubit owned by `layer` at `pos`, if any (block 0 coordinates for tiled codes).
  std::optional<std::size_t> find_qubit(LayerId layer, const Coord& pos) const;
  // Rebuilds hx/hz and the lookup index from qubits and checks.
  void reindex();

 private:
  std::map<std::pair<LayerId, Coord>, std::size_t> index_;
};

struct BuildOptions {
  // Kinds whose checks are left out; used by the catalog-minimality test.
  std::set<std::string> ablate;
};

LayerCode build_layer_code(const css::CssCode& code, long c, const BuildOptions& opts = {});
LayerCode tile_blocks(const css::CssCode& code, long c, std::size_t block_count);

// Defect check shapes read off a built code: support offsets relative to the
// check position, one entry per distinct shape.
struct CheckTemplate {
  std::string kind;
  css::PauliType type;
  std::vector<Coord> offsets;
  std::size_t instances = 0;
};
std::vector<CheckTemplate> template_catalog(const LayerCode& lc);
// Kinds whose checks are special (all line and point kinds present in the code
// except the trivial ones, which use plain surface code checks).
std::vector<std::string> template_kinds(const LayerCode& lc);

struct StructureReport {
  bool commutes = true;
  std::size_t max_weight = 0;
  long max_extent = 0;  // largest axis extent of a check support
  std::size_t k = 0;
  std::size_t input_k = 0;
  std::vector<std::string> failures;
  bool ok() const { return failures.empty(); }
};
// Commutation, weight <= 6, locality box <= 2c+1, k preservation.
StructureReport check_structure(const LayerCode& lc);

// JSON and geometry I/O.
std::string to_json(const LayerCode& lc);
LayerCode from_json(const std::string& text);
std::string geometry_json(const LayerCode& lc);

}  // namespace lc::layer
