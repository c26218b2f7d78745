#include <gtest/gtest.h>

#include <algorithm>

#include "corpus.hpp"
#include "layercode/errors.hpp"
#include "layercode/layer.hpp"

using namespace lc;
using layer::LineKind;

namespace {

bool commutes(const layer::LayerCode& lc) {
  const auto prod = lc.hx.mul_transpose(lc.hz);
  return std::none_of(prod.row_vectors().begin(), prod.row_vectors().end(),
                      [](const gf2::BitVector& r) { return r.any(); });
}

}  // namespace

TEST(Layout, RepetitionCoordinates) {
  auto l = layer::plan_layout(css::builtin("rep3"), 2);
  ASSERT_EQ(l.layer_count(), 5u);
  for (std::size_t i = 0; i < 3; ++i) EXPECT_EQ(l.qubit_layers[i].y, long(4 * i));
  ASSERT_EQ(l.zcheck_layers.size(), 2u);
  EXPECT_EQ(l.zcheck_layers[0].y0, 0);
  EXPECT_EQ(l.zcheck_layers[0].y1, 4);
  EXPECT_EQ(l.zcheck_layers[1].y0, 4);
  EXPECT_EQ(l.zcheck_layers[1].y1, 8);
  EXPECT_TRUE(l.xcheck_layers.empty());
}

TEST(Layout, PaperLayerCounts) {
  struct Row { const char* name; std::size_t xz, xy, yz; };
  for (auto r : {Row{"rep3", 3, 0, 2}, Row{"c422", 4, 1, 1}, Row{"shor", 9, 2, 6}, Row{"steane", 7, 3, 3}}) {
    auto l = layer::plan_layout(css::builtin(r.name), 2);
    EXPECT_EQ(l.qubit_layers.size(), r.xz) << r.name;
    EXPECT_EQ(l.xcheck_layers.size(), r.xy) << r.name;
    EXPECT_EQ(l.zcheck_layers.size(), r.yz) << r.name;
  }
}

TEST(Layout, MonotoneCoordinates) {
  auto l = layer::plan_layout(css::builtin("steane"), 3);
  for (std::size_t i = 1; i < l.qubit_layers.size(); ++i) EXPECT_LT(l.qubit_layers[i - 1].y, l.qubit_layers[i].y);
  for (std::size_t i = 1; i < l.zcheck_layers.size(); ++i) EXPECT_LT(l.zcheck_layers[i - 1].coord, l.zcheck_layers[i].coord);
  for (std::size_t i = 1; i < l.xcheck_layers.size(); ++i) EXPECT_LT(l.xcheck_layers[i - 1].coord, l.xcheck_layers[i].coord);
  for (const auto& z : l.zcheck_layers) {
    EXPECT_EQ(z.y0, l.y_of(z.support.front()));
    EXPECT_EQ(z.y1, l.y_of(z.support.back()));
  }
}

TEST(Layout, RejectsSmallSpacing) { EXPECT_THROW(layer::plan_layout(css::builtin("rep3"), 1), InputError); }

TEST(Pairing, C422ConsecutivePairs) {
  auto p = layer::compute_pairing(css::builtin("c422"));
  ASSERT_EQ(p.pairs.size(), 1u);
  auto expect = std::vector<std::pair<std::size_t, std::size_t>>{{0, 1}, {2, 3}};
  EXPECT_EQ(p.pairs.at({0, 0}), expect);
}

TEST(Pairing, ShorFirstChecks) {
  auto p = layer::compute_pairing(css::builtin("shor"));
  auto expect = std::vector<std::pair<std::size_t, std::size_t>>{{0, 1}};
  EXPECT_EQ(p.pairs.at({0, 0}), expect);
}

TEST(Pairing, DisjointChecksHaveNoEntry) {
  auto p = layer::compute_pairing(css::builtin("shor"));
  // X check 1 covers qubits 3..8, Z check 0 covers 0,1.
  EXPECT_EQ(p.pairs.count({1, 0}), 0u);
}

TEST(Defects, RepetitionLines) {
  auto lc = layer::build_layer_code(css::builtin("rep3"), 2);
  EXPECT_EQ(lc.defects.count(LineKind::firstZ), 2u);
  EXPECT_EQ(lc.defects.count(LineKind::lastZ), 2u);
  EXPECT_EQ(lc.defects.count(LineKind::middleZ), 0u);
  for (auto k : {LineKind::firstX, LineKind::middleX, LineKind::lastX, LineKind::trivialY, LineKind::nontrivialY})
    EXPECT_EQ(lc.defects.count(k), 0u);
}

TEST(Defects, C422NontrivialBetweenPairs) {
  auto lc = layer::build_layer_code(css::builtin("c422"), 2);
  std::vector<std::pair<long, long>> nontrivial, trivial;
  for (const auto& d : lc.defects.lines) {
    if (d.kind == LineKind::nontrivialY) nontrivial.emplace_back(d.from.y, d.to.y);
    if (d.kind == LineKind::trivialY) trivial.emplace_back(d.from.y, d.to.y);
  }
  const long s = 2 * lc.c;
  std::sort(nontrivial.begin(), nontrivial.end());
  EXPECT_EQ(nontrivial, (std::vector<std::pair<long, long>>{{0, s}, {2 * s, 3 * s}}));
  EXPECT_EQ(trivial, (std::vector<std::pair<long, long>>{{s, 2 * s}}));
}

TEST(Defects, SteanePointKindsAreInTaxonomy) {
  auto lc = layer::build_layer_code(css::builtin("steane"), 2);
  ASSERT_FALSE(lc.defects.points.empty());
  std::size_t bulk = 0;
  for (const auto& p : lc.defects.points) {
    EXPECT_GE(p.kind.index, 1);
    EXPECT_LE(p.kind.index, p.kind.boundary ? 12 : 10);
    bulk += !p.kind.boundary;
    EXPECT_TRUE(layer::PointKind::parse(p.kind.str()));
  }
  EXPECT_GT(bulk, 0u);
}

TEST(Build, RepetitionIsValid) {
  auto lc = layer::build_layer_code(css::builtin("rep3"), 2);
  EXPECT_TRUE(commutes(lc));
  EXPECT_EQ(css::logical_qubit_count(lc.as_css()), 1u);
  EXPECT_EQ(lc.layer_count(), 5u);
}

TEST(Build, SteaneThirteenLayersWeightSix) {
  auto lc = layer::build_layer_code(css::builtin("steane"), 2);
  EXPECT_EQ(lc.layer_count(), 13u);
  EXPECT_LE(std::max(lc.hx.max_row_weight(), lc.hz.max_row_weight()), 6u);
  EXPECT_EQ(css::logical_qubit_count(lc.as_css()), 1u);
}

TEST(Build, SingleQubitIsOneSurfacePatch) {
  auto code = css::CssCode::make("one", 1, {}, {});
  auto lc = layer::build_layer_code(code, 2);
  EXPECT_EQ(lc.layer_count(), 1u);
  auto s = layer::check_structure(lc);
  EXPECT_TRUE(s.ok()) << (s.failures.empty() ? "" : s.failures[0]);
  EXPECT_EQ(s.k, 1u);
  // The floor-size patch is c plaquettes wide and c high: [[2c^2, 1, c]].
  const std::size_t L = std::size_t(lc.c);
  EXPECT_EQ(lc.n(), 2 * L * L);
  auto d = css::distance(lc.as_css(), gf2::SearchMode::exact);
  EXPECT_EQ(d.d, L);
}

TEST(Build, BulkAndBoundaryWeights) {
  auto lc = layer::build_layer_code(css::builtin("shor"), 2);
  for (auto t : {css::PauliType::X, css::PauliType::Z})
    for (const auto& ch : lc.checks(t)) {
      if (ch.kind == "bulk") {
        EXPECT_EQ(ch.support.size(), 4u) << ch.origin();
      } else if (ch.kind == "boundary") {
        EXPECT_EQ(ch.support.size(), 3u) << ch.origin();
      }
    }
}

TEST(Build, StructureOnBuiltinsAndCorpus) {
  auto corpus = fixtures::random_corpus();
  for (const auto& n : fixtures::paper_builtins()) corpus.push_back(css::builtin(n));
  for (const auto& code : corpus) {
    auto lc = layer::build_layer_code(code, 2);
    auto s = layer::check_structure(lc);
    EXPECT_TRUE(s.commutes) << code.name;
    EXPECT_LE(s.max_weight, 6u) << code.name;
    EXPECT_LE(s.max_extent, 2 * lc.c + 1) << code.name;
    EXPECT_EQ(s.k, css::logical_qubit_count(code)) << code.name;
  }
}

TEST(Build, LargerSpacing) {
  for (const auto& n : {"rep3", "c422", "steane"}) {
    auto lc = layer::build_layer_code(css::builtin(n), 3);
    EXPECT_TRUE(layer::check_structure(lc).ok()) << n;
  }
}

TEST(Build, Deterministic) {
  auto a = layer::to_json(layer::build_layer_code(css::builtin("steane"), 2));
  auto b = layer::to_json(layer::build_layer_code(css::builtin("steane"), 2));
  EXPECT_EQ(a, b);
}

TEST(Build, ProvenanceCoversEveryRow) {
  auto lc = layer::build_layer_code(css::builtin("c422"), 2);
  for (auto t : {css::PauliType::X, css::PauliType::Z})
    for (const auto& ch : lc.checks(t)) {
      EXPECT_FALSE(ch.kind.empty());
      EXPECT_FALSE(ch.support.empty());
    }
  EXPECT_EQ(lc.hx.rows(), lc.x_checks.size());
  EXPECT_EQ(lc.hz.rows(), lc.z_checks.size());
}

TEST(Tile, OneBlockIsPlainBuild) {
  auto code = css::builtin("rep3");
  EXPECT_EQ(layer::to_json(layer::tile_blocks(code, 2, 1)), layer::to_json(layer::build_layer_code(code, 2)));
}

TEST(Tile, KMultiplies) {
  auto one = layer::build_layer_code(css::builtin("rep3"), 2);
  auto three = layer::tile_blocks(css::builtin("rep3"), 2, 3);
  EXPECT_EQ(three.n(), 3 * one.n());
  EXPECT_EQ(css::logical_qubit_count(three.as_css()), 3u);
  EXPECT_EQ(css::logical_qubit_count(layer::tile_blocks(css::builtin("steane"), 2, 2).as_css()), 2u);
}

TEST(Templates, CatalogIsMinimal) {
  // Removing the checks of any one template kind must break commutation or k.
  for (const auto& name : fixtures::paper_builtins()) {
    auto code = css::builtin(name);
    auto lc = layer::build_layer_code(code, 2);
    for (const auto& kind : layer::template_kinds(lc)) {
      layer::BuildOptions o;
      o.ablate.insert(kind);
      bool broken = false;
      try {
        broken = !layer::check_structure(layer::build_layer_code(code, 2, o)).ok();
      } catch (const IntegrityError&) {
        broken = true;
      }
      EXPECT_TRUE(broken) << name << " still valid without " << kind;
    }
  }
}

TEST(Templates, ShapesFitWeightBound) {
  auto lc = layer::build_layer_code(css::builtin("steane"), 2);
  auto cat = layer::template_catalog(lc);
  EXPECT_FALSE(cat.empty());
  for (const auto& t : cat) EXPECT_LE(t.offsets.size(), 6u) << t.kind;
}

TEST(Counting, RepetitionFamilyConstants) {
  // N / (n * max(n_X,1) * n_Z) stays within [2c^2, 4c^2] at c = 2.
  for (std::size_t m = 2; m <= 6; ++m) {
    auto code = css::builtin("rep" + std::to_string(m));
    auto lc = layer::build_layer_code(code, 2);
    const double norm = double(code.n) * std::max<std::size_t>(code.n_x(), 1) * code.n_z();
    EXPECT_GE(lc.n(), 8.0 * norm) << m;
    EXPECT_LE(lc.n(), 16.0 * norm) << m;
  }
}

TEST(Io, JsonRoundTrip) {
  for (const auto& name : fixtures::paper_builtins()) {
    auto lc = layer::build_layer_code(css::builtin(name), 2);
    const auto text = layer::to_json(lc);
    auto back = layer::from_json(text);
    EXPECT_EQ(back.hx, lc.hx);
    EXPECT_EQ(back.hz, lc.hz);
    EXPECT_EQ(layer::to_json(back), text) << name;
  }
}

TEST(Io, RejectsTamperedHash) {
  auto text = layer::to_json(layer::build_layer_code(css::builtin("rep3"), 2));
  auto at = text.find("\"hash\"");
  ASSERT_NE(at, std::string::npos);
  auto q = text.find('"', text.find(':', at) + 1);
  text[q + 1] = text[q + 1] == 'a' ? 'b' : 'a';
  EXPECT_THROW(layer::from_json(text), InputError);
}

TEST(Io, GeometryCounts) {
  auto lc = layer::build_layer_code(css::builtin("rep3"), 2);
  auto g = layer::geometry_json(lc);
  std::size_t layers = 0, lines = 0;
  for (std::size_t p = 0; (p = g.find("\"plane\"", p)) != std::string::npos; ++p) ++layers;
  for (std::size_t p = 0; (p = g.find("\"kind\"", p)) != std::string::npos; ++p) ++lines;
  EXPECT_EQ(layers, 5u);
  EXPECT_EQ(lines, 4u);
}
