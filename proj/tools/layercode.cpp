#include <CLI11.hpp>
#include <json.hpp>

#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include "layercode/analysis.hpp"
#include "layercode/digest.hpp"

namespace fs = std::filesystem;
using json = nlohmann::ordered_json;
using namespace lc;
using css::PauliType;

namespace {

enum Exit { kOk = 0, kVerifyFail = 1, kInput = 2, kIntegrity = 3 };

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError("cannot read " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_file(const fs::path& p, const std::string& text) {
  std::ofstream out(p, std::ios::binary);
  if (!out) throw InputError("cannot write " + p.string());
  out << text;
}

// Every number leaves with its mode attached.
json tagged(std::size_t v, const std::string& mode) { return {{"value", v}, {"mode", mode}}; }
json unknown() { return {{"value", nullptr}, {"mode", "unknown"}}; }

std::vector<std::size_t> indices(const gf2::BitVector& v) { return v.support(); }

struct Common {
  std::string input;
  std::string builtin;
  long c = 2;
  uint64_t seed = 0;
  uint64_t budget = uint64_t{1} << 22;
  std::string output;
};

css::CssCode load_code(const Common& o) {
  if (!o.builtin.empty()) return css::builtin(o.builtin);
  const auto text = slurp(o.input);
  auto code = css::parse_json(text);
  auto rep = css::validate(code);
  if (!rep.ok) throw InputError(rep.describe());
  return code;
}

json input_block(const layer::LayerCode& lc) {
  return {{"name", lc.input.name}, {"hash", lc.input_hash}};
}

// -- build ------------------------------------------------------------------

int cmd_build(const Common& o, std::size_t blocks) {
  const auto code = load_code(o);
  const auto lc = blocks == 1 ? layer::build_layer_code(code, o.c) : layer::tile_blocks(code, o.c, blocks);
  const fs::path dir = o.output.empty() ? fs::path(".") : fs::path(o.output);
  fs::create_directories(dir);

  std::vector<std::pair<std::string, std::string>> files;
  files.emplace_back("layer_code.json", layer::to_json(lc));
  std::ostringstream hx, hz;
  gf2::write_matrix_market(hx, lc.hx);
  gf2::write_matrix_market(hz, lc.hz);
  files.emplace_back("hx.mtx", hx.str());
  files.emplace_back("hz.mtx", hz.str());
  files.emplace_back("geometry.json", layer::geometry_json(lc));

  json digests = json::object();
  for (const auto& [name, text] : files) {
    write_file(dir / name, text);
    digests[name] = sha256_hex(text);
  }
  json manifest = {{"subcommand", "build"},
                   {"input", input_block(lc)},
                   {"parameters", {{"c", lc.c}, {"blocks", blocks}, {"seed", o.seed}, {"budget", o.budget}}},
                   {"version", LAYERCODE_VERSION},
                   {"outputs", digests}};
  write_file(dir / "manifest.json", manifest.dump(2) + "\n");

  std::cout << "built " << (code.name.empty() ? "code" : code.name) << ": " << lc.layer_count()
            << " layers, N = " << lc.n() << ", " << lc.hx.rows() << " X checks, " << lc.hz.rows()
            << " Z checks -> " << dir.string() << "\n";
  return kOk;
}

// -- verify -----------------------------------------------------------------

json structure_json(const layer::StructureReport& r, const layer::LayerCode& lc) {
  return {{"commutes", r.commutes},
          {"max_weight", tagged(r.max_weight, "exact")},
          {"max_extent", tagged(std::size_t(r.max_extent), "exact")},
          {"extent_limit", tagged(std::size_t(2 * lc.c + 1), "exact")},
          {"k", tagged(r.k, "exact")},
          {"input_k", tagged(r.input_k, "exact")}};
}

json bounds_json(const analysis::TypeBounds& b) {
  json lower;
  switch (b.status) {
    case analysis::LowerStatus::found: lower = tagged(b.lower, "exact"); break;
    case analysis::LowerStatus::cutoff: lower = tagged(b.lower, "lower-bound"); break;
    case analysis::LowerStatus::budget: lower = unknown(); break;
  }
  const bool exact = b.status == analysis::LowerStatus::found;
  return {{"lower", lower},
          {"upper", tagged(b.upper, exact ? "exact" : "upper-bound")},
          {"search_nodes", tagged(b.nodes, "exact")},
          {"witness", indices(b.witness)}};
}

int cmd_verify(const Common& o, const std::string& level) {
  const auto lc = layer::from_json(slurp(o.input));
  json report = {{"input", input_block(lc)}, {"level", level}};
  std::vector<std::string> failures;

  const auto s = layer::check_structure(lc);
  report["structure"] = structure_json(s, lc);
  failures.insert(failures.end(), s.failures.begin(), s.failures.end());

  if (level == "full" && s.commutes) {
    auto corr = analysis::point_defect_correctability(lc, lc.c);
    std::size_t failed = 0;
    for (const auto& b : corr.balls) {
      if (!b.pass) {
        ++failed;
        failures.push_back("correctability: ball at (" + std::to_string(b.site.x) + "," +
                           std::to_string(b.site.y) + "," + std::to_string(b.site.z) + ") [" +
                           b.kind + "] " + std::to_string(b.lhs) + " != " + std::to_string(b.rhs));
      }
    }
    report["correctability"] = {{"radius", tagged(std::size_t(corr.radius), "exact")},
                                {"balls", tagged(corr.balls.size(), "exact")},
                                {"failed", tagged(failed, "exact")}};

    if (lc.blocks == 1 && s.failures.empty()) {
      const auto basis = css::logical_basis(lc.input);
      std::size_t ok = 0, total = 0;
      std::vector<gf2::BitVector> img[2];
      for (auto t : {PauliType::X, PauliType::Z}) {
        const auto& reps = t == PauliType::X ? basis.x : basis.z;
        for (const auto& v : reps) {
          ++total;
          try {
            auto op = logical::quasiconcatenated_logical(lc, v, t);
            img[t == PauliType::X ? 0 : 1].push_back(op.support);
            auto back = logical::map_layer_logical_to_input(lc, op);
            if (gf2::in_row_space(lc.input.stabilizers(t), back ^ v)) ++ok;
            else failures.push_back(std::string("round trip: ") + css::to_string(t) + " logical not recovered");
          } catch (const IntegrityError& e) {
            failures.push_back(std::string("round trip: ") + e.what());
          }
        }
      }
      const bool pairing = img[0].size() == basis.x.size() && img[1].size() == basis.z.size() &&
                           css::pairing_matrix(img[0], img[1]) == basis.pairing;
      if (!pairing) failures.push_back("round trip: pairing matrix differs from the input");
      report["round_trip"] = {{"recovered", tagged(ok, "exact")}, {"total", tagged(total, "exact")},
                              {"pairing_matches", pairing}};

      if (!basis.x.empty()) {
        analysis::DistanceOptions d;
        d.node_budget = o.budget;
        d.search.seed = o.seed;
        auto b = analysis::layer_distance_bounds(lc, d);
        for (const auto* tb : {&b.x, &b.z})
          if (tb->lower > tb->upper) failures.push_back("distance: lower bound exceeds upper bound");
        report["distance"] = {{"X", bounds_json(b.x)}, {"Z", bounds_json(b.z)}};
      }
    } else if (lc.blocks != 1) {
      report["round_trip"] = {{"skipped", "tiled layer code"}};
    }
  }
  report["failures"] = failures;
  report["pass"] = failures.empty();
  std::cout << report.dump(2) << "\n";
  return failures.empty() ? kOk : kVerifyFail;
}

// -- analyze ----------------------------------------------------------------

json barrier_json(const analysis::BarrierResult& r) {
  return {{"barrier", tagged(r.value, analysis::to_string(r.mode))}, {"sequence", r.witness}};
}

int cmd_analyze(const Common& o, bool distance, bool barrier, bool relations, std::size_t cutoff) {
  if (!distance && !barrier && !relations)
    throw CLI::ValidationError("analyze", "pick at least one of --distance, --barrier, --relations");
  const auto lc = layer::from_json(slurp(o.input));
  json report = {{"input", input_block(lc)},
                 {"parameters", {{"seed", o.seed}, {"budget", o.budget}, {"cutoff", cutoff}}}};
  const bool has_logicals = css::logical_qubit_count(lc.input) > 0;

  if (distance) {
    if (!has_logicals) {
      report["distance"] = {{"error", "no logicals"}};
    } else {
      analysis::DistanceOptions d;
      d.cutoff = cutoff;
      d.node_budget = o.budget;
      d.search.seed = o.seed;
      auto b = analysis::layer_distance_bounds(lc, d);
      report["distance"] = {{"X", bounds_json(b.x)}, {"Z", bounds_json(b.z)}};
    }
  }

  if (barrier) {
    json out = json::object();
    const auto basis = has_logicals ? css::logical_basis(lc.input) : css::LogicalBasis{};
    for (auto t : {PauliType::X, PauliType::Z}) {
      json entry;
      try {
        entry["input_exact"] = barrier_json(analysis::energy_barrier_exact(lc.input, t));
      } catch (const BudgetExceeded&) {
        entry["input_exact"] = {{"barrier", unknown()}};
      } catch (const InputError&) {
        entry["input_exact"] = {{"barrier", unknown()}};
      }
      json sweeps = json::array();
      const auto& reps = t == PauliType::X ? basis.x : basis.z;
      for (std::size_t i = 0; i < reps.size(); ++i) {
        auto r = analysis::energy_barrier_sweep(lc, reps[i], t);
        json e = barrier_json(r);
        e["logical"] = i;
        sweeps.push_back(std::move(e));
      }
      entry["layer_sweep"] = sweeps;
      out[css::to_string(t)] = std::move(entry);
    }
    report["barrier"] = out;
  }

  if (relations) {
    json out = json::object();
    for (auto t : {PauliType::X, PauliType::Z}) {
      json list = json::array();
      const auto& h = lc.input.stabilizers(t);
      const auto rels = gf2::nullspace_basis(h.transpose());
      for (std::size_t r = 0; r < rels.rows(); ++r) {
        const auto subset = rels.row(r).support();
        try {
          auto cert = analysis::relation_inheritance(lc.input, subset, t, lc);
          list.push_back({{"checks", subset},
                          {"certified", true},
                          {"product_weight", tagged(cert.product.weight(), "exact")},
                          {"combination", indices(cert.combination)}});
        } catch (const IntegrityError& e) {
          list.push_back({{"checks", subset}, {"certified", false}, {"reason", e.what()}});
        }
      }
      out[css::to_string(t)] = std::move(list);
    }
    report["relations"] = out;
  }
  std::cout << report.dump(2) << "\n";
  return kOk;
}

// -- export-geometry --------------------------------------------------------

int cmd_export_geometry(const Common& o) {
  const auto lc = layer::from_json(slurp(o.input));
  const auto text = layer::geometry_json(lc);
  if (o.output.empty()) std::cout << text << "\n";
  else write_file(o.output, text);
  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Build and check layer codes from CSS codes"};
  app.require_subcommand(1);
  Common o;
  std::size_t blocks = 1, cutoff = 8;
  std::string level = "fast";
  bool distance = false, barrier = false, relations = false;

  auto* build = app.add_subcommand("build", "Build a layer code; writes JSON, Matrix Market, geometry and a manifest");
  auto* src = build->add_option("--builtin", o.builtin, "Built-in code: rep3, c422, shor, steane, repN, surfaceL");
  build->add_option("--input", o.input, "CSS code JSON")->excludes(src)->check(CLI::ExistingFile);
  build->add_option("--c", o.c, "Superlattice spacing")->check(CLI::Range(2, 64));
  build->add_option("--blocks", blocks, "Number of tiled copies")->check(CLI::PositiveNumber);
  build->add_option("--seed", o.seed, "Recorded in the manifest");
  build->add_option("--budget", o.budget, "Recorded in the manifest");
  build->add_option("--output", o.output, "Output directory");

  auto* verify = app.add_subcommand("verify", "Check the invariants of a layer code");
  verify->add_option("--input", o.input, "Layer code JSON")->required()->check(CLI::ExistingFile);
  verify->add_option("--level", level, "fast or full")->check(CLI::IsMember({"fast", "full"}));
  verify->add_option("--seed", o.seed, "Seed for randomized searches");
  verify->add_option("--budget", o.budget, "Search node budget");

  auto* analyze = app.add_subcommand("analyze", "Distance, barrier and relation reports");
  analyze->add_option("--input", o.input, "Layer code JSON")->required()->check(CLI::ExistingFile);
  analyze->add_flag("--distance", distance, "Distance bounds");
  analyze->add_flag("--barrier", barrier, "Energy barriers");
  analyze->add_flag("--relations", relations, "Relation certificates");
  analyze->add_option("--seed", o.seed, "Seed for randomized searches");
  analyze->add_option("--budget", o.budget, "Search node budget");
  analyze->add_option("--cutoff", cutoff, "Weight cutoff of the exact search");

  auto* geom = app.add_subcommand("export-geometry", "Plane and defect-line listing for plotting");
  geom->add_option("--input", o.input, "Layer code JSON")->required()->check(CLI::ExistingFile);
  geom->add_option("--output", o.output, "Output file (stdout if omitted)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? kOk : kInput;
  }

  try {
    if (*build) {
      if (o.builtin.empty() && o.input.empty()) {
        std::cerr << "build: one of --builtin or --input is required\n";
        return kInput;
      }
      return cmd_build(o, blocks);
    }
    if (*verify) return cmd_verify(o, level);
    if (*analyze) return cmd_analyze(o, distance, barrier, relations, cutoff);
    if (*geom) return cmd_export_geometry(o);
  } catch (const CLI::ValidationError& e) {
    std::cerr << e.what() << "\n";
    return kInput;
  } catch (const InputError& e) {
    std::cerr << "input error: " << e.what() << "\n";
    return kInput;
  } catch (const IntegrityError& e) {
    std::cerr << "integrity failure: " << e.what() << "\n";
    return kIntegrity;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kIntegrity;
  }
  return kOk;
}
