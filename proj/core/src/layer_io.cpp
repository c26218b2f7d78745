#include <json.hpp>

#include "layercode/layer.hpp"

namespace lc::layer {

using nlohmann::json;

namespace {

json coord(const Coord& p) { return json::array({p.x, p.y, p.z}); }

Coord coord_from(const json& j) {
  if (!j.is_array() || j.size() != 3) throw InputError("layer code: coordinate must be [x,y,z]");
  return {j[0].get<long>(), j[1].get<long>(), j[2].get<long>()};
}

json checks_json(const std::vector<Check>& cs) {
  json out = json::array();
  for (const auto& ch : cs)
    out.push_back({{"support", ch.support}, {"origin", ch.origin()}, {"at", coord(ch.pos)}});
  return out;
}

std::vector<Check> checks_from(const json& arr, std::size_t n) {
  std::vector<Check> out;
  for (const auto& j : arr) {
    Check ch;
    ch.support = j.at("support").get<std::vector<std::size_t>>();
    std::sort(ch.support.begin(), ch.support.end());
    for (auto q : ch.support)
      if (q >= n) throw InputError("layer code: check support index out of range");
    const auto origin = j.at("origin").get<std::string>();
    const auto colon = origin.find(':');
    if (colon == std::string::npos) throw InputError("layer code: bad origin '" + origin + "'");
    ch.layer = LayerId::parse(origin.substr(0, colon));
    ch.kind = origin.substr(colon + 1);
    ch.pos = coord_from(j.at("at"));
    out.push_back(std::move(ch));
  }
  return out;
}

json span_of(const LayerLayout& l, LayerType t, std::size_t idx) {
  switch (t) {
    case LayerType::D: return {0, l.extent.x, 1, l.extent.z - 1};
    case LayerType::Z: {
      const auto& c = l.zcheck_layers[idx];
      return {c.y0, c.y1, 1, l.extent.z - 1};
    }
    case LayerType::X: {
      const auto& c = l.xcheck_layers[idx];
      return {0, l.extent.x, c.y0, c.y1};
    }
  }
  return json::array();
}

}  // namespace

std::string to_json(const LayerCode& lc) {
  json j;
  j["input"] = {{"name", lc.input.name},
                {"hash", lc.input_hash},
                {"code", json::parse(css::to_json(lc.input))}};
  j["c"] = lc.c;
  j["blocks"] = lc.blocks;
  json qs = json::array();
  for (const auto& q : lc.qubits)
    qs.push_back({{"id", q.id}, {"x", q.pos.x}, {"y", q.pos.y}, {"z", q.pos.z}, {"layer", q.layer.str()}});
  j["qubits"] = std::move(qs);
  j["x_checks"] = checks_json(lc.x_checks);
  j["z_checks"] = checks_json(lc.z_checks);
  json lines = json::array(), points = json::array();
  for (const auto& l : lc.defects.lines) {
    json layers = json::array();
    for (const auto& id : l.layers) layers.push_back(id.str());
    lines.push_back({{"kind", to_string(l.kind)}, {"from", coord(l.from)}, {"to", coord(l.to)},
                     {"layers", layers}});
  }
  for (const auto& p : lc.defects.points)
    points.push_back({{"kind", p.kind.str()}, {"site", coord(p.site)}, {"lines", p.lines}});
  j["defects"] = {{"lines", lines}, {"points", points}};
  return j.dump(1);
}

LayerCode from_json(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    throw InputError(std::string("malformed JSON: ") + e.what());
  }
  try {
    LayerCode lc;
    lc.input = css::parse_json(j.at("input").at("code").dump());
    lc.input_hash = j.at("input").at("hash").get<std::string>();
    if (lc.input_hash != css::content_hash(lc.input))
      throw InputError("layer code: input hash does not match the embedded code");
    lc.c = j.at("c").get<long>();
    lc.blocks = j.value("blocks", std::size_t{1});
    lc.layout = plan_layout(lc.input, lc.c);
    lc.pairing = compute_pairing(lc.input);
    const auto& qs = j.at("qubits");
    for (std::size_t i = 0; i < qs.size(); ++i) {
      const auto& q = qs[i];
      if (q.at("id").get<std::size_t>() != i) throw InputError("layer code: qubit ids must be 0..N-1 in order");
      lc.qubits.push_back({i, {q.at("x").get<long>(), q.at("y").get<long>(), q.at("z").get<long>()},
                           LayerId::parse(q.at("layer").get<std::string>())});
    }
    lc.x_checks = checks_from(j.at("x_checks"), lc.n());
    lc.z_checks = checks_from(j.at("z_checks"), lc.n());
    for (const auto& l : j.at("defects").at("lines")) {
      auto kind = parse_line_kind(l.at("kind").get<std::string>());
      if (!kind) throw InputError("layer code: unknown line kind");
      LineDefect d{*kind, coord_from(l.at("from")), coord_from(l.at("to")), {}};
      for (const auto& id : l.at("layers")) d.layers.push_back(LayerId::parse(id.get<std::string>()));
      lc.defects.lines.push_back(std::move(d));
    }
    for (const auto& p : j.at("defects").at("points")) {
      auto kind = PointKind::parse(p.at("kind").get<std::string>());
      if (!kind) throw InputError("layer code: unknown point kind");
      lc.defects.points.push_back(
          {*kind, coord_from(p.at("site")), p.at("lines").get<std::vector<std::size_t>>()});
    }
    lc.reindex();
    return lc;
  } catch (const json::exception& e) {
    throw InputError(std::string("layer code schema: ") + e.what());
  }
}

std::string geometry_json(const LayerCode& lc) {
  json layers = json::array(), lines = json::array();
  const auto& l = lc.layout;
  const long dx = l.extent.x + 2 * lc.c;
  for (std::size_t b = 0; b < lc.blocks; ++b) {
    const long off = long(b) * dx;
    for (const auto& q : l.qubit_layers) {
      json span = span_of(l, LayerType::D, q.qubit);
      span[0] = span[0].get<long>() + off;
      span[1] = span[1].get<long>() + off;
      layers.push_back({{"plane", "xz"}, {"coord", q.y}, {"span", span}, {"layer", "D" + std::to_string(q.qubit)}});
    }
    for (const auto& z : l.zcheck_layers)
      layers.push_back({{"plane", "yz"},
                        {"coord", z.coord + off},
                        {"span", span_of(l, LayerType::Z, z.check)},
                        {"layer", "Z" + std::to_string(z.check)}});
    for (const auto& x : l.xcheck_layers) {
      json span = span_of(l, LayerType::X, x.check);
      span[0] = span[0].get<long>() + off;
      span[1] = span[1].get<long>() + off;
      layers.push_back({{"plane", "xy"}, {"coord", x.coord}, {"span", span}, {"layer", "X" + std::to_string(x.check)}});
    }
  }
  for (const auto& d : lc.defects.lines)
    lines.push_back({{"kind", to_string(d.kind)}, {"from", coord(d.from)}, {"to", coord(d.to)}});
  json out;
  out["layers"] = std::move(layers);
  out["defect_lines"] = std::move(lines);
  return out.dump(1);
}

}  // namespace lc::layer
