#include <json.hpp>

#include "layercode/css.hpp"
#include "layercode/digest.hpp"

namespace lc::css {

using nlohmann::json;

namespace {

std::vector<std::vector<std::size_t>> read_checks(const json& j, const char* key, std::size_t n) {
  if (!j.contains(key)) throw InputError(std::string("schema: missing field '") + key + "'");
  const json& rows = j.at(key);
  if (!rows.is_array()) throw InputError(std::string("schema: '") + key + "' must be an array");
  std::vector<std::vector<std::size_t>> out;
  for (std::size_t r = 0; r < rows.size(); ++r) {
    const json& row = rows[r];
    if (!row.is_array())
      throw InputError(std::string("schema: ") + key + "[" + std::to_string(r) + "] must be an array");
    std::vector<std::size_t> s;
    for (const json& q : row) {
      if (!q.is_number_unsigned())
        throw InputError(std::string("schema: ") + key + "[" + std::to_string(r) +
                         "] holds a non-index entry");
      const auto v = q.get<std::size_t>();
      if (v >= n)
        throw InputError(std::string("schema: ") + key + "[" + std::to_string(r) + "] index " +
                         std::to_string(v) + " out of range for n = " + std::to_string(n));
      s.push_back(v);
    }
    std::sort(s.begin(), s.end());
    if (std::adjacent_find(s.begin(), s.end()) != s.end())
      throw InputError(std::string("schema: ") + key + "[" + std::to_string(r) + "] repeats a qubit");
    out.push_back(std::move(s));
  }
  return out;
}

}  // namespace

CssCode parse_json(std::string_view text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    throw InputError(std::string("malformed JSON: ") + e.what());
  }
  if (!j.is_object()) throw InputError("schema: top level must be an object");
  if (!j.contains("n") || !j.at("n").is_number_unsigned())
    throw InputError("schema: 'n' must be a non-negative integer");
  const auto n = j.at("n").get<std::size_t>();
  std::string name = "input";
  if (j.contains("name")) {
    if (!j.at("name").is_string()) throw InputError("schema: 'name' must be a string");
    name = j.at("name").get<std::string>();
  }
  return CssCode::make(std::move(name), n, read_checks(j, "hx", n), read_checks(j, "hz", n));
}

std::string to_json(const CssCode& code) {
  json j;
  j["name"] = code.name;
  j["n"] = code.n;
  j["hx"] = code.hx.supports();
  j["hz"] = code.hz.supports();
  return j.dump();
}

CssCode from_matrix_market(std::istream& hx, std::istream& hz, std::string name) {
  auto mx = gf2::read_matrix_market(hx);
  auto mz = gf2::read_matrix_market(hz);
  if (mx.cols() != mz.cols())
    throw InputError("matrix market: hx has " + std::to_string(mx.cols()) + " columns, hz has " +
                     std::to_string(mz.cols()));
  return CssCode::make(std::move(name), mx.cols(), mx.supports(), mz.supports());
}

std::string content_hash(const CssCode& code) { return sha256_hex(to_json(code)); }

}  // namespace lc::css
