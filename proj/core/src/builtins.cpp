#include <algorithm>
#include <map>
#include <regex>
#include <tuple>

#include "layercode/css.hpp"

namespace lc::css {

namespace {

using Supports = std::vector<std::vector<std::size_t>>;

CssCode repetition(std::size_t m) {
  if (m < 2) throw InputError("rep(m) needs m >= 2");
  Supports hz;
  for (std::size_t i = 0; i + 1 < m; ++i) hz.push_back({i, i + 1});
  return CssCode::make("rep" + std::to_string(m), m, {}, hz);
}

CssCode c422() { return CssCode::make("c422", 4, {{0, 1, 2, 3}}, {{0, 1, 2, 3}}); }

CssCode shor() {
  return CssCode::make("shor", 9, {{0, 1, 2, 3, 4, 5}, {3, 4, 5, 6, 7, 8}},
                       {{0, 1}, {1, 2}, {3, 4}, {4, 5}, {6, 7}, {7, 8}});
}

CssCode steane() {
  const Supports h = {{0, 2, 4, 6}, {1, 2, 5, 6}, {3, 4, 5, 6}};
  return CssCode::make("steane", 7, h, h);
}

std::size_t parse_size(const std::string& s) {
  try {
    const auto v = std::stoul(s);
    if (v > 64) throw InputError("built-in size " + s + " is too large");
    return v;
  } catch (const std::logic_error&) {
    throw InputError("bad built-in size '" + s + "'");
  }
}

}  // namespace

// Cells of the patch live at integer points: X checks at (even x, even z),
// qubits at mixed parity, Z checks at (odd x, odd z). x runs 0..2a with
// vertex-terminated (smooth) ends, z runs 1..2b-1 with edge-terminated ends.
CssCode planar_patch(std::size_t a, std::size_t b, std::string name) {
  if (a == 0 || b == 0) throw InputError("planar patch needs a, b >= 1");
  const long X = 2 * static_cast<long>(a), Z = 2 * static_cast<long>(b);
  std::map<std::pair<long, long>, std::size_t> qid;  // (z, x) order
  for (long z = 1; z <= Z - 1; ++z)
    for (long x = 0; x <= X; ++x)
      if ((x + z) % 2 == 1) {
        if (z % 2 == 0 && (z < 2 || z > Z - 2)) continue;
        qid.emplace(std::pair{z, x}, 0);
      }
  std::size_t next = 0;
  for (auto& [k, v] : qid) v = next++;
  auto at = [&](long x, long z, std::vector<std::size_t>& out) {
    auto it = qid.find({z, x});
    if (it != qid.end()) out.push_back(it->second);
  };
  Supports hx, hz;
  for (long z = 2; z <= Z - 2; z += 2)
    for (long x = 0; x <= X; x += 2) {
      std::vector<std::size_t> s;
      at(x - 1, z, s), at(x + 1, z, s), at(x, z - 1, s), at(x, z + 1, s);
      std::sort(s.begin(), s.end());
      hx.push_back(s);
    }
  for (long z = 1; z <= Z - 1; z += 2)
    for (long x = 1; x <= X - 1; x += 2) {
      std::vector<std::size_t> s;
      at(x - 1, z, s), at(x + 1, z, s), at(x, z - 1, s), at(x, z + 1, s);
      std::sort(s.begin(), s.end());
      hz.push_back(s);
    }
  return CssCode::make(std::move(name), next, hx, hz);
}

CssCode builtin(std::string_view name) {
  static const std::regex rep_re(R"(rep\(?(\d+)\)?)"), surf_re(R"(surface\(?(\d+)\)?)");
  const std::string s(name);
  std::smatch m;
  if (std::regex_match(s, m, rep_re)) return repetition(parse_size(m[1]));
  if (std::regex_match(s, m, surf_re)) {
    const auto L = parse_size(m[1]);
    if (L < 2) throw InputError("surface(L) needs L >= 2");
    return planar_patch(L - 1, L, "surface" + std::to_string(L));
  }
  if (s == "c422" || s == "422") return c422();
  if (s == "shor") return shor();
  if (s == "steane") return steane();
  throw InputError("unknown built-in '" + s + "' (known: rep(m), c422, shor, steane, surface(L))");
}

std::vector<std::string> builtin_names() { return {"rep3", "c422", "shor", "steane"}; }

}  // namespace lc::css
