#pragma once

// JSON file formats.
//
//   family       {"n": 3, "maximal": [[0,1],[1,2]]}  or  {"spec": {"kind": ..., ...}}
//   certificate  {"delta": "p/q", "primal": {"label": "p/q"}, "dual": {"maximal_index": "p/q"}}
//   vector       {"coords": ["p/q", ...]}
//   system       {"n": 2, "sets": [[["0/1","1/2"]], [["1/4","3/4"]]]}
//
// Rationals are written as reduced "p/q" strings. Certificates list only the
// nonzero weights; absent keys read back as zero.

#include "ptakkit/family.hpp"
#include "ptakkit/family_spec.hpp"
#include "ptakkit/game_value.hpp"
#include "ptakkit/interval.hpp"
#include "ptakkit/norm.hpp"
#include "ptakkit/rational.hpp"

#include <json.hpp>

#include <fstream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

namespace ptakkit::io {

using Json = nlohmann::ordered_json;

// Malformed input; the message names the offending field.
class FormatError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

namespace detail {

[[noreturn]] inline void fail(const std::string& field, const std::string& what) {
  throw FormatError("field '" + field + "': " + what);
}

inline const Json& require(const Json& j, const char* key, const std::string& path) {
  if (!j.is_object()) fail(path, "expected an object");
  auto it = j.find(key);
  if (it == j.end()) fail(path.empty() ? key : path + "." + key, "missing");
  return *it;
}

inline std::string join(const std::string& path, const std::string& key) {
  return path.empty() ? key : path + "." + key;
}

inline int as_int(const Json& j, const std::string& path) {
  if (!j.is_number_integer()) fail(path, "expected an integer");
  const auto v = j.get<long long>();
  if (v < INT32_MIN || v > INT32_MAX) fail(path, "integer out of range");
  return static_cast<int>(v);
}

inline Rational as_rational(const Json& j, const std::string& path) {
  try {
    if (j.is_string()) return parse_rational(j.get<std::string>());
    if (j.is_number_integer()) return Rational(j.get<long>());
  } catch (const std::invalid_argument& e) {
    fail(path, e.what());
  }
  fail(path, "expected a rational string \"p/q\"");
}

inline ElementSet as_set(const Json& j, int n, const std::string& path) {
  if (!j.is_array()) fail(path, "expected an array of labels");
  ElementSet out;
  for (std::size_t i = 0; i < j.size(); ++i) {
    const std::string p = path + "[" + std::to_string(i) + "]";
    const int s = as_int(j[i], p);
    if (s < 0 || s >= n) fail(p, "label " + std::to_string(s) + " out of range for n=" + std::to_string(n));
    out.insert(s);
  }
  return out;
}

inline int as_ground_size(const Json& j, const std::string& path) {
  const int n = as_int(j, path);
  if (n < 1 || n > kMaxGroundSize) fail(path, "n must be in [1, " + std::to_string(kMaxGroundSize) + "]");
  return n;
}

inline std::vector<Edge> as_edges(const Json& j, int n, const std::string& path) {
  if (!j.is_array()) fail(path, "expected an array of [u, v] pairs");
  std::vector<Edge> edges;
  for (std::size_t i = 0; i < j.size(); ++i) {
    const std::string p = path + "[" + std::to_string(i) + "]";
    if (!j[i].is_array() || j[i].size() != 2) fail(p, "expected [u, v]");
    const int u = as_int(j[i][0], p + "[0]");
    const int v = as_int(j[i][1], p + "[1]");
    if (u < 0 || u >= n || v < 0 || v >= n) fail(p, "edge endpoint out of range for n=" + std::to_string(n));
    edges.emplace_back(u, v);
  }
  return edges;
}

inline Json set_json(ElementSet e) { return Json(e.labels()); }

}  // namespace detail

inline Json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw FormatError("cannot open '" + path + "'");
  try {
    return Json::parse(in);
  } catch (const Json::parse_error& e) {
    throw FormatError("'" + path + "': " + e.what());
  }
}

inline Json parse_json_text(const std::string& text) {
  try {
    return Json::parse(text);
  } catch (const Json::parse_error& e) {
    throw FormatError(e.what());
  }
}

// ---- interval systems ----

inline Json system_to_json(const IntervalSystem& sys) {
  Json sets = Json::array();
  for (const auto& c : sys.sets) {
    Json pieces = Json::array();
    for (const auto& p : c.pieces()) pieces.push_back(Json::array({to_string(p.lo), to_string(p.hi)}));
    sets.push_back(std::move(pieces));
  }
  return Json{{"n", sys.n()}, {"sets", std::move(sets)}};
}

inline IntervalSystem system_from_json(const Json& j, const std::string& path = "") {
  using namespace detail;
  const int n = as_ground_size(require(j, "n", path), join(path, "n"));
  const Json& sets = require(j, "sets", path);
  const std::string sets_path = join(path, "sets");
  if (!sets.is_array()) fail(sets_path, "expected an array");
  if (static_cast<int>(sets.size()) != n) {
    fail(sets_path, "has " + std::to_string(sets.size()) + " entries, expected n=" + std::to_string(n));
  }
  IntervalSystem sys;
  for (std::size_t s = 0; s < sets.size(); ++s) {
    const std::string sp = sets_path + "[" + std::to_string(s) + "]";
    if (!sets[s].is_array()) fail(sp, "expected an array of [a, b] pieces");
    std::vector<Interval> pieces;
    for (std::size_t i = 0; i < sets[s].size(); ++i) {
      const std::string pp = sp + "[" + std::to_string(i) + "]";
      const Json& piece = sets[s][i];
      if (!piece.is_array() || piece.size() != 2) fail(pp, "expected [a, b]");
      pieces.push_back({as_rational(piece[0], pp + "[0]"), as_rational(piece[1], pp + "[1]")});
    }
    try {
      sys.sets.push_back(IntervalSet::normalized(std::move(pieces)));
    } catch (const std::invalid_argument& e) {
      fail(sp, e.what());
    }
  }
  return sys;
}

// ---- families ----

inline Json family_to_json(const HereditaryFamily& fam) {
  Json maximal = Json::array();
  for (ElementSet f : fam.maximal()) maximal.push_back(detail::set_json(f));
  return Json{{"n", fam.n()}, {"maximal", std::move(maximal)}};
}

inline FamilySpec spec_from_json(const Json& j, const std::string& path = "spec") {
  using namespace detail;
  const Json& kind_json = require(j, "kind", path);
  if (!kind_json.is_string()) fail(join(path, "kind"), "expected a string");
  const std::string kind = kind_json.get<std::string>();

  if (kind == "interval_trace") {
    return spec::IntervalTrace{system_from_json(require(j, "system", path), join(path, "system"))};
  }
  const int n = as_ground_size(require(j, "n", path), join(path, "n"));
  if (kind == "explicit") {
    const Json& sets = require(j, "sets", path);
    if (!sets.is_array()) fail(join(path, "sets"), "expected an array");
    spec::Explicit e{n, {}};
    for (std::size_t i = 0; i < sets.size(); ++i) {
      e.sets.push_back(as_set(sets[i], n, join(path, "sets") + "[" + std::to_string(i) + "]"));
    }
    return e;
  }
  if (kind == "cardinality_bound") {
    const int k = as_int(require(j, "k", path), join(path, "k"));
    if (k < 0 || k > n) fail(join(path, "k"), "need 0 <= k <= n");
    return spec::CardinalityBound{n, k};
  }
  if (kind == "graph_cliques") {
    return spec::GraphCliques{n, as_edges(require(j, "edges", path), n, join(path, "edges"))};
  }
  if (kind == "graph_independent") {
    return spec::GraphIndependent{n, as_edges(require(j, "edges", path), n, join(path, "edges"))};
  }
  fail(join(path, "kind"), "unknown kind '" + kind + "'");
}

inline Json spec_to_json(const FamilySpec& fs) {
  struct Visitor {
    Json operator()(const spec::Explicit& e) const {
      Json sets = Json::array();
      for (ElementSet s : e.sets) sets.push_back(detail::set_json(s));
      return Json{{"kind", "explicit"}, {"n", e.n}, {"sets", std::move(sets)}};
    }
    Json operator()(const spec::CardinalityBound& c) const {
      return Json{{"kind", "cardinality_bound"}, {"n", c.n}, {"k", c.k}};
    }
    static Json edges(const std::vector<Edge>& es) {
      Json out = Json::array();
      for (auto [u, v] : es) out.push_back(Json::array({u, v}));
      return out;
    }
    Json operator()(const spec::GraphCliques& g) const {
      return Json{{"kind", "graph_cliques"}, {"n", g.n}, {"edges", edges(g.edges)}};
    }
    Json operator()(const spec::GraphIndependent& g) const {
      return Json{{"kind", "graph_independent"}, {"n", g.n}, {"edges", edges(g.edges)}};
    }
    Json operator()(const spec::IntervalTrace& t) const {
      return Json{{"kind", "interval_trace"}, {"system", system_to_json(t.system)}};
    }
  };
  return std::visit(Visitor{}, fs);
}

inline HereditaryFamily family_from_json(const Json& j) {
  using namespace detail;
  if (!j.is_object()) fail("", "family file must be a JSON object");
  if (j.contains("spec")) return realize(spec_from_json(j["spec"]));
  const int n = as_ground_size(require(j, "n", ""), "n");
  const Json& maximal = require(j, "maximal", "");
  if (!maximal.is_array()) fail("maximal", "expected an array of label arrays");
  std::vector<ElementSet> sets;
  for (std::size_t i = 0; i < maximal.size(); ++i) {
    sets.push_back(as_set(maximal[i], n, "maximal[" + std::to_string(i) + "]"));
  }
  return HereditaryFamily::closure(std::move(sets), GroundSet(n));
}

// ---- certificates ----

inline Json certificate_to_json(const GameValueResult& res) {
  Json primal = Json::object();
  for (std::size_t s = 0; s < res.primal.size(); ++s) {
    if (res.primal[s] != 0) primal[std::to_string(s)] = to_string(res.primal[s]);
  }
  Json dual = Json::object();
  for (std::size_t i = 0; i < res.dual.size(); ++i) {
    if (res.dual[i] != 0) dual[std::to_string(i)] = to_string(res.dual[i]);
  }
  return Json{{"delta", to_string(res.delta)}, {"primal", std::move(primal)}, {"dual", std::move(dual)}};
}

// Reads a certificate against `fam`; keys must be in range. Values are not
// validated here (that is verify_certificate's job).
inline GameValueResult certificate_from_json(const Json& j, const HereditaryFamily& fam) {
  using namespace detail;
  GameValueResult res;
  res.delta = as_rational(require(j, "delta", ""), "delta");
  auto read_map = [&](const char* key, std::size_t size) {
    const Json& obj = require(j, key, "");
    if (!obj.is_object()) fail(key, "expected an object of index -> \"p/q\"");
    std::vector<Rational> out(size);
    for (auto it = obj.begin(); it != obj.end(); ++it) {
      const std::string field = std::string(key) + "." + it.key();
      std::size_t idx = 0;
      try {
        std::size_t used = 0;
        idx = std::stoul(it.key(), &used);
        if (used != it.key().size()) throw std::invalid_argument("trailing text");
      } catch (const std::exception&) {
        fail(field, "key is not a nonnegative integer");
      }
      if (idx >= size) fail(field, "index out of range (size " + std::to_string(size) + ")");
      out[idx] = as_rational(it.value(), field);
    }
    return out;
  };
  res.primal = read_map("primal", static_cast<std::size_t>(fam.n()));
  res.dual = read_map("dual", fam.maximal().size());
  return res;
}

// ---- vectors ----

inline Json vector_to_json(const FamilyVector& x) {
  Json coords = Json::array();
  for (const auto& c : x.coords) coords.push_back(to_string(c));
  return Json{{"coords", std::move(coords)}};
}

inline FamilyVector vector_from_json(const Json& j) {
  using namespace detail;
  const Json& coords = require(j, "coords", "");
  if (!coords.is_array()) fail("coords", "expected an array");
  FamilyVector x;
  for (std::size_t i = 0; i < coords.size(); ++i) {
    x.coords.push_back(as_rational(coords[i], "coords[" + std::to_string(i) + "]"));
  }
  return x;
}

inline std::string dump(const Json& j) { return j.dump(2) + "\n"; }

}  // namespace ptakkit::io
