// Copyright 2026 The freeshift Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "freeshift/json_io.hpp"

#include <charconv>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace freeshift {
namespace {

// Builds the DOM as usual but stores non-integer numbers as their lexeme.
class LexemeSax {
 public:
  explicit LexemeSax(Json& root) : dom_(root) {}

  bool null() { return dom_.null(); }
  bool boolean(bool v) { return dom_.boolean(v); }
  bool number_integer(Json::number_integer_t v) { return dom_.number_integer(v); }
  bool number_unsigned(Json::number_unsigned_t v) { return dom_.number_unsigned(v); }
  bool number_float(Json::number_float_t, const Json::string_t& lexeme) {
    Json::string_t copy = lexeme;
    return dom_.string(copy);
  }
  bool string(Json::string_t& v) { return dom_.string(v); }
  bool binary(Json::binary_t& v) { return dom_.binary(v); }
  bool start_object(std::size_t n) { return dom_.start_object(n); }
  bool key(Json::string_t& v) { return dom_.key(v); }
  bool end_object() { return dom_.end_object(); }
  bool start_array(std::size_t n) { return dom_.start_array(n); }
  bool end_array() { return dom_.end_array(); }
  bool parse_error(std::size_t pos, const std::string& token,
                   const nlohmann::detail::exception& ex) {
    return dom_.parse_error(pos, token, ex);
  }

 private:
  nlohmann::detail::json_sax_dom_parser<Json> dom_;
};

[[noreturn]] void fail(const std::string& what) { throw std::invalid_argument(what); }

const Json& field(const Json& j, const char* name) {
  if (!j.is_object() || !j.contains(name)) fail(std::string("missing field \"") + name + "\"");
  return j.at(name);
}

int json_int(const Json& v, const char* what) {
  if (!v.is_number_integer()) fail(std::string(what) + " must be an integer");
  return v.get<int>();
}

GroupElement element_from_json(const Json& v, int rank) {
  if (!v.is_string()) fail("group elements must be strings");
  GroupElement g = parse_element(v.get<std::string>());
  if (rank > 0 && g.max_generator() > rank) {
    fail("element " + v.get<std::string>() + " uses a generator beyond rank " +
         std::to_string(rank));
  }
  return g;
}

Json tree_to_json(std::span<const AdaptiveNode> nodes, std::size_t i) {
  const AdaptiveNode& node = nodes[i];
  if (node.leaf) return Json{{"leaf", *node.leaf}};
  Json children = Json::array();
  for (std::size_t c : node.children) children.push_back(tree_to_json(nodes, c));
  return Json{{"query", to_string(node.query)}, {"children", children}};
}

std::size_t tree_from_json(const Json& j, int rank, std::vector<AdaptiveNode>& nodes,
                           int depth) {
  if (depth > 10'000) fail("adaptive tree too deep");
  const std::size_t index = nodes.size();
  nodes.emplace_back();
  if (j.contains("leaf")) {
    nodes[index].leaf = json_int(j.at("leaf"), "leaf");
    return index;
  }
  nodes[index].query = element_from_json(field(j, "query"), rank);
  const Json& children = field(j, "children");
  if (!children.is_array()) fail("\"children\" must be an array");
  std::vector<std::size_t> kids;
  for (const auto& child : children) kids.push_back(tree_from_json(child, rank, nodes, depth + 1));
  nodes[index].children = std::move(kids);
  return index;
}

std::string csv_double(double v) { return format_double(v); }

}  // namespace

std::string format_double(double v) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, res.ptr);
}

Json parse_json_exact(std::string_view text) {
  Json root;
  LexemeSax sax(root);
  try {
    Json::sax_parse(text.begin(), text.end(), &sax);
  } catch (const nlohmann::json::exception& e) {
    fail(std::string("malformed JSON: ") + e.what());
  }
  return root;
}

Json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) fail("cannot open " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_json_exact(buf.str());
}

Rational json_rational(const Json& v) {
  if (v.is_number_integer()) {
    return v.is_number_unsigned() ? Rational(v.get<std::uint64_t>())
                                  : Rational(v.get<std::int64_t>());
  }
  if (v.is_number_float()) return Rational(v.get<double>());
  if (v.is_string()) return parse_decimal(v.get<std::string>());
  fail("expected a number");
}

double json_double(const Json& v) { return static_cast<double>(json_rational(v)); }

ProbVector prob_vector_from_json(const Json& j) {
  const Json& arr = j.is_array() ? j : field(j, "p");
  if (!arr.is_array() || arr.empty()) fail("\"p\" must be a non-empty array");
  std::vector<Rational> weights;
  weights.reserve(arr.size());
  for (const auto& v : arr) weights.push_back(json_rational(v));
  return ProbVector::from_rationals(std::move(weights));
}

Json to_json(const ProbVector& p) {
  Json arr = Json::array();
  for (double w : p.weights()) arr.push_back(w);
  return Json{{"p", arr}};
}

Pattern pattern_from_json(const Json& j, int rank) {
  const Json& arr = j.is_array() ? j : field(j, "assign");
  if (!arr.is_array()) fail("\"assign\" must be an array");
  Pattern out;
  for (const auto& pair : arr) {
    if (!pair.is_array() || pair.size() != 2) fail("assignments are [element, symbol] pairs");
    const GroupElement g = element_from_json(pair[0], rank);
    if (out.contains(g)) fail("element " + to_string(g) + " assigned twice");
    out.set(g, json_int(pair[1], "symbol"));
  }
  return out;
}

Json to_json(const Pattern& c) {
  Json arr = Json::array();
  for (const auto& [g, s] : c) arr.push_back(Json::array({to_string(g), s}));
  return Json{{"assign", arr}};
}

LocalAutomorphism automorphism_from_json(const Json& j, int rank) {
  const Json& arr = field(j, "swaps");
  if (!arr.is_array()) fail("\"swaps\" must be an array");
  std::vector<std::pair<GroupElement, GroupElement>> swaps;
  for (const auto& pair : arr) {
    if (!pair.is_array() || pair.size() != 2) fail("swaps are [element, element] pairs");
    swaps.emplace_back(element_from_json(pair[0], rank), element_from_json(pair[1], rank));
  }
  return LocalAutomorphism::from_swaps(swaps);
}

Json to_json(const LocalAutomorphism& v) {
  Json arr = Json::array();
  for (const auto& [g, h] : v.swaps()) arr.push_back(Json::array({to_string(g), to_string(h)}));
  return Json{{"swaps", arr}};
}

FinitaryCode code_from_json(const Json& j, int rank) {
  if (j.contains("ell")) rank = json_int(j.at("ell"), "ell");
  if (rank < 1) fail("rank must be >= 1");
  const Json& kind_field = field(j, "kind");
  if (!kind_field.is_string()) fail("\"kind\" must be a string");
  const std::string kind = kind_field.get<std::string>();

  if (kind == "permutation") {
    std::vector<Symbol> perm;
    for (const auto& v : field(j, "perm")) perm.push_back(json_int(v, "perm entry"));
    return FinitaryCode::symbol_permutation(rank, perm);
  }
  const int m = json_int(field(j, "m"), "m");
  const int n = json_int(field(j, "n"), "n");
  if (kind == "fixed") {
    const int r = json_int(field(j, "r"), "r");
    FinitaryCode::Table table;
    const Json& entries = field(j, "table");
    if (!entries.is_array()) fail("\"table\" must be an array");
    for (const auto& entry : entries) {
      if (!entry.is_array() || entry.size() != 2 || !entry[0].is_array()) {
        fail("table entries are [[window symbols], output]");
      }
      std::vector<Symbol> window;
      for (const auto& s : entry[0]) window.push_back(json_int(s, "window symbol"));
      if (!table.emplace(std::move(window), json_int(entry[1], "output")).second) {
        fail("duplicate window in table");
      }
    }
    std::optional<Symbol> fallback;
    if (j.contains("default")) fallback = json_int(j.at("default"), "default");
    return FinitaryCode::fixed_radius(rank, m, n, r, table, fallback);
  }
  if (kind == "adaptive") {
    std::vector<AdaptiveNode> nodes;
    tree_from_json(field(j, "tree"), rank, nodes, 0);
    return FinitaryCode::adaptive(rank, m, n, std::move(nodes));
  }
  fail("unknown code kind \"" + kind + "\"");
}

Json to_json(const FinitaryCode& code) {
  Json out{{"ell", code.rank()}, {"m", code.source_alphabet()}, {"n", code.target_alphabet()}};
  if (code.kind() == FinitaryCode::Kind::kAdaptive) {
    out["kind"] = "adaptive";
    out["tree"] = tree_to_json(code.nodes(), 0);
    return out;
  }
  out["kind"] = "fixed";
  out["r"] = code.max_radius();
  Json table = Json::array();
  for (const auto& [window, sym] : code.table_entries()) {
    table.push_back(Json::array({window, sym}));
  }
  out["table"] = table;
  if (code.fallback()) out["default"] = *code.fallback();
  return out;
}

Json to_json(const CodeStats& stats) {
  Json out;
  out["mode"] = stats.mode == StatsMode::kExact ? "exact" : "monte_carlo";
  out["samples"] = stats.samples;
  out["v_mean"] = stats.v_mean;
  out["minimal"] = stats.minimal;
  Json tail = Json::array();
  for (const auto& [n, mass] : stats.tail) tail.push_back(Json::array({n, mass}));
  out["tail"] = tail;
  if (stats.horizon) {
    out["horizon"] = *stats.horizon;
    Json m = Json::array();
    for (const auto& [v, c] : stats.m_phi_hist) m.push_back(Json::array({v, c}));
    Json a = Json::array();
    for (const auto& [v, c] : stats.a_phi_hist) a.push_back(Json::array({v, c}));
    out["m_phi_hist"] = m;
    out["a_phi_hist"] = a;
    out["m_phi_unbounded"] = stats.m_phi_unbounded;
    out["a_phi_unbounded"] = stats.a_phi_unbounded;
  }
  return out;
}

std::string to_csv(const CodeStats& stats) {
  std::string out = "n,tail_n,cumulative\n";
  double cumulative = 0.0;
  for (const auto& [n, mass] : stats.tail) {
    cumulative += mass;
    out += std::to_string(n) + "," + csv_double(mass) + "," + csv_double(cumulative) + "\n";
  }
  return out;
}

Json to_json(const BetaEvaluation& eval) {
  Json out{{"t", eval.t}, {"closed", eval.closed_form}};
  Json limit = Json::array();
  for (const auto& [n, v] : eval.limit_exact) limit.push_back(Json{{"n", n}, {"value", v}});
  out["limit_exact"] = limit;
  if (eval.mc) {
    out["mc"] = Json{{"n", eval.mc->n},
                     {"estimate", eval.mc->estimate},
                     {"stderr", eval.mc->std_error},
                     {"samples", eval.mc->samples}};
  }
  return out;
}

std::string beta_csv_header() { return "t,closed,limit_n,mc,stderr\n"; }

std::string to_csv_row(const BetaEvaluation& eval) {
  const std::string limit = eval.limit_exact.empty() ? "" : csv_double(eval.limit_exact.back().second);
  const std::string mc = eval.mc ? csv_double(eval.mc->estimate) : "";
  const std::string se = eval.mc ? csv_double(eval.mc->std_error) : "";
  return csv_double(eval.t) + "," + csv_double(eval.closed_form) + "," + limit + "," + mc + "," +
         se + "\n";
}

RecoverRequest recover_request_from_json(const Json& j) {
  const Json& arr = field(j, "power_sums");
  if (!arr.is_array() || arr.empty()) fail("\"power_sums\" must be a non-empty array");
  std::vector<Rational> sums;
  for (const auto& v : arr) sums.push_back(json_rational(v));
  const int m = json_int(field(j, "m"), "m");
  if (m < 1) fail("m must be >= 1");
  return {PowerSums(std::move(sums)), static_cast<std::size_t>(m)};
}

Json to_json(const RecoveredVector& r) {
  Json arr = Json::array();
  for (double v : r.entries) arr.push_back(v);
  return Json{{"vector", arr}, {"iterations", r.iterations}, {"clustered", r.clustered}};
}

}  // namespace freeshift
