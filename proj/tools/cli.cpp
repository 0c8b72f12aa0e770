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

#include "cli.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <optional>
#include <ostream>
#include <sstream>
#include <stdexcept>

#include <CLI11.hpp>

#include "freeshift/freeshift.hpp"

namespace freeshift::cli {
namespace {

constexpr const char* kCsvSchemas =
    "CSV schemas (v1):\n"
    "  ball            radius,count,closed_form\n"
    "  enum-wa         k,element,length\n"
    "  code-stats      n,tail_n,cumulative\n"
    "  beta            t,closed,limit_n,mc,stderr\n"
    "  restricted-beta t,n,value,log_gap,gap_ratio\n"
    "  pressure        t,pressure,exp_pressure,beta_closed\n"
    "  power-sums      k,value,exact\n"
    "  recover         i,value\n"
    "Exit codes: 0 success, 2 invalid input, 3 numeric failure or failed check.\n";

// Raised when a verification subcommand finds a violated check.
class CheckFailed : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct Globals {
  std::string p_file;
  std::string q_file;
  int ell = 2;
  int gen = 1;
  std::uint64_t seed = 0;
  std::string n_list;
  std::optional<std::uint64_t> samples;
  std::string t_list;
  std::optional<int> horizon;
  std::uint64_t cap = kDefaultCardinalityCap;
  std::string format = "json";
  unsigned workers = 1;

  bool csv() const { return format == "csv"; }
};

std::vector<std::string> split(const std::string& text, char sep) {
  std::vector<std::string> out;
  std::string cur;
  for (char c : text) {
    if (c == sep) {
      out.push_back(cur);
      cur.clear();
    } else if (c != ' ') {
      cur.push_back(c);
    }
  }
  out.push_back(cur);
  return out;
}

std::vector<double> parse_doubles(const std::string& text, const char* what) {
  std::vector<double> out;
  for (const auto& tok : split(text, ',')) {
    if (tok.empty()) throw std::invalid_argument(std::string("empty entry in ") + what);
    out.push_back(static_cast<double>(parse_decimal(tok)));
  }
  return out;
}

std::vector<int> parse_ints(const std::string& text, const char* what) {
  std::vector<int> out;
  for (const auto& tok : split(text, ',')) {
    std::size_t used = 0;
    int v = 0;
    try {
      v = std::stoi(tok, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (tok.empty() || used != tok.size()) {
      throw std::invalid_argument(std::string("bad integer \"") + tok + "\" in " + what);
    }
    out.push_back(v);
  }
  return out;
}

ProbVector load_vector(const std::string& path, const char* flag) {
  if (path.empty()) throw std::invalid_argument(std::string(flag) + " is required");
  return prob_vector_from_json(read_json_file(path));
}

void require_generator(const Globals& g) {
  if (g.gen < 1 || g.gen > g.ell) {
    throw std::invalid_argument("--gen must lie in 1..--ell");
  }
}

void emit(std::ostream& out, const Json& j) { out << j.dump(2) << "\n"; }

Json vector_json(const ProbVector& p) { return to_json(p).at("p"); }

std::string rational_text(const Rational& r) {
  std::ostringstream s;
  s << r;
  return s.str();
}

// "ln k" when e^h is an integer k >= 2, the number otherwise.
std::string describe_entropy(double h) {
  const double k = std::round(std::exp(h));
  if (k >= 2 && std::abs(std::log(k) - h) <= 1e-12) {
    return "ln " + std::to_string(static_cast<long long>(k));
  }
  return format_double(h);
}

// A 1-based permutation from "2,1,3" or cycle notation such as "(2 3)".
std::vector<Symbol> parse_permutation(const std::string& text, std::size_t m) {
  std::vector<Symbol> perm(m);
  for (std::size_t i = 0; i < m; ++i) perm[i] = static_cast<Symbol>(i + 1);
  if (text.empty() || text == "id" || text == "()") return perm;
  if (text.front() == '(') {
    std::size_t pos = 0;
    while (pos < text.size()) {
      if (text[pos] != '(') throw std::invalid_argument("bad cycle notation: " + text);
      const std::size_t close = text.find(')', pos);
      if (close == std::string::npos) throw std::invalid_argument("unclosed cycle: " + text);
      std::string body = text.substr(pos + 1, close - pos - 1);
      std::replace(body.begin(), body.end(), ' ', ',');
      std::vector<int> cycle;
      for (const auto& tok : split(body, ',')) {
        if (!tok.empty()) cycle.push_back(parse_ints(tok, "cycle")[0]);
      }
      for (int c : cycle) {
        if (c < 1 || static_cast<std::size_t>(c) > m) {
          throw std::invalid_argument("cycle entry out of range: " + std::to_string(c));
        }
      }
      // The cycle (c1 c2 ... ck) sends c_i to c_{i+1}; compose left to right.
      std::vector<Symbol> step(m);
      for (std::size_t i = 0; i < m; ++i) step[i] = static_cast<Symbol>(i + 1);
      for (std::size_t i = 0; i < cycle.size(); ++i) {
        step[static_cast<std::size_t>(cycle[i] - 1)] = cycle[(i + 1) % cycle.size()];
      }
      for (auto& v : perm) v = step[static_cast<std::size_t>(v - 1)];
      pos = close + 1;
      while (pos < text.size() && text[pos] == ' ') ++pos;
    }
  } else {
    const auto values = parse_ints(text, "--perm");
    if (values.size() != m) {
      throw std::invalid_argument("--perm must list " + std::to_string(m) + " entries");
    }
    perm.assign(values.begin(), values.end());
  }
  std::vector<bool> seen(m, false);
  for (Symbol s : perm) {
    if (s < 1 || static_cast<std::size_t>(s) > m || seen[static_cast<std::size_t>(s - 1)]) {
      throw std::invalid_argument("not a permutation of 1.." + std::to_string(m) + ": " + text);
    }
    seen[static_cast<std::size_t>(s - 1)] = true;
  }
  return perm;
}

// ---------------------------------------------------------------------------
// Subcommands.

int cmd_ball(const Globals& g, int radius, std::ostream& out) {
  if (radius < 0) throw std::invalid_argument("--radius must be >= 0");
  if (ball_size(g.ell, radius) > g.cap) {
    throw CapacityError("ball of radius " + std::to_string(radius) + " exceeds --cap");
  }
  const Ball b = ball(g.ell, radius, g.cap);
  std::vector<std::uint64_t> counts(static_cast<std::size_t>(radius) + 1, 0);
  for (const auto& e : b.elements) ++counts[e.length()];
  std::uint64_t running = 0;
  if (g.csv()) {
    out << "radius,count,closed_form\n";
    for (int r = 0; r <= radius; ++r) {
      running += counts[static_cast<std::size_t>(r)];
      out << r << "," << running << "," << ball_size(g.ell, r) << "\n";
    }
    return kExitOk;
  }
  const std::uint64_t closed = ball_size(g.ell, radius);
  emit(out, Json{{"ell", g.ell},
                 {"radius", radius},
                 {"count", b.elements.size()},
                 {"closed_form", closed},
                 {"match", b.elements.size() == closed},
                 {"sphere_counts", counts}});
  return kExitOk;
}

int cmd_enum_wa(const Globals& g, std::uint64_t count, bool complement, std::ostream& out) {
  require_generator(g);
  const auto elems = complement ? enumerate_wa_complement(g.ell, count, g.gen, g.cap)
                                : enumerate_wa(g.ell, count, g.gen, g.cap);
  if (g.csv()) {
    out << "k,element,length\n";
    for (std::size_t i = 0; i < elems.size(); ++i) {
      out << i + 1 << "," << to_string(elems[i]) << "," << elems[i].length() << "\n";
    }
    return kExitOk;
  }
  Json list = Json::array();
  for (const auto& e : elems) list.push_back(to_string(e));
  emit(out, Json{{"ell", g.ell}, {"gen", g.gen}, {"complement", complement}, {"elements", list}});
  return kExitOk;
}

int cmd_check_bounds(const Globals& g, std::uint64_t count, std::ostream& out) {
  require_generator(g);
  if (g.ell < 2) throw std::invalid_argument("check-bounds needs --ell >= 2");
  const auto report = check_enumeration_bound(g.ell, count, g.gen, g.cap);
  Json j{{"ell", g.ell},
         {"gen", g.gen},
         {"checked", report.checked},
         {"wa_holds", report.wa_holds},
         {"complement_holds", report.complement_holds}};
  if (report.first_wa_violation) j["first_wa_violation"] = *report.first_wa_violation;
  if (report.first_complement_violation) {
    j["first_complement_violation"] = *report.first_complement_violation;
  }
  emit(out, j);
  if (!report.holds()) throw CheckFailed("enumeration bound violated");
  return kExitOk;
}

int cmd_code_stats(const Globals& g, const std::string& code_file, bool mc, std::ostream& out) {
  if (code_file.empty()) throw std::invalid_argument("--code is required");
  const ProbVector p = load_vector(g.p_file, "--p");
  const FinitaryCode code = code_from_json(read_json_file(code_file), g.ell);
  if (static_cast<std::size_t>(code.source_alphabet()) != p.size()) {
    throw std::invalid_argument("code source alphabet does not match |p|");
  }
  CodeStatsOptions opt;
  opt.mode = mc ? StatsMode::kMonteCarlo : StatsMode::kExact;
  opt.samples = g.samples.value_or(10'000);
  opt.seed = g.seed;
  opt.horizon = g.horizon;
  opt.generator = g.gen;
  opt.workers = g.workers;
  opt.cap = g.cap;
  if (g.horizon && !mc) throw std::invalid_argument("--horizon needs --mc");
  const CodeStats stats = expected_code_length(code, p, opt);
  if (g.csv()) {
    out << to_csv(stats);
  } else {
    emit(out, to_json(stats));
  }
  return kExitOk;
}

int cmd_cocycle_check(const Globals& g, std::uint64_t trials, int max_shift,
                      const std::string& automorphism_file, std::ostream& out) {
  require_generator(g);
  if (max_shift < 0) throw std::invalid_argument("--max-shift must be >= 0");
  const auto p = std::make_shared<const ProbVector>(load_vector(g.p_file, "--p"));
  const CocycleContext ctx(p, g.gen);
  std::optional<LocalAutomorphism> fixed_v;
  if (!automorphism_file.empty()) {
    fixed_v = automorphism_from_json(read_json_file(automorphism_file), g.ell);
    if (!in_lpa(*fixed_v, g.gen)) {
      throw std::invalid_argument("automorphism is not in L_{p,a}");
    }
  }
  InstanceRng rng(g.seed);
  double cocycle = 0.0;
  double star = 0.0;
  double conjugate = 0.0;
  for (std::uint64_t i = 0; i < trials; ++i) {
    Transformation u = random_transformation(rng, g.ell, g.gen, max_shift);
    Transformation w = random_transformation(rng, g.ell, g.gen, max_shift);
    if (fixed_v) u = Transformation::local(*fixed_v, g.gen);
    cocycle = std::max(cocycle,
                       check_cocycle_identity(ctx, u, w, derive_seed(g.seed, i), 1).max_defect);
    const LocalAutomorphism v =
        fixed_v ? *fixed_v : random_lpa_swaps(rng, g.ell, g.gen, rng.between(1, 3), 2, 4);
    const Configuration x(derive_seed(g.seed ^ 0x5bd1e995ULL, i), p);
    const StarDecomposition s = star_decomposition(ctx, x, v);
    star = std::max(star, std::abs(s.direct - s.via_shifts));
    conjugate = std::max(conjugate, std::abs(s.conjugate));
  }
  const double tol = 1e-10;
  const bool passed = cocycle < tol && star < tol && conjugate < tol;
  emit(out, Json{{"trials", trials},
                 {"max_cocycle_defect", cocycle},
                 {"max_star_defect", star},
                 {"max_conjugate_term", conjugate},
                 {"tolerance", tol},
                 {"passed", passed}});
  if (!passed) throw CheckFailed("cocycle identity defect above tolerance");
  return kExitOk;
}

int cmd_weakmix_check(const Globals& g, int inner, int outer, std::uint64_t pairs,
                      std::ostream& out) {
  require_generator(g);
  const ProbVector p = load_vector(g.p_file, "--p");
  const int m = static_cast<int>(p.size());
  if (ball_size(g.ell, outer) > g.cap) throw CapacityError("B(outer) exceeds --cap");
  const WeakMixPair pair = build_weakmix_pair(g.ell, inner, outer, g.gen, g.cap);
  const LocalAutomorphism h = compose(pair.plus, pair.minus);
  InstanceRng rng(g.seed);
  std::uint64_t equal = 0;
  Json first;
  for (std::uint64_t i = 0; i < pairs; ++i) {
    const Pattern base = random_full_pattern(rng, g.ell, inner, m);
    const Pattern cj = random_refinement(rng, base, g.ell, inner, outer, m);
    const Pattern ck = random_refinement(rng, base, g.ell, inner, outer, m);
    const ProductMeasureCheck c = product_measure_check(p, h, cj, ck, base);
    if (c.equal()) ++equal;
    if (i == 0) first = Json{{"lhs", rational_text(c.lhs)}, {"rhs", rational_text(c.rhs)}};
  }
  const bool passed = equal == pairs;
  emit(out, Json{{"ell", g.ell},
                 {"inner", inner},
                 {"outer", outer},
                 {"pairs", pairs},
                 {"equal", equal},
                 {"h_plus_swaps", pair.plus.support().size() / 2},
                 {"h_minus_swaps", pair.minus.support().size() / 2},
                 {"h_plus_in_hc_plus", in_hc_plus(pair.plus, inner, g.gen)},
                 {"h_minus_in_hc_minus", in_hc_minus(pair.minus, inner, g.gen)},
                 {"first_pair", first},
                 {"passed", passed}});
  if (!passed) throw CheckFailed("product identity failed");
  return kExitOk;
}

int cmd_beta(const Globals& g, bool closed_only, std::optional<int> limit, bool mc,
             std::ostream& out) {
  (void)closed_only;
  const ProbVector p = load_vector(g.p_file, "--p");
  const auto ts = parse_doubles(g.t_list.empty() ? "2" : g.t_list, "--t");
  std::vector<int> ns;
  if (limit) {
    if (*limit < 1) throw std::invalid_argument("--limit must be >= 1");
    ns.push_back(*limit);
  }
  std::optional<BetaMcRequest> req;
  if (mc) {
    BetaMcRequest r;
    r.n = g.n_list.empty() ? 8 : parse_ints(g.n_list, "--n").at(0);
    r.samples = g.samples.value_or(10'000);
    r.seed = g.seed;
    r.workers = g.workers;
    if (r.n < 1 || r.samples < 1) throw std::invalid_argument("--n and --samples must be >= 1");
    req = r;
  }
  if (g.csv()) {
    out << beta_csv_header();
    for (double t : ts) out << to_csv_row(evaluate_beta(p, t, ns, req));
    return kExitOk;
  }
  Json evals = Json::array();
  for (double t : ts) evals.push_back(to_json(evaluate_beta(p, t, ns, req)));
  emit(out, Json{{"p", vector_json(p)}, {"evaluations", evals}});
  return kExitOk;
}

int cmd_restricted_beta(const Globals& g, const std::string& pattern_file, int radius,
                        const std::string& reading_name, std::ostream& out) {
  require_generator(g);
  const ProbVector p = load_vector(g.p_file, "--p");
  const RestrictedReading reading = reading_name == "literal" ? RestrictedReading::kLiteral
                                                              : RestrictedReading::kLimitFormula;
  Pattern d;
  if (!pattern_file.empty()) {
    d = pattern_from_json(read_json_file(pattern_file), g.ell);
  } else {
    if (radius < 0) throw std::invalid_argument("--radius must be >= 0");
    for (int k = -radius; k <= radius; ++k) d.set(GroupElement::generator_power(g.gen, k), 1);
  }
  const auto ts = parse_doubles(g.t_list.empty() ? "0.5" : g.t_list, "--t");
  const auto ns = parse_ints(g.n_list.empty() ? "10,20,40,80" : g.n_list, "--n");
  if (g.csv()) out << "t,n,value,log_gap,gap_ratio\n";
  Json results = Json::array();
  for (double t : ts) {
    const double limit = unrestricted_growth_rate(p, t, reading);
    Json rows = Json::array();
    std::optional<double> prev_gap;
    for (int n : ns) {
      const double v = restricted_growth_rate(p, t, d, n, g.gen, reading);
      const double gap = std::abs(std::log(v) - std::log(limit));
      std::optional<double> ratio;
      if (prev_gap && gap > 0) ratio = *prev_gap / gap;
      prev_gap = gap;
      if (g.csv()) {
        out << format_double(t) << "," << n << "," << format_double(v) << ","
            << format_double(gap) << "," << (ratio ? format_double(*ratio) : "") << "\n";
      }
      Json row{{"n", n}, {"value", v}, {"log_gap", gap}};
      if (ratio) row["gap_ratio"] = *ratio;
      rows.push_back(row);
    }
    results.push_back(Json{{"t", t}, {"limit", limit}, {"rows", rows}});
  }
  if (!g.csv()) {
    emit(out, Json{{"reading", reading == RestrictedReading::kLiteral ? "literal" : "limit"},
                   {"restriction", to_json(d).at("assign")},
                   {"results", results}});
  }
  return kExitOk;
}

int cmd_pressure(const Globals& g, std::ostream& out) {
  const ProbVector p = load_vector(g.p_file, "--p");
  const auto ts = parse_doubles(g.t_list.empty() ? "0,1,2" : g.t_list, "--t");
  if (g.csv()) out << "t,pressure,exp_pressure,beta_closed\n";
  Json rows = Json::array();
  for (double t : ts) {
    const double pr = pressure_single_coordinate(p, t);
    const double b = beta_closed(p, t);
    if (g.csv()) {
      out << format_double(t) << "," << format_double(pr) << "," << format_double(std::exp(pr))
          << "," << format_double(b) << "\n";
    }
    rows.push_back(Json{{"t", t}, {"pressure", pr}, {"exp_pressure", std::exp(pr)},
                        {"beta_closed", b}});
  }
  if (!g.csv()) emit(out, Json{{"p", vector_json(p)}, {"rows", rows}});
  return kExitOk;
}

int cmd_power_sums(const Globals& g, std::optional<int> k, std::ostream& out) {
  const ProbVector p = load_vector(g.p_file, "--p");
  const int count = k.value_or(static_cast<int>(p.size()));
  if (count < 1) throw std::invalid_argument("--k must be >= 1");
  const PowerSums ps = power_sums(p, static_cast<std::size_t>(count));
  if (g.csv()) {
    out << "k,value,exact\n";
    for (int i = 1; i <= count; ++i) {
      const auto idx = static_cast<std::size_t>(i);
      out << i << "," << format_double(ps.value(idx)) << "," << rational_text(ps.exact(idx))
          << "\n";
    }
    return kExitOk;
  }
  Json exact = Json::array();
  for (const auto& r : ps.exact_values()) exact.push_back(rational_text(r));
  emit(out, Json{{"power_sums", ps.values()}, {"exact", exact}});
  return kExitOk;
}

int cmd_recover(const Globals& g, const std::string& sums_text, const std::string& input_file,
                std::optional<int> m, std::ostream& out) {
  RecoverRequest req;
  if (!input_file.empty()) {
    req = recover_request_from_json(read_json_file(input_file));
    if (m) req.m = static_cast<std::size_t>(*m);
  } else {
    if (sums_text.empty()) throw std::invalid_argument("--power-sums or --input is required");
    if (!m) throw std::invalid_argument("--m is required");
    std::vector<Rational> sums;
    for (const auto& tok : split(sums_text, ',')) sums.push_back(parse_decimal(tok));
    req.sums = PowerSums(std::move(sums));
    req.m = static_cast<std::size_t>(*m);
  }
  if (req.m < 1) throw std::invalid_argument("--m must be >= 1");
  if (req.sums.size() < req.m) {
    throw std::invalid_argument("need at least m power sums");
  }
  const RecoveredVector r = recover_vector(req.sums, req.m);
  if (g.csv()) {
    out << "i,value\n";
    for (std::size_t i = 0; i < r.entries.size(); ++i) {
      out << i + 1 << "," << format_double(r.entries[i]) << "\n";
    }
    return kExitOk;
  }
  emit(out, to_json(r));
  return kExitOk;
}

struct Distinction {
  double entropy_p = 0.0;
  double entropy_q = 0.0;
  bool entropy_equal = false;
  std::optional<double> t;
  double beta_p = 0.0;
  double beta_q = 0.0;
  bool equivalent = false;
  bool power_sums_agree = false;
  std::string summary;
};

Distinction distinguish(const ProbVector& p, const ProbVector& q) {
  Distinction d;
  d.entropy_p = shannon_entropy(p);
  d.entropy_q = shannon_entropy(q);
  d.entropy_equal = std::abs(d.entropy_p - d.entropy_q) <= 1e-12;
  const int top = static_cast<int>(std::max(p.size(), q.size())) + 1;
  for (int t = 2; t <= top && !d.t; ++t) {
    const double bp = beta_closed(p, t);
    const double bq = beta_closed(q, t);
    if (std::abs(bp - bq) > 1e-12) {
      d.t = t;
      d.beta_p = bp;
      d.beta_q = bq;
    }
  }
  if (!d.t && p.size() != q.size()) {
    d.t = 0.0;
    d.beta_p = beta_closed(p, 0.0);
    d.beta_q = beta_closed(q, 0.0);
  }
  d.equivalent = permutation_equivalent(p, q, 1e-10);
  d.power_sums_agree = freeshift::power_sums_agree(p, q, 1e-10);

  std::string s = d.entropy_equal
                      ? "entropy equal (" + describe_entropy(d.entropy_p) + ")"
                      : "entropy differs (" + format_double(d.entropy_p) + " vs " +
                            format_double(d.entropy_q) + ")";
  if (d.t) {
    s += ", beta differs at t=" + format_double(*d.t) + ": " + format_double(d.beta_p) +
         " vs " + format_double(d.beta_q);
  } else {
    s += ", beta agrees at t=2.." + std::to_string(top);
  }
  s += d.equivalent ? " → permutation-equivalent" : " → NOT permutation-equivalent";
  d.summary = s;
  return d;
}

Json distinction_json(const Distinction& d) {
  Json j{{"entropy_p", d.entropy_p},
         {"entropy_q", d.entropy_q},
         {"entropy_equal", d.entropy_equal},
         {"permutation_equivalent", d.equivalent},
         {"power_sums_agree", d.power_sums_agree},
         {"summary", d.summary}};
  if (d.t) {
    j["beta_differs_at"] = *d.t;
    j["beta_p"] = d.beta_p;
    j["beta_q"] = d.beta_q;
  }
  return j;
}

int cmd_distinguish(const Globals& g, std::ostream& out) {
  const ProbVector p = load_vector(g.p_file, "--p");
  const ProbVector q = load_vector(g.q_file, "--q");
  const Distinction d = distinguish(p, q);
  if (g.csv()) {
    out << "entropy_p,entropy_q,t,beta_p,beta_q,permutation_equivalent\n"
        << format_double(d.entropy_p) << "," << format_double(d.entropy_q) << ","
        << (d.t ? format_double(*d.t) : "") << "," << (d.t ? format_double(d.beta_p) : "")
        << "," << (d.t ? format_double(d.beta_q) : "") << "," << (d.equivalent ? 1 : 0)
        << "\n";
  } else {
    emit(out, distinction_json(d));
  }
  if (d.equivalent != d.power_sums_agree) {
    throw CheckFailed("sorted comparison and power-sum comparison disagree");
  }
  return kExitOk;
}

int cmd_end_to_end(const Globals& g, const std::string& perm_text, std::ostream& out) {
  require_generator(g);
  const auto p = std::make_shared<const ProbVector>(load_vector(g.p_file, "--p"));
  const std::size_t m = p->size();
  const auto perm = parse_permutation(perm_text, m);
  const ProbVector q = p->permuted(perm);
  // q_i = p_{perm[i]}, so source symbol perm[i] is relabeled i.
  std::vector<Symbol> relabel(m);
  for (std::size_t i = 0; i < m; ++i) {
    relabel[static_cast<std::size_t>(perm[i] - 1)] = static_cast<Symbol>(i + 1);
  }
  const FinitaryCode phi = FinitaryCode::symbol_permutation(g.ell, relabel);
  const std::uint64_t samples = g.samples.value_or(100'000);
  const int horizon = g.horizon.value_or(3);
  if (samples < 1) throw std::invalid_argument("--samples must be >= 1");
  if (horizon < 0) throw std::invalid_argument("--horizon must be >= 0");

  // Pushforward marginal at e.
  std::vector<std::uint64_t> counts(m, 0);
  for (std::uint64_t i = 0; i < samples; ++i) {
    const Configuration x(derive_seed(g.seed, i), p);
    ++counts[static_cast<std::size_t>(apply(phi, x) - 1)];
  }
  Json marginals = Json::array();
  bool marginals_ok = true;
  const double n = static_cast<double>(samples);
  for (std::size_t i = 0; i < m; ++i) {
    const double qi = q.prob(static_cast<Symbol>(i + 1));
    const double freq = static_cast<double>(counts[i]) / n;
    const double sigma = std::sqrt(qi * (1.0 - qi) / n);
    const bool ok = std::abs(freq - qi) <= 3.0 * sigma;
    marginals_ok = marginals_ok && ok;
    marginals.push_back(Json{{"symbol", i + 1}, {"q", qi}, {"frequency", freq},
                             {"sigma", sigma}, {"within_3_sigma", ok}});
  }
  const bool exact_pushforward = [&] {
    for (std::size_t s = 1; s <= m; ++s) {
      const Symbol image = relabel[s - 1];
      if (q.exact_prob(image) != p->exact_prob(static_cast<Symbol>(s))) return false;
    }
    return true;
  }();

  const CodeStats stats = expected_code_length(phi, *p);
  const Configuration x0(g.seed, p);
  const TruncatedSup mphi = m_phi_truncated(phi, x0, horizon, g.gen, g.cap);
  const TruncatedSup aphi = a_phi_truncated(phi, x0, horizon, g.gen, g.cap);
  const bool m_ok = mphi.value == 0;
  const bool a_ok = horizon == 0 ? aphi.unbounded_below() : aphi.value == -1;

  const auto ts = parse_doubles(
      g.t_list.empty() ? "-2,-1,-0.5,0,0.25,0.5,1,1.5,2,3,4" : g.t_list, "--t");
  Json grid = Json::array();
  bool beta_ok = true;
  for (double t : ts) {
    const double bp = beta_closed(*p, t);
    const double bq = beta_closed(q, t);
    beta_ok = beta_ok && bp == bq;
    grid.push_back(Json{{"t", t}, {"beta_p", bp}, {"beta_q", bq}, {"identical", bp == bq}});
  }
  bool exact_integer_ok = true;
  {
    const auto sp = power_sums(*p, m + 1);
    const auto sq = power_sums(q, m + 1);
    for (std::size_t k = 1; k <= m + 1; ++k) exact_integer_ok &= sp.exact(k) == sq.exact(k);
  }

  const ProbVector uniform4 = ProbVector::from_weights(std::vector<double>{1, 1, 1, 1});
  const ProbVector half_eighths =
      ProbVector::from_weights(std::vector<double>{4, 1, 1, 1, 1});
  const Distinction negative = distinguish(uniform4, half_eighths);
  const bool negative_ok = negative.entropy_equal && !negative.equivalent &&
                           !negative.power_sums_agree && negative.t == 2.0;

  Json a_json = aphi.value ? Json(*aphi.value) : Json("unbounded_below");
  const bool all = marginals_ok && exact_pushforward && stats.v_mean == 1.0 && m_ok && a_ok &&
                   beta_ok && exact_integer_ok && negative_ok;
  emit(out, Json{{"p", vector_json(*p)},
                 {"q", vector_json(q)},
                 {"permutation", perm},
                 {"code", to_json(phi)},
                 {"pushforward", Json{{"samples", samples},
                                      {"marginals", marginals},
                                      {"within_3_sigma", marginals_ok},
                                      {"exact", exact_pushforward}}},
                 {"expected_v_phi", stats.v_mean},
                 {"m_phi", Json{{"horizon", horizon},
                                {"value", mphi.value ? Json(*mphi.value) : Json(nullptr)},
                                {"ok", m_ok}}},
                 {"a_phi", Json{{"horizon", horizon},
                                {"value", a_json},
                                {"note", "radius-0 code: r = 0 everywhere, so the sup over "
                                         "g off W_a is -min |g| = -1 (unbounded below when "
                                         "the horizon is 0)"},
                                {"ok", a_ok}}},
                 {"beta_grid", grid},
                 {"beta_identical", beta_ok},
                 {"integer_power_sums_exact", exact_integer_ok},
                 {"negative_instance", distinction_json(negative)},
                 {"negative_instance_ok", negative_ok},
                 {"all_passed", all}});
  if (!all) throw CheckFailed("end-to-end check failed");
  return kExitOk;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Bernoulli shifts over free groups: combinatorics, codings, cocycles, beta."};
  app.name("freeshift");
  app.footer(kCsvSchemas);
  app.require_subcommand(1);

  Globals g;
  app.add_option("--p", g.p_file, "Probability vector JSON file");
  app.add_option("--q", g.q_file, "Second probability vector JSON file");
  app.add_option("--ell", g.ell, "Rank of the free group")->check(CLI::Range(1, 64));
  app.add_option("--gen", g.gen, "Index of the distinguished generator a")
      ->check(CLI::Range(1, 64));
  app.add_option("--seed", g.seed, "Seed (default 0)");
  app.add_option("--n", g.n_list, "Block length(s), comma separated");
  app.add_option("--samples", g.samples, "Monte Carlo sample count");
  app.add_option("--t", g.t_list, "Comma-separated t values");
  app.add_option("--horizon", g.horizon, "Truncation horizon L");
  app.add_option("--cap", g.cap, "Cardinality cap for enumerations");
  app.add_option("--format", g.format, "Output format")
      ->check(CLI::IsMember({"json", "csv"}));
  app.add_option("--workers", g.workers, "Worker threads")->check(CLI::Range(1u, 256u));

  auto* ball_cmd = app.add_subcommand("ball", "Enumerate B(r) and compare with |B(r)|");
  int radius = 3;
  ball_cmd->add_option("--radius", radius, "Ball radius");

  auto* enum_cmd = app.add_subcommand("enum-wa", "First elements of W_a in shortlex order");
  std::uint64_t count = 20;
  bool complement = false;
  enum_cmd->add_option("--count", count, "Number of elements");
  enum_cmd->add_flag("--complement", complement, "Enumerate F_l \\ W_a instead");

  auto* bounds_cmd = app.add_subcommand("check-bounds", "Check the enumeration index bounds");
  std::uint64_t bound_count = 10'000;
  bounds_cmd->add_option("--count", bound_count, "Elements checked per set");

  auto* stats_cmd = app.add_subcommand("code-stats", "Code length statistics of a coding");
  std::string code_file;
  bool stats_mc = false;
  stats_cmd->add_option("--code", code_file, "Code JSON file");
  stats_cmd->add_flag("--mc", stats_mc, "Monte Carlo instead of exact enumeration");

  auto* cocycle_cmd = app.add_subcommand("cocycle-check", "Cocycle identity on random pairs");
  std::uint64_t trials = 1000;
  int max_shift = 20;
  std::string automorphism_file;
  cocycle_cmd->add_option("--trials", trials, "Random (U, W) pairs");
  cocycle_cmd->add_option("--max-shift", max_shift, "Largest |n| for shift powers");
  cocycle_cmd->add_option("--automorphism", automorphism_file, "Fix V from a swaps JSON file");

  auto* weak_cmd = app.add_subcommand("weakmix-check", "Product identity for h = h+ h-");
  int inner = 1;
  int outer = 2;
  std::uint64_t pairs = 100;
  weak_cmd->add_option("--inner", inner, "Radius N of the base cylinder");
  weak_cmd->add_option("--outer", outer, "Radius B' containing the cylinders");
  weak_cmd->add_option("--pairs", pairs, "Random cylinder pairs");

  auto* beta_cmd = app.add_subcommand("beta", "Beta function: closed form, limit, Monte Carlo");
  bool closed = false;
  std::optional<int> limit;
  bool beta_mc = false;
  beta_cmd->add_flag("--closed", closed, "Closed form only (default)");
  beta_cmd->add_option("--limit", limit, "Also evaluate the exact limit formula at this n");
  beta_cmd->add_flag("--mc", beta_mc, "Also estimate by Monte Carlo (block length --n)");

  auto* restricted_cmd =
      app.add_subcommand("restricted-beta", "Growth rate restricted to a cylinder D");
  std::string pattern_file;
  int restricted_radius = 1;
  std::string reading = "limit";
  restricted_cmd->add_option("--pattern", pattern_file, "Pattern JSON for D on the a-line");
  restricted_cmd->add_option("--radius", restricted_radius,
                             "Without --pattern: D = all ones on a^-M..a^M");
  restricted_cmd->add_option("--reading", reading, "Integrand reading")
      ->check(CLI::IsMember({"limit", "literal"}));

  auto* pressure_cmd = app.add_subcommand("pressure", "Single-coordinate pressure ln sum P^t");

  auto* sums_cmd = app.add_subcommand("power-sums", "Exact power sums of a vector");
  std::optional<int> k_max;
  sums_cmd->add_option("--k", k_max, "Number of power sums (default m)");

  auto* recover_cmd = app.add_subcommand("recover", "Recover a vector from power sums");
  std::string sums_text;
  std::string input_file;
  std::optional<int> m;
  recover_cmd->add_option("--power-sums", sums_text, "Comma-separated p_1..p_K");
  recover_cmd->add_option("--input", input_file, "Request JSON file");
  recover_cmd->add_option("--m", m, "Alphabet size");

  auto* distinguish_cmd =
      app.add_subcommand("distinguish", "Compare entropy and beta of --p and --q");

  auto* e2e_cmd = app.add_subcommand("end-to-end", "Radius-0 isomorphism and beta invariance");
  std::string perm_text;
  e2e_cmd->add_option("--perm", perm_text, "Permutation: \"2,1,3\" or \"(2 3)\"");

  for (auto* sub : app.get_subcommands({})) sub->fallthrough();

  std::vector<std::string> argv_store;
  argv_store.reserve(args.size() + 1);
  argv_store.emplace_back("freeshift");
  argv_store.insert(argv_store.end(), args.begin(), args.end());
  std::vector<const char*> argv;
  for (const auto& a : argv_store) argv.push_back(a.c_str());

  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::Success& e) {
    return app.exit(e, out, err);
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n\n" << app.help();
    return kExitValidation;
  }

  try {
    if (*ball_cmd) return cmd_ball(g, radius, out);
    if (*enum_cmd) return cmd_enum_wa(g, count, complement, out);
    if (*bounds_cmd) return cmd_check_bounds(g, bound_count, out);
    if (*stats_cmd) return cmd_code_stats(g, code_file, stats_mc, out);
    if (*cocycle_cmd) return cmd_cocycle_check(g, trials, max_shift, automorphism_file, out);
    if (*weak_cmd) return cmd_weakmix_check(g, inner, outer, pairs, out);
    if (*beta_cmd) return cmd_beta(g, closed, limit, beta_mc, out);
    if (*restricted_cmd) return cmd_restricted_beta(g, pattern_file, restricted_radius, reading, out);
    if (*pressure_cmd) return cmd_pressure(g, out);
    if (*sums_cmd) return cmd_power_sums(g, k_max, out);
    if (*recover_cmd) return cmd_recover(g, sums_text, input_file, m, out);
    if (*distinguish_cmd) return cmd_distinguish(g, out);
    if (*e2e_cmd) return cmd_end_to_end(g, perm_text, out);
  } catch (const CapacityError& e) {
    err << "error: " << e.what() << "\n";
    return kExitValidation;
  } catch (const RecoveryError& e) {
    err << "error: " << e.what() << "\n";
    return kExitNumeric;
  } catch (const CheckFailed& e) {
    err << "check failed: " << e.what() << "\n";
    return kExitNumeric;
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << "\n";
    return kExitValidation;
  } catch (const std::out_of_range& e) {
    err << "error: " << e.what() << "\n";
    return kExitValidation;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kExitNumeric;
  }
  err << app.help();
  return kExitValidation;
}

}  // namespace freeshift::cli
