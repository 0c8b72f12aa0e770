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

// JSON and CSV formats.
//
//   vector       {"p": [0.5, 0.3, 0.2]}            (entries may be "3/8")
//   pattern      {"assign": [["e", 1], ["a", 3]]}
//   automorphism {"swaps": [["ba", "baa"]]}
//   code         {"kind": "fixed", "m": 2, "n": 2, "r": 1,
//                 "table": [[[1, 2, 1, 1, 2], 2], ...], "default": 1}
//                {"kind": "adaptive", "m": 2, "n": 2,
//                 "tree": {"query": "a1", "children": [{"leaf": 1}, ...]}}
//                {"kind": "permutation", "perm": [2, 1, 3]}
//   recover      {"power_sums": [1, 0.625], "m": 2} -> {"vector": [...]}

#pragma once

#include <string>
#include <string_view>

#include <nlohmann/json.hpp>

#include "freeshift/automorphism.hpp"
#include "freeshift/beta.hpp"
#include "freeshift/coding.hpp"
#include "freeshift/prob.hpp"
#include "freeshift/recovery.hpp"

namespace freeshift {

using Json = nlohmann::json;

// Parses JSON keeping the source text of every non-integer number: such
// numbers come back as strings ("0.1" stays "0.1") so they can be read
// exactly. Throws std::invalid_argument on malformed input.
Json parse_json_exact(std::string_view text);
Json read_json_file(const std::string& path);

// A number, integer, or decimal/fraction string.
Rational json_rational(const Json& v);
double json_double(const Json& v);

ProbVector prob_vector_from_json(const Json& j);
Json to_json(const ProbVector& p);

// rank > 0 rejects elements that use generators beyond it.
Pattern pattern_from_json(const Json& j, int rank = 0);
Json to_json(const Pattern& c);

LocalAutomorphism automorphism_from_json(const Json& j, int rank = 0);
Json to_json(const LocalAutomorphism& v);

// "ell" in the document overrides `rank`.
FinitaryCode code_from_json(const Json& j, int rank);
Json to_json(const FinitaryCode& code);

Json to_json(const CodeStats& stats);
// Columns n, tail_n, cumulative.
std::string to_csv(const CodeStats& stats);

Json to_json(const BetaEvaluation& eval);
// Columns t, closed, limit_n, mc, stderr. limit_n is the value at the last
// requested n; empty cells mean "not computed".
std::string beta_csv_header();
std::string to_csv_row(const BetaEvaluation& eval);

struct RecoverRequest {
  PowerSums sums;
  std::size_t m = 0;
};
RecoverRequest recover_request_from_json(const Json& j);
Json to_json(const RecoveredVector& r);

// Shortest round-trip text of a double, as used in every emitted document.
std::string format_double(double v);

}  // namespace freeshift
