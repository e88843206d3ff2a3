#pragma once

// JSON formats shared by the command-line tool and the tests.
//
//   moments:  {"k": 3, "moments": [{"i": 0, "j": 0, "v": "1/1"}, ...]}
//   measure:  {"atoms": [{"x": "1/2", "y": "0/1", "w": "3/1"}, ...]}
//             a float coordinate is written as {"float": "<decimal>"}
//   reports:  solver, canonicalization and extraction results.
//
// Object keys come out sorted, so identical inputs give identical bytes.

#include <optional>
#include <string>

#include <json.hpp>

#include "momentcurve/measures.hpp"
#include "momentcurve/moments.hpp"
#include "momentcurve/report.hpp"
#include "momentcurve/transforms.hpp"

namespace mc {

using json = nlohmann::json;

struct MomentInput {
  MomentSequence beta;
  std::optional<std::string> relation;  // optional "relation" field, e.g. "y*(x-y^2)"
};

// Throws InputError; syntax errors carry the byte offset.
json parse_json_text(const std::string& text, const std::string& what);

MomentInput moments_from_json(const json& j);
json moments_to_json(const MomentSequence& beta);
json moments_to_json(const MomentSeq<QuadScalar>& beta);

json rat_to_json(const Rat& x);
Rat rat_from_json(const json& j, const std::string& field);
json quad_to_json(const QuadScalar& x);

json report_to_json(const SolveReport& r);
json canon_to_json(const CanonResult& c);

json measure_to_json(const AtomicMeasure& mu);
AtomicMeasure measure_from_json(const json& j);

std::string real_to_string(const Real& x);

}  // namespace mc
