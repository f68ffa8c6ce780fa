#pragma once

#include <string>

#include "sumrule/cheb.hpp"
#include "sumrule/jacobi.hpp"
#include "sumrule/sumrules.hpp"

// Wire formats: the JSON operator schema
//   {"side": "half"|"whole", "p": {"3": 1.2, ...}, "q": {"0": -0.5, ...}}
// (indices as strings, free values omitted), weight-polynomial presets, and
// report serialization (JSON and CSV rows).

namespace sumrule {

JacobiOperator operator_from_json(const std::string& text);
std::string operator_to_json(const JacobiOperator& J);

// Presets: "one", "U2sq", "U3sq", "UmUn:m,n", "sq:c1,c2,..." (square of
// sum c_l U_l), "coeffs:c1,c2,..." (raw U-basis coefficients).
ChebUExpansion parse_A_spec(const std::string& spec);

// 17 significant digits, round-trip exact.
std::string format_double(double v);
// Quotes a CSV field when it contains separators.
std::string csv_field(const std::string& s);

std::string report_to_json(const SumRuleReport& rep, const std::string& case_id,
                           const std::string& a_spec, int rank);
// CSV row: case_id, A_spec, rank, lambda, h, residual, pass
std::string report_csv_header();
std::string report_to_csv(const SumRuleReport& rep, const std::string& case_id,
                          const std::string& a_spec, int rank);

}  // namespace sumrule
