#include "sumrule/io.hpp"

#include <cstdio>
#include <stdexcept>

#include <json.hpp>

namespace sumrule {

using nlohmann::json;

JacobiOperator operator_from_json(const std::string& text) {
  json j = json::parse(text);
  std::string side_s = j.value("side", "half");
  Side side;
  if (side_s == "half") side = Side::half_line;
  else if (side_s == "whole") side = Side::whole_line;
  else throw std::invalid_argument("operator_from_json: side must be \"half\" or \"whole\"");
  std::map<long, double> p, q;
  if (j.contains("p"))
    for (auto& [k, v] : j.at("p").items()) p[std::stol(k)] = v.get<double>();
  if (j.contains("q"))
    for (auto& [k, v] : j.at("q").items()) q[std::stol(k)] = v.get<double>();
  return JacobiOperator::make(side, std::move(p), std::move(q));
}

std::string operator_to_json(const JacobiOperator& J) {
  json j;
  j["side"] = (J.side() == Side::half_line) ? "half" : "whole";
  json p = json::object(), q = json::object();
  for (auto& [k, v] : J.p_overrides()) p[std::to_string(k)] = v;
  for (auto& [k, v] : J.q_overrides()) q[std::to_string(k)] = v;
  j["p"] = p;
  j["q"] = q;
  return j.dump();
}

namespace {

std::vector<double> parse_csv_doubles(const std::string& s) {
  std::vector<double> out;
  size_t pos = 0;
  while (pos < s.size()) {
    size_t comma = s.find(',', pos);
    std::string tok = s.substr(pos, comma == std::string::npos ? std::string::npos : comma - pos);
    out.push_back(std::stod(tok));
    if (comma == std::string::npos) break;
    pos = comma + 1;
  }
  return out;
}

}  // namespace

ChebUExpansion parse_A_spec(const std::string& spec) {
  if (spec == "one") return ChebUExpansion::basis(1);
  if (spec == "U2sq") return u_product(ChebUExpansion::basis(2), ChebUExpansion::basis(2));
  if (spec == "U3sq") return u_product(ChebUExpansion::basis(3), ChebUExpansion::basis(3));
  if (spec.rfind("UmUn:", 0) == 0) {
    std::vector<double> mn = parse_csv_doubles(spec.substr(5));
    if (mn.size() != 2) throw std::invalid_argument("parse_A_spec: UmUn wants two indices");
    return u_product(ChebUExpansion::basis(static_cast<int>(mn[0])),
                     ChebUExpansion::basis(static_cast<int>(mn[1])));
  }
  if (spec.rfind("sq:", 0) == 0) {
    ChebUExpansion b(parse_csv_doubles(spec.substr(3)));
    if (b.is_zero()) throw std::invalid_argument("parse_A_spec: zero polynomial");
    return u_product(b, b);
  }
  if (spec.rfind("coeffs:", 0) == 0) {
    ChebUExpansion a(parse_csv_doubles(spec.substr(7)));
    if (a.is_zero()) throw std::invalid_argument("parse_A_spec: zero polynomial");
    return a;
  }
  throw std::invalid_argument("parse_A_spec: unknown weight spec '" + spec + "'");
}

std::string format_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  out += '"';
  return out;
}

std::string report_to_json(const SumRuleReport& rep, const std::string& case_id,
                           const std::string& a_spec, int rank) {
  json j;
  j["case_id"] = case_id;
  j["A_spec"] = a_spec;
  j["rank"] = rank;
  j["lambda_value"] = rep.lambda_value;
  j["h_value"] = rep.h_value;
  j["h_trace_value"] = rep.h_trace_value;
  j["eigen_term"] = rep.eigen_term;
  j["log_integral_term"] = rep.log_integral_term;
  j["residual"] = rep.residual;
  j["quadrature_nodes"] = rep.quadrature_nodes;
  j["A_coeffs"] = rep.A_coeffs;
  j["pass"] = rep.pass;
  return j.dump();
}

std::string report_csv_header() { return "case_id,A_spec,rank,lambda,h,residual,pass"; }

std::string report_to_csv(const SumRuleReport& rep, const std::string& case_id,
                          const std::string& a_spec, int rank) {
  std::string row = case_id;
  row += ',';
  row += csv_field(a_spec);
  row += ',';
  row += std::to_string(rank);
  row += ',';
  row += format_double(rep.lambda_value);
  row += ',';
  row += format_double(rep.h_value);
  row += ',';
  row += format_double(rep.residual);
  row += ',';
  row += rep.pass ? "1" : "0";
  return row;
}

}  // namespace sumrule
