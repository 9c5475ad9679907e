#pragma once

// JSON exchange formats. Exact values travel as ["num","den"] pairs or
// "num/den" strings, floats as decimal strings with an explicit digit count.

#include <gkktau/classify.hpp>
#include <gkktau/hurwitz.hpp>
#include <gkktau/matrix.hpp>
#include <gkktau/polynomial.hpp>
#include <gkktau/rootfind.hpp>

#include <json.hpp>

#include <stdexcept>
#include <string>
#include <vector>

namespace gkktau {

using Json = nlohmann::ordered_json;

constexpr int kDecimalDigits = 25;

inline Json rational_pair(const Rational& r) { return Json::array({r.get_num().get_str(), r.get_den().get_str()}); }

inline Rational rational_from_json(const Json& j) {
  if (j.is_array() && j.size() == 2 && j[0].is_string() && j[1].is_string())
    return rational_from_parts(j[0].get<std::string>(), j[1].get<std::string>());
  if (j.is_string()) return parse_rational(j.get<std::string>());
  if (j.is_number_integer()) return Rational(Integer(std::to_string(j.get<long long>())));
  throw std::invalid_argument("expected [\"num\",\"den\"] rational, got " + j.dump());
}

inline Json to_json(const RatMatrix& a) {
  Json entries = Json::array();
  for (const auto& x : a.entries()) entries.push_back(rational_pair(x));
  return Json{{"rows", a.rows()}, {"cols", a.cols()}, {"entries", std::move(entries)}};
}

inline RatMatrix matrix_from_json(const Json& j) {
  if (!j.is_object() || !j.contains("rows") || !j.contains("cols") || !j.contains("entries"))
    throw std::invalid_argument("matrix JSON needs rows, cols and entries");
  const auto rows = j.at("rows").get<std::size_t>(), cols = j.at("cols").get<std::size_t>();
  const Json& e = j.at("entries");
  if (!e.is_array() || e.size() != rows * cols)
    throw std::invalid_argument("matrix JSON has " + std::to_string(e.size()) + " entries, expected " +
                                std::to_string(rows * cols));
  std::vector<Rational> values;
  values.reserve(e.size());
  for (const auto& x : e) values.push_back(rational_from_json(x));
  return RatMatrix(rows, cols, std::move(values));
}

inline Json to_json(const Polynomial& p) {
  Json coeffs = Json::array();
  for (const auto& c : p.coeffs()) coeffs.push_back(rational_pair(c));
  return Json{{"coeffs", std::move(coeffs)}};
}

inline Polynomial polynomial_from_json(const Json& j) {
  if (!j.is_object() || !j.contains("coeffs") || !j.at("coeffs").is_array())
    throw std::invalid_argument("polynomial JSON needs a coeffs array");
  std::vector<Rational> c;
  for (const auto& x : j.at("coeffs")) c.push_back(rational_from_json(x));
  return Polynomial(std::move(c));
}

inline Json to_json(const IndexSet& s) { return Json(s.members()); }

inline Json to_json(const ComplexRoot& r, int digits = kDecimalDigits) {
  return Json{{"re", to_decimal(r.re, digits)},
              {"im", to_decimal(r.im, digits)},
              {"residual", to_decimal(r.residual, 3)},
              {"multiplicity", r.multiplicity},
              {"suspected_multiple", r.suspected_multiple}};
}

inline Json to_json(const std::vector<ComplexRoot>& roots, int digits = kDecimalDigits) {
  Json list = Json::array();
  for (const auto& r : roots) list.push_back(to_json(r, digits));
  return Json{{"precision", digits}, {"roots", std::move(list)}};
}

inline Json to_json(const RootEnclosure& e, int digits = kDecimalDigits) {
  return Json{{"lo", to_string(e.lo)},
              {"hi", to_string(e.hi)},
              {"midpoint", to_decimal(to_real(e.midpoint()), digits)},
              {"multiplicity", e.multiplicity}};
}

inline Json to_json(const Witness& w, int digits = kDecimalDigits) {
  Json out = Json::object();
  if (w.alpha) out["alpha"] = to_json(*w.alpha);
  if (w.beta) out["beta"] = to_json(*w.beta);
  if (!w.values.empty()) {
    Json v = Json::array();
    for (const auto& x : w.values) v.push_back(to_string(x));
    out["values"] = std::move(v);
  }
  if (!w.eigenvalues.empty()) {
    Json v = Json::array();
    for (const auto& r : w.eigenvalues) v.push_back(to_json(r, digits));
    out["eigenvalues"] = std::move(v);
    out["precision"] = digits;
  }
  if (!w.note.empty()) out["note"] = w.note;
  return out;
}

inline Json to_json(const ClassReport& r, int digits = kDecimalDigits) {
  Json out{{"property", to_string(r.property)},
           {"holds", r.holds},
           {"witness", r.witness ? to_json(*r.witness, digits) : Json(nullptr)},
           {"n", r.n},
           {"params", Json(r.params)}};
  if (r.property == Property::POS_STABLE) out["boundary"] = r.boundary;
  return out;
}

inline Json to_json(const TnnReport& r) {
  Json out{{"negative_found", r.negative_found}, {"minors_checked", r.minors_checked}};
  if (r.negative_found) {
    out["order"] = r.order;
    out["rows"] = to_json(*r.rows);
    out["cols"] = to_json(*r.cols);
    out["value"] = to_string(r.value);
  }
  return out;
}

inline Json to_json(const ThresholdScan& s) {
  Json rows = Json::array();
  for (const auto& r : s.rows)
    rows.push_back(Json{{"k", r.k},
                        {"cubic_factor", r.cubic.get_str()},
                        {"minor_value", to_string(r.minor_value)},
                        {"sign", r.sign}});
  return Json{{"first_negative", s.first_negative ? Json(*s.first_negative) : Json(nullptr)},
              {"rows", std::move(rows)}};
}

inline Json to_json(const StructuredGkkReport& r) {
  return Json{{"holds", r.holds},
              {"n", r.n},
              {"leading_minors_checked", r.leading_minors_checked},
              {"factorization_samples", r.factorization_samples},
              {"window_pairs_checked", r.window_pairs_checked},
              {"exponent_triples_checked", r.exponent_triples_checked},
              {"random_pairs_checked", r.random_pairs_checked},
              {"failure", r.failure}};
}

inline Json to_json(const LambdaChain& c, int digits = kDecimalDigits) {
  Json roots = Json::array();
  for (const auto& e : c.roots) roots.push_back(to_json(e, digits));
  Json out{{"k", c.k},
           {"t", to_string(c.t)},
           {"lambda", std::move(roots)},
           {"all_in_unit_interval", c.all_in_unit_interval},
           {"strictly_decreasing", c.strictly_decreasing}};
  if (c.failed_j) out["failed_j"] = *c.failed_j;
  if (!c.message.empty()) out["message"] = c.message;
  return out;
}

}  // namespace gkktau
