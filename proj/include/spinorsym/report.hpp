#pragma once

// JSON-lines reports: one object per checked item, then one summary object.
// Field names follow schemas/report.schema.json.

#include <json.hpp>

#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "spinorsym/field.hpp"
#include "spinorsym/maxwell.hpp"
#include "spinorsym/polynomial.hpp"
#include "spinorsym/symmetry.hpp"

namespace spinorsym {

using json = nlohmann::ordered_json;

struct ReportItem {
  std::string family;
  json params = json::object();
  int order = 0;
  bool pass = false;
  std::size_t residual_terms = 0;
  std::optional<long long> rank;
  std::optional<long long> expected;
  std::optional<int> h;
  std::optional<std::string> variant;
  std::string note;
};

inline json params_from_string(const std::string& s) {
  if (s.empty()) return json::object();
  json j = json::parse(s, nullptr, false);
  if (j.is_discarded() || !j.is_object()) return json{{"label", s}};
  return j;
}

inline ReportItem to_item(const VerificationReport& r) {
  ReportItem it;
  it.family = r.family;
  it.params = params_from_string(r.params);
  it.order = r.order;
  it.pass = r.pass;
  it.residual_terms = r.residual_terms;
  return it;
}

inline ReportItem to_item(const RankReport& r) {
  ReportItem it;
  it.family = "rank";
  it.params = {{"two_s", r.two_s}, {"generators", r.generators}};
  it.order = r.r;
  it.pass = r.pass();
  it.rank = static_cast<long long>(r.rank);
  it.expected = r.expected;
  return it;
}

inline json to_json(const ReportItem& it) {
  json j;
  j["family"] = it.family;
  j["params"] = it.params;
  j["order"] = it.order;
  j["pass"] = it.pass;
  j["residual_terms"] = it.residual_terms;
  j["rank"] = it.rank ? json(*it.rank) : json(nullptr);
  j["expected"] = it.expected ? json(*it.expected) : json(nullptr);
  if (it.h) j["h"] = *it.h;
  if (it.variant) j["variant"] = *it.variant;
  if (!it.note.empty()) j["note"] = it.note;
  return j;
}

struct ReportSummary {
  std::string command;
  std::size_t total = 0;
  std::size_t passed = 0;
  bool pass() const { return total == passed; }
};

inline ReportSummary summarize(const std::string& command, const std::vector<ReportItem>& items) {
  ReportSummary s{command, items.size(), 0};
  for (const auto& it : items) s.passed += it.pass ? 1 : 0;
  return s;
}

inline json to_json(const ReportSummary& s) {
  return json{{"summary", true}, {"command", s.command}, {"total", s.total}, {"passed", s.passed}, {"pass", s.pass()}};
}

/// Compact one-object-per-line output; key order is fixed so output is byte-stable.
inline void write_json_lines(std::ostream& os, const std::string& command, const std::vector<ReportItem>& items) {
  for (const auto& it : items) os << to_json(it).dump() << '\n';
  os << to_json(summarize(command, items)).dump() << '\n';
}

inline void write_table(std::ostream& os, const std::string& command, const std::vector<ReportItem>& items) {
  for (const auto& it : items) {
    os << (it.pass ? "PASS " : "FAIL ") << it.family << ' ' << it.params.dump() << " order=" << it.order;
    if (it.rank) os << " rank=" << *it.rank;
    if (it.expected) os << " expected=" << *it.expected;
    if (!it.pass && it.residual_terms) os << " residual_terms=" << it.residual_terms;
    if (!it.note.empty()) os << "  (" << it.note << ')';
    os << '\n';
  }
  const auto s = summarize(command, items);
  os << command << ": " << s.passed << '/' << s.total << ' ' << (s.pass() ? "PASS" : "FAIL") << '\n';
}

// ---- exact values ---------------------------------------------------------------------

inline json rational_to_json(const Rational& q) {
  return json::array({q.get_num().get_str(), q.get_den().get_str()});
}

inline Rational rational_from_json(const json& j) {
  if (!j.is_array() || j.size() != 2) throw ContractViolation("rational must be a [num, den] pair");
  Rational q(mpz_class(j[0].get<std::string>()), mpz_class(j[1].get<std::string>()));
  q.canonicalize();
  return q;
}

/// [re, im, re_sqrt2, im_sqrt2], each a [num, den] pair.
inline json field_to_json(const FieldElement& x) {
  return json::array({rational_to_json(x.re_rat()), rational_to_json(x.im_rat()), rational_to_json(x.re_rad()),
                      rational_to_json(x.im_rad())});
}

inline FieldElement field_from_json(const json& j) {
  if (!j.is_array() || j.size() != 4) throw ContractViolation("field element must have four rational parts");
  return FieldElement(rational_from_json(j[0]), rational_from_json(j[1]), rational_from_json(j[2]),
                      rational_from_json(j[3]));
}

/// Coefficient list of a polynomial in x only: [[[e0,e1,e2,e3], coeff], ...].
inline json coordinate_polynomial_to_json(const Polynomial& p) {
  json out = json::array();
  for (const auto& t : p.terms()) {
    json exps = json::array();
    for (int i = 0; i < 4; ++i) exps.push_back(t.mono.exponent(Variable::coordinate(i)));
    if (t.mono.total_degree() != t.mono.coordinate_degree())
      throw ContractViolation("only polynomials in the coordinates can be serialized");
    out.push_back(json::array({exps, field_to_json(t.coeff)}));
  }
  return out;
}

inline Polynomial coordinate_polynomial_from_json(const json& j) {
  std::vector<Polynomial::Term> terms;
  for (const auto& t : j) {
    std::array<int, 4> e{};
    for (int i = 0; i < 4; ++i) e[i] = t.at(0).at(i).get<int>();
    terms.push_back({Monomial::coordinates(e), field_from_json(t.at(1))});
  }
  return Polynomial::from_terms(std::move(terms));
}

inline json to_json(const WeylCoefficients& c) {
  json entries = json::array();
  for (std::size_t n = 0; n < c.a.size(); ++n) {
    const Polynomial& v = c.a.flat(n);
    if (v.is_zero()) continue;
    json idx = json::array();
    for (int s = 0; s < c.a.rank(); ++s) idx.push_back(c.a.digit(n, s));
    entries.push_back({{"index", idx}, {"value", rational_to_json(v.constant_term().re_rat())}});
  }
  return json{{"h", c.h}, {"rank", c.a.rank()}, {"entries", entries}};
}

inline WeylCoefficients weyl_coefficients_from_json(const json& j) {
  WeylCoefficients c;
  c.h = j.at("h").get<int>();
  c.a = Tensor(coefficient_rank(c.h));
  for (const auto& e : j.at("entries")) {
    std::size_t n = 0;
    for (const auto& d : e.at("index")) n = n * 4 + d.get<std::size_t>();
    c.a.flat(n) = Polynomial(FieldElement(rational_from_json(e.at("value"))));
  }
  validate_coefficients(c);
  return c;
}

}  // namespace spinorsym
