#include <catch_amalgamated.hpp>

#include <random>
#include <sstream>

#include "spinorsym/report.hpp"

using namespace spinorsym;

TEST_CASE("report items serialize with a fixed key order") {
  VerificationReport v;
  v.family = "Z";
  v.params = "{\"ckv\":[3]}";
  v.order = 1;
  v.pass = true;
  const json j = to_json(to_item(v));
  std::vector<std::string> keys;
  for (const auto& [k, _] : j.items()) keys.push_back(k);
  CHECK(keys == std::vector<std::string>{"family", "params", "order", "pass", "residual_terms", "rank", "expected"});
  CHECK(j["params"]["ckv"][0] == 3);
  CHECK(j["rank"].is_null());

  RankReport r;
  r.two_s = 2;
  r.r = 1;
  r.rank = 32;
  r.expected = 32;
  const json rj = to_json(to_item(r));
  CHECK(rj["rank"] == 32);
  CHECK(rj["expected"] == 32);
  CHECK(rj["pass"] == true);
}

TEST_CASE("free-form params fall back to a label") {
  CHECK(params_from_string("").empty());
  CHECK(params_from_string("sample 3")["label"] == "sample 3");
}

TEST_CASE("summary lines") {
  ReportItem a, b;
  a.family = "W";
  a.pass = true;
  b.family = "W";
  b.pass = false;
  b.residual_terms = 4;
  std::ostringstream os;
  write_json_lines(os, "verify", {a, b});
  std::istringstream in(os.str());
  std::string line;
  std::vector<json> rows;
  while (std::getline(in, line)) rows.push_back(json::parse(line));
  REQUIRE(rows.size() == 3);
  CHECK(rows[2]["summary"] == true);
  CHECK(rows[2]["total"] == 2);
  CHECK(rows[2]["passed"] == 1);
  CHECK(rows[2]["pass"] == false);

  std::ostringstream table;
  write_table(table, "verify", {a, b});
  CHECK(table.str().find("FAIL W") != std::string::npos);
  CHECK(table.str().find("residual_terms=4") != std::string::npos);
  CHECK(table.str().find("verify: 1/2 FAIL") != std::string::npos);
}

TEST_CASE("exact values round trip through JSON") {
  const Rational q = make_rational(-22, 7);
  CHECK(rational_from_json(rational_to_json(q)) == q);
  CHECK(rational_from_json(json::array({"4", "-6"})) == make_rational(-2, 3));
  CHECK_THROWS_AS(rational_from_json(json(3)), ContractViolation);

  const FieldElement x(make_rational(1, 2), make_rational(-3, 1), make_rational(5, 7), make_rational(0, 1));
  CHECK(field_from_json(field_to_json(x)) == x);

  const Polynomial p = (Polynomial::coordinate(0) * Polynomial::coordinate(3)).scaled(x) + Polynomial(FieldElement::sqrt2());
  CHECK(coordinate_polynomial_from_json(coordinate_polynomial_to_json(p)) == p);
  JetContext ctx(1, 0);
  CHECK_THROWS_AS(coordinate_polynomial_to_json(ctx.jet_poly(0, 0, 0)), ContractViolation);
}

TEST_CASE("coefficient tensors round trip through JSON") {
  std::mt19937_64 rng(15);
  for (int h = 0; h <= 4; ++h) {
    const WeylCoefficients c = random_admissible(h, rng);
    const WeylCoefficients back = weyl_coefficients_from_json(to_json(c));
    CHECK(back.h == h);
    CHECK(back.a == c.a);
  }
}
