#include <catch_amalgamated.hpp>

#include <random>

#include "spinorsym/field.hpp"
#include "spinorsym/linalg.hpp"
#include "spinorsym/polynomial.hpp"

using namespace spinorsym;

namespace {

FieldElement random_element(std::mt19937_64& rng) {
  std::uniform_int_distribution<int> d(-6, 6);
  std::uniform_int_distribution<int> den(1, 4);
  auto q = [&] { return make_rational(d(rng), den(rng)); };
  return FieldElement(q(), q(), q(), q());
}

Polynomial random_polynomial(std::mt19937_64& rng) {
  std::uniform_int_distribution<int> d(-3, 3), e(0, 2);
  std::vector<Polynomial> parts;
  for (int t = 0; t < 4; ++t) {
    const std::array<int, 4> exps{e(rng), e(rng), 0, e(rng)};
    parts.push_back(Polynomial(Monomial::coordinates(exps), FieldElement(make_rational(d(rng), 1), make_rational(d(rng), 2))));
  }
  return Polynomial::sum(parts);
}

}  // namespace

TEST_CASE("radicals and conjugation") {
  const FieldElement r2 = FieldElement::sqrt2();
  CHECK(r2 * r2 == FieldElement(2));
  CHECK(FieldElement::i().conj() == FieldElement::i().scaled(Rational(-1)));
  CHECK((FieldElement(1) + r2) * (FieldElement(1) - r2) == FieldElement(-1));
  CHECK(FieldElement::inv_sqrt2() * r2 == FieldElement(1));
}

TEST_CASE("division by zero is an arithmetic error") {
  CHECK_THROWS_AS(FieldElement(1) / FieldElement(0), ArithmeticError);
}

TEST_CASE("make_rational canonicalizes") {
  CHECK(make_rational(2, 4) == make_rational(1, 2));
  CHECK(make_rational(3, -6) == make_rational(-1, 2));
}

TEST_CASE("field axioms on random elements") {
  std::mt19937_64 rng(1);
  for (int n = 0; n < 50; ++n) {
    const auto a = random_element(rng), b = random_element(rng), c = random_element(rng);
    CHECK((a * b) * c == a * (b * c));
    CHECK(a * (b + c) == a * b + a * c);
    CHECK(a * b == b * a);
    CHECK(a.conj().conj() == a);
    CHECK((a * b).conj() == a.conj() * b.conj());
    if (!b.is_zero()) CHECK((a / b) * b == a);
  }
}

TEST_CASE("polynomial basics") {
  const Polynomial x0 = Polynomial::coordinate(0), x1 = Polynomial::coordinate(1);
  CHECK((x0 * x0).partial(Variable::coordinate(0)) == x0.scaled(FieldElement(2)));
  CHECK((x0 * x1).substitute(Variable::coordinate(1), Polynomial()).is_zero());
  CHECK((x0 + x1) * (x0 + x1) == x0 * x0 + (x0 * x1).scaled(FieldElement(2)) + x1 * x1);
}

TEST_CASE("polynomial ring axioms and conjugation") {
  std::mt19937_64 rng(2);
  for (int n = 0; n < 20; ++n) {
    const auto p = random_polynomial(rng), q = random_polynomial(rng), r = random_polynomial(rng);
    CHECK((p * q) * r == p * (q * r));
    CHECK(p * (q + r) == p * q + p * r);
    CHECK(p * q == q * p);
    CHECK(p.conj().conj() == p);
    CHECK((p - p).is_zero());
  }
}

TEST_CASE("nullspace and rank") {
  const Matrix id{{1, 0, 0}, {0, 1, 0}, {0, 0, 1}};
  CHECK(exact_nullspace(id).empty());
  CHECK(exact_rank(id) == 3);

  const Matrix zero(2, Vector(5, FieldElement(0)));
  CHECK(exact_nullspace(zero, 5).size() == 5);

  const Matrix m{{1, 1}, {2, 2}};
  const auto ns = exact_nullspace(m);
  REQUIRE(ns.size() == 1);
  CHECK(ns[0][0] == -ns[0][1]);
  CHECK(exact_rank(Matrix{{1, 2}, {2, 4}}) == 1);
  CHECK(exact_rank(Matrix{{1, 2}, {1, 2}, {1, 2}, {0, 1}}) == 2);
}

TEST_CASE("rank and nullspace on random matrices") {
  std::mt19937_64 rng(3);
  std::uniform_int_distribution<int> d(-2, 2);
  for (int n = 0; n < 20; ++n) {
    Matrix m(3, Vector(5));
    for (auto& row : m)
      for (auto& e : row) e = FieldElement(make_rational(d(rng), 1), make_rational(d(rng), 1));
    CHECK(exact_rank(m) == exact_rank(transpose(m)));
    for (const auto& v : exact_nullspace(m, 5))
      for (const auto& e : mat_vec(m, v)) CHECK(e.is_zero());
  }
}

TEST_CASE("real rank does not merge sqrt2 multiples") {
  // v and sqrt2 v are dependent over the reals.
  SparseEchelon e;
  SparseRow v{{0, FieldElement(1)}, {1, FieldElement::i()}};
  SparseRow w{{0, FieldElement::sqrt2()}, {1, FieldElement::i() * FieldElement::sqrt2()}};
  e.insert(real_split(v));
  e.insert(real_split(w));
  CHECK(e.rank() == 1);
}
