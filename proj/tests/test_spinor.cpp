#include <catch_amalgamated.hpp>

#include <random>

#include "spinorsym/conventions.hpp"
#include "spinorsym/jet.hpp"
#include "spinorsym/spinor.hpp"

using namespace spinorsym;

namespace {

SpinorArray vector_up(int a0, int a1) {
  SpinorArray v({Variance::upper}, {});
  v[0] = Polynomial(a0);
  v[1] = Polynomial(a1);
  return v;
}

}  // namespace

TEST_CASE("symmetrize") {
  SpinorArray a({Variance::lower, Variance::lower}, {});
  a.at({0, 1}, {}) = Polynomial(1);
  const SpinorArray s = symmetrize(a, SlotGroup::unprimed);
  CHECK(s.at({0, 1}, {}) == Polynomial(FieldElement(make_rational(1, 2))));
  CHECK(s.at({1, 0}, {}) == Polynomial(FieldElement(make_rational(1, 2))));
  CHECK(s.at({0, 0}, {}).is_zero());
  CHECK(symmetrize(s, SlotGroup::unprimed) == s);
  CHECK(symmetrize(epsilon_array(false, Variance::lower), SlotGroup::unprimed).is_zero());
  CHECK(symmetrize(epsilon_array(true, Variance::upper), SlotGroup::primed).is_zero());
}

TEST_CASE("lowering with eps_{01} = +1") {
  // lambda_B = lambda^A eps_{AB}: lambda_1 = lambda^0 eps_{01} = 1.
  const SpinorArray low = eps_move(vector_up(1, 0), 0, Variance::lower);
  CHECK(low[0].is_zero());
  CHECK(low[1] == Polynomial(1));
}

TEST_CASE("raise after lower is the identity") {
  std::mt19937_64 rng(4);
  std::uniform_int_distribution<int> d(-9, 9);
  for (int n = 0; n < 20; ++n) {
    const SpinorArray v = vector_up(d(rng), d(rng));
    CHECK(eps_move(eps_move(v, 0, Variance::lower), 0, Variance::upper) == v);
  }
}

TEST_CASE("eps^{AB} eps_{CB} is the identity") {
  const SpinorArray prod = outer(epsilon_array(false, Variance::upper), epsilon_array(false, Variance::lower));
  // slots: A, B (upper), C, B (lower); contract slot 1 with slot 3.
  const SpinorArray d = contract(prod, 1, 3);
  CHECK(d == delta_array());
}

TEST_CASE("contractions") {
  CHECK(contract(delta_array(), 0, 1)[0] == Polynomial(2));

  SpinorArray sym({Variance::upper, Variance::upper}, {});
  sym.at({0, 0}, {}) = Polynomial(3);
  sym.at({0, 1}, {}) = Polynomial(5);
  sym.at({1, 0}, {}) = Polynomial(5);
  sym.at({1, 1}, {}) = Polynomial(-2);
  const SpinorArray both = outer(sym, epsilon_array(false, Variance::lower));
  const SpinorArray once = contract(both, 0, 2);
  CHECK(contract(once, 0, 1)[0].is_zero());

  const SpinorArray lam = vector_up(2, 7);
  const SpinorArray mu = eps_move(vector_up(-1, 4), 0, Variance::lower);
  const Polynomial expected = lam[0] * mu[0] + lam[1] * mu[1];
  CHECK(contract(outer(lam, mu), 0, 1)[0] == expected);
}

TEST_CASE("conjugation") {
  SpinorArray a({Variance::lower}, {Variance::upper});
  a.at({0}, {1}) = Polynomial(FieldElement(make_rational(1, 1), make_rational(2, 1)));
  a.at({1}, {0}) = Polynomial::coordinate(2);
  CHECK(conjugate(conjugate(a)) == a);
  CHECK(conjugate(a.scaled(FieldElement::i())) == conjugate(a).scaled(FieldElement::i().scaled(Rational(-1))));

  // x^{AA'} is hermitian.
  SpinorArray x({Variance::upper}, {Variance::upper});
  for (int b = 0; b < 2; ++b)
    for (int bp = 0; bp < 2; ++bp) x.at({b}, {bp}) = x_spinor(b, bp);
  CHECK(conjugate(x) == x);
}

TEST_CASE("sigma completeness") {
  // sigma^i_{AA'} sigma_j^{AA'} = delta^i_j.
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) {
      FieldElement acc;
      for (int a = 0; a < 2; ++a)
        for (int ap = 0; ap < 2; ++ap) acc += conventions::sigma(i, a, ap) * conventions::sigma_up(j, a, ap);
      CHECK(acc == FieldElement(i == j ? 1 : 0));
    }
}

TEST_CASE("convention hash is stable") {
  CHECK(conventions::convention_hash() == conventions::convention_hash());
  CHECK(conventions::convention_hash().size() == 16);
  CHECK(conventions::convention_text().find("eps01=+1") != std::string::npos);
}
