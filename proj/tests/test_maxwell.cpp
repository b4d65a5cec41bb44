#include <catch_amalgamated.hpp>

#include <random>

#include "spinorsym/maxwell.hpp"

using namespace spinorsym;

namespace {

Tensor random_two_form(std::mt19937_64& rng) {
  std::uniform_int_distribution<int> d(-4, 4);
  Tensor f(2);
  for (int i = 0; i < 4; ++i)
    for (int j = i + 1; j < 4; ++j) {
      f(i, j) = Polynomial(FieldElement(make_rational(d(rng), 1), make_rational(d(rng), 1)));
      f(j, i) = -f(i, j);
    }
  return f;
}

// Spinor image of F^- = (F - i *F)/2 against eps_{AB} conj(phi)_{A'B'}.
bool anti_self_dual_image_holds(int hodge_sign) {
  JetContext ctx(2, 0);
  MaxwellJets jets(ctx);
  const Tensor f = jets.tensor();
  const Tensor minus =
      (f - hodge_dual(f, hodge_sign).scaled(FieldElement::i())).scaled(FieldElement(make_rational(1, 2)));
  const SpinorArray s = tensor_to_spinor(minus);
  for (int a = 0; a < 2; ++a)
    for (int b = 0; b < 2; ++b)
      for (int ap = 0; ap < 2; ++ap)
        for (int bp = 0; bp < 2; ++bp) {
          const Polynomial expect = ctx.jet_poly(0, ap + bp, 0, true).scaled(FieldElement(eps_lower(a, b)));
          if (s.at({a, b}, {ap, bp}) != expect) return false;
        }
  return true;
}

}  // namespace

TEST_CASE("Hodge dual squares to minus one") {
  std::mt19937_64 rng(10);
  for (int n = 0; n < 10; ++n) {
    const Tensor f = random_two_form(rng);
    CHECK(hodge_dual(hodge_dual(f)) == f.scaled(FieldElement(-1)));
  }
  CHECK_THROWS_AS(hodge_dual(Tensor(3)), ContractViolation);
}

TEST_CASE("anti-self-dual part is the conjugate field") {
  CHECK(conventions::kHodgeSign == 1);
  CHECK(anti_self_dual_image_holds(conventions::kHodgeSign));
  CHECK_FALSE(anti_self_dual_image_holds(-conventions::kHodgeSign));
}

TEST_CASE("field strength dictionary") {
  JetContext ctx(2, 1);
  MaxwellJets jets(ctx);
  const Tensor f = jets.tensor();
  CHECK(is_antisymmetric(f));
  const SpinorCharacteristic sc = tensor_characteristic_to_spinor(f);
  CHECK(sc.symmetric);
  CHECK(sc.representation);
  for (int j = 0; j <= 2; ++j) CHECK(sc.q[j] == ctx.jet_poly(0, j, 0));
  // Maxwell's equations hold identically on the jets.
  CHECK(maxwell_residual(ctx, f).pass());
}

TEST_CASE("conformal symmetries in tensor form") {
  JetContext ctx(2, 2);
  MaxwellJets plain(ctx), dual(ctx, true);
  for (const auto& v : conformal_killing_basis()) {
    INFO(v.name);
    const Tensor z = build_tensor_conformal(plain, v);
    CHECK(maxwell_residual(ctx, z).pass());
    const SpinorCharacteristic sc = tensor_characteristic_to_spinor(z);
    CHECK(sc.representation);
    CHECK(sc.q == build_conformal(ctx, v).q);
    const SpinorCharacteristic sd = tensor_characteristic_to_spinor(build_tensor_conformal(dual, v));
    CHECK(sd.q == build_conformal(ctx, v).scaled(FieldElement::i().scaled(Rational(-1))).q);
  }
}

TEST_CASE("admissible coefficient spaces") {
  const std::vector<std::size_t> dims{10, 16, 9, 16, 10};
  for (int h = 0; h <= 4; ++h) {
    INFO("h=" << h);
    const auto basis = admissible_basis(h);
    CHECK(basis.size() == dims[static_cast<std::size_t>(h)]);
    for (const auto& a : basis) CHECK_NOTHROW(validate_coefficients({h, a}));
  }
  Tensor bad(4);
  bad(0, 1, 0, 1) = Polynomial(1);
  CHECK_THROWS_AS(validate_coefficients({0, bad}), ContractViolation);
  CHECK_THROWS_AS(coefficient_rank(5), ContractViolation);
}

TEST_CASE("polynomial tensors have Weyl symmetries and project to Killing spinors") {
  std::mt19937_64 rng(11);
  for (int h = 0; h <= 4; ++h) {
    INFO("h=" << h);
    const WeylCoefficients c = random_admissible(h, rng);
    const Tensor p = build_p(c);
    CHECK(weyl_symmetry_violation(p).empty());
    const PrimedQuartic proj = spinor_projection(p);
    CHECK(proj == pi_closed_form(extract_alpha(c)));
    CHECK(satisfies_killing(raise_quartic(proj)));
  }
}

TEST_CASE("degree-one closed form carries a minus sign") {
  CHECK(kPi1Sign == -1);
  std::mt19937_64 rng(12);
  const WeylCoefficients c = random_admissible(1, rng);
  const PrimedQuartic proj = spinor_projection(build_p(c));
  PrimedQuartic flipped = pi_closed_form(extract_alpha(c));
  for (auto& p : flipped) p = -p;
  bool nonzero = false;
  for (const auto& p : proj) nonzero = nonzero || !p.is_zero();
  REQUIRE(nonzero);
  CHECK(flipped != proj);
}

TEST_CASE("trace shortcut for antisymmetrized pairs") {
  std::mt19937_64 rng(13);
  std::uniform_int_distribution<int> d(-3, 3);
  for (int n = 0; n < 3; ++n) {
    Tensor f(4);
    for (std::size_t k = 0; k < f.size(); ++k) f.flat(k) = Polynomial(d(rng));
    CHECK(shortcut_identity_holds(f));
  }
}

TEST_CASE("chiral Maxwell symmetries") {
  std::mt19937_64 rng(14);
  for (int h : {0, 1, 2}) {
    INFO("h=" << h);
    const auto rep = check_maxwell_chiral(random_admissible(h, rng));
    CHECK(rep.weyl_symmetric);
    CHECK(rep.determining);
    CHECK(rep.spinor_form);
    CHECK(rep.chirality);
    CHECK(rep.closed_form);
    CHECK(rep.killing);
    CHECK(rep.residual_terms == 0);
  }
}

TEST_CASE("Killing contraction identity") {
  JetContext ctx(2, 1);
  for (const auto& pi : solve_killing(0, 4).elements) CHECK(killing_contraction_identity_holds(ctx, pi));
  CHECK_THROWS_AS(killing_contraction_identity_holds(JetContext(1, 1), solve_killing(0, 4).elements[0]),
                  ContractViolation);
}

TEST_CASE("Maxwell symmetry counts") {
  for (int r = 2; r <= 6; ++r) CHECK(maxwell_dimension(r) == dimension_d_r(2, r));
  CHECK(maxwell_dimension(2) == 270);
}
