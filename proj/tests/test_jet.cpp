#include <catch_amalgamated.hpp>

#include <random>

#include "spinorsym/jet.hpp"

using namespace spinorsym;

namespace {

// A small random polynomial in coordinates and order <= 1 jets of a spin-1 field.
Polynomial random_jet_polynomial(const JetContext& ctx, std::mt19937_64& rng) {
  std::uniform_int_distribution<int> coef(-3, 3), axis(0, 3), pick(0, 2), order(0, 1);
  std::vector<Polynomial> parts;
  for (int t = 0; t < 3; ++t) {
    const int p = order(rng);
    const int j = std::min(pick(rng) + p, ctx.two_s() + p);
    const int k = std::min(pick(rng), p);
    Polynomial term = ctx.jet_poly(p, j, k, t == 2);
    if (t != 1) term = term * Polynomial::coordinate(axis(rng));
    parts.push_back(term.scaled(FieldElement(coef(rng) == 0 ? 1 : coef(rng))));
  }
  return Polynomial::sum(parts);
}

}  // namespace

TEST_CASE("coordinate derivative of x^{BB'}") {
  for (int a = 0; a < 2; ++a)
    for (int ap = 0; ap < 2; ++ap)
      for (int b = 0; b < 2; ++b)
        for (int bp = 0; bp < 2; ++bp)
          CHECK(coord_derivative(x_spinor(b, bp), a, ap) == Polynomial(a == b && ap == bp ? 1 : 0));
  CHECK(coord_derivative(Polynomial(7), 0, 1).is_zero());

  // d_{CC'} x^{CC'} = 4.
  Polynomial trace;
  for (int c = 0; c < 2; ++c)
    for (int cp = 0; cp < 2; ++cp) trace += coord_derivative(x_spinor(c, cp), c, cp);
  CHECK(trace == Polynomial(4));
}

TEST_CASE("total derivative appends indices") {
  JetContext ctx(2, 3);
  for (int j = 0; j <= 2; ++j)
    for (int c = 0; c < 2; ++c)
      for (int cp = 0; cp < 2; ++cp)
        CHECK(ctx.total_derivative(ctx.jet_poly(0, j, 0), c, cp) == ctx.jet_poly(1, j + c, cp));
}

TEST_CASE("total derivatives commute") {
  JetContext ctx(2, 3);
  std::mt19937_64 rng(5);
  for (int n = 0; n < 10; ++n) {
    const Polynomial q = random_jet_polynomial(ctx, rng);
    for (int i = 0; i < 4; ++i)
      for (int k = 0; k < 4; ++k)
        CHECK(ctx.axis_derivative(ctx.axis_derivative(q, i), k) == ctx.axis_derivative(ctx.axis_derivative(q, k), i));
    CHECK(ctx.total_derivative(ctx.total_derivative(q, 0, 1), 1, 0) ==
          ctx.total_derivative(ctx.total_derivative(q, 1, 0), 0, 1));
  }
}

TEST_CASE("field equation holds on the exact set") {
  for (int two_s : {1, 2, 3}) {
    JetContext ctx(two_s, 3);
    for (int p = 0; p <= 1; ++p)
      for (int k = 0; k <= p; ++k) {
        // D^A{}_{A'} phi_{A ...}^{K'} = 0 for every fixed primed part.
        Components block;
        for (int j = 0; j <= two_s + p; ++j) block.push_back(ctx.jet_poly(p, j, k));
        for (const auto& row : symmetry_residual(ctx, block))
          for (const auto& r : row) CHECK(r.is_zero());
      }
  }
}

TEST_CASE("symmetrized derivative powers") {
  JetContext ctx(2, 4);
  Components phi;
  for (int j = 0; j <= 2; ++j) phi.push_back(ctx.jet_poly(0, j, 0));
  CHECK(sym_total_derivative_power(ctx, phi, 0)[1][0] == phi[1]);
  for (int p = 1; p <= 3; ++p) {
    const Block b = sym_total_derivative_power(ctx, phi, p);
    for (int j = 0; j <= 2 + p; ++j)
      for (int k = 0; k <= p; ++k) CHECK(b[j][k] == ctx.jet_poly(p, j, k));
  }

  std::mt19937_64 rng(6);
  Components q1, q2, sum;
  for (int j = 0; j <= 2; ++j) {
    q1.push_back(random_jet_polynomial(ctx, rng));
    q2.push_back(random_jet_polynomial(ctx, rng));
    sum.push_back(q1.back() + q2.back().scaled(FieldElement(3)));
  }
  const Block a = sym_total_derivative_power(ctx, q1, 2), b = sym_total_derivative_power(ctx, q2, 2),
              c = sym_total_derivative_power(ctx, sum, 2);
  for (std::size_t j = 0; j < c.size(); ++j)
    for (std::size_t k = 0; k < c[j].size(); ++k) CHECK(c[j][k] == a[j][k] + b[j][k].scaled(FieldElement(3)));
}

TEST_CASE("evolutionary vector field") {
  JetContext ctx(2, 3);
  std::mt19937_64 rng(7);
  Components r;
  for (int j = 0; j <= 2; ++j) r.push_back(random_jet_polynomial(ctx, rng));
  for (int j = 0; j <= 2; ++j) CHECK(apply_evolutionary(ctx, r, ctx.jet_poly(0, j, 0)) == r[j]);
  CHECK(apply_evolutionary(ctx, r, Polynomial::coordinate(1) * Polynomial::coordinate(2)).is_zero());
  CHECK(apply_evolutionary(ctx, r, ctx.jet_poly(0, 1, 0, true)) == r[1].conj());
  for (int n = 0; n < 5; ++n) {
    const Polynomial g = random_jet_polynomial(ctx, rng), h = random_jet_polynomial(ctx, rng);
    CHECK(apply_evolutionary(ctx, r, g * h) ==
          apply_evolutionary(ctx, r, g) * h + g * apply_evolutionary(ctx, r, h));
  }
}

TEST_CASE("commutation formula") {
  for (int two_s : {1, 2})
    for (int p : {1, 2}) {
      INFO("two_s=" << two_s << " p=" << p);
      const auto off = commutation_check(two_s, p);
      CHECK(off.pass());
      CHECK(off.checked > 0);
      const auto on = onshell_commutation_check(two_s, p);
      CHECK(on.pass());
      CHECK(on.checked > 0);
    }
  CHECK_THROWS_AS(commutation_check(1, 0), ContractViolation);
}

TEST_CASE("derivatives beyond the context order are capacity errors") {
  JetContext ctx(1, 1);
  CHECK_THROWS_AS(ctx.total_derivative(ctx.jet_poly(1, 0, 0), 0, 0), CapacityError);
  CHECK_THROWS_AS(ctx.jet_poly(2, 0, 0), CapacityError);
}
