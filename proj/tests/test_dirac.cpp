#include <catch_amalgamated.hpp>

#include "spinorsym/dirac.hpp"

using namespace spinorsym;

namespace {

bool constant_coefficients(const KillingSpinor& pi) {
  for (const auto& row : pi.comps)
    for (const auto& p : row)
      if (p.coordinate_degree() > 0) return false;
  return true;
}

}  // namespace

TEST_CASE("Clifford relations") {
  const auto table = clifford_table();
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) CHECK(table[i][j] == FieldElement(i == j ? 2 * conventions::eta(i) : 0));

  const Matrix4 g5 = gamma5();
  for (int r = 0; r < 4; ++r)
    for (int c = 0; c < 4; ++c) CHECK(g5[r][c] == FieldElement(r != c ? 0 : (r < 2 ? 1 : -1)));
  CHECK(matmul(g5, g5) == identity4());
  for (int i = 0; i < 4; ++i) {
    const Matrix4 a = matmul(g5, gamma_lower(i)), b = matmul(gamma_lower(i), g5);
    for (int r = 0; r < 4; ++r)
      for (int c = 0; c < 4; ++c) CHECK(a[r][c] == -b[r][c]);
  }
}

TEST_CASE("context checks") {
  CHECK_THROWS_AS(build_dirac_scaling(JetContext(1, 1)), ContractViolation);
  CHECK_THROWS_AS(build_dirac_scaling(JetContext(2, 1, 2)), ContractViolation);
  JetContext ctx(1, 1, 2);
  CHECK_THROWS_AS(build_dirac_chiral(ctx, solve_killing(0, 4).elements[0]), DomainError);
}

TEST_CASE("all variants of the basic symmetries verify") {
  JetContext ctx(1, 2, 2);
  const auto ckvs = conformal_killing_basis();
  const auto pis = solve_killing(0, 2).elements;
  std::vector<DiracCharacteristic> bases{build_dirac_scaling(ctx)};
  for (std::size_t n = 0; n < ckvs.size(); n += 2) bases.push_back(build_dirac_conformal(ctx, ckvs[n]));
  for (std::size_t n = 0; n < pis.size(); n += 2) bases.push_back(build_dirac_chiral(ctx, pis[n]));
  for (const auto& base : bases)
    for (unsigned v = 0; v < 8; ++v) {
      INFO(variant_name(v));
      CHECK(verify_dirac(ctx, apply_variant(base, v)).pass());
    }
}

TEST_CASE("gamma5 variant is an involution") {
  JetContext ctx(1, 1, 2);
  const auto z = build_dirac_conformal(ctx, conformal_killing_basis()[12]);
  const auto g = static_cast<unsigned>(DiracVariant::gamma5);
  const auto twice = apply_variant(apply_variant(z, g), g);
  CHECK(twice.phi == z.phi);
  CHECK(twice.chi == z.chi);
  CHECK(apply_variant(z, 0).phi == z.phi);
  CHECK(variant_name(DiracVariant::gamma5 | DiracVariant::conjugate) == "gamma5 Psi*");
}

TEST_CASE("psi halves match the direct displays") {
  JetContext ctx(1, 1, 2);
  for (const auto& v : conformal_killing_basis()) {
    INFO(v.name);
    CHECK(psi_half(build_dirac_conformal(ctx, v)) == psi_half_conformal_display(ctx, v));
  }
  for (const auto& pi : solve_killing(0, 2).elements)
    CHECK(psi_half(build_dirac_chiral(ctx, pi)) == psi_half_chiral_display(ctx, pi));
}

TEST_CASE("corrupted chiral coefficient breaks the Weyl symmetry") {
  JetContext ctx(1, 2, 2);
  std::size_t nonconstant = 0;
  for (const auto& pi : solve_killing(0, 2).elements) {
    if (constant_coefficients(pi)) continue;
    ++nonconstant;
    CHECK_FALSE(verify_dirac(ctx, build_dirac_chiral(ctx, pi, {{1, make_rational(1, 1)}})).pass());
  }
  CHECK(nonconstant == 7);
}

TEST_CASE("Lie derivatives of Weyl symmetries") {
  JetContext ctx(1, 3, 2);
  const auto ckvs = conformal_killing_basis();
  const auto pis = solve_killing(0, 2).elements;
  for (std::size_t n = 0; n < 5; ++n) {
    const auto& zeta = ckvs[(3 * n + 4) % ckvs.size()];
    const auto lz = dirac_lie_derive(ctx, build_dirac_conformal(ctx, ckvs[n * 3]), zeta);
    CHECK(verify_dirac(ctx, lz).pass());
    const auto lw = dirac_lie_derive(ctx, apply_variant(build_dirac_chiral(ctx, pis[n]), 2), zeta);
    CHECK(verify_dirac(ctx, lw).pass());
  }
}

TEST_CASE("Weyl system dimension counts") {
  for (int r = 0; r <= 6; ++r) CHECK(dirac_dimension(r) == 4 * dimension_d_r(1, r));
  CHECK(dirac_dimension(0) == 8);
  CHECK(dirac_dimension(1) == 208);
}

TEST_CASE("constructive rank of the Weyl system") {
  const auto r0 = dirac_constructive_rank(0, true);
  CHECK(r0.pass());
  CHECK(r0.rank == 8);
  const auto r1 = dirac_constructive_rank(1);
  CHECK(r1.pass());
  CHECK(r1.rank == 208);
  CHECK_THROWS_AS(dirac_constructive_rank(2), CapacityError);
}
