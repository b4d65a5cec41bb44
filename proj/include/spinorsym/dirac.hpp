#pragma once

// Weyl system for a Dirac spinor (psi^{A'}, phi_A).
//
// The system decouples into two spin-1/2 massless equations. Family 0 holds the
// jets of phi_A; family 1 holds the jets of chi_A with psi_{A'} = conj(chi)_{A'}.
// A characteristic is the pair (R_phi, R_chi); the psi-half is
// Q_{A'} = conj(R_chi)_{A'}, raised to Q^{A'} when compared with displays.

#include <array>
#include <string>
#include <vector>

#include "spinorsym/conventions.hpp"
#include "spinorsym/errors.hpp"
#include "spinorsym/jet.hpp"
#include "spinorsym/killing.hpp"
#include "spinorsym/linalg.hpp"
#include "spinorsym/symmetry.hpp"

namespace spinorsym {

inline constexpr int kPhiFamily = 0;
inline constexpr int kChiFamily = 1;

// ---- gamma matrices ------------------------------------------------------------------

using Matrix4 = std::array<std::array<FieldElement, 4>, 4>;

inline Matrix4 matmul(const Matrix4& a, const Matrix4& b) {
  Matrix4 out{};
  for (int r = 0; r < 4; ++r)
    for (int c = 0; c < 4; ++c)
      for (int k = 0; k < 4; ++k) out[r][c] += a[r][k] * b[k][c];
  return out;
}

inline Matrix4 identity4() {
  Matrix4 out{};
  for (int r = 0; r < 4; ++r) out[r][r] = FieldElement(1);
  return out;
}

/// gamma_i = sqrt2 [[0, sigma_i^{A'B}], [sigma_{iAB'}, 0]] on (psi^{A'}, phi_A).
/// The sqrt2 undoes the normalization of sigma so that {gamma^i, gamma^j} = 2 eta^{ij}.
inline Matrix4 gamma_lower(int i) {
  Matrix4 g{};
  const FieldElement r2 = FieldElement::sqrt2();
  for (int a = 0; a < 2; ++a)
    for (int b = 0; b < 2; ++b) {
      g[a][2 + b] = r2 * conventions::sigma_up(i, b, a);
      g[2 + a][b] = r2 * conventions::sigma(i, a, b).scaled(Rational(conventions::eta(i)));
    }
  return g;
}

inline Matrix4 gamma_upper(int i) {
  Matrix4 g = gamma_lower(i);
  for (auto& row : g)
    for (auto& e : row) e = e.scaled(Rational(conventions::eta(i)));
  return g;
}

/// gamma_5 = -i gamma_0 gamma_1 gamma_2 gamma_3.
inline Matrix4 gamma5() {
  Matrix4 g = matmul(matmul(gamma_lower(0), gamma_lower(1)), matmul(gamma_lower(2), gamma_lower(3)));
  for (auto& row : g)
    for (auto& e : row) e = e * FieldElement::i().scaled(Rational(-1));
  return g;
}

/// Anticommutators {gamma^i, gamma^j} as multiples of the identity; returns the
/// 4x4 table of scalars, or throws when some anticommutator is not scalar.
inline std::array<std::array<FieldElement, 4>, 4> clifford_table() {
  std::array<std::array<FieldElement, 4>, 4> out{};
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) {
      Matrix4 a = matmul(gamma_upper(i), gamma_upper(j)), b = matmul(gamma_upper(j), gamma_upper(i));
      for (int r = 0; r < 4; ++r)
        for (int c = 0; c < 4; ++c) a[r][c] += b[r][c];
      for (int r = 0; r < 4; ++r)
        for (int c = 0; c < 4; ++c)
          if (r != c ? !a[r][c].is_zero() : a[r][c] != a[0][0])
            throw ArithmeticError("anticommutator is not a multiple of the identity");
      out[i][j] = a[0][0];
    }
  return out;
}

// ---- characteristics ---------------------------------------------------------------

struct DiracCharacteristic {
  Components phi;  // R_A, acting on family 0
  Components chi;  // acting on family 1; Q_{A'} = conj(chi)
  int order = 0;

  static DiracCharacteristic from(Components phi, Components chi) {
    DiracCharacteristic d{std::move(phi), std::move(chi), 0};
    for (const auto* half : {&d.phi, &d.chi})
      for (const auto& p : *half) d.order = std::max(d.order, p.max_jet_order());
    return d;
  }
};

enum class DiracVariant : unsigned { plain = 0, gamma5 = 1, conjugate = 2, imaginary = 4 };

inline unsigned operator|(DiracVariant a, DiracVariant b) { return static_cast<unsigned>(a) | static_cast<unsigned>(b); }

namespace detail {

inline Components scaled(const Components& c, const FieldElement& f) {
  Components out;
  for (const auto& p : c) out.push_back(p.scaled(f));
  return out;
}

inline Components swap_families(const Components& c) {
  Components out;
  for (const auto& p : c)
    out.push_back(p.map_variables([](Variable v) {
      if (!v.is_jet_like()) return v;
      return v.with_field(v.field() == kPhiFamily ? kChiFamily : kPhiFamily);
    }));
  return out;
}

}  // namespace detail

/// Applies variant bits in the order: conjugate spinor Psi*, then the i-multiple, then gamma_5.
/// Psi* = (conj(phi)^{A'}, conj(psi)_A) swaps the families in both halves without conjugating coefficients.
inline DiracCharacteristic apply_variant(const DiracCharacteristic& d, unsigned variant) {
  Components phi = d.phi, chi = d.chi;
  if (variant & static_cast<unsigned>(DiracVariant::conjugate)) {
    phi = detail::swap_families(phi);
    chi = detail::swap_families(chi);
  }
  if (variant & static_cast<unsigned>(DiracVariant::imaginary)) {
    // Q -> iQ on psi means chi -> -i chi.
    phi = detail::scaled(phi, FieldElement::i());
    chi = detail::scaled(chi, FieldElement::i().scaled(Rational(-1)));
  }
  if (variant & static_cast<unsigned>(DiracVariant::gamma5)) phi = detail::scaled(phi, FieldElement(-1));
  return DiracCharacteristic::from(std::move(phi), std::move(chi));
}

inline std::string variant_name(unsigned variant) {
  std::string out;
  if (variant & static_cast<unsigned>(DiracVariant::gamma5)) out += "gamma5 ";
  out += (variant & static_cast<unsigned>(DiracVariant::imaginary)) ? "i" : "";
  out += (variant & static_cast<unsigned>(DiracVariant::conjugate)) ? "Psi*" : "Psi";
  return out;
}

inline void check_dirac_context(const JetContext& ctx) {
  if (ctx.two_s() != 1 || ctx.fields() < 2) throw ContractViolation("Weyl system needs a spin-1/2 context with two families");
}

inline DiracCharacteristic build_dirac_scaling(const JetContext& ctx) {
  check_dirac_context(ctx);
  return DiracCharacteristic::from(build_scaling(ctx, false, kPhiFamily).q, build_scaling(ctx, false, kChiFamily).q);
}

inline DiracCharacteristic build_dirac_conformal(const JetContext& ctx, const ConformalKillingVector& v) {
  check_dirac_context(ctx);
  return DiracCharacteristic::from(build_conformal(ctx, v, false, kPhiFamily).q,
                                   build_conformal(ctx, v, false, kChiFamily).q);
}

/// W[Psi; pi]: the phi-half contracts pi with psi-jets, the psi-half conj(pi) with phi-jets.
inline DiracCharacteristic build_dirac_chiral(const JetContext& ctx, const KillingSpinor& pi,
                                              const std::map<int, Rational>& coefficient_override = {}) {
  check_dirac_context(ctx);
  if (pi.k != 0 || pi.l != 2) throw DomainError("Weyl chiral symmetry needs a Killing spinor of type (0,2)");
  return DiracCharacteristic::from(build_chiral(ctx, pi, kChiFamily, coefficient_override).q,
                                   build_chiral(ctx, pi, kPhiFamily, coefficient_override).q);
}

/// Q^{A'} = raised conj(R_chi).
inline std::array<Polynomial, 2> psi_half(const DiracCharacteristic& d) {
  return {d.chi[1].conj(), -d.chi[0].conj()};
}

/// psi^{A'} as a polynomial in conjugate family-1 jets, and its lower form.
inline Polynomial psi_lower(const JetContext& ctx, int ap) { return ctx.jet_poly(0, ap, 0, true, kChiFamily); }
inline Polynomial psi_upper(const JetContext& ctx, int ap) {
  return ap == 0 ? psi_lower(ctx, 1) : -psi_lower(ctx, 0);
}

/// psi-half of Z[Psi; xi] written directly:
/// xi^{CC'} psi^{A'}_{,CC'} + (1/2)(d^{A'}_C xi^{CC'}) psi_{C'} + (1/8)(d_{CC'} xi^{CC'}) psi^{A'}.
inline std::array<Polynomial, 2> psi_half_conformal_display(const JetContext& ctx, const ConformalKillingVector& v) {
  const auto xi = ckv_spinor(v);
  Polynomial div;
  for (int c = 0; c < 2; ++c)
    for (int cp = 0; cp < 2; ++cp) div += coord_derivative(xi[c][cp], c, cp);
  std::array<Polynomial, 2> out;
  for (int ap = 0; ap < 2; ++ap) {
    std::vector<Polynomial> parts;
    const Polynomial up = psi_upper(ctx, ap);
    for (int c = 0; c < 2; ++c)
      for (int cp = 0; cp < 2; ++cp) {
        parts.push_back(xi[c][cp] * ctx.total_derivative_lower(up, c, cp));
        parts.push_back((coord_derivative_mixed(xi[c][cp], c, ap) * psi_lower(ctx, cp)).scaled(FieldElement(Rational(1, 2))));
      }
    parts.push_back((div * up).scaled(FieldElement(Rational(1, 8))));
    out[ap] = Polynomial::sum(parts);
  }
  return out;
}

/// psi-half of W[Psi; pi] written directly:
/// conj(pi)^{BC} phi^{A'}_{BC} + (2/3) d^{A'}_C conj(pi)^{BC} phi_B.
inline std::array<Polynomial, 2> psi_half_chiral_display(const JetContext& ctx, const KillingSpinor& pi) {
  std::array<Polynomial, 2> out;
  for (int ap = 0; ap < 2; ++ap) {
    std::vector<Polynomial> parts;
    for (int b = 0; b < 2; ++b)
      for (int c = 0; c < 2; ++c) {
        const Polynomial pibar = pi(0, b + c).conj();
        parts.push_back(pibar * ctx.jet_poly(1, b + c, ap, false, kPhiFamily));
        parts.push_back((coord_derivative_mixed(pibar, c, ap) * ctx.jet_poly(0, b, 0, false, kPhiFamily))
                            .scaled(FieldElement(Rational(2, 3))));
      }
    out[ap] = Polynomial::sum(parts);
  }
  return out;
}

struct DiracReport {
  VerificationReport phi_half;
  VerificationReport chi_half;
  std::size_t psi_terms = 0;  // D_{AA'} Q^{A'} residual terms
  bool pass() const { return phi_half.pass && chi_half.pass && psi_terms == 0; }
};

/// Both halves of the decoupled pair: D^A{}_{A'} R_A = 0 and D_{AA'} Q^{A'} = 0.
inline DiracReport verify_dirac(const JetContext& ctx, const DiracCharacteristic& d) {
  check_dirac_context(ctx);
  DiracReport rep;
  rep.phi_half = verify_symmetry(ctx, Characteristic::from(1, d.phi), "dirac-phi");
  rep.chi_half = verify_symmetry(ctx, Characteristic::from(1, d.chi), "dirac-chi");
  const auto q = psi_half(d);
  for (int a = 0; a < 2; ++a) {
    Polynomial acc;
    for (int ap = 0; ap < 2; ++ap) acc += ctx.total_derivative_lower(q[ap], a, ap);
    rep.psi_terms += acc.size();
  }
  return rep;
}

/// pr Z[Psi; zeta] applied componentwise to both halves.
inline DiracCharacteristic dirac_lie_derive(const JetContext& ctx, const DiracCharacteristic& base,
                                            const ConformalKillingVector& zeta) {
  const auto z = build_dirac_conformal(ctx, zeta);
  Prolongation pr(ctx, std::map<int, Components>{{kPhiFamily, z.phi}, {kChiFamily, z.chi}});
  return DiracCharacteristic::from(pr.apply(base.phi), pr.apply(base.chi));
}

/// (2/9)[(r+1)^2 (r+2)^2 (r+3)^2 + ((r+1)^2-1)((r+2)^2-1)((r+3)^2-1)].
inline long long dirac_dimension(int r) {
  if (r < 0) throw ContractViolation("order must be non-negative");
  const long long a = r + 1, b = r + 2, c = r + 3;
  return 2 * (a * a * b * b * c * c + (a * a - 1) * (b * b - 1) * (c * c - 1)) / 9;
}

struct DiracRankReport {
  std::size_t generators = 0;
  std::size_t rank = 0;
  long long expected = 0;
  bool all_verified = true;
  bool pass() const { return all_verified && static_cast<long long>(rank) == expected; }
};

/// Real rank over the variant table: 8 scaling generators at order 0; at order 1 also
/// 8 x 15 conformal and 4 x 20 chiral ones (real basis pi and i pi of the type-(0,2) spinors).
inline DiracRankReport dirac_constructive_rank(int r, bool verify_generators = false) {
  if (r < 0) throw ContractViolation("order must be non-negative");
  if (r > 1) throw CapacityError(r, 1);
  JetContext ctx(1, r + 1, 2);
  DiracRankReport rep;
  rep.expected = dirac_dimension(r);
  ColumnIndexer cols;
  SparseEchelon echelon;
  auto add = [&](const DiracCharacteristic& d) {
    ++rep.generators;
    if (verify_generators && !verify_dirac(ctx, d).pass()) rep.all_verified = false;
    Components all = d.phi;
    all.insert(all.end(), d.chi.begin(), d.chi.end());
    echelon.insert(real_split(flatten(all, cols)));
  };
  const unsigned g5 = static_cast<unsigned>(DiracVariant::gamma5), cj = static_cast<unsigned>(DiracVariant::conjugate),
                 im = static_cast<unsigned>(DiracVariant::imaginary);
  const auto s = build_dirac_scaling(ctx);
  for (unsigned v = 0; v < 8; ++v) add(apply_variant(s, (v & 1 ? g5 : 0) | (v & 2 ? cj : 0) | (v & 4 ? im : 0)));
  if (r == 0) {
    rep.rank = echelon.rank();
    return rep;
  }
  for (const auto& xi : conformal_killing_basis()) {
    const auto z = build_dirac_conformal(ctx, xi);
    for (unsigned v = 0; v < 8; ++v) add(apply_variant(z, (v & 1 ? g5 : 0) | (v & 2 ? cj : 0) | (v & 4 ? im : 0)));
  }
  for (const auto& pi : solve_killing(0, 2).elements)
    for (const auto& p : {pi, pi.scaled(FieldElement::i())}) {
      const auto w = build_dirac_chiral(ctx, p);
      for (unsigned v = 0; v < 4; ++v) add(apply_variant(w, (v & 1 ? g5 : 0) | (v & 2 ? cj : 0)));
    }
  rep.rank = echelon.rank();
  return rep;
}

}  // namespace spinorsym
