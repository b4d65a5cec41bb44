#pragma once

// Symmetry families of the spin-s massless equation in evolutionary form.
//
// A characteristic is the component list Q[j] of Q_{A_{2s}}; the full field is
// Q d/dphi + conj(Q) d/dconj(phi). Families: scaling S and its dual, elementary
// (jet-free solutions), conformal Z[xi] and Z[i xi], chiral W[pi], and their
// Lie-derivative towers by conformal symmetries.

#include <array>
#include <map>
#include <memory>
#include <optional>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "spinorsym/conventions.hpp"
#include "spinorsym/errors.hpp"
#include "spinorsym/jet.hpp"
#include "spinorsym/killing.hpp"
#include "spinorsym/linalg.hpp"
#include "spinorsym/parallel.hpp"
#include "spinorsym/polynomial.hpp"

namespace spinorsym {

struct Characteristic {
  int two_s = 0;
  int order = 0;
  Components q;

  static Characteristic from(int two_s, Components q) {
    Characteristic c;
    c.two_s = two_s;
    c.q = std::move(q);
    c.order = 0;
    for (const auto& p : c.q) c.order = std::max(c.order, p.max_jet_order());
    return c;
  }
  Characteristic scaled(const FieldElement& f) const {
    Components out;
    for (const auto& p : q) out.push_back(p.scaled(f));
    return from(two_s, std::move(out));
  }
  Characteristic operator+(const Characteristic& o) const {
    if (o.q.size() != q.size()) throw ContractViolation("characteristics of different spin");
    Components out;
    for (std::size_t j = 0; j < q.size(); ++j) out.push_back(q[j] + o.q[j]);
    return from(two_s, std::move(out));
  }
  bool is_zero() const {
    for (const auto& p : q)
      if (!p.is_zero()) return false;
    return true;
  }
};

inline Rational spin_of(int two_s) { return make_rational(two_s, 2); }

/// c_{2s,p} = ((4s-p+1)/(4s+1)) binomial(2s,p).
inline Rational chiral_coefficient(int two_s, int p) {
  if (two_s < 1) throw ContractViolation("two_s must be positive");
  if (p < 0 || p > two_s) throw ContractViolation("chiral coefficient index out of range");
  return make_rational(2 * two_s - p + 1, 2 * two_s + 1) * binomial(two_s, p);
}

// ---- verification --------------------------------------------------------------

struct VerificationReport {
  std::string family;
  std::string params;
  int order = 0;
  bool pass = false;
  std::size_t residual_terms = 0;
  std::string residual;  // first nonzero residual component, empty on pass
};

/// Determining equation D^{A}{}_{A'} Q_{A A_{2s-1}} = 0 in on-shell jets.
inline VerificationReport verify_symmetry(const JetContext& ctx, const Characteristic& q, std::string family = {},
                                          std::string params = {}) {
  VerificationReport rep;
  rep.family = std::move(family);
  rep.params = std::move(params);
  rep.order = q.order;
  for (const auto& row : symmetry_residual(ctx, q.q))
    for (int ap = 0; ap < 2; ++ap) {
      rep.residual_terms += row[ap].size();
      if (rep.residual.empty() && !row[ap].is_zero()) rep.residual = row[ap].str();
    }
  rep.pass = rep.residual_terms == 0;
  return rep;
}

// ---- scaling and elementary --------------------------------------------------------

inline Characteristic build_scaling(const JetContext& ctx, bool dual, int field = 0) {
  Components q;
  for (int j = 0; j <= ctx.two_s(); ++j) {
    Polynomial v = ctx.jet_poly(0, j, 0, false, field);
    q.push_back(dual ? v.scaled(FieldElement(0, 1)) : v);
  }
  return Characteristic::from(ctx.two_s(), std::move(q));
}

/// Massless residual d^{A}{}_{A'} phi_{A A_{2s-1}} of a jet-free symmetric spinor field.
inline std::vector<std::array<Polynomial, 2>> massless_residual(const Components& phi) {
  const int two_s = static_cast<int>(phi.size()) - 1;
  std::vector<std::array<Polynomial, 2>> out(static_cast<std::size_t>(two_s));
  for (int j = 0; j < two_s; ++j)
    for (int ap = 0; ap < 2; ++ap) out[j][ap] = coord_derivative(phi[j], 1, ap) - coord_derivative(phi[j + 1], 0, ap);
  return out;
}

/// Basis of polynomial solutions of the massless equation with degree <= degree.
inline std::vector<Components> solve_massless_polynomial(int two_s, int degree) {
  if (two_s < 1) throw ContractViolation("two_s must be positive");
  if (degree < 0) throw ContractViolation("degree must be non-negative");
  std::vector<Components> out;
  for (int d = 0; d <= degree; ++d) {
    const auto monos = coordinate_monomials(d);
    const std::size_t nm = monos.size();
    const std::size_t cols = static_cast<std::size_t>(two_s + 1) * nm;
    std::vector<SparseRow> rows;
    if (d > 0) {
      const auto lower = coordinate_monomials(d - 1);
      std::map<Monomial, std::size_t> lower_index;
      for (std::size_t i = 0; i < lower.size(); ++i) lower_index.emplace(lower[i], i);
      std::map<std::size_t, std::map<std::size_t, FieldElement>> acc;
      for (int j = 0; j <= two_s; ++j)
        for (std::size_t mi = 0; mi < nm; ++mi)
          for (int axis = 0; axis < 4; ++axis) {
            const Variable xv = Variable::coordinate(axis);
            const auto e = monos[mi].exponent(xv);
            if (e == 0) continue;
            const std::size_t ni = lower_index.at(monos[mi].divided_by(xv));
            // phi[j] enters equation row j (via d_1) and row j-1 (via -d_0).
            for (int ap = 0; ap < 2; ++ap) {
              if (j < two_s) {
                FieldElement w = conventions::sigma(axis, 1, ap).scaled(Rational(e));
                if (!w.is_zero()) acc[(static_cast<std::size_t>(j) * 2 + ap) * lower.size() + ni][j * nm + mi] += w;
              }
              if (j > 0) {
                FieldElement w = conventions::sigma(axis, 0, ap).scaled(Rational(-static_cast<long>(e)));
                if (!w.is_zero())
                  acc[(static_cast<std::size_t>(j - 1) * 2 + ap) * lower.size() + ni][j * nm + mi] += w;
              }
            }
          }
      for (auto& [r, entries] : acc) {
        SparseRow sr;
        for (auto& [c, v] : entries)
          if (!v.is_zero()) sr.emplace_back(c, v);
        if (!sr.empty()) rows.push_back(std::move(sr));
      }
    }
    for (const auto& vec : sparse_nullspace(rows, cols)) {
      std::vector<std::vector<Polynomial::Term>> terms(static_cast<std::size_t>(two_s + 1));
      for (const auto& [c, v] : vec) terms[c / nm].push_back({monos[c % nm], v});
      Components phi;
      for (auto& t : terms) phi.push_back(Polynomial::from_terms(std::move(t)));
      out.push_back(std::move(phi));
    }
  }
  return out;
}

/// Elementary symmetry Q = phi(x) for a solution phi; non-solutions are rejected.
inline Characteristic build_elementary(int two_s, const Components& solution) {
  if (static_cast<int>(solution.size()) != two_s + 1) throw ContractViolation("solution has wrong component count");
  for (const auto& p : solution)
    if (p.has_jets()) throw ContractViolation("elementary symmetry must be jet-free");
  std::size_t terms = 0;
  std::string first;
  for (const auto& row : massless_residual(solution))
    for (const auto& p : row) {
      terms += p.size();
      if (first.empty() && !p.is_zero()) first = p.str();
    }
  if (terms != 0)
    throw DomainError("not a solution of the massless equation: residual has " + std::to_string(terms) +
                      " terms, first " + first);
  return Characteristic::from(two_s, solution);
}

// ---- conformal family ------------------------------------------------------------

/// Z[xi] (or Z[i xi] when dual): conformally weighted Lie derivative of phi.
inline Characteristic build_conformal(const JetContext& ctx, const ConformalKillingVector& v, bool dual = false,
                                      int field = 0) {
  conformal_factor(v);
  const int two_s = ctx.two_s();
  const auto xi = ckv_spinor(v);
  Polynomial div;
  for (int c = 0; c < 2; ++c)
    for (int cp = 0; cp < 2; ++cp) div += coord_derivative(xi[c][cp], c, cp);
  // dxi[a][c] = sum_{C'} d_{aC'} xi^{cC'}
  std::array<std::array<Polynomial, 2>, 2> dxi;
  for (int a = 0; a < 2; ++a)
    for (int c = 0; c < 2; ++c)
      for (int cp = 0; cp < 2; ++cp) dxi[a][c] += coord_derivative(xi[c][cp], a, cp);
  const Rational s = spin_of(two_s);
  const Rational third = (Rational(1) - s) / 4;
  Components q;
  for (int j = 0; j <= two_s; ++j) {
    std::vector<Polynomial> parts;
    for (int c = 0; c < 2; ++c) {
      // xi^{CC'} phi_{A C C'}: lowering the primed index of phi[1].
      parts.push_back(xi[c][0] * ctx.jet_poly(1, j + c, 1, false, field).scaled(FieldElement(-1)));
      parts.push_back(xi[c][1] * ctx.jet_poly(1, j + c, 0, false, field));
      // s d_{C'(A} xi^{CC'} phi_{A_{2s-1})C}
      if (j > 0)
        parts.push_back((dxi[1][c] * ctx.jet_poly(0, j - 1 + c, 0, false, field))
                            .scaled(FieldElement(s * make_rational(j, two_s))));
      if (j < two_s)
        parts.push_back((dxi[0][c] * ctx.jet_poly(0, j + c, 0, false, field))
                            .scaled(FieldElement(s * make_rational(two_s - j, two_s))));
    }
    parts.push_back((div * ctx.jet_poly(0, j, 0, false, field)).scaled(FieldElement(third)));
    Polynomial z = Polynomial::sum(parts);
    q.push_back(dual ? z.scaled(FieldElement(0, 1)) : z);
  }
  return Characteristic::from(two_s, std::move(q));
}

// ---- chiral family ----------------------------------------------------------------

/// Chain of lower-lower coordinate derivatives d_{00'}^{n0} d_{01'}^{n1} d_{10'}^{n2} d_{11'}^{n3}.
class PiDerivatives {
 public:
  explicit PiDerivatives(const KillingSpinor& pi) : pi_(pi) {}

  const Polynomial& get(int m, const std::array<int, 4>& n) {
    auto key = std::make_tuple(m, n[0], n[1], n[2], n[3]);
    auto it = memo_.find(key);
    if (it != memo_.end()) return it->second;
    Polynomial value;
    int slot = -1;
    for (int s = 0; s < 4; ++s)
      if (n[s] > 0) {
        slot = s;
        break;
      }
    if (slot < 0) {
      value = pi_(0, m);
    } else {
      auto r = n;
      --r[slot];
      value = coord_derivative(get(m, r), slot / 2, slot % 2);
    }
    return memo_.emplace(key, std::move(value)).first->second;
  }

 private:
  const KillingSpinor& pi_;
  std::map<std::tuple<int, int, int, int, int>, Polynomial> memo_;
};

/// Term p of W[pi] without its coefficient:
/// d_{B'_1(A} ... d_{B'_p|A} pi^{B'_p C'_{4s-p}} conj(phi)_{A_{2s-p}) C'_{4s-p}}.
/// The conjugate jets are those of family conj_field.
inline Components chiral_term(const JetContext& ctx, const KillingSpinor& pi, int p, int conj_field = 0) {
  const int two_s = ctx.two_s();
  const int q = two_s - p;
  PiDerivatives dpi(pi);
  Components out;
  for (int j = 0; j <= two_s; ++j) {
    std::vector<Polynomial> parts;
    for (const auto& n : compositions4(p)) {
      const int t = n[2] + n[3];   // ones among the p derivative unprimed slots
      const int rest = j - t;      // ones among the q unprimed slots of conj(phi)
      if (rest < 0 || rest > q) continue;
      const Rational w = multinomial(p, n) * binomial(q, rest) / binomial(two_s, j);
      const int z = q - rest;  // zeros among them; lowering flips and signs each
      for (int c1 = 0; c1 <= 2 * two_s - p; ++c1) {
        const Polynomial& d = dpi.get(n[1] + n[3] + c1, n);
        if (d.is_zero()) continue;
        Rational ww = w * binomial(2 * two_s - p, c1);
        if (z % 2) ww = -ww;
        parts.push_back((d * ctx.jet_poly(q, c1, z, true, conj_field)).scaled(FieldElement(ww)));
      }
    }
    out.push_back(Polynomial::sum(parts));
  }
  return out;
}

/// W[pi] = sum_p c_{2s,p} T_p. coefficient_override replaces c_{2s,p} for the listed p.
inline Characteristic build_chiral(const JetContext& ctx, const KillingSpinor& pi, int conj_field = 0,
                                   const std::map<int, Rational>& coefficient_override = {}) {
  const int two_s = ctx.two_s();
  if (pi.k != 0 || pi.l != 2 * two_s)
    throw DomainError("chiral symmetry needs a Killing spinor of type (0," + std::to_string(2 * two_s) + ")");
  Components q(static_cast<std::size_t>(two_s + 1));
  for (int p = 0; p <= two_s; ++p) {
    auto it = coefficient_override.find(p);
    const Rational c = it != coefficient_override.end() ? it->second : chiral_coefficient(two_s, p);
    const Components t = chiral_term(ctx, pi, p, conj_field);
    for (int j = 0; j <= two_s; ++j) q[j] += t[j].scaled(FieldElement(c));
  }
  return Characteristic::from(two_s, std::move(q));
}

struct PiRecursionReport {
  int two_s = 0;
  std::size_t relations = 0;
  std::vector<std::string> violations;
  bool pass() const { return violations.empty(); }
};

/// Pi^1_p (coordinate part of the determining operator on T_p) against
/// Pi^2_{p+1} (jet part on T_{p+1}), plus the two endpoint identities.
inline PiRecursionReport pi_recursion_check(const JetContext& ctx, const KillingSpinor& pi) {
  const int two_s = ctx.two_s();
  if (pi.k != 0 || pi.l != 2 * two_s) throw DomainError("pi recursion needs a type (0,4s) Killing spinor");
  std::vector<std::vector<std::array<Polynomial, 2>>> pi1, pi2;
  for (int p = 0; p <= two_s; ++p) {
    const Components t = chiral_term(ctx, pi, p);
    pi1.push_back(symmetry_residual(ctx, t, DerivMode::coordinates_only));
    pi2.push_back(symmetry_residual(ctx, t, DerivMode::jets_only));
  }
  PiRecursionReport rep;
  rep.two_s = two_s;
  auto is_zero = [](const std::vector<std::array<Polynomial, 2>>& r) {
    for (const auto& row : r)
      for (const auto& p : row)
        if (!p.is_zero()) return false;
    return true;
  };
  for (int p = 0; p < two_s; ++p) {
    const int fs = 2 * two_s;
    const Rational ratio = -make_rational((fs - p) * (two_s - p), (fs - p + 1) * (p + 1));
    ++rep.relations;
    for (std::size_t j = 0; j < pi1[p].size(); ++j)
      for (int ap = 0; ap < 2; ++ap)
        if (pi1[p][j][ap] != pi2[p + 1][j][ap].scaled(FieldElement(ratio)))
          rep.violations.push_back("Pi1_" + std::to_string(p) + " != ratio * Pi2_" + std::to_string(p + 1) +
                                   " at [" + std::to_string(j) + "][" + std::to_string(ap) + "]");
  }
  ++rep.relations;
  if (!is_zero(pi1[two_s])) rep.violations.push_back("Pi1_2s nonzero");
  ++rep.relations;
  if (!is_zero(pi2[0])) rep.violations.push_back("Pi2_0 nonzero");
  return rep;
}

// ---- Lie-derivative towers --------------------------------------------------------

/// Componentwise derivative pr Z[zeta] applied to the base characteristic.
inline Characteristic lie_derive(const JetContext& ctx, const Characteristic& base, const ConformalKillingVector& zeta) {
  Prolongation pr(ctx, build_conformal(ctx, zeta).q);
  return Characteristic::from(base.two_s, pr.apply(base.q));
}

/// Reusable prolongations of Z[zeta] for repeated tower construction.
class ConformalProlongations {
 public:
  ConformalProlongations(const JetContext& ctx, const std::vector<ConformalKillingVector>& ckvs) : ctx_(&ctx) {
    for (const auto& v : ckvs) pr_.push_back(std::make_unique<Prolongation>(ctx, build_conformal(ctx, v).q));
  }
  std::size_t size() const { return pr_.size(); }
  Characteristic apply(std::size_t index, const Characteristic& base) const {
    return Characteristic::from(base.two_s, pr_.at(index)->apply(base.q));
  }

 private:
  const JetContext* ctx_;
  std::vector<std::unique_ptr<Prolongation>> pr_;
};

// ---- leading symbols -------------------------------------------------------------

/// Part of Q built from jets of maximal order.
inline Characteristic leading_symbol(const Characteristic& q) {
  Components out;
  for (const auto& p : q.q)
    out.push_back(p.filtered([&](const Monomial& m) { return m.max_jet_order() == q.order; }));
  Characteristic c;
  c.two_s = q.two_s;
  c.order = q.order;
  c.q = std::move(out);
  return c;
}

/// K^{C}{}_{C'} = xi^{CD'} eps_{D'C'} as [C][C'].
inline std::array<std::array<Polynomial, 2>, 2> mixed_ckv(const ConformalKillingVector& v) {
  auto up = ckv_spinor(v);
  std::array<std::array<Polynomial, 2>, 2> out;
  for (int c = 0; c < 2; ++c) {
    out[c][0] = -up[c][1];
    out[c][1] = up[c][0];
  }
  return out;
}

namespace detail {

/// Sum over index strings of prod_r K_r[C_r][C'_r], grouped by (#ones in C, #ones in C').
inline std::map<std::pair<int, int>, Polynomial> ckv_products(const std::vector<ConformalKillingVector>& vs) {
  std::map<std::pair<int, int>, Polynomial> acc{{{0, 0}, Polynomial(1)}};
  for (const auto& v : vs) {
    const auto k = mixed_ckv(v);
    std::map<std::pair<int, int>, Polynomial> next;
    for (const auto& [key, val] : acc)
      for (int c = 0; c < 2; ++c)
        for (int cp = 0; cp < 2; ++cp) {
          if (k[c][cp].is_zero()) continue;
          next[{key.first + c, key.second + cp}] += val * k[c][cp];
        }
    acc = std::move(next);
  }
  return acc;
}

}  // namespace detail

/// (-1)^{p+1} xi^{(C_1}_{(C'_1} zeta_1 ... zeta_p^{C_{p+1})}_{C'_{p+1})} phi_{A_{2s} C_{p+1}}^{C'_{p+1}}.
inline Characteristic conformal_leading_closed_form(const JetContext& ctx, const ConformalKillingVector& xi,
                                                    const std::vector<ConformalKillingVector>& zetas,
                                                    bool dual = false) {
  std::vector<ConformalKillingVector> all{xi};
  all.insert(all.end(), zetas.begin(), zetas.end());
  const int p = static_cast<int>(zetas.size());
  const auto prods = detail::ckv_products(all);
  FieldElement sign(((p + 1) % 2 == 0) ? 1 : -1);
  if (dual) sign = sign * FieldElement(0, 1);
  sign = sign.scaled(Rational(conventions::kLeadingSymbolSign));
  Components q;
  for (int j = 0; j <= ctx.two_s(); ++j) {
    std::vector<Polynomial> parts;
    for (const auto& [key, val] : prods) parts.push_back(val * ctx.jet_poly(p + 1, j + key.first, key.second));
    q.push_back(Polynomial::sum(parts).scaled(sign));
  }
  Characteristic c;
  c.two_s = ctx.two_s();
  c.order = p + 1;
  c.q = std::move(q);
  return c;
}

/// (-1)^q zeta_1{}_{(C'_1}^{(C_1} ... zeta_q{}_{C'_q}^{C_q)} pi_{B'_{4s})}
/// conj(phi)_{A_{2s} C_q}^{C'_q B'_{4s}}, all primed indices of conj(phi) raised.
inline Characteristic chiral_leading_closed_form(const JetContext& ctx, const KillingSpinor& pi,
                                                 const std::vector<ConformalKillingVector>& zetas) {
  const int two_s = ctx.two_s();
  const int q = static_cast<int>(zetas.size());
  const int order = two_s + q;         // order of conj(phi)
  const int primed = two_s + order;  // its primed index count
  const auto prods = detail::ckv_products(zetas);
  Components out;
  for (int j = 0; j <= two_s; ++j) {
    std::vector<Polynomial> parts;
    for (const auto& [key, val] : prods)
      for (int t = 0; t <= 2 * two_s; ++t) {
        // pi lowered: t ones lowered from 4s-t ones upper, sign (-1)^t.
        Rational w = binomial(2 * two_s, t);
        if (t % 2) w = -w;
        const int u = j + key.first;   // ones among lower unprimed indices
        const int v = key.second + t;  // ones among upper primed indices
        if ((order - u) % 2) w = -w;
        if (v % 2) w = -w;
        const Polynomial& comp = pi(0, 2 * two_s - t);
        if (comp.is_zero()) continue;
        parts.push_back((val * comp * ctx.jet_poly(order, primed - v, order - u, true)).scaled(FieldElement(w)));
      }
    out.push_back(Polynomial::sum(parts).scaled(FieldElement(q % 2 ? -1 : 1)));
  }
  Characteristic c;
  c.two_s = two_s;
  c.order = order;
  c.q = std::move(out);
  return c;
}

// ---- dimension counts ------------------------------------------------------------

/// d_r: real dimension of inequivalent symmetries of order <= r.
inline long long dimension_d_r(int two_s, int r) {
  if (two_s < 1) throw ContractViolation("two_s must be positive");
  if (r < 0) throw ContractViolation("order must be non-negative");
  const long long a = r + 1, b = r + 2, c = r + 3, f = static_cast<long long>(two_s) * two_s;
  long long d = a * a * b * b * c * c / 18;
  if (r >= two_s) d += (a * a - f) * (b * b - f) * (c * c - f) / 18;
  return d;
}

/// Flattening of characteristics into real coordinate rows: column pairs per (component, monomial).
class CharacteristicRank {
 public:
  bool insert(const Characteristic& c) { return echelon_.insert(real_split(flatten(c.q, cols_))); }
  std::size_t rank() const { return echelon_.rank(); }

 private:
  ColumnIndexer cols_;
  SparseEchelon echelon_;
};

struct RankReport {
  int two_s = 0;
  int r = 0;
  std::size_t generators = 0;
  std::size_t rank = 0;
  long long expected = 0;
  bool all_verified = true;
  bool pass() const { return all_verified && static_cast<long long>(rank) == expected; }
};

struct RankOptions {
  unsigned threads = 1;
  bool verify_generators = false;
};

/// Real rank of the spanning set S, S~, Z[xi;zeta..], Z[i xi;zeta..] (p <= r-1)
/// and W[pi;zeta..], W[i pi;zeta..] (q <= r-2s) over the basis CKVs.
inline RankReport constructive_rank(int two_s, int r, RankOptions opts = {}) {
  if (r < 0) throw ContractViolation("order must be non-negative");
  if (r > 3) throw CapacityError(r, 3);
  JetContext ctx(two_s, r + 1);
  const auto ckvs = conformal_killing_basis();
  RankReport rep;
  rep.two_s = two_s;
  rep.r = r;
  rep.expected = dimension_d_r(two_s, r);
  CharacteristicRank rank;
  auto add = [&](const Characteristic& c) {
    ++rep.generators;
    if (opts.verify_generators && !verify_symmetry(ctx, c).pass) rep.all_verified = false;
    rank.insert(c);
  };
  add(build_scaling(ctx, false));
  add(build_scaling(ctx, true));

  std::unique_ptr<ConformalProlongations> towers;
  if (r >= 2) towers = std::make_unique<ConformalProlongations>(ctx, ckvs);

  // Conformal towers: level p holds Z[xi; zeta_1..zeta_p] for all index chains.
  if (r >= 1) {
    std::vector<Characteristic> level;
    for (const auto& v : ckvs) level.push_back(build_conformal(ctx, v));
    for (int p = 0; p <= r - 1; ++p) {
      for (const auto& c : level) {
        add(c);
        add(c.scaled(FieldElement(0, 1)));
      }
      if (p == r - 1) break;
      std::vector<Characteristic> next;
      for (const auto& base : level) {
        auto derived = parallel_map<Characteristic>(towers->size(), opts.threads,
                                                    [&](std::size_t z) { return towers->apply(z, base); });
        for (auto& d : derived) next.push_back(std::move(d));
      }
      level = std::move(next);
    }
  }
  // Chiral towers.
  if (r >= two_s) {
    const auto pis = solve_killing(0, 2 * two_s).elements;
    std::vector<Characteristic> level;
    for (const auto& pi : pis) level.push_back(build_chiral(ctx, pi));
    for (int q = 0; q <= r - two_s; ++q) {
      for (const auto& c : level) {
        add(c);
        add(c.scaled(FieldElement(0, 1)));
      }
      if (q == r - two_s) break;
      std::vector<Characteristic> next;
      for (const auto& base : level)
        for (std::size_t z = 0; z < towers->size(); ++z) next.push_back(towers->apply(z, base));
      level = std::move(next);
    }
  }
  rep.rank = rank.rank();
  return rep;
}

// ---- descriptors -----------------------------------------------------------------

enum class Family { scaling, dual_scaling, elementary, conformal, dual_conformal, chiral };

inline std::string family_name(Family f) {
  switch (f) {
    case Family::scaling: return "scaling";
    case Family::dual_scaling: return "dual-scaling";
    case Family::elementary: return "elementary";
    case Family::conformal: return "conformal";
    case Family::dual_conformal: return "dual-conformal";
    case Family::chiral: return "chiral";
  }
  return "unknown";
}

inline Family parse_family(const std::string& s) {
  for (Family f : {Family::scaling, Family::dual_scaling, Family::elementary, Family::conformal, Family::dual_conformal,
                   Family::chiral})
    if (family_name(f) == s) return f;
  if (s == "S") return Family::scaling;
  if (s == "S_tilde") return Family::dual_scaling;
  if (s == "Z") return Family::conformal;
  if (s == "Zi") return Family::dual_conformal;
  if (s == "W") return Family::chiral;
  throw ContractViolation("unknown symmetry family '" + s + "'");
}

/// Family tag plus payload: CKV indices (generator first, then the tower),
/// Killing-spinor index for chiral symmetries, solution index and degree for elementary ones.
struct SymmetryDescriptor {
  Family family = Family::scaling;
  std::vector<int> ckv;
  int killing_index = -1;
  int solution_degree = 0;
  int solution_index = -1;

  std::string params() const {
    std::ostringstream os;
    os << "{";
    if (!ckv.empty()) {
      os << "\"ckv\":[";
      for (std::size_t i = 0; i < ckv.size(); ++i) os << (i ? "," : "") << ckv[i];
      os << "]";
    }
    if (killing_index >= 0) os << (ckv.empty() ? "" : ",") << "\"killing\":" << killing_index;
    if (solution_index >= 0) os << "\"solution\":" << solution_index << ",\"degree\":" << solution_degree;
    os << "}";
    return os.str();
  }
};

/// Deterministic construction from descriptors; bases are computed once.
class SymmetryFactory {
 public:
  explicit SymmetryFactory(const JetContext& ctx) : ctx_(&ctx), ckvs_(conformal_killing_basis()) {}

  const std::vector<ConformalKillingVector>& ckvs() const { return ckvs_; }
  const std::vector<KillingSpinor>& chiral_basis() {
    if (!pis_) pis_ = solve_killing(0, 2 * ctx_->two_s()).elements;
    return *pis_;
  }

  Characteristic build(const SymmetryDescriptor& d) {
    const int two_s = ctx_->two_s();
    auto ckv_at = [&](int i) -> const ConformalKillingVector& {
      if (i < 0 || i >= static_cast<int>(ckvs_.size())) throw ContractViolation("CKV index out of range");
      return ckvs_[static_cast<std::size_t>(i)];
    };
    Characteristic base;
    std::size_t tower_start = 0;
    switch (d.family) {
      case Family::scaling: return build_scaling(*ctx_, false);
      case Family::dual_scaling: return build_scaling(*ctx_, true);
      case Family::elementary: {
        const auto sols = solve_massless_polynomial(two_s, d.solution_degree);
        if (d.solution_index < 0 || d.solution_index >= static_cast<int>(sols.size()))
          throw ContractViolation("solution index out of range");
        return build_elementary(two_s, sols[static_cast<std::size_t>(d.solution_index)]);
      }
      case Family::conformal:
      case Family::dual_conformal:
        if (d.ckv.empty()) throw ContractViolation("conformal descriptor needs a CKV index");
        base = build_conformal(*ctx_, ckv_at(d.ckv[0]), d.family == Family::dual_conformal);
        tower_start = 1;
        break;
      case Family::chiral: {
        const auto& pis = chiral_basis();
        if (d.killing_index < 0 || d.killing_index >= static_cast<int>(pis.size()))
          throw ContractViolation("Killing spinor index out of range");
        base = build_chiral(*ctx_, pis[static_cast<std::size_t>(d.killing_index)]);
        break;
      }
    }
    // Z[...; zeta_1..zeta_p] = pr Z[zeta_1] ... pr Z[zeta_p] base: innermost first.
    for (std::size_t i = d.ckv.size(); i > tower_start; --i) base = lie_derive(*ctx_, base, ckv_at(d.ckv[i - 1]));
    return base;
  }

 private:
  const JetContext* ctx_;
  std::vector<ConformalKillingVector> ckvs_;
  std::optional<std::vector<KillingSpinor>> pis_;
};

}  // namespace spinorsym
