#pragma once

// On-shell jet calculus for massless fields.
//
// Jet variable phi[p][j][k] of field f is the symmetrized derivative
// phi_{A_{2s} B_p}^{B'_p}: 2s+p lower unprimed indices with j ones and p upper
// primed indices with k ones. Its conjugate keeps the same numbers (j counts the
// lower primed ones, k the upper unprimed ones). Penrose's exact sets make these
// free coordinates on the solution manifold, so the total derivative
// D_C^{C'} simply appends C and C' to the index groups.

#include <algorithm>
#include <array>
#include <bit>
#include <cstdio>
#include <map>
#include <memory>
#include <mutex>
#include <string>
#include <tuple>
#include <utility>
#include <vector>

#include "spinorsym/conventions.hpp"
#include "spinorsym/errors.hpp"
#include "spinorsym/field.hpp"
#include "spinorsym/linalg.hpp"
#include "spinorsym/polynomial.hpp"
#include "spinorsym/spinor.hpp"

namespace spinorsym {

/// Which parts of a total derivative to keep.
enum class DerivMode { full, coordinates_only, jets_only };

/// Components Q[j], j = number of ones among the 2s lower unprimed indices.
using Components = std::vector<Polynomial>;

/// Symmetric rank-(2s+p, p) block indexed [j][k].
using Block = std::vector<std::vector<Polynomial>>;

class JetContext {
 public:
  JetContext(int two_s, int max_order, int fields = 1) : two_s_(two_s), max_order_(max_order), fields_(fields) {
    if (two_s < 1) throw ContractViolation("two_s must be positive");
    if (max_order < 0) throw ContractViolation("max_order must be non-negative");
    if (fields < 1 || fields > 4) throw ContractViolation("between 1 and 4 field families supported");
    // T[(c,c')][i] = tau^i(c,c'); mu = T^{-1}; nu(cc', dd') = sum_i tau^i(cc') conj(mu_i(dd')).
    Matrix aug(4, Vector(8));
    for (int r = 0; r < 4; ++r) {
      for (int i = 0; i < 4; ++i) aug[r][i] = conventions::tau(i, r / 2, r % 2);
      aug[r][4 + r] = FieldElement(1);
    }
    rref(aug);
    for (int i = 0; i < 4; ++i)
      for (int r = 0; r < 4; ++r) mu_[i][r] = aug[i][4 + r];
    for (int r = 0; r < 4; ++r)
      for (int d = 0; d < 4; ++d) {
        FieldElement acc;
        for (int i = 0; i < 4; ++i) acc += conventions::tau(i, r / 2, r % 2) * mu_[i][d].conj();
        nu_[r][d] = acc;
      }
  }

  int two_s() const { return two_s_; }
  int max_order() const { return max_order_; }
  int fields() const { return fields_; }

  /// phi[p][j][k] (or its conjugate) of field f, range-checked.
  Variable jet(int p, int j, int k, bool conj = false, int field = 0) const {
    if (p > max_order_) throw CapacityError(p, max_order_);
    if (p < 0 || j < 0 || j > two_s_ + p || k < 0 || k > p || field < 0 || field >= fields_)
      throw ContractViolation("jet variable index out of range");
    return Variable::jet(field, p, j, k, conj);
  }
  Polynomial jet_poly(int p, int j, int k, bool conj = false, int field = 0) const {
    return Polynomial::variable(jet(p, j, k, conj, field));
  }

  /// mu_i(c,c'): D_i = sum mu_i(cc') D_c^{c'}.
  const FieldElement& mu(int i, int c, int cp) const { return mu_[i][c * 2 + cp]; }
  /// nu(cc', dd'): D_c^{c'} conj(phi)[p][j][k] = sum nu conj(phi)[p+1][j+d][k+d'].
  const FieldElement& nu(int c, int cp, int d, int dp) const { return nu_[c * 2 + cp][d * 2 + dp]; }

  /// Total derivative D_C^{C'} (lower unprimed, upper primed).
  Polynomial total_derivative(const Polynomial& g, int c, int cp, DerivMode mode = DerivMode::full) const {
    std::vector<Polynomial::Term> out;
    for (const auto& t : g.terms()) {
      for (const auto& f : t.mono.factors()) {
        const Variable v = f.var;
        const Monomial rest = t.mono.divided_by(v);
        const FieldElement base = t.coeff.scaled(Rational(f.exp));
        if (v.is_coordinate()) {
          if (mode == DerivMode::jets_only) continue;
          FieldElement w = conventions::tau(v.axis(), c, cp);
          if (!w.is_zero()) out.push_back({rest, base * w});
        } else if (v.is_jet_like()) {
          if (mode == DerivMode::coordinates_only) continue;
          const int p = v.order() + 1;
          if (p > max_order_) throw CapacityError(p, max_order_);
          if (!v.is_conjugate()) {
            out.push_back({rest.times(Variable::jet(v.field(), p, v.j() + c, v.k() + cp)), base});
          } else {
            for (int d = 0; d < 2; ++d)
              for (int dp = 0; dp < 2; ++dp) {
                const FieldElement& w = nu(c, cp, d, dp);
                if (w.is_zero()) continue;
                out.push_back({rest.times(Variable::jet(v.field(), p, v.j() + d, v.k() + dp, true)), base * w});
              }
          }
        }
      }
    }
    return Polynomial::from_terms(std::move(out));
  }

  /// D_{CC'} with both indices lower: D_{c0} = -D_c^1, D_{c1} = D_c^0.
  Polynomial total_derivative_lower(const Polynomial& g, int c, int cp, DerivMode mode = DerivMode::full) const {
    return cp == 0 ? -total_derivative(g, c, 1, mode) : total_derivative(g, c, 0, mode);
  }

  /// Real total derivative D_i.
  Polynomial axis_derivative(const Polynomial& g, int i, DerivMode mode = DerivMode::full) const {
    std::vector<Polynomial::Term> out;
    for (const auto& t : g.terms()) {
      for (const auto& f : t.mono.factors()) {
        const Variable v = f.var;
        const Monomial rest = t.mono.divided_by(v);
        const FieldElement base = t.coeff.scaled(Rational(f.exp));
        if (v.is_coordinate()) {
          if (mode != DerivMode::jets_only && v.axis() == i) out.push_back({rest, base});
        } else if (v.is_jet_like()) {
          if (mode == DerivMode::coordinates_only) continue;
          const int p = v.order() + 1;
          if (p > max_order_) throw CapacityError(p, max_order_);
          for (int c = 0; c < 2; ++c)
            for (int cp = 0; cp < 2; ++cp) {
              FieldElement w = v.is_conjugate() ? mu(i, c, cp).conj() : mu(i, c, cp);
              if (w.is_zero()) continue;
              out.push_back(
                  {rest.times(Variable::jet(v.field(), p, v.j() + c, v.k() + cp, v.is_conjugate())), base * w});
            }
        }
      }
    }
    return Polynomial::from_terms(std::move(out));
  }

 private:
  int two_s_;
  int max_order_;
  int fields_;
  std::array<std::array<FieldElement, 4>, 4> mu_{};
  std::array<std::array<FieldElement, 4>, 4> nu_{};
};

/// Coordinate derivative d_{AA'} = sigma^i_{AA'} d/dx^i of a jet-free polynomial.
inline Polynomial coord_derivative(const Polynomial& g, int a, int ap) {
  if (g.has_jets()) throw ContractViolation("coord_derivative on a jet polynomial; use total_derivative");
  Polynomial out;
  for (int i = 0; i < 4; ++i) {
    FieldElement w = conventions::sigma(i, a, ap);
    if (w.is_zero()) continue;
    out += g.partial(Variable::coordinate(i)).scaled(w);
  }
  return out;
}

/// Mixed coordinate derivative d_C^{C'} = tau^i(C,C') d/dx^i.
inline Polynomial coord_derivative_mixed(const Polynomial& g, int c, int cp) {
  Polynomial out;
  for (int i = 0; i < 4; ++i) {
    FieldElement w = conventions::tau(i, c, cp);
    if (w.is_zero()) continue;
    out += g.partial(Variable::coordinate(i)).scaled(w);
  }
  return out;
}

/// x^{AA'} = sigma_i^{AA'} x^i.
inline Polynomial x_spinor(int a, int ap) {
  Polynomial out;
  for (int i = 0; i < 4; ++i) out += Polynomial::coordinate(i).scaled(conventions::sigma_up(i, a, ap));
  return out;
}

// ---- index-conversion signs --------------------------------------------------

/// Lowered component at value a equals lower_sign(a) * (upper component at 1-a).
inline int lower_sign(int a) { return a == 0 ? -1 : 1; }
/// Raised component at value a equals raise_sign(a) * (lower component at 1-a).
inline int raise_sign(int a) { return a == 0 ? 1 : -1; }

// ---- hypergeometric weights for symmetrization by counts ----------------------

/// Weight of one specific ordered substring with t ones, occupying m of n
/// symmetrized positions, when the full symmetric component has j ones:
/// C(n-m, j-t) / C(n, j).
inline Rational substring_weight(int n, int m, int j, int t) {
  Rational den = binomial(n, j);
  if (den == 0) return 0;
  return binomial(n - m, j - t) / den;
}

inline Rational multinomial(int n, const std::array<int, 4>& parts) {
  Rational out(1);
  int left = n;
  for (int x : parts) {
    out *= binomial(left, x);
    left -= x;
  }
  return out;
}

/// All (n00, n01, n10, n11) with sum p.
inline std::vector<std::array<int, 4>> compositions4(int p) {
  std::vector<std::array<int, 4>> out;
  for (int a = 0; a <= p; ++a)
    for (int b = 0; a + b <= p; ++b)
      for (int c = 0; a + b + c <= p; ++c) out.push_back({a, b, c, p - a - b - c});
  return out;
}

// ---- prolongation ------------------------------------------------------------

/// Memoized symmetrized total-derivative powers of one characteristic.
///
/// Sym(D^p Q)[j][k] is the coefficient pairing with d/dphi[p][j][k] in the
/// prolonged evolutionary field with characteristic Q.
class SymPowers {
 public:
  SymPowers(const JetContext& ctx, Components q, DerivMode mode = DerivMode::full)
      : ctx_(&ctx), q_(std::move(q)), mode_(mode) {
    if (static_cast<int>(q_.size()) != ctx.two_s() + 1) throw ContractViolation("characteristic has wrong component count");
  }

  const Components& characteristic() const { return q_; }

  /// D_0^0^{n00} D_0^1^{n01} D_1^0^{n10} D_1^1^{n11} Q[ja].
  const Polynomial& chain(int ja, const std::array<int, 4>& n) {
    auto key = std::make_tuple(ja, n[0], n[1], n[2], n[3]);
    {
      std::lock_guard lock(mutex_);
      auto it = chain_.find(key);
      if (it != chain_.end()) return it->second;
    }
    Polynomial value;
    int slot = -1;
    for (int s = 0; s < 4; ++s)
      if (n[s] > 0) {
        slot = s;
        break;
      }
    if (slot < 0) {
      value = q_.at(static_cast<std::size_t>(ja));
    } else {
      auto m = n;
      --m[slot];
      value = ctx_->total_derivative(chain(ja, m), slot / 2, slot % 2, mode_);
    }
    std::lock_guard lock(mutex_);
    return chain_.emplace(key, std::move(value)).first->second;
  }

  /// Sym(D^p Q)[j][k].
  const Polynomial& sym(int p, int j, int k) {
    auto key = std::make_tuple(p, j, k);
    {
      std::lock_guard lock(mutex_);
      auto it = sym_.find(key);
      if (it != sym_.end()) return it->second;
    }
    const int two_s = ctx_->two_s();
    std::vector<Polynomial> parts;
    const Rational norm = binomial(two_s + p, j) * binomial(p, k);
    for (const auto& n : compositions4(p)) {
      if (n[1] + n[3] != k) continue;
      const int ja = j - n[2] - n[3];
      if (ja < 0 || ja > two_s) continue;
      Rational w = binomial(two_s, ja) * multinomial(p, n) / norm;
      parts.push_back(chain(ja, n).scaled(FieldElement(w)));
    }
    Polynomial value = Polynomial::sum(parts);
    std::lock_guard lock(mutex_);
    return sym_.emplace(key, std::move(value)).first->second;
  }

  Block block(int p) {
    Block out(static_cast<std::size_t>(ctx_->two_s() + p + 1), std::vector<Polynomial>(static_cast<std::size_t>(p + 1)));
    for (int j = 0; j <= ctx_->two_s() + p; ++j)
      for (int k = 0; k <= p; ++k) out[j][k] = sym(p, j, k);
    return out;
  }

 private:
  const JetContext* ctx_;
  Components q_;
  DerivMode mode_;
  std::mutex mutex_;
  std::map<std::tuple<int, int, int, int, int>, Polynomial> chain_;
  std::map<std::tuple<int, int, int>, Polynomial> sym_;
};

inline Block sym_total_derivative_power(const JetContext& ctx, const Components& q, int p) {
  SymPowers powers(ctx, q);
  return powers.block(p);
}

/// Prolonged evolutionary field with one characteristic per field family.
///
/// pr Y(phi[p][j][k]) = Sym(D^p R)[j][k]; the conjugate tower is its conjugate.
/// Families without a characteristic are left fixed.
class Prolongation {
 public:
  Prolongation(const JetContext& ctx, std::map<int, Components> chars) : ctx_(&ctx) {
    for (auto& [field, q] : chars) powers_.emplace(field, std::make_unique<SymPowers>(ctx, std::move(q)));
  }
  Prolongation(const JetContext& ctx, Components q) : Prolongation(ctx, std::map<int, Components>{{0, std::move(q)}}) {}

  /// Image of a single jet variable.
  Polynomial image(Variable v) {
    auto it = powers_.find(v.field());
    if (it == powers_.end()) return {};
    const Polynomial& s = it->second->sym(v.order(), v.j(), v.k());
    return v.is_conjugate() ? s.conj() : s;
  }

  Polynomial apply(const Polynomial& g) {
    // Collect distinct jet variables, then sum dG/dv * image(v).
    std::vector<Variable> vars;
    for (const auto& t : g.terms())
      for (const auto& f : t.mono.factors())
        if (f.var.is_jet_like()) vars.push_back(f.var);
    std::sort(vars.begin(), vars.end());
    vars.erase(std::unique(vars.begin(), vars.end()), vars.end());
    std::vector<Polynomial> parts;
    for (Variable v : vars) {
      Polynomial img = image(v);
      if (img.is_zero()) continue;
      parts.push_back(g.partial(v) * img);
    }
    return Polynomial::sum(parts);
  }

  Components apply(const Components& q) {
    Components out;
    out.reserve(q.size());
    for (const auto& c : q) out.push_back(apply(c));
    return out;
  }

 private:
  const JetContext* ctx_;
  std::map<int, std::unique_ptr<SymPowers>> powers_;
};

inline Polynomial apply_evolutionary(const JetContext& ctx, const Components& r, const Polynomial& g) {
  Prolongation pr(ctx, r);
  return pr.apply(g);
}

// ---- determining equations -----------------------------------------------------

/// Residual D^{A}{}_{A'} Q_{A A_{2s-1}}: entry [j][A'] for j ones among the
/// free 2s-1 unprimed indices. Equals D_{1A'} Q[j] - D_{0A'} Q[j+1].
inline std::vector<std::array<Polynomial, 2>> symmetry_residual(const JetContext& ctx, const Components& q,
                                                                 DerivMode mode = DerivMode::full) {
  const int two_s = static_cast<int>(q.size()) - 1;
  std::vector<std::array<Polynomial, 2>> out(static_cast<std::size_t>(two_s));
  for (int j = 0; j < two_s; ++j)
    for (int ap = 0; ap < 2; ++ap)
      out[j][ap] = ctx.total_derivative_lower(q[j], 1, ap, mode) - ctx.total_derivative_lower(q[j + 1], 0, ap, mode);
  return out;
}

// ---- commutation formula -----------------------------------------------------

struct CommutationReport {
  int two_s = 0;
  int order = 0;
  std::size_t checked = 0;
  std::vector<std::string> violations;
  bool pass() const { return violations.empty(); }
};

namespace detail {

// Off-shell jet variables w[p][ja][jb][k]: the derivative variables
// phi_{A_{2s}, B_p}^{B'_p}, symmetric in A, in B and in B' separately.
inline Variable offshell_var(int p, int ja, int jb, int k) {
  return Variable::parameter("w" + std::to_string(p) + "_" + std::to_string(ja) + "_" + std::to_string(jb) + "_" +
                             std::to_string(k));
}

struct OffshellIndex {
  int p, ja, jb, k;
};

inline bool parse_offshell(Variable v, OffshellIndex& out) {
  if (v.kind() != VarKind::parameter) return false;
  const std::string n = v.name();
  if (n.empty() || n[0] != 'w') return false;
  return std::sscanf(n.c_str(), "w%d_%d_%d_%d", &out.p, &out.ja, &out.jb, &out.k) == 4;
}

// Off-shell total derivative: coordinates by tau, w[p][ja][jb][k] -> w[p+1][ja][jb+c][k+c'].
inline Polynomial offshell_total_derivative(const Polynomial& g, int c, int cp) {
  std::vector<Polynomial::Term> out;
  for (const auto& t : g.terms())
    for (const auto& f : t.mono.factors()) {
      const Monomial rest = t.mono.divided_by(f.var);
      const FieldElement base = t.coeff.scaled(Rational(f.exp));
      OffshellIndex ix{};
      if (f.var.is_coordinate()) {
        FieldElement w = conventions::tau(f.var.axis(), c, cp);
        if (!w.is_zero()) out.push_back({rest, base * w});
      } else if (parse_offshell(f.var, ix)) {
        out.push_back({rest.times(offshell_var(ix.p + 1, ix.ja, ix.jb + c, ix.k + cp)), base});
      }
    }
  return Polynomial::from_terms(std::move(out));
}

// The operator d_phi^{A_{2s}, B_p}_{B'_p} on off-shell polynomials: a partial
// derivative divided by the number of index strings sharing the variable.
inline Polynomial offshell_phi_derivative(const Polynomial& g, int two_s, int p, int ja, int jb, int k) {
  const Rational mult = binomial(two_s, ja) * binomial(p, jb) * binomial(p, k);
  return g.partial(offshell_var(p, ja, jb, k)).scaled(FieldElement(Rational(1) / mult));
}

}  // namespace detail

/// Verify [d_phi^{A,B_p}_{B'_p}, D_C^{C'}] = eps_{(B'_p|}^{C'} eps_C^{(B_p|} d_phi^{A,|B_{p-1})}_{|B'_{p-1})}
/// on the free module of derivative variables up to order p, for every index
/// assignment. The test polynomials are all variables of orders p-1 and p and
/// products of pairs among them, with a coordinate factor.
inline CommutationReport commutation_check(int two_s, int p) {
  if (p < 1) throw ContractViolation("commutation formula needs p >= 1");
  CommutationReport rep;
  rep.two_s = two_s;
  rep.order = p;
  std::vector<Polynomial> tests;
  std::vector<Variable> vars;
  for (int q = p - 1; q <= p; ++q)
    for (int ja = 0; ja <= two_s; ++ja)
      for (int jb = 0; jb <= q; ++jb)
        for (int k = 0; k <= q; ++k) vars.push_back(detail::offshell_var(q, ja, jb, k));
  for (std::size_t a = 0; a < vars.size(); ++a) {
    tests.push_back(Polynomial::variable(vars[a]) * Polynomial::coordinate(static_cast<int>(a % 4)));
    for (std::size_t b = a; b < vars.size(); ++b)
      tests.push_back(Polynomial::variable(vars[a]) * Polynomial::variable(vars[b]));
  }
  // Index strings: A (2s values), B (p values), B' (p values), C, C'.
  for (int abits = 0; abits < (1 << two_s); ++abits)
    for (int bbits = 0; bbits < (1 << p); ++bbits)
      for (int pbits = 0; pbits < (1 << p); ++pbits)
        for (int c = 0; c < 2; ++c)
          for (int cp = 0; cp < 2; ++cp) {
            const int ja = std::popcount(static_cast<unsigned>(abits));
            const int jb = std::popcount(static_cast<unsigned>(bbits));
            const int kb = std::popcount(static_cast<unsigned>(pbits));
            // RHS weight: symmetrized deltas pick positions with B_r = C and B'_r = C'.
            const int nb = c ? jb : p - jb;
            const int np = cp ? kb : p - kb;
            const Rational w = make_rational(nb * np, p * p);
            for (const auto& g : tests) {
              ++rep.checked;
              Polynomial lhs =
                  detail::offshell_phi_derivative(detail::offshell_total_derivative(g, c, cp), two_s, p, ja, jb, kb) -
                  detail::offshell_total_derivative(detail::offshell_phi_derivative(g, two_s, p, ja, jb, kb), c, cp);
              Polynomial rhs;
              if (nb > 0 && np > 0)
                rhs = detail::offshell_phi_derivative(g, two_s, p - 1, ja, jb - c, kb - cp).scaled(FieldElement(w));
              if (lhs != rhs) {
                rep.violations.push_back("A=" + std::to_string(abits) + " B=" + std::to_string(bbits) +
                                         " B'=" + std::to_string(pbits) + " C=" + std::to_string(c) +
                                         " C'=" + std::to_string(cp) + " on " + g.str());
              }
            }
          }
  return rep;
}

/// On-shell form of the commutation rule on exact-set variables: the bracket of
/// d/dphi[p][j][k] (normalized by its index multiplicity) with D_C^{C'} is the
/// order p-1 operator weighted by the fraction of the 2s+p unprimed and p
/// primed positions carrying C and C'.
inline CommutationReport onshell_commutation_check(int two_s, int p) {
  if (p < 1) throw ContractViolation("commutation formula needs p >= 1");
  JetContext ctx(two_s, p + 1);
  CommutationReport rep;
  rep.two_s = two_s;
  rep.order = p;
  std::vector<Variable> vars;
  for (int q = p - 1; q <= p; ++q)
    for (int j = 0; j <= two_s + q; ++j)
      for (int k = 0; k <= q; ++k) {
        vars.push_back(ctx.jet(q, j, k));
        vars.push_back(ctx.jet(q, j, k, true));
      }
  std::vector<Polynomial> tests;
  for (std::size_t a = 0; a < vars.size(); ++a) {
    tests.push_back(Polynomial::variable(vars[a]) * Polynomial::coordinate(static_cast<int>(a % 4)));
    for (std::size_t b = a; b < vars.size(); ++b)
      tests.push_back(Polynomial::variable(vars[a]) * Polynomial::variable(vars[b]));
  }
  auto op = [&](const Polynomial& g, int q, int j, int k) {
    return g.partial(ctx.jet(q, j, k)).scaled(FieldElement(Rational(1) / (binomial(two_s + q, j) * binomial(q, k))));
  };
  for (int j = 0; j <= two_s + p; ++j)
    for (int k = 0; k <= p; ++k)
      for (int c = 0; c < 2; ++c)
        for (int cp = 0; cp < 2; ++cp) {
          const int nu = c ? j : two_s + p - j;
          const int np = cp ? k : p - k;
          const Rational w = make_rational(nu * np, (two_s + p) * p);
          for (const auto& g : tests) {
            ++rep.checked;
            Polynomial lhs = op(ctx.total_derivative(g, c, cp), p, j, k) - ctx.total_derivative(op(g, p, j, k), c, cp);
            Polynomial rhs;
            if (nu > 0 && np > 0) rhs = op(g, p - 1, j - c, k - cp).scaled(FieldElement(w));
            if (lhs != rhs)
              rep.violations.push_back("j=" + std::to_string(j) + " k=" + std::to_string(k) + " C=" +
                                       std::to_string(c) + " C'=" + std::to_string(cp) + " on " + g.str());
          }
        }
  return rep;
}

}  // namespace spinorsym
