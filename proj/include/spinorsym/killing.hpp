#pragma once

// Killing spinors of type (k, l) on Minkowski space by polynomial ansatz.
//
// kappa_{A_k}^{A'_l} is stored symmetric, k lower unprimed and l upper primed
// slots, as components [j][m] (j unprimed ones, m primed ones). The equation
// d_{(A_{k+1}}^{(A'_{l+1}} kappa_{A_k)}^{A'_l)} = 0 maps degree d to degree d-1,
// so the solution space is the direct sum of per-degree kernels.

#include <array>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "spinorsym/conventions.hpp"
#include "spinorsym/errors.hpp"
#include "spinorsym/jet.hpp"
#include "spinorsym/linalg.hpp"
#include "spinorsym/polynomial.hpp"

namespace spinorsym {

/// Complex dimension of the type-(k, l) Killing spinors, l >= k.
inline long killing_dimension(int k, int l) {
  if (k < 0 || l < 0) throw DomainError("killing type must be non-negative");
  if (l < k) throw DomainError("no dimension formula for Killing spinors of type (k, l) with l < k");
  const long K = k;
  if (l == k) return (K + 1) * (K + 1) * (K + 2) * (K + 2) * (2 * K + 3) / 12;
  const long t = l - k;  // = 2s
  return (K + 1) * (K + 2) * (K + t + 1) * (K + t + 2) * (2 * K + t + 3) / 12;
}

struct KillingSpinor {
  int k = 0;
  int l = 0;
  std::vector<std::vector<Polynomial>> comps;  // [j][m]

  static KillingSpinor zero(int k, int l) {
    KillingSpinor out;
    out.k = k;
    out.l = l;
    out.comps.assign(static_cast<std::size_t>(k + 1), std::vector<Polynomial>(static_cast<std::size_t>(l + 1)));
    return out;
  }
  const Polynomial& operator()(int j, int m) const { return comps.at(j).at(m); }
  Polynomial& operator()(int j, int m) { return comps.at(j).at(m); }

  KillingSpinor scaled(const FieldElement& c) const {
    KillingSpinor out = *this;
    for (auto& row : out.comps)
      for (auto& p : row) p = p.scaled(c);
    return out;
  }
  KillingSpinor operator+(const KillingSpinor& o) const {
    KillingSpinor out = *this;
    for (int j = 0; j <= k; ++j)
      for (int m = 0; m <= l; ++m) out(j, m) += o(j, m);
    return out;
  }
  int degree() const {
    int d = 0;
    for (const auto& row : comps)
      for (const auto& p : row) d = std::max(d, p.coordinate_degree());
    return d;
  }
};

struct KillingBasis {
  int k = 0;
  int l = 0;
  int degree_bound = 0;
  std::vector<KillingSpinor> elements;
  std::size_t dimension() const { return elements.size(); }
};

/// Symmetrized derivative d_{(A}^{(A'} kappa_{...)}^{...)} as components [j][m].
inline std::vector<std::vector<Polynomial>> killing_residual(const KillingSpinor& kap) {
  const int k = kap.k, l = kap.l;
  std::vector<std::vector<Polynomial>> out(static_cast<std::size_t>(k + 2),
                                           std::vector<Polynomial>(static_cast<std::size_t>(l + 2)));
  for (int j = 0; j <= k + 1; ++j)
    for (int m = 0; m <= l + 1; ++m) {
      std::vector<Polynomial> parts;
      for (int c = 0; c < 2; ++c)
        for (int cp = 0; cp < 2; ++cp) {
          const int jj = j - c, mm = m - cp;
          if (jj < 0 || jj > k || mm < 0 || mm > l) continue;
          const Rational wu = make_rational(c ? j : k + 1 - j, k + 1);
          const Rational wp = make_rational(cp ? m : l + 1 - m, l + 1);
          if (wu == 0 || wp == 0) continue;
          parts.push_back(coord_derivative_mixed(kap(jj, mm), c, cp).scaled(FieldElement(wu * wp)));
        }
      out[j][m] = Polynomial::sum(parts);
    }
  return out;
}

inline bool satisfies_killing(const KillingSpinor& kap) {
  for (const auto& row : killing_residual(kap))
    for (const auto& p : row)
      if (!p.is_zero()) return false;
  return true;
}

/// Kernel of the Killing operator restricted to homogeneous degree d.
inline std::vector<KillingSpinor> solve_killing_degree(int k, int l, int d) {
  const auto monos = coordinate_monomials(d);
  const std::size_t nm = monos.size();
  const std::size_t ncomp = static_cast<std::size_t>((k + 1) * (l + 1));
  const std::size_t cols = ncomp * nm;
  auto unknown = [&](int j, int m, std::size_t mi) { return (static_cast<std::size_t>(j * (l + 1) + m)) * nm + mi; };
  std::vector<KillingSpinor> out;
  if (d == 0) {
    for (int j = 0; j <= k; ++j)
      for (int m = 0; m <= l; ++m) {
        KillingSpinor s = KillingSpinor::zero(k, l);
        s(j, m) = Polynomial(1);
        out.push_back(std::move(s));
      }
    return out;
  }
  const auto lower = coordinate_monomials(d - 1);
  std::map<Monomial, std::size_t> lower_index;
  for (std::size_t i = 0; i < lower.size(); ++i) lower_index.emplace(lower[i], i);
  std::map<std::size_t, std::map<std::size_t, FieldElement>> rows;
  for (int j = 0; j <= k; ++j)
    for (int m = 0; m <= l; ++m)
      for (std::size_t mi = 0; mi < nm; ++mi)
        for (int axis = 0; axis < 4; ++axis) {
          const Variable xv = Variable::coordinate(axis);
          const auto e = monos[mi].exponent(xv);
          if (e == 0) continue;
          const std::size_t ni = lower_index.at(monos[mi].divided_by(xv));
          for (int c = 0; c < 2; ++c)
            for (int cp = 0; cp < 2; ++cp) {
              const int J = j + c, M = m + cp;
              const Rational wu = make_rational(c ? J : k + 1 - J, k + 1);
              const Rational wp = make_rational(cp ? M : l + 1 - M, l + 1);
              FieldElement w = conventions::tau(axis, c, cp).scaled(wu * wp * Rational(e));
              if (w.is_zero()) continue;
              const std::size_t row = static_cast<std::size_t>(J * (l + 2) + M) * lower.size() + ni;
              rows[row][unknown(j, m, mi)] += w;
            }
        }
  std::vector<SparseRow> sparse;
  for (auto& [r, entries] : rows) {
    SparseRow sr;
    for (auto& [c, v] : entries)
      if (!v.is_zero()) sr.emplace_back(c, v);
    if (!sr.empty()) sparse.push_back(std::move(sr));
  }
  for (const auto& vec : sparse_nullspace(sparse, cols)) {
    KillingSpinor s = KillingSpinor::zero(k, l);
    std::vector<std::vector<std::vector<Polynomial::Term>>> terms(
        static_cast<std::size_t>(k + 1), std::vector<std::vector<Polynomial::Term>>(static_cast<std::size_t>(l + 1)));
    for (const auto& [c, v] : vec) {
      const std::size_t comp = c / nm;
      terms[comp / (l + 1)][comp % (l + 1)].push_back({monos[c % nm], v});
    }
    for (int j = 0; j <= k; ++j)
      for (int m = 0; m <= l; ++m) s(j, m) = Polynomial::from_terms(std::move(terms[j][m]));
    out.push_back(std::move(s));
  }
  return out;
}

/// Exact basis of type-(k, l) Killing spinors with polynomial degree <= degree_bound.
inline KillingBasis solve_killing(int k, int l, int degree_bound) {
  if (k < 0 || l < 0) throw ContractViolation("killing type must be non-negative");
  if (degree_bound < 0) throw ContractViolation("degree bound must be non-negative");
  KillingBasis basis;
  basis.k = k;
  basis.l = l;
  basis.degree_bound = degree_bound;
  for (int d = 0; d <= degree_bound; ++d)
    for (auto& s : solve_killing_degree(k, l, d)) basis.elements.push_back(std::move(s));
  return basis;
}

inline KillingBasis solve_killing(int k, int l) { return solve_killing(k, l, k + l); }

// ---- conformal Killing vectors ---------------------------------------------------

struct ConformalKillingVector {
  std::string name;
  std::array<Polynomial, 4> xi;  // xi^i(x)
};

/// 4 translations, 6 Lorentz generators, dilation, 4 special conformal generators.
inline std::vector<ConformalKillingVector> conformal_killing_basis() {
  using conventions::eta;
  std::vector<ConformalKillingVector> out;
  auto x = [](int i) { return Polynomial::coordinate(i); };
  auto x_low = [&](int i) { return x(i).scaled(FieldElement(eta(i))); };
  for (int a = 0; a < 4; ++a) {
    ConformalKillingVector v{"P" + std::to_string(a), {}};
    v.xi[a] = Polynomial(1);
    out.push_back(std::move(v));
  }
  for (int a = 0; a < 4; ++a)
    for (int b = a + 1; b < 4; ++b) {
      ConformalKillingVector v{"M" + std::to_string(a) + std::to_string(b), {}};
      v.xi[a] = x_low(b);
      v.xi[b] = -x_low(a);
      out.push_back(std::move(v));
    }
  {
    ConformalKillingVector v{"D", {}};
    for (int i = 0; i < 4; ++i) v.xi[i] = x(i);
    out.push_back(std::move(v));
  }
  Polynomial xx;
  for (int i = 0; i < 4; ++i) xx += x(i) * x_low(i);
  for (int a = 0; a < 4; ++a) {
    ConformalKillingVector v{"K" + std::to_string(a), {}};
    for (int i = 0; i < 4; ++i) v.xi[i] = (x_low(a) * x(i)).scaled(FieldElement(2));
    v.xi[a] -= xx;
    out.push_back(std::move(v));
  }
  return out;
}

/// Checks d_(i xi_j) = k eta_ij; returns k(x) or throws when xi is not conformal Killing.
inline Polynomial conformal_factor(const ConformalKillingVector& v) {
  using conventions::eta;
  Polynomial k;
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) {
      Polynomial s = (v.xi[j].partial(Variable::coordinate(i)).scaled(FieldElement(eta(j))) +
                      v.xi[i].partial(Variable::coordinate(j)).scaled(FieldElement(eta(i))))
                         .scaled(FieldElement(Rational(1, 2)));
      if (i == 0 && j == 0) k = s;
      Polynomial expect = i == j ? k.scaled(FieldElement(eta(i))) : Polynomial();
      if (s != expect) throw ContractViolation("vector field " + v.name + " is not conformal Killing");
    }
  return k;
}

inline Polynomial divergence(const ConformalKillingVector& v) {
  Polynomial out;
  for (int i = 0; i < 4; ++i) out += v.xi[i].partial(Variable::coordinate(i));
  return out;
}

/// xi^{AA'} = sigma_i^{AA'} xi^i, returned as [A][A'].
inline std::array<std::array<Polynomial, 2>, 2> ckv_spinor(const ConformalKillingVector& v) {
  std::array<std::array<Polynomial, 2>, 2> out;
  for (int a = 0; a < 2; ++a)
    for (int ap = 0; ap < 2; ++ap)
      for (int i = 0; i < 4; ++i) out[a][ap] += v.xi[i].scaled(conventions::sigma_up(i, a, ap));
  return out;
}

/// xi_A^{A'} = xi^{BA'} eps_{BA}: the type-(1,1) Killing spinor of a CKV.
inline KillingSpinor ckv_killing_spinor(const ConformalKillingVector& v) {
  auto up = ckv_spinor(v);
  KillingSpinor out = KillingSpinor::zero(1, 1);
  for (int a = 0; a < 2; ++a)
    for (int ap = 0; ap < 2; ++ap) out(a, ap) = up[1 - a][ap].scaled(FieldElement(lower_sign(a)));
  return out;
}

// ---- span and rank helpers ---------------------------------------------------------

/// Assigns dense column numbers to (component, monomial) keys.
class ColumnIndexer {
 public:
  std::size_t operator()(std::size_t component, const Monomial& m) {
    auto key = std::make_pair(component, m);
    auto it = index_.find(key);
    if (it != index_.end()) return it->second;
    const std::size_t id = index_.size();
    index_.emplace(std::move(key), id);
    return id;
  }
  std::size_t size() const { return index_.size(); }

 private:
  std::map<std::pair<std::size_t, Monomial>, std::size_t> index_;
};

inline SparseRow flatten(const std::vector<Polynomial>& comps, ColumnIndexer& cols) {
  std::map<std::size_t, FieldElement> row;
  for (std::size_t c = 0; c < comps.size(); ++c)
    for (const auto& t : comps[c].terms()) row[cols(c, t.mono)] += t.coeff;
  SparseRow out;
  for (auto& [c, v] : row)
    if (!v.is_zero()) out.emplace_back(c, v);
  return out;
}

inline std::vector<Polynomial> components_of(const KillingSpinor& s) {
  std::vector<Polynomial> out;
  for (const auto& row : s.comps)
    for (const auto& p : row) out.push_back(p);
  return out;
}

/// Complex rank of a family of Killing spinors of one type.
inline std::size_t complex_rank(const std::vector<KillingSpinor>& family) {
  ColumnIndexer cols;
  SparseEchelon e;
  for (const auto& s : family) e.insert(flatten(components_of(s), cols));
  return e.rank();
}

/// Real rank (each element and its i-multiple are distinct real vectors when independent).
inline std::size_t real_rank(const std::vector<KillingSpinor>& family) {
  ColumnIndexer cols;
  SparseEchelon e;
  for (const auto& s : family) e.insert(real_split(flatten(components_of(s), cols)));
  return e.rank();
}

/// Symmetrized product of two symmetric spinors: type (k1+k2, l1+l2).
inline KillingSpinor symmetrized_product(const KillingSpinor& a, const KillingSpinor& b) {
  const int k = a.k + b.k, l = a.l + b.l;
  KillingSpinor out = KillingSpinor::zero(k, l);
  for (int j = 0; j <= k; ++j)
    for (int m = 0; m <= l; ++m) {
      std::vector<Polynomial> parts;
      const Rational norm = binomial(k, j) * binomial(l, m);
      for (int j1 = 0; j1 <= a.k; ++j1)
        for (int m1 = 0; m1 <= a.l; ++m1) {
          const int j2 = j - j1, m2 = m - m1;
          if (j2 < 0 || j2 > b.k || m2 < 0 || m2 > b.l) continue;
          Rational w = binomial(a.k, j1) * binomial(b.k, j2) * binomial(a.l, m1) * binomial(b.l, m2) / norm;
          parts.push_back((a(j1, m1) * b(j2, m2)).scaled(FieldElement(w)));
        }
      out(j, m) = Polynomial::sum(parts);
    }
  return out;
}

struct SpanReport {
  std::string label;
  std::size_t rank = 0;
  long target = 0;
  bool all_killing = true;
  bool pass() const { return all_killing && static_cast<long>(rank) == target; }
};

/// Span of symmetrized products of k type-(1,1) spinors (unordered multisets).
inline SpanReport factorization_span_check(int k) {
  if (k < 1) throw ContractViolation("factorization check needs k >= 1");
  auto base = solve_killing(1, 1).elements;
  std::vector<KillingSpinor> level = base;
  std::vector<std::size_t> last(base.size());
  for (std::size_t i = 0; i < base.size(); ++i) last[i] = i;
  for (int step = 1; step < k; ++step) {
    std::vector<KillingSpinor> next;
    std::vector<std::size_t> next_last;
    for (std::size_t a = 0; a < level.size(); ++a)
      for (std::size_t b = last[a]; b < base.size(); ++b) {
        next.push_back(symmetrized_product(level[a], base[b]));
        next_last.push_back(b);
      }
    level = std::move(next);
    last = std::move(next_last);
  }
  SpanReport rep;
  rep.label = "(" + std::to_string(k) + "," + std::to_string(k) + ")";
  rep.target = killing_dimension(k, k);
  for (const auto& s : level) rep.all_killing = rep.all_killing && satisfies_killing(s);
  rep.rank = complex_rank(level);
  return rep;
}

/// Span of symmetrized products of one type-(0, 2s) spinor with k type-(1,1) spinors.
inline SpanReport factorization_span_check(int k, int two_s) {
  auto chiral = solve_killing(0, two_s).elements;
  auto base = solve_killing(1, 1).elements;
  std::vector<KillingSpinor> level = chiral;
  for (int step = 0; step < k; ++step) {
    std::vector<KillingSpinor> next;
    for (const auto& a : level)
      for (const auto& b : base) next.push_back(symmetrized_product(a, b));
    level = std::move(next);
  }
  SpanReport rep;
  rep.label = "(" + std::to_string(k) + "," + std::to_string(k + two_s) + ")";
  rep.target = killing_dimension(k, k + two_s);
  for (const auto& s : level) rep.all_killing = rep.all_killing && satisfies_killing(s);
  rep.rank = complex_rank(level);
  return rep;
}

// ---- identities for type (0, n) ------------------------------------------------------

/// Component of a type-(0,n) spinor with every primed index lowered:
/// pi_{B'} at a string with t ones among n.
inline Polynomial lowered_component(const KillingSpinor& pi, int ones_lowered) {
  // Lowering flips each index and contributes lower_sign per slot.
  const int n = pi.l;
  const int zeros = n - ones_lowered;
  const int sign = (zeros % 2 == 0) ? 1 : -1;
  return pi(0, zeros).scaled(FieldElement(sign));
}

/// d_{CC'} d^{C}{}_{D'} kappa = 0 for every component (wave identity).
inline bool wave_identity_holds(const KillingSpinor& kap) {
  for (const auto& row : kap.comps)
    for (const auto& p : row)
      for (int cp = 0; cp < 2; ++cp)
        for (int dp = 0; dp < 2; ++dp) {
          // d^{C}_{D'} = eps^{CE} d_{ED'}: C=0 -> d_{1D'}, C=1 -> -d_{0D'}.
          Polynomial acc = coord_derivative(coord_derivative(p, 1, dp), 0, cp) -
                           coord_derivative(coord_derivative(p, 0, dp), 1, cp);
          if (!acc.is_zero()) return false;
        }
  return true;
}

/// d_{CC'} d_{DD'} kappa = d_{CD'} d_{DC'} kappa for every component.
inline bool derivative_exchange_holds(const KillingSpinor& kap) {
  for (const auto& row : kap.comps)
    for (const auto& p : row)
      for (int c = 0; c < 2; ++c)
        for (int cp = 0; cp < 2; ++cp)
          for (int d = 0; d < 2; ++d)
            for (int dp = 0; dp < 2; ++dp)
              if (coord_derivative(coord_derivative(p, d, dp), c, cp) !=
                  coord_derivative(coord_derivative(p, d, cp), c, dp))
                return false;
  return true;
}

}  // namespace spinorsym
