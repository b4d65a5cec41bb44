#pragma once

// Tensorial spin-1 specialization: Maxwell fields F_{ij}, Hodge duality, the
// polynomial tensors p^h (h = 0..4) and the tensorial conformal and chiral
// symmetries. All tensor jets are realised in the s = 1 on-shell spinor ring
// through sigma^i_{AA'} sigma^j_{BB'} F_{ij} = eps_{A'B'} phi_{AB} + eps_{AB} conj(phi)_{A'B'},
// so tensor-side checks and the spinor dictionary share one jet calculus.
//
// Tensors are stored with every index lower; raising multiplies by eta.

#include <array>
#include <initializer_list>
#include <map>
#include <random>
#include <string>
#include <vector>

#include "spinorsym/conventions.hpp"
#include "spinorsym/errors.hpp"
#include "spinorsym/jet.hpp"
#include "spinorsym/killing.hpp"
#include "spinorsym/linalg.hpp"
#include "spinorsym/polynomial.hpp"
#include "spinorsym/spinor.hpp"
#include "spinorsym/symmetry.hpp"

namespace spinorsym {

using conventions::eta;

/// Dense rank-n world tensor with lower indices 0..3.
class Tensor {
 public:
  Tensor() = default;
  explicit Tensor(int rank) : rank_(rank), data_(std::size_t{1} << (2 * rank)) {
    if (rank < 0 || rank > 6) throw ContractViolation("tensor rank out of range");
  }

  int rank() const { return rank_; }
  std::size_t size() const { return data_.size(); }

  template <class... I>
  Polynomial& operator()(I... idx) {
    return data_[offset({static_cast<int>(idx)...})];
  }
  template <class... I>
  const Polynomial& operator()(I... idx) const {
    return data_[offset({static_cast<int>(idx)...})];
  }
  Polynomial& flat(std::size_t n) { return data_[n]; }
  const Polynomial& flat(std::size_t n) const { return data_[n]; }

  /// Index digit s of flat position n (slot 0 most significant).
  int digit(std::size_t n, int s) const { return static_cast<int>((n >> (2 * (rank_ - 1 - s))) & 3u); }

  Tensor scaled(const FieldElement& c) const {
    Tensor out = *this;
    for (auto& p : out.data_) p = p.scaled(c);
    return out;
  }
  Tensor operator+(const Tensor& o) const { return combine(o, false); }
  Tensor operator-(const Tensor& o) const { return combine(o, true); }
  friend bool operator==(const Tensor& a, const Tensor& b) { return a.rank_ == b.rank_ && a.data_ == b.data_; }
  bool is_zero() const {
    for (const auto& p : data_)
      if (!p.is_zero()) return false;
    return true;
  }

 private:
  std::size_t offset(std::initializer_list<int> idx) const {
    if (static_cast<int>(idx.size()) != rank_) throw ContractViolation("tensor index count mismatch");
    std::size_t n = 0;
    for (int i : idx) n = n * 4 + static_cast<std::size_t>(i);
    return n;
  }
  Tensor combine(const Tensor& o, bool subtract) const {
    if (o.rank_ != rank_) throw ContractViolation("tensor rank mismatch");
    Tensor out = *this;
    for (std::size_t n = 0; n < data_.size(); ++n) out.data_[n] = subtract ? data_[n] - o.data_[n] : data_[n] + o.data_[n];
    return out;
  }

  int rank_ = 0;
  std::vector<Polynomial> data_;
};

inline bool is_antisymmetric(const Tensor& f) {
  if (f.rank() != 2) return false;
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j)
      if (f(i, j) != -f(j, i)) return false;
  return true;
}

/// *F_{ij} = sign (1/2) eps_{ijkl} F^{kl}.
inline Tensor hodge_dual(const Tensor& f, int sign = conventions::kHodgeSign) {
  if (!is_antisymmetric(f)) throw ContractViolation("Hodge dual needs an antisymmetric rank-2 tensor");
  Tensor out(2);
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) {
      std::vector<Polynomial> parts;
      for (int k = 0; k < 4; ++k)
        for (int l = 0; l < 4; ++l) {
          const int e = conventions::levi_civita(i, j, k, l);
          if (e == 0) continue;
          parts.push_back(f(k, l).scaled(FieldElement(make_rational(sign * e * eta(k) * eta(l), 2))));
        }
      out(i, j) = Polynomial::sum(parts);
    }
  return out;
}

/// Spinor image T_{A_1 A'_1 ... A_n A'_n} = prod sigma^{i_r}_{A_r A'_r} T_{i_1..i_n}; all slots lower.
inline SpinorArray tensor_to_spinor(const Tensor& t) {
  const int n = t.rank();
  SpinorArray out(std::vector<Variance>(n, Variance::lower), std::vector<Variance>(n, Variance::lower));
  std::vector<int> un(n), pr(n);
  for (std::size_t ub = 0; ub < (std::size_t{1} << n); ++ub)
    for (std::size_t pb = 0; pb < (std::size_t{1} << n); ++pb) {
      for (int s = 0; s < n; ++s) {
        un[s] = static_cast<int>((ub >> (n - 1 - s)) & 1u);
        pr[s] = static_cast<int>((pb >> (n - 1 - s)) & 1u);
      }
      std::vector<Polynomial> parts;
      for (std::size_t tn = 0; tn < t.size(); ++tn) {
        if (t.flat(tn).is_zero()) continue;
        FieldElement w(1);
        for (int s = 0; s < n && !w.is_zero(); ++s) w = w * conventions::sigma(t.digit(tn, s), un[s], pr[s]);
        if (!w.is_zero()) parts.push_back(t.flat(tn).scaled(w));
      }
      out.at(un, pr) = Polynomial::sum(parts);
    }
  return out;
}

// ---- Maxwell jets ----------------------------------------------------------------

/// Jets F_{ij,k_1..k_p} (or of *F when dual) as polynomials in on-shell spin-1 jets.
class MaxwellJets {
 public:
  MaxwellJets(const JetContext& ctx, bool dual = false, int hodge_sign = conventions::kHodgeSign)
      : ctx_(&ctx), dual_(dual), hodge_sign_(hodge_sign) {
    if (ctx.two_s() != 2) throw ContractViolation("Maxwell jets need a spin-1 jet context");
  }

  bool dual() const { return dual_; }

  /// F_{ij} from the dictionary: sigma_i^{AA'} sigma_j^{BB'} (eps_{A'B'} phi_{AB} + eps_{AB} conj(phi)_{A'B'}).
  Polynomial base(int i, int j) const {
    std::vector<Polynomial> parts;
    for (int a = 0; a < 2; ++a)
      for (int ap = 0; ap < 2; ++ap)
        for (int b = 0; b < 2; ++b)
          for (int bp = 0; bp < 2; ++bp) {
            FieldElement w = conventions::sigma_up(i, a, ap) * conventions::sigma_up(j, b, bp);
            if (w.is_zero()) continue;
            if (int e = eps_lower(ap, bp))
              parts.push_back(ctx_->jet_poly(0, a + b, 0).scaled(w.scaled(Rational(e))));
            if (int e = eps_lower(a, b))
              parts.push_back(ctx_->jet_poly(0, ap + bp, 0, true).scaled(w.scaled(Rational(e))));
          }
    return Polynomial::sum(parts);
  }

  /// G_{ij, derivs...} with G = F or *F.
  const Polynomial& get(int i, int j, std::vector<int> derivs = {}) {
    std::sort(derivs.begin(), derivs.end());
    auto key = std::make_tuple(i, j, derivs);
    auto it = memo_.find(key);
    if (it != memo_.end()) return it->second;
    Polynomial value;
    if (dual_) {
      std::vector<Polynomial> parts;
      MaxwellJets& plain = plain_jets();
      for (int k = 0; k < 4; ++k)
        for (int l = 0; l < 4; ++l) {
          const int e = conventions::levi_civita(i, j, k, l);
          if (e == 0) continue;
          parts.push_back(
              plain.get(k, l, derivs).scaled(FieldElement(make_rational(hodge_sign_ * e * eta(k) * eta(l), 2))));
        }
      value = Polynomial::sum(parts);
    } else if (derivs.empty()) {
      value = base(i, j);
    } else {
      std::vector<int> rest(derivs.begin(), derivs.end() - 1);
      value = ctx_->axis_derivative(get(i, j, rest), derivs.back());
    }
    return memo_.emplace(std::move(key), std::move(value)).first->second;
  }

  /// The rank-2 tensor G_{ij, derivs...}.
  Tensor tensor(const std::vector<int>& derivs = {}) {
    Tensor out(2);
    for (int i = 0; i < 4; ++i)
      for (int j = 0; j < 4; ++j) out(i, j) = get(i, j, derivs);
    return out;
  }

 private:
  MaxwellJets& plain_jets() {
    if (!plain_) plain_ = std::make_unique<MaxwellJets>(*ctx_, false, hodge_sign_);
    return *plain_;
  }

  const JetContext* ctx_;
  bool dual_;
  int hodge_sign_;
  std::map<std::tuple<int, int, std::vector<int>>, Polynomial> memo_;
  std::unique_ptr<MaxwellJets> plain_;
};

/// Q_{AB} = (1/2) eps^{A'B'} sigma^i_{AA'} sigma^j_{BB'} Q_{ij}, as components [A+B].
struct SpinorCharacteristic {
  Components q;
  bool symmetric = true;       // Q_{01} == Q_{10}
  bool representation = true;  // sigma sigma Q == eps' Q + eps conj(Q)
};

inline SpinorCharacteristic tensor_characteristic_to_spinor(const Tensor& t) {
  if (t.rank() != 2) throw ContractViolation("characteristic tensor must have rank 2");
  const SpinorArray s = tensor_to_spinor(t);
  auto trace = [&](int a, int b) {
    return (s.at({a, b}, {0, 1}) - s.at({a, b}, {1, 0})).scaled(FieldElement(Rational(1, 2)));
  };
  SpinorCharacteristic out;
  out.q = {trace(0, 0), trace(0, 1), trace(1, 1)};
  out.symmetric = trace(0, 1) == trace(1, 0);
  for (int a = 0; a < 2; ++a)
    for (int b = 0; b < 2; ++b)
      for (int ap = 0; ap < 2; ++ap)
        for (int bp = 0; bp < 2; ++bp) {
          Polynomial expect = out.q[a + b].scaled(FieldElement(eps_lower(ap, bp))) +
                              out.q[ap + bp].conj().scaled(FieldElement(eps_lower(a, b)));
          if (s.at({a, b}, {ap, bp}) != expect) out.representation = false;
        }
  return out;
}

/// D^j Q_{ij} and D^j *Q_{ij}; both vanish for a symmetry of Maxwell's equations.
struct MaxwellResidual {
  std::size_t divergence_terms = 0;
  std::size_t dual_divergence_terms = 0;
  bool pass() const { return divergence_terms == 0 && dual_divergence_terms == 0; }
};

inline MaxwellResidual maxwell_residual(const JetContext& ctx, const Tensor& q) {
  MaxwellResidual r;
  const Tensor dq = hodge_dual(q);
  for (int i = 0; i < 4; ++i) {
    Polynomial a, b;
    for (int j = 0; j < 4; ++j) {
      a += ctx.axis_derivative(q(i, j), j).scaled(FieldElement(eta(j)));
      b += ctx.axis_derivative(dq(i, j), j).scaled(FieldElement(eta(j)));
    }
    r.divergence_terms += a.size();
    r.dual_divergence_terms += b.size();
  }
  return r;
}

// ---- conformal symmetries ------------------------------------------------------

/// Z_{ij}[G; xi] = xi^k G_{ij,k} - 2 d_{[i} xi^k G_{j]k}, with G = F or *F per the jets.
inline Tensor build_tensor_conformal(MaxwellJets& jets, const ConformalKillingVector& v) {
  conformal_factor(v);
  Tensor out(2);
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) {
      std::vector<Polynomial> parts;
      for (int k = 0; k < 4; ++k) {
        if (!v.xi[k].is_zero()) parts.push_back(v.xi[k] * jets.get(i, j, {k}));
        const Polynomial di = v.xi[k].partial(Variable::coordinate(i));
        const Polynomial dj = v.xi[k].partial(Variable::coordinate(j));
        if (!di.is_zero()) parts.push_back(-(di * jets.get(j, k)));
        if (!dj.is_zero()) parts.push_back(dj * jets.get(i, k));
      }
      out(i, j) = Polynomial::sum(parts);
    }
  return out;
}

// ---- coefficient tensors -----------------------------------------------------------

struct WeylCoefficients {
  int h = 0;
  Tensor a;  // rank 4 (h = 0, 4), rank 3 (h = 1, 3), rank 2 (h = 2); rational constants
};

inline int coefficient_rank(int h) {
  if (h < 0 || h > 4) throw ContractViolation("h must lie in 0..4");
  return h == 2 ? 2 : (h == 1 || h == 3 ? 3 : 4);
}

namespace detail {

inline int permutation_sign(const std::vector<int>& perm) {
  int inv = 0;
  for (std::size_t a = 0; a < perm.size(); ++a)
    for (std::size_t b = a + 1; b < perm.size(); ++b)
      if (perm[a] > perm[b]) ++inv;
  return inv % 2 ? -1 : 1;
}

/// Linear constraint rows (flat index -> coefficient) with a label for each.
struct Constraint {
  std::string label;
  std::map<std::size_t, int> row;
};

inline std::vector<Constraint> coefficient_constraints(int h) {
  const int rank = coefficient_rank(h);
  std::vector<Constraint> out;
  auto flat = [](std::initializer_list<int> idx) {
    std::size_t n = 0;
    for (int i : idx) n = n * 4 + static_cast<std::size_t>(i);
    return n;
  };
  auto add = [&](std::string label, std::vector<std::pair<std::size_t, int>> entries) {
    Constraint c{std::move(label), {}};
    for (auto& [k, v] : entries) c.row[k] += v;
    for (auto it = c.row.begin(); it != c.row.end();) it = it->second == 0 ? c.row.erase(it) : std::next(it);
    if (!c.row.empty()) out.push_back(std::move(c));
  };
  if (rank == 4) {
    for (int i = 0; i < 4; ++i)
      for (int j = 0; j < 4; ++j)
        for (int k = 0; k < 4; ++k)
          for (int l = 0; l < 4; ++l) {
            add("a_ijkl = -a_jikl", {{flat({i, j, k, l}), 1}, {flat({j, i, k, l}), 1}});
            add("a_ijkl = -a_ijlk", {{flat({i, j, k, l}), 1}, {flat({i, j, l, k}), 1}});
            add("a_ijkl = a_klij", {{flat({i, j, k, l}), 1}, {flat({k, l, i, j}), -1}});
            std::vector<int> base{i, j, k, l}, perm{0, 1, 2, 3};
            std::vector<std::pair<std::size_t, int>> alt;
            do {
              alt.push_back({flat({base[perm[0]], base[perm[1]], base[perm[2]], base[perm[3]]}), permutation_sign(perm)});
            } while (std::next_permutation(perm.begin(), perm.end()));
            add("a_[ijkl] = 0", alt);
          }
    for (int i = 0; i < 4; ++i)
      for (int k = 0; k < 4; ++k) {
        std::vector<std::pair<std::size_t, int>> tr;
        for (int j = 0; j < 4; ++j) tr.push_back({flat({i, j, k, j}), eta(j)});
        add("a_ijk^j = 0", tr);
      }
  } else if (rank == 3) {
    for (int i = 0; i < 4; ++i)
      for (int j = 0; j < 4; ++j)
        for (int k = 0; k < 4; ++k) {
          add("a_ijk = -a_ikj", {{flat({i, j, k}), 1}, {flat({i, k, j}), 1}});
          std::vector<int> base{i, j, k}, perm{0, 1, 2};
          std::vector<std::pair<std::size_t, int>> alt;
          do {
            alt.push_back({flat({base[perm[0]], base[perm[1]], base[perm[2]]}), permutation_sign(perm)});
          } while (std::next_permutation(perm.begin(), perm.end()));
          add("a_[ijk] = 0", alt);
        }
    for (int i = 0; i < 4; ++i) {
      std::vector<std::pair<std::size_t, int>> tr;
      for (int j = 0; j < 4; ++j) tr.push_back({flat({j, i, j}), eta(j)});
      add("a_ji^j = 0", tr);
    }
  } else {
    for (int i = 0; i < 4; ++i)
      for (int j = 0; j < 4; ++j) add("a_ij = a_ji", {{flat({i, j}), 1}, {flat({j, i}), -1}});
    std::vector<std::pair<std::size_t, int>> tr;
    for (int i = 0; i < 4; ++i) tr.push_back({flat({i, i}), eta(i)});
    add("a_i^i = 0", tr);
  }
  return out;
}

}  // namespace detail

/// Throws ContractViolation naming the first violated identity.
inline void validate_coefficients(const WeylCoefficients& c) {
  if (c.a.rank() != coefficient_rank(c.h)) throw ContractViolation("coefficient tensor has the wrong rank for h");
  for (const auto& con : detail::coefficient_constraints(c.h)) {
    Polynomial acc;
    for (const auto& [k, v] : con.row) acc += c.a.flat(k).scaled(FieldElement(v));
    if (!acc.is_zero()) throw ContractViolation("coefficient constraint violated for h=" + std::to_string(c.h) + ": " + con.label);
  }
}

/// Basis of the admissible coefficient space (rational entries).
inline std::vector<Tensor> admissible_basis(int h) {
  const int rank = coefficient_rank(h);
  const std::size_t cols = std::size_t{1} << (2 * rank);
  std::vector<SparseRow> rows;
  for (const auto& con : detail::coefficient_constraints(h)) {
    SparseRow r;
    for (const auto& [k, v] : con.row) r.emplace_back(k, FieldElement(v));
    rows.push_back(std::move(r));
  }
  std::vector<Tensor> out;
  for (const auto& vec : sparse_nullspace(rows, cols)) {
    Tensor t(rank);
    for (const auto& [k, v] : vec) t.flat(k) = Polynomial(v);
    out.push_back(std::move(t));
  }
  return out;
}

/// Random rational combination of the admissible basis (integer weights in [-3, 3]).
inline WeylCoefficients random_admissible(int h, std::mt19937_64& rng) {
  const auto basis = admissible_basis(h);
  std::uniform_int_distribution<int> dist(-3, 3);
  WeylCoefficients c{h, Tensor(coefficient_rank(h))};
  bool nonzero = false;
  while (!nonzero) {
    c.a = Tensor(coefficient_rank(h));
    for (const auto& b : basis) {
      const int w = dist(rng);
      if (w != 0) c.a = c.a + b.scaled(FieldElement(w));
    }
    nonzero = !c.a.is_zero();
  }
  return c;
}

// ---- polynomial tensors p^h ---------------------------------------------------------

namespace detail {

inline Polynomial x_up(int i) { return Polynomial::coordinate(i); }
inline Polynomial x_low(int i) { return Polynomial::coordinate(i).scaled(FieldElement(eta(i))); }
inline Polynomial x_squared() {
  Polynomial s;
  for (int i = 0; i < 4; ++i) s += x_up(i) * x_low(i);
  return s;
}
inline Polynomial eta_poly(int i, int j) { return i == j ? Polynomial(eta(i)) : Polynomial(); }

/// A_{ij} A_{kl} b: antisymmetrize over (i,j) and over (k,l).
template <class Fn>
Tensor antisym_both(Fn&& b) {
  Tensor out(4);
  const FieldElement q(Rational(1, 4));
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j)
      for (int k = 0; k < 4; ++k)
        for (int l = 0; l < 4; ++l)
          out(i, j, k, l) = (b(i, j, k, l) - b(j, i, k, l) - b(i, j, l, k) + b(j, i, l, k)).scaled(q);
  return out;
}
template <class Fn>
Tensor antisym_ij(Fn&& b) {
  Tensor out(4);
  const FieldElement h(Rational(1, 2));
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j)
      for (int k = 0; k < 4; ++k)
        for (int l = 0; l < 4; ++l) out(i, j, k, l) = (b(i, j, k, l) - b(j, i, k, l)).scaled(h);
  return out;
}
template <class Fn>
Tensor antisym_kl(Fn&& b) {
  Tensor out(4);
  const FieldElement h(Rational(1, 2));
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j)
      for (int k = 0; k < 4; ++k)
        for (int l = 0; l < 4; ++l) out(i, j, k, l) = (b(i, j, k, l) - b(i, j, l, k)).scaled(h);
  return out;
}

}  // namespace detail

/// The polynomial tensor p^h_{ijkl} of x-degree h.
inline Tensor build_p(const WeylCoefficients& c) {
  validate_coefficients(c);
  using detail::antisym_both;
  using detail::antisym_ij;
  using detail::antisym_kl;
  using detail::eta_poly;
  using detail::x_low;
  using detail::x_up;
  const Tensor& a = c.a;
  const Polynomial x2 = detail::x_squared();
  auto contract1 = [&](auto&& f) {  // sum_n f(n) x^n
    Polynomial s;
    for (int n = 0; n < 4; ++n) s += f(n) * x_up(n);
    return s;
  };
  auto contract2 = [&](auto&& f) {  // sum_{m,n} f(m,n) x^m x^n
    Polynomial s;
    for (int m = 0; m < 4; ++m)
      for (int n = 0; n < 4; ++n) s += f(m, n) * x_up(m) * x_up(n);
    return s;
  };
  const FieldElement half(Rational(1, 2)), quarter(Rational(1, 4));
  switch (c.h) {
    case 0:
      return a;
    case 1: {
      Tensor t = antisym_ij([&](int i, int j, int k, int l) { return x_low(i) * a(j, k, l); });
      t = t + antisym_kl([&](int i, int j, int k, int l) { return x_low(k) * a(l, i, j); });
      t = t + antisym_both([&](int i, int j, int k, int l) {
            return eta_poly(i, k) * contract1([&](int n) { return a(l, j, n); });
          });
      t = t + antisym_both([&](int i, int j, int k, int l) {
            return eta_poly(k, i) * contract1([&](int n) { return a(j, l, n); });
          });
      return t;
    }
    case 2: {
      Polynomial axx = contract2([&](int m, int n) { return a(m, n); });
      Tensor t = antisym_both([&](int i, int j, int k, int l) { return a(i, k) * x_low(l) * x_low(j); });
      t = t - antisym_both([&](int i, int j, int k, int l) { return eta_poly(i, k) * a(l, j) * x2; }).scaled(half);
      t = t + antisym_both([&](int i, int j, int k, int l) {
                return eta_poly(i, k) * contract1([&](int n) { return a(l, n); }) * x_low(j);
              }).scaled(half);
      t = t + antisym_both([&](int i, int j, int k, int l) {
                return eta_poly(k, i) * contract1([&](int n) { return a(j, n); }) * x_low(l);
              }).scaled(half);
      t = t - antisym_kl([&](int i, int j, int k, int l) { return eta_poly(i, k) * eta_poly(l, j) * axx; })
                  .scaled(FieldElement(Rational(1, 6)));
      return t;
    }
    case 3: {
      Tensor t = antisym_both([&](int i, int j, int k, int l) {
        return x_low(i) * contract1([&](int n) { return a(j, n, k); }) * x_low(l);
      });
      t = t + antisym_both([&](int i, int j, int k, int l) {
            return x_low(k) * contract1([&](int n) { return a(l, n, i); }) * x_low(j);
          });
      t = t + antisym_ij([&](int i, int j, int k, int l) { return x_low(i) * a(j, k, l) * x2; }).scaled(quarter);
      t = t + antisym_kl([&](int i, int j, int k, int l) { return x_low(k) * a(l, i, j) * x2; }).scaled(quarter);
      t = t + antisym_both([&](int i, int j, int k, int l) {
                return contract2([&](int m, int n) { return a(m, n, i); }) * eta_poly(j, k) * x_low(l);
              }).scaled(half);
      t = t + antisym_both([&](int i, int j, int k, int l) {
                return contract2([&](int m, int n) { return a(m, n, k); }) * eta_poly(l, i) * x_low(j);
              }).scaled(half);
      t = t + antisym_both([&](int i, int j, int k, int l) {
                return contract1([&](int m) { return a(i, m, k); }) * eta_poly(l, j) * x2;
              }).scaled(quarter);
      t = t + antisym_both([&](int i, int j, int k, int l) {
                return contract1([&](int m) { return a(k, m, i); }) * eta_poly(j, l) * x2;
              }).scaled(quarter);
      return t;
    }
    case 4: {
      Tensor t = antisym_both([&](int i, int j, int k, int l) {
        return contract2([&](int m, int n) { return a(m, i, n, k); }) * x_low(l) * x_low(j);
      });
      t = t - antisym_both([&](int i, int j, int k, int l) {
                return contract2([&](int m, int n) { return a(m, i, n, k); }) * eta_poly(l, j) * x2;
              }).scaled(half);
      const Polynomial x4 = x2 * x2;
      for (std::size_t n = 0; n < t.size(); ++n)
        t.flat(n) -= (a.flat(n) * x4).scaled(FieldElement(Rational(1, 16)));
      return t;
    }
    default:
      throw ContractViolation("h must lie in 0..4");
  }
}

/// Weyl-tensor symmetries p = p_{[kl][ij]}, p_{[ijkl]} = 0, trace-free; returns the first failure or "".
inline std::string weyl_symmetry_violation(const Tensor& p) {
  for (const auto& con : detail::coefficient_constraints(0)) {
    Polynomial acc;
    for (const auto& [k, v] : con.row) acc += p.flat(k).scaled(FieldElement(v));
    if (!acc.is_zero()) return con.label;
  }
  return {};
}

// ---- spinor projections -------------------------------------------------------------

/// Lower-primed symmetric 4-spinor stored by number of ones.
using PrimedQuartic = std::array<Polynomial, 5>;

namespace detail {

inline int popcount4(int b) { return std::popcount(static_cast<unsigned>(b)); }
inline std::vector<int> bits4(int b) { return {(b >> 3) & 1, (b >> 2) & 1, (b >> 1) & 1, b & 1}; }

/// Averages an unsymmetrized primed function over strings with equal counts.
template <class Fn>
PrimedQuartic symmetrize_primed(Fn&& f) {
  PrimedQuartic out;
  std::array<std::vector<Polynomial>, 5> parts;
  for (int b = 0; b < 16; ++b) parts[popcount4(b)].push_back(f(bits4(b)));
  for (int t = 0; t <= 4; ++t) out[t] = Polynomial::sum(parts[t]).scaled(FieldElement(1 / binomial(4, t)));
  return out;
}

/// sum_{P,B,Q,C} eps^{PB} eps^{QC} S_{P I' B J' Q K' C L'} for a rank-4 spinor image.
inline Polynomial double_trace(const SpinorArray& s, const std::vector<int>& pr) {
  std::vector<Polynomial> parts;
  for (int p = 0; p < 2; ++p)
    for (int q = 0; q < 2; ++q) {
      const int e = eps_upper(p, 1 - p) * eps_upper(q, 1 - q);
      parts.push_back(s.at({p, 1 - p, q, 1 - q}, pr).scaled(FieldElement(e)));
    }
  return Polynomial::sum(parts);
}

/// x^L_{L'} = x^{LM'} eps_{M'L'}.
inline Polynomial x_mixed(int l, int lp) { return lp == 0 ? -x_spinor(l, 1) : x_spinor(l, 0); }

}  // namespace detail

/// pi_{I'J'K'L'} = (1/4) p_{P(I'}^P_{J'|Q|K'}^Q_{L')}.
inline PrimedQuartic spinor_projection(const Tensor& p) {
  if (p.rank() != 4) throw ContractViolation("projection needs a rank-4 tensor");
  const SpinorArray s = tensor_to_spinor(p);
  return detail::symmetrize_primed(
      [&](const std::vector<int>& pr) { return detail::double_trace(s, pr).scaled(FieldElement(Rational(1, 4))); });
}

/// Raise all four primed indices: the type-(0,4) Killing spinor with upper primed slots.
inline KillingSpinor raise_quartic(const PrimedQuartic& low) {
  KillingSpinor out = KillingSpinor::zero(0, 4);
  for (int m = 0; m <= 4; ++m) out(0, m) = low[4 - m].scaled(FieldElement(m % 2 ? -1 : 1));
  return out;
}

/// Spinor coefficients alpha^h of the constant tensors a^h.
struct AlphaSpinors {
  int h = 0;
  PrimedQuartic quartic;  // h = 0, 4: alpha_{I'J'K'L'}
  SpinorArray mixed;      // h = 1, 3: alpha_{I I'J'K'} (1 unprimed, 3 primed); h = 2: alpha_{IJ I'J'}
};

inline AlphaSpinors extract_alpha(const WeylCoefficients& c) {
  validate_coefficients(c);
  AlphaSpinors out;
  out.h = c.h;
  const SpinorArray s = tensor_to_spinor(c.a);
  if (c.h == 0 || c.h == 4) {
    out.quartic = detail::symmetrize_primed(
        [&](const std::vector<int>& pr) { return detail::double_trace(s, pr).scaled(FieldElement(Rational(1, 4))); });
  } else if (c.h == 1 || c.h == 3) {
    // alpha_{II'J'K'} = (1/2) eps^{JK} a_{II'JJ'KK'}
    out.mixed = SpinorArray({Variance::lower}, {Variance::lower, Variance::lower, Variance::lower});
    for (int i = 0; i < 2; ++i)
      for (int b = 0; b < 8; ++b) {
        std::vector<int> pr{(b >> 2) & 1, (b >> 1) & 1, b & 1};
        Polynomial acc = (s.at({i, 0, 1}, pr) - s.at({i, 1, 0}, pr)).scaled(FieldElement(Rational(1, 2)));
        out.mixed.at({i}, pr) = acc;
      }
  } else {
    out.mixed = s;
  }
  return out;
}

/// Sign of the degree-1 closed form pi^1 = kPi1Sign * alpha^1_{L(I'J'K'} x^L_{L')}.
/// Tracing x_{[i} a_{j]kl} + x_{[k} a_{l]ij} gives (1/4)(-2 - 2) alpha x, because
/// eps^{PB} x_{PI'} = -x^B_{I'}; the sign is independent of the eps and sigma choices.
inline constexpr int kPi1Sign = -1;

/// Closed forms of pi^h in terms of alpha^h and x^L_{L'}.
inline PrimedQuartic pi_closed_form(const AlphaSpinors& al) {
  using detail::x_mixed;
  auto conj_const = [](const Polynomial& p) { return p.conj(); };
  switch (al.h) {
    case 0:
      return al.quartic;
    case 1:
      return detail::symmetrize_primed([&](const std::vector<int>& pr) {
        Polynomial acc;
        for (int l = 0; l < 2; ++l) acc += al.mixed.at({l}, {pr[0], pr[1], pr[2]}) * x_mixed(l, pr[3]);
        return acc.scaled(FieldElement(kPi1Sign));
      });
    case 2:
      return detail::symmetrize_primed([&](const std::vector<int>& pr) {
        Polynomial acc;
        for (int k = 0; k < 2; ++k)
          for (int l = 0; l < 2; ++l) acc += al.mixed.at({k, l}, {pr[0], pr[1]}) * x_mixed(k, pr[2]) * x_mixed(l, pr[3]);
        return acc.scaled(FieldElement(Rational(1, 4)));
      });
    case 3:
      // conj(alpha)_{JKL I'}: unprimed slot of alpha takes I', primed slots take J, K, L.
      return detail::symmetrize_primed([&](const std::vector<int>& pr) {
        Polynomial acc;
        for (int j = 0; j < 2; ++j)
          for (int k = 0; k < 2; ++k)
            for (int l = 0; l < 2; ++l)
              acc += conj_const(al.mixed.at({pr[0]}, {j, k, l})) * x_mixed(j, pr[1]) * x_mixed(k, pr[2]) *
                     x_mixed(l, pr[3]);
        return acc.scaled(FieldElement(Rational(-1, 2)));
      });
    case 4:
      return detail::symmetrize_primed([&](const std::vector<int>& pr) {
        Polynomial acc;
        for (int b = 0; b < 16; ++b) {
          const auto u = detail::bits4(b);
          acc += conj_const(al.quartic[detail::popcount4(b)]) * x_mixed(u[0], pr[0]) * x_mixed(u[1], pr[1]) *
                 x_mixed(u[2], pr[2]) * x_mixed(u[3], pr[3]);
        }
        return acc.scaled(FieldElement(Rational(1, 4)));
      });
    default:
      throw ContractViolation("h must lie in 0..4");
  }
}

/// For f with spinor image f_{II'JJ'KK'LL'} and h = f_{[ij][kl]}:
/// h_{PI'}^P_{J'QK'}^Q_{L'} = f_{P(I'J')}^P_{Q(K'L')}^Q.
inline bool shortcut_identity_holds(const Tensor& f) {
  if (f.rank() != 4) throw ContractViolation("shortcut identity needs a rank-4 tensor");
  const Tensor hh = detail::antisym_both([&](int i, int j, int k, int l) { return f(i, j, k, l); });
  const SpinorArray sf = tensor_to_spinor(f), sh = tensor_to_spinor(hh);
  for (int b = 0; b < 16; ++b) {
    const auto pr = detail::bits4(b);
    std::vector<Polynomial> parts;
    for (int swap1 = 0; swap1 < 2; ++swap1)
      for (int swap2 = 0; swap2 < 2; ++swap2) {
        std::vector<int> q = pr;
        if (swap1) std::swap(q[0], q[1]);
        if (swap2) std::swap(q[2], q[3]);
        parts.push_back(detail::double_trace(sf, q).scaled(FieldElement(Rational(1, 4))));
      }
    if (detail::double_trace(sh, pr) != Polynomial::sum(parts)) return false;
  }
  return true;
}

// ---- chiral symmetries --------------------------------------------------------------

/// W_{ij}[G; p] with the four contractions and coefficients 1, 1, 3/5, 3/5.
inline Tensor build_maxwell_chiral(MaxwellJets& jets, const Tensor& p) {
  if (p.rank() != 4) throw ContractViolation("chiral symmetry needs a rank-4 polynomial tensor");
  auto d = [](const Polynomial& q, int i) { return q.partial(Variable::coordinate(i)); };
  const FieldElement three_fifths(Rational(3, 5));
  Tensor x(2);  // unantisymmetrized
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) {
      std::vector<Polynomial> parts;
      for (int k = 0; k < 4; ++k)
        for (int l = 0; l < 4; ++l) {
          if (k == l) continue;
          const int ekl = eta(k) * eta(l);
          for (int m = 0; m < 4; ++m) {
            const FieldElement w(ekl * eta(m));
            // p_{klmi} G^{kl,m}_{,j}
            if (!p(k, l, m, i).is_zero()) parts.push_back((p(k, l, m, i) * jets.get(k, l, {m, j})).scaled(w));
            // d_i p_{jmkl} G^{kl,m}
            const Polynomial dp = d(p(j, m, k, l), i);
            if (!dp.is_zero()) parts.push_back((dp * jets.get(k, l, {m})).scaled(w));
            // (3/5) d^m p_{klmi} G^{kl}_{,j}
            const Polynomial dmp = d(p(k, l, m, i), m);
            if (!dmp.is_zero()) parts.push_back((dmp * jets.get(k, l, {j})).scaled(w * three_fifths));
            // (3/5) d^m d_i p_{jmkl} G^{kl}
            const Polynomial ddp = d(dp, m);
            if (!ddp.is_zero()) parts.push_back((ddp * jets.get(k, l)).scaled(w * three_fifths));
          }
        }
      x(i, j) = Polynomial::sum(parts);
    }
  Tensor out(2);
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) out(i, j) = (x(i, j) - x(j, i)).scaled(FieldElement(Rational(1, 2)));
  return out;
}

/// d_{P(I'} pi_{J')K'L'M'} conj(phi)^{K'L'M'P} = (3/5) d_P^{P'} pi_{K'L'P'(I'} conj(phi)_{J')}^{K'L'P}
/// against the symbolic first-order conjugate jets of a spin-1 context.
inline bool killing_contraction_identity_holds(const JetContext& ctx, const KillingSpinor& pi) {
  if (ctx.two_s() != 2 || pi.k != 0 || pi.l != 4) throw ContractViolation("identity needs spin 1 and a (0,4) spinor");
  auto pi_low = [&](int ones) { return lowered_component(pi, ones); };
  // conj(phi)[1]: 3 lower primed (j ones), 1 upper unprimed (k). Raising a primed slot flips it with sign (-1)^{value}.
  auto phibar = [&](int lower_ones, int raised_ones, int raised_count, int up) {
    // primed string: lower part with lower_ones ones, raised part with raised_ones ones among raised_count slots
    const int j = lower_ones + (raised_count - raised_ones);
    Polynomial v = ctx.jet_poly(1, j, up, true);
    return raised_ones % 2 ? -v : v;
  };
  for (int ip = 0; ip < 2; ++ip)
    for (int jp = 0; jp < 2; ++jp) {
      std::vector<Polynomial> lhs, rhs;
      for (int sw = 0; sw < 2; ++sw) {
        const int a = sw ? jp : ip, b = sw ? ip : jp;
        for (int p = 0; p < 2; ++p)
          for (int kb = 0; kb < 8; ++kb) {
            const int ones = std::popcount(static_cast<unsigned>(kb));
            // d_{P a} pi_{b K'L'M'} conj(phi)^{K'L'M'P}
            lhs.push_back(coord_derivative(pi_low(b + ones), p, a) * phibar(0, ones, 3, p));
          }
        for (int p = 0; p < 2; ++p)
          for (int pp = 0; pp < 2; ++pp)
            for (int kb = 0; kb < 4; ++kb) {
              const int ones = std::popcount(static_cast<unsigned>(kb));
              // d_P^{P'} pi_{K'L'P' a} conj(phi)_{b}^{K'L'P}
              rhs.push_back(coord_derivative_mixed(pi_low(ones + pp + a), p, pp) * phibar(b, ones, 2, p));
            }
      }
      const Polynomial l = Polynomial::sum(lhs).scaled(FieldElement(Rational(1, 2)));
      const Polynomial r = Polynomial::sum(rhs).scaled(FieldElement(Rational(3, 10)));
      if (l != r) return false;
    }
  return true;
}

/// Every check on one W[F; p^h] sample.
struct MaxwellChiralReport {
  int h = 0;
  bool weyl_symmetric = false;   // p^h has the symmetries of a Weyl tensor
  bool determining = false;      // D^j W_{ij} = D^j *W_{ij} = 0
  bool spinor_form = false;      // symmetric, representable, equals W_{IJ}[pi^h]
  bool chirality = false;        // *W[F;p] = -W[*F;p]
  bool closed_form = false;      // projection equals the alpha closed form
  bool killing = false;          // pi^h is a (0,4) Killing spinor
  std::size_t residual_terms = 0;
  bool pass() const { return weyl_symmetric && determining && spinor_form && chirality && closed_form && killing; }
};

inline MaxwellChiralReport check_maxwell_chiral(const WeylCoefficients& c) {
  MaxwellChiralReport rep;
  rep.h = c.h;
  JetContext ctx(2, 3);
  MaxwellJets plain(ctx), dual(ctx, true);
  const Tensor p = build_p(c);
  rep.weyl_symmetric = weyl_symmetry_violation(p).empty();
  const PrimedQuartic proj = spinor_projection(p);
  rep.closed_form = proj == pi_closed_form(extract_alpha(c));
  const KillingSpinor pi = raise_quartic(proj);
  rep.killing = satisfies_killing(pi);
  const Tensor w = build_maxwell_chiral(plain, p);
  const MaxwellResidual mr = maxwell_residual(ctx, w);
  rep.residual_terms = mr.divergence_terms + mr.dual_divergence_terms;
  rep.determining = mr.pass();
  const SpinorCharacteristic sc = tensor_characteristic_to_spinor(w);
  rep.spinor_form = sc.symmetric && sc.representation && sc.q == build_chiral(ctx, pi).q;
  rep.chirality = hodge_dual(w) == build_maxwell_chiral(dual, p).scaled(FieldElement(-1));
  return rep;
}

/// pi^h over the admissible bases of all five h. The complex span should be the
/// full (0,4) Killing space; the real span needs i pi^2 as well (complex alpha^2).
struct PiSpanReport {
  std::size_t generators = 0;
  std::size_t complex_rank = 0;
  std::size_t real_rank = 0;
  bool all_killing = true;
  long long expected_complex = 0;
  bool pass() const {
    return all_killing && static_cast<long long>(complex_rank) == expected_complex &&
           static_cast<long long>(real_rank) == 2 * expected_complex;
  }
};

inline PiSpanReport pi_span_check() {
  PiSpanReport rep;
  rep.expected_complex = killing_dimension(0, 4);
  std::vector<KillingSpinor> family;
  for (int h = 0; h <= 4; ++h)
    for (const auto& a : admissible_basis(h)) {
      const KillingSpinor pi = raise_quartic(spinor_projection(build_p({h, a})));
      if (!satisfies_killing(pi)) rep.all_killing = false;
      family.push_back(pi);
      if (h == 2) family.push_back(pi.scaled(FieldElement::i()));
    }
  rep.generators = family.size();
  rep.complex_rank = complex_rank(family);
  rep.real_rank = real_rank(family);
  return rep;
}

/// Independent Maxwell symmetries of order r (r >= 2).
inline long long maxwell_dimension(int r) {
  if (r < 0) throw ContractViolation("order must be non-negative");
  if (r < 2) return dimension_d_r(2, r);
  const long long R = r;
  return (R + 1) * (R + 3) * (R * R * R * R + 8 * R * R * R + 17 * R * R + 4 * R + 6) / 9;
}

}  // namespace spinorsym
