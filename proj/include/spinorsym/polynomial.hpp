#pragma once

// Sparse multivariate polynomials over Q(i, sqrt2) in coordinate, jet,
// conjugate-jet and parameter variables.

#include <algorithm>
#include <cstdint>
#include <functional>
#include <map>
#include <mutex>
#include <ostream>
#include <span>
#include <sstream>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include <boost/container/small_vector.hpp>

#include "spinorsym/errors.hpp"
#include "spinorsym/field.hpp"

namespace spinorsym {

enum class VarKind : std::uint8_t { coordinate = 0, jet = 1, conjugate_jet = 2, parameter = 3 };

namespace detail {

class SymbolTable {
 public:
  static SymbolTable& instance() {
    static SymbolTable table;
    return table;
  }

  std::uint32_t intern(std::string_view name) {
    std::lock_guard lock(mutex_);
    auto it = index_.find(std::string(name));
    if (it != index_.end()) return it->second;
    auto id = static_cast<std::uint32_t>(names_.size());
    names_.emplace_back(name);
    index_.emplace(std::string(name), id);
    return id;
  }

  std::string name(std::uint32_t id) const {
    std::lock_guard lock(mutex_);
    return names_.at(id);
  }

 private:
  mutable std::mutex mutex_;
  std::vector<std::string> names_;
  std::map<std::string, std::uint32_t> index_;
};

}  // namespace detail

/// A polynomial variable packed into 32 bits.
///
/// Layout (most significant first): kind(2) field(2) order(6) j(8) k(8) axis(6).
/// Parameters keep an interned symbol index in the low 30 bits.
///
/// Jet variables are the symmetrized on-shell derivative coordinates phi[p][j][k]
/// of field `field`: p derivatives, j = number of index value 1 among the 2s+p
/// lower unprimed indices, k = number among the p upper primed indices. The
/// conjugate jet with the same numbers is the complex conjugate of that
/// variable (so its j counts primed ones and k counts unprimed ones).
///
/// Ordering: kind, then the numeric fields (field, order, j, k, axis), then
/// parameter name.
class Variable {
 public:
  static Variable coordinate(int axis) {
    if (axis < 0 || axis > 3) throw ContractViolation("coordinate axis must be 0..3");
    return Variable(pack(VarKind::coordinate, 0, 0, 0, 0, axis));
  }
  static Variable jet(int field, int order, int j, int k, bool conjugate = false) {
    if (field < 0 || field > 3 || order < 0 || order > 63 || j < 0 || j > 255 || k < 0 || k > 255)
      throw ContractViolation("jet variable indices out of packing range");
    return Variable(pack(conjugate ? VarKind::conjugate_jet : VarKind::jet, field, order, j, k, 0));
  }
  static Variable parameter(std::string_view name) {
    return Variable((static_cast<std::uint32_t>(VarKind::parameter) << 30) |
                    detail::SymbolTable::instance().intern(name));
  }

  VarKind kind() const { return static_cast<VarKind>(code_ >> 30); }
  bool is_coordinate() const { return kind() == VarKind::coordinate; }
  bool is_jet_like() const { return kind() == VarKind::jet || kind() == VarKind::conjugate_jet; }
  bool is_conjugate() const { return kind() == VarKind::conjugate_jet; }
  int field() const { return static_cast<int>((code_ >> 28) & 0x3u); }
  int order() const { return static_cast<int>((code_ >> 22) & 0x3Fu); }
  int j() const { return static_cast<int>((code_ >> 14) & 0xFFu); }
  int k() const { return static_cast<int>((code_ >> 6) & 0xFFu); }
  int axis() const { return static_cast<int>(code_ & 0x3Fu); }
  std::string name() const {
    if (kind() != VarKind::parameter) throw ContractViolation("only parameters carry names");
    return detail::SymbolTable::instance().name(code_ & 0x3FFFFFFFu);
  }
  std::uint32_t code() const { return code_; }

  /// Jet <-> conjugate jet; coordinates and parameters are real and fixed.
  Variable conjugate() const {
    if (!is_jet_like()) return *this;
    return Variable(code_ ^ (0x3u << 30));  // 01 <-> 10
  }

  /// Same variable with the field tag replaced.
  Variable with_field(int field) const {
    if (!is_jet_like()) return *this;
    return Variable((code_ & ~(0x3u << 28)) | (static_cast<std::uint32_t>(field) << 28));
  }

  friend bool operator==(Variable a, Variable b) { return a.code_ == b.code_; }
  friend bool operator!=(Variable a, Variable b) { return a.code_ != b.code_; }
  friend bool operator<(Variable a, Variable b) {
    if (a.kind() == VarKind::parameter && b.kind() == VarKind::parameter && a.code_ != b.code_)
      return a.name() < b.name();
    return a.code_ < b.code_;
  }

  std::string str() const {
    std::ostringstream os;
    switch (kind()) {
      case VarKind::coordinate:
        os << "x" << axis();
        break;
      case VarKind::jet:
      case VarKind::conjugate_jet:
        os << (is_conjugate() ? "pb" : "p") << field() << "[" << order() << "," << j() << "," << k() << "]";
        break;
      case VarKind::parameter:
        os << name();
        break;
    }
    return os.str();
  }

 private:
  explicit Variable(std::uint32_t code) : code_(code) {}
  static std::uint32_t pack(VarKind kind, int field, int order, int j, int k, int axis) {
    return (static_cast<std::uint32_t>(kind) << 30) | (static_cast<std::uint32_t>(field) << 28) |
           (static_cast<std::uint32_t>(order) << 22) | (static_cast<std::uint32_t>(j) << 14) |
           (static_cast<std::uint32_t>(k) << 6) | static_cast<std::uint32_t>(axis);
  }

  std::uint32_t code_;
};

/// Product of variable powers, factors sorted by Variable ordering.
class Monomial {
 public:
  struct Factor {
    Variable var;
    std::uint32_t exp;
    friend bool operator==(const Factor& a, const Factor& b) { return a.var == b.var && a.exp == b.exp; }
  };
  using Storage = boost::container::small_vector<Factor, 6>;

  Monomial() = default;
  explicit Monomial(Variable v, std::uint32_t exp = 1) {
    if (exp > 0) factors_.push_back({v, exp});
  }
  /// Coordinate monomial x0^e0 x1^e1 x2^e2 x3^e3.
  static Monomial coordinates(std::span<const int> exps) {
    Monomial m;
    for (int a = 0; a < static_cast<int>(exps.size()); ++a)
      if (exps[a] > 0) m.factors_.push_back({Variable::coordinate(a), static_cast<std::uint32_t>(exps[a])});
    return m;
  }

  const Storage& factors() const { return factors_; }
  bool is_one() const { return factors_.empty(); }

  std::uint32_t exponent(Variable v) const {
    for (const auto& f : factors_)
      if (f.var == v) return f.exp;
    return 0;
  }

  int total_degree() const {
    int d = 0;
    for (const auto& f : factors_) d += static_cast<int>(f.exp);
    return d;
  }

  int coordinate_degree() const {
    int d = 0;
    for (const auto& f : factors_)
      if (f.var.is_coordinate()) d += static_cast<int>(f.exp);
    return d;
  }

  /// Largest jet order among jet-like factors, -1 if none.
  int max_jet_order() const {
    int r = -1;
    for (const auto& f : factors_)
      if (f.var.is_jet_like()) r = std::max(r, f.var.order());
    return r;
  }

  friend Monomial operator*(const Monomial& a, const Monomial& b) {
    Monomial out;
    out.factors_.reserve(a.factors_.size() + b.factors_.size());
    auto i = a.factors_.begin();
    auto j = b.factors_.begin();
    while (i != a.factors_.end() && j != b.factors_.end()) {
      if (i->var == j->var) {
        out.factors_.push_back({i->var, i->exp + j->exp});
        ++i;
        ++j;
      } else if (i->var < j->var) {
        out.factors_.push_back(*i++);
      } else {
        out.factors_.push_back(*j++);
      }
    }
    out.factors_.insert(out.factors_.end(), i, a.factors_.end());
    out.factors_.insert(out.factors_.end(), j, b.factors_.end());
    return out;
  }

  /// Multiply by one power of v.
  Monomial times(Variable v) const { return *this * Monomial(v); }

  /// Remove one power of v (v must divide the monomial).
  Monomial divided_by(Variable v) const {
    Monomial out;
    out.factors_.reserve(factors_.size());
    for (const auto& f : factors_) {
      if (f.var == v) {
        if (f.exp > 1) out.factors_.push_back({v, f.exp - 1});
      } else {
        out.factors_.push_back(f);
      }
    }
    return out;
  }

  /// Monomial with every factor mapped through fn; result re-sorted and merged.
  template <class Fn>
  Monomial mapped(Fn&& fn) const {
    Monomial out;
    for (const auto& f : factors_) out.factors_.push_back({fn(f.var), f.exp});
    out.normalize();
    return out;
  }

  friend bool operator==(const Monomial& a, const Monomial& b) { return a.factors_ == b.factors_; }
  friend bool operator!=(const Monomial& a, const Monomial& b) { return !(a == b); }
  friend bool operator<(const Monomial& a, const Monomial& b) {
    const auto n = std::min(a.factors_.size(), b.factors_.size());
    for (std::size_t t = 0; t < n; ++t) {
      const auto& fa = a.factors_[t];
      const auto& fb = b.factors_[t];
      if (fa.var != fb.var) return fa.var < fb.var;
      if (fa.exp != fb.exp) return fa.exp < fb.exp;
    }
    return a.factors_.size() < b.factors_.size();
  }

  std::string str() const {
    if (factors_.empty()) return "1";
    std::ostringstream os;
    bool first = true;
    for (const auto& f : factors_) {
      if (!first) os << "*";
      os << f.var.str();
      if (f.exp > 1) os << "^" << f.exp;
      first = false;
    }
    return os.str();
  }

 private:
  void normalize() {
    std::sort(factors_.begin(), factors_.end(), [](const Factor& a, const Factor& b) { return a.var < b.var; });
    Storage merged;
    for (const auto& f : factors_) {
      if (!merged.empty() && merged.back().var == f.var)
        merged.back().exp += f.exp;
      else
        merged.push_back(f);
    }
    factors_ = std::move(merged);
  }

  Storage factors_;
};

/// Sparse polynomial: terms sorted by monomial, no zero coefficients.
class Polynomial {
 public:
  struct Term {
    Monomial mono;
    FieldElement coeff;
  };

  Polynomial() = default;
  Polynomial(FieldElement c) {  // NOLINT(google-explicit-constructor)
    if (!c.is_zero()) terms_.push_back({Monomial(), std::move(c)});
  }
  Polynomial(int c) : Polynomial(FieldElement(c)) {}  // NOLINT(google-explicit-constructor)
  Polynomial(Monomial m, FieldElement c) {
    if (!c.is_zero()) terms_.push_back({std::move(m), std::move(c)});
  }
  static Polynomial variable(Variable v) { return Polynomial(Monomial(v), FieldElement(1)); }
  static Polynomial coordinate(int axis) { return variable(Variable::coordinate(axis)); }

  /// Build from arbitrary (possibly repeated, possibly zero) terms.
  static Polynomial from_terms(std::vector<Term> terms) {
    Polynomial p;
    p.terms_ = std::move(terms);
    p.canonicalize();
    return p;
  }

  const std::vector<Term>& terms() const { return terms_; }
  std::size_t size() const { return terms_.size(); }
  bool is_zero() const { return terms_.empty(); }

  bool is_constant() const { return terms_.empty() || (terms_.size() == 1 && terms_[0].mono.is_one()); }
  FieldElement constant_term() const {
    if (!terms_.empty() && terms_[0].mono.is_one()) return terms_[0].coeff;
    return {};
  }

  FieldElement coefficient(const Monomial& m) const {
    auto it = std::lower_bound(terms_.begin(), terms_.end(), m,
                               [](const Term& t, const Monomial& key) { return t.mono < key; });
    if (it != terms_.end() && it->mono == m) return it->coeff;
    return {};
  }

  bool has_jets() const {
    for (const auto& t : terms_)
      if (t.mono.max_jet_order() >= 0) return true;
    return false;
  }
  bool has_variable_kind(VarKind kind) const {
    for (const auto& t : terms_)
      for (const auto& f : t.mono.factors())
        if (f.var.kind() == kind) return true;
    return false;
  }
  /// Highest jet order present, -1 for jet-free polynomials.
  int max_jet_order() const {
    int r = -1;
    for (const auto& t : terms_) r = std::max(r, t.mono.max_jet_order());
    return r;
  }
  int coordinate_degree() const {
    int d = 0;
    for (const auto& t : terms_) d = std::max(d, t.mono.coordinate_degree());
    return d;
  }

  Polynomial operator-() const {
    Polynomial out = *this;
    for (auto& t : out.terms_) t.coeff = -t.coeff;
    return out;
  }

  friend Polynomial operator+(const Polynomial& a, const Polynomial& b) { return merge(a, b, false); }
  friend Polynomial operator-(const Polynomial& a, const Polynomial& b) { return merge(a, b, true); }
  Polynomial& operator+=(const Polynomial& o) { return *this = merge(*this, o, false); }
  Polynomial& operator-=(const Polynomial& o) { return *this = merge(*this, o, true); }

  friend Polynomial operator*(const Polynomial& a, const Polynomial& b) {
    if (a.is_zero() || b.is_zero()) return {};
    if (b.is_constant()) return a.scaled(b.constant_term());
    if (a.is_constant()) return b.scaled(a.constant_term());
    std::vector<Term> out;
    out.reserve(a.terms_.size() * b.terms_.size());
    for (const auto& s : a.terms_)
      for (const auto& t : b.terms_) out.push_back({s.mono * t.mono, s.coeff * t.coeff});
    return from_terms(std::move(out));
  }
  Polynomial& operator*=(const Polynomial& o) { return *this = *this * o; }

  Polynomial scaled(const FieldElement& c) const {
    if (c.is_zero()) return {};
    if (c.is_one()) return *this;
    Polynomial out;
    out.terms_.reserve(terms_.size());
    for (const auto& t : terms_) out.terms_.push_back({t.mono, t.coeff * c});
    return out;
  }
  friend Polynomial operator*(const FieldElement& c, const Polynomial& p) { return p.scaled(c); }
  friend Polynomial operator*(const Polynomial& p, const FieldElement& c) { return p.scaled(c); }

  Polynomial times(const Monomial& m) const {
    if (m.is_one()) return *this;
    std::vector<Term> out;
    out.reserve(terms_.size());
    for (const auto& t : terms_) out.push_back({t.mono * m, t.coeff});
    return from_terms(std::move(out));
  }

  /// Formal partial derivative with respect to v.
  Polynomial partial(Variable v) const {
    std::vector<Term> out;
    for (const auto& t : terms_) {
      auto e = t.mono.exponent(v);
      if (e == 0) continue;
      out.push_back({t.mono.divided_by(v), t.coeff.scaled(Rational(e))});
    }
    return from_terms(std::move(out));
  }

  /// Replace v by q everywhere.
  Polynomial substitute(Variable v, const Polynomial& q) const {
    std::vector<Polynomial> powers{Polynomial(1)};
    std::vector<Term> untouched;
    Polynomial out;
    for (const auto& t : terms_) {
      auto e = t.mono.exponent(v);
      if (e == 0) {
        untouched.push_back(t);
        continue;
      }
      while (powers.size() <= e) powers.push_back(powers.back() * q);
      Monomial rest = t.mono;
      for (std::uint32_t r = 0; r < e; ++r) rest = rest.divided_by(v);
      out += powers[e].times(rest).scaled(t.coeff);
    }
    return out + from_terms(std::move(untouched));
  }

  /// Coefficientwise conjugation, with jet <-> conjugate-jet variable swap.
  Polynomial conj() const {
    std::vector<Term> out;
    out.reserve(terms_.size());
    for (const auto& t : terms_)
      out.push_back({t.mono.mapped([](Variable v) { return v.conjugate(); }), t.coeff.conj()});
    return from_terms(std::move(out));
  }

  /// Map variables through fn (e.g. relabel field families); coefficients kept.
  template <class Fn>
  Polynomial map_variables(Fn&& fn) const {
    std::vector<Term> out;
    out.reserve(terms_.size());
    for (const auto& t : terms_) out.push_back({t.mono.mapped(fn), t.coeff});
    return from_terms(std::move(out));
  }

  /// Keep terms for which pred(monomial) holds.
  template <class Pred>
  Polynomial filtered(Pred&& pred) const {
    Polynomial out;
    for (const auto& t : terms_)
      if (pred(t.mono)) out.terms_.push_back(t);
    return out;
  }

  Polynomial real_part() const { return map_coefficients([](const FieldElement& c) { return c.real_part(); }); }
  Polynomial imag_part() const { return map_coefficients([](const FieldElement& c) { return c.imag_part(); }); }

  template <class Fn>
  Polynomial map_coefficients(Fn&& fn) const {
    Polynomial out;
    for (const auto& t : terms_) {
      FieldElement c = fn(t.coeff);
      if (!c.is_zero()) out.terms_.push_back({t.mono, std::move(c)});
    }
    return out;
  }

  /// Sum of many polynomials in one sort/merge pass.
  static Polynomial sum(std::span<const Polynomial> parts) {
    std::size_t n = 0;
    for (const auto& p : parts) n += p.terms_.size();
    std::vector<Term> all;
    all.reserve(n);
    for (const auto& p : parts) all.insert(all.end(), p.terms_.begin(), p.terms_.end());
    return from_terms(std::move(all));
  }

  friend bool operator==(const Polynomial& a, const Polynomial& b) {
    if (a.terms_.size() != b.terms_.size()) return false;
    for (std::size_t t = 0; t < a.terms_.size(); ++t)
      if (a.terms_[t].mono != b.terms_[t].mono || a.terms_[t].coeff != b.terms_[t].coeff) return false;
    return true;
  }
  friend bool operator!=(const Polynomial& a, const Polynomial& b) { return !(a == b); }

  std::string str() const {
    std::ostringstream os;
    os << *this;
    return os.str();
  }
  friend std::ostream& operator<<(std::ostream& os, const Polynomial& p) {
    if (p.is_zero()) return os << "0";
    bool first = true;
    for (const auto& t : p.terms_) {
      if (!first) os << " + ";
      os << "(" << t.coeff << ")";
      if (!t.mono.is_one()) os << "*" << t.mono.str();
      first = false;
    }
    return os;
  }

 private:
  void canonicalize() {
    std::sort(terms_.begin(), terms_.end(), [](const Term& a, const Term& b) { return a.mono < b.mono; });
    std::vector<Term> out;
    out.reserve(terms_.size());
    for (auto& t : terms_) {
      if (!out.empty() && out.back().mono == t.mono) {
        out.back().coeff += t.coeff;
      } else {
        if (!out.empty() && out.back().coeff.is_zero()) out.pop_back();
        out.push_back(std::move(t));
      }
    }
    if (!out.empty() && out.back().coeff.is_zero()) out.pop_back();
    terms_ = std::move(out);
  }

  static Polynomial merge(const Polynomial& a, const Polynomial& b, bool subtract) {
    if (b.terms_.empty()) return a;
    if (a.terms_.empty()) return subtract ? -b : b;
    Polynomial out;
    out.terms_.reserve(a.terms_.size() + b.terms_.size());
    auto i = a.terms_.begin();
    auto j = b.terms_.begin();
    while (i != a.terms_.end() || j != b.terms_.end()) {
      if (j == b.terms_.end() || (i != a.terms_.end() && i->mono < j->mono)) {
        out.terms_.push_back(*i++);
      } else if (i == a.terms_.end() || j->mono < i->mono) {
        out.terms_.push_back({j->mono, subtract ? -j->coeff : j->coeff});
        ++j;
      } else {
        FieldElement c = subtract ? i->coeff - j->coeff : i->coeff + j->coeff;
        if (!c.is_zero()) out.terms_.push_back({i->mono, std::move(c)});
        ++i;
        ++j;
      }
    }
    return out;
  }

  std::vector<Term> terms_;
};

/// All exponent vectors (e0..e3) with e0+e1+e2+e3 == degree, in a fixed order.
inline std::vector<Monomial> coordinate_monomials(int degree) {
  std::vector<Monomial> out;
  for (int a = degree; a >= 0; --a)
    for (int b = degree - a; b >= 0; --b)
      for (int c = degree - a - b; c >= 0; --c) {
        int e[4] = {a, b, c, degree - a - b - c};
        out.push_back(Monomial::coordinates(e));
      }
  return out;
}

}  // namespace spinorsym
