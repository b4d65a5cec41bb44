#pragma once

// Two-component spinor arrays with per-slot variance.
//
// Layout: unprimed slots first, then primed slots; a component is addressed by
// a bitstring whose most significant bit is slot 0. Symmetric storage keeps one
// entry per (j, k) = (number of unprimed ones, number of primed ones).
//
// Epsilon convention: eps_{01} = eps^{01} = +1, lowering lambda_B = lambda^A eps_{AB},
// raising lambda^A = eps^{AB} lambda_B.

#include <algorithm>
#include <bit>
#include <map>
#include <cstdint>
#include <numeric>
#include <utility>
#include <vector>

#include "spinorsym/errors.hpp"
#include "spinorsym/field.hpp"
#include "spinorsym/polynomial.hpp"

namespace spinorsym {

enum class Variance : std::uint8_t { lower, upper };
enum class SlotGroup : std::uint8_t { unprimed, primed, both };

/// eps_{ab} with lower indices (eps_{01} = +1).
inline int eps_lower(int a, int b) { return a == b ? 0 : (a == 0 ? 1 : -1); }
/// eps^{ab} with upper indices (eps^{01} = +1).
inline int eps_upper(int a, int b) { return a == b ? 0 : (a == 0 ? 1 : -1); }

class SpinorArray {
 public:
  SpinorArray() = default;

  /// Zero array with the given slot variances (unprimed slots, then primed).
  SpinorArray(std::vector<Variance> unprimed, std::vector<Variance> primed)
      : unprimed_(std::move(unprimed)), primed_(std::move(primed)), data_(std::size_t{1} << rank()) {
    if (rank() > 24) throw ContractViolation("spinor array rank too large for dense storage");
  }

  /// Uniform variance constructor: m unprimed slots, mp primed slots.
  static SpinorArray zeros(int m, Variance vu, int mp, Variance vp) {
    return SpinorArray(std::vector<Variance>(m, vu), std::vector<Variance>(mp, vp));
  }

  int unprimed_rank() const { return static_cast<int>(unprimed_.size()); }
  int primed_rank() const { return static_cast<int>(primed_.size()); }
  int rank() const { return unprimed_rank() + primed_rank(); }
  std::size_t size() const { return data_.size(); }
  const std::vector<Variance>& unprimed_variance() const { return unprimed_; }
  const std::vector<Variance>& primed_variance() const { return primed_; }
  /// Variance of slot s in the global (unprimed-first) numbering.
  Variance variance(int s) const { return s < unprimed_rank() ? unprimed_[s] : primed_[s - unprimed_rank()]; }
  bool is_primed(int s) const { return s >= unprimed_rank(); }

  Polynomial& operator[](std::size_t bits) { return data_[bits]; }
  const Polynomial& operator[](std::size_t bits) const { return data_[bits]; }

  /// Index value (0/1) of slot s within component `bits`.
  int bit(std::size_t bits, int s) const { return static_cast<int>((bits >> (rank() - 1 - s)) & 1u); }
  std::size_t with_bit(std::size_t bits, int s, int v) const {
    const std::size_t mask = std::size_t{1} << (rank() - 1 - s);
    return v ? (bits | mask) : (bits & ~mask);
  }

  /// Component by explicit index lists.
  const Polynomial& at(const std::vector<int>& unprimed, const std::vector<int>& primed) const {
    return data_[index_of(unprimed, primed)];
  }
  Polynomial& at(const std::vector<int>& unprimed, const std::vector<int>& primed) {
    return data_[index_of(unprimed, primed)];
  }

  std::size_t index_of(const std::vector<int>& unprimed, const std::vector<int>& primed) const {
    if (static_cast<int>(unprimed.size()) != unprimed_rank() || static_cast<int>(primed.size()) != primed_rank())
      throw ContractViolation("spinor index list does not match array ranks");
    std::size_t bits = 0;
    for (int v : unprimed) bits = (bits << 1) | static_cast<std::size_t>(v & 1);
    for (int v : primed) bits = (bits << 1) | static_cast<std::size_t>(v & 1);
    return bits;
  }

  /// Number of unprimed / primed ones in a component.
  int unprimed_ones(std::size_t bits) const {
    return std::popcount(static_cast<std::uint64_t>(bits >> primed_rank()));
  }
  int primed_ones(std::size_t bits) const {
    return std::popcount(static_cast<std::uint64_t>(bits & ((std::size_t{1} << primed_rank()) - 1)));
  }

  bool is_zero() const {
    return std::all_of(data_.begin(), data_.end(), [](const Polynomial& p) { return p.is_zero(); });
  }

  SpinorArray operator+(const SpinorArray& o) const { return combine(o, false); }
  SpinorArray operator-(const SpinorArray& o) const { return combine(o, true); }
  SpinorArray scaled(const FieldElement& c) const {
    SpinorArray out = *this;
    for (auto& p : out.data_) p = p.scaled(c);
    return out;
  }
  SpinorArray times(const Polynomial& q) const {
    SpinorArray out = *this;
    for (auto& p : out.data_) p = p * q;
    return out;
  }

  friend bool operator==(const SpinorArray& a, const SpinorArray& b) {
    return a.unprimed_ == b.unprimed_ && a.primed_ == b.primed_ && a.data_ == b.data_;
  }

  template <class Fn>
  SpinorArray map(Fn&& fn) const {
    SpinorArray out = *this;
    for (auto& p : out.data_) p = fn(p);
    return out;
  }

 private:
  SpinorArray combine(const SpinorArray& o, bool subtract) const {
    if (unprimed_ != o.unprimed_ || primed_ != o.primed_)
      throw ContractViolation("spinor arrays with different slot structure");
    SpinorArray out = *this;
    for (std::size_t i = 0; i < data_.size(); ++i) out.data_[i] = subtract ? data_[i] - o.data_[i] : data_[i] + o.data_[i];
    return out;
  }

  std::vector<Variance> unprimed_;
  std::vector<Variance> primed_;
  std::vector<Polynomial> data_;
};

/// Symmetric-compressed storage: entry (j, k) for j unprimed ones, k primed ones.
class SymmetricSpinor {
 public:
  SymmetricSpinor() = default;
  SymmetricSpinor(int m, Variance vu, int mp, Variance vp)
      : m_(m), mp_(mp), vu_(vu), vp_(vp), data_(static_cast<std::size_t>((m + 1) * (mp + 1))) {}

  int unprimed_rank() const { return m_; }
  int primed_rank() const { return mp_; }
  Variance unprimed_variance() const { return vu_; }
  Variance primed_variance() const { return vp_; }

  Polynomial& operator()(int j, int k) { return data_.at(static_cast<std::size_t>(j * (mp_ + 1) + k)); }
  const Polynomial& operator()(int j, int k) const { return data_.at(static_cast<std::size_t>(j * (mp_ + 1) + k)); }
  const std::vector<Polynomial>& entries() const { return data_; }

  bool is_zero() const {
    return std::all_of(data_.begin(), data_.end(), [](const Polynomial& p) { return p.is_zero(); });
  }
  friend bool operator==(const SymmetricSpinor& a, const SymmetricSpinor& b) {
    return a.m_ == b.m_ && a.mp_ == b.mp_ && a.vu_ == b.vu_ && a.vp_ == b.vp_ && a.data_ == b.data_;
  }

 private:
  int m_ = 0;
  int mp_ = 0;
  Variance vu_ = Variance::lower;
  Variance vp_ = Variance::upper;
  std::vector<Polynomial> data_;
};

namespace detail {

inline void check_group_variance(const std::vector<Variance>& v) {
  for (auto x : v)
    if (x != v.front()) throw ContractViolation("symmetrization over slots of mixed variance");
}

}  // namespace detail

/// Exact average over permutations within the chosen slot group(s).
///
/// A symmetrized component only depends on the counts of ones, so it is the
/// mean over all bitstrings in the group with the same count.
inline SpinorArray symmetrize(const SpinorArray& a, SlotGroup group) {
  const int m = a.unprimed_rank();
  const int mp = a.primed_rank();
  const bool do_u = group != SlotGroup::primed && m > 1;
  const bool do_p = group != SlotGroup::unprimed && mp > 1;
  if (do_u) detail::check_group_variance(a.unprimed_variance());
  if (do_p) detail::check_group_variance(a.primed_variance());
  SpinorArray out = a;
  const std::size_t umask = ((std::size_t{1} << m) - 1) << mp;
  const std::size_t pmask = (std::size_t{1} << mp) - 1;
  // Accumulate class sums keyed by (count or exact bits) in each group.
  std::map<std::pair<std::size_t, std::size_t>, std::pair<std::vector<Polynomial>, std::size_t>> classes;
  auto key_of = [&](std::size_t bits) {
    std::size_t ku = do_u ? static_cast<std::size_t>(a.unprimed_ones(bits)) : ((bits & umask) >> mp);
    std::size_t kp = do_p ? static_cast<std::size_t>(a.primed_ones(bits)) : (bits & pmask);
    return std::make_pair(ku, kp);
  };
  for (std::size_t bits = 0; bits < a.size(); ++bits) {
    auto& cls = classes[key_of(bits)];
    cls.first.push_back(a[bits]);
    ++cls.second;
  }
  std::map<std::pair<std::size_t, std::size_t>, Polynomial> means;
  for (auto& [key, cls] : classes)
    means[key] = Polynomial::sum(cls.first).scaled(make_rational(1, static_cast<long>(cls.second)));
  for (std::size_t bits = 0; bits < a.size(); ++bits) out[bits] = means[key_of(bits)];
  return out;
}

/// Compress a fully symmetric array; throws unless it equals its symmetrization.
inline SymmetricSpinor to_symmetric(const SpinorArray& a) {
  if (!(symmetrize(a, SlotGroup::both) == a))
    throw ContractViolation("array is not symmetric in its unprimed and primed groups");
  const int m = a.unprimed_rank();
  const int mp = a.primed_rank();
  SymmetricSpinor out(m, m ? a.unprimed_variance().front() : Variance::lower, mp,
                      mp ? a.primed_variance().front() : Variance::upper);
  for (std::size_t bits = 0; bits < a.size(); ++bits) out(a.unprimed_ones(bits), a.primed_ones(bits)) = a[bits];
  return out;
}

inline SpinorArray to_dense(const SymmetricSpinor& s) {
  SpinorArray out = SpinorArray::zeros(s.unprimed_rank(), s.unprimed_variance(), s.primed_rank(), s.primed_variance());
  for (std::size_t bits = 0; bits < out.size(); ++bits) out[bits] = s(out.unprimed_ones(bits), out.primed_ones(bits));
  return out;
}

/// Raise or lower one slot with eps.
inline SpinorArray eps_move(const SpinorArray& a, int slot, Variance target) {
  if (slot < 0 || slot >= a.rank()) throw ContractViolation("eps_move: slot out of range");
  if (a.variance(slot) == target) throw ContractViolation("eps_move: slot already has the requested variance");
  auto vu = a.unprimed_variance();
  auto vp = a.primed_variance();
  if (a.is_primed(slot))
    vp[slot - a.unprimed_rank()] = target;
  else
    vu[slot] = target;
  SpinorArray out(vu, vp);
  for (std::size_t bits = 0; bits < a.size(); ++bits) {
    const int v = a.bit(bits, slot);
    const int w = 1 - v;
    // lower: new_v = old^w eps_{wv}; raise: new^v = eps^{vw} old_w.
    const int sign = target == Variance::lower ? eps_lower(w, v) : eps_upper(v, w);
    const Polynomial& src = a[a.with_bit(bits, slot, w)];
    out[bits] = sign > 0 ? src : -src;
  }
  return out;
}

/// Contract an upper slot against a lower slot of the same primedness.
inline SpinorArray contract(const SpinorArray& a, int slot_up, int slot_down) {
  if (slot_up == slot_down || slot_up < 0 || slot_down < 0 || slot_up >= a.rank() || slot_down >= a.rank())
    throw ContractViolation("contract: invalid slots");
  if (a.is_primed(slot_up) != a.is_primed(slot_down))
    throw ContractViolation("contract: primedness mismatch");
  if (a.variance(slot_up) != Variance::upper || a.variance(slot_down) != Variance::lower)
    throw ContractViolation("contract: need one upper and one lower slot");
  std::vector<Variance> vu, vp;
  std::vector<int> keep;
  for (int s = 0; s < a.rank(); ++s) {
    if (s == slot_up || s == slot_down) continue;
    keep.push_back(s);
    (a.is_primed(s) ? vp : vu).push_back(a.variance(s));
  }
  SpinorArray out(vu, vp);
  for (std::size_t ob = 0; ob < out.size(); ++ob) {
    std::vector<Polynomial> parts;
    for (int v = 0; v < 2; ++v) {
      std::size_t bits = 0;
      for (int s = 0; s < a.rank(); ++s) {
        int val;
        if (s == slot_up || s == slot_down) {
          val = v;
        } else {
          const int pos = static_cast<int>(std::find(keep.begin(), keep.end(), s) - keep.begin());
          val = out.bit(ob, pos);
        }
        bits = (bits << 1) | static_cast<std::size_t>(val);
      }
      parts.push_back(a[bits]);
    }
    out[ob] = Polynomial::sum(parts);
  }
  return out;
}

/// Outer product; result slots are (a unprimed, b unprimed, a primed, b primed).
inline SpinorArray outer(const SpinorArray& a, const SpinorArray& b) {
  auto vu = a.unprimed_variance();
  vu.insert(vu.end(), b.unprimed_variance().begin(), b.unprimed_variance().end());
  auto vp = a.primed_variance();
  vp.insert(vp.end(), b.primed_variance().begin(), b.primed_variance().end());
  SpinorArray out(vu, vp);
  const int am = a.unprimed_rank(), amp = a.primed_rank();
  const int bm = b.unprimed_rank(), bmp = b.primed_rank();
  for (std::size_t ab = 0; ab < a.size(); ++ab) {
    const std::size_t au = ab >> amp, ap = ab & ((std::size_t{1} << amp) - 1);
    for (std::size_t bb = 0; bb < b.size(); ++bb) {
      const std::size_t bu = bb >> bmp, bp = bb & ((std::size_t{1} << bmp) - 1);
      std::size_t bits = (au << bm) | bu;
      bits = (bits << (amp + bmp)) | (ap << bmp) | bp;
      out[bits] = a[ab] * b[bb];
    }
  }
  (void)am;
  return out;
}

/// Complex conjugate: unprimed and primed groups swap, coefficients and jets conjugate.
inline SpinorArray conjugate(const SpinorArray& a) {
  SpinorArray out(a.primed_variance(), a.unprimed_variance());
  const int m = a.unprimed_rank(), mp = a.primed_rank();
  for (std::size_t bits = 0; bits < a.size(); ++bits) {
    const std::size_t u = bits >> mp, p = bits & ((std::size_t{1} << mp) - 1);
    out[(p << m) | u] = a[bits].conj();
  }
  return out;
}

/// Reorder slots within the array: new slot s takes old slot perm[s]; groups must be preserved.
inline SpinorArray permute_slots(const SpinorArray& a, const std::vector<int>& perm) {
  if (static_cast<int>(perm.size()) != a.rank()) throw ContractViolation("permute_slots: wrong length");
  std::vector<Variance> vu, vp;
  for (int s = 0; s < a.rank(); ++s) {
    if ((s < a.unprimed_rank()) != (perm[s] < a.unprimed_rank()))
      throw ContractViolation("permute_slots: cannot move slots between primed and unprimed groups");
    (s < a.unprimed_rank() ? vu : vp).push_back(a.variance(perm[s]));
  }
  SpinorArray out(vu, vp);
  for (std::size_t ob = 0; ob < out.size(); ++ob) {
    std::size_t bits = 0;
    for (int s = 0; s < a.rank(); ++s) bits = a.with_bit(bits, perm[s], out.bit(ob, s));
    out[ob] = a[bits];
  }
  return out;
}

// ---- constant arrays ---------------------------------------------------------

/// eps_{AB} (both lower) or eps^{AB} (both upper), unprimed or primed.
inline SpinorArray epsilon_array(bool primed, Variance v) {
  SpinorArray out = primed ? SpinorArray::zeros(0, v, 2, v) : SpinorArray::zeros(2, v, 0, v);
  for (int a = 0; a < 2; ++a)
    for (int b = 0; b < 2; ++b) {
      const int e = v == Variance::lower ? eps_lower(a, b) : eps_upper(a, b);
      out[static_cast<std::size_t>(a * 2 + b)] = Polynomial(e);
    }
  return out;
}

/// delta^A_B as a mixed unprimed array (slot 0 upper, slot 1 lower).
inline SpinorArray delta_array() {
  SpinorArray out({Variance::upper, Variance::lower}, {});
  out[0] = Polynomial(1);
  out[3] = Polynomial(1);
  return out;
}

}  // namespace spinorsym
