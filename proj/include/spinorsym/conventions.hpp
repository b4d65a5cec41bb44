#pragma once

// Frozen sign and normalization conventions shared by every module.
//
//   eps_{01} = eps^{01} = +1
//   sigma^i_{AA'} = (1/sqrt2) (identity, Pauli x, Pauli y, Pauli z), rows A, columns A'
//   eta = diag(1, -1, -1, -1), Levi-Civita eps_{0123} = +1
//   *F_{ij} = kHodgeSign * (1/2) eps_{ijkl} F^{kl}
//
// kHodgeSign is pinned by the anti-self-dual identity
// (F - i *F)/2  <->  eps_{KL} conj(phi)_{K'L'}; the test suite checks both
// signs and asserts that only this one satisfies it. kLeadingSymbolSign is the
// global factor relating constructed characteristics to the alternating-sign
// leading terms of the conformal and chiral towers, fixed at the lowest order.

#include <array>
#include <cstdint>
#include <iomanip>
#include <sstream>
#include <string>

#include "spinorsym/field.hpp"

namespace spinorsym::conventions {

inline constexpr int kHodgeSign = 1;
inline constexpr int kLeadingSymbolSign = 1;

inline int eta(int i) { return i == 0 ? 1 : -1; }

/// sigma^i_{AA'} (spacetime index up, spinor indices down).
inline FieldElement sigma(int i, int a, int ap) {
  const Rational h(1, 2);
  // Entries of sqrt2 * sigma^i as Gaussian integers (re, im).
  static constexpr std::array<std::array<std::array<int, 2>, 4>, 4> table{{
      {{{1, 0}, {0, 0}, {0, 0}, {1, 0}}},    // identity
      {{{0, 0}, {1, 0}, {1, 0}, {0, 0}}},    // Pauli x
      {{{0, 0}, {0, -1}, {0, 1}, {0, 0}}},   // Pauli y
      {{{1, 0}, {0, 0}, {0, 0}, {-1, 0}}},   // Pauli z
  }};
  const auto& e = table[i][a * 2 + ap];
  // (re + i im) / sqrt2 = (re + i im) * sqrt2 / 2
  return FieldElement(Rational(0), Rational(0), Rational(e[0]) * h, Rational(e[1]) * h);
}

/// sigma_i^{AA'} = eta_{ij} eps^{AB} eps^{A'B'} sigma^j_{BB'}.
inline FieldElement sigma_up(int i, int a, int ap) {
  // eps^{ab} nonzero only for b = 1 - a, with value +1 if a == 0 else -1.
  const int sa = a == 0 ? 1 : -1;
  const int sp = ap == 0 ? 1 : -1;
  return sigma(i, 1 - a, 1 - ap).scaled(Rational(eta(i) * sa * sp));
}

/// sigma^i{}_C{}^{C'} = eps^{C'D'} sigma^i_{CD'}: coefficient of d/dx^i in the
/// mixed spinor derivative with lower unprimed and upper primed index.
inline FieldElement tau(int i, int c, int cp) {
  return cp == 0 ? sigma(i, c, 1) : -sigma(i, c, 0);
}

/// Levi-Civita symbol with eps_{0123} = +1 (all indices down).
inline int levi_civita(int i, int j, int k, int l) {
  const int idx[4] = {i, j, k, l};
  for (int a = 0; a < 4; ++a)
    for (int b = a + 1; b < 4; ++b)
      if (idx[a] == idx[b]) return 0;
  int inversions = 0;
  for (int a = 0; a < 4; ++a)
    for (int b = a + 1; b < 4; ++b)
      if (idx[a] > idx[b]) ++inversions;
  return inversions % 2 == 0 ? 1 : -1;
}

/// Canonical text of every convention constant; hashed to key cached results.
inline std::string convention_text() {
  std::ostringstream os;
  os << "eps01=+1;eps^01=+1;lower=lambda^A eps_AB;raise=eps^AB lambda_B;";
  for (int i = 0; i < 4; ++i)
    for (int a = 0; a < 2; ++a)
      for (int ap = 0; ap < 2; ++ap) os << "s" << i << a << ap << "=" << sigma(i, a, ap) << ";";
  os << "eta=+---;levi0123=+1;hodge=" << kHodgeSign << ";lead=" << kLeadingSymbolSign;
  return os.str();
}

/// 64-bit FNV-1a.
inline std::uint64_t fnv1a(const std::string& s) {
  std::uint64_t h = 14695981039346656037ull;
  for (unsigned char ch : s) {
    h ^= ch;
    h *= 1099511628211ull;
  }
  return h;
}

inline std::string convention_hash() {
  std::ostringstream os;
  os << std::hex << std::setw(16) << std::setfill('0') << fnv1a(convention_text());
  return os.str();
}

}  // namespace spinorsym::conventions
