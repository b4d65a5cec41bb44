// Acceptance run: one PASS/FAIL line per criterion, nonzero exit on any failure.

#include <chrono>
#include <functional>
#include <iostream>
#include <random>
#include <sstream>
#include <string>

#include "spinorsym/spinorsym.hpp"

using namespace spinorsym;

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) { return std::chrono::duration<double>(Clock::now() - t0).count(); }

struct Criterion {
  int number;
  std::string title;
  std::function<bool(std::ostream&)> run;
};

bool anti_self_dual_image_holds() {
  JetContext ctx(2, 0);
  MaxwellJets jets(ctx);
  const Tensor f = jets.tensor();
  const Tensor minus = (f - hodge_dual(f).scaled(FieldElement::i())).scaled(FieldElement(make_rational(1, 2)));
  const SpinorArray s = tensor_to_spinor(minus);
  for (int a = 0; a < 2; ++a)
    for (int b = 0; b < 2; ++b)
      for (int ap = 0; ap < 2; ++ap)
        for (int bp = 0; bp < 2; ++bp)
          if (s.at({a, b}, {ap, bp}) != ctx.jet_poly(0, ap + bp, 0, true).scaled(FieldElement(eps_lower(a, b))))
            return false;
  return true;
}

bool killing_dimensions(std::ostream& log) {
  bool ok = true;
  for (auto [k, l, want] : {std::tuple{0, 0, 1L}, {1, 1, 15L}, {2, 2, 84L}, {0, 2, 10L}, {0, 4, 35L}, {0, 6, 84L},
                            {1, 3, 70L}}) {
    const auto t0 = Clock::now();
    const KillingBasis b = solve_killing(k, l);
    const double secs = seconds_since(t0);
    const bool good = static_cast<long>(b.dimension()) == want && killing_dimension(k, l) == want && secs < 60.0;
    log << "  (" << k << "," << l << ") dim " << b.dimension() << " want " << want << " in " << secs << " s\n";
    ok = ok && good;
  }
  return ok;
}

bool conformal_family(std::ostream& log) {
  const auto ckvs = conformal_killing_basis();
  bool ok = ckvs.size() == 15;
  for (int two_s = 1; two_s <= 4; ++two_s) {
    JetContext ctx(two_s, 2);
    std::size_t passed = 0;
    for (const auto& v : ckvs)
      for (bool dual : {false, true}) passed += verify_symmetry(ctx, build_conformal(ctx, v, dual)).pass ? 1 : 0;
    log << "  two_s=" << two_s << ": " << passed << "/30\n";
    ok = ok && passed == 30;
  }
  return ok;
}

bool chiral_family(std::ostream& log) {
  bool ok = true;
  const std::size_t want[] = {0, 10, 35, 84};
  for (int two_s = 1; two_s <= 3; ++two_s) {
    JetContext ctx(two_s, two_s + 1);
    const auto pis = solve_killing(0, 2 * two_s).elements;
    std::size_t passed = 0;
    for (const auto& pi : pis) {
      const bool a = verify_symmetry(ctx, build_chiral(ctx, pi)).pass;
      const bool b = verify_symmetry(ctx, build_chiral(ctx, pi.scaled(FieldElement::i()))).pass;
      passed += a && b ? 1 : 0;
    }
    log << "  two_s=" << two_s << ": " << passed << "/" << pis.size() << " (basis size want " << want[two_s] << ")\n";
    ok = ok && pis.size() == want[two_s] && passed == pis.size();
  }
  return ok;
}

bool pi_recursion(std::ostream& log) {
  bool ok = true;
  for (int two_s : {1, 2}) {
    JetContext ctx(two_s, two_s + 1);
    std::size_t passed = 0, total = 0;
    for (const auto& pi : solve_killing(0, 2 * two_s).elements) {
      ++total;
      const auto rep = pi_recursion_check(ctx, pi);
      if (rep.pass()) ++passed;
      else log << "  " << rep.violations.front() << "\n";
    }
    log << "  two_s=" << two_s << ": " << passed << "/" << total << "\n";
    ok = ok && passed == total && total > 0;
  }
  return ok;
}

bool lie_towers(std::ostream& log) {
  const auto ckvs = conformal_killing_basis();
  std::mt19937_64 rng(2024);
  std::uniform_int_distribution<std::size_t> pick(0, ckvs.size() - 1);
  bool ok = true;
  for (int two_s : {1, 2}) {
    JetContext ctx(two_s, two_s + 2);
    const auto pis = solve_killing(0, 2 * two_s).elements;
    std::uniform_int_distribution<std::size_t> pick_pi(0, pis.size() - 1);
    std::size_t passed = 0;
    const std::size_t samples = 12;
    for (std::size_t n = 0; n < samples; ++n) {
      const auto& zeta = ckvs[pick(rng)];
      const Characteristic base = n % 2 ? build_chiral(ctx, pis[pick_pi(rng)]) : build_conformal(ctx, ckvs[pick(rng)]);
      const Characteristic d = lie_derive(ctx, base, zeta);
      if (d.order == base.order + 1 && verify_symmetry(ctx, d).pass) ++passed;
    }
    log << "  two_s=" << two_s << ": " << passed << "/" << samples << "\n";
    ok = ok && passed == samples;
  }
  return ok;
}

bool leading_symbols(std::ostream& log) {
  const auto ckvs = conformal_killing_basis();
  bool ok = true;
  for (int two_s : {1, 2}) {
    JetContext ctx(two_s, two_s + 1);
    std::size_t checked = 0, passed = 0;
    for (std::size_t i = 0; i < ckvs.size(); ++i) {
      const auto& zeta = ckvs[(i + 5) % ckvs.size()];
      const Characteristic z = build_conformal(ctx, ckvs[i]);
      ++checked;
      passed += leading_symbol(z).q == conformal_leading_closed_form(ctx, ckvs[i], {}).q;
      const Characteristic lz = lie_derive(ctx, z, zeta);
      ++checked;
      passed += leading_symbol(lz).q == conformal_leading_closed_form(ctx, ckvs[i], {zeta}).q;
    }
    const auto pis = solve_killing(0, 2 * two_s).elements;
    for (std::size_t i = 0; i < pis.size(); ++i) {
      const auto& zeta = ckvs[i % ckvs.size()];
      const Characteristic w = build_chiral(ctx, pis[i]);
      ++checked;
      passed += leading_symbol(w).q == chiral_leading_closed_form(ctx, pis[i], {}).q;
      ++checked;
      passed += leading_symbol(lie_derive(ctx, w, zeta)).q == chiral_leading_closed_form(ctx, pis[i], {zeta}).q;
    }
    log << "  two_s=" << two_s << ": " << passed << "/" << checked << "\n";
    ok = ok && passed == checked;
  }
  return ok;
}

bool rank_counts(std::ostream& log) {
  bool ok = dimension_d_r(1, 0) == 2 && dimension_d_r(1, 1) == 52 && dimension_d_r(2, 0) == 2 &&
            dimension_d_r(2, 1) == 32 && dimension_d_r(2, 2) == 270;
  for (auto [two_s, r, want] : {std::tuple{1, 0, 2LL}, {1, 1, 52LL}, {2, 0, 2LL}, {2, 1, 32LL}, {2, 2, 270LL}}) {
    const auto t0 = Clock::now();
    const RankReport rep = constructive_rank(two_s, r);
    log << "  two_s=" << two_s << " r=" << r << ": rank " << rep.rank << " want " << want << " from "
        << rep.generators << " generators in " << seconds_since(t0) << " s\n";
    ok = ok && rep.pass() && static_cast<long long>(rep.rank) == want;
  }
  return ok;
}

bool other_counts(std::ostream& log) {
  bool ok = true;
  for (int r = 2; r <= 6; ++r) ok = ok && maxwell_dimension(r) == dimension_d_r(2, r);
  for (int r = 1; r <= 6; ++r) ok = ok && dirac_dimension(r) == 4 * dimension_d_r(1, r);
  const auto rep = dirac_constructive_rank(1);
  log << "  Weyl system r=1: rank " << rep.rank << " want " << rep.expected << "\n";
  return ok && rep.pass() && rep.rank == 208;
}

bool maxwell_chiral(std::ostream& log) {
  std::mt19937_64 rng(77);
  bool ok = true;
  for (int h = 0; h <= 4; ++h) {
    std::size_t passed = 0;
    for (int n = 0; n < 3; ++n) passed += check_maxwell_chiral(random_admissible(h, rng)).pass() ? 1 : 0;
    log << "  h=" << h << ": " << passed << "/3\n";
    ok = ok && passed == 3;
  }
  const PiSpanReport span = pi_span_check();
  log << "  projections: complex rank " << span.complex_rank << ", real rank " << span.real_rank << " from "
      << span.generators << " generators\n";
  return ok && span.pass();
}

bool identities(std::ostream& log) {
  bool ok = anti_self_dual_image_holds();
  log << "  anti-self-dual image: " << (ok ? "ok" : "mismatch") << "\n";
  const auto table = clifford_table();
  bool clifford = true;
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) clifford = clifford && table[i][j] == FieldElement(i == j ? 2 * conventions::eta(i) : 0);
  log << "  Clifford: " << (clifford ? "ok" : "mismatch") << "\n";
  ok = ok && clifford;
  for (int two_s : {1, 2})
    for (int p : {1, 2}) {
      const auto off = commutation_check(two_s, p), on = onshell_commutation_check(two_s, p);
      log << "  commutation two_s=" << two_s << " p=" << p << ": " << (off.pass() && on.pass() ? "ok" : "mismatch")
          << "\n";
      ok = ok && off.pass() && on.pass();
    }
  return ok;
}

bool negative_controls(std::ostream& log) {
  // Corrupting c_{2,1} must leave residuals for some basis element.
  JetContext ctx(2, 3);
  std::size_t broken = 0;
  for (const auto& pi : solve_killing(0, 4).elements)
    broken += verify_symmetry(ctx, build_chiral(ctx, pi, 0, {{1, make_rational(1, 1)}})).pass ? 0 : 1;
  log << "  corrupted c21: " << broken << " of 35 fail\n";
  bool ok = broken > 0;

  JetContext weyl(1, 2, 2);
  std::size_t weyl_broken = 0;
  for (const auto& pi : solve_killing(0, 2).elements)
    weyl_broken += verify_dirac(weyl, build_dirac_chiral(weyl, pi, {{1, make_rational(1, 1)}})).pass() ? 0 : 1;
  log << "  corrupted Weyl chiral coefficient: " << weyl_broken << " of 10 fail\n";
  ok = ok && weyl_broken > 0;

  std::mt19937_64 rng(5);
  std::uniform_int_distribution<int> d(1, 9);
  const Components bogus{(Polynomial::coordinate(0) * Polynomial::coordinate(2)).scaled(FieldElement(d(rng))),
                         Polynomial::coordinate(1).scaled(FieldElement(d(rng)))};
  bool rejected = false;
  try {
    build_elementary(1, bogus);
  } catch (const DomainError&) {
    rejected = true;
  }
  log << "  non-solution elementary input: " << (rejected ? "rejected" : "accepted") << "\n";
  return ok && rejected;
}

}  // namespace

int main() {
  const std::vector<Criterion> criteria{
      {1, "Killing spinor dimensions", killing_dimensions},
      {2, "conformal symmetries Z, Zi for all CKVs up to spin 2", conformal_family},
      {3, "chiral symmetries W on full Killing bases", chiral_family},
      {4, "Pi recursion", pi_recursion},
      {5, "Lie derivative towers raise the order", lie_towers},
      {6, "leading symbols", leading_symbols},
      {7, "d_r values and constructive ranks", rank_counts},
      {8, "Maxwell and Weyl system counts", other_counts},
      {9, "tensorial chiral Maxwell symmetries", maxwell_chiral},
      {10, "duality, Clifford and commutation identities", identities},
      {11, "negative controls", negative_controls},
  };
  int failures = 0;
  for (const auto& c : criteria) {
    std::ostringstream log;
    const auto t0 = Clock::now();
    bool pass = false;
    try {
      pass = c.run(log);
    } catch (const std::exception& e) {
      log << "  exception: " << e.what() << "\n";
    }
    std::cout << (pass ? "[PASS]" : "[FAIL]") << " criterion " << c.number << ": " << c.title << " ("
              << seconds_since(t0) << " s)\n"
              << log.str() << std::flush;
    failures += pass ? 0 : 1;
  }
  std::cout << (failures == 0 ? "all criteria pass" : std::to_string(failures) + " criteria fail") << "\n";
  return failures == 0 ? 0 : 1;
}
