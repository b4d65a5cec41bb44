// spinorsym: command-line driver for Killing bases, symmetry verification and
// dimension tables. Reports are JSON lines (--format json) or a plain table.
//
// Exit codes: 0 all pass, 1 verification failure, 2 usage error,
// 3 capacity error, 4 no dimension formula for the requested type.

#include <CLI11.hpp>

#include <cstdlib>
#include <iostream>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "spinorsym/spinorsym.hpp"

using namespace spinorsym;

namespace {

enum Exit { kPass = 0, kFail = 1, kUsage = 2, kCapacity = 3, kNoFormula = 4 };

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct RunConfig {
  std::string format = "table";
  std::string cache_dir;
  std::uint64_t seed = 0;
  unsigned threads = 1;
};

int parse_two_s(const std::string& spin) {
  int two_s = 0;
  try {
    const auto slash = spin.find('/');
    if (slash == std::string::npos) {
      two_s = 2 * std::stoi(spin);
    } else {
      if (spin.substr(slash + 1) != "2") throw UsageError("spin must be an integer or half-integer");
      two_s = std::stoi(spin.substr(0, slash));
    }
  } catch (const std::logic_error&) {
    throw UsageError("cannot parse spin '" + spin + "'");
  }
  if (two_s < 1) throw UsageError("spin must be positive");
  return two_s;
}

std::string spin_text(int two_s) { return two_s % 2 ? std::to_string(two_s) + "/2" : std::to_string(two_s / 2); }

std::optional<KillingCache> make_cache(const RunConfig& cfg) {
  std::string dir = cfg.cache_dir;
  if (dir.empty())
    if (const char* env = std::getenv("SPINORSYM_CACHE_DIR")) dir = env;
  if (dir.empty()) return std::nullopt;
  return KillingCache(dir);
}

KillingBasis killing_basis(const RunConfig& cfg, int k, int l, int bound) {
  if (auto cache = make_cache(cfg)) return cache->solve(k, l, bound);
  return solve_killing(k, l, bound);
}

int emit(const RunConfig& cfg, const std::string& command, const std::vector<ReportItem>& items) {
  if (cfg.format == "json")
    write_json_lines(std::cout, command, items);
  else
    write_table(std::cout, command, items);
  return summarize(command, items).pass() ? kPass : kFail;
}

// ---- killing ----------------------------------------------------------------------------

int cmd_killing(const RunConfig& cfg, const std::string& type, std::optional<int> bound_opt) {
  int k = -1, l = -1;
  const auto comma = type.find(',');
  try {
    if (comma == std::string::npos) throw UsageError("");
    k = std::stoi(type.substr(0, comma));
    l = std::stoi(type.substr(comma + 1));
  } catch (const std::logic_error&) {
    throw UsageError("--type must look like k,l");
  }
  if (k < 0 || l < 0) throw UsageError("--type entries must be non-negative");
  const int bound = bound_opt.value_or(k + l);
  if (bound < k + l) throw UsageError("--degree-bound must be at least k+l");

  const KillingBasis basis = killing_basis(cfg, k, l, bound);
  ReportItem it;
  it.family = "killing";
  it.params = {{"k", k}, {"l", l}, {"degree_bound", bound}};
  it.rank = static_cast<long long>(basis.dimension());
  bool has_formula = true;
  try {
    it.expected = killing_dimension(k, l);
    it.pass = *it.rank == *it.expected;
  } catch (const DomainError&) {
    has_formula = false;
    it.note = "no dimension formula for this type";
  }
  const int code = emit(cfg, "killing", {it});
  return has_formula ? code : kNoFormula;
}

// ---- verify -----------------------------------------------------------------------------

struct VerifyOptions {
  std::string spin = "1";
  std::string family = "conformal";
  std::optional<int> order;
  std::optional<int> max_order;
  std::string corrupt;
  int samples = 3;
  int degree = 1;
};

/// "cXY" -> override of chiral coefficient c_{X,Y}.
std::map<int, Rational> parse_corruption(const std::string& text, int two_s) {
  if (text.empty()) return {};
  if (text.size() != 3 || text[0] != 'c' || !std::isdigit(text[1]) || !std::isdigit(text[2]))
    throw UsageError("--corrupt expects cXY, the chiral coefficient c_{X,Y}");
  const int x = text[1] - '0', y = text[2] - '0';
  if (x != two_s) throw UsageError("--corrupt " + text + " does not match 2s = " + std::to_string(two_s));
  if (y > two_s) throw UsageError("--corrupt index out of range");
  const Rational original = chiral_coefficient(two_s, y);
  return {{y, original == 1 ? Rational(2) : Rational(1)}};
}

std::vector<int> sample_tower(std::mt19937_64& rng, int length) {
  std::uniform_int_distribution<int> pick(0, 14);
  std::vector<int> out;
  for (int i = 0; i < length; ++i) out.push_back(pick(rng));
  return out;
}

ReportItem item_from(const VerificationReport& rep, const std::string& family, json params) {
  ReportItem it = to_item(rep);
  it.family = family;
  it.params = std::move(params);
  return it;
}

std::vector<ReportItem> verify_massless(const RunConfig& cfg, const VerifyOptions& o, int two_s) {
  const Family fam = parse_family(o.family);
  const int natural = fam == Family::chiral ? two_s : (fam == Family::conformal || fam == Family::dual_conformal ? 1 : 0);
  const int order = o.order.value_or(natural);
  if (order < natural) throw UsageError("--order below the natural order " + std::to_string(natural) + " of this family");
  if (order > natural && fam != Family::conformal && fam != Family::dual_conformal && fam != Family::chiral)
    throw UsageError("only conformal and chiral families have Lie-derivative towers");
  const auto corruption = parse_corruption(o.corrupt, two_s);
  if (!corruption.empty() && fam != Family::chiral) throw UsageError("--corrupt applies to the chiral family");

  JetContext ctx(two_s, o.max_order.value_or(order + 1));
  const auto ckvs = conformal_killing_basis();
  std::mt19937_64 rng(cfg.seed);
  const std::string name = family_name(fam);
  std::vector<ReportItem> items;

  switch (fam) {
    case Family::scaling:
    case Family::dual_scaling:
      items.push_back(item_from(verify_symmetry(ctx, build_scaling(ctx, fam == Family::dual_scaling)), name,
                                {{"two_s", two_s}}));
      return items;
    case Family::elementary: {
      const auto sols = solve_massless_polynomial(two_s, o.degree);
      for (std::size_t i = 0; i < sols.size(); ++i)
        items.push_back(item_from(verify_symmetry(ctx, build_elementary(two_s, sols[i])), name,
                                  {{"two_s", two_s}, {"degree", o.degree}, {"solution", i}}));
      return items;
    }
    default:
      break;
  }

  // Towers are drawn up front so the report does not depend on the thread count.
  struct Job {
    int index;
    std::vector<int> tower;
  };
  std::vector<KillingSpinor> pis;
  if (fam == Family::chiral) pis = killing_basis(cfg, 0, 2 * two_s, 2 * two_s).elements;
  const std::size_t count = fam == Family::chiral ? pis.size() : ckvs.size();
  std::vector<Job> jobs;
  for (std::size_t i = 0; i < count; ++i) jobs.push_back({static_cast<int>(i), sample_tower(rng, order - natural)});

  items = parallel_map<ReportItem>(jobs.size(), cfg.threads, [&](std::size_t n) {
    const Job& job = jobs[n];
    Characteristic q = fam == Family::chiral
                           ? build_chiral(ctx, pis[static_cast<std::size_t>(job.index)], 0, corruption)
                           : build_conformal(ctx, ckvs[static_cast<std::size_t>(job.index)], fam == Family::dual_conformal);
    for (auto z = job.tower.rbegin(); z != job.tower.rend(); ++z) q = lie_derive(ctx, q, ckvs[static_cast<std::size_t>(*z)]);
    json params = {{"two_s", two_s}};
    if (fam == Family::chiral)
      params["killing"] = job.index;
    else
      params["ckv"] = ckvs[static_cast<std::size_t>(job.index)].name;
    if (!job.tower.empty()) {
      json tower = json::array();
      for (int z : job.tower) tower.push_back(ckvs[static_cast<std::size_t>(z)].name);
      params["tower"] = tower;
    }
    if (!o.corrupt.empty()) params["corrupt"] = o.corrupt;
    return item_from(verify_symmetry(ctx, q), name, params);
  });
  return items;
}

std::vector<ReportItem> verify_dirac_family(const RunConfig& cfg, const VerifyOptions& o, int two_s) {
  if (two_s != 1) throw UsageError("the Weyl system is spin 1/2");
  if (o.order.value_or(1) != 1) throw UsageError("the Weyl system table is checked at order 1");
  const auto corruption = parse_corruption(o.corrupt, 1);
  JetContext ctx(1, o.max_order.value_or(2), 2);
  struct Job {
    std::string kind;
    int index;
    unsigned variant;
  };
  std::vector<Job> jobs;
  for (unsigned v = 0; v < 8; ++v) jobs.push_back({"S", 0, v});
  for (int i = 0; i < 15; ++i)
    for (unsigned v = 0; v < 8; ++v) jobs.push_back({"Z", i, v});
  const auto pis = killing_basis(cfg, 0, 2, 2).elements;
  for (int i = 0; i < static_cast<int>(pis.size()); ++i)
    for (unsigned v = 0; v < 4; ++v) jobs.push_back({"W", i, v});
  const auto ckvs = conformal_killing_basis();
  return parallel_map<ReportItem>(jobs.size(), cfg.threads, [&](std::size_t n) {
    const Job& job = jobs[n];
    DiracCharacteristic d;
    json params = {{"generator", job.kind}};
    if (job.kind == "S") {
      d = build_dirac_scaling(ctx);
    } else if (job.kind == "Z") {
      d = build_dirac_conformal(ctx, ckvs[static_cast<std::size_t>(job.index)]);
      params["ckv"] = ckvs[static_cast<std::size_t>(job.index)].name;
    } else {
      d = build_dirac_chiral(ctx, pis[static_cast<std::size_t>(job.index)], corruption);
      params["killing"] = job.index;
    }
    d = apply_variant(d, job.variant);
    const DiracReport rep = verify_dirac(ctx, d);
    ReportItem it;
    it.family = "dirac";
    it.params = params;
    it.order = d.order;
    it.pass = rep.pass();
    it.residual_terms = rep.phi_half.residual_terms + rep.chi_half.residual_terms + rep.psi_terms;
    it.variant = variant_name(job.variant);
    return it;
  });
}

std::vector<ReportItem> verify_maxwell_family(const RunConfig& cfg, const VerifyOptions& o, int two_s) {
  if (two_s != 2) throw UsageError("Maxwell chiral symmetries are spin 1");
  if (o.samples < 1) throw UsageError("--samples must be positive");
  std::mt19937_64 rng(cfg.seed);
  std::vector<WeylCoefficients> draws;
  for (int h = 0; h <= 4; ++h)
    for (int n = 0; n < o.samples; ++n) draws.push_back(random_admissible(h, rng));
  return parallel_map<ReportItem>(draws.size(), cfg.threads, [&](std::size_t n) {
    const MaxwellChiralReport rep = check_maxwell_chiral(draws[n]);
    ReportItem it;
    it.family = "maxwell-chiral";
    it.params = {{"sample", n % static_cast<std::size_t>(o.samples)}};
    if (cfg.format == "json") it.params["coefficients"] = to_json(draws[n]);
    it.order = 2;
    it.pass = rep.pass();
    it.residual_terms = rep.residual_terms;
    it.h = rep.h;
    if (!rep.pass())
      it.note = std::string("failed:") + (rep.weyl_symmetric ? "" : " weyl") + (rep.determining ? "" : " determining") +
                (rep.spinor_form ? "" : " spinor-form") + (rep.chirality ? "" : " chirality") +
                (rep.closed_form ? "" : " closed-form") + (rep.killing ? "" : " killing");
    return it;
  });
}

int cmd_verify(const RunConfig& cfg, const VerifyOptions& o) {
  const int two_s = parse_two_s(o.spin);
  std::vector<ReportItem> items;
  if (o.family == "dirac")
    items = verify_dirac_family(cfg, o, two_s);
  else if (o.family == "maxwell")
    items = verify_maxwell_family(cfg, o, two_s);
  else
    items = verify_massless(cfg, o, two_s);
  return emit(cfg, "verify", items);
}

// ---- dimensions -------------------------------------------------------------------------

int cmd_dimensions(const RunConfig& cfg, const std::string& system, const std::string& spin, int max_r,
                   bool constructive) {
  if (max_r < 0) throw UsageError("--max-r must be non-negative");
  int two_s = 0;
  if (system == "massless")
    two_s = parse_two_s(spin);
  else if (system == "maxwell")
    two_s = 2;
  else if (system == "dirac")
    two_s = 1;
  else
    throw UsageError("--system must be massless, maxwell or dirac");

  std::vector<ReportItem> items;
  for (int r = 0; r <= max_r; ++r) {
    ReportItem it;
    it.family = "dimension";
    it.params = {{"system", system}, {"spin", spin_text(two_s)}};
    it.order = r;
    it.pass = true;
    if (system == "dirac") {
      it.expected = dirac_dimension(r);
      if (constructive && r <= 1) {
        const auto rep = dirac_constructive_rank(r);
        it.rank = static_cast<long long>(rep.rank);
        it.pass = rep.pass();
      }
    } else {
      it.expected = system == "maxwell" ? maxwell_dimension(r) : dimension_d_r(two_s, r);
      if (constructive && r <= 2) {
        RankOptions opts;
        opts.threads = cfg.threads;
        const auto rep = constructive_rank(two_s, r, opts);
        it.rank = static_cast<long long>(rep.rank);
        it.pass = rep.pass();
      }
    }
    if (constructive && !it.rank) it.note = "constructive rank skipped beyond desk scale";
    items.push_back(std::move(it));
  }
  return emit(cfg, "dimensions", items);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Generalized symmetries of massless free fields"};
  app.require_subcommand(1);
  app.fallthrough();
  RunConfig cfg;
  app.add_option("--format", cfg.format, "Report format")->check(CLI::IsMember({"json", "table"}));
  app.add_option("--cache-dir", cfg.cache_dir, "Killing basis cache directory (default: $SPINORSYM_CACHE_DIR)");
  app.add_option("--seed", cfg.seed, "Seed for sampled checks");
  app.add_option("--threads", cfg.threads, "Worker threads")->check(CLI::PositiveNumber);

  auto* killing = app.add_subcommand("killing", "Solve for a Killing spinor basis and compare dimensions");
  std::string type;
  std::optional<int> bound;
  killing->add_option("--type", type, "Type k,l")->required();
  killing->add_option("--degree-bound", bound, "Polynomial degree bound (default k+l)");

  auto* verify = app.add_subcommand("verify", "Verify a family of symmetries");
  VerifyOptions vo;
  verify->add_option("--spin", vo.spin, "Spin s, e.g. 1/2, 1, 3/2");
  verify
      ->add_option("--family", vo.family,
                   "scaling, dual-scaling, elementary, conformal, dual-conformal, chiral, dirac or maxwell")
      ->check(CLI::IsMember({"scaling", "dual-scaling", "elementary", "conformal", "dual-conformal", "chiral", "dirac",
                             "maxwell", "S", "S_tilde", "Z", "Zi", "W"}));
  verify->add_option("--order", vo.order, "Symmetry order; above the natural order adds sampled Lie derivatives");
  verify->add_option("--max-order", vo.max_order, "Highest jet order available (default order+1)");
  verify->add_option("--corrupt", vo.corrupt, "Replace chiral coefficient cXY (negative control)");
  verify->add_option("--samples", vo.samples, "Random coefficient sets per h (maxwell)");
  verify->add_option("--degree", vo.degree, "Solution degree bound (elementary)");

  auto* dims = app.add_subcommand("dimensions", "Dimension table, optionally with constructive ranks");
  std::string system = "massless", dim_spin = "1";
  int max_r = 3;
  bool constructive = false;
  dims->add_option("--system", system, "massless, maxwell or dirac");
  dims->add_option("--spin", dim_spin, "Spin s (massless system)");
  dims->add_option("--max-r", max_r, "Largest order");
  dims->add_flag("--constructive", constructive, "Also compute exact ranks where feasible");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp&) {
    std::cout << app.help();
    return kPass;
  } catch (const CLI::CallForAllHelp&) {
    std::cout << app.help("", CLI::AppFormatMode::All);
    return kPass;
  } catch (const CLI::ParseError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kUsage;
  }

  try {
    if (cfg.threads == 0) cfg.threads = 1;
    if (killing->parsed()) return cmd_killing(cfg, type, bound);
    if (verify->parsed()) return cmd_verify(cfg, vo);
    return cmd_dimensions(cfg, system, dim_spin, max_r, constructive);
  } catch (const UsageError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kUsage;
  } catch (const CapacityError& e) {
    std::cerr << "error: " << e.what() << "\nhint: raise --max-order (or lower --order) so the jet space covers the check\n";
    return kCapacity;
  } catch (const ContractViolation& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kUsage;
  } catch (const DomainError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kFail;
  }
}
