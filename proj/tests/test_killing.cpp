#include <catch_amalgamated.hpp>

#include <filesystem>
#include <fstream>

#include "spinorsym/cache.hpp"
#include "spinorsym/killing.hpp"

using namespace spinorsym;

TEST_CASE("dimension formula") {
  CHECK(killing_dimension(0, 0) == 1);
  CHECK(killing_dimension(1, 1) == 15);
  CHECK(killing_dimension(2, 2) == 84);
  CHECK(killing_dimension(0, 1) == 4);
  CHECK(killing_dimension(0, 2) == 10);
  CHECK(killing_dimension(0, 3) == 20);
  CHECK(killing_dimension(0, 4) == 35);
  CHECK(killing_dimension(1, 3) == 70);
  CHECK_THROWS_AS(killing_dimension(3, 0), DomainError);
  CHECK_THROWS_AS(killing_dimension(-1, 2), DomainError);
}

TEST_CASE("solver matches the dimension formula") {
  for (auto [k, l] : {std::pair{0, 0}, {0, 1}, {0, 2}, {1, 1}, {0, 3}}) {
    INFO("type " << k << "," << l);
    const KillingBasis b = solve_killing(k, l);
    CHECK(static_cast<long>(b.dimension()) == killing_dimension(k, l));
    CHECK(complex_rank(b.elements) == b.dimension());
    for (const auto& s : b.elements) CHECK(satisfies_killing(s));
  }
}

TEST_CASE("raising the degree bound adds nothing") {
  CHECK(solve_killing(1, 1, 4).dimension() == 15);
  CHECK(solve_killing(0, 2, 5).dimension() == 10);
  CHECK(solve_killing(1, 1, 1).dimension() < 15);
}

TEST_CASE("solver argument checks") {
  CHECK_THROWS_AS(solve_killing(-1, 1, 2), ContractViolation);
  CHECK_THROWS_AS(solve_killing(1, 1, -1), ContractViolation);
}

TEST_CASE("conformal Killing vectors") {
  const auto ckv = conformal_killing_basis();
  REQUIRE(ckv.size() == 15);
  for (const auto& v : ckv) {
    INFO(v.name);
    const Polynomial k = conformal_factor(v);
    CHECK(divergence(v) == k.scaled(FieldElement(4)));
    CHECK(satisfies_killing(ckv_killing_spinor(v)));
  }
  CHECK(conformal_factor(ckv[0]).is_zero());
  CHECK(conformal_factor(ckv[10]) == Polynomial(1));
  CHECK(divergence(ckv[10]) == Polynomial(4));

  ConformalKillingVector bad{"bad", {}};
  bad.xi[0] = Polynomial::coordinate(1);
  CHECK_THROWS_AS(conformal_factor(bad), ContractViolation);
}

TEST_CASE("CKV spinors span the complex (1,1) space") {
  std::vector<KillingSpinor> fam, doubled;
  for (const auto& v : conformal_killing_basis()) {
    fam.push_back(ckv_killing_spinor(v));
    doubled.push_back(fam.back());
    doubled.push_back(fam.back().scaled(FieldElement::i()));
  }
  CHECK(complex_rank(fam) == 15);
  CHECK(real_rank(fam) == 15);
  CHECK(real_rank(doubled) == 30);
}

TEST_CASE("symmetrized products of (1,1) Killing spinors") {
  const auto one = factorization_span_check(1);
  CHECK(one.pass());
  CHECK(one.rank == 15);
  const auto two = factorization_span_check(2);
  CHECK(two.pass());
  CHECK(two.rank == 84);
  const auto mixed = factorization_span_check(1, 2);
  CHECK(mixed.pass());
  CHECK(mixed.rank == 70);
}

TEST_CASE("second-derivative identities of type (0,n)") {
  for (int l : {2, 4}) {
    for (const auto& pi : solve_killing(0, l).elements) {
      CHECK(wave_identity_holds(pi));
      CHECK(derivative_exchange_holds(pi));
    }
  }
  KillingSpinor not_killing = KillingSpinor::zero(0, 2);
  not_killing(0, 0) = Polynomial::coordinate(0) * Polynomial::coordinate(1);
  CHECK_FALSE(satisfies_killing(not_killing));
}

TEST_CASE("cache round trip") {
  const auto dir = std::filesystem::temp_directory_path() / "spinorsym_test_cache";
  std::filesystem::remove_all(dir);
  KillingCache cache(dir);
  CHECK_FALSE(cache.load(0, 2, 2).has_value());

  bool hit = true;
  const KillingBasis first = cache.solve(0, 2, 2, &hit);
  CHECK_FALSE(hit);
  CHECK(std::filesystem::exists(cache.path_for(0, 2, 2)));
  const KillingBasis second = cache.solve(0, 2, 2, &hit);
  CHECK(hit);
  REQUIRE(second.dimension() == first.dimension());
  for (std::size_t n = 0; n < first.dimension(); ++n) CHECK(second.elements[n].comps == first.elements[n].comps);

  // A document written under another convention hash is ignored.
  {
    std::ifstream in(cache.path_for(0, 2, 2));
    auto doc = nlohmann::ordered_json::parse(in);
    doc["convention_hash"] = "0000000000000000";
    std::ofstream(cache.path_for(0, 2, 2)) << doc.dump();
  }
  CHECK_FALSE(cache.load(0, 2, 2).has_value());
  std::ofstream(cache.path_for(0, 2, 2)) << "{not json";
  CHECK_FALSE(cache.load(0, 2, 2).has_value());
  std::filesystem::remove_all(dir);
}
