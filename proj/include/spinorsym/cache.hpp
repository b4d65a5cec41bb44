#pragma once

// On-disk cache of Killing bases keyed by (k, l, degree bound, convention hash).
// Writes go to a temporary file that is renamed into place, so readers never see
// a partial document.

#include <atomic>
#include <filesystem>
#include <fstream>
#include <optional>
#include <sstream>
#include <string>
#include <thread>

#include "spinorsym/conventions.hpp"
#include "spinorsym/killing.hpp"
#include "spinorsym/report.hpp"

namespace spinorsym {

inline constexpr int kCacheVersion = 1;

class KillingCache {
 public:
  explicit KillingCache(std::filesystem::path dir) : dir_(std::move(dir)) {}

  const std::filesystem::path& dir() const { return dir_; }

  std::filesystem::path path_for(int k, int l, int degree_bound) const {
    std::ostringstream name;
    name << "killing_" << k << '_' << l << "_d" << degree_bound << '_' << conventions::convention_hash() << ".json";
    return dir_ / name.str();
  }

  /// Nullopt when absent, unreadable, or written under other conventions.
  std::optional<KillingBasis> load(int k, int l, int degree_bound) const {
    std::ifstream in(path_for(k, l, degree_bound));
    if (!in) return std::nullopt;
    const json doc = json::parse(in, nullptr, false);
    if (doc.is_discarded() || !doc.is_object()) return std::nullopt;
    try {
      if (doc.at("version").get<int>() != kCacheVersion) return std::nullopt;
      if (doc.at("convention_hash").get<std::string>() != conventions::convention_hash()) return std::nullopt;
      if (doc.at("type") != json::array({k, l}) || doc.at("degree_bound").get<int>() != degree_bound)
        return std::nullopt;
      KillingBasis basis;
      basis.k = k;
      basis.l = l;
      basis.degree_bound = degree_bound;
      for (const auto& el : doc.at("basis")) {
        KillingSpinor s = KillingSpinor::zero(k, l);
        if (el.size() != static_cast<std::size_t>((k + 1) * (l + 1))) return std::nullopt;
        std::size_t n = 0;
        for (int j = 0; j <= k; ++j)
          for (int m = 0; m <= l; ++m) s(j, m) = coordinate_polynomial_from_json(el[n++]);
        basis.elements.push_back(std::move(s));
      }
      return basis;
    } catch (const std::exception&) {
      return std::nullopt;
    }
  }

  void store(const KillingBasis& basis) const {
    json doc;
    doc["version"] = kCacheVersion;
    doc["type"] = json::array({basis.k, basis.l});
    doc["degree_bound"] = basis.degree_bound;
    doc["convention_hash"] = conventions::convention_hash();
    json elements = json::array();
    for (const auto& s : basis.elements) {
      json comps = json::array();
      for (const auto& row : s.comps)
        for (const auto& p : row) comps.push_back(coordinate_polynomial_to_json(p));
      elements.push_back(std::move(comps));
    }
    doc["basis"] = std::move(elements);

    std::filesystem::create_directories(dir_);
    const auto target = path_for(basis.k, basis.l, basis.degree_bound);
    static std::atomic<unsigned> counter{0};
    std::ostringstream tmp_name;
    tmp_name << target.filename().string() << ".tmp." << std::hash<std::thread::id>{}(std::this_thread::get_id())
             << '.' << counter.fetch_add(1);
    const auto tmp = dir_ / tmp_name.str();
    {
      std::ofstream out(tmp, std::ios::trunc);
      if (!out) throw std::runtime_error("cannot write cache file " + tmp.string());
      out << doc.dump() << '\n';
      if (!out) throw std::runtime_error("short write to cache file " + tmp.string());
    }
    std::filesystem::rename(tmp, target);
  }

  /// Load or solve, then store. `hit` reports whether the cache answered.
  KillingBasis solve(int k, int l, int degree_bound, bool* hit = nullptr) const {
    if (auto b = load(k, l, degree_bound)) {
      if (hit) *hit = true;
      return *b;
    }
    if (hit) *hit = false;
    KillingBasis b = solve_killing(k, l, degree_bound);
    store(b);
    return b;
  }

 private:
  std::filesystem::path dir_;
};

}  // namespace spinorsym
