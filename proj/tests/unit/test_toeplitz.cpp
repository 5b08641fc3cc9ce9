#include <doctest.h>

#include <functional>
#include <random>

#include "oracles.hpp"
#include "supreg/toeplitz.hpp"

using namespace supreg;

namespace {

ToeplitzLT mat(u64 p, std::vector<std::int64_t> v) { return ToeplitzLT::from_integers(PrimeField(p), v); }

oracle::Column column_of(const ToeplitzLT& m) { return m.values(); }

ToeplitzLT random_matrix(std::mt19937_64& rng, int gamma, u64 p) {
  std::vector<std::int64_t> v(static_cast<std::size_t>(gamma));
  v[0] = static_cast<std::int64_t>(1 + rng() % (p - 1));
  for (int i = 1; i < gamma; ++i) v[i] = static_cast<std::int64_t>(rng() % p);
  return mat(p, v);
}

}  // namespace

TEST_CASE("entries") {
  const auto m = mat(101, {1, 2, 3, 4, 5});
  CHECK(m.entry(4, 2).value() == 3);
  CHECK(m.entry(2, 4).value() == 0);
  CHECK(m.entry(5, 1).value() == 5);
  CHECK_THROWS_AS(m.entry(6, 1), Error);
  CHECK_THROWS_AS(m.entry(0, 1), Error);
}

TEST_CASE("non-triviality examples") {
  CHECK(is_nontrivial(MinorIndex({3, 4}, {1, 3}), 4));
  CHECK_FALSE(is_nontrivial(MinorIndex({1, 2}, {2, 3}), 4));
  CHECK(is_nontrivial(MinorIndex({1, 2, 3, 4}, {1, 2, 3, 4}), 4));
  CHECK_THROWS_AS(MinorIndex({2, 1}, {1, 2}), Error);
  CHECK_THROWS_AS(MinorIndex({1, 2}, {1}), Error);
}

TEST_CASE("property: fast non-triviality test equals the matching oracle") {
  for (int gamma = 1; gamma <= 8; ++gamma) {
    for (const auto& [r, c] : oracle::all_index_pairs(gamma)) {
      CHECK(is_nontrivial(MinorIndex(r, c), gamma) == oracle::matching_nontrivial(r, c));
    }
  }
}

TEST_CASE("non-trivial minor enumeration") {
  const auto two = nontrivial_minors(2);
  REQUIRE(two.size() == 4);
  CHECK(two[0] == MinorIndex({1}, {1}));
  CHECK(two[1] == MinorIndex({2}, {1}));
  CHECK(two[2] == MinorIndex({2}, {2}));
  CHECK(two[3] == MinorIndex({1, 2}, {1, 2}));
  CHECK(nontrivial_minors(3).size() == 13);
  for (int gamma = 1; gamma <= 7; ++gamma) {
    const auto all = nontrivial_minors(gamma);
    std::size_t expected = 0;
    for (const auto& [r, c] : oracle::all_index_pairs(gamma)) expected += oracle::matching_nontrivial(r, c);
    CHECK(all.size() == expected);
    for (std::size_t i = 1; i < all.size(); ++i) CHECK(all[i - 1] < all[i]);
    for (const auto& idx : all) CHECK(is_nontrivial(idx, gamma));
  }
}

TEST_CASE("minors linear in the last entry") {
  const auto three = minors_involving_last(3);
  REQUIRE(three.size() == 2);
  CHECK(three[0] == MinorIndex({3}, {1}));
  CHECK(three[1] == MinorIndex({2, 3}, {1, 2}));
  CHECK(minors_involving_last(4).size() == 5);
  CHECK(minors_involving_last(1).size() == 1);
  const std::size_t catalan[] = {1, 1, 2, 5, 14, 42, 132, 429, 1430, 4862};
  for (int gamma = 1; gamma <= 10; ++gamma) CHECK(minors_involving_last(gamma).size() == catalan[gamma - 1]);
}

TEST_CASE("determinants") {
  const auto m = mat(7, {1, 1, 3, 5});
  CHECK(det(m, MinorIndex({2, 4}, {1, 2})).value() == 5);
  CHECK(det(m, MinorIndex({1, 2}, {2, 3})).value() == 0);
  CHECK(det(mat(13, {1, 1, 7, 2, 9}), MinorIndex({1, 2, 3, 4, 5}, {1, 2, 3, 4, 5})).value() == 1);
}

TEST_CASE("property: elimination determinant equals the Leibniz sum") {
  std::mt19937_64 rng(11);
  for (u64 p : {3ULL, 5ULL, 11ULL, 101ULL, 65537ULL}) {
    for (int t = 0; t < 40; ++t) {
      const auto m = random_matrix(rng, 6, p);
      for (const auto& [r, c] : oracle::all_index_pairs(6)) {
        if (r.size() > 4) continue;
        CHECK(det(m, MinorIndex(r, c)).value() == oracle::leibniz_det(column_of(m), r, c, p));
      }
    }
  }
}

TEST_CASE("superregularity examples") {
  for (u64 p : {3ULL, 5ULL, 7ULL, 11ULL, 101ULL}) {
    const auto r = is_superregular(mat(p, {1, 1, 1}));
    CHECK_FALSE(r.verdict);
    REQUIRE(r.first_failure);
    CHECK(r.first_failure->size() == 2);
    CHECK(r.failure_det->is_zero());
    CHECK_FALSE(is_superregular_incremental(mat(p, {1, 1, 1})).verdict);
  }
  CHECK(is_superregular(mat(11, {1, 1, 6, 1, 5, 4})).verdict);
  CHECK(is_superregular_incremental(mat(11, {1, 1, 6, 1, 5, 4})).verdict);
  CHECK(is_superregular(mat(17, {1, 1, 9, 3, 5, 1, 3})).verdict);
  const auto full = is_superregular(mat(11, {1, 1, 6, 1, 5, 4}));
  CHECK(full.checked_minors == nontrivial_minors(6).size());
}

TEST_CASE("property: superregularity matches the brute-force oracle") {
  std::mt19937_64 rng(5);
  for (int t = 0; t < 3000; ++t) {
    const int gamma = 2 + static_cast<int>(rng() % 5);
    const u64 p = std::vector<u64>{3, 5, 7, 11, 13}[rng() % 5];
    const auto m = random_matrix(rng, gamma, p);
    CHECK(is_superregular(m).verdict == oracle::brute_superregular(column_of(m), p));
  }
}

TEST_CASE("property: incremental and full checks agree") {
  std::mt19937_64 rng(3);
  std::vector<u64> primes;
  for (u64 p = 11; p <= 97; p = next_prime(p)) primes.push_back(p);
  int positives = 0;
  for (int t = 0; t < 10000; ++t) {
    const int gamma = 1 + static_cast<int>(rng() % 7);
    const u64 p = primes[rng() % primes.size()];
    auto m = random_matrix(rng, gamma, p);
    // Bias towards superregular inputs: fix a_1 = a_2 = 1 and small orders.
    if (gamma >= 2 && t % 2) {
      auto v = m.values();
      v[0] = v[1] = 1;
      m = ToeplitzLT::from_integers(m.field(), std::vector<std::int64_t>(v.begin(), v.end()));
    }
    const auto a = is_superregular(m);
    const auto b = is_superregular_incremental(m);
    CHECK(a.verdict == b.verdict);
    positives += a.verdict;
  }
  CHECK(positives > 100);
}

TEST_CASE("scaling") {
  const auto m = mat(7, {1, 1, 2});
  CHECK(scale(m, PrimeField(7).element(3)).values() == std::vector<u64>{1, 3, 4});
  CHECK(scale(m, PrimeField(7).one()) == m);
  CHECK_THROWS_AS(scale(m, PrimeField(7).zero()), Error);
}

TEST_CASE("property: scaling preserves superregularity") {
  for (u64 p : {5ULL, 7ULL, 11ULL}) {
    const PrimeField f(p);
    for (int gamma = 3; gamma <= 5; ++gamma) {
      for (const auto& col : oracle::brute_normalized(gamma, p)) {
        std::vector<std::int64_t> v(col.begin(), col.end());
        const auto m = ToeplitzLT::from_integers(f, v);
        for (u64 alpha = 1; alpha < p; ++alpha) CHECK(is_superregular(scale(m, f.from_u64(alpha))).verdict);
      }
    }
    // Non-superregular inputs stay non-superregular.
    for (u64 alpha = 1; alpha < p; ++alpha) CHECK_FALSE(is_superregular(scale(mat(p, {1, 1, 1, 2}), f.from_u64(alpha))).verdict);
  }
}

namespace {

/// Every combination of at least one column with nonzero coefficients meets
/// the weight bound, by exhaustive enumeration.
bool all_combinations_ok(const ToeplitzLT& m, int max_columns) {
  const int n = m.gamma();
  const u64 p = m.field().modulus();
  for (unsigned mask = 1; mask < (1u << n); ++mask) {
    std::vector<int> cols;
    for (int c = 0; c < n; ++c)
      if (mask >> c & 1) cols.push_back(c);
    if (static_cast<int>(cols.size()) > max_columns) continue;
    std::vector<u64> coeff(cols.size(), 1);
    for (;;) {
      std::vector<ColumnCoefficient> cc;
      for (std::size_t i = 0; i < cols.size(); ++i) cc.push_back({cols[i], m.field().from_u64(coeff[i])});
      if (!column_weight_check(m, cc)) return false;
      std::size_t i = 0;
      while (i < coeff.size() && ++coeff[i] == p) coeff[i++] = 1;
      if (i == coeff.size()) break;
    }
  }
  return true;
}

}  // namespace

TEST_CASE("column weight bound") {
  const auto m = mat(11, {1, 1, 6, 1, 5, 4});
  const PrimeField f(11);
  for (int c = 0; c < 6; ++c) {
    const ColumnCoefficient one[] = {{c, f.element(3)}};
    CHECK(column_weight_check(m, one));
  }
  CHECK(all_combinations_ok(m, 3));
  const ColumnCoefficient pair[] = {{0, f.one()}, {2, f.element(5)}};
  const int w = oracle::combination_weight(m.values(), {{0, 1}, {2, 5}}, 11);
  CHECK(column_weight_check(m, pair) == (w >= 6 - 0 - 2 + 1));
}

TEST_CASE("property: weight bound holds exactly for superregular matrices") {
  // Both sides are invariant under A -> c * (alpha (x) A), so a_1 = 1 and
  // a_2 in {0, 1} cover every matrix with a_1 != 0.
  for (u64 p : {3ULL, 5ULL, 7ULL, 11ULL}) {
    const PrimeField f(p);
    for (int gamma = 2; gamma <= 5; ++gamma) {
      for (std::int64_t a2 : {0, 1}) {
        std::vector<std::int64_t> v(static_cast<std::size_t>(gamma), 0);
        v[0] = 1;
        v[1] = a2;
        int agree = 0, total = 0;
        std::function<void(int)> rec = [&](int k) {
          if (k == gamma) {
            const auto m = ToeplitzLT::from_integers(f, v);
            agree += is_superregular(m).verdict == all_combinations_ok(m, gamma);
            ++total;
            return;
          }
          for (u64 x = 0; x < p; ++x) {
            v[k] = static_cast<std::int64_t>(x);
            rec(k + 1);
          }
        };
        rec(2);
        CHECK_MESSAGE(agree == total, "p=" << p << " gamma=" << gamma << " a2=" << a2);
      }
    }
  }
}
