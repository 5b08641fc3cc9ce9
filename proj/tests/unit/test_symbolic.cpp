#include <doctest.h>

#include <random>

#include "supreg/symbolic.hpp"

using namespace supreg;

namespace {

MultiPoly x(int i) { return MultiPoly::variable(i); }

MultiPoly mul(const MultiPoly& a, const MultiPoly& b) {
  MultiPoly out;
  for (const auto& t : b.terms()) {
    MultiPoly scaled = a.times(t.mono);
    std::vector<MultiPoly::Term> terms;
    for (const auto& s : scaled.terms()) terms.push_back({s.mono, s.coeff * t.coeff});
    out = out + MultiPoly::from_terms(terms);
  }
  return out;
}

}  // namespace

TEST_CASE("symbolic 2x2 minors") {
  const auto a = sym_det(MinorIndex({2, 4}, {1, 2}), 4);
  CHECK(a == mul(x(2), x(3)) - mul(x(1), x(4)));
  CHECK(substitute_ones(a) == x(3) - x(4));
  const auto b = sym_det(MinorIndex({3, 4}, {1, 2}), 4);
  CHECK(b == mul(x(3), x(3)) - mul(x(2), x(4)));
  CHECK(b.to_string() == "x3^2 - x2*x4");
  CHECK(sym_det(MinorIndex({1, 2}, {2, 3}), 4).is_zero());
}

TEST_CASE("substitution and splitting") {
  CHECK(substitute_ones(mul(x(1), x(4)) - mul(x(2), x(3))) == x(4) - x(3));
  CHECK(substitute_ones(MultiPoly::constant(5)) == MultiPoly::constant(5));
  CHECK(substitute_ones(MultiPoly{}).is_zero());

  const auto [c, d] = linear_split(mul(x(3), x(3)) - mul(x(2), x(4)), 4);
  CHECK(c == -x(2));
  CHECK(d == mul(x(3), x(3)));
  const auto [c2, d2] = linear_split(mul(x(3), x(3)), 4);
  CHECK(c2.is_zero());
  CHECK(d2 == mul(x(3), x(3)));
  const auto [c3, d3] = linear_split(x(4), 4);
  CHECK(c3 == MultiPoly::constant(1));
  CHECK(d3.is_zero());
  CHECK_THROWS_AS(linear_split(mul(x(4), x(4)), 4), Error);
}

TEST_CASE("integer escalation") {
  Integer big = std::int64_t{1} << 62;
  Integer sum = big + big;
  CHECK_FALSE(sum.is_small());
  CHECK(sum.to_string() == "9223372036854775808");
  CHECK((sum - big).is_small());
  Integer prod = big * big;
  CHECK(prod.to_string() == "21267647932558653966460912964485513216");
  CHECK(prod.mod(1000000007) == static_cast<std::uint64_t>((Integer::Big(1) << 124) % 1000000007));
  CHECK((-Integer(INT64_MIN)).to_string() == "9223372036854775808");
}

TEST_CASE("antidiagonal symmetry") {
  CHECK(is_antidiag_symmetric(MinorIndex({5}, {1}), 5));
  CHECK(is_antidiag_symmetric(MinorIndex({3, 4}, {1, 2}), 4));
  CHECK_FALSE(is_antidiag_symmetric(MinorIndex({2, 4}, {1, 2}), 4));
  const std::uint64_t central[] = {1, 1, 2, 3, 6, 10, 20, 35, 70, 126};
  for (int g = 1; g <= 10; ++g) {
    std::uint64_t n = 0;
    for (const auto& idx : minors_involving_last(g)) n += is_antidiag_symmetric(idx, g);
    CHECK(n == central[g - 1]);
  }
}

TEST_CASE("census") {
  const auto c4 = census(4);
  CHECK(c4.count_L == 5);
  CHECK(c4.count_Lsym == 3);
  CHECK(c4.n_gamma == 4);
  CHECK(c4.distinct == 4);
  const std::uint64_t n[] = {1, 1, 2, 4, 10, 26, 76, 232, 750};
  for (int g = 1; g <= 9; ++g) {
    const auto c = census(g);
    CHECK(c.n_gamma == n[g - 1]);
    CHECK(c.n_gamma_closed_form == n[g - 1]);
    CHECK(c.count_L == catalan(g - 1));
    CHECK(c.count_Lsym == binomial(g - 1, (g - 1) / 2));
    CHECK(c.distinct <= c.n_gamma);
    CHECK(c.distinct == (g == 8 ? 231u : c.n_gamma));
    CHECK(c.distinct_raw == c.distinct);
  }
}

TEST_CASE("property: x_gamma coefficient is the complementary minor") {
  for (int g = 2; g <= 8; ++g) {
    SymbolicMinors memo;
    for (const auto& idx : minors_involving_last(g)) {
      const auto [c, d] = linear_split(memo.det(idx), g);
      REQUIRE_FALSE(c.is_zero());
      const auto comp = corner_complement(idx);
      if (!comp) {
        CHECK(c == MultiPoly::constant(1));
        continue;
      }
      const auto cd = memo.det(*comp);
      CHECK((c == cd || c == -cd));
    }
  }
}

TEST_CASE("property: evaluation commutes with determinants") {
  std::mt19937_64 rng(17);
  for (int t = 0; t < 40; ++t) {
    const int g = 2 + static_cast<int>(rng() % 6);
    const std::uint64_t p = std::vector<std::uint64_t>{11, 13, 101, 65537}[rng() % 4];
    std::vector<std::int64_t> v(static_cast<std::size_t>(g));
    for (auto& e : v) e = static_cast<std::int64_t>(rng() % p);
    const auto m = ToeplitzLT::from_integers(PrimeField(p), v);
    const auto values = m.values();
    SymbolicMinors memo;
    for (const auto& idx : nontrivial_minors(g)) {
      CHECK(memo.det(idx).evaluate(values, p) == det(m, idx).value());
    }
  }
}
