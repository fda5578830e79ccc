#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <random>

#include "covmil/errors.hpp"
#include "covmil/freealg.hpp"
#include "doctest.h"

using namespace covmil;

namespace {

TruncatedSeries random_series(std::mt19937& rng, int n, int q, Modulus p, bool unit_constant) {
  TruncatedSeries s(n, q, p);
  if (unit_constant) s.add_term(Monomial::unit(), BigInt(1));
  int terms = 1 + static_cast<int>(rng() % 5);
  for (int t = 0; t < terms; ++t) {
    int len = 1 + static_cast<int>(rng() % q);
    std::vector<int> vars;
    for (int k = 0; k < len; ++k) vars.push_back(1 + static_cast<int>(rng() % n));
    s.add_term(Monomial::from_vars(vars), BigInt(static_cast<long long>(rng() % 7) - 3));
  }
  return s;
}

GroupWord random_group_word(std::mt19937& rng, int n, int len) {
  GroupWord w;
  for (int i = 0; i < len; ++i)
    w.letters.push_back({1 + static_cast<int>(rng() % n), (rng() & 1) ? 1 : -1});
  return w;
}

GroupWord concat(const GroupWord& a, const GroupWord& b) {
  GroupWord c = a;
  c.letters.insert(c.letters.end(), b.letters.begin(), b.letters.end());
  return c;
}

GroupWord inverse(const GroupWord& a) {
  GroupWord c;
  for (auto it = a.letters.rbegin(); it != a.letters.rend(); ++it)
    c.letters.push_back({it->first, -it->second});
  return c;
}

}  // namespace

TEST_CASE("modulus validation") {
  CHECK_NOTHROW(Modulus(0));
  CHECK_NOTHROW(Modulus(2));
  CHECK_NOTHROW(Modulus(7));
  CHECK_THROWS_AS(Modulus(1), Error);
  CHECK_THROWS_AS(Modulus(6), Error);
}

TEST_CASE("monomial packing") {
  Monomial m = Monomial::from_vars({1, 3, 2});
  CHECK(m.length() == 3);
  CHECK(m.vars() == std::vector<int>{1, 3, 2});
  Monomial out;
  CHECK(Monomial::concat(Monomial::from_vars({1}), Monomial::from_vars({3, 2}), 3, out));
  CHECK(out == m);
  CHECK_FALSE(Monomial::concat(m, m, 5, out));
  CHECK(Monomial::unit().length() == 0);
}

TEST_CASE("inverse pair truncates to the unit") {
  // (1+X1)(1-X1+X1^2) at q=2 is 1
  TruncatedSeries a = TruncatedSeries::one_plus_var(2, 2, Modulus(0), 1);
  TruncatedSeries b(2, 2, Modulus(0));
  b.add_term(Monomial::unit(), BigInt(1));
  b.add_term(Monomial::var(1), BigInt(-1));
  b.add_term(Monomial::from_vars({1, 1}), BigInt(1));
  CHECK(series_mul(a, b).is_unit());
}

TEST_CASE("unit law and distributivity") {
  std::mt19937 rng(11);
  TruncatedSeries one = TruncatedSeries::unit(3, 4, Modulus(0));
  for (int i = 0; i < 20; ++i) {
    TruncatedSeries s = random_series(rng, 3, 4, Modulus(0), false);
    CHECK(series_mul(one, s) == s);
    CHECK(series_mul(s, one) == s);
  }
  // (1+X1)(1+X2) at q=3
  TruncatedSeries p = series_mul(TruncatedSeries::one_plus_var(2, 3, Modulus(0), 1),
                                 TruncatedSeries::one_plus_var(2, 3, Modulus(0), 2));
  CHECK(p.coefficient(Monomial::unit()).to_i64() == 1);
  CHECK(p.coefficient(Monomial::var(1)).to_i64() == 1);
  CHECK(p.coefficient(Monomial::var(2)).to_i64() == 1);
  CHECK(p.coefficient(Monomial::from_vars({1, 2})).to_i64() == 1);
  CHECK(p.coefficient(Monomial::from_vars({2, 1})).to_i64() == 0);
}

TEST_CASE("series context mismatch is rejected") {
  TruncatedSeries a(2, 3, Modulus(0)), b(2, 4, Modulus(0)), c(3, 3, Modulus(0)),
      d(2, 3, Modulus(5));
  CHECK_THROWS_AS(series_mul(a, b), Error);
  CHECK_THROWS_AS(series_mul(a, c), Error);
  CHECK_THROWS_AS(series_mul(a, d), Error);
}

TEST_CASE("geometric series inverse") {
  // 1/(1+X1) = 1 - X1 + X1^2 - X1^3 at q=3
  TruncatedSeries inv = series_inverse(TruncatedSeries::one_plus_var(1, 3, Modulus(0), 1));
  CHECK(inv.coefficient(Monomial::unit()).to_i64() == 1);
  CHECK(inv.coefficient(Monomial::var(1)).to_i64() == -1);
  CHECK(inv.coefficient(Monomial::from_vars({1, 1})).to_i64() == 1);
  CHECK(inv.coefficient(Monomial::from_vars({1, 1, 1})).to_i64() == -1);

  CHECK(series_inverse(TruncatedSeries::unit(2, 3, Modulus(0))).is_unit());

  // 1/(1+X1+X2) at q=2, checked explicitly and by multiplying back
  TruncatedSeries s(2, 2, Modulus(0));
  s.add_term(Monomial::unit(), BigInt(1));
  s.add_term(Monomial::var(1), BigInt(1));
  s.add_term(Monomial::var(2), BigInt(1));
  TruncatedSeries si = series_inverse(s);
  CHECK(si.coefficient(Monomial::var(1)).to_i64() == -1);
  CHECK(si.coefficient(Monomial::var(2)).to_i64() == -1);
  CHECK(si.coefficient(Monomial::from_vars({1, 1})).to_i64() == 1);
  CHECK(si.coefficient(Monomial::from_vars({1, 2})).to_i64() == 1);
  CHECK(si.coefficient(Monomial::from_vars({2, 1})).to_i64() == 1);
  CHECK(si.coefficient(Monomial::from_vars({2, 2})).to_i64() == 1);
  CHECK(series_mul(s, si).is_unit());

  TruncatedSeries no_unit(2, 2, Modulus(0));
  no_unit.add_term(Monomial::var(1), BigInt(1));
  CHECK_THROWS_AS(series_inverse(no_unit), Error);
}

TEST_CASE("magnus expansion of a commutator") {
  GroupWord w{{{1, 1}, {2, 1}, {1, -1}, {2, -1}}};
  TruncatedSeries e = magnus_expand_standard(w, 2, 2, Modulus(0));
  CHECK(e.coefficient(Monomial::unit()).to_i64() == 1);
  CHECK(e.coefficient(Monomial::var(1)).to_i64() == 0);
  CHECK(e.coefficient(Monomial::var(2)).to_i64() == 0);
  CHECK(e.coefficient(Monomial::from_vars({1, 2})).to_i64() == 1);
  CHECK(e.coefficient(Monomial::from_vars({2, 1})).to_i64() == -1);

  CHECK(magnus_expand_standard(GroupWord{}, 2, 2, Modulus(0)).is_unit());
  GroupWord cancel{{{1, 1}, {1, -1}}};
  CHECK(magnus_expand_standard(cancel, 2, 2, Modulus(0)).is_unit());
}

TEST_CASE("missing assignment is reported") {
  GroupWord w{{{5, 1}}};
  std::map<int, TruncatedSeries> assign;
  assign.emplace(1, TruncatedSeries::one_plus_var(2, 2, Modulus(0), 1));
  CHECK_THROWS_AS(magnus_expand(w, assign), Error);
}

TEST_CASE("coefficient lookups") {
  TruncatedSeries s(2, 3, Modulus(0));
  s.add_term(Monomial::unit(), BigInt(1));
  s.add_term(Monomial::from_vars({1, 2}), BigInt(3));
  CHECK(s.coefficient(Monomial::from_vars({1, 2})).to_i64() == 3);
  CHECK(s.coefficient(Monomial::var(1)).to_i64() == 0);
  CHECK_THROWS_AS(s.coefficient(Monomial::from_vars({1, 2, 1, 2})), Error);
}

TEST_CASE("associativity over random sparse series") {
  std::mt19937 rng(23);
  for (int i = 0; i < 60; ++i) {
    Modulus p(i % 3 == 0 ? 5u : 0u);
    TruncatedSeries a = random_series(rng, 3, 3, p, false);
    TruncatedSeries b = random_series(rng, 3, 3, p, false);
    TruncatedSeries c = random_series(rng, 3, 3, p, false);
    CHECK(series_mul(series_mul(a, b), c) == series_mul(a, series_mul(b, c)));
  }
}

TEST_CASE("expansion is a homomorphism and kills free reduction") {
  std::mt19937 rng(37);
  for (int i = 0; i < 40; ++i) {
    GroupWord u = random_group_word(rng, 3, 1 + rng() % 5);
    GroupWord v = random_group_word(rng, 3, 1 + rng() % 5);
    TruncatedSeries eu = magnus_expand_standard(u, 3, 3, Modulus(0));
    TruncatedSeries ev = magnus_expand_standard(v, 3, 3, Modulus(0));
    CHECK(magnus_expand_standard(concat(u, v), 3, 3, Modulus(0)) == series_mul(eu, ev));
    CHECK(magnus_expand_standard(concat(u, inverse(u)), 3, 3, Modulus(0)).is_unit());
  }
}

TEST_CASE("coefficients stay in range and reduce mod p") {
  std::mt19937 rng(41);
  for (int i = 0; i < 30; ++i) {
    GroupWord u = random_group_word(rng, 3, 2 + rng() % 6);
    for (uint32_t pv : {2u, 3u, 5u}) {
      TruncatedSeries ep = magnus_expand_standard(u, 3, 3, Modulus(pv));
      for (const auto& [k, c] : ep.terms()) {
        CHECK(c.sgn() > 0);
        CHECK(c < BigInt(static_cast<long long>(pv)));
      }
      TruncatedSeries e0 = magnus_expand_standard(u, 3, 3, Modulus(0));
      CHECK(e0.reduced_mod(Modulus(pv)) == ep);
    }
  }
}
