#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "covmil/brunnian.hpp"
#include "covmil/cover.hpp"
#include "covmil/errors.hpp"
#include "covmil/milnor.hpp"
#include "covmil/tangle.hpp"
#include "doctest.h"

using namespace covmil;

TEST_CASE("evenness gate") {
  CHECK_FALSE(check_even(parse_tangle("m=1; ; label 1 1")));       // single transit
  CHECK(check_even(parse_tangle("m=2; X1+; label 1 1")));          // double transit, lk 2
  CHECK(check_even(corpus_entry("borromean_axis3").word));
  CHECK(check_even(trivial_word(2)));
  CHECK_THROWS_AS(double_cover(parse_tangle("m=1; ; label 1 1")), Error);
}

TEST_CASE("doubling splits every component into two lifts") {
  CoverModel c = double_cover(corpus_entry("borromean_axis3").word);
  CHECK(c.n == 2);
  CHECK(c.dtrace.ncycles == 4);
  for (int i = 1; i <= 2; ++i) CHECK(c.cycle_of(i, 0) != c.cycle_of(i, 1));
}

TEST_CASE("split input covers trivially") {
  CoverModel c = double_cover(trivial_word(2));
  for (unsigned mask = 0; mask < 4; ++mask) {
    LiftSelection sel({static_cast<int>(mask & 1), static_cast<int>(mask >> 1)});
    PDiagram d = covering_link(c, sel);
    CHECK(d.ncomps == 2);
    MilnorEngine eng(d, Modulus(0), 2);
    CHECK(eng.mu(Index({1, 2})).is_zero());
  }
}

TEST_CASE("borromean covering links are opposite clasps") {
  const TangleWord& w = corpus_entry("borromean_axis3").word;
  CoverModel c = double_cover(w);
  PDiagram d00 = covering_link(c, LiftSelection({0, 0}));
  PDiagram d01 = covering_link(c, LiftSelection({0, 1}));
  CHECK(d00.ncomps == 2);
  CHECK(d01.ncomps == 2);
  int l00 = linking_number(d00, 1, 2);
  int l01 = linking_number(d01, 1, 2);
  CHECK(std::abs(l00) == 1);
  CHECK(std::abs(l01) == 1);
  CHECK(l00 == -l01);
}

TEST_CASE("m_set of the corpus entries") {
  MSet mb = m_set(corpus_entry("borromean_axis3").word, Index({1, 2}), Modulus(0), 2);
  CHECK(mb.entries.size() == 2);
  auto vb = mb.values();
  CHECK(vb.front().to_i64() == -1);
  CHECK(vb.back().to_i64() == 1);

  MSet mt = m_set(trivial_word(2), Index({1, 2}), Modulus(0), 2);
  for (const BigInt& v : mt.values()) CHECK(v.is_zero());

  MSet mp = m_set(corpus_entry("Lprime").word, Index({1, 2}), Modulus(0), 2);
  auto vp = mp.values();
  CHECK(vp.front().to_i64() == -3);
  CHECK(vp.back().to_i64() == 3);
}

TEST_CASE("covering translation symmetry") {
  const TangleWord& w = corpus_entry("borromean_axis3").word;
  CoverModel c = double_cover(w);
  auto all = covering_link_all(c);
  CHECK(all.size() == 4);
  std::map<std::string, BigInt> lk;
  for (auto& [sel, d] : all) lk[sel.to_string()] = BigInt(linking_number(d, 1, 2));
  // the covering translation flips every coordinate
  CHECK(lk["00"] == lk["11"]);
  CHECK(lk["01"] == lk["10"]);
}

TEST_CASE("three-component inputs give eight covering links") {
  CoverModel c = double_cover(corpus_entry("milnor_1234").word);
  auto all = covering_link_all(c);
  CHECK(all.size() == 8);
  for (auto& [sel, d] : all) CHECK(d.ncomps == 3);
  // the covering translation pairs selections with their complements
  auto mu123 = [&](const PDiagram& d) {
    return MilnorEngine(d, Modulus(0), 3).mu(Index({1, 2, 3}));
  };
  // entries are sorted by eps, so the complement of entry k is entry 7-k
  for (unsigned k = 0; k < 8; ++k) CHECK(mu123(all[k].second) == mu123(all[7 - k].second));
}

TEST_CASE("covering links of brunnian inputs are brunnian") {
  const TangleWord w = milnor_link({{1, 2, 3, 4}, 1});
  CoverModel c = double_cover(w);
  PDiagram d = covering_link(c, LiftSelection({0, 1, 0}));
  MilnorEngine eng(d, Modulus(0), 2);
  for (int i = 1; i <= 3; ++i)
    for (int j = 1; j <= 3; ++j)
      if (i != j) CHECK(eng.mu(Index({i, j})).is_zero());
}

TEST_CASE("m_set is invariant under word rewrites") {
  TangleWord w = corpus_entry("borromean_axis3").word;
  MSet base = m_set(w, Index({1, 2}), Modulus(0), 2);
  TangleWord r = word_rewrite(w, {RewriteKind::CyclicRotation, 0});
  r = word_rewrite(r, {RewriteKind::InsertR2, 1});
  r = word_rewrite(r, {RewriteKind::CyclicRotation, 0});
  MSet moved = m_set(r, Index({1, 2}), Modulus(0), 2);
  CHECK(base.same_values(moved));
}

TEST_CASE("selection validation") {
  CoverModel c = double_cover(trivial_word(2));
  CHECK_THROWS_AS(covering_link(c, LiftSelection({0})), Error);
  CHECK_THROWS_AS(covering_link(c, LiftSelection({0, 2})), Error);
}

TEST_CASE("mset json is deterministic") {
  const TangleWord& w = corpus_entry("borromean_axis3").word;
  MSet a = m_set(w, Index({1, 2}), Modulus(0), 2);
  MSet b = m_set(w, Index({1, 2}), Modulus(0), 2);
  CHECK(mset_to_json("borromean_axis3", Index({1, 2}), Modulus(0), 2, a) ==
        mset_to_json("borromean_axis3", Index({1, 2}), Modulus(0), 2, b));
}
