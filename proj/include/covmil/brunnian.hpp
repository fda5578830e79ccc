#ifndef COVMIL_BRUNNIAN_HPP
#define COVMIL_BRUNNIAN_HPP

#include <string>
#include <vector>

#include "covmil/milnor.hpp"
#include "covmil/tangle.hpp"

namespace covmil {

/// o-index of a linear tree clasper on the trivial link: the closure-with-axis
/// of the generated word realizes the corresponding Milnor link. sign = -1
/// mirrors the word.
struct MilnorLinkSpec {
  std::vector<int> index;
  int sign = 1;
};

/// Brunnian link generator: the last component of the o-index (or the first,
/// when the axis sits last) weaves an iterated commutator through the others.
TangleWord milnor_link(const MilnorLinkSpec& spec);

/// n-component trivial closure, every component a zigzag through the cut with
/// zero axis linking; band-sum compatible with generated words.
TangleWord trivial_word(int n);

/// Component-wise band sum: the words sit side by side and each pair of
/// same-labelled components is fused along a band routed over everything.
/// Needs every component to exit through the top somewhere in `a` and through
/// the bottom somewhere in `b`.
TangleWord band_sum(const TangleWord& a, const TangleWord& b);

struct ExpectedValue {
  std::string check;  // "mubar_abs" | "mset_upto_sign" | "mubar_zero"
  Index I;
  uint32_t p = 0;
  std::vector<long long> values;
  std::string provenance;  // "published" | "derived"
};

struct CorpusEntry {
  std::string name;
  TangleWord word;
  std::vector<ExpectedValue> expected;
};

const std::vector<CorpusEntry>& corpus();
const CorpusEntry& corpus_entry(const std::string& name);

/// Internal generator behind milnor_link, exposed for the corpus: weaves the
/// left-normed commutator word over `bracket` (axis = ncomps+1 allowed, with
/// repeats) along component `weaver`.
TangleWord weave_commutator(int ncomps, int weaver, const std::vector<int>& bracket, bool mirror,
                            const std::string& name);

}  // namespace covmil

#endif
