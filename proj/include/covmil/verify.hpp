#ifndef COVMIL_VERIFY_HPP
#define COVMIL_VERIFY_HPP

#include <string>
#include <vector>

#include "covmil/cover.hpp"
#include "covmil/milnor.hpp"
#include "covmil/tangle.hpp"

namespace covmil {

enum class Verdict { Pass, Fail, Indeterminate };

/// Mod-2 congruence report for one admissible index: the closure-with-axis
/// invariant against the sum over covering links with the two neighbours of
/// the axis entry pinned to lift 0.
struct VerifyReport {
  std::string input;
  Index I;
  int k = 0;  // position of the axis entry, 1-based
  std::vector<LiftSelection> eps;
  int lhs_mod2 = 0;
  std::vector<std::pair<LiftSelection, int>> per_eps;
  int rhs_mod2 = 0;
  Verdict verdict = Verdict::Fail;
  std::string note;

  std::string to_json() const;
  std::string to_table() const;
};

/// Selections with the neighbours of the axis entry pinned to 0; I must be a
/// non-repeated arrangement of 1..n+1 with the axis entry strictly inside.
std::vector<LiftSelection> eps_set(const Index& I, int n);

VerifyReport verify_mod2(const TangleWord& w, const Index& I, int q);

/// Integer-level values for the strictness check: mubar of the marked link at
/// I and of one covering link at I minus the axis entry.
struct StrictnessCase {
  MuResult lhs;
  MuResult rhs;
  LiftSelection eps;
};
StrictnessCase verify_strictness(const TangleWord& w, const Index& I, const LiftSelection& eps,
                                 int q);

/// Corpus discriminator: the companion pair has identical ordinary invariants
/// up to the indeterminacy collapse but different covering M-sets.
struct DiscriminatorReport {
  bool ordinary_match = false;
  bool msets_differ = false;
  std::vector<std::string> mismatches;
  bool pass() const { return ordinary_match && msets_differ; }
};
DiscriminatorReport homotopy_discriminator();

}  // namespace covmil

#endif
