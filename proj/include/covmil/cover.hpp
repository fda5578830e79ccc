#ifndef COVMIL_COVER_HPP
#define COVMIL_COVER_HPP

#include <map>
#include <string>
#include <utility>
#include <vector>

#include "covmil/diagram.hpp"
#include "covmil/milnor.hpp"
#include "covmil/tangle.hpp"

namespace covmil {

/// One lift choice per component: eps[i-1] picks K_i^{eps_i}.
struct LiftSelection {
  std::vector<int> eps;

  LiftSelection() = default;
  explicit LiftSelection(std::vector<int> e) : eps(std::move(e)) {}
  bool operator<(const LiftSelection& o) const { return eps < o.eps; }
  bool operator==(const LiftSelection& o) const { return eps == o.eps; }
  std::string to_string() const;
};

/// Double branched cover over the axis, realized combinatorially: cut along
/// the axis disk and stack two copies of the tangle. Each component lifts to
/// exactly two closure components of the doubled word; lift 0 contains the
/// lowest cut position of the component in the first copy, and lifts inherit
/// their orientation from downstairs.
struct CoverModel {
  TangleWord base;
  TangleWord doubled;
  int n = 0;
  ClosureTrace dtrace;
  std::vector<int> lift_cycle;  // (comp-1)*2 + eps -> doubled cycle id
  std::map<int, std::pair<int, bool>> orient;  // doubled cycle -> (segment, up)

  int cycle_of(int comp, int eps) const { return lift_cycle[(comp - 1) * 2 + eps]; }
};

/// True iff every component links the axis evenly.
bool check_even(const TangleWord& w);

CoverModel double_cover(const TangleWord& w);

PDiagram covering_link(const CoverModel& c, const LiftSelection& eps);

std::vector<std::pair<LiftSelection, PDiagram>> covering_link_all(const CoverModel& c);

/// Covering Milnor invariant values over all selections with eps_1 = 0.
struct MSet {
  std::vector<std::pair<LiftSelection, MuResult>> entries;

  /// Sorted multiset of the canonical residues.
  std::vector<BigInt> values() const;
  bool same_values(const MSet& o) const;
  /// Equality after negating every entry of *this uniformly, or exactly.
  bool same_values_upto_sign(const MSet& o, Modulus p) const;
};

MSet m_set(const TangleWord& w, const Index& I, Modulus p, int q);

std::string mset_to_json(const std::string& input, const Index& I, Modulus p, int q,
                         const MSet& m);

}  // namespace covmil

#endif
