#ifndef COVMIL_DIAGRAM_HPP
#define COVMIL_DIAGRAM_HPP

#include <map>
#include <string>
#include <utility>
#include <vector>

#include "covmil/tangle.hpp"

namespace covmil {

/// Monotone strand piece of the swept word: born at the bottom boundary or a
/// cup, dies at the top boundary or a cap; crossings happen along it.
struct TraceSeg {
  int birth_event = -1;  // -1: bottom boundary at birth_pos
  int birth_pos = 0;
  bool birth_left = false;  // cup side when event-born
  int death_event = -1;     // -1: top boundary at death_pos
  int death_pos = 0;
  bool death_left = false;  // cap side when event-killed
};

struct TraceCrossing {
  int event;
  int seg_left;   // strand entering from pos
  int seg_right;  // strand entering from pos+1
  int sign;       // +1: left strand passes over
};

/// Connectivity of the annular closure of a word. Cycles are the closure
/// components in discovery order (bottom positions left to right, then cup
/// events); each carries a canonical traversal path.
struct ClosureTrace {
  int width = 0;
  std::vector<TraceSeg> segs;
  std::vector<TraceCrossing> crossings;
  std::vector<std::vector<std::pair<int, bool>>> seg_crossings;  // per seg: (crossing id, is_left)
  std::vector<int> bottom_seg;  // 1-based position -> segment
  std::vector<int> top_seg;

  int ncycles = 0;
  std::vector<int> seg_cycle;
  std::vector<std::vector<std::pair<int, bool>>> cycle_path;  // (segment, traversed up)
  std::vector<std::vector<int>> cycle_cuts;                   // sorted closure positions
  std::vector<int> cut_cycle;      // 1-based position -> cycle
  std::vector<bool> cut_out_top;   // closure traversed top -> bottom

  /// Walk the cycle containing `seg` starting in direction `up`.
  std::vector<std::pair<int, bool>> walk(int seg, bool up) const;
};

ClosureTrace trace_closure(const TangleWord& w);

/// Cycle id -> component label from the word's label map; strict mode
/// enforces the bijection invariant.
std::vector<int> cycle_labels(const TangleWord& w, const ClosureTrace& t, bool strict);

/// Cycle id -> +1/-1 traversal flag from the word's orient map.
std::vector<int> cycle_orient_flags(const TangleWord& w, const ClosureTrace& t);

/// Closure direction at position j under the flags: traversed top -> bottom?
bool actual_out_top(const ClosureTrace& t, const std::vector<int>& flags, int j);

struct PDCrossing {
  int over_arc;
  int under_in;
  int under_out;
  int sign;
};

/// Oriented ordered link diagram: arcs are the maximal overpasses (split at
/// undercrossings), one Wirtinger generator each.
struct PDiagram {
  int ncomps = 0;
  bool has_axis = false;  // axis is component ncomps when set
  std::vector<int> arc_comp;  // arc id -> component (1-based)
  std::vector<PDCrossing> crossings;
  std::vector<int> base_arc;                  // per component
  std::vector<std::vector<int>> comp_unders;  // crossing ids along traversal
  std::vector<int> writhe;

  int arcs() const { return static_cast<int>(arc_comp.size()); }
};

struct DiagramOptions {
  bool with_axis = false;
  std::vector<int> keep_cycles;                       // empty: keep all
  std::map<int, int> comp_of_cycle;                   // empty: use word labels
  std::map<int, std::pair<int, bool>> orient_anchor;  // cycle -> (segment, up)
};

PDiagram build_diagram(const TangleWord& w, const ClosureTrace& t, const DiagramOptions& opt);

PDiagram annular_closure(const TangleWord& w);

struct MarkedLink {
  PDiagram diagram;          // n+1 components, axis last
  int axis = 0;              // component index of the axis
  std::vector<int> axis_lk;  // lk(axis, i) for i = 1..n
};

/// Closure plus a round axis circle encircling the closure strands; the axis
/// passes over each strand at its first crossing along the axis and under at
/// the second.
MarkedLink insert_axis(const TangleWord& w);

int axis_linking(const TangleWord& w, int comp);

/// Half the signed count of crossings between components i and j.
int linking_number(const PDiagram& d, int i, int j);

std::string pd_to_json(const PDiagram& d);

}  // namespace covmil

#endif
