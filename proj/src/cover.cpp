#include "covmil/cover.hpp"

#include <algorithm>
#include <set>
#include <sstream>

#include "covmil/errors.hpp"

namespace covmil {

std::string LiftSelection::to_string() const {
  std::string s;
  for (int e : eps) s += static_cast<char>('0' + e);
  return s;
}

bool check_even(const TangleWord& w) {
  ClosureTrace t = trace_closure(w);
  cycle_labels(w, t, true);
  for (int c = 0; c < t.ncycles; ++c) {
    int transits = static_cast<int>(t.cycle_cuts[c].size());
    if (transits % 2 != 0) return false;  // signed and geometric parity agree
  }
  return true;
}

CoverModel double_cover(const TangleWord& w) {
  w.validate();
  CoverModel m;
  m.base = w;

  ClosureTrace orig = trace_closure(w);
  std::vector<int> lab = cycle_labels(w, orig, true);
  std::vector<int> flags = cycle_orient_flags(w, orig);
  m.n = orig.ncycles;

  for (int c = 0; c < orig.ncycles; ++c) {
    int lk = 0;
    for (int j : orig.cycle_cuts[c]) lk += actual_out_top(orig, flags, j) ? 1 : -1;
    if (lk % 2 != 0)
      fail(Errc::evenness_violation,
           "component " + std::to_string(lab[c]) + " links the axis oddly (" + std::to_string(lk) + ")");
  }

  m.doubled.width = w.width;
  m.doubled.name = w.name.empty() ? "" : w.name + ".cover";
  m.doubled.events = w.events;
  m.doubled.events.insert(m.doubled.events.end(), w.events.begin(), w.events.end());
  m.doubled.validate_structure();
  m.dtrace = trace_closure(m.doubled);

  if (m.dtrace.ncycles != 2 * m.n)
    fail(Errc::internal_consistency, "even covering must split every component into two lifts");

  int nevents = static_cast<int>(w.events.size());
  m.lift_cycle.assign(2 * m.n, -1);

  // flow of each original segment under the word's actual orientation
  std::vector<bool> orig_up(orig.segs.size(), true);
  for (int c = 0; c < orig.ncycles; ++c)
    for (auto& [seg, up] : orig.cycle_path[c]) orig_up[seg] = flags[c] > 0 ? up : !up;

  auto cup_seg = [](const ClosureTrace& t, int event, bool left) {
    for (size_t s = 0; s < t.segs.size(); ++s)
      if (t.segs[s].birth_event == event && t.segs[s].birth_left == left)
        return static_cast<int>(s);
    fail(Errc::internal_consistency, "cup segment not found");
  };

  // every doubled segment starts at the outer boundary or a cup, so it sits
  // over a unique original strand; that gives labels and inherited flows
  auto counterpart = [&](int dseg) -> int {
    const TraceSeg& sg = m.dtrace.segs[dseg];
    if (sg.birth_event < 0) return orig.bottom_seg[sg.birth_pos];
    return cup_seg(orig, sg.birth_event % nevents, sg.birth_left);
  };

  std::vector<int> dlabel(m.dtrace.ncycles, 0);
  for (int dc = 0; dc < m.dtrace.ncycles; ++dc) {
    int aseg = m.dtrace.cycle_path[dc].front().first;
    int oseg = counterpart(aseg);
    dlabel[dc] = lab[orig.seg_cycle[oseg]];
    m.orient[dc] = {aseg, orig_up[oseg]};
  }

  for (int c = 0; c < orig.ncycles; ++c) {
    int comp = lab[c];
    const auto& cuts = orig.cycle_cuts[c];
    // lift 0 holds the lowest cut position of the component in the first
    // copy; a cut-free circle anchors at the first copy of its first cup
    int anchor_seg;
    if (!cuts.empty()) {
      anchor_seg = m.dtrace.bottom_seg[cuts.front()];
    } else {
      int ev = -1;
      for (size_t s = 0; s < orig.segs.size(); ++s)
        if (orig.seg_cycle[s] == c && orig.segs[s].birth_event >= 0)
          ev = ev < 0 ? orig.segs[s].birth_event : std::min(ev, orig.segs[s].birth_event);
      if (ev < 0) fail(Errc::internal_consistency, "componentless circle");
      anchor_seg = cup_seg(m.dtrace, ev, true);
    }
    int cyc0 = m.dtrace.seg_cycle[anchor_seg];
    if (dlabel[cyc0] != comp)
      fail(Errc::internal_consistency, "lift anchor carries the wrong label");
    int cyc1 = -1;
    for (int dc = 0; dc < m.dtrace.ncycles; ++dc)
      if (dc != cyc0 && dlabel[dc] == comp) {
        if (cyc1 >= 0)
          fail(Errc::internal_consistency, "component lifts to more than two circles");
        cyc1 = dc;
      }
    if (cyc1 < 0)
      fail(Errc::internal_consistency,
           "lift pair not found for component " + std::to_string(comp));
    m.lift_cycle[(comp - 1) * 2] = cyc0;
    m.lift_cycle[(comp - 1) * 2 + 1] = cyc1;
  }

  std::set<int> all(m.lift_cycle.begin(), m.lift_cycle.end());
  if (static_cast<int>(all.size()) != 2 * m.n)
    fail(Errc::internal_consistency, "lift cycles are not disjoint");
  return m;
}

PDiagram covering_link(const CoverModel& c, const LiftSelection& eps) {
  if (static_cast<int>(eps.eps.size()) != c.n)
    fail(Errc::parameter_mismatch, "lift selection length mismatch");
  DiagramOptions opt;
  for (int i = 1; i <= c.n; ++i) {
    int e = eps.eps[i - 1];
    if (e != 0 && e != 1) fail(Errc::parameter_mismatch, "lift selection entries must be 0/1");
    int cyc = c.cycle_of(i, e);
    opt.keep_cycles.push_back(cyc);
    opt.comp_of_cycle[cyc] = i;
    opt.orient_anchor[cyc] = c.orient.at(cyc);
  }
  return build_diagram(c.doubled, c.dtrace, opt);
}

std::vector<std::pair<LiftSelection, PDiagram>> covering_link_all(const CoverModel& c) {
  std::vector<std::pair<LiftSelection, PDiagram>> out;
  for (unsigned mask = 0; mask < (1u << c.n); ++mask) {
    std::vector<int> e(c.n);
    for (int i = 0; i < c.n; ++i) e[i] = (mask >> i) & 1;
    LiftSelection sel(e);
    out.push_back({sel, covering_link(c, sel)});
  }
  std::sort(out.begin(), out.end(),
            [](const auto& a, const auto& b) { return a.first < b.first; });
  return out;
}

MSet m_set(const TangleWord& w, const Index& I, Modulus p, int q) {
  CoverModel c = double_cover(w);
  for (int i : I.seq)
    if (i < 1 || i > c.n) fail(Errc::unknown_component, "index entry out of range for covering link");
  MSet m;
  for (unsigned mask = 0; mask < (1u << (c.n - 1)); ++mask) {
    std::vector<int> e(c.n, 0);
    for (int i = 1; i < c.n; ++i) e[i] = (mask >> (i - 1)) & 1;
    LiftSelection sel(e);
    PDiagram d = covering_link(c, sel);
    MilnorEngine eng(d, p, q);
    m.entries.push_back({sel, eng.mu_bar(I)});
  }
  std::sort(m.entries.begin(), m.entries.end(),
            [](const auto& a, const auto& b) { return a.first < b.first; });
  return m;
}

std::vector<BigInt> MSet::values() const {
  std::vector<BigInt> v;
  for (const auto& [sel, r] : entries) v.push_back(r.mubar);
  std::sort(v.begin(), v.end());
  return v;
}

bool MSet::same_values(const MSet& o) const { return values() == o.values(); }

bool MSet::same_values_upto_sign(const MSet& o, Modulus p) const {
  if (same_values(o)) return true;
  MSet neg;
  for (const auto& [sel, r] : entries) neg.entries.push_back({sel, r.negated(p)});
  return neg.same_values(o);
}

std::string mset_to_json(const std::string& input, const Index& I, Modulus p, int q,
                         const MSet& m) {
  std::ostringstream os;
  os << "{\"input\":\"" << input << "\",\"I\":\"" << I.to_string() << "\",\"p\":" << p.p
     << ",\"q\":" << q << ",\"entries\":[";
  for (size_t k = 0; k < m.entries.size(); ++k) {
    const auto& [sel, r] = m.entries[k];
    if (k) os << ",";
    os << "{\"eps\":\"" << sel.to_string() << "\",\"mu\":" << r.mu.to_string()
       << ",\"delta\":" << r.delta.to_string() << ",\"mubar\":" << r.mubar.to_string() << "}";
  }
  os << "]}";
  return os.str();
}

}  // namespace covmil
