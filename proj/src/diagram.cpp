#include "covmil/diagram.hpp"

#include <algorithm>
#include <sstream>

#include "covmil/errors.hpp"

namespace covmil {

namespace {

inline int port_of(int seg, bool top) { return 2 * seg + (top ? 1 : 0); }

}  // namespace

ClosureTrace trace_closure(const TangleWord& w) {
  w.validate_structure();
  ClosureTrace t;
  t.width = w.width;

  std::vector<int> cur;
  auto new_seg = [&]() {
    t.segs.push_back(TraceSeg{});
    t.seg_crossings.emplace_back();
    return static_cast<int>(t.segs.size()) - 1;
  };

  t.bottom_seg.assign(w.width + 1, -1);
  t.top_seg.assign(w.width + 1, -1);
  for (int j = 1; j <= w.width; ++j) {
    int s = new_seg();
    t.segs[s].birth_event = -1;
    t.segs[s].birth_pos = j;
    t.bottom_seg[j] = s;
    cur.push_back(s);
  }

  for (size_t i = 0; i < w.events.size(); ++i) {
    const MorseEvent& e = w.events[i];
    int p = e.pos - 1;
    switch (e.kind) {
      case MorseEvent::Kind::Cross: {
        int sl = cur[p], sr = cur[p + 1];
        int cid = static_cast<int>(t.crossings.size());
        t.crossings.push_back({static_cast<int>(i), sl, sr, e.sign});
        t.seg_crossings[sl].push_back({cid, true});
        t.seg_crossings[sr].push_back({cid, false});
        std::swap(cur[p], cur[p + 1]);
        break;
      }
      case MorseEvent::Kind::Cup: {
        int sl = new_seg(), sr = new_seg();
        t.segs[sl] = TraceSeg{static_cast<int>(i), 0, true, -1, 0, false};
        t.segs[sr] = TraceSeg{static_cast<int>(i), 0, false, -1, 0, false};
        cur.insert(cur.begin() + p, {sl, sr});
        break;
      }
      case MorseEvent::Kind::Cap: {
        int sl = cur[p], sr = cur[p + 1];
        t.segs[sl].death_event = static_cast<int>(i);
        t.segs[sl].death_left = true;
        t.segs[sr].death_event = static_cast<int>(i);
        t.segs[sr].death_left = false;
        cur.erase(cur.begin() + p, cur.begin() + p + 2);
        break;
      }
    }
  }
  for (int j = 1; j <= w.width; ++j) {
    int s = cur[j - 1];
    t.segs[s].death_event = -1;
    t.segs[s].death_pos = j;
    t.top_seg[j] = s;
  }

  // port adjacency: cups pair bottoms, caps pair tops, closure pairs top_j/bottom_j
  int nsegs = static_cast<int>(t.segs.size());
  std::vector<int> partner(2 * nsegs, -1);
  std::vector<int> closure_pos(2 * nsegs, 0);  // nonzero: closure port at that position
  {
    std::map<int, std::pair<int, int>> cup_sides, cap_sides;  // event -> (left seg, right seg)
    for (int s = 0; s < nsegs; ++s) {
      const TraceSeg& sg = t.segs[s];
      if (sg.birth_event >= 0) {
        auto& e = cup_sides[sg.birth_event];
        (sg.birth_left ? e.first : e.second) = s + 1;  // +1: distinguish unset
      }
      if (sg.death_event >= 0) {
        auto& e = cap_sides[sg.death_event];
        (sg.death_left ? e.first : e.second) = s + 1;
      }
    }
    for (auto& [ev, pr] : cup_sides) {
      int a = port_of(pr.first - 1, false), b = port_of(pr.second - 1, false);
      partner[a] = b;
      partner[b] = a;
    }
    for (auto& [ev, pr] : cap_sides) {
      int a = port_of(pr.first - 1, true), b = port_of(pr.second - 1, true);
      partner[a] = b;
      partner[b] = a;
    }
    for (int j = 1; j <= w.width; ++j) {
      int a = port_of(t.top_seg[j], true), b = port_of(t.bottom_seg[j], false);
      partner[a] = b;
      partner[b] = a;
      closure_pos[a] = j;
      closure_pos[b] = j;
    }
  }

  t.seg_cycle.assign(nsegs, -1);
  t.cut_cycle.assign(w.width + 1, -1);
  t.cut_out_top.assign(w.width + 1, false);

  auto walk_impl = [&](int seg, bool up) {
    std::vector<std::pair<int, bool>> path;
    int s = seg;
    bool u = up;
    do {
      path.push_back({s, u});
      int exit = port_of(s, u);
      int p = partner[exit];
      if (p < 0) fail(Errc::internal_consistency, "unpaired strand end");
      s = p / 2;
      u = (p & 1) == 0;  // entering from the bottom means upward
    } while (!(s == seg && u == up));
    return path;
  };

  // discovery: bottom positions left to right, then cup segments in event order
  std::vector<int> candidates;
  for (int j = 1; j <= w.width; ++j) candidates.push_back(t.bottom_seg[j]);
  for (int s = 0; s < nsegs; ++s)
    if (t.segs[s].birth_event >= 0) candidates.push_back(s);
  std::sort(candidates.begin() + w.width, candidates.end(), [&](int a, int b) {
    const TraceSeg& x = t.segs[a];
    const TraceSeg& y = t.segs[b];
    return std::tie(x.birth_event, x.birth_left) < std::tie(y.birth_event, y.birth_left);
  });

  std::vector<int> anchor_seg;
  for (int cand : candidates) {
    if (t.seg_cycle[cand] >= 0) continue;
    int cyc = t.ncycles++;
    for (auto& [s, u] : walk_impl(cand, true)) t.seg_cycle[s] = cyc;
    anchor_seg.push_back(cand);
  }

  t.cycle_cuts.assign(t.ncycles, {});
  for (int j = 1; j <= w.width; ++j) {
    int cyc = t.seg_cycle[t.bottom_seg[j]];
    t.cut_cycle[j] = cyc;
    t.cycle_cuts[cyc].push_back(j);
  }

  // canonical paths: start at the lowest cut position flowing up, or at the
  // discovery segment (a cup's left strand) for internal circles
  t.cycle_path.resize(t.ncycles);
  for (int c = 0; c < t.ncycles; ++c) {
    int start = t.cycle_cuts[c].empty() ? anchor_seg[c] : t.bottom_seg[t.cycle_cuts[c].front()];
    t.cycle_path[c] = walk_impl(start, true);
    for (auto& [s, u] : t.cycle_path[c]) {
      int exit = port_of(s, u);
      if (closure_pos[exit]) {
        int j = closure_pos[exit];
        // exiting through the top strand means the closure runs top -> bottom
        t.cut_out_top[j] = (s == t.top_seg[j] && u);
      }
    }
  }
  return t;
}

std::vector<std::pair<int, bool>> ClosureTrace::walk(int seg, bool up) const {
  // reconstruct the path by following the stored canonical path of the cycle,
  // possibly reversed and rotated to start at (seg, up)
  int cyc = seg_cycle[seg];
  const auto& canon = cycle_path[cyc];
  auto run = [&](bool reversed) -> std::vector<std::pair<int, bool>> {
    std::vector<std::pair<int, bool>> p;
    p.reserve(canon.size());
    if (!reversed)
      p = canon;
    else
      for (size_t i = canon.size(); i-- > 0;) p.push_back({canon[i].first, !canon[i].second});
    auto it = std::find(p.begin(), p.end(), std::make_pair(seg, up));
    if (it == p.end()) return {};
    std::rotate(p.begin(), it, p.end());
    return p;
  };
  auto p = run(false);
  if (p.empty()) p = run(true);
  if (p.empty()) fail(Errc::internal_consistency, "walk anchor not on its cycle");
  return p;
}

std::vector<int> cycle_orient_flags(const TangleWord& w, const ClosureTrace& t) {
  std::vector<int> flags(t.ncycles, 1);
  for (const auto& [tid, f] : w.orient) {
    if (tid < 1 || tid > t.ncycles)
      fail(Errc::parse_error, "orient names unknown component " + std::to_string(tid));
    if (f != 1 && f != -1) fail(Errc::parse_error, "orient flag must be +1 or -1");
    flags[tid - 1] = f;
  }
  return flags;
}

bool actual_out_top(const ClosureTrace& t, const std::vector<int>& flags, int j) {
  bool canonical = t.cut_out_top[j];
  return flags[t.cut_cycle[j]] > 0 ? canonical : !canonical;
}

std::vector<int> cycle_labels(const TangleWord& w, const ClosureTrace& t, bool strict) {
  std::vector<int> lab(t.ncycles, 0);
  for (const auto& [tid, l] : w.labels) {
    if (tid < 1 || tid > t.ncycles) {
      if (strict) fail(Errc::parse_error, "label names unknown component " + std::to_string(tid));
      continue;
    }
    lab[tid - 1] = l;
  }
  if (strict) {
    std::vector<bool> seen(t.ncycles + 1, false);
    for (int c = 0; c < t.ncycles; ++c) {
      int l = lab[c];
      if (l < 1 || l > t.ncycles)
        fail(Errc::parse_error, "component " + std::to_string(c + 1) + " lacks a valid label");
      if (seen[l]) fail(Errc::parse_error, "duplicate link label " + std::to_string(l));
      seen[l] = true;
    }
  }
  return lab;
}

namespace {

struct Passage {
  int crossing;   // PD crossing id
  bool under;
  bool is_left;   // box crossings: entered from pos (left)
  bool up;        // traversal direction at the crossing
  bool axis_evt;  // axis-return crossings carry fixed roles
};

}  // namespace

PDiagram build_diagram(const TangleWord& w, const ClosureTrace& t, const DiagramOptions& opt) {
  std::vector<int> keep = opt.keep_cycles;
  if (keep.empty())
    for (int c = 0; c < t.ncycles; ++c) keep.push_back(c);
  std::sort(keep.begin(), keep.end());

  std::vector<int> comp_of_cycle(t.ncycles, 0);  // 0: dropped
  int ncomps = 0;
  if (!opt.comp_of_cycle.empty()) {
    for (int c : keep) {
      auto it = opt.comp_of_cycle.find(c);
      if (it == opt.comp_of_cycle.end())
        fail(Errc::internal_consistency, "kept cycle without component number");
      comp_of_cycle[c] = it->second;
      ncomps = std::max(ncomps, it->second);
    }
  } else {
    std::vector<int> lab = cycle_labels(w, t, true);
    for (int c : keep) {
      comp_of_cycle[c] = lab[c];
      ncomps = std::max(ncomps, lab[c]);
    }
  }
  if (opt.with_axis && static_cast<int>(keep.size()) != t.ncycles)
    fail(Errc::internal_consistency, "axis insertion requires the full closure");

  PDiagram d;
  d.ncomps = ncomps + (opt.with_axis ? 1 : 0);
  d.has_axis = opt.with_axis;
  int axis_comp = opt.with_axis ? d.ncomps : 0;

  // kept box crossings -> PD ids, then axis crossings (tops, then bottoms)
  std::vector<int> pd_of_crossing(t.crossings.size(), -1);
  int next_id = 0;
  for (size_t i = 0; i < t.crossings.size(); ++i) {
    const TraceCrossing& c = t.crossings[i];
    if (comp_of_cycle[t.seg_cycle[c.seg_left]] && comp_of_cycle[t.seg_cycle[c.seg_right]])
      pd_of_crossing[i] = next_id++;
  }
  int n_box = next_id;
  int axis_top_base = n_box, axis_bot_base = n_box + (opt.with_axis ? w.width : 0);
  int total_crossings = n_box + (opt.with_axis ? 2 * w.width : 0);

  struct XInfo {
    int sign = 0;
    bool left_up = false, right_up = false;
    bool have_left = false, have_right = false;
    int over_comp = 0, under_comp = 0;
  };
  std::vector<XInfo> xinfo(total_crossings);

  // traversal paths for the kept cycles, honouring the word's orient flags
  std::vector<int> flags = cycle_orient_flags(w, t);
  std::map<int, std::vector<std::pair<int, bool>>> paths;
  for (int c : keep) {
    auto it = opt.orient_anchor.find(c);
    if (it != opt.orient_anchor.end()) {
      paths[c] = t.walk(it->second.first, it->second.second);
    } else if (flags[c] > 0) {
      paths[c] = t.cycle_path[c];
    } else {
      paths[c] = t.walk(t.cycle_path[c].front().first, false);
    }
  }

  // per-component passages in traversal order
  std::map<int, std::vector<Passage>> comp_passages;  // comp -> passages
  std::vector<int> axis_sign(w.width + 1, 0);
  for (int c : keep) {
    int comp = comp_of_cycle[c];
    auto& ps = comp_passages[comp];
    for (auto& [seg, up] : paths[c]) {
      const auto& xs = t.seg_crossings[seg];
      auto visit = [&](const std::pair<int, bool>& sc) {
        int cid = sc.first;
        bool is_left = sc.second;
        if (pd_of_crossing[cid] < 0) return;
        const TraceCrossing& tc = t.crossings[cid];
        bool over = is_left ? (tc.sign > 0) : (tc.sign < 0);
        ps.push_back({pd_of_crossing[cid], !over, is_left, up, false});
        XInfo& xi = xinfo[pd_of_crossing[cid]];
        if (is_left) {
          xi.left_up = up;
          xi.have_left = true;
        } else {
          xi.right_up = up;
          xi.have_right = true;
        }
        (over ? xi.over_comp : xi.under_comp) = comp;
      };
      if (up)
        for (const auto& sc : xs) visit(sc);
      else
        for (size_t k = xs.size(); k-- > 0;) visit(xs[k]);

      if (opt.with_axis) {
        // closure connection taken after this segment, if any
        const TraceSeg& sg = t.segs[seg];
        bool closure_exit = up ? (sg.death_event < 0) : (sg.birth_event < 0);
        if (closure_exit && w.width > 0) {
          int j = up ? sg.death_pos : sg.birth_pos;
          bool out_top = up;  // exiting through the top strand
          axis_sign[j] = out_top ? 1 : -1;
          int top_id = axis_top_base + j - 1, bot_id = axis_bot_base + j - 1;
          if (out_top) {
            ps.push_back({top_id, true, false, false, true});
            ps.push_back({bot_id, false, false, false, true});
          } else {
            ps.push_back({bot_id, false, false, false, true});
            ps.push_back({top_id, true, false, false, true});
          }
          xinfo[top_id].under_comp = comp;
          xinfo[bot_id].over_comp = comp;
        }
      }
    }
  }

  if (opt.with_axis) {
    auto& ps = comp_passages[axis_comp];
    for (int j = 1; j <= w.width; ++j) {
      ps.push_back({axis_top_base + j - 1, false, false, false, true});
      xinfo[axis_top_base + j - 1].over_comp = axis_comp;
    }
    for (int j = w.width; j >= 1; --j) {
      ps.push_back({axis_bot_base + j - 1, true, false, false, true});
      xinfo[axis_bot_base + j - 1].under_comp = axis_comp;
    }
    for (int j = 1; j <= w.width; ++j) {
      if (axis_sign[j] == 0) fail(Errc::internal_consistency, "closure strand never traversed");
      xinfo[axis_top_base + j - 1].sign = axis_sign[j];
      xinfo[axis_bot_base + j - 1].sign = axis_sign[j];
    }
    if (comp_passages.find(axis_comp) == comp_passages.end())
      comp_passages[axis_comp] = {};
  }

  for (size_t i = 0; i < t.crossings.size(); ++i) {
    if (pd_of_crossing[i] < 0) continue;
    XInfo& xi = xinfo[pd_of_crossing[i]];
    if (!xi.have_left || !xi.have_right)
      fail(Errc::malformed_diagram, "crossing missing a passage");
    xi.sign = t.crossings[i].sign * (xi.left_up == xi.right_up ? 1 : -1);
  }

  // components present even when they have no passages
  for (int c : keep) comp_passages.try_emplace(comp_of_cycle[c]);

  d.crossings.assign(total_crossings, PDCrossing{-1, -1, -1, 0});
  for (int x = 0; x < total_crossings; ++x) d.crossings[x].sign = xinfo[x].sign;
  d.base_arc.assign(d.ncomps + 1, -1);
  d.comp_unders.assign(d.ncomps + 1, {});
  d.writhe.assign(d.ncomps + 1, 0);

  for (int comp = 1; comp <= d.ncomps; ++comp) {
    auto it = comp_passages.find(comp);
    if (it == comp_passages.end())
      fail(Errc::malformed_diagram, "component " + std::to_string(comp) + " missing");
    const auto& ps = it->second;
    std::vector<size_t> unders;
    for (size_t k = 0; k < ps.size(); ++k)
      if (ps[k].under) unders.push_back(k);

    int arc_base = d.arcs();
    int narcs = unders.empty() ? 1 : static_cast<int>(unders.size());
    for (int r = 0; r < narcs; ++r) d.arc_comp.push_back(comp);
    d.base_arc[comp] = arc_base;

    if (unders.empty()) {
      for (const Passage& p : ps) d.crossings[p.crossing].over_arc = arc_base;
      continue;
    }
    // arc r ends at under r; over-passages between unders r-1 and r sit on arc r
    size_t k = unders.size();
    auto arc_of = [&](size_t idx) {
      // first under strictly greater than idx, cyclically
      auto up = std::upper_bound(unders.begin(), unders.end(), idx);
      size_t r = up == unders.end() ? 0 : static_cast<size_t>(up - unders.begin());
      return arc_base + static_cast<int>(r);
    };
    for (size_t idx = 0; idx < ps.size(); ++idx) {
      const Passage& p = ps[idx];
      if (!p.under) {
        d.crossings[p.crossing].over_arc = arc_of(idx);
      } else {
        size_t r = static_cast<size_t>(std::lower_bound(unders.begin(), unders.end(), idx) -
                                       unders.begin());
        d.crossings[p.crossing].under_in = arc_base + static_cast<int>(r);
        d.crossings[p.crossing].under_out = arc_base + static_cast<int>((r + 1) % k);
        d.comp_unders[comp].push_back(p.crossing);
      }
    }
  }

  for (int x = 0; x < total_crossings; ++x) {
    const XInfo& xi = xinfo[x];
    if (xi.over_comp == xi.under_comp) d.writhe[xi.over_comp] += xi.sign;
    if (d.crossings[x].over_arc < 0 || d.crossings[x].under_in < 0)
      fail(Errc::malformed_diagram, "incomplete crossing record");
  }

  // drop the unused 0 slot convention: base_arc etc are 1-based by component
  return d;
}

PDiagram annular_closure(const TangleWord& w) {
  ClosureTrace t = trace_closure(w);
  return build_diagram(w, t, DiagramOptions{});
}

MarkedLink insert_axis(const TangleWord& w) {
  ClosureTrace t = trace_closure(w);
  DiagramOptions opt;
  opt.with_axis = true;
  MarkedLink m;
  m.diagram = build_diagram(w, t, opt);
  m.axis = m.diagram.ncomps;
  for (int i = 1; i < m.diagram.ncomps; ++i)
    m.axis_lk.push_back(linking_number(m.diagram, m.axis, i));
  return m;
}

int axis_linking(const TangleWord& w, int comp) {
  ClosureTrace t = trace_closure(w);
  std::vector<int> lab = cycle_labels(w, t, true);
  std::vector<int> flags = cycle_orient_flags(w, t);
  int cyc = -1;
  for (int c = 0; c < t.ncycles; ++c)
    if (lab[c] == comp) cyc = c;
  if (cyc < 0) fail(Errc::unknown_component, "no component labeled " + std::to_string(comp));
  int s = 0;
  for (int j : t.cycle_cuts[cyc]) s += actual_out_top(t, flags, j) ? 1 : -1;
  return s;
}

int linking_number(const PDiagram& d, int i, int j) {
  if (i == j) fail(Errc::parameter_mismatch, "linking number needs distinct components");
  int sum = 0;
  for (const PDCrossing& c : d.crossings) {
    int co = d.arc_comp[c.over_arc], cu = d.arc_comp[c.under_in];
    if ((co == i && cu == j) || (co == j && cu == i)) sum += c.sign;
  }
  if (sum % 2 != 0) fail(Errc::internal_consistency, "odd inter-component crossing sum");
  return sum / 2;
}

std::string pd_to_json(const PDiagram& d) {
  std::ostringstream os;
  os << "{\"components\":" << d.ncomps;
  os << ",\"axis\":" << (d.has_axis ? std::to_string(d.ncomps) : std::string("null"));
  os << ",\"arcs\":[";
  for (int a = 0; a < d.arcs(); ++a) {
    if (a) os << ",";
    os << "{\"id\":" << a << ",\"component\":" << d.arc_comp[a] << "}";
  }
  os << "],\"crossings\":[";
  for (size_t x = 0; x < d.crossings.size(); ++x) {
    const PDCrossing& c = d.crossings[x];
    if (x) os << ",";
    os << "{\"id\":" << x << ",\"over\":" << c.over_arc << ",\"under_in\":" << c.under_in
       << ",\"under_out\":" << c.under_out << ",\"sign\":" << c.sign << "}";
  }
  os << "]}";
  return os.str();
}

}  // namespace covmil
