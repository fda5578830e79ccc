#include "covmil/brunnian.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <sstream>

#include "covmil/diagram.hpp"
#include "covmil/errors.hpp"

namespace covmil {

namespace {

/// Emits Morse events while tracking which strand occupies which slot.
class WordBuilder {
public:
  explicit WordBuilder(int bottom_width) {
    for (int i = 0; i < bottom_width; ++i) {
      slots_.push_back(next_id_);
      bottom_.push_back(next_id_);
      ++next_id_;
    }
  }

  int width() const { return static_cast<int>(slots_.size()); }
  int bottom_strand(int pos) const { return bottom_[pos - 1]; }

  int slot_of(int strand) const {
    for (int i = 0; i < width(); ++i)
      if (slots_[i] == strand) return i + 1;
    fail(Errc::internal_consistency, "strand is not live");
  }

  void cross(int pos, bool over_left) {
    events_.push_back(MorseEvent::cross(pos, over_left ? 1 : -1));
    std::swap(slots_[pos - 1], slots_[pos]);
  }

  std::pair<int, int> cup(int pos) {
    events_.push_back(MorseEvent::cup(pos));
    int l = next_id_++, r = next_id_++;
    slots_.insert(slots_.begin() + (pos - 1), {l, r});
    return {l, r};
  }

  void cap_at(int pos) {
    events_.push_back(MorseEvent::cap(pos));
    slots_.erase(slots_.begin() + (pos - 1), slots_.begin() + (pos + 1));
  }

  // one slot left/right, passing over the neighbor
  void step_over_right(int strand) { cross(slot_of(strand), true); }
  void step_over_left(int strand) { cross(slot_of(strand) - 1, false); }

  void move_over_to(int strand, int target_slot) {
    while (slot_of(strand) < target_slot) step_over_right(strand);
    while (slot_of(strand) > target_slot) step_over_left(strand);
  }

  const std::vector<int>& slots() const { return slots_; }
  std::vector<MorseEvent> take_events() { return std::move(events_); }

private:
  std::vector<int> slots_, bottom_;
  std::vector<MorseEvent> events_;
  int next_id_ = 0;
};

std::vector<std::pair<int, int>> bracket_letters(const std::vector<int>& seq) {
  std::vector<std::pair<int, int>> w{{seq[0], 1}};
  for (size_t k = 1; k < seq.size(); ++k) {
    std::vector<std::pair<int, int>> prev = w, inv;
    for (auto it = prev.rbegin(); it != prev.rend(); ++it) inv.push_back({it->first, -it->second});
    w = std::move(inv);
    w.push_back({seq[k], -1});
    w.insert(w.end(), prev.begin(), prev.end());
    w.push_back({seq[k], 1});
  }
  return w;
}

struct Eye {
  int rail_left;
  int rail_right;
};

/// Thread `head` through the eye: travel left passing over everything, cross
/// the two rails with the over/under pair that realizes meridian sign `s` for
/// an upward-flowing head, come back over both rails.
void pierce(WordBuilder& b, int head, const Eye& eye, int s) {
  int home = b.slot_of(head);
  int x = b.slot_of(eye.rail_left);
  if (b.slot_of(eye.rail_right) != x + 1)
    fail(Errc::internal_consistency, "eye rails are not adjacent");
  if (home <= x + 1) fail(Errc::internal_consistency, "head sits left of the eye");
  b.move_over_to(head, x + 2);
  // s = +1: over the right rail, under the left one; s = -1 flips
  b.cross(x + 1, s > 0 ? false : true);
  b.cross(x, s > 0 ? true : false);
  // return pass, over both rails
  b.cross(x, true);
  b.cross(x + 1, true);
  b.move_over_to(head, home);
}

}  // namespace

TangleWord weave_commutator(int ncomps, int weaver, const std::vector<int>& bracket, bool mirror,
                            const std::string& name) {
  int axis = ncomps + 1;
  if (weaver < 1 || weaver > ncomps) fail(Errc::parameter_mismatch, "weaver out of range");
  for (int c : bracket)
    if (c < 1 || c > axis || c == weaver)
      fail(Errc::parameter_mismatch, "bracket entries must avoid the weaver");

  auto letters = bracket_letters(bracket);

  std::vector<size_t> axis_at;
  for (size_t i = 0; i < letters.size(); ++i)
    if (letters[i].first == axis) axis_at.push_back(i);
  int T = static_cast<int>(axis_at.size());
  if (T < 2 || T % 2 != 0)
    fail(Errc::unsupported_size, "weave needs an even number of axis letters");

  // eyes for the distinct non-axis bracket components, in label order
  std::vector<int> eye_comps;
  for (auto& [c, s] : letters)
    if (c != axis && std::find(eye_comps.begin(), eye_comps.end(), c) == eye_comps.end())
      eye_comps.push_back(c);
  std::sort(eye_comps.begin(), eye_comps.end());
  {
    std::set<int> have(eye_comps.begin(), eye_comps.end());
    have.insert(weaver);
    for (int c = 1; c <= ncomps; ++c)
      if (!have.count(c))
        fail(Errc::parameter_mismatch, "component " + std::to_string(c) + " unused by the weave");
  }

  int E = static_cast<int>(eye_comps.size());
  int m = 2 * E + T;
  WordBuilder b(m);

  std::map<int, Eye> eyes;  // component -> rails
  for (int e = 0; e < E; ++e)
    eyes[eye_comps[e]] = {b.bottom_strand(2 * e + 1), b.bottom_strand(2 * e + 2)};

  auto transit_pos = [&](int t) { return 2 * E + t; };  // t is 1-based
  // transit direction: out-the-top iff the axis letter is positive
  auto out_top = [&](int t) { return letters[axis_at[t - 1]].second > 0; };

  std::map<int, int> top_target;  // strand -> top boundary position

  auto do_letters = [&](int head, const std::vector<std::pair<int, int>>& ls, bool flow_up) {
    if (flow_up) {
      for (auto& [c, s] : ls) pierce(b, head, eyes.at(c), s);
    } else {
      for (auto it = ls.rbegin(); it != ls.rend(); ++it)
        pierce(b, head, eyes.at(it->first), -it->second);
    }
  };

  for (int t = 1; t <= T; ++t) {
    int tn = t % T + 1;  // following transit
    // letters strictly between axis letters t and t+1, cyclically
    std::vector<std::pair<int, int>> ls;
    size_t from = axis_at[t - 1] + 1;
    size_t to = t < T ? axis_at[t] : letters.size();
    for (size_t i = from; i < to; ++i) ls.push_back(letters[i]);
    if (t == T)
      for (size_t i = 0; i < axis_at[0]; ++i) ls.push_back(letters[i]);

    bool d0 = out_top(t), d1 = out_top(tn);
    if (d0 && !d1) {
      // bottom-to-bottom finger: rise, thread, cap with the next transit strand
      int head = b.bottom_strand(transit_pos(t));
      int partner = b.bottom_strand(transit_pos(tn));
      do_letters(head, ls, true);
      int ps = b.slot_of(partner);
      if (b.slot_of(head) < ps) {
        b.move_over_to(head, ps - 1);
        b.cap_at(ps - 1);
      } else {
        b.move_over_to(head, ps + 1);
        b.cap_at(ps);
      }
    } else if (d0 && d1) {
      // through strand flowing up
      int head = b.bottom_strand(transit_pos(t));
      do_letters(head, ls, true);
      top_target[head] = transit_pos(tn);
    } else if (!d0 && d1) {
      // top-to-top finger: cup, thread with the rising side
      auto [rail, head] = b.cup(b.width() + 1);
      do_letters(head, ls, true);
      top_target[rail] = transit_pos(t);
      top_target[head] = transit_pos(tn);
    } else {
      // through strand flowing down: the next transit's bottom strand rises
      // to this transit's top; letters run against the word direction
      int head = b.bottom_strand(transit_pos(tn));
      do_letters(head, ls, false);
      top_target[head] = transit_pos(t);
    }
  }

  // close the eyes: cap the rails, open the top pair in place
  for (int c : eye_comps) {
    int x = b.slot_of(eyes[c].rail_left);
    if (b.slot_of(eyes[c].rail_right) != x + 1)
      fail(Errc::internal_consistency, "eye rails drifted");
    b.cap_at(x);
    auto [l, r] = b.cup(x);
    top_target[l] = x;
    top_target[r] = x + 1;
  }

  if (b.width() != m) fail(Errc::internal_consistency, "weave width mismatch");

  // sort live strands to their top positions (adjacent swaps, self crossings)
  for (bool moved = true; moved;) {
    moved = false;
    for (int p = 1; p < m; ++p) {
      int a = b.slots()[p - 1], c = b.slots()[p];
      if (top_target.at(a) > top_target.at(c)) {
        b.cross(p, true);
        moved = true;
      }
    }
  }

  TangleWord w;
  w.width = m;
  w.name = name;
  w.events = b.take_events();
  if (mirror)
    for (MorseEvent& e : w.events)
      if (e.kind == MorseEvent::Kind::Cross) e.sign = -e.sign;
  w.validate_structure();

  // label traced components through known bottom strands
  ClosureTrace t = trace_closure(w);
  if (t.ncycles != ncomps) fail(Errc::internal_consistency, "weave produced wrong component count");
  std::map<int, int> label_of_cycle;
  for (int e = 0; e < E; ++e)
    label_of_cycle[t.seg_cycle[t.bottom_seg[2 * e + 1]]] = eye_comps[e];
  label_of_cycle[t.seg_cycle[t.bottom_seg[2 * E + 1]]] = weaver;
  if (static_cast<int>(label_of_cycle.size()) != ncomps)
    fail(Errc::internal_consistency, "weave component labelling collapsed");
  for (auto& [cyc, lab] : label_of_cycle) w.labels[cyc + 1] = lab;
  w.validate();
  return w;
}

TangleWord milnor_link(const MilnorLinkSpec& spec) {
  int k = static_cast<int>(spec.index.size());
  if (k < 3 || k > 6)
    fail(Errc::unsupported_size, "o-index length must be between 3 and 6");
  {
    std::set<int> s(spec.index.begin(), spec.index.end());
    if (static_cast<int>(s.size()) != k || *s.begin() != 1 || *s.rbegin() != k)
      fail(Errc::parameter_mismatch, "o-index must be a permutation of 1..n+1");
  }
  int axis = k;
  int weaver;
  std::vector<int> bracket;
  if (spec.index.back() != axis) {
    weaver = spec.index.back();
    bracket.assign(spec.index.begin(), spec.index.end() - 1);
  } else {
    weaver = spec.index.front();
    bracket.assign(spec.index.rbegin(), spec.index.rend() - 1);
  }
  std::ostringstream nm;
  nm << "milnor";
  for (int i : spec.index) nm << "_" << i;
  if (spec.sign < 0) nm << "_m";
  return weave_commutator(k - 1, weaver, bracket, spec.sign < 0, nm.str());
}

TangleWord trivial_word(int n) {
  if (n < 1 || n > kMaxVars - 1) fail(Errc::unsupported_size, "component count out of range");
  WordBuilder b(2 * n);
  std::map<int, int> top_target;
  for (int i = 1; i <= n; ++i) {
    int x = b.slot_of(b.bottom_strand(2 * i - 1));
    b.cap_at(x);
    auto [l, r] = b.cup(x);
    top_target[l] = 2 * i - 1;
    top_target[r] = 2 * i;
  }
  TangleWord w;
  w.width = 2 * n;
  w.name = "trivial_" + std::to_string(n);
  w.events = b.take_events();
  ClosureTrace t = trace_closure(w);
  if (t.ncycles != n) fail(Errc::internal_consistency, "trivial word component count");
  for (int i = 1; i <= n; ++i)
    w.labels[t.seg_cycle[t.bottom_seg[2 * i - 1]] + 1] = i;
  w.validate();
  return w;
}

TangleWord band_sum(const TangleWord& a, const TangleWord& b) {
  a.validate();
  b.validate();
  ClosureTrace ta = trace_closure(a), tb = trace_closure(b);
  std::vector<int> la = cycle_labels(a, ta, true), lb = cycle_labels(b, tb, true);
  std::vector<int> fa = cycle_orient_flags(a, ta), fb = cycle_orient_flags(b, tb);
  int n = ta.ncycles;
  if (tb.ncycles != n)
    fail(Errc::composition_error, "summands have different component counts");

  std::vector<int> cyc_a(n + 1, -1), cyc_b(n + 1, -1);
  for (int c = 0; c < n; ++c) cyc_a[la[c]] = c;
  for (int c = 0; c < n; ++c) cyc_b[lb[c]] = c;

  // a must exit through the top, b through the bottom, once per component
  std::vector<int> exit_top(n + 1, 0), enter_bot(n + 1, 0);
  for (int i = 1; i <= n; ++i) {
    for (int j : ta.cycle_cuts[cyc_a[i]])
      if (actual_out_top(ta, fa, j)) {
        exit_top[i] = j;
        break;
      }
    for (int j : tb.cycle_cuts[cyc_b[i]])
      if (!actual_out_top(tb, fb, j)) {
        enter_bot[i] = j;
        break;
      }
    if (!exit_top[i] || !enter_bot[i])
      fail(Errc::composition_error,
           "component " + std::to_string(i) + " has no cut to fuse through");
  }

  WordBuilder wb(a.width + b.width);
  auto replay = [&](const TangleWord& w, int shift) {
    for (const MorseEvent& e : w.events) {
      switch (e.kind) {
        case MorseEvent::Kind::Cross:
          wb.cross(e.pos + shift, e.sign > 0);
          break;
        case MorseEvent::Kind::Cup:
          wb.cup(e.pos + shift);
          break;
        case MorseEvent::Kind::Cap:
          wb.cap_at(e.pos + shift);
          break;
      }
    }
  };
  replay(a, 0);
  for (int i = 1; i <= n; ++i) {
    int head = wb.slots()[exit_top[i] - 1];
    int target_slot = a.width + enter_bot[i];
    wb.move_over_to(head, target_slot - 1);
    wb.cap_at(target_slot - 1);
    auto [band_back, continuation] = wb.cup(target_slot - 1);
    (void)continuation;
    wb.move_over_to(band_back, exit_top[i]);
  }
  replay(b, a.width);

  TangleWord s;
  s.width = a.width + b.width;
  s.name = a.name.empty() || b.name.empty() ? "bandsum" : a.name + "+" + b.name;
  s.events = wb.take_events();
  s.validate_structure();
  ClosureTrace ts = trace_closure(s);
  if (ts.ncycles != n) fail(Errc::composition_error, "band sum did not fuse component pairs");
  for (int i = 1; i <= n; ++i) {
    int j = ta.cycle_cuts[cyc_a[i]].empty() ? 0 : ta.cycle_cuts[cyc_a[i]].front();
    if (!j) fail(Errc::composition_error, "component without cut strands");
    int cyc = ts.seg_cycle[ts.bottom_seg[j]];
    s.labels[cyc + 1] = i;
    // the fused component keeps a's flow at a's lowest cut
    if (!actual_out_top(ta, fa, j)) s.orient[cyc + 1] = -1;
  }
  s.validate();
  return s;
}

namespace {

std::vector<CorpusEntry> build_corpus() {
  std::vector<CorpusEntry> v;

  // trivial_N is the N-component trivial link: N-1 word components plus axis
  for (int n = 2; n <= 5; ++n) {
    CorpusEntry e;
    e.name = "trivial_" + std::to_string(n);
    e.word = trivial_word(n - 1);
    e.word.name = e.name;
    e.expected.push_back({"mubar_zero", Index({1, 2}), 0, {0}, "derived"});
    v.push_back(std::move(e));
  }

  {
    CorpusEntry e;
    e.name = "hopf";
    e.word = parse_tangle("name hopf\nm=2\nX1+ X1+\nlabel 1 1\nlabel 2 2\n");
    e.expected.push_back({"mubar_abs", Index({1, 2}), 0, {1}, "derived"});
    v.push_back(std::move(e));
  }

  {
    CorpusEntry e;
    e.name = "borromean_axis3";
    TangleWord w = milnor_link({{1, 3, 2}, 1});
    w.name = "borromean_axis3";
    e.word = std::move(w);
    e.expected.push_back({"mubar_abs", Index({1, 3, 2}), 0, {1}, "published"});
    e.expected.push_back({"mubar_abs", Index({1, 2, 3}), 0, {1}, "published"});
    e.expected.push_back({"mubar_zero", Index({1, 2}), 0, {0}, "published"});
    e.expected.push_back({"mset_upto_sign", Index({1, 2}), 0, {1, -1}, "published"});
    v.push_back(std::move(e));
  }

  {
    // the companion link: borromean word composed with a degree-3 clasp whose
    // middle leaves grasp the axis twice; mirrored so the covering linking
    // numbers move from {1,-1} to {3,-3} while everything of length <= 3 stays
    CorpusEntry e;
    e.name = "Lprime";
    TangleWord base = milnor_link({{1, 3, 2}, 1});
    TangleWord clasp = weave_commutator(2, 2, {1, 3, 3}, true, "c3_clasp");
    TangleWord w = band_sum(base, clasp);
    w.name = "Lprime";
    e.word = std::move(w);
    e.expected.push_back({"mset_upto_sign", Index({1, 2}), 0, {3, -3}, "published"});
    e.expected.push_back({"mubar_abs", Index({1, 3, 2}), 0, {1}, "published"});
    e.expected.push_back({"mubar_zero", Index({1, 2}), 0, {0}, "published"});
    v.push_back(std::move(e));
  }

  {
    CorpusEntry e;
    e.name = "milnor_1234";
    e.word = milnor_link({{1, 2, 3, 4}, 1});
    e.expected.push_back({"mubar_abs", Index({1, 2, 3, 4}), 0, {1}, "derived"});
    e.expected.push_back({"mubar_zero", Index({1, 3, 2, 4}), 0, {0}, "derived"});
    v.push_back(std::move(e));
  }

  return v;
}

}  // namespace

const std::vector<CorpusEntry>& corpus() {
  static const std::vector<CorpusEntry> c = build_corpus();
  return c;
}

const CorpusEntry& corpus_entry(const std::string& name) {
  for (const CorpusEntry& e : corpus())
    if (e.name == name) return e;
  fail(Errc::unknown_component, "no corpus entry named '" + name + "'");
}

}  // namespace covmil
