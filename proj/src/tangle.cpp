#include "covmil/tangle.hpp"

#include <algorithm>
#include <sstream>

#include "covmil/diagram.hpp"
#include "covmil/errors.hpp"

namespace covmil {

namespace {

int width_after(const TangleWord& w, int upto, bool check) {
  int cur = w.width;
  for (int i = 0; i < upto; ++i) {
    const MorseEvent& e = w.events[i];
    switch (e.kind) {
      case MorseEvent::Kind::Cross:
        if (check && (e.pos < 1 || e.pos + 1 > cur))
          fail(Errc::parse_error, "crossing position out of range at event " + std::to_string(i));
        break;
      case MorseEvent::Kind::Cup:
        if (check && (e.pos < 1 || e.pos > cur + 1))
          fail(Errc::parse_error, "cup position out of range at event " + std::to_string(i));
        cur += 2;
        break;
      case MorseEvent::Kind::Cap:
        if (check && (e.pos < 1 || e.pos + 1 > cur))
          fail(Errc::parse_error, "cap position out of range at event " + std::to_string(i));
        cur -= 2;
        break;
    }
  }
  return cur;
}

}  // namespace

void TangleWord::validate_structure() const {
  if (width < 0) fail(Errc::parse_error, "negative width");
  int final_w = width_after(*this, static_cast<int>(events.size()), true);
  if (final_w != width)
    fail(Errc::parse_error, "final width " + std::to_string(final_w) +
                                " does not match declared m=" + std::to_string(width));
}

int TangleWord::component_count() const {
  return trace_closure(*this).ncycles;
}

void TangleWord::validate() const {
  validate_structure();
  ClosureTrace t = trace_closure(*this);
  cycle_labels(*this, t, true);
  cycle_orient_flags(*this, t);
}

TangleWord parse_tangle(const std::string& text) {
  TangleWord w;
  bool have_m = false;
  std::vector<std::string> tokens;
  {
    std::string norm = text;
    std::replace(norm.begin(), norm.end(), ';', '\n');
    std::istringstream lines(norm);
    std::string line;
    while (std::getline(lines, line)) {
      if (auto h = line.find('#'); h != std::string::npos) line.erase(h);
      std::istringstream ls(line);
      std::string tok;
      while (ls >> tok) tokens.push_back(tok);
    }
  }
  for (size_t i = 0; i < tokens.size(); ++i) {
    const std::string& tok = tokens[i];
    auto need_next = [&](const char* what) -> const std::string& {
      if (i + 1 >= tokens.size()) fail(Errc::parse_error, std::string("missing operand after ") + what);
      return tokens[++i];
    };
    auto to_int = [&](const std::string& s) {
      try {
        size_t pos = 0;
        int v = std::stoi(s, &pos);
        if (pos != s.size()) throw std::invalid_argument(s);
        return v;
      } catch (...) {
        fail(Errc::parse_error, "bad integer '" + s + "'");
      }
    };
    if (tok.rfind("m=", 0) == 0) {
      w.width = to_int(tok.substr(2));
      have_m = true;
    } else if (tok == "name") {
      w.name = need_next("name");
    } else if (tok == "label") {
      int trace_id = to_int(need_next("label"));
      int lab = to_int(need_next("label"));
      if (w.labels.count(trace_id))
        fail(Errc::parse_error, "duplicate label for component " + std::to_string(trace_id));
      w.labels[trace_id] = lab;
    } else if (tok == "orient") {
      int trace_id = to_int(need_next("orient"));
      int f = to_int(need_next("orient"));
      if (f != 1 && f != -1) fail(Errc::parse_error, "orient flag must be +1 or -1");
      w.orient[trace_id] = f;
    } else if (tok[0] == 'X' || tok[0] == 'U' || tok[0] == 'A') {
      char k = tok[0];
      std::string body = tok.substr(1);
      int sign = 0;
      if (k == 'X') {
        if (body.empty() || (body.back() != '+' && body.back() != '-'))
          fail(Errc::parse_error, "crossing token needs +/-: '" + tok + "'");
        sign = body.back() == '+' ? 1 : -1;
        body.pop_back();
      }
      int pos = to_int(body);
      if (k == 'X')
        w.events.push_back(MorseEvent::cross(pos, sign));
      else if (k == 'U')
        w.events.push_back(MorseEvent::cup(pos));
      else
        w.events.push_back(MorseEvent::cap(pos));
    } else {
      fail(Errc::parse_error, "unrecognized token '" + tok + "'");
    }
  }
  if (!have_m) fail(Errc::parse_error, "missing m=<width> header");
  w.validate();
  return w;
}

std::string to_text(const TangleWord& w) {
  std::ostringstream os;
  if (!w.name.empty()) os << "name " << w.name << "\n";
  os << "m=" << w.width << "\n";
  int col = 0;
  for (const MorseEvent& e : w.events) {
    std::string tok;
    switch (e.kind) {
      case MorseEvent::Kind::Cross:
        tok = "X" + std::to_string(e.pos) + (e.sign > 0 ? "+" : "-");
        break;
      case MorseEvent::Kind::Cup:
        tok = "U" + std::to_string(e.pos);
        break;
      case MorseEvent::Kind::Cap:
        tok = "A" + std::to_string(e.pos);
        break;
    }
    os << tok;
    if (++col % 16 == 0)
      os << "\n";
    else
      os << " ";
  }
  if (col % 16 != 0) os << "\n";
  for (const auto& [tid, lab] : w.labels) os << "label " << tid << " " << lab << "\n";
  for (const auto& [tid, f] : w.orient)
    if (f == -1) os << "orient " << tid << " -1\n";
  return os.str();
}

namespace {

// One cyclic rotation: the first event slides past the closure to the end of
// the word. Labels and orientations belong to the curves, so both are carried
// over by matching each rotated segment to its original strand and comparing
// the traversal flow there.
TangleWord rotate_once(const TangleWord& w) {
  ClosureTrace old_t = trace_closure(w);
  std::vector<int> old_labels = cycle_labels(w, old_t, true);
  std::vector<int> old_flags = cycle_orient_flags(w, old_t);

  // flow of each original segment under the word's actual orientation
  std::vector<bool> old_seg_up(old_t.segs.size(), true);
  for (int c = 0; c < old_t.ncycles; ++c)
    for (auto& [seg, up] : old_t.cycle_path[c])
      old_seg_up[seg] = old_flags[c] > 0 ? up : !up;

  const MorseEvent e0 = w.events.front();
  const int nevents = static_cast<int>(w.events.size());
  TangleWord r;
  r.name = w.name;
  r.events.assign(w.events.begin() + 1, w.events.end());
  r.events.push_back(e0);
  r.width = width_after(w, 1, false);
  r.validate_structure();

  ClosureTrace new_t = trace_closure(r);

  auto old_cup_seg = [&](int event, bool left) -> int {
    for (size_t s = 0; s < old_t.segs.size(); ++s)
      if (old_t.segs[s].birth_event == event && old_t.segs[s].birth_left == left)
        return static_cast<int>(s);
    fail(Errc::internal_consistency, "missing cup segment");
  };

  // original segment corresponding to a rotated one (same strand of the curve)
  auto counterpart = [&](int new_seg) -> int {
    const TraceSeg& sg = new_t.segs[new_seg];
    if (sg.birth_event >= 0) {
      if (sg.birth_event == nevents - 1) return old_cup_seg(0, sg.birth_left);  // the moved cup
      return old_cup_seg(sg.birth_event + 1, sg.birth_left);
    }
    int j = sg.birth_pos;
    switch (e0.kind) {
      case MorseEvent::Kind::Cross: {
        int old_pos = j == e0.pos ? j + 1 : (j == e0.pos + 1 ? j - 1 : j);
        return old_t.bottom_seg[old_pos];
      }
      case MorseEvent::Kind::Cup:
        if (j == e0.pos || j == e0.pos + 1) return old_cup_seg(0, j == e0.pos);
        return old_t.bottom_seg[j < e0.pos ? j : j - 2];
      case MorseEvent::Kind::Cap:
        return old_t.bottom_seg[j < e0.pos ? j : j + 2];
    }
    fail(Errc::internal_consistency, "unreachable");
  };

  for (int c = 0; c < new_t.ncycles; ++c) {
    auto [witness, canonical_up] = new_t.cycle_path[c].front();
    int old_seg = counterpart(witness);
    int old_cycle = old_t.seg_cycle[old_seg];
    r.labels[c + 1] = old_labels[old_cycle];
    if (old_seg_up[old_seg] != canonical_up) r.orient[c + 1] = -1;
  }
  r.validate();
  return r;
}

}  // namespace

TangleWord word_rewrite(const TangleWord& w, const RewriteMove& move) {
  w.validate();
  switch (move.kind) {
    case RewriteKind::CyclicRotation:
      if (w.events.empty()) fail(Errc::rewrite_error, "nothing to rotate");
      return rotate_once(w);
    case RewriteKind::InsertR2: {
      if (move.pos < 1 || move.pos + 1 > w.width)
        fail(Errc::rewrite_error, "R2 position out of range");
      TangleWord r = w;
      r.events.push_back(MorseEvent::cross(move.pos, 1));
      r.events.push_back(MorseEvent::cross(move.pos, -1));
      r.validate();
      return r;
    }
    case RewriteKind::RemoveR2: {
      size_t n = w.events.size();
      if (n < 2) fail(Errc::rewrite_error, "no trailing R2 pair");
      const MorseEvent& a = w.events[n - 2];
      const MorseEvent& b = w.events[n - 1];
      bool ok = a.kind == MorseEvent::Kind::Cross && b.kind == MorseEvent::Kind::Cross &&
                a.pos == move.pos && b.pos == move.pos && a.sign == -b.sign;
      if (!ok) fail(Errc::rewrite_error, "trailing events are not a cancelling pair at position " +
                                             std::to_string(move.pos));
      TangleWord r = w;
      r.events.resize(n - 2);
      r.validate();
      return r;
    }
  }
  fail(Errc::rewrite_error, "unknown move");
}

}  // namespace covmil
