#include "covmil/verify.hpp"

#include <algorithm>
#include <set>
#include <sstream>

#include "covmil/brunnian.hpp"
#include "covmil/errors.hpp"

namespace covmil {

std::vector<LiftSelection> eps_set(const Index& I, int n) {
  int len = I.length();
  if (len != n + 1) fail(Errc::invalid_index, "index length must be n+1");
  std::set<int> seen(I.seq.begin(), I.seq.end());
  if (static_cast<int>(seen.size()) != len || *seen.begin() != 1 || *seen.rbegin() != n + 1)
    fail(Errc::invalid_index, "index must arrange 1..n+1 without repeats");
  int k = 0;
  for (int i = 0; i < len; ++i)
    if (I.seq[i] == n + 1) k = i + 1;
  if (k < 2 || k > n)
    fail(Errc::invalid_index, "the axis entry must sit strictly inside the sequence");
  int left = I.seq[k - 2], right = I.seq[k];
  std::vector<LiftSelection> out;
  for (unsigned mask = 0; mask < (1u << n); ++mask) {
    std::vector<int> e(n);
    for (int i = 0; i < n; ++i) e[i] = (mask >> i) & 1;
    if (e[left - 1] == 0 && e[right - 1] == 0) out.push_back(LiftSelection(e));
  }
  std::sort(out.begin(), out.end());
  return out;
}

VerifyReport verify_mod2(const TangleWord& w, const Index& I, int q) {
  w.validate();
  ClosureTrace t = trace_closure(w);
  int n = t.ncycles;
  if (q < n + 1) fail(Errc::parameter_mismatch, "q must be at least the index length");

  VerifyReport rep;
  rep.input = w.name;
  rep.I = I;
  rep.eps = eps_set(I, n);
  for (int i = 0; i < I.length(); ++i)
    if (I.seq[i] == n + 1) rep.k = i + 1;

  MarkedLink marked = insert_axis(w);

  // Brunnian hypothesis: every invariant of length <= n vanishes
  {
    MilnorEngine eng(marked.diagram, Modulus(0), std::max(2, n));
    std::vector<std::vector<int>> stack;
    for (int len = 2; len <= n; ++len) {
      std::vector<int> idx(len, 1);
      while (true) {
        Index J(idx);
        if (J.non_repeated() && !eng.mu(J).is_zero())
          fail(Errc::hypothesis_violation,
               "input is not Brunnian: mu(" + J.to_string() + ") != 0");
        int pos = len - 1;
        while (pos >= 0 && idx[pos] == n + 1) idx[pos--] = 1;
        if (pos < 0) break;
        ++idx[pos];
      }
    }
  }

  Modulus p2(2);
  {
    MilnorEngine eng(marked.diagram, p2, I.length());
    MuResult lhs = eng.mu_bar(I);
    if (lhs.delta == BigInt(1)) {
      rep.verdict = Verdict::Indeterminate;
      rep.note = "odd indeterminacy at the full index";
      return rep;
    }
    rep.lhs_mod2 = static_cast<int>(lhs.mubar.to_i64());
  }

  Index sub;
  for (int i : I.seq)
    if (i != n + 1) sub.seq.push_back(i);

  CoverModel cover = double_cover(w);
  int sum = 0;
  bool indeterminate = false;
  for (const LiftSelection& sel : rep.eps) {
    PDiagram d = covering_link(cover, sel);
    MilnorEngine eng(d, p2, std::max(2, sub.length()));
    MuResult r = eng.mu_bar(sub);
    if (r.delta == BigInt(1)) {
      indeterminate = true;
      rep.per_eps.push_back({sel, -1});
      continue;
    }
    int v = static_cast<int>(r.mubar.to_i64());
    rep.per_eps.push_back({sel, v});
    sum += v;
  }
  rep.rhs_mod2 = sum % 2;
  if (indeterminate) {
    rep.verdict = Verdict::Indeterminate;
    rep.note = "odd indeterminacy at a covering index";
  } else {
    rep.verdict = rep.lhs_mod2 == rep.rhs_mod2 ? Verdict::Pass : Verdict::Fail;
  }
  return rep;
}

StrictnessCase verify_strictness(const TangleWord& w, const Index& I, const LiftSelection& eps,
                                 int q) {
  w.validate();
  MarkedLink marked = insert_axis(w);
  StrictnessCase s;
  s.eps = eps;
  {
    MilnorEngine eng(marked.diagram, Modulus(0), q);
    s.lhs = eng.mu_bar(I);
  }
  int n = static_cast<int>(eps.eps.size());
  Index sub;
  for (int i : I.seq)
    if (i != n + 1) sub.seq.push_back(i);
  CoverModel cover = double_cover(w);
  PDiagram d = covering_link(cover, eps);
  MilnorEngine eng(d, Modulus(0), std::max(2, q - 1));
  s.rhs = eng.mu_bar(sub);
  return s;
}

DiscriminatorReport homotopy_discriminator() {
  const CorpusEntry& L = corpus_entry("borromean_axis3");
  const CorpusEntry& Lp = corpus_entry("Lprime");

  DiscriminatorReport rep;
  rep.ordinary_match = true;

  MarkedLink ml = insert_axis(L.word), mlp = insert_axis(Lp.word);
  MilnorEngine el(ml.diagram, Modulus(0), 4);
  MilnorEngine elp(mlp.diagram, Modulus(0), 4);
  for (int len = 2; len <= 4; ++len) {
    std::vector<int> idx(len, 1);
    while (true) {
      Index J(idx);
      MuResult a = el.mu_bar(J), b = elp.mu_bar(J);
      if (!(a.mubar == b.mubar && a.delta == b.delta)) {
        rep.ordinary_match = false;
        rep.mismatches.push_back("mubar(" + J.to_string() + "): " + a.mubar.to_string() +
                                 " vs " + b.mubar.to_string());
      }
      int pos = len - 1;
      while (pos >= 0 && idx[pos] == 3) idx[pos--] = 1;
      if (pos < 0) break;
      ++idx[pos];
    }
  }

  MSet ms = m_set(L.word, Index({1, 2}), Modulus(0), 2);
  MSet msp = m_set(Lp.word, Index({1, 2}), Modulus(0), 2);
  rep.msets_differ = !ms.same_values(msp);
  if (!rep.msets_differ) rep.mismatches.push_back("covering M-sets coincide");
  return rep;
}

std::string VerifyReport::to_json() const {
  std::ostringstream os;
  os << "{\"input\":\"" << input << "\",\"I\":\"" << I.to_string() << "\",\"k\":" << k
     << ",\"lhs_mod2\":" << lhs_mod2 << ",\"per_eps\":[";
  for (size_t i = 0; i < per_eps.size(); ++i) {
    if (i) os << ",";
    os << "{\"eps\":\"" << per_eps[i].first.to_string() << "\",\"mubar_mod2\":"
       << per_eps[i].second << "}";
  }
  os << "],\"rhs_mod2\":" << rhs_mod2 << ",\"verdict\":\""
     << (verdict == Verdict::Pass ? "pass" : verdict == Verdict::Fail ? "fail" : "indeterminate")
     << "\"";
  if (!note.empty()) os << ",\"note\":\"" << note << "\"";
  os << "}";
  return os.str();
}

std::string VerifyReport::to_table() const {
  std::ostringstream os;
  os << "input " << input << "  I=" << I.to_string() << "  k=" << k << "\n";
  os << "  lhs mod 2: " << lhs_mod2 << "\n";
  for (const auto& [sel, v] : per_eps)
    os << "  eps=" << sel.to_string() << "  mubar mod 2: " << v << "\n";
  os << "  rhs mod 2: " << rhs_mod2 << "\n";
  os << "  verdict: "
     << (verdict == Verdict::Pass ? "pass" : verdict == Verdict::Fail ? "fail" : "indeterminate");
  if (!note.empty()) os << "  (" << note << ")";
  os << "\n";
  return os.str();
}

}  // namespace covmil
