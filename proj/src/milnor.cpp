#include "covmil/milnor.hpp"

#include <algorithm>
#include <set>
#include <sstream>

#include "covmil/errors.hpp"

namespace covmil {

bool Index::non_repeated() const {
  std::set<int> s(seq.begin(), seq.end());
  return s.size() == seq.size();
}

std::string Index::to_string() const {
  std::ostringstream os;
  for (size_t i = 0; i < seq.size(); ++i) {
    if (i) os << (seq[i - 1] > 9 || seq[i] > 9 ? "," : "");
    os << seq[i];
  }
  return os.str();
}

MuResult MuResult::negated(Modulus p) const {
  MuResult r;
  r.delta = delta;
  if (p.p == 0) {
    r.mu = -mu;
    r.mubar = delta.is_zero() ? r.mu : r.mu.mod_euclid(delta);
  } else {
    BigInt bp(static_cast<long long>(p.p));
    r.mu = (-mu).mod_euclid(bp);
    if (delta == BigInt(1))
      r.mubar = BigInt(0);
    else
      r.mubar = r.mu;
  }
  return r;
}

WirtingerPresentation wirtinger(const PDiagram& d) {
  WirtingerPresentation p;
  p.generators = d.arcs();
  for (const PDCrossing& c : d.crossings) {
    if (c.over_arc < 0 || c.under_in < 0 || c.under_out < 0)
      fail(Errc::malformed_diagram, "crossing with unresolved arc references");
    p.relations.push_back({c.under_out, c.under_in, c.over_arc, c.sign});
  }
  p.base = d.base_arc;
  return p;
}

std::vector<TruncatedSeries> arc_series(const PDiagram& d, const WirtingerPresentation& pres,
                                        Modulus mod, int q) {
  if (q < 2) fail(Errc::parameter_mismatch, "arc series need q >= 2");
  if (pres.generators != d.arcs() || pres.relations.size() != d.crossings.size())
    fail(Errc::parameter_mismatch, "presentation does not match the diagram");
  int n = d.ncomps;
  std::vector<TruncatedSeries> v;
  v.reserve(d.arcs());
  for (int a = 0; a < d.arcs(); ++a)
    v.push_back(TruncatedSeries::one_plus_var(n, q, mod, d.arc_comp[a]));

  // Walk each component from its base arc; the relation at each undercrossing
  // rewrites the next arc as a conjugate of the current one. One round gains
  // one degree of accuracy, so q rounds must reach the exact fixed point of
  // the truncated system; a round with no change is that fixed point. A
  // relation is re-evaluated only when an input moved in the previous round
  // or earlier in the current one, which keeps every stored value current.
  std::vector<TruncatedSeries> inv_cache(d.arcs(), TruncatedSeries(n, q, mod));
  std::vector<long> inv_version(d.arcs(), -1);
  std::vector<long> version(d.arcs(), 0);
  std::vector<int> last_changed(d.arcs(), 0);  // initialization counts as round 0

  auto inverse_of = [&](int arc) -> const TruncatedSeries& {
    if (inv_version[arc] != version[arc]) {
      inv_cache[arc] = series_inverse(v[arc]);
      inv_version[arc] = version[arc];
    }
    return inv_cache[arc];
  };

  for (int round = 1; round <= q + 1; ++round) {
    bool changed = false;
    for (int comp = 1; comp <= n; ++comp) {
      for (int cid : d.comp_unders[comp]) {
        const PDCrossing& c = d.crossings[cid];
        if (c.under_out == d.base_arc[comp]) continue;  // cycle closer, base stays pinned
        if (last_changed[c.over_arc] < round - 1 && last_changed[c.under_in] < round - 1)
          continue;
        TruncatedSeries next =
            c.sign > 0
                ? series_mul(series_mul(inverse_of(c.over_arc), v[c.under_in]), v[c.over_arc])
                : series_mul(series_mul(v[c.over_arc], v[c.under_in]), inverse_of(c.over_arc));
        if (next != v[c.under_out]) {
          v[c.under_out] = std::move(next);
          ++version[c.under_out];
          last_changed[c.under_out] = round;
          changed = true;
        }
      }
    }
    if (!changed) return v;
  }
  fail(Errc::internal_consistency, "arc series did not stabilize within q rounds");
}

namespace {

TruncatedSeries longitude_from(const PDiagram& d, const std::vector<TruncatedSeries>& arcs,
                               Modulus p, int q, int comp) {
  int n = d.ncomps;
  TruncatedSeries lambda = TruncatedSeries::unit(n, q, p);
  for (int cid : d.comp_unders[comp]) {
    const PDCrossing& c = d.crossings[cid];
    lambda = series_mul(lambda, c.sign > 0 ? arcs[c.over_arc] : series_inverse(arcs[c.over_arc]));
  }
  // framing correction to the preferred longitude
  TruncatedSeries mer = TruncatedSeries::one_plus_var(n, q, p, comp);
  lambda = series_mul(lambda, series_pow(mer, -static_cast<long long>(d.writhe[comp])));
  if (!lambda.coefficient(Monomial::var(comp)).is_zero())
    fail(Errc::internal_consistency, "longitude is not 0-framed");
  return lambda;
}

}  // namespace

TruncatedSeries longitude_series(const PDiagram& d, Modulus p, int q, int comp) {
  WirtingerPresentation pres = wirtinger(d);
  auto arcs = arc_series(d, pres, p, q);
  return longitude_from(d, arcs, p, q, comp);
}

MilnorEngine::MilnorEngine(const PDiagram& d, Modulus p, int q) : d_(d), p_(p), q_(q) {
  if (d_.ncomps < 1) fail(Errc::malformed_diagram, "diagram has no components");
  solve_arcs();
  build_longitudes();
}

void MilnorEngine::solve_arcs() {
  WirtingerPresentation pres = wirtinger(d_);
  arcs_ = covmil::arc_series(d_, pres, p_, q_);
}

void MilnorEngine::build_longitudes() {
  longitudes_.reserve(d_.ncomps);
  for (int comp = 1; comp <= d_.ncomps; ++comp)
    longitudes_.push_back(longitude_from(d_, arcs_, p_, q_, comp));
}

const TruncatedSeries& MilnorEngine::longitude(int comp) const {
  if (comp < 1 || comp > d_.ncomps) fail(Errc::unknown_component, "no such component");
  return longitudes_[comp - 1];
}

BigInt MilnorEngine::mu(const Index& I) const {
  if (I.length() < 2) fail(Errc::invalid_index, "index needs length >= 2");
  if (I.length() > q_)
    fail(Errc::truncation_exceeded, "index length " + std::to_string(I.length()) +
                                        " exceeds q=" + std::to_string(q_) + "; raise q");
  for (int i : I.seq)
    if (i < 1 || i > d_.ncomps) fail(Errc::unknown_component, "index entry out of range");
  std::vector<int> prefix(I.seq.begin(), I.seq.end() - 1);
  return longitudes_[I.seq.back() - 1].coefficient(Monomial::from_vars(prefix));
}

std::vector<Index> delta_index_set(const Index& I) {
  int k = I.length();
  std::set<std::vector<int>> out;
  for (unsigned mask = 1; mask + 1 < (1u << k); ++mask) {
    int bits = __builtin_popcount(mask);
    if (bits < 2 || bits >= k) continue;
    std::vector<int> sub;
    for (int i = 0; i < k; ++i)
      if (mask & (1u << i)) sub.push_back(I.seq[i]);
    for (size_t r = 0; r < sub.size(); ++r) {
      std::vector<int> rot(sub.begin() + r, sub.end());
      rot.insert(rot.end(), sub.begin(), sub.begin() + r);
      out.insert(rot);
    }
  }
  std::vector<Index> v;
  for (auto& s : out) v.push_back(Index(s));
  return v;
}

BigInt MilnorEngine::delta(const Index& I) const {
  BigInt g;
  for (const Index& J : delta_index_set(I)) {
    BigInt m = mu(J);
    if (p_.p == 0) {
      g = BigInt::gcd(g, m);
    } else if (!m.is_zero()) {
      return BigInt(1);  // Z_p is a field: any nonzero value generates it
    }
  }
  return p_.p == 0 ? g : BigInt(0);
}

MuResult MilnorEngine::mu_bar(const Index& I) const {
  MuResult r;
  r.mu = mu(I);
  r.delta = delta(I);
  if (p_.p == 0) {
    r.mubar = r.delta.is_zero() ? r.mu : r.mu.mod_euclid(r.delta);
  } else {
    r.mubar = r.delta == BigInt(1) ? BigInt(0) : r.mu;
  }
  return r;
}

BigInt mu(const PDiagram& d, const Index& I, Modulus p, int q) {
  return MilnorEngine(d, p, q).mu(I);
}

BigInt delta(const PDiagram& d, const Index& I, Modulus p, int q) {
  return MilnorEngine(d, p, q).delta(I);
}

MuResult mu_bar(const PDiagram& d, const Index& I, Modulus p, int q) {
  return MilnorEngine(d, p, q).mu_bar(I);
}

}  // namespace covmil
