#ifndef COVMIL_MILNOR_HPP
#define COVMIL_MILNOR_HPP

#include <vector>

#include "covmil/diagram.hpp"
#include "covmil/freealg.hpp"

namespace covmil {

/// Index sequence I = i1 i2 ... ik of component numbers; the last entry names
/// the longitude component.
struct Index {
  std::vector<int> seq;

  Index() = default;
  explicit Index(std::vector<int> s) : seq(std::move(s)) {}
  int length() const { return static_cast<int>(seq.size()); }
  bool non_repeated() const;
  bool operator<(const Index& o) const { return seq < o.seq; }
  bool operator==(const Index& o) const { return seq == o.seq; }
  std::string to_string() const;
};

/// mu, the indeterminacy generator, and the canonical residue mubar: mu itself
/// when delta = 0, otherwise mu reduced into [0, delta).
struct MuResult {
  BigInt mu;
  BigInt delta;
  BigInt mubar;

  bool operator==(const MuResult& o) const {
    return mu == o.mu && delta == o.delta && mubar == o.mubar;
  }
  /// Same result for the mirror convention (mu negated, residue recanonicalized).
  MuResult negated(Modulus p) const;
};

struct WirtingerRelation {
  int out_arc;
  int in_arc;
  int over_arc;
  int sign;
};

/// Arc-generator presentation of the link group: one generator per arc, one
/// conjugation relation per crossing, base meridian = first arc of each
/// component in diagram order.
struct WirtingerPresentation {
  int generators = 0;
  std::vector<WirtingerRelation> relations;
  std::vector<int> base;  // per component, 1-based
};

WirtingerPresentation wirtinger(const PDiagram& d);

/// Caches the arc-series fixed point and the longitudes of one diagram at one
/// (p, q); per-index queries are coefficient lookups.
class MilnorEngine {
public:
  MilnorEngine(const PDiagram& d, Modulus p, int q);

  int components() const { return d_.ncomps; }
  int q() const { return q_; }
  Modulus modulus() const { return p_; }

  const TruncatedSeries& arc_series(int arc) const { return arcs_[arc]; }
  const TruncatedSeries& longitude(int comp) const;

  BigInt mu(const Index& I) const;
  BigInt delta(const Index& I) const;
  MuResult mu_bar(const Index& I) const;

private:
  PDiagram d_;
  Modulus p_;
  int q_;
  std::vector<TruncatedSeries> arcs_;
  std::vector<TruncatedSeries> longitudes_;

  void solve_arcs();
  void build_longitudes();
};

/// Successive-approximation fixed point of the Wirtinger substitution in the
/// degree-q truncation; every arc starts at 1 + X_{comp(arc)} and base arcs
/// stay pinned.
std::vector<TruncatedSeries> arc_series(const PDiagram& d, const WirtingerPresentation& p,
                                        Modulus mod, int q);

TruncatedSeries longitude_series(const PDiagram& d, Modulus p, int q, int comp);

BigInt mu(const PDiagram& d, const Index& I, Modulus p, int q);
BigInt delta(const PDiagram& d, const Index& I, Modulus p, int q);
MuResult mu_bar(const PDiagram& d, const Index& I, Modulus p, int q);

/// Cyclic permutations of proper subsequences of I with length >= 2; the mu
/// values of these generate the indeterminacy ideal.
std::vector<Index> delta_index_set(const Index& I);

}  // namespace covmil

#endif
