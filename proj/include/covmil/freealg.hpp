#ifndef COVMIL_FREEALG_HPP
#define COVMIL_FREEALG_HPP

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "covmil/bigint.hpp"

namespace covmil {

/// Coefficient modulus: 0 for integer coefficients, otherwise a prime.
struct Modulus {
  uint32_t p = 0;
  Modulus() = default;
  explicit Modulus(uint32_t p_);  // validates prime-or-zero
  bool operator==(const Modulus& o) const { return p == o.p; }
  bool operator!=(const Modulus& o) const { return p != o.p; }
};

constexpr int kMaxVars = 8;
constexpr int kMaxDegree = 16;

/// Word X_{i1} X_{i2} ... X_{ik} in non-commutative variables, packed into a
/// 64-bit key: 3 bits per position (variable index - 1), length in the top
/// bits. Empty word is the unit monomial.
struct Monomial {
  uint64_t key = 0;

  static Monomial unit() { return {}; }
  static Monomial var(int i);
  static Monomial from_vars(const std::vector<int>& vars);

  int length() const { return static_cast<int>(key >> 59); }
  int var_at(int pos) const { return static_cast<int>((key >> (3 * pos)) & 7u) + 1; }
  std::vector<int> vars() const;

  /// Concatenation; returns false when the product exceeds degree qcap.
  static bool concat(const Monomial& a, const Monomial& b, int qcap, Monomial& out);

  bool operator==(const Monomial& o) const { return key == o.key; }
  bool operator<(const Monomial& o) const { return key < o.key; }
  std::string to_string() const;
};

/// Element of the free associative algebra on X_1..X_n over Z or Z_p,
/// truncated at total degree q. Terms are kept sorted by monomial key with
/// nonzero coefficients, reduced into [0, p) when p > 0.
class TruncatedSeries {
public:
  TruncatedSeries(int n, int q, Modulus p);

  static TruncatedSeries unit(int n, int q, Modulus p);
  static TruncatedSeries one_plus_var(int n, int q, Modulus p, int i);

  int vars() const { return n_; }
  int degree_cap() const { return q_; }
  Modulus modulus() const { return p_; }

  bool is_zero() const { return terms_.empty(); }
  bool is_unit() const;

  const std::vector<std::pair<uint64_t, BigInt>>& terms() const { return terms_; }

  BigInt coefficient(const Monomial& m) const;  // truncation-exceeded if len(m) > q
  void add_term(const Monomial& m, const BigInt& c);

  TruncatedSeries& operator+=(const TruncatedSeries& o);
  TruncatedSeries& operator-=(const TruncatedSeries& o);
  bool operator==(const TruncatedSeries& o) const;
  bool operator!=(const TruncatedSeries& o) const { return !(*this == o); }

  std::string to_string() const;

  /// Termwise reduction of a p=0 series into Z_p.
  TruncatedSeries reduced_mod(Modulus p) const;

private:
  int n_, q_;
  Modulus p_;
  std::vector<std::pair<uint64_t, BigInt>> terms_;

  BigInt normalize(const BigInt& c) const;
  void require_compatible(const TruncatedSeries& o) const;
  friend TruncatedSeries series_mul(const TruncatedSeries&, const TruncatedSeries&);
};

TruncatedSeries series_mul(const TruncatedSeries& a, const TruncatedSeries& b);
TruncatedSeries series_inverse(const TruncatedSeries& a);  // needs constant term 1
TruncatedSeries series_pow(const TruncatedSeries& a, long long e);

/// Word in free-group generators: (generator id, exponent in {+1,-1}).
struct GroupWord {
  std::vector<std::pair<int, int>> letters;
};

/// Magnus expansion of w under the given generator assignment; every assigned
/// series must have constant term 1.
TruncatedSeries magnus_expand(const GroupWord& w,
                              const std::map<int, TruncatedSeries>& assign);

/// Standard assignment alpha_i -> 1 + X_i for generators 1..n.
TruncatedSeries magnus_expand_standard(const GroupWord& w, int n, int q, Modulus p);

BigInt coefficient(const TruncatedSeries& s, const Monomial& m);

}  // namespace covmil

#endif
