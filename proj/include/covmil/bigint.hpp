#ifndef COVMIL_BIGINT_HPP
#define COVMIL_BIGINT_HPP

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

namespace covmil {

/// Signed arbitrary-precision integer. Magnitudes up to 64 bits live inline
/// with no heap traffic; wider values fall back to a 32-bit limb vector
/// (little endian, no trailing zero limbs).
class BigInt {
public:
  BigInt() = default;
  BigInt(long long v);

  bool is_zero() const { return sign_ == 0; }
  int sgn() const { return sign_; }
  bool is_odd() const;

  BigInt operator-() const;
  BigInt operator+(const BigInt& o) const;
  BigInt operator-(const BigInt& o) const;
  BigInt operator*(const BigInt& o) const;
  BigInt& operator+=(const BigInt& o);
  BigInt& operator-=(const BigInt& o);

  bool operator==(const BigInt& o) const;
  bool operator!=(const BigInt& o) const { return !(*this == o); }
  bool operator<(const BigInt& o) const;
  bool operator<=(const BigInt& o) const { return !(o < *this); }
  bool operator>(const BigInt& o) const { return o < *this; }
  bool operator>=(const BigInt& o) const { return !(*this < o); }

  /// Quotient truncated toward zero, remainder with the sign of *this.
  void divmod(const BigInt& d, BigInt& q, BigInt& r) const;

  /// Canonical residue in [0, m) for m > 0.
  BigInt mod_euclid(const BigInt& m) const;

  BigInt abs() const;
  static BigInt gcd(BigInt a, BigInt b);

  bool fits_i64() const;
  long long to_i64() const;  // internal-consistency error if out of range
  std::string to_string() const;

  friend std::ostream& operator<<(std::ostream& os, const BigInt& v);

private:
  int8_t sign_ = 0;          // -1, 0, +1
  uint64_t lo_ = 0;          // magnitude when wide_ is empty
  std::vector<uint32_t> wide_;

  bool inline_rep() const { return wide_.empty(); }
  std::vector<uint32_t> limbs() const;  // magnitude as limbs, either rep
  void set_mag(std::vector<uint32_t> limbs);
  static int cmp_mag(const BigInt& a, const BigInt& b);
  static std::vector<uint32_t> add_limbs(const std::vector<uint32_t>& a,
                                         const std::vector<uint32_t>& b);
  // pre: |a| >= |b|
  static std::vector<uint32_t> sub_limbs(const std::vector<uint32_t>& a,
                                         const std::vector<uint32_t>& b);
};

}  // namespace covmil

#endif
