#include "covmil/bigint.hpp"

#include <algorithm>
#include <ostream>

#include "covmil/errors.hpp"

namespace covmil {

BigInt::BigInt(long long v) {
  if (v == 0) return;
  sign_ = v < 0 ? -1 : 1;
  lo_ = v < 0 ? -static_cast<uint64_t>(v) : static_cast<uint64_t>(v);
}

bool BigInt::is_odd() const {
  if (sign_ == 0) return false;
  return (inline_rep() ? lo_ : wide_[0]) & 1u;
}

std::vector<uint32_t> BigInt::limbs() const {
  if (!inline_rep()) return wide_;
  std::vector<uint32_t> m;
  if (lo_) {
    m.push_back(static_cast<uint32_t>(lo_));
    if (lo_ >> 32) m.push_back(static_cast<uint32_t>(lo_ >> 32));
  }
  return m;
}

void BigInt::set_mag(std::vector<uint32_t> limbs) {
  while (!limbs.empty() && limbs.back() == 0) limbs.pop_back();
  if (limbs.empty()) {
    sign_ = 0;
    lo_ = 0;
    wide_.clear();
  } else if (limbs.size() <= 2) {
    lo_ = limbs[0];
    if (limbs.size() == 2) lo_ |= static_cast<uint64_t>(limbs[1]) << 32;
    wide_.clear();
  } else {
    lo_ = 0;
    wide_ = std::move(limbs);
  }
}

int BigInt::cmp_mag(const BigInt& a, const BigInt& b) {
  if (a.inline_rep() && b.inline_rep())
    return a.lo_ == b.lo_ ? 0 : (a.lo_ < b.lo_ ? -1 : 1);
  std::vector<uint32_t> am = a.limbs(), bm = b.limbs();
  if (am.size() != bm.size()) return am.size() < bm.size() ? -1 : 1;
  for (size_t i = am.size(); i-- > 0;)
    if (am[i] != bm[i]) return am[i] < bm[i] ? -1 : 1;
  return 0;
}

std::vector<uint32_t> BigInt::add_limbs(const std::vector<uint32_t>& a,
                                        const std::vector<uint32_t>& b) {
  std::vector<uint32_t> r(std::max(a.size(), b.size()), 0);
  uint64_t carry = 0;
  for (size_t i = 0; i < r.size(); ++i) {
    uint64_t s = carry + (i < a.size() ? a[i] : 0) + (i < b.size() ? b[i] : 0);
    r[i] = static_cast<uint32_t>(s);
    carry = s >> 32;
  }
  if (carry) r.push_back(static_cast<uint32_t>(carry));
  return r;
}

std::vector<uint32_t> BigInt::sub_limbs(const std::vector<uint32_t>& a,
                                        const std::vector<uint32_t>& b) {
  std::vector<uint32_t> r = a;
  int64_t borrow = 0;
  for (size_t i = 0; i < r.size(); ++i) {
    int64_t s = static_cast<int64_t>(r[i]) - borrow - (i < b.size() ? b[i] : 0);
    if (s < 0) {
      s += 1ll << 32;
      borrow = 1;
    } else {
      borrow = 0;
    }
    r[i] = static_cast<uint32_t>(s);
  }
  while (!r.empty() && r.back() == 0) r.pop_back();
  return r;
}

BigInt BigInt::operator-() const {
  BigInt r = *this;
  r.sign_ = -r.sign_;
  return r;
}

BigInt& BigInt::operator+=(const BigInt& o) {
  if (o.sign_ == 0) return *this;
  if (sign_ == 0) return *this = o;
  if (inline_rep() && o.inline_rep()) {
    if (sign_ == o.sign_) {
      uint64_t s = lo_ + o.lo_;
      if (s >= lo_) {  // no 64-bit overflow
        lo_ = s;
        return *this;
      }
    } else {
      if (lo_ == o.lo_) {
        sign_ = 0;
        lo_ = 0;
        return *this;
      }
      if (lo_ > o.lo_) {
        lo_ -= o.lo_;
      } else {
        lo_ = o.lo_ - lo_;
        sign_ = o.sign_;
      }
      return *this;
    }
  }
  // wide path
  if (sign_ == o.sign_) {
    set_mag(add_limbs(limbs(), o.limbs()));
  } else {
    int c = cmp_mag(*this, o);
    if (c == 0) {
      set_mag({});
    } else if (c > 0) {
      set_mag(sub_limbs(limbs(), o.limbs()));
    } else {
      int8_t s = o.sign_;
      set_mag(sub_limbs(o.limbs(), limbs()));
      sign_ = s;
    }
  }
  return *this;
}

BigInt& BigInt::operator-=(const BigInt& o) {
  BigInt t = o;
  t.sign_ = -t.sign_;
  return *this += t;
}

BigInt BigInt::operator+(const BigInt& o) const {
  BigInt r = *this;
  r += o;
  return r;
}

BigInt BigInt::operator-(const BigInt& o) const {
  BigInt r = *this;
  r -= o;
  return r;
}

BigInt BigInt::operator*(const BigInt& o) const {
  BigInt r;
  if (sign_ == 0 || o.sign_ == 0) return r;
  r.sign_ = sign_ * o.sign_;
  if (inline_rep() && o.inline_rep()) {
    unsigned __int128 p = static_cast<unsigned __int128>(lo_) * o.lo_;
    if ((p >> 64) == 0) {
      r.lo_ = static_cast<uint64_t>(p);
      return r;
    }
  }
  std::vector<uint32_t> am = limbs(), bm = o.limbs();
  std::vector<uint32_t> rm(am.size() + bm.size(), 0);
  for (size_t i = 0; i < am.size(); ++i) {
    uint64_t carry = 0;
    for (size_t j = 0; j < bm.size(); ++j) {
      uint64_t cur = rm[i + j] + static_cast<uint64_t>(am[i]) * bm[j] + carry;
      rm[i + j] = static_cast<uint32_t>(cur);
      carry = cur >> 32;
    }
    size_t k = i + bm.size();
    while (carry) {
      uint64_t cur = rm[k] + carry;
      rm[k] = static_cast<uint32_t>(cur);
      carry = cur >> 32;
      ++k;
    }
  }
  int8_t s = r.sign_;
  r.set_mag(std::move(rm));
  r.sign_ = r.lo_ == 0 && r.wide_.empty() ? 0 : s;
  return r;
}

bool BigInt::operator==(const BigInt& o) const {
  return sign_ == o.sign_ && cmp_mag(*this, o) == 0;
}

bool BigInt::operator<(const BigInt& o) const {
  if (sign_ != o.sign_) return sign_ < o.sign_;
  int c = cmp_mag(*this, o);
  return sign_ >= 0 ? c < 0 : c > 0;
}

void BigInt::divmod(const BigInt& d, BigInt& q, BigInt& r) const {
  if (d.sign_ == 0) fail(Errc::internal_consistency, "division by zero");
  if (sign_ == 0 || cmp_mag(*this, d) < 0) {
    q = BigInt();
    r = *this;
    return;
  }
  if (inline_rep() && d.inline_rep()) {
    BigInt qq, rr;
    uint64_t qv = lo_ / d.lo_, rv = lo_ % d.lo_;
    qq.lo_ = qv;
    qq.sign_ = qv ? sign_ * d.sign_ : 0;
    rr.lo_ = rv;
    rr.sign_ = rv ? sign_ : 0;
    q = qq;
    r = rr;
    return;
  }
  std::vector<uint32_t> num = limbs(), den = d.limbs();
  // single-limb divisor short division
  if (den.size() == 1) {
    uint64_t dv = den[0], rem = 0;
    std::vector<uint32_t> qm(num.size());
    for (size_t i = num.size(); i-- > 0;) {
      uint64_t cur = (rem << 32) | num[i];
      qm[i] = static_cast<uint32_t>(cur / dv);
      rem = cur % dv;
    }
    BigInt qq, rr;
    qq.set_mag(std::move(qm));
    qq.sign_ = qq.lo_ == 0 && qq.wide_.empty() ? 0 : sign_ * d.sign_;
    rr = BigInt(static_cast<long long>(rem));
    if (rr.sign_ != 0) rr.sign_ = sign_;
    q = std::move(qq);
    r = std::move(rr);
    return;
  }
  // bit-by-bit long division; operands this wide stay rare
  std::vector<uint32_t> rem, qm(num.size(), 0);
  auto cmp = [](const std::vector<uint32_t>& a, const std::vector<uint32_t>& b) {
    if (a.size() != b.size()) return a.size() < b.size() ? -1 : 1;
    for (size_t i = a.size(); i-- > 0;)
      if (a[i] != b[i]) return a[i] < b[i] ? -1 : 1;
    return 0;
  };
  for (size_t bit = num.size() * 32; bit-- > 0;) {
    uint32_t carry = 0;
    for (size_t i = 0; i < rem.size(); ++i) {
      uint32_t nc = rem[i] >> 31;
      rem[i] = (rem[i] << 1) | carry;
      carry = nc;
    }
    if (carry) rem.push_back(carry);
    if (num[bit / 32] & (1u << (bit % 32))) {
      if (rem.empty())
        rem.push_back(1);
      else
        rem = add_limbs(rem, {1});
    }
    if (!rem.empty() && cmp(rem, den) >= 0) {
      rem = sub_limbs(rem, den);
      qm[bit / 32] |= 1u << (bit % 32);
    }
  }
  BigInt qq, rr;
  qq.set_mag(std::move(qm));
  qq.sign_ = qq.lo_ == 0 && qq.wide_.empty() ? 0 : sign_ * d.sign_;
  rr.set_mag(std::move(rem));
  rr.sign_ = rr.lo_ == 0 && rr.wide_.empty() ? 0 : sign_;
  q = std::move(qq);
  r = std::move(rr);
}

BigInt BigInt::mod_euclid(const BigInt& m) const {
  if (m.sign_ <= 0) fail(Errc::internal_consistency, "mod_euclid needs positive modulus");
  BigInt q, r;
  divmod(m, q, r);
  if (r.sign_ < 0) r += m;
  return r;
}

BigInt BigInt::abs() const {
  BigInt r = *this;
  if (r.sign_ < 0) r.sign_ = 1;
  return r;
}

BigInt BigInt::gcd(BigInt a, BigInt b) {
  a = a.abs();
  b = b.abs();
  while (!b.is_zero()) {
    BigInt q, r;
    a.divmod(b, q, r);
    a = std::move(b);
    b = std::move(r);
  }
  return a;
}

bool BigInt::fits_i64() const {
  if (!inline_rep()) return false;
  if (sign_ >= 0) return lo_ <= 0x7fffffffffffffffull;
  return lo_ <= 0x8000000000000000ull;
}

long long BigInt::to_i64() const {
  if (!fits_i64()) fail(Errc::internal_consistency, "value does not fit in 64 bits");
  return sign_ < 0 ? -static_cast<long long>(lo_) : static_cast<long long>(lo_);
}

std::string BigInt::to_string() const {
  if (sign_ == 0) return "0";
  std::vector<uint32_t> m = limbs();
  std::string digits;
  while (!m.empty()) {
    uint64_t rem = 0;
    for (size_t i = m.size(); i-- > 0;) {
      uint64_t cur = (rem << 32) | m[i];
      m[i] = static_cast<uint32_t>(cur / 1000000000u);
      rem = cur % 1000000000u;
    }
    while (!m.empty() && m.back() == 0) m.pop_back();
    for (int k = 0; k < 9; ++k) {
      digits.push_back(static_cast<char>('0' + rem % 10));
      rem /= 10;
    }
  }
  while (digits.size() > 1 && digits.back() == '0') digits.pop_back();
  if (sign_ < 0) digits.push_back('-');
  std::reverse(digits.begin(), digits.end());
  return digits;
}

std::ostream& operator<<(std::ostream& os, const BigInt& v) { return os << v.to_string(); }

}  // namespace covmil
