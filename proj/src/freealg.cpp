#include "covmil/freealg.hpp"

#include <algorithm>
#include <sstream>

#include "covmil/errors.hpp"

namespace covmil {

Modulus::Modulus(uint32_t p_) : p(p_) {
  if (p == 0) return;
  if (p < 2) fail(Errc::parameter_mismatch, "modulus must be 0 or a prime");
  for (uint32_t d = 2; d * d <= p; ++d)
    if (p % d == 0) fail(Errc::parameter_mismatch, "modulus " + std::to_string(p) + " is not prime");
}

Monomial Monomial::var(int i) {
  Monomial m;
  m.key = (1ull << 59) | static_cast<uint64_t>(i - 1);
  return m;
}

Monomial Monomial::from_vars(const std::vector<int>& vars) {
  if (vars.size() > kMaxDegree) fail(Errc::truncation_exceeded, "monomial too long");
  Monomial m;
  for (size_t k = 0; k < vars.size(); ++k) {
    if (vars[k] < 1 || vars[k] > kMaxVars) fail(Errc::parameter_mismatch, "variable index out of range");
    m.key |= static_cast<uint64_t>(vars[k] - 1) << (3 * k);
  }
  m.key |= static_cast<uint64_t>(vars.size()) << 59;
  return m;
}

std::vector<int> Monomial::vars() const {
  std::vector<int> v(length());
  for (int k = 0; k < length(); ++k) v[k] = var_at(k);
  return v;
}

bool Monomial::concat(const Monomial& a, const Monomial& b, int qcap, Monomial& out) {
  int l = a.length() + b.length();
  if (l > qcap) return false;
  uint64_t da = a.key & ((1ull << 59) - 1);
  uint64_t db = b.key & ((1ull << 59) - 1);
  out.key = da | (db << (3 * a.length())) | (static_cast<uint64_t>(l) << 59);
  return true;
}

std::string Monomial::to_string() const {
  if (length() == 0) return "1";
  std::string s;
  for (int k = 0; k < length(); ++k) {
    if (k) s += ".";
    s += "X" + std::to_string(var_at(k));
  }
  return s;
}

TruncatedSeries::TruncatedSeries(int n, int q, Modulus p) : n_(n), q_(q), p_(p) {
  if (n < 1 || n > kMaxVars) fail(Errc::parameter_mismatch, "variable count out of range");
  if (q < 1 || q > kMaxDegree) fail(Errc::parameter_mismatch, "truncation degree out of range");
}

TruncatedSeries TruncatedSeries::unit(int n, int q, Modulus p) {
  TruncatedSeries s(n, q, p);
  s.add_term(Monomial::unit(), BigInt(1));
  return s;
}

TruncatedSeries TruncatedSeries::one_plus_var(int n, int q, Modulus p, int i) {
  if (i < 1 || i > n) fail(Errc::parameter_mismatch, "variable index out of range");
  TruncatedSeries s = unit(n, q, p);
  s.add_term(Monomial::var(i), BigInt(1));
  return s;
}

bool TruncatedSeries::is_unit() const {
  return terms_.size() == 1 && terms_[0].first == 0 && terms_[0].second == BigInt(1);
}

BigInt TruncatedSeries::normalize(const BigInt& c) const {
  if (p_.p == 0) return c;
  return c.mod_euclid(BigInt(static_cast<long long>(p_.p)));
}

BigInt TruncatedSeries::coefficient(const Monomial& m) const {
  if (m.length() > q_)
    fail(Errc::truncation_exceeded,
         "monomial degree " + std::to_string(m.length()) + " exceeds truncation " + std::to_string(q_));
  auto it = std::lower_bound(terms_.begin(), terms_.end(), m.key,
                             [](const auto& t, uint64_t k) { return t.first < k; });
  if (it != terms_.end() && it->first == m.key) return it->second;
  return BigInt();
}

void TruncatedSeries::add_term(const Monomial& m, const BigInt& c) {
  if (m.length() > q_) return;
  BigInt v = normalize(c);
  if (v.is_zero()) return;
  auto it = std::lower_bound(terms_.begin(), terms_.end(), m.key,
                             [](const auto& t, uint64_t k) { return t.first < k; });
  if (it != terms_.end() && it->first == m.key) {
    it->second = normalize(it->second + v);
    if (it->second.is_zero()) terms_.erase(it);
  } else {
    terms_.insert(it, {m.key, v});
  }
}

void TruncatedSeries::require_compatible(const TruncatedSeries& o) const {
  if (n_ != o.n_ || q_ != o.q_ || p_ != o.p_)
    fail(Errc::parameter_mismatch, "series contexts differ (n/q/p)");
}

TruncatedSeries& TruncatedSeries::operator+=(const TruncatedSeries& o) {
  require_compatible(o);
  std::vector<std::pair<uint64_t, BigInt>> merged;
  merged.reserve(terms_.size() + o.terms_.size());
  size_t i = 0, j = 0;
  while (i < terms_.size() || j < o.terms_.size()) {
    if (j == o.terms_.size() || (i < terms_.size() && terms_[i].first < o.terms_[j].first)) {
      merged.push_back(std::move(terms_[i++]));
    } else if (i == terms_.size() || o.terms_[j].first < terms_[i].first) {
      merged.push_back(o.terms_[j++]);
    } else {
      BigInt c = normalize(terms_[i].second + o.terms_[j].second);
      if (!c.is_zero()) merged.push_back({terms_[i].first, std::move(c)});
      ++i;
      ++j;
    }
  }
  terms_ = std::move(merged);
  return *this;
}

TruncatedSeries& TruncatedSeries::operator-=(const TruncatedSeries& o) {
  require_compatible(o);
  TruncatedSeries neg(n_, q_, p_);
  neg.terms_.reserve(o.terms_.size());
  for (const auto& [k, c] : o.terms_) {
    BigInt v = normalize(-c);
    if (!v.is_zero()) neg.terms_.push_back({k, std::move(v)});
  }
  return *this += neg;
}

bool TruncatedSeries::operator==(const TruncatedSeries& o) const {
  return n_ == o.n_ && q_ == o.q_ && p_ == o.p_ && terms_ == o.terms_;
}

TruncatedSeries series_mul(const TruncatedSeries& a, const TruncatedSeries& b) {
  a.require_compatible(b);
  TruncatedSeries r(a.n_, a.q_, a.p_);
  std::vector<std::pair<uint64_t, BigInt>> buf;
  buf.reserve(a.terms_.size() * b.terms_.size() / 2 + 8);
  for (const auto& [ka, ca] : a.terms_) {
    int la = static_cast<int>(ka >> 59);
    uint64_t da = ka & ((1ull << 59) - 1);
    for (const auto& [kb, cb] : b.terms_) {
      int lb = static_cast<int>(kb >> 59);
      if (la + lb > a.q_) continue;
      uint64_t db = kb & ((1ull << 59) - 1);
      uint64_t key = da | (db << (3 * la)) | (static_cast<uint64_t>(la + lb) << 59);
      buf.push_back({key, ca * cb});
    }
  }
  std::sort(buf.begin(), buf.end(),
            [](const auto& x, const auto& y) { return x.first < y.first; });
  for (size_t i = 0; i < buf.size();) {
    BigInt c = std::move(buf[i].second);
    size_t j = i + 1;
    while (j < buf.size() && buf[j].first == buf[i].first) c += buf[j++].second;
    c = r.normalize(c);
    if (!c.is_zero()) r.terms_.push_back({buf[i].first, std::move(c)});
    i = j;
  }
  return r;
}

TruncatedSeries series_inverse(const TruncatedSeries& a) {
  if (a.coefficient(Monomial::unit()) != BigInt(1))
    fail(Errc::non_invertible, "series constant term is not 1");
  int q = a.degree_cap();
  TruncatedSeries f = a;  // f = a - 1
  {
    TruncatedSeries one = TruncatedSeries::unit(a.vars(), q, a.modulus());
    f -= one;
  }
  TruncatedSeries result = TruncatedSeries::unit(a.vars(), q, a.modulus());
  TruncatedSeries power = TruncatedSeries::unit(a.vars(), q, a.modulus());
  int sign = 1;
  for (int k = 1; k <= q; ++k) {
    power = series_mul(power, f);
    if (power.is_zero()) break;
    sign = -sign;
    if (sign > 0)
      result += power;
    else
      result -= power;
  }
  return result;
}

TruncatedSeries series_pow(const TruncatedSeries& a, long long e) {
  if (e < 0) return series_pow(series_inverse(a), -e);
  TruncatedSeries r = TruncatedSeries::unit(a.vars(), a.degree_cap(), a.modulus());
  TruncatedSeries base = a;
  while (e > 0) {
    if (e & 1) r = series_mul(r, base);
    e >>= 1;
    if (e) base = series_mul(base, base);
  }
  return r;
}

TruncatedSeries magnus_expand(const GroupWord& w,
                              const std::map<int, TruncatedSeries>& assign) {
  if (assign.empty()) fail(Errc::missing_assignment, "empty generator assignment");
  const TruncatedSeries& first = assign.begin()->second;
  TruncatedSeries r = TruncatedSeries::unit(first.vars(), first.degree_cap(), first.modulus());
  std::map<int, TruncatedSeries> inv_cache;
  for (const auto& [gen, exp] : w.letters) {
    auto it = assign.find(gen);
    if (it == assign.end())
      fail(Errc::missing_assignment, "generator " + std::to_string(gen) + " has no assignment");
    if (exp == 1) {
      r = series_mul(r, it->second);
    } else if (exp == -1) {
      auto ic = inv_cache.find(gen);
      if (ic == inv_cache.end())
        ic = inv_cache.emplace(gen, series_inverse(it->second)).first;
      r = series_mul(r, ic->second);
    } else {
      fail(Errc::parameter_mismatch, "letter exponent must be +1 or -1");
    }
  }
  return r;
}

TruncatedSeries magnus_expand_standard(const GroupWord& w, int n, int q, Modulus p) {
  std::map<int, TruncatedSeries> assign;
  for (int i = 1; i <= n; ++i) assign.emplace(i, TruncatedSeries::one_plus_var(n, q, p, i));
  return magnus_expand(w, assign);
}

BigInt coefficient(const TruncatedSeries& s, const Monomial& m) { return s.coefficient(m); }

std::string TruncatedSeries::to_string() const {
  if (terms_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (const auto& [k, c] : terms_) {
    Monomial m{k};
    if (!first) os << " + ";
    first = false;
    if (m.length() == 0) {
      os << c.to_string();
    } else if (c == BigInt(1)) {
      os << m.to_string();
    } else {
      os << c.to_string() << "*" << m.to_string();
    }
  }
  return os.str();
}

TruncatedSeries TruncatedSeries::reduced_mod(Modulus p) const {
  if (p_.p != 0) fail(Errc::parameter_mismatch, "reduced_mod expects integer coefficients");
  TruncatedSeries r(n_, q_, p);
  for (const auto& [k, c] : terms_) r.add_term(Monomial{k}, c);
  return r;
}

}  // namespace covmil
