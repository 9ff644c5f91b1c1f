#pragma once

#include <cstdint>
#include <numeric>
#include <string>

#include "degnli/error.hpp"

namespace degnli {

// Exact rational number over int64 with __int128 intermediates.
// Always normalized: den > 0, gcd(|num|, den) == 1. Throws Overflow if a
// result leaves the int64 range (degree values in the fragment are tiny, so
// this is a hard error rather than a silent wrap).
class Rational {
 public:
  Rational() : num_(0), den_(1) {}
  Rational(std::int64_t n) : num_(n), den_(1) {}  // NOLINT: implicit by design
  Rational(std::int64_t n, std::int64_t d) { assign(n, d); }

  std::int64_t num() const { return num_; }
  std::int64_t den() const { return den_; }

  bool is_integer() const { return den_ == 1; }
  bool is_zero() const { return num_ == 0; }

  friend Rational operator+(const Rational& a, const Rational& b) {
    __int128 n = i128(a.num_) * b.den_ + i128(b.num_) * a.den_;
    __int128 d = i128(a.den_) * b.den_;
    return make(n, d);
  }
  friend Rational operator-(const Rational& a, const Rational& b) {
    __int128 n = i128(a.num_) * b.den_ - i128(b.num_) * a.den_;
    __int128 d = i128(a.den_) * b.den_;
    return make(n, d);
  }
  friend Rational operator*(const Rational& a, const Rational& b) {
    return make(i128(a.num_) * b.num_, i128(a.den_) * b.den_);
  }
  friend Rational operator/(const Rational& a, const Rational& b) {
    if (b.num_ == 0) throw Error("division by zero");
    return make(i128(a.num_) * b.den_, i128(a.den_) * b.num_);
  }
  Rational operator-() const { return Rational(-num_, den_); }

  friend bool operator==(const Rational& a, const Rational& b) {
    return a.num_ == b.num_ && a.den_ == b.den_;
  }
  friend bool operator!=(const Rational& a, const Rational& b) { return !(a == b); }
  friend bool operator<(const Rational& a, const Rational& b) {
    return i128(a.num_) * b.den_ < i128(b.num_) * a.den_;
  }
  friend bool operator<=(const Rational& a, const Rational& b) {
    return i128(a.num_) * b.den_ <= i128(b.num_) * a.den_;
  }
  friend bool operator>(const Rational& a, const Rational& b) { return b < a; }
  friend bool operator>=(const Rational& a, const Rational& b) { return b <= a; }

  // Largest integer <= value (used by integer tightening on Count sorts).
  std::int64_t floor() const {
    std::int64_t q = num_ / den_;
    if (num_ % den_ != 0 && num_ < 0) --q;
    return q;
  }
  std::int64_t ceil() const {
    std::int64_t q = num_ / den_;
    if (num_ % den_ != 0 && num_ > 0) ++q;
    return q;
  }

  // "24", "-3", "9144/5", or an exact decimal like "1828.8" when the
  // denominator divides a power of ten.
  std::string str() const {
    if (den_ == 1) return std::to_string(num_);
    std::int64_t d = den_;
    int tens = 0;
    while (d % 2 == 0) { d /= 2; ++tens; }
    int fives = 0;
    while (d % 5 == 0) { d /= 5; ++fives; }
    if (d == 1 && tens <= 18 && fives <= 18) {
      int digits = tens > fives ? tens : fives;
      __int128 scale = 1;
      for (int i = 0; i < digits; ++i) scale *= 10;
      __int128 scaled = i128(num_) * scale / den_;
      bool neg = scaled < 0;
      if (neg) scaled = -scaled;
      std::string s = u128_str(scaled);
      while (static_cast<int>(s.size()) <= digits) s = "0" + s;
      s.insert(s.size() - digits, ".");
      return (neg ? "-" : "") + s;
    }
    return std::to_string(num_) + "/" + std::to_string(den_);
  }

  // Parses the forms str() produces.
  static Rational parse(const std::string& s) {
    if (s.empty()) throw FormatError("empty rational");
    auto slash = s.find('/');
    if (slash != std::string::npos) {
      return Rational(to_i64(s.substr(0, slash)), to_i64(s.substr(slash + 1)));
    }
    auto dot = s.find('.');
    if (dot != std::string::npos) {
      std::string frac = s.substr(dot + 1);
      std::int64_t den = 1;
      for (std::size_t i = 0; i < frac.size(); ++i) {
        if (den > (1LL << 56)) throw Overflow("rational literal " + s);
        den *= 10;
      }
      std::int64_t whole = to_i64(s.substr(0, dot));
      std::int64_t part = frac.empty() ? 0 : to_i64(frac);
      bool neg = s[0] == '-';
      __int128 n = i128(whole) * den + (neg ? -part : part);
      return make(n, den);
    }
    return Rational(to_i64(s));
  }

 private:
  static __int128 i128(std::int64_t v) { return static_cast<__int128>(v); }

  static std::string u128_str(__int128 v) {
    if (v == 0) return "0";
    std::string s;
    while (v > 0) {
      s.insert(s.begin(), static_cast<char>('0' + static_cast<int>(v % 10)));
      v /= 10;
    }
    return s;
  }

  static std::int64_t to_i64(const std::string& s) {
    try {
      std::size_t pos = 0;
      std::int64_t v = std::stoll(s, &pos);
      if (pos != s.size()) throw FormatError("bad integer: " + s);
      return v;
    } catch (const std::out_of_range&) {
      throw Overflow("integer literal " + s);
    } catch (const std::invalid_argument&) {
      throw FormatError("bad integer: " + s);
    }
  }

  static Rational make(__int128 n, __int128 d) {
    Rational r;
    r.assign128(n, d);
    return r;
  }

  void assign(std::int64_t n, std::int64_t d) { assign128(n, d); }

  void assign128(__int128 n, __int128 d) {
    if (d == 0) throw Error("zero denominator");
    if (d < 0) { n = -n; d = -d; }
    __int128 a = n < 0 ? -n : n, b = d;
    while (b != 0) { __int128 t = a % b; a = b; b = t; }
    if (a != 0) { n /= a; d /= a; }
    const __int128 lo = static_cast<__int128>(INT64_MIN);
    const __int128 hi = static_cast<__int128>(INT64_MAX);
    if (n < lo || n > hi || d > hi) throw Overflow("rational out of range");
    num_ = static_cast<std::int64_t>(n);
    den_ = static_cast<std::int64_t>(d);
  }

  std::int64_t num_;
  std::int64_t den_;
};

}  // namespace degnli
