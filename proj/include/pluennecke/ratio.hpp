#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <optional>
#include <stdexcept>
#include <string>

namespace pluennecke {

using BigInt = boost::multiprecision::cpp_int;

struct ValidationError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct BudgetError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Arbitrary-precision nonnegative rational, always in lowest terms.
/// Every ratio, weight and magnification value in this library is one of
/// these; floating point is never used.
class ExactRatio {
 public:
  ExactRatio() : value_(0) {}
  ExactRatio(long long n) : value_(n) { check_nonnegative(); }
  ExactRatio(const BigInt& n) : value_(n) { check_nonnegative(); }
  ExactRatio(const BigInt& num, const BigInt& den) : value_(num) {
    if (den == 0) throw ValidationError("ExactRatio: zero denominator");
    value_ /= boost::multiprecision::cpp_rational(den);
    check_nonnegative();
  }

  BigInt numerator() const { return boost::multiprecision::numerator(value_); }
  BigInt denominator() const {
    return boost::multiprecision::denominator(value_);
  }
  bool is_integral() const { return denominator() == 1; }
  bool is_zero() const { return value_ == 0; }

  friend ExactRatio operator+(const ExactRatio& a, const ExactRatio& b) {
    return ExactRatio(a.value_ + b.value_);
  }
  friend ExactRatio operator*(const ExactRatio& a, const ExactRatio& b) {
    return ExactRatio(a.value_ * b.value_);
  }
  friend ExactRatio operator/(const ExactRatio& a, const ExactRatio& b) {
    if (b.is_zero()) throw ValidationError("ExactRatio: division by zero");
    return ExactRatio(a.value_ / b.value_);
  }
  ExactRatio& operator+=(const ExactRatio& o) {
    value_ += o.value_;
    return *this;
  }

  friend bool operator==(const ExactRatio& a, const ExactRatio& b) {
    return a.value_ == b.value_;
  }
  friend bool operator!=(const ExactRatio& a, const ExactRatio& b) {
    return a.value_ != b.value_;
  }
  friend bool operator<(const ExactRatio& a, const ExactRatio& b) {
    return a.value_ < b.value_;
  }
  friend bool operator<=(const ExactRatio& a, const ExactRatio& b) {
    return a.value_ <= b.value_;
  }
  friend bool operator>(const ExactRatio& a, const ExactRatio& b) {
    return a.value_ > b.value_;
  }
  friend bool operator>=(const ExactRatio& a, const ExactRatio& b) {
    return a.value_ >= b.value_;
  }

  /// x^e for signed e; x must be nonzero when e < 0.
  ExactRatio pow(long long e) const {
    if (e < 0) {
      if (is_zero()) throw ValidationError("ExactRatio: 0 to negative power");
      return ExactRatio(1) / pow(-e);
    }
    boost::multiprecision::cpp_rational r = 1;
    boost::multiprecision::cpp_rational base = value_;
    for (long long b = e; b > 0; b >>= 1) {
      if (b & 1) r *= base;
      base *= base;
    }
    return ExactRatio(r);
  }

  /// Reciprocal; rejects zero.
  ExactRatio inverse() const { return ExactRatio(1) / *this; }

  /// Lowest-terms string: "p/q", or plain "n" when integral.
  std::string str() const {
    std::string s = numerator().str();
    if (!is_integral()) s += "/" + denominator().str();
    return s;
  }

  /// Parses "p", "p/q"; rejects anything else.
  static ExactRatio parse(const std::string& text) {
    auto slash = text.find('/');
    try {
      if (slash == std::string::npos) return ExactRatio(BigInt(text));
      return ExactRatio(BigInt(text.substr(0, slash)),
                        BigInt(text.substr(slash + 1)));
    } catch (const std::exception&) {
      throw ValidationError("ExactRatio: cannot parse '" + text + "'");
    }
  }

 private:
  explicit ExactRatio(boost::multiprecision::cpp_rational v)
      : value_(std::move(v)) {
    check_nonnegative();
  }
  void check_nonnegative() const {
    if (value_ < 0)
      throw ValidationError("ExactRatio: negative values are not supported");
  }

  boost::multiprecision::cpp_rational value_;
};

inline BigInt ipow(BigInt base, unsigned long long e) {
  BigInt r = 1;
  for (; e > 0; e >>= 1) {
    if (e & 1) r *= base;
    base *= base;
  }
  return r;
}

inline BigInt binomial(unsigned long long n, unsigned long long k) {
  if (k > n) return 0;
  if (k > n - k) k = n - k;
  BigInt r = 1;
  for (unsigned long long i = 1; i <= k; ++i) {
    r *= BigInt(n - k + i);
    r /= BigInt(i);
  }
  return r;
}

/// Exact integer k-th root when n is a perfect k-th power.
inline std::optional<BigInt> exact_kth_root(const BigInt& n, unsigned k) {
  if (n < 0 || k == 0) return std::nullopt;
  if (n == 0 || n == 1 || k == 1) return n;
  BigInt lo = 1, hi = n;
  while (lo <= hi) {
    BigInt mid = (lo + hi) / 2;
    BigInt p = ipow(mid, k);
    if (p == n) return mid;
    if (p < n)
      lo = mid + 1;
    else
      hi = mid - 1;
  }
  return std::nullopt;
}

/// Rational h-th root of r, when it exists (both components must be
/// perfect h-th powers once in lowest terms).
inline std::optional<ExactRatio> exact_kth_root(const ExactRatio& r,
                                                unsigned k) {
  auto num = exact_kth_root(r.numerator(), k);
  if (!num) return std::nullopt;
  auto den = exact_kth_root(r.denominator(), k);
  if (!den) return std::nullopt;
  return ExactRatio(*num, *den);
}

}  // namespace pluennecke
