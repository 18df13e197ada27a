#pragma once

#include <cstdint>
#include <numeric>
#include <optional>
#include <stdexcept>
#include <string>

namespace mmirv {

/// Exact rational coefficient in (0, 1], always kept in reduced form.
/// Token fractions split and rejoin without rounding; anything outside
/// (0, 1] is rejected at construction time.
class Fraction {
 public:
  Fraction() = default;  // 1/1

  Fraction(long long num, long long den) {
    if (num <= 0 || den <= 0) throw std::invalid_argument("fraction must be positive");
    long long g = std::gcd(num, den);
    num_ = num / g;
    den_ = den / g;
    if (num_ > den_) throw std::invalid_argument("fraction must be <= 1");
  }

  static Fraction one() { return Fraction(); }

  long long num() const { return num_; }
  long long den() const { return den_; }
  bool is_one() const { return num_ == den_; }

  friend bool operator==(const Fraction& a, const Fraction& b) {
    return a.num_ == b.num_ && a.den_ == b.den_;
  }
  friend bool operator<(const Fraction& a, const Fraction& b) {
    return (__int128)a.num_ * b.den_ < (__int128)b.num_ * a.den_;
  }
  friend bool operator<=(const Fraction& a, const Fraction& b) {
    return a == b || a < b;
  }

  /// Sum of two fractions; empty when the sum exceeds 1.
  static std::optional<Fraction> add_checked(const Fraction& a, const Fraction& b) {
    __int128 num = (__int128)a.num_ * b.den_ + (__int128)b.num_ * a.den_;
    __int128 den = (__int128)a.den_ * b.den_;
    if (num > den) return std::nullopt;
    return reduced(num, den);
  }

  /// Difference `*this - part`; requires part < *this.
  Fraction minus(const Fraction& part) const {
    if (!(part < *this)) throw std::invalid_argument("fraction underflow");
    __int128 num = (__int128)num_ * part.den_ - (__int128)part.num_ * den_;
    __int128 den = (__int128)den_ * part.den_;
    return reduced(num, den);
  }

  std::string to_string() const {
    if (is_one()) return "1";
    return std::to_string(num_) + "/" + std::to_string(den_);
  }

 private:
  static Fraction reduced(__int128 num, __int128 den) {
    __int128 g = gcd128(num, den);
    num /= g;
    den /= g;
    if (num > INT64_MAX || den > INT64_MAX)
      throw std::overflow_error("fraction denominator overflow");
    Fraction f;
    f.num_ = (long long)num;
    f.den_ = (long long)den;
    return f;
  }

  static __int128 gcd128(__int128 a, __int128 b) {
    while (b != 0) {
      __int128 t = a % b;
      a = b;
      b = t;
    }
    return a;
  }

  long long num_ = 1;
  long long den_ = 1;
};

}  // namespace mmirv
