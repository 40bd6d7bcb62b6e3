#pragma once

#include <cmath>
#include <cstdlib>
#include <stdexcept>
#include <string>
#include <string_view>

namespace mick {

// Exact half-integer arithmetic. Stores twice the value so that selection
// rules (parity of m+s, integer quantum-number differences) stay exact;
// conversion to double happens only at evaluation boundaries.
class HalfInt {
public:
  constexpr HalfInt() = default;
  constexpr explicit HalfInt(long long twice_value) : twice_(twice_value) {}

  static constexpr HalfInt from_twice(long long t) { return HalfInt(t); }
  static constexpr HalfInt whole(long long v) { return HalfInt(2 * v); }

  constexpr long long twice() const { return twice_; }
  constexpr bool is_integer() const { return twice_ % 2 == 0; }
  constexpr double value() const { return 0.5 * static_cast<double>(twice_); }

  // Integer part accessor for values known to be whole (e.g. j - m_plus).
  constexpr long long as_integer() const {
    return twice_ / 2; // caller guarantees is_integer()
  }

  friend constexpr HalfInt operator+(HalfInt a, HalfInt b) { return HalfInt(a.twice_ + b.twice_); }
  friend constexpr HalfInt operator-(HalfInt a, HalfInt b) { return HalfInt(a.twice_ - b.twice_); }
  friend constexpr HalfInt operator-(HalfInt a) { return HalfInt(-a.twice_); }
  friend constexpr HalfInt operator+(HalfInt a, long long b) { return HalfInt(a.twice_ + 2 * b); }
  friend constexpr HalfInt operator-(HalfInt a, long long b) { return HalfInt(a.twice_ - 2 * b); }
  friend constexpr bool operator==(HalfInt a, HalfInt b) { return a.twice_ == b.twice_; }
  friend constexpr bool operator!=(HalfInt a, HalfInt b) { return a.twice_ != b.twice_; }
  friend constexpr bool operator<(HalfInt a, HalfInt b) { return a.twice_ < b.twice_; }
  friend constexpr bool operator<=(HalfInt a, HalfInt b) { return a.twice_ <= b.twice_; }
  friend constexpr bool operator>(HalfInt a, HalfInt b) { return a.twice_ > b.twice_; }
  friend constexpr bool operator>=(HalfInt a, HalfInt b) { return a.twice_ >= b.twice_; }

  constexpr HalfInt abs() const { return HalfInt(twice_ < 0 ? -twice_ : twice_); }

  // Accepts "p/2" fractions ("3/2", "-1/2") and decimals ending in .0/.5
  // ("1", "0.5", "-2.0").
  static HalfInt parse(std::string_view text) {
    if (text.empty())
      throw std::invalid_argument("half-integer: empty string");
    const std::string s(text);
    const auto slash = s.find('/');
    if (slash != std::string::npos) {
      if (s.substr(slash + 1) != "2")
        throw std::invalid_argument("half-integer '" + s + "': denominator must be 2");
      std::size_t used = 0;
      const long long p = std::stoll(s.substr(0, slash), &used);
      if (used != slash)
        throw std::invalid_argument("half-integer '" + s + "': bad numerator");
      return HalfInt(p);
    }
    std::size_t used = 0;
    const double v = std::stod(s, &used);
    if (used != s.size())
      throw std::invalid_argument("half-integer '" + s + "': trailing characters");
    const double doubled = 2.0 * v;
    const double rounded = std::round(doubled);
    if (std::abs(doubled - rounded) > 1e-9)
      throw std::invalid_argument("half-integer '" + s + "': must be a multiple of 1/2");
    return HalfInt(static_cast<long long>(rounded));
  }

  std::string str() const {
    if (is_integer())
      return std::to_string(twice_ / 2);
    return std::to_string(twice_) + "/2";
  }

private:
  long long twice_ = 0;
};

} // namespace mick
