#ifndef ENTANGLE_SPIN_HPP
#define ENTANGLE_SPIN_HPP

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

namespace entangle {

/// Spin magnitude s, held as the integer 2s so that only integer and
/// half-integer values are representable.
class SpinMagnitude {
 public:
  explicit SpinMagnitude(int twice_s) : twice_s_(twice_s) {
    if (twice_s < 1)
      throw std::invalid_argument("twice-spin must be >= 1, got " + std::to_string(twice_s));
  }

  /// Parses "1/2", "3/2", "2", "0.5", "2.5". Anything that is not a positive
  /// multiple of 1/2 is rejected.
  static SpinMagnitude parse(const std::string& text);

  int twice() const noexcept { return twice_s_; }
  double value() const noexcept { return 0.5 * twice_s_; }
  int dimension() const noexcept { return twice_s_ + 1; }

  /// "1/2", "1", "3/2", ...
  std::string label() const {
    return twice_s_ % 2 == 0 ? std::to_string(twice_s_ / 2) : std::to_string(twice_s_) + "/2";
  }

  friend bool operator==(SpinMagnitude, SpinMagnitude) = default;

 private:
  int twice_s_;
};

inline SpinMagnitude SpinMagnitude::parse(const std::string& text) {
  auto fail = [&] { throw std::invalid_argument("invalid spin '" + text + "'"); };
  if (text.empty()) fail();
  if (auto slash = text.find('/'); slash != std::string::npos) {
    if (text.substr(slash + 1) != "2") fail();
    std::size_t used = 0;
    int num = 0;
    try {
      num = std::stoi(text.substr(0, slash), &used);
    } catch (const std::exception&) {
      fail();
    }
    if (used != slash) fail();
    return SpinMagnitude(num);
  }
  double value = 0.0;
  std::size_t used = 0;
  try {
    value = std::stod(text, &used);
  } catch (const std::exception&) {
    fail();
  }
  if (used != text.size()) fail();
  const double twice = 2.0 * value;
  if (!(twice >= 1.0) || twice != std::round(twice) || twice > 1e6) fail();
  return SpinMagnitude(static_cast<int>(twice));
}

/// Maps any angle onto [0, 2pi).
template <typename Scalar>
Scalar canonical_angle(Scalar radians) {
  constexpr Scalar two_pi = 2 * std::numbers::pi_v<Scalar>;
  if (radians >= 0 && radians < two_pi) return radians;
  Scalar r = std::fmod(radians, two_pi);
  if (r < 0) r += two_pi;
  if (r >= two_pi) r = 0;
  return r;
}

/// Relative angle between two analyzer axes, cos(alpha) = a.b.
template <typename Scalar = double>
class RelativeAngle {
 public:
  explicit RelativeAngle(Scalar radians) : alpha_(canonical_angle(radians)) {}
  Scalar radians() const noexcept { return alpha_; }

 private:
  Scalar alpha_;
};

template <typename Scalar>
RelativeAngle(Scalar) -> RelativeAngle<Scalar>;

template <typename Scalar>
Scalar degrees_to_radians(Scalar deg) {
  return deg * std::numbers::pi_v<Scalar> / 180;
}

}  // namespace entangle

#endif  // ENTANGLE_SPIN_HPP
