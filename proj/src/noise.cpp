#include "dpcd/noise.hpp"

#include <cmath>
#include <stdexcept>

namespace dpcd {

namespace {

constexpr double kTwoPi = 6.283185307179586476925286766559;

double to_unit(uint64_t bits) {
  // (k + 0.5) * 2^-53 stays strictly inside (0, 1).
  return (double(bits >> 11) + 0.5) * 0x1.0p-53;
}

}  // namespace

NoiseSource::NoiseSource(bool zeroed, uint64_t seed)
    : zeroed_(zeroed), seed_(seed), engine_(mix64(seed ^ 0x2545f4914f6cdd1dULL)) {}

double NoiseSource::uniform01() { return to_unit(engine_()); }

double NoiseSource::gaussian(double stddev) {
  if (stddev < 0) throw std::invalid_argument("gaussian: negative stddev");
  if (zeroed_) return 0.0;
  const double u1 = uniform01();
  const double u2 = uniform01();
  return stddev * std::sqrt(-2.0 * std::log(u1)) * std::cos(kTwoPi * u2);
}

double NoiseSource::laplace(double scale) {
  if (scale < 0) throw std::invalid_argument("laplace: negative scale");
  if (zeroed_) return 0.0;
  const double u = uniform01();
  return u < 0.5 ? scale * std::log(2.0 * u) : -scale * std::log(2.0 * (1.0 - u));
}

double NoiseSource::keyed_gaussian(uint64_t key, double stddev) const {
  if (stddev < 0) throw std::invalid_argument("keyed_gaussian: negative stddev");
  if (zeroed_) return 0.0;
  const uint64_t s = mix64(seed_ ^ mix64(key));
  const double u1 = to_unit(mix64(s ^ 0xd1b54a32d192ed03ULL));
  const double u2 = to_unit(mix64(s ^ 0x8cb92ba72f3d8dd7ULL));
  return stddev * std::sqrt(-2.0 * std::log(u1)) * std::cos(kTwoPi * u2);
}

NoiseSource NoiseSource::fork(uint64_t salt) const {
  if (zeroed_) return zeroed();
  return seeded(mix64(seed_ ^ mix64(salt ^ 0x6a09e667f3bcc909ULL)));
}

}  // namespace dpcd
