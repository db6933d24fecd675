#pragma once

#include <complex>
#include <cstdint>
#include <random>
#include <stdexcept>
#include <string>

namespace qgf {

using cplx = std::complex<double>;

inline constexpr cplx imag_unit{0.0, 1.0};

/// Base class for all library errors.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Operand register sizes disagree.
class DimensionError : public Error {
 public:
  using Error::Error;
};

/// A desk-scale budget (qubit count, matrix dimension) was exceeded.
class ResourceError : public Error {
 public:
  using Error::Error;
};

/// An argument violates an operation precondition.
class ParameterError : public Error {
 public:
  using Error::Error;
};

/// The filter has numerically annihilated the state: the weighted overlap
/// denominator fell below the configured floor.
class DegenerateDenominator : public Error {
 public:
  using Error::Error;
};

/// Every point of a parameter scan hit a degenerate denominator.
class AllDegenerate : public Error {
 public:
  using Error::Error;
};

/// The filtered-state norm underflowed to zero.
class UnderflowAnnihilated : public Error {
 public:
  using Error::Error;
};

/// A run configuration failed validation.
class ConfigError : public Error {
 public:
  using Error::Error;
};

/// Seedable portable generator. mt19937_64 output is fixed by the standard,
/// and uniform doubles are derived from raw bits rather than through
/// implementation-defined distributions, so sequences are reproducible
/// across platforms for a given seed.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  /// Uniform double in [0, 1) with 53 random bits.
  double uniform() {
    return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
  }

  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

  bool bernoulli(double p) { return uniform() < p; }

  std::uint64_t next_u64() { return engine_(); }

  /// Deterministic sub-seed derivation (splitmix64 mixing), used to give
  /// independent streams to concurrent tasks indexed by (a, b, c).
  static std::uint64_t derive(std::uint64_t base, std::uint64_t a,
                              std::uint64_t b = 0, std::uint64_t c = 0) {
    auto mix = [](std::uint64_t x) {
      x += 0x9e3779b97f4a7c15ULL;
      x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
      x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
      return x ^ (x >> 31);
    };
    std::uint64_t s = mix(base);
    s = mix(s ^ mix(a));
    s = mix(s ^ mix(b + 0x632be59bd9b4e019ULL));
    s = mix(s ^ mix(c + 0x9e6c63d0876a9a47ULL));
    return s;
  }

 private:
  std::mt19937_64 engine_;
};

}  // namespace qgf
