#pragma once

#include <cmath>
#include <cstdint>
#include <span>
#include <string>

#include "exact/errors.hpp"
#include "exact/runtime/state.hpp"

namespace exact {

/// Forward-backward representation pair mapping into a shared latent space.
/// Implementations must be deterministic and safe for concurrent reads.
class RepresentationProvider {
 public:
  virtual ~RepresentationProvider() = default;

  virtual LatentVector backward(const StateSample& state) const = 0;
  virtual LatentVector forward(const StateSample& state, const ActionSample& action) const = 0;
  virtual std::size_t dim() const = 0;
};

/// Stand-in for pretrained representations: inputs are quantized to 1e-3,
/// hashed as integers, expanded to `dim` values in (-1, 1) and normalized to
/// unit length. Bit-identical across platforms.
class MockProvider final : public RepresentationProvider {
 public:
  static constexpr double kQuantum = 1e-3;

  explicit MockProvider(std::uint64_t seed = 0, std::size_t dim = 32) : seed_(seed), dim_(dim) {
    if (dim == 0) throw ConfigError("latent dimension must be positive");
  }

  std::uint64_t seed() const { return seed_; }
  std::size_t dim() const override { return dim_; }

  LatentVector backward(const StateSample& state) const override {
    std::uint64_t h = mix(seed_ ^ kBackwardTag);
    h = absorb_state(h, state);
    return expand(h);
  }

  LatentVector forward(const StateSample& state, const ActionSample& action) const override {
    std::uint64_t h = mix(seed_ ^ kForwardTag);
    h = absorb_state(h, state);
    h = absorb(h, action.values);
    return expand(h);
  }

  /// splitmix64 finalizer.
  static constexpr std::uint64_t mix(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
  }

  static std::int64_t quantize(double v) { return std::llround(v / kQuantum); }

 private:
  static constexpr std::uint64_t kBackwardTag = 0x42414b5741524400ULL;
  static constexpr std::uint64_t kForwardTag = 0x464f525741524400ULL;

  static std::uint64_t absorb(std::uint64_t h, std::span<const double> values) {
    h = mix(h ^ values.size());
    for (double v : values) h = mix(h ^ static_cast<std::uint64_t>(quantize(v)));
    return h;
  }

  static std::uint64_t absorb_state(std::uint64_t h, const StateSample& s) {
    h = absorb(h, s.pos);
    if (s.vel) h = absorb(h, *s.vel);
    if (s.extra) h = absorb(h, *s.extra);
    return h;
  }

  LatentVector expand(std::uint64_t h) const {
    LatentVector z(dim_);
    double norm2 = 0.0;
    for (std::size_t i = 0; i < dim_; ++i) {
      const std::uint64_t bits = mix(h + 0x632be59bd9b4e019ULL * (i + 1));
      const double unit = (static_cast<double>(bits >> 11) + 0.5) * 0x1.0p-53;  // (0, 1)
      z[i] = 2.0 * unit - 1.0;
      norm2 += z[i] * z[i];
    }
    const double norm = std::sqrt(norm2);
    for (double& v : z) v /= norm;
    return z;
  }

  std::uint64_t seed_;
  std::size_t dim_;
};

}  // namespace exact
