#pragma once

#include <span>
#include <string>
#include <string_view>

#include "exact/errors.hpp"
#include "exact/runtime/state.hpp"

namespace exact {

enum class DisjunctionMode {
  AsWritten,  // 1 - sum(1 - z)
  Product,    // 1 - prod(1 - z)
};

inline std::string_view to_string(DisjunctionMode m) {
  return m == DisjunctionMode::AsWritten ? "as_written" : "product";
}

inline DisjunctionMode disjunction_from_string(std::string_view s) {
  if (s == "as_written") return DisjunctionMode::AsWritten;
  if (s == "product") return DisjunctionMode::Product;
  throw ConfigError("disjunction must be 'as_written' or 'product', got '" + std::string(s) + "'");
}

/// Componentwise arithmetic disjunction of latent vectors. A single input is
/// returned unchanged (bitwise); values may leave [0, 1] in as_written mode.
inline LatentVector compose_disjunction(std::span<const LatentVector> zs,
                                        DisjunctionMode mode = DisjunctionMode::AsWritten) {
  if (zs.empty()) throw ConfigError("disjunction of an empty set");
  const std::size_t d = zs.front().size();
  for (const auto& z : zs) {
    if (z.size() != d) throw DimensionError("disjunction inputs have different dimensions");
  }
  if (zs.size() == 1) return zs.front();

  LatentVector out(d);
  for (std::size_t i = 0; i < d; ++i) {
    if (mode == DisjunctionMode::AsWritten) {
      double miss = 0.0;
      for (const auto& z : zs) miss += 1.0 - z[i];
      out[i] = 1.0 - miss;
    } else {
      double miss = 1.0;
      for (const auto& z : zs) miss *= 1.0 - z[i];
      out[i] = 1.0 - miss;
    }
  }
  return out;
}

}  // namespace exact
