#pragma once

#include <cstdint>
#include <vector>

#include "curvebox/arith.hpp"
#include "curvebox/random.hpp"

inline std::vector<std::int64_t> coeffs_of(const curvebox::ModPoly& f) {
  return {f.coeffs().begin(), f.coeffs().end()};
}

inline std::vector<mpq_class> weights_of(const curvebox::WeightedBody& b) { return b.weights; }
