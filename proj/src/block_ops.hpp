#pragma once

#include <cstddef>
#include <vector>

#include "augblock/augment.hpp"
#include "augblock/parallel.hpp"

namespace augblock::detail {

// Sum of per-block contributions. Blocks may run concurrently; the reduction
// always runs in block order.
template <class Term>
Vector block_sum(std::size_t blocks, std::size_t length, unsigned threads, Term&& term) {
  std::vector<Vector> parts(blocks);
  parallel_for(blocks, threads, [&](std::size_t i) { parts[i] = term(i); });
  Vector out(length, 0.0);
  for (const auto& part : parts)
    for (std::size_t k = 0; k < length; ++k) out[k] += part[k];
  return out;
}

// Sum of the block projectors applied to the unit vector e_index.
inline Vector project_unit(const AugmentedSystem& sys, std::size_t index, unsigned threads) {
  const std::size_t len = sys.augmented_extent();
  Vector e(len, 0.0);
  e[index] = 1.0;
  return block_sum(sys.block_count(), len, threads,
                   [&](std::size_t i) { return sys.factorization(i).apply_projector(e); });
}

}  // namespace augblock::detail
