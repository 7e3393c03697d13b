#ifndef FIXEDPT_SEARCH_INTERNAL_HPP_
#define FIXEDPT_SEARCH_INTERNAL_HPP_

#include <vector>

#include "fixedpt/core.hpp"

namespace fixedpt::detail {

/// Weights of one point as a sorted plain vector (the kernel's hot type).
using Sorted = std::vector<Weight>;

/// All nondecreasing sequences of `size` elements drawn from `values`
/// (which must be sorted ascending).
std::vector<std::vector<Weight>> multisets_of(const std::vector<Weight>& values,
                                              std::size_t size);

/// Sorted multisets of n weights in [-bound, bound] \ {0}, bucketed by the
/// number of negative entries.
std::vector<std::vector<Sorted>> multisets_by_lambda(int n, Weight bound);

Weight max_abs(const std::vector<WeightMultiset>& points);

}  // namespace fixedpt::detail

#endif  // FIXEDPT_SEARCH_INTERNAL_HPP_
