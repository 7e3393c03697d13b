#ifndef FIXEDPT_TESTS_SUPPORT_HPP_
#define FIXEDPT_TESTS_SUPPORT_HPP_

#include <algorithm>
#include <random>
#include <vector>

#include "fixedpt/core.hpp"

namespace fixedpt::testing {

inline FixedPointSystem sys(std::initializer_list<WeightMultiset> points)
{
    std::vector<WeightMultiset> pts(points);
    return FixedPointSystem::from_weights(static_cast<int>(pts.front().size()),
                                          pts);
}

/// Same points, shuffled, with fresh labels.
inline FixedPointSystem shuffled(const FixedPointSystem& s, std::mt19937& rng)
{
    std::vector<WeightMultiset> pts;
    for (const auto& p : s.points()) {
        pts.push_back(p.weights);
    }
    std::shuffle(pts.begin(), pts.end(), rng);
    return FixedPointSystem::from_weights(s.half_dim(), pts);
}

/// Random system with weights in [-bound, bound] \ {0}.
inline FixedPointSystem random_system(std::mt19937& rng, int n, int points,
                                      Weight bound)
{
    std::uniform_int_distribution<Weight> dist(-bound, bound - 1);
    std::vector<WeightMultiset> pts;
    for (int i = 0; i < points; ++i) {
        std::vector<Weight> ws;
        for (int j = 0; j < n; ++j) {
            Weight w = dist(rng);
            ws.push_back(w >= 0 ? w + 1 : w);
        }
        pts.emplace_back(std::move(ws));
    }
    return FixedPointSystem::from_weights(n, pts);
}

}  // namespace fixedpt::testing

#endif  // FIXEDPT_TESTS_SUPPORT_HPP_
