#include "fixedpt/core.hpp"

#include <algorithm>
#include <numeric>
#include <set>
#include <sstream>

namespace fixedpt {

namespace {

void validate_weights(const std::vector<Weight>& weights)
{
    for (Weight w : weights) {
        if (w == 0) {
            throw Error("zero weight in multiset");
        }
        if (w > kMaxWeightMagnitude || w < -kMaxWeightMagnitude) {
            throw Error("weight magnitude exceeds " +
                        std::to_string(kMaxWeightMagnitude));
        }
    }
}

// Order of points inside a canonical key.
bool point_less(const WeightMultiset& a, const WeightMultiset& b)
{
    auto la = lambda_count(a);
    auto lb = lambda_count(b);
    return la != lb ? la < lb : a < b;
}

std::vector<WeightMultiset> sorted_points(std::vector<WeightMultiset> points)
{
    std::sort(points.begin(), points.end(), point_less);
    return points;
}

bool precedes(const std::vector<WeightMultiset>& a,
              const std::vector<WeightMultiset>& b)
{
    return std::lexicographical_compare(a.begin(), a.end(), b.begin(),
                                        b.end(), point_less);
}

CanonicalKey canonical_from(int half_dim, std::vector<WeightMultiset> points)
{
    std::vector<WeightMultiset> reversed;
    reversed.reserve(points.size());
    for (const auto& ms : points) {
        reversed.push_back(ms.negated());
    }
    auto forward = sorted_points(std::move(points));
    auto backward = sorted_points(std::move(reversed));
    return CanonicalKey{half_dim, precedes(backward, forward)
                                      ? std::move(backward)
                                      : std::move(forward)};
}

}  // namespace

WeightMultiset::WeightMultiset(std::initializer_list<Weight> weights)
    : WeightMultiset(std::vector<Weight>(weights))
{}

WeightMultiset::WeightMultiset(std::vector<Weight> weights)
    : weights_(std::move(weights))
{
    validate_weights(weights_);
    std::sort(weights_.begin(), weights_.end());
}

std::size_t WeightMultiset::count(Weight value) const
{
    auto [lo, hi] = std::equal_range(weights_.begin(), weights_.end(), value);
    return static_cast<std::size_t>(hi - lo);
}

WeightMultiset WeightMultiset::negated() const
{
    std::vector<Weight> out(weights_.rbegin(), weights_.rend());
    for (auto& w : out) {
        w = -w;
    }
    WeightMultiset result;
    result.weights_ = std::move(out);
    return result;
}

FixedPointSystem::FixedPointSystem(int half_dim, std::vector<FixedPoint> points)
    : half_dim_(half_dim), points_(std::move(points))
{
    if (half_dim_ < 1) {
        throw Error("half-dimension must be positive, got " +
                    std::to_string(half_dim_));
    }
    std::set<std::string> seen;
    for (const auto& pt : points_) {
        if (pt.weights.size() != static_cast<std::size_t>(half_dim_)) {
            throw Error("point " + pt.label + " has " +
                        std::to_string(pt.weights.size()) +
                        " weights, expected " + std::to_string(half_dim_));
        }
        if (!seen.insert(pt.label).second) {
            throw Error("duplicate label " + pt.label);
        }
    }
}

std::string default_label(std::size_t index, std::size_t point_count)
{
    if (point_count <= 3) {
        return std::string(1, static_cast<char>('p' + index));
    }
    return "p" + std::to_string(index);
}

FixedPointSystem FixedPointSystem::from_weights(
    int half_dim, const std::vector<WeightMultiset>& weights)
{
    std::vector<FixedPoint> points;
    points.reserve(weights.size());
    for (std::size_t i = 0; i < weights.size(); ++i) {
        points.push_back({default_label(i, weights.size()), weights[i]});
    }
    return FixedPointSystem(half_dim, std::move(points));
}

const FixedPoint& FixedPointSystem::at_label(const std::string& label) const
{
    for (const auto& pt : points_) {
        if (pt.label == label) {
            return pt;
        }
    }
    throw Error("no point labelled " + label);
}

std::size_t lambda_count(const WeightMultiset& ms)
{
    auto values = ms.values();
    return static_cast<std::size_t>(
        std::lower_bound(values.begin(), values.end(), Weight{0}) -
        values.begin());
}

Weight largest_weight(const FixedPointSystem& system)
{
    Weight best = 0;
    for (const auto& pt : system.points()) {
        if (!pt.weights.empty()) {
            best = std::max(best, pt.weights.values().back());
        }
    }
    if (best <= 0) {
        throw Error("system has no positive weight");
    }
    return best;
}

FixedPointSystem reverse_action(const FixedPointSystem& system)
{
    std::vector<FixedPoint> points;
    points.reserve(system.size());
    for (const auto& pt : system.points()) {
        points.push_back({pt.label, pt.weights.negated()});
    }
    return FixedPointSystem(system.half_dim(), std::move(points));
}

CanonicalKey canonicalize(const FixedPointSystem& system)
{
    std::vector<WeightMultiset> points;
    points.reserve(system.size());
    for (const auto& pt : system.points()) {
        points.push_back(pt.weights);
    }
    return canonical_from(system.half_dim(), std::move(points));
}

CanonicalKey canonicalize(const CanonicalKey& key)
{
    return canonical_from(key.half_dim, key.points);
}

Weight effectivity_gcd(const FixedPointSystem& system)
{
    Weight g = 0;
    for (const auto& pt : system.points()) {
        for (Weight w : pt.weights) {
            g = std::gcd(g, w < 0 ? -w : w);
        }
    }
    if (g == 0) {
        throw Error("system carries no weights");
    }
    return g;
}

std::string to_string(const WeightMultiset& ms)
{
    std::ostringstream out;
    out << '{';
    bool first = true;
    for (Weight w : ms) {
        out << (first ? "" : ",") << w;
        first = false;
    }
    out << '}';
    return out.str();
}

std::string to_string(const FixedPointSystem& system)
{
    std::ostringstream out;
    out << "n=" << system.half_dim() << ' ';
    for (std::size_t i = 0; i < system.size(); ++i) {
        out << (i ? " " : "") << system[i].label << '='
            << to_string(system[i].weights);
    }
    return out.str();
}

}  // namespace fixedpt
