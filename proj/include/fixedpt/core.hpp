#ifndef FIXEDPT_CORE_HPP_
#define FIXEDPT_CORE_HPP_

#include <compare>
#include <cstdint>
#include <initializer_list>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace fixedpt {

/// An isotropy weight of the circle representation on a tangent space.
/// Always nonzero. Products and sums that can grow are carried out in
/// arbitrary precision by the constraint code, never in this type.
using Weight = std::int64_t;

/// Largest weight magnitude accepted anywhere in the library.
inline constexpr Weight kMaxWeightMagnitude = (Weight{1} << 31) - 1;

class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/**
 * Finite multiset of nonzero integer weights, stored sorted ascending.
 *
 * Two multisets are equal iff their sorted sequences are equal, so the
 * defaulted comparison operators are multiset comparisons.
 */
class WeightMultiset {
public:
    WeightMultiset() = default;
    WeightMultiset(std::initializer_list<Weight> weights);
    explicit WeightMultiset(std::vector<Weight> weights);

    [[nodiscard]] std::span<const Weight> values() const { return weights_; }
    [[nodiscard]] std::size_t size() const { return weights_.size(); }
    [[nodiscard]] bool empty() const { return weights_.empty(); }
    [[nodiscard]] auto begin() const { return weights_.begin(); }
    [[nodiscard]] auto end() const { return weights_.end(); }

    /// Multiplicity of `value`.
    [[nodiscard]] std::size_t count(Weight value) const;
    [[nodiscard]] bool contains(Weight value) const { return count(value) > 0; }

    [[nodiscard]] WeightMultiset negated() const;

    friend auto operator<=>(const WeightMultiset&,
                            const WeightMultiset&) = default;
    friend bool operator==(const WeightMultiset&,
                           const WeightMultiset&) = default;

private:
    std::vector<Weight> weights_;
};

struct FixedPoint {
    std::string label;
    WeightMultiset weights;

    friend bool operator==(const FixedPoint&, const FixedPoint&) = default;
};

/**
 * Half-dimension n plus the weight data at every isolated fixed point.
 *
 * Construction validates that every point carries exactly n weights and
 * that labels are distinct; the point order is whatever the caller gave.
 */
class FixedPointSystem {
public:
    FixedPointSystem(int half_dim, std::vector<FixedPoint> points);

    /// Points labelled p, q, r (or p0, p1, ... beyond three).
    static FixedPointSystem from_weights(
        int half_dim, const std::vector<WeightMultiset>& weights);

    [[nodiscard]] int half_dim() const { return half_dim_; }
    [[nodiscard]] int dim() const { return 2 * half_dim_; }
    [[nodiscard]] const std::vector<FixedPoint>& points() const
    {
        return points_;
    }
    [[nodiscard]] std::size_t size() const { return points_.size(); }
    [[nodiscard]] const FixedPoint& operator[](std::size_t i) const
    {
        return points_[i];
    }
    [[nodiscard]] const FixedPoint& at_label(const std::string& label) const;

    friend bool operator==(const FixedPointSystem&,
                           const FixedPointSystem&) = default;

private:
    int half_dim_;
    std::vector<FixedPoint> points_;
};

/// Default label for the i-th point of an unlabelled system.
std::string default_label(std::size_t index, std::size_t point_count);

/**
 * Normal form of a system: points sorted by (negative-weight count,
 * weight sequence), and the smaller of the system and its reversal.
 * Labels are discarded.
 */
struct CanonicalKey {
    int half_dim = 0;
    std::vector<WeightMultiset> points;

    [[nodiscard]] FixedPointSystem to_system() const
    {
        return FixedPointSystem::from_weights(half_dim, points);
    }

    friend auto operator<=>(const CanonicalKey&,
                            const CanonicalKey&) = default;
    friend bool operator==(const CanonicalKey&, const CanonicalKey&) = default;
};

/// Number of negative weights counted with multiplicity. The usual Morse
/// index is twice this value; every count in this library is un-doubled.
std::size_t lambda_count(const WeightMultiset& ms);

/// Maximum weight over all points. Throws when no weight is positive.
Weight largest_weight(const FixedPointSystem& system);

FixedPointSystem reverse_action(const FixedPointSystem& system);

CanonicalKey canonicalize(const FixedPointSystem& system);
CanonicalKey canonicalize(const CanonicalKey& key);

/// gcd of |w| over all weights; 1 iff the action is effective.
/// Throws on a system without weights.
Weight effectivity_gcd(const FixedPointSystem& system);

std::string to_string(const WeightMultiset& ms);
std::string to_string(const FixedPointSystem& system);

}  // namespace fixedpt

#endif  // FIXEDPT_CORE_HPP_
