#ifndef FIXEDPT_ISOTROPY_HPP_
#define FIXEDPT_ISOTROPY_HPP_

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "fixedpt/constraints.hpp"
#include "fixedpt/core.hpp"

namespace fixedpt {

/// Shape of a component of M^{Z_k} that contains fixed points, as allowed
/// by the low-dimensional classification.
enum class ComponentType {
    isolated,     // a lone fixed point, no k-divisible weights
    sphere_pair,  // 2-sphere: {m} and {-m}
    dim6_pair,    // {a, b, -a-b} and {a+b, -a, -b}
    cp2_triple,   // {a+b, a}, {-a, b}, {-b, -a-b}
};

std::string_view to_string(ComponentType type);

/**
 * One component of the decomposition.
 *
 * Labels are stored in role order: sphere_pair lists the point carrying +m
 * first; dim6_pair lists the {a, b, -a-b} point first; cp2_triple lists the
 * points carrying {a+b, a}, {-a, b}, {-b, -a-b} in that order. `a` holds m
 * for a sphere and a' for the larger shapes; `b` is zero unless used.
 */
struct Component {
    std::vector<std::string> labels;
    ComponentType type = ComponentType::isolated;
    Weight a = 0;
    Weight b = 0;

    friend bool operator==(const Component&, const Component&) = default;
};

struct IsotropyDecomposition {
    Weight k = 0;
    std::vector<Component> components;

    /// Component containing `label`.
    [[nodiscard]] const Component& component_of(const std::string& label) const;
};

struct IsotropyResult {
    std::optional<IsotropyDecomposition> decomposition;
    /// One reason per rejected partition (empty when one was accepted
    /// before reaching it).
    std::vector<std::string> rejections;

    [[nodiscard]] bool consistent() const { return decomposition.has_value(); }
};

/// Weights divisible by k: the tangent weights of the Z_k-fixed component.
WeightMultiset sub_multiset_mod_k(const WeightMultiset& ms, Weight k);

/// Multisets of residues mod k (representatives in [0, k-1]) agree.
/// Throws on a size mismatch or k < 2.
CheckResult residues_match(const WeightMultiset& a, const WeightMultiset& b,
                           Weight k);

std::vector<ComponentType> admissible_component_shapes(int point_count,
                                                       Weight k);

/// Tries every set partition of the (at most three) points and returns the
/// first one whose blocks all match an admissible shape and consume every
/// k-divisible weight.
IsotropyResult classify_isotropy(const FixedPointSystem& system, Weight k);

/// classify_isotropy for every k in [2, max |weight|].
CheckResult isotropy_check(const FixedPointSystem& system);

/// Three points only: with d = max |weight| (the largest weight when the
/// weights pair up), d occurs once as +d and once as -d, at two distinct
/// residue-matched points, and the third point has no multiple of d.
CheckResult largest_weight_structure(const FixedPointSystem& system);

/// v carries {-d} and w carries {d} as their only multiples of the largest
/// weight d, residues agree mod d and c1 agrees; then lambda(v)+1 =
/// lambda(w). Not applicable when any precondition fails.
CheckResult lambda_step_check(const FixedPoint& v, const FixedPoint& w,
                              Weight d, const FixedPointSystem& system);

/// lambda_v(M) - lambda_w(M) + lambda_v(Z) - lambda_w(Z) = -(c1_v - c1_w)/d
/// for residue-matched v, w with Z-weights `zv`, `zw`.
CheckResult component_lambda_relation(const FixedPoint& v, const FixedPoint& w,
                                      Weight d, const WeightMultiset& zv,
                                      const WeightMultiset& zw);

/// Under the lambda_step_check preconditions with d odd:
/// E+_v - E-_v - E+_w + E-_w = 2 (E = count of even weights by sign).
CheckResult even_count_relation_check(const FixedPoint& v, const FixedPoint& w,
                                      Weight d, const FixedPointSystem& system);

/// d odd, v, w residue-matched mod d with Z-weights zv, zw:
/// d (E+_v - E-_v - E+_w + E-_w) = c1_v - c1_w - c1(Z)_v + c1(Z)_w.
CheckResult even_count_component_relation(const FixedPoint& v,
                                          const FixedPoint& w, Weight d,
                                          const WeightMultiset& zv,
                                          const WeightMultiset& zw);

/// Consequences of the component classification for a single integer e,
/// |e| >= 2, on a three-point system: the forced patterns when e, -e or a
/// repeated e appear, and that no further multiples of e occur.
CheckResult multiple_pattern_check(const FixedPointSystem& system, Weight e);

}  // namespace fixedpt

#endif  // FIXEDPT_ISOTROPY_HPP_
