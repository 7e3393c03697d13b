#include "fixedpt/isotropy.hpp"

#include <algorithm>
#include <sstream>

namespace fixedpt {

std::string_view to_string(ComponentType type)
{
    switch (type) {
    case ComponentType::isolated:
        return "ISOLATED";
    case ComponentType::sphere_pair:
        return "SPHERE_PAIR";
    case ComponentType::dim6_pair:
        return "DIM6_PAIR";
    case ComponentType::cp2_triple:
        return "CP2_TRIPLE";
    }
    return "?";
}

const Component& IsotropyDecomposition::component_of(
    const std::string& label) const
{
    for (const auto& c : components) {
        if (std::find(c.labels.begin(), c.labels.end(), label) !=
            c.labels.end()) {
            return c;
        }
    }
    throw Error("label " + label + " not in decomposition");
}

namespace {

void require_modulus(Weight k)
{
    if (k < 2) {
        throw Error("modulus must be at least 2, got " + std::to_string(k));
    }
}

Weight residue(Weight w, Weight k)
{
    Weight r = w % k;
    return r < 0 ? r + k : r;
}

std::vector<std::int64_t> sorted_residues(const WeightMultiset& ms, Weight k)
{
    std::vector<std::int64_t> out;
    out.reserve(ms.size());
    for (Weight w : ms) {
        out.push_back(residue(w, k));
    }
    std::sort(out.begin(), out.end());
    return out;
}

using Partition = std::vector<std::vector<std::size_t>>;

const std::vector<Partition>& partitions_of(std::size_t count)
{
    static const std::vector<std::vector<Partition>> table = {
        {{}},
        {{{0}}},
        {{{0}, {1}}, {{0, 1}}},
        {{{0}, {1}, {2}},
         {{0, 1}, {2}},
         {{0, 2}, {1}},
         {{1, 2}, {0}},
         {{0, 1, 2}}},
    };
    return table.at(count);
}

std::string describe(const Partition& part, const FixedPointSystem& system)
{
    std::string out;
    for (const auto& block : part) {
        out += '{';
        for (std::size_t i = 0; i < block.size(); ++i) {
            out += (i ? "," : "") + system[block[i]].label;
        }
        out += '}';
    }
    return out;
}

struct BlockMatch {
    std::optional<Component> component;
    std::string reason;
};

BlockMatch fail_block(std::string reason) { return {std::nullopt, std::move(reason)}; }

BlockMatch match_sphere(const std::vector<std::size_t>& block,
                        const std::vector<WeightMultiset>& subs,
                        const FixedPointSystem& system)
{
    const auto& s0 = subs[block[0]];
    const auto& s1 = subs[block[1]];
    if (s0.size() != 1 || s1.size() != 1) {
        return fail_block("sphere needs one k-divisible weight per point");
    }
    Weight x = *s0.begin();
    Weight y = *s1.begin();
    if (x != -y) {
        return fail_block("sphere weights " + std::to_string(x) + " and " +
                          std::to_string(y) + " are not opposite");
    }
    auto pos = x > 0 ? block[0] : block[1];
    auto neg = x > 0 ? block[1] : block[0];
    return {Component{{system[pos].label, system[neg].label},
                      ComponentType::sphere_pair, x > 0 ? x : -x, 0},
            {}};
}

BlockMatch match_dim6(const std::vector<std::size_t>& block,
                      const std::vector<WeightMultiset>& subs,
                      const FixedPointSystem& system)
{
    for (int flip = 0; flip < 2; ++flip) {
        auto first = block[flip];
        auto second = block[1 - flip];
        const auto& x = subs[first];
        const auto& y = subs[second];
        if (x.size() != 3 || y.size() != 3 || lambda_count(x) != 1) {
            continue;
        }
        // x sorted: {-a-b, a, b} with 0 < a <= b
        auto v = x.values();
        Weight a = v[1];
        Weight b = v[2];
        if (v[0] != -(a + b)) {
            continue;
        }
        if (y == WeightMultiset{a + b, -a, -b}) {
            return {Component{{system[first].label, system[second].label},
                              ComponentType::dim6_pair, a, b},
                    {}};
        }
    }
    return fail_block("no {a,b,-a-b} / {a+b,-a,-b} pattern");
}

BlockMatch match_cp2(const std::vector<std::size_t>& block,
                     const std::vector<WeightMultiset>& subs,
                     const FixedPointSystem& system)
{
    std::array<std::optional<std::size_t>, 3> role;
    for (auto idx : block) {
        const auto& s = subs[idx];
        if (s.size() != 2) {
            return fail_block("point " + system[idx].label + " has " +
                              std::to_string(s.size()) +
                              " k-divisible weights, triple needs 2");
        }
        auto& slot = role[lambda_count(s)];
        if (slot) {
            return fail_block("two triple points with the same sign pattern");
        }
        slot = idx;
    }
    auto mid = subs[*role[1]].values();
    Weight a = -mid[0];
    Weight b = mid[1];
    if (subs[*role[0]] != WeightMultiset{a + b, a} ||
        subs[*role[2]] != WeightMultiset{-b, -a - b}) {
        return fail_block("no {a+b,a} / {-a,b} / {-b,-a-b} pattern");
    }
    return {Component{{system[*role[0]].label, system[*role[1]].label,
                       system[*role[2]].label},
                      ComponentType::cp2_triple, a, b},
            {}};
}

BlockMatch match_block(const std::vector<std::size_t>& block,
                       const std::vector<WeightMultiset>& subs,
                       const FixedPointSystem& system, Weight k)
{
    if (block.size() == 1) {
        const auto& s = subs[block[0]];
        if (!s.empty()) {
            return fail_block("isolated point " + system[block[0]].label +
                              " carries k-divisible weights " + to_string(s));
        }
        return {Component{{system[block[0]].label}, ComponentType::isolated},
                {}};
    }
    for (std::size_t i = 0; i < block.size(); ++i) {
        for (std::size_t j = i + 1; j < block.size(); ++j) {
            const auto& u = system[block[i]];
            const auto& w = system[block[j]];
            if (!residues_match(u.weights, w.weights, k).passed()) {
                return fail_block("weights at " + u.label + " and " +
                                  w.label + " differ mod k");
            }
        }
    }
    std::string reasons;
    for (auto type : admissible_component_shapes(
             static_cast<int>(block.size()), k)) {
        BlockMatch m;
        switch (type) {
        case ComponentType::sphere_pair:
            m = match_sphere(block, subs, system);
            break;
        case ComponentType::dim6_pair:
            m = match_dim6(block, subs, system);
            break;
        case ComponentType::cp2_triple:
            m = match_cp2(block, subs, system);
            break;
        case ComponentType::isolated:
            break;
        }
        if (m.component) {
            return m;
        }
        reasons += (reasons.empty() ? "" : ", ") + m.reason;
    }
    return fail_block(reasons);
}

Weight max_abs_weight(const FixedPointSystem& system)
{
    Weight best = 0;
    for (const auto& pt : system.points()) {
        for (Weight w : pt.weights) {
            best = std::max(best, w < 0 ? -w : w);
        }
    }
    return best;
}

std::int64_t count_multiples(const FixedPointSystem& system, Weight e)
{
    std::int64_t total = 0;
    for (const auto& pt : system.points()) {
        for (Weight w : pt.weights) {
            total += (w % e == 0) ? 1 : 0;
        }
    }
    return total;
}

bool contains_all(const WeightMultiset& ms, std::initializer_list<Weight> need)
{
    WeightMultiset wanted(need);
    for (Weight w : wanted) {
        if (ms.count(w) < wanted.count(w)) {
            return false;
        }
    }
    return true;
}

std::int64_t even_balance(const WeightMultiset& ms)
{
    std::int64_t balance = 0;
    for (Weight w : ms) {
        if (w % 2 == 0) {
            balance += w > 0 ? 1 : -1;
        }
    }
    return balance;
}

// Shared preconditions of the two-point largest-weight lemmas.
bool sphere_pair_preconditions(const FixedPoint& v, const FixedPoint& w,
                               Weight d, const FixedPointSystem& system)
{
    if (d < 2 || largest_weight(system) != d) {
        return false;
    }
    if (v.weights.size() != w.weights.size()) {
        return false;
    }
    if (sub_multiset_mod_k(v.weights, d) != WeightMultiset{-d} ||
        sub_multiset_mod_k(w.weights, d) != WeightMultiset{d}) {
        return false;
    }
    if (!residues_match(v.weights, w.weights, d).passed()) {
        return false;
    }
    return chern1_at(v.weights) == chern1_at(w.weights);
}

}  // namespace

WeightMultiset sub_multiset_mod_k(const WeightMultiset& ms, Weight k)
{
    require_modulus(k);
    std::vector<Weight> out;
    for (Weight w : ms) {
        if (w % k == 0) {
            out.push_back(w);
        }
    }
    return WeightMultiset(std::move(out));
}

CheckResult residues_match(const WeightMultiset& a, const WeightMultiset& b,
                           Weight k)
{
    require_modulus(k);
    if (a.size() != b.size()) {
        throw Error("residue comparison of multisets of sizes " +
                    std::to_string(a.size()) + " and " +
                    std::to_string(b.size()));
    }
    auto ra = sorted_residues(a, k);
    auto rb = sorted_residues(b, k);
    if (ra != rb) {
        return CheckResult::fail(
            Witness{}.add("k", k).add("residues_a", ra).add("residues_b", rb));
    }
    return CheckResult::pass();
}

std::vector<ComponentType> admissible_component_shapes(int point_count,
                                                       Weight k)
{
    require_modulus(k);
    switch (point_count) {
    case 1:
        return {ComponentType::isolated};
    case 2:
        return {ComponentType::sphere_pair, ComponentType::dim6_pair};
    case 3:
        return {ComponentType::cp2_triple};
    default:
        throw Error("no component shape with " + std::to_string(point_count) +
                    " fixed points");
    }
}

IsotropyResult classify_isotropy(const FixedPointSystem& system, Weight k)
{
    require_modulus(k);
    if (system.size() > 3) {
        throw Error("isotropy classification supports at most three points");
    }
    std::vector<WeightMultiset> subs;
    subs.reserve(system.size());
    for (const auto& pt : system.points()) {
        subs.push_back(sub_multiset_mod_k(pt.weights, k));
    }

    IsotropyResult result;
    for (const auto& part : partitions_of(system.size())) {
        IsotropyDecomposition decomposition{k, {}};
        std::string reason;
        for (const auto& block : part) {
            auto m = match_block(block, subs, system, k);
            if (!m.component) {
                reason = m.reason;
                break;
            }
            decomposition.components.push_back(std::move(*m.component));
        }
        if (reason.empty()) {
            result.decomposition = std::move(decomposition);
            return result;
        }
        result.rejections.push_back(describe(part, system) + ": " + reason);
    }
    return result;
}

CheckResult isotropy_check(const FixedPointSystem& system)
{
    if (system.size() > 3) {
        return CheckResult::not_applicable();
    }
    const Weight top = max_abs_weight(system);
    for (Weight k = 2; k <= top; ++k) {
        auto r = classify_isotropy(system, k);
        if (!r.consistent()) {
            std::string reasons;
            for (const auto& s : r.rejections) {
                reasons += (reasons.empty() ? "" : "; ") + s;
            }
            return CheckResult::fail(
                Witness{}.add("k", k).add("reasons", reasons));
        }
    }
    return CheckResult::pass();
}

CheckResult largest_weight_structure(const FixedPointSystem& system)
{
    if (system.size() != 3) {
        return CheckResult::not_applicable();
    }
    // max |w| equals the largest weight once pairing holds, and unlike the
    // largest positive weight it is unchanged by reversing the action
    const Weight d = max_abs_weight(system);
    std::int64_t pos = 0;
    std::int64_t neg = 0;
    std::size_t at_pos = 0;
    std::size_t at_neg = 0;
    for (std::size_t i = 0; i < system.size(); ++i) {
        if (auto c = system[i].weights.count(d); c > 0) {
            pos += static_cast<std::int64_t>(c);
            at_pos = i;
        }
        if (auto c = system[i].weights.count(-d); c > 0) {
            neg += static_cast<std::int64_t>(c);
            at_neg = i;
        }
    }
    if (pos != 1 || neg != 1) {
        return CheckResult::fail(Witness{}
                                     .add("d", d)
                                     .add("count_pos", pos)
                                     .add("count_neg", neg));
    }
    if (at_pos == at_neg) {
        return CheckResult::fail(Witness{}.add("d", d).add(
            "reason", "d and -d at the same point " + system[at_pos].label));
    }
    // mod 1 everything matches and every weight is a multiple of d
    if (d >= 2 &&
        !residues_match(system[at_pos].weights, system[at_neg].weights, d)
             .passed()) {
        return CheckResult::fail(Witness{}.add("d", d).add(
            "reason", "sphere points " + system[at_pos].label + " and " +
                          system[at_neg].label + " differ mod d"));
    }
    const std::size_t third = 3 - at_pos - at_neg;
    if (d == 1 || !sub_multiset_mod_k(system[third].weights, d).empty()) {
        return CheckResult::fail(Witness{}.add("d", d).add(
            "reason",
            "isolated point " + system[third].label + " has a multiple of d"));
    }
    return CheckResult::pass();
}

CheckResult lambda_step_check(const FixedPoint& v, const FixedPoint& w,
                              Weight d, const FixedPointSystem& system)
{
    if (!sphere_pair_preconditions(v, w, d, system)) {
        return CheckResult::not_applicable();
    }
    auto lv = static_cast<std::int64_t>(lambda_count(v.weights));
    auto lw = static_cast<std::int64_t>(lambda_count(w.weights));
    if (lv + 1 != lw) {
        return CheckResult::fail(
            Witness{}.add("lambda_v", lv).add("lambda_w", lw).add("d", d));
    }
    return CheckResult::pass();
}

CheckResult component_lambda_relation(const FixedPoint& v, const FixedPoint& w,
                                      Weight d, const WeightMultiset& zv,
                                      const WeightMultiset& zw)
{
    if (d < 2 || v.weights.size() != w.weights.size() ||
        !residues_match(v.weights, w.weights, d).passed()) {
        return CheckResult::not_applicable();
    }
    const std::int64_t diff = chern1_at(v.weights) - chern1_at(w.weights);
    if (diff % d != 0) {
        return CheckResult::fail(Witness{}.add("c1_difference", diff).add("d", d));
    }
    const auto lhs = static_cast<std::int64_t>(lambda_count(v.weights)) -
                     static_cast<std::int64_t>(lambda_count(w.weights)) +
                     static_cast<std::int64_t>(lambda_count(zv)) -
                     static_cast<std::int64_t>(lambda_count(zw));
    const std::int64_t rhs = -diff / d;
    if (lhs != rhs) {
        return CheckResult::fail(Witness{}.add("lhs", lhs).add("rhs", rhs));
    }
    return CheckResult::pass();
}

CheckResult even_count_relation_check(const FixedPoint& v, const FixedPoint& w,
                                      Weight d, const FixedPointSystem& system)
{
    if (d % 2 == 0 || !sphere_pair_preconditions(v, w, d, system)) {
        return CheckResult::not_applicable();
    }
    const std::int64_t value = even_balance(v.weights) - even_balance(w.weights);
    if (value != 2) {
        return CheckResult::fail(Witness{}.add("value", value).add("d", d));
    }
    return CheckResult::pass();
}

CheckResult even_count_component_relation(const FixedPoint& v,
                                          const FixedPoint& w, Weight d,
                                          const WeightMultiset& zv,
                                          const WeightMultiset& zw)
{
    if (d < 2 || d % 2 == 0 || v.weights.size() != w.weights.size() ||
        !residues_match(v.weights, w.weights, d).passed()) {
        return CheckResult::not_applicable();
    }
    const std::int64_t lhs =
        d * (even_balance(v.weights) - even_balance(w.weights));
    const std::int64_t rhs = chern1_at(v.weights) - chern1_at(w.weights) -
                             chern1_at(zv) + chern1_at(zw);
    if (lhs != rhs) {
        return CheckResult::fail(Witness{}.add("lhs", lhs).add("rhs", rhs));
    }
    return CheckResult::pass();
}

CheckResult multiple_pattern_check(const FixedPointSystem& system, Weight e)
{
    if (system.size() != 3 || e == 0 || e == 1 || e == -1) {
        return CheckResult::not_applicable();
    }
    const Weight d = largest_weight(system);
    const Weight abs_e = e < 0 ? -e : e;
    const auto multiples = count_multiples(system, e);
    auto failure = [&](int part, std::string reason) {
        return CheckResult::fail(Witness{}
                                     .add("e", e)
                                     .add("part", std::int64_t{part})
                                     .add("reason", std::move(reason)));
    };
    // {2e,e} at alpha, {-e,e} at beta, {-2e,-e} at the remaining point.
    auto triple_at = [&](std::size_t alpha, std::size_t beta) {
        std::size_t gamma = 3 - alpha - beta;
        return contains_all(system[alpha].weights, {2 * e, e}) &&
               contains_all(system[beta].weights, {-e, e}) &&
               contains_all(system[gamma].weights, {-2 * e, -e});
    };

    for (std::size_t a = 0; a < 3; ++a) {
        const auto& sa = system[a].weights;
        for (std::size_t b = 0; b < 3; ++b) {
            if (a == b) {
                continue;
            }
            const auto& sb = system[b].weights;
            // Part 1: e at a, -e at b, |e| > d/2.
            if (sa.contains(e) && sb.contains(-e) && 2 * abs_e > d) {
                if (sa.count(e) != 1 || sb.count(-e) != 1 ||
                    !residues_match(sa, sb, abs_e).passed() || multiples != 2) {
                    return failure(1, "e at " + system[a].label + ", -e at " +
                                          system[b].label);
                }
            }
            // Part 2: e at two distinct points.
            if (a < b && sa.contains(e) && sb.contains(e)) {
                bool ok = (triple_at(a, b) || triple_at(b, a)) &&
                          multiples == 6;
                if (!ok) {
                    return failure(2, "e at " + system[a].label + " and " +
                                          system[b].label);
                }
            }
        }
        // Part 3: e repeated at one point.
        if (sa.count(e) > 1) {
            bool ok = false;
            for (std::size_t b = 0; b < 3; ++b) {
                ok = ok || (b != a && contains_all(sa, {-2 * e, e, e}) &&
                            contains_all(system[b].weights, {2 * e, -e, -e}));
            }
            if (!ok || multiples != 6) {
                return failure(3, "e repeated at " + system[a].label);
            }
        }
        // Part 4: e and -e at one point.
        if (sa.contains(e) && sa.contains(-e)) {
            std::size_t x = (a + 1) % 3;
            std::size_t y = (a + 2) % 3;
            if (!(triple_at(x, a) || triple_at(y, a)) || multiples != 6) {
                return failure(4, "e and -e at " + system[a].label);
            }
        }
    }
    return CheckResult::pass();
}

}  // namespace fixedpt
