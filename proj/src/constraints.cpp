#include "fixedpt/constraints.hpp"

#include <algorithm>
#include <map>

namespace fixedpt {

std::string_view to_string(Verdict v)
{
    switch (v) {
    case Verdict::pass:
        return "pass";
    case Verdict::fail:
        return "fail";
    case Verdict::not_applicable:
        return "not-applicable";
    }
    return "?";
}

const Witness::Value* Witness::find(std::string_view key) const
{
    for (const auto& [k, v] : fields) {
        if (k == key) {
            return &v;
        }
    }
    return nullptr;
}

std::int64_t Witness::integer(std::string_view key) const
{
    const auto* v = find(key);
    if (v == nullptr || !std::holds_alternative<std::int64_t>(*v)) {
        throw Error("witness has no integer field " + std::string(key));
    }
    return std::get<std::int64_t>(*v);
}

namespace {

struct CheckInfo {
    CheckId id;
    std::string_view name;
    std::string_view anchor;
};

constexpr std::array<CheckInfo, kCheckCount> kCheckInfo = {{
    {CheckId::pairing, "pairing", "Lemma 2.4"},
    {CheckId::lambda_symmetry, "lambda_symmetry", "Lemma 2.2"},
    {CheckId::parity, "parity", "Corollary 2.3"},
    {CheckId::localization, "localization", "Theorem 2.1"},
    {CheckId::chern1_vanishing, "chern1_vanishing", "Corollary 2.7"},
    {CheckId::largest_weight_structure, "largest_weight_structure",
     "Lemma 3.2"},
    {CheckId::isotropy, "isotropy", "Lemma 4.5"},
    {CheckId::effectivity, "effectivity", "Theorem 1.1"},
}};

const CheckInfo& info(CheckId id)
{
    return kCheckInfo[static_cast<std::size_t>(id)];
}

}  // namespace

std::string_view check_name(CheckId id) { return info(id).name; }

std::string_view check_anchor(CheckId id) { return info(id).anchor; }

std::optional<CheckId> check_from_name(std::string_view name)
{
    for (const auto& ci : kCheckInfo) {
        if (ci.name == name) {
            return ci.id;
        }
    }
    return std::nullopt;
}

bool ConstraintReport::overall() const
{
    return std::none_of(checks.begin(), checks.end(), [](const auto& e) {
        return e.verdict == Verdict::fail;
    });
}

const CheckEntry& ConstraintReport::entry(CheckId id) const
{
    for (const auto& e : checks) {
        if (e.id == id) {
            return e;
        }
    }
    throw Error("report has no entry " + std::string(check_name(id)));
}

CheckResult pairing_check(const FixedPointSystem& system)
{
    // Net multiplicity N(l) - N(-l) per |l|; ordered so the first nonzero
    // entry is the smallest witness.
    std::map<Weight, std::pair<std::int64_t, std::int64_t>> counts;
    for (const auto& pt : system.points()) {
        for (Weight w : pt.weights) {
            auto& c = counts[w < 0 ? -w : w];
            (w > 0 ? c.first : c.second) += 1;
        }
    }
    for (const auto& [l, c] : counts) {
        if (c.first != c.second) {
            return CheckResult::fail(Witness{}
                                         .add("l", l)
                                         .add("count_pos", c.first)
                                         .add("count_neg", c.second));
        }
    }
    return CheckResult::pass();
}

CheckResult lambda_symmetry_check(const FixedPointSystem& system)
{
    const int n = system.half_dim();
    std::vector<std::int64_t> hist(static_cast<std::size_t>(n) + 1, 0);
    for (const auto& pt : system.points()) {
        hist[lambda_count(pt.weights)] += 1;
    }
    for (int i = 0; i <= n; ++i) {
        auto a = hist[static_cast<std::size_t>(i)];
        auto b = hist[static_cast<std::size_t>(n - i)];
        if (a != b) {
            return CheckResult::fail(Witness{}
                                         .add("i", std::int64_t{i})
                                         .add("count_i", a)
                                         .add("count_n_minus_i", b));
        }
    }
    return CheckResult::pass();
}

CheckResult parity_check(const FixedPointSystem& system)
{
    const auto k = static_cast<std::int64_t>(system.size());
    const int n = system.half_dim();
    if (k == 1 || (k % 2 == 1 && n % 2 == 1)) {
        return CheckResult::fail(
            Witness{}.add("points", k).add("n", std::int64_t{n}));
    }
    return CheckResult::pass();
}

Rational localization_sum(const FixedPointSystem& system)
{
    Rational total = 0;
    for (const auto& pt : system.points()) {
        BigInt product = 1;
        for (Weight w : pt.weights) {
            product *= w;
        }
        total += Rational(1) / product;
    }
    return total;
}

CheckResult localization_check(const FixedPointSystem& system)
{
    Rational value = localization_sum(system);
    if (value != 0) {
        return CheckResult::fail(Witness{}.add("value", value.str()));
    }
    return CheckResult::pass();
}

std::int64_t chern1_at(const WeightMultiset& ms)
{
    std::int64_t sum = 0;
    for (Weight w : ms) {
        sum += w;
    }
    return sum;
}

BigInt chern_i_at(const WeightMultiset& ms, std::size_t i)
{
    if (i > ms.size()) {
        throw Error("Chern class index " + std::to_string(i) +
                    " exceeds weight count " + std::to_string(ms.size()));
    }
    // sigma[j] after processing a prefix = e_j of that prefix.
    std::vector<BigInt> sigma(i + 1, BigInt(0));
    sigma[0] = 1;
    for (Weight w : ms) {
        for (std::size_t j = i; j >= 1; --j) {
            sigma[j] += sigma[j - 1] * w;
        }
    }
    return sigma[i];
}

CheckResult chern1_vanishing_check(const FixedPointSystem& system)
{
    if (system.size() != 3 || system.half_dim() < 4) {
        return CheckResult::not_applicable();
    }
    for (const auto& pt : system.points()) {
        auto c1 = chern1_at(pt.weights);
        if (c1 != 0) {
            return CheckResult::fail(
                Witness{}.add("point", pt.label).add("c1", c1));
        }
    }
    return CheckResult::pass();
}

CheckResult effectivity_check(const FixedPointSystem& system)
{
    auto g = effectivity_gcd(system);
    if (g != 1) {
        return CheckResult::fail(Witness{}.add("gcd", g));
    }
    return CheckResult::pass();
}

}  // namespace fixedpt
