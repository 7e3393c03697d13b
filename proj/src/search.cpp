#include <algorithm>
#include <atomic>
#include <mutex>

#include "fixedpt/isotropy.hpp"
#include "fixedpt/search.hpp"

namespace fixedpt {

std::vector<WeightMultiset> dim4_family(Weight a, Weight b)
{
    return {WeightMultiset{a, a + b}, WeightMultiset{-a, b},
            WeightMultiset{-b, -a - b}};
}

std::vector<WeightMultiset> dim6_pair_family(Weight a, Weight b)
{
    return {WeightMultiset{a, b, -a - b}, WeightMultiset{a + b, -a, -b}};
}

std::optional<Dim4Family> match_dim4_family(const CanonicalKey& key)
{
    if (key.half_dim != 2 || key.points.size() != 3) {
        return std::nullopt;
    }
    for (std::size_t i = 0; i < 3; ++i) {
        if (lambda_count(key.points[i]) != i) {
            return std::nullopt;
        }
    }
    auto mid = key.points[1].values();
    const Weight a = -mid[0];
    const Weight b = mid[1];
    if (key.points[0] != WeightMultiset{a, a + b} ||
        key.points[2] != WeightMultiset{-b, -a - b}) {
        return std::nullopt;
    }
    return Dim4Family{std::min(a, b), std::max(a, b)};
}

std::vector<Dim4Family> classify_dim4(Weight weight_bound, bool effective,
                                      int threads)
{
    if (weight_bound < 2) {
        throw Error("dimension-4 classification needs a bound of at least 2");
    }
    SearchConfig config;
    config.n = 2;
    config.point_count = 3;
    config.weight_bound = weight_bound;
    config.require_effective = effective;
    config.threads = threads;
    std::vector<Dim4Family> families;
    for (const auto& key : enumerate_systems(config).survivors) {
        auto fam = match_dim4_family(key);
        if (!fam) {
            throw Error("survivor outside the {a,a+b},{-a,b},{-b,-a-b} "
                        "pattern: " +
                        to_string(key.to_system()));
        }
        families.push_back(*fam);
    }
    std::sort(families.begin(), families.end());
    return families;
}

NonexistenceViolation::NonexistenceViolation(SearchOutcome outcome)
    : Error("found " + std::to_string(outcome.survivors.size()) +
            " three-point system(s), first: " +
            to_string(outcome.survivors.front().to_system())),
      outcome_(std::move(outcome))
{}

SearchOutcome verify_nonexistence(int n, Weight weight_bound, ReportMode mode,
                                  int threads)
{
    if (n < 4) {
        throw Error("nonexistence is only claimed for n >= 4");
    }
    SearchConfig config;
    config.n = n;
    config.point_count = 3;
    config.weight_bound = weight_bound;
    config.require_effective = true;
    config.threads = threads;
    auto outcome = search_systems(config, CheckMask::all(), mode);
    if (!outcome.survivors.empty()) {
        throw NonexistenceViolation(std::move(outcome));
    }
    return outcome;
}

// --- lemma replay ----------------------------------------------------------

namespace {

struct LemmaInfo {
    LemmaId id;
    std::string_view name;
};

constexpr std::array<LemmaInfo, 9> kLemmas = {{
    {LemmaId::l22, "l22"},
    {LemmaId::l24, "l24"},
    {LemmaId::l32, "l32"},
    {LemmaId::l33, "l33"},
    {LemmaId::l34, "l34"},
    {LemmaId::l36, "l36"},
    {LemmaId::r35, "r35"},
    {LemmaId::r37, "r37"},
    {LemmaId::l46, "l46"},
}};

bool needs_three_points(LemmaId id)
{
    return id == LemmaId::l32 || id == LemmaId::l33 || id == LemmaId::l46;
}

// Accumulates conclusion outcomes for one system.
struct Tally {
    std::uint64_t instances = 0;
    std::uint64_t passed = 0;
    std::string failure;

    void record(bool ok, const std::string& reason)
    {
        ++instances;
        if (ok) {
            ++passed;
        } else if (failure.empty()) {
            failure = reason;
        }
    }
    void record(const CheckResult& r, const std::string& what)
    {
        if (r.verdict == Verdict::not_applicable) {
            return;
        }
        record(r.passed(), what);
    }
};

std::string pair_name(const FixedPoint& v, const FixedPoint& w)
{
    return "(" + v.label + "," + w.label + ")";
}

void conclude_lambda_profile(const FixedPointSystem& s, Tally& tally)
{
    const int n = s.half_dim();
    std::vector<std::size_t> order = {0, 1, 2};
    std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
        return lambda_count(s[a].weights) < lambda_count(s[b].weights);
    });
    std::vector<int> prof;
    for (auto i : order) {
        prof.push_back(static_cast<int>(lambda_count(s[i].weights)));
    }
    const std::vector<int> expected = {n / 2 - 1, n / 2, n / 2 + 1};
    if (prof != expected) {
        tally.record(false, "lambda profile (" + std::to_string(prof[0]) + "," +
                                std::to_string(prof[1]) + "," +
                                std::to_string(prof[2]) + ")");
        return;
    }
    if (n < 4) {
        tally.record(true, {});
        return;
    }
    const Weight d = largest_weight(s);
    const auto& p = s[order[0]].weights;
    const auto& q = s[order[1]].weights;
    const auto& r = s[order[2]].weights;
    const bool direct = p.contains(-d) && q.contains(d);
    const bool reversed = r.contains(d) && q.contains(-d);
    tally.record(direct || reversed,
                 "largest weight not on the lower sphere pair");
}

void conclude(LemmaId id, const FixedPointSystem& s, Tally& tally)
{
    switch (id) {
    case LemmaId::l22:
        tally.record(lambda_symmetry_check(s), "lambda symmetry");
        return;
    case LemmaId::l24:
        tally.record(pairing_check(s), "pairing");
        return;
    case LemmaId::l32:
        tally.record(largest_weight_structure(s), "largest weight structure");
        return;
    case LemmaId::l33:
        conclude_lambda_profile(s, tally);
        return;
    case LemmaId::l46: {
        const Weight d = largest_weight(s);
        for (Weight e = 2; e <= d; ++e) {
            for (Weight signed_e : {e, -e}) {
                tally.record(multiple_pattern_check(s, signed_e),
                             "multiples of " + std::to_string(signed_e));
            }
        }
        return;
    }
    default:
        break;
    }

    // Point-pair lemmas.
    Weight d = 0;
    try {
        d = largest_weight(s);
    } catch (const Error&) {
        return;
    }
    for (std::size_t i = 0; i < s.size(); ++i) {
        for (std::size_t j = 0; j < s.size(); ++j) {
            if (i == j) {
                continue;
            }
            const auto& v = s[i];
            const auto& w = s[j];
            const auto label = pair_name(v, w);
            switch (id) {
            case LemmaId::l34:
                tally.record(lambda_step_check(v, w, d, s), label);
                break;
            case LemmaId::l36:
                tally.record(even_count_relation_check(v, w, d, s), label);
                break;
            case LemmaId::r35:
            case LemmaId::r37: {
                if (d < 2) {
                    break;
                }
                auto zv = sub_multiset_mod_k(v.weights, d);
                auto zw = sub_multiset_mod_k(w.weights, d);
                if (zv.empty() || zw.empty()) {
                    break;
                }
                tally.record(id == LemmaId::r35
                                 ? component_lambda_relation(v, w, d, zv, zw)
                                 : even_count_component_relation(v, w, d, zv, zw),
                             label);
                break;
            }
            default:
                break;
            }
        }
    }
}

}  // namespace

std::string_view lemma_name(LemmaId id)
{
    for (const auto& l : kLemmas) {
        if (l.id == id) {
            return l.name;
        }
    }
    return "?";
}

std::optional<LemmaId> lemma_from_name(std::string_view name)
{
    for (const auto& l : kLemmas) {
        if (l.name == name) {
            return l.id;
        }
    }
    return std::nullopt;
}

const std::vector<LemmaId>& all_lemmas()
{
    static const std::vector<LemmaId> ids = [] {
        std::vector<LemmaId> out;
        for (const auto& l : kLemmas) {
            out.push_back(l.id);
        }
        return out;
    }();
    return ids;
}

CheckMask lemma_preconditions(LemmaId id, const SearchConfig& scope)
{
    switch (id) {
    case LemmaId::l22:
        return CheckMask::all().without(CheckId::lambda_symmetry);
    case LemmaId::l24:
    case LemmaId::l46:
        return CheckMask::all();
    case LemmaId::l32:
        return CheckMask::all().without(CheckId::largest_weight_structure);
    case LemmaId::l33:
        if (scope.n < 4) {
            return {CheckId::pairing, CheckId::localization, CheckId::parity};
        }
        return {CheckId::pairing, CheckId::lambda_symmetry, CheckId::parity,
                CheckId::chern1_vanishing, CheckId::largest_weight_structure};
    case LemmaId::l34:
    case LemmaId::l36:
    case LemmaId::r35:
    case LemmaId::r37:
        return {CheckId::pairing};
    }
    throw Error("unknown lemma");
}

ReplayReport run_replay(LemmaId id, const SearchConfig& scope)
{
    if (needs_three_points(id) && scope.point_count != 3) {
        throw Error("lemma " + std::string(lemma_name(id)) +
                    " is about three fixed points");
    }
    std::atomic<std::uint64_t> candidates{0};
    std::atomic<std::uint64_t> instances{0};
    std::atomic<std::uint64_t> passed{0};
    std::mutex mutex;
    std::optional<CanonicalKey> worst;
    std::string worst_reason;

    scan_systems(scope, lemma_preconditions(id, scope),
                 [&](const FixedPointSystem& s) {
                     Tally tally;
                     conclude(id, s, tally);
                     candidates.fetch_add(1, std::memory_order_relaxed);
                     instances.fetch_add(tally.instances,
                                         std::memory_order_relaxed);
                     passed.fetch_add(tally.passed, std::memory_order_relaxed);
                     if (tally.passed == tally.instances) {
                         return;
                     }
                     auto key = canonicalize(s);
                     std::lock_guard lock(mutex);
                     if (!worst || key < *worst) {
                         worst = std::move(key);
                         worst_reason = to_string(s) + ": " + tally.failure;
                     }
                 });

    ReplayReport report;
    report.lemma = id;
    report.scope = scope;
    report.candidates = candidates.load();
    report.instances = instances.load();
    report.passed = passed.load();
    report.failed = report.instances - report.passed;
    report.counterexample = std::move(worst);
    report.counterexample_reason = std::move(worst_reason);
    return report;
}

LemmaCounterexample::LemmaCounterexample(ReplayReport report)
    : Error("lemma " + std::string(lemma_name(report.lemma)) + " fails: " +
            report.counterexample_reason),
      report_(std::move(report))
{}

ReplayReport replay_lemma(LemmaId id, const SearchConfig& scope)
{
    auto report = run_replay(id, scope);
    if (!report.ok()) {
        throw LemmaCounterexample(std::move(report));
    }
    return report;
}

}  // namespace fixedpt
