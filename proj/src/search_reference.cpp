// Serial brute-force reference for the enumerator. It shares nothing with
// the parallel kernel except the check suite itself: every point ranges
// over every multiset of n weights, with no pruning and no ordering.

#include <algorithm>
#include <chrono>
#include <set>

#include "fixedpt/search.hpp"

namespace fixedpt {

namespace {

std::uint64_t saturating_mul(std::uint64_t a, std::uint64_t b)
{
    if (a != 0 && b > UINT64_MAX / a) {
        return UINT64_MAX;
    }
    return a * b;
}

std::uint64_t binomial(std::uint64_t n, std::uint64_t k)
{
    std::uint64_t r = 1;
    for (std::uint64_t i = 1; i <= k; ++i) {
        r = saturating_mul(r, n - k + i);
        if (r == UINT64_MAX) {
            return r;
        }
        r /= i;
    }
    return r;
}

// Multisets with repetition of `size` items from `kinds` kinds.
std::uint64_t multichoose(std::uint64_t kinds, std::uint64_t size)
{
    if (size == 0) {
        return 1;
    }
    return kinds == 0 ? 0 : binomial(kinds + size - 1, size);
}

bool lambda_allowed(const SearchConfig& config, std::size_t lambda)
{
    if (!config.lambda_profile) {
        return true;
    }
    const auto& prof = *config.lambda_profile;
    return std::find(prof.begin(), prof.end(), static_cast<int>(lambda)) !=
           prof.end();
}

// Every multiset of n weights from [-W, W] \ {0}, via an index odometer
// over nondecreasing positions.
std::vector<WeightMultiset> all_point_multisets(const SearchConfig& config)
{
    std::vector<Weight> values;
    for (Weight v = -config.weight_bound; v <= config.weight_bound; ++v) {
        if (v != 0) {
            values.push_back(v);
        }
    }
    const auto n = static_cast<std::size_t>(config.n);
    std::vector<std::size_t> idx(n, 0);
    std::vector<WeightMultiset> out;
    while (true) {
        std::vector<Weight> ws;
        for (auto i : idx) {
            ws.push_back(values[i]);
        }
        WeightMultiset ms(std::move(ws));
        if (lambda_allowed(config, lambda_count(ms))) {
            out.push_back(std::move(ms));
        }
        // advance: rightmost position that can still grow
        std::size_t pos = n;
        while (pos > 0 && idx[pos - 1] + 1 == values.size()) {
            --pos;
        }
        if (pos == 0) {
            break;
        }
        ++idx[pos - 1];
        for (std::size_t j = pos; j < n; ++j) {
            idx[j] = idx[pos - 1];
        }
    }
    return out;
}

}  // namespace

std::uint64_t oracle_space_size(const SearchConfig& config)
{
    const auto w = static_cast<std::uint64_t>(config.weight_bound);
    const auto n = static_cast<std::uint64_t>(config.n);
    std::uint64_t per_point = 0;
    for (std::uint64_t lam = 0; lam <= n; ++lam) {
        if (!lambda_allowed(config, lam)) {
            continue;
        }
        auto c = saturating_mul(multichoose(w, lam), multichoose(w, n - lam));
        per_point = c > UINT64_MAX - per_point ? UINT64_MAX : per_point + c;
    }
    std::uint64_t total = 1;
    for (int i = 0; i < config.point_count; ++i) {
        total = saturating_mul(total, per_point);
    }
    return total;
}

SearchOutcome naive_oracle(const SearchConfig& config, CheckMask mask)
{
    config.validate();
    const auto space = oracle_space_size(config);
    if (space > kOracleLimit) {
        throw Error("oracle space of " + std::to_string(space) +
                    " assignments exceeds the limit of " +
                    std::to_string(kOracleLimit) +
                    "; use a smaller n, bound or point count, or restrict "
                    "the lambda profile");
    }
    const auto start = std::chrono::steady_clock::now();
    const auto options = check_options(config);
    const auto per_point = all_point_multisets(config);
    const auto count = static_cast<std::size_t>(config.point_count);

    SearchOutcome outcome;
    std::set<CanonicalKey> found;
    std::vector<std::size_t> idx(count, 0);
    std::vector<WeightMultiset> pts(count);
    while (!per_point.empty()) {
        for (std::size_t i = 0; i < count; ++i) {
            pts[i] = per_point[idx[i]];
        }
        bool keep = true;
        if (config.lambda_profile) {
            std::vector<int> prof;
            for (const auto& ms : pts) {
                prof.push_back(static_cast<int>(lambda_count(ms)));
            }
            std::sort(prof.begin(), prof.end());
            keep = prof == *config.lambda_profile;
        }
        if (keep) {
            ++outcome.statistics.candidates;
            auto system = FixedPointSystem::from_weights(config.n, pts);
            if (auto failed = first_failure(system, mask, options)) {
                Weight top = 0;
                for (const auto& ms : pts) {
                    top = std::max({top, -ms.values().front(), ms.values().back()});
                }
                outcome.statistics
                    .eliminated[static_cast<std::size_t>(*failed)][top % 2] += 1;
            } else {
                found.insert(canonicalize(system));
            }
        }
        std::size_t pos = 0;
        while (pos < count && ++idx[pos] == per_point.size()) {
            idx[pos] = 0;
            ++pos;
        }
        if (pos == count) {
            break;
        }
    }
    outcome.survivors.assign(found.begin(), found.end());
    outcome.elapsed_seconds = std::chrono::duration<double>(
                                  std::chrono::steady_clock::now() - start)
                                  .count();
    return outcome;
}

}  // namespace fixedpt
