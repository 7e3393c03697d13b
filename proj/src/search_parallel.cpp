// Pruned enumeration of candidate systems, parallelised over the first
// point with OpenMP. Every worker writes only to its own state; results
// are merged and sorted afterwards so output does not depend on the
// worker count.

#include <omp.h>

#include <algorithm>
#include <chrono>
#include <exception>
#include <mutex>

#include "fixedpt/search.hpp"
#include "search_internal.hpp"

namespace fixedpt {

std::string_view prune_name(PruneKind kind)
{
    switch (kind) {
    case PruneKind::lambda_profile:
        return "lambda_profile";
    case PruneKind::pairing_completion:
        return "pairing_completion";
    case PruneKind::chern1:
        return "chern1";
    case PruneKind::largest_weight_residue:
        return "largest_weight_residue";
    case PruneKind::point_order:
        return "point_order";
    }
    return "?";
}

SearchStatistics& SearchStatistics::operator+=(const SearchStatistics& other)
{
    partial_nodes += other.partial_nodes;
    candidates += other.candidates;
    for (std::size_t i = 0; i < kPruneKindCount; ++i) {
        pruned[i] += other.pruned[i];
    }
    for (std::size_t i = 0; i < kCheckCount; ++i) {
        eliminated[i][0] += other.eliminated[i][0];
        eliminated[i][1] += other.eliminated[i][1];
    }
    return *this;
}

void SearchConfig::validate() const
{
    if (n < 1) {
        throw Error("n must be positive");
    }
    if (point_count != 2 && point_count != 3) {
        throw Error("point count must be 2 or 3");
    }
    if (weight_bound < 1 || weight_bound > kMaxWeightMagnitude) {
        throw Error("weight bound out of range");
    }
    if (threads < 0) {
        throw Error("thread count must be nonnegative");
    }
    if (lambda_profile) {
        const auto& prof = *lambda_profile;
        if (prof.size() != static_cast<std::size_t>(point_count)) {
            throw Error("lambda profile length must equal the point count");
        }
        if (!std::is_sorted(prof.begin(), prof.end()) ||
            prof.front() < 0 || prof.back() > n) {
            throw Error("lambda profile must be sorted within [0, n]");
        }
    }
}

CheckOptions check_options(const SearchConfig& config)
{
    return CheckOptions{config.require_effective};
}

namespace detail {

namespace {

void combinations(const std::vector<Weight>& values, std::size_t size,
                  std::size_t start, std::vector<Weight>& current,
                  std::vector<std::vector<Weight>>& out)
{
    if (current.size() == size) {
        out.push_back(current);
        return;
    }
    for (std::size_t i = start; i < values.size(); ++i) {
        current.push_back(values[i]);
        combinations(values, size, i, current, out);
        current.pop_back();
    }
}

}  // namespace

std::vector<std::vector<Weight>> multisets_of(const std::vector<Weight>& values,
                                              std::size_t size)
{
    std::vector<std::vector<Weight>> out;
    std::vector<Weight> current;
    combinations(values, size, 0, current, out);
    return out;
}

std::vector<std::vector<Sorted>> multisets_by_lambda(int n, Weight bound)
{
    std::vector<Weight> neg;
    std::vector<Weight> pos;
    for (Weight v = -bound; v <= -1; ++v) {
        neg.push_back(v);
    }
    for (Weight v = 1; v <= bound; ++v) {
        pos.push_back(v);
    }
    std::vector<std::vector<Sorted>> by_lambda(static_cast<std::size_t>(n) + 1);
    for (int lam = 0; lam <= n; ++lam) {
        auto negs = multisets_of(neg, static_cast<std::size_t>(lam));
        auto poss = multisets_of(pos, static_cast<std::size_t>(n - lam));
        auto& bucket = by_lambda[static_cast<std::size_t>(lam)];
        bucket.reserve(negs.size() * poss.size());
        for (const auto& a : negs) {
            for (const auto& b : poss) {
                Sorted ms = a;
                ms.insert(ms.end(), b.begin(), b.end());
                bucket.push_back(std::move(ms));
            }
        }
    }
    return by_lambda;
}

Weight max_abs(const std::vector<WeightMultiset>& points)
{
    Weight best = 0;
    for (const auto& ms : points) {
        for (Weight w : ms) {
            best = std::max(best, w < 0 ? -w : w);
        }
    }
    return best;
}

}  // namespace detail

namespace {

using detail::Sorted;

std::int64_t sum_of(const Sorted& ms)
{
    std::int64_t s = 0;
    for (Weight w : ms) {
        s += w;
    }
    return s;
}

std::size_t negatives(const Sorted& ms)
{
    return static_cast<std::size_t>(
        std::lower_bound(ms.begin(), ms.end(), Weight{0}) - ms.begin());
}

bool residues_equal(const Sorted& a, const Sorted& b, Weight k)
{
    auto res = [k](const Sorted& ms) {
        Sorted r;
        r.reserve(ms.size());
        for (Weight w : ms) {
            Weight x = w % k;
            r.push_back(x < 0 ? x + k : x);
        }
        std::sort(r.begin(), r.end());
        return r;
    };
    return res(a) == res(b);
}

std::size_t index_of(PruneKind kind) { return static_cast<std::size_t>(kind); }

// Generation plan shared by all workers; read-only once built.
class Generator {
public:
    Generator(const SearchConfig& config, CheckMask mask)
        : config_(config),
          mask_(mask),
          by_lambda_(detail::multisets_by_lambda(config.n, config.weight_bound))
    {
        const bool three = config.point_count == 3;
        profile_active_ = config.prune.on(PruneKind::lambda_profile) &&
                          mask.has(CheckId::lambda_symmetry);
        completion_active_ = config.prune.on(PruneKind::pairing_completion) &&
                             mask.has(CheckId::pairing);
        chern1_active_ = config.prune.on(PruneKind::chern1) &&
                         mask.has(CheckId::chern1_vanishing) && three &&
                         config.n >= 4;
        residue_active_ = config.prune.on(PruneKind::largest_weight_residue) &&
                          mask.has(CheckId::largest_weight_structure) &&
                          mask.has(CheckId::pairing) && three;
        order_active_ = config.prune.on(PruneKind::point_order);
        build_profiles();
        for (std::size_t pi = 0; pi < profiles_.size(); ++pi) {
            const auto& first = bucket(profiles_[pi][0]);
            for (std::size_t i = 0; i < first.size(); ++i) {
                items_.push_back({pi, i});
            }
        }
    }

    [[nodiscard]] std::size_t item_count() const { return items_.size(); }

    /// Expands one (profile, first point) work item; `emit` receives each
    /// complete candidate as sorted weight vectors.
    template <class Emit>
    void expand(std::size_t item, SearchStatistics& stats, Emit&& emit) const
    {
        const auto [pi, idx] = items_[item];
        const auto& profile = profiles_[pi];
        const Sorted& p = bucket(profile[0])[idx];
        ++stats.partial_nodes;
        if (chern1_active_ && sum_of(p) != 0) {
            ++stats.pruned[index_of(PruneKind::chern1)];
            return;
        }
        std::vector<const Sorted*> prefix{&p};
        if (config_.point_count == 2) {
            complete(prefix, profile[1], stats, emit);
            return;
        }
        for (const Sorted& q : bucket(profile[1])) {
            if (chern1_active_ && sum_of(q) != 0) {
                ++stats.pruned[index_of(PruneKind::chern1)];
                continue;
            }
            if (order_active_ && profile[1] == profile[0] && q < p) {
                ++stats.pruned[index_of(PruneKind::point_order)];
                continue;
            }
            ++stats.partial_nodes;
            if (residue_active_ && !largest_pair_consistent(p, q)) {
                ++stats.pruned[index_of(PruneKind::largest_weight_residue)];
                continue;
            }
            prefix.push_back(&q);
            complete(prefix, profile[2], stats, emit);
            prefix.pop_back();
        }
    }

    [[nodiscard]] std::uint64_t skipped_profiles() const { return skipped_profiles_; }

private:
    const std::vector<Sorted>& bucket(int lambda) const
    {
        return by_lambda_[static_cast<std::size_t>(lambda)];
    }

    void build_profiles()
    {
        const int n = config_.n;
        const int count = config_.point_count;
        std::vector<int> cur(static_cast<std::size_t>(count), 0);
        auto symmetric = [n](const std::vector<int>& prof) {
            std::vector<int> mirrored;
            for (int x : prof) {
                mirrored.push_back(n - x);
            }
            std::sort(mirrored.begin(), mirrored.end());
            return mirrored == prof;
        };
        // nondecreasing tuples in [0, n]
        std::function<void(std::size_t, int)> rec = [&](std::size_t pos,
                                                        int lo) {
            if (pos == cur.size()) {
                if (config_.lambda_profile && cur != *config_.lambda_profile) {
                    return;
                }
                if (profile_active_ && !symmetric(cur)) {
                    ++skipped_profiles_;
                    return;
                }
                profiles_.push_back(cur);
                return;
            }
            for (int v = lo; v <= n; ++v) {
                cur[pos] = v;
                rec(pos + 1, v);
            }
        };
        rec(0, 0);
    }

    // The largest weight of a surviving system already occurs among the
    // first two points; if both of its signs do, they sit at different
    // points whose weights agree mod d.
    static bool largest_pair_consistent(const Sorted& p, const Sorted& q)
    {
        Weight d = 0;
        for (const Sorted* ms : {&p, &q}) {
            d = std::max({d, -ms->front(), ms->back()});
        }
        auto cnt = [](const Sorted& ms, Weight v) {
            auto [lo, hi] = std::equal_range(ms.begin(), ms.end(), v);
            return hi - lo;
        };
        const auto pos_p = cnt(p, d);
        const auto pos_q = cnt(q, d);
        const auto neg_p = cnt(p, -d);
        const auto neg_q = cnt(q, -d);
        if (pos_p + pos_q > 1 || neg_p + neg_q > 1) {
            return false;
        }
        if (pos_p + pos_q == 1 && neg_p + neg_q == 1) {
            if ((pos_p == 1) == (neg_p == 1)) {
                return false;
            }
            return residues_equal(p, q, d);
        }
        return true;
    }

    template <class Emit>
    void complete(std::vector<const Sorted*>& prefix, int lambda_last,
                  SearchStatistics& stats, Emit& emit) const
    {
        const Sorted& prev = *prefix.back();
        const bool same_lambda = static_cast<int>(negatives(prev)) == lambda_last;
        auto accept = [&](const Sorted& last) {
            if (chern1_active_ && sum_of(last) != 0) {
                ++stats.pruned[index_of(PruneKind::chern1)];
                return;
            }
            if (order_active_ && same_lambda && last < prev) {
                ++stats.pruned[index_of(PruneKind::point_order)];
                return;
            }
            ++stats.candidates;
            emit(prefix, last);
        };

        if (!completion_active_) {
            for (const Sorted& last : bucket(lambda_last)) {
                accept(last);
            }
            return;
        }

        // N_last(l) - N_last(-l) is forced to N_prefix(-l) - N_prefix(l).
        const Weight bound = config_.weight_bound;
        std::vector<std::int64_t> net(static_cast<std::size_t>(bound) + 1, 0);
        for (const Sorted* ms : prefix) {
            for (Weight w : *ms) {
                net[static_cast<std::size_t>(w < 0 ? -w : w)] += w < 0 ? 1 : -1;
            }
        }
        Sorted forced;
        std::size_t forced_neg = 0;
        for (Weight l = 1; l <= bound; ++l) {
            auto f = net[static_cast<std::size_t>(l)];
            for (std::int64_t c = 0; c < (f < 0 ? -f : f); ++c) {
                forced.push_back(f > 0 ? l : -l);
                forced_neg += f < 0 ? 1 : 0;
            }
        }
        const auto n = static_cast<std::size_t>(config_.n);
        if (forced.size() > n || (n - forced.size()) % 2 != 0) {
            ++stats.pruned[index_of(PruneKind::pairing_completion)];
            return;
        }
        const std::size_t pairs = (n - forced.size()) / 2;
        if (forced_neg + pairs != static_cast<std::size_t>(lambda_last)) {
            ++stats.pruned[index_of(PruneKind::pairing_completion)];
            return;
        }
        std::vector<Weight> magnitudes;
        for (Weight l = 1; l <= bound; ++l) {
            magnitudes.push_back(l);
        }
        for (const auto& fill : detail::multisets_of(magnitudes, pairs)) {
            Sorted last = forced;
            for (Weight l : fill) {
                last.push_back(l);
                last.push_back(-l);
            }
            std::sort(last.begin(), last.end());
            accept(last);
        }
    }

    struct Item {
        std::size_t profile;
        std::size_t index;
    };

    const SearchConfig& config_;
    CheckMask mask_;
    std::vector<std::vector<Sorted>> by_lambda_;
    std::vector<std::vector<int>> profiles_;
    std::vector<Item> items_;
    std::uint64_t skipped_profiles_ = 0;
    bool profile_active_ = false;
    bool completion_active_ = false;
    bool chern1_active_ = false;
    bool residue_active_ = false;
    bool order_active_ = false;
};

struct Worker {
    SearchStatistics stats;
    std::vector<CanonicalKey> survivors;
    std::vector<Elimination> eliminations;
};

int resolve_threads(int requested)
{
    return requested > 0 ? requested : omp_get_max_threads();
}

std::vector<WeightMultiset> to_points(const std::vector<const Sorted*>& prefix,
                                      const Sorted& last)
{
    std::vector<WeightMultiset> pts;
    pts.reserve(prefix.size() + 1);
    for (const Sorted* ms : prefix) {
        pts.emplace_back(*ms);
    }
    pts.emplace_back(last);
    return pts;
}

// Runs the generator over all work items, one Worker per thread.
template <class OnCandidate>
SearchStatistics run_parallel(const SearchConfig& config, CheckMask mask,
                              std::vector<Worker>& workers,
                              OnCandidate&& on_candidate)
{
    config.validate();
    Generator gen(config, mask);
    const int threads = resolve_threads(config.threads);
    workers.assign(static_cast<std::size_t>(threads), Worker{});
    std::exception_ptr failure;
    std::mutex failure_mutex;
    const auto items = static_cast<std::int64_t>(gen.item_count());

#pragma omp parallel for schedule(dynamic) num_threads(threads)
    for (std::int64_t item = 0; item < items; ++item) {
        auto& worker = workers[static_cast<std::size_t>(omp_get_thread_num())];
        try {
            gen.expand(static_cast<std::size_t>(item), worker.stats,
                       [&](const std::vector<const Sorted*>& prefix,
                           const Sorted& last) {
                           on_candidate(worker, to_points(prefix, last));
                       });
        } catch (...) {
            std::lock_guard lock(failure_mutex);
            if (!failure) {
                failure = std::current_exception();
            }
        }
    }
    if (failure) {
        std::rethrow_exception(failure);
    }

    SearchStatistics total;
    total.pruned[index_of(PruneKind::lambda_profile)] = gen.skipped_profiles();
    for (const auto& w : workers) {
        total += w.stats;
    }
    return total;
}

}  // namespace

SearchOutcome search_systems(const SearchConfig& config, CheckMask mask,
                             ReportMode mode)
{
    const auto start = std::chrono::steady_clock::now();
    const auto options = check_options(config);
    std::vector<Worker> workers;
    auto stats = run_parallel(
        config, mask, workers,
        [&](Worker& worker, std::vector<WeightMultiset> pts) {
            auto system = FixedPointSystem::from_weights(config.n, pts);
            auto failed = first_failure(system, mask, options);
            if (!failed) {
                worker.survivors.push_back(canonicalize(system));
                return;
            }
            const bool odd = detail::max_abs(pts) % 2 == 1;
            worker.stats.eliminated[static_cast<std::size_t>(*failed)]
                                   [odd ? 1 : 0] += 1;
            if (mode == ReportMode::detailed) {
                worker.eliminations.push_back(
                    {canonicalize(system), *failed, odd});
            }
        });

    SearchOutcome outcome;
    outcome.statistics = stats;
    for (auto& w : workers) {
        outcome.survivors.insert(outcome.survivors.end(),
                                 std::make_move_iterator(w.survivors.begin()),
                                 std::make_move_iterator(w.survivors.end()));
        outcome.eliminations.insert(
            outcome.eliminations.end(),
            std::make_move_iterator(w.eliminations.begin()),
            std::make_move_iterator(w.eliminations.end()));
    }
    std::sort(outcome.survivors.begin(), outcome.survivors.end());
    outcome.survivors.erase(
        std::unique(outcome.survivors.begin(), outcome.survivors.end()),
        outcome.survivors.end());
    std::sort(outcome.eliminations.begin(), outcome.eliminations.end(),
              [](const Elimination& a, const Elimination& b) {
                  if (a.key != b.key) {
                      return a.key < b.key;
                  }
                  return a.check < b.check;
              });
    outcome.elapsed_seconds = std::chrono::duration<double>(
                                  std::chrono::steady_clock::now() - start)
                                  .count();
    return outcome;
}

SearchOutcome enumerate_systems(const SearchConfig& config)
{
    return search_systems(config, CheckMask::all());
}

SearchStatistics scan_systems(
    const SearchConfig& config, CheckMask mask,
    const std::function<void(const FixedPointSystem&)>& visit)
{
    const auto options = check_options(config);
    std::vector<Worker> workers;
    return run_parallel(config, mask, workers,
                        [&](Worker& worker, std::vector<WeightMultiset> pts) {
                            auto system =
                                FixedPointSystem::from_weights(config.n, pts);
                            auto failed = first_failure(system, mask, options);
                            if (failed) {
                                const bool odd = detail::max_abs(pts) % 2 == 1;
                                worker.stats.eliminated[static_cast<std::size_t>(
                                    *failed)][odd ? 1 : 0] += 1;
                                return;
                            }
                            visit(system);
                        });
}

}  // namespace fixedpt
