#ifndef FIXEDPT_SEARCH_HPP_
#define FIXEDPT_SEARCH_HPP_

#include <array>
#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "fixedpt/constraints.hpp"
#include "fixedpt/core.hpp"

namespace fixedpt {

/// Generation-time pruning. Each switch is only consulted when the check
/// it relies on is part of the active check set, so toggling a switch
/// changes statistics but never the survivors.
enum class PruneKind : std::uint8_t {
    lambda_profile,          // only lambda profiles that are symmetric
    pairing_completion,      // derive the last point from the pairing
    chern1,                  // c1 = 0 per point (three points, n >= 4)
    largest_weight_residue,  // +-d among the first two points must match
    point_order,             // points generated in canonical order only
};

inline constexpr std::size_t kPruneKindCount = 5;

std::string_view prune_name(PruneKind kind);

struct PruneFlags {
    std::array<bool, kPruneKindCount> enabled{true, true, true, true, true};

    [[nodiscard]] bool on(PruneKind kind) const
    {
        return enabled[static_cast<std::size_t>(kind)];
    }
    PruneFlags& set(PruneKind kind, bool value)
    {
        enabled[static_cast<std::size_t>(kind)] = value;
        return *this;
    }
    static PruneFlags none()
    {
        PruneFlags f;
        f.enabled.fill(false);
        return f;
    }
};

struct SearchConfig {
    int n = 2;
    int point_count = 3;
    /// Every |weight| is at most this bound.
    Weight weight_bound = 4;
    bool require_effective = true;
    PruneFlags prune;
    /// Keep only systems whose sorted negative-count profile equals this.
    std::optional<std::vector<int>> lambda_profile;
    /// OpenMP worker count for the enumerator; 0 uses the runtime default.
    int threads = 0;

    /// Throws Error when the configuration is out of range.
    void validate() const;
};

/// Counters that do not depend on the worker count.
struct SearchStatistics {
    /// Partial assignments (one or two points fixed) expanded.
    std::uint64_t partial_nodes = 0;
    /// Complete candidate systems run through the check suite.
    std::uint64_t candidates = 0;
    std::array<std::uint64_t, kPruneKindCount> pruned{};
    /// Rejected candidates by first failing check and by the parity of the
    /// largest weight magnitude ([0] even, [1] odd).
    std::array<std::array<std::uint64_t, 2>, kCheckCount> eliminated{};

    SearchStatistics& operator+=(const SearchStatistics& other);
    [[nodiscard]] std::uint64_t eliminated_total(CheckId id) const
    {
        auto& e = eliminated[static_cast<std::size_t>(id)];
        return e[0] + e[1];
    }
};

struct Elimination {
    CanonicalKey key;
    CheckId check;
    bool odd_largest_weight;

    friend bool operator==(const Elimination&, const Elimination&) = default;
};

enum class ReportMode { summary, detailed };

struct SearchOutcome {
    /// Distinct canonical keys, sorted.
    std::vector<CanonicalKey> survivors;
    SearchStatistics statistics;
    /// Filled only in detailed mode; sorted by key then check.
    std::vector<Elimination> eliminations;
    double elapsed_seconds = 0.0;
};

/// Every check, with effectivity governed by the config.
CheckOptions check_options(const SearchConfig& config);

/// Pruned parallel enumeration of the systems passing every check in
/// `mask`. Output is identical for any worker count and any prune flags.
SearchOutcome search_systems(const SearchConfig& config, CheckMask mask,
                             ReportMode mode = ReportMode::summary);

/// search_systems with the full check suite.
SearchOutcome enumerate_systems(const SearchConfig& config);

/// Streams every generated system that passes `mask` to `visit`, which may
/// be called concurrently from several workers. Systems are not
/// deduplicated: a system and its reversal may both be visited.
SearchStatistics scan_systems(
    const SearchConfig& config, CheckMask mask,
    const std::function<void(const FixedPointSystem&)>& visit);

/// Serial brute force over every weight assignment (one multiset per
/// point), no pruning. Throws Error when the space exceeds kOracleLimit.
SearchOutcome naive_oracle(const SearchConfig& config,
                           CheckMask mask = CheckMask::all());

inline constexpr std::uint64_t kOracleLimit = 100'000'000;

/// Number of assignments naive_oracle would visit.
std::uint64_t oracle_space_size(const SearchConfig& config);

struct Dim4Family {
    Weight a;
    Weight b;

    friend auto operator<=>(const Dim4Family&, const Dim4Family&) = default;
};

/// Weight pattern {a, a+b}, {-a, b}, {-b, -a-b}.
std::vector<WeightMultiset> dim4_family(Weight a, Weight b);
/// Two-point pattern {a, b, -a-b}, {a+b, -a, -b}.
std::vector<WeightMultiset> dim6_pair_family(Weight a, Weight b);

/// Reads (a, b) back from a canonical three-point key, a <= b.
std::optional<Dim4Family> match_dim4_family(const CanonicalKey& key);

/// Three-point systems in dimension 4 with weights bounded by W; throws
/// Error if any survivor is not of family form.
std::vector<Dim4Family> classify_dim4(Weight weight_bound, bool effective,
                                      int threads = 0);

class NonexistenceViolation : public Error {
public:
    explicit NonexistenceViolation(SearchOutcome outcome);
    [[nodiscard]] const SearchOutcome& outcome() const { return outcome_; }

private:
    SearchOutcome outcome_;
};

/// Full search for three fixed points with n >= 4 and effective weights;
/// throws NonexistenceViolation on any survivor.
SearchOutcome verify_nonexistence(int n, Weight weight_bound,
                                  ReportMode mode = ReportMode::summary,
                                  int threads = 0);

// --- lemma replay ----------------------------------------------------------

enum class LemmaId { l22, l24, l32, l33, l34, l36, r35, r37, l46 };

std::string_view lemma_name(LemmaId id);
std::optional<LemmaId> lemma_from_name(std::string_view name);
const std::vector<LemmaId>& all_lemmas();

/// Checks applied to generate the candidates a lemma is replayed on.
CheckMask lemma_preconditions(LemmaId id, const SearchConfig& scope);

struct ReplayReport {
    LemmaId lemma;
    SearchConfig scope;
    /// Systems passing the preconditions.
    std::uint64_t candidates = 0;
    /// Instances (system, or point pair within a system) the conclusion
    /// was checked on.
    std::uint64_t instances = 0;
    std::uint64_t passed = 0;
    std::uint64_t failed = 0;
    /// Smallest counterexample under canonical order, with a reason.
    std::optional<CanonicalKey> counterexample;
    std::string counterexample_reason;

    [[nodiscard]] bool ok() const { return failed == 0; }
};

/// Replays the lemma and returns the tallies without throwing.
ReplayReport run_replay(LemmaId id, const SearchConfig& scope);

class LemmaCounterexample : public Error {
public:
    explicit LemmaCounterexample(ReplayReport report);
    [[nodiscard]] const ReplayReport& report() const { return report_; }

private:
    ReplayReport report_;
};

/// run_replay, throwing LemmaCounterexample on any failure.
ReplayReport replay_lemma(LemmaId id, const SearchConfig& scope);

}  // namespace fixedpt

#endif  // FIXEDPT_SEARCH_HPP_
