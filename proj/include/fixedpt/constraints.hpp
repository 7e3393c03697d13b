#ifndef FIXEDPT_CONSTRAINTS_HPP_
#define FIXEDPT_CONSTRAINTS_HPP_

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <variant>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "fixedpt/core.hpp"

namespace fixedpt {

using BigInt = boost::multiprecision::cpp_int;
/// Exact rational, always reduced with a positive denominator.
using Rational = boost::multiprecision::cpp_rational;

enum class Verdict { pass, fail, not_applicable };

std::string_view to_string(Verdict v);

/// A small structured counterexample: ordered named fields.
struct Witness {
    using Value = std::variant<std::int64_t, std::string, std::vector<std::int64_t>>;
    std::vector<std::pair<std::string, Value>> fields;

    Witness& add(std::string key, Value value)
    {
        fields.emplace_back(std::move(key), std::move(value));
        return *this;
    }
    [[nodiscard]] const Value* find(std::string_view key) const;
    [[nodiscard]] std::int64_t integer(std::string_view key) const;

    friend bool operator==(const Witness&, const Witness&) = default;
};

struct CheckResult {
    Verdict verdict = Verdict::pass;
    std::optional<Witness> witness;

    static CheckResult pass() { return {}; }
    static CheckResult not_applicable() { return {Verdict::not_applicable, {}}; }
    static CheckResult fail(Witness w) { return {Verdict::fail, std::move(w)}; }

    [[nodiscard]] bool passed() const { return verdict == Verdict::pass; }
    [[nodiscard]] bool failed() const { return verdict == Verdict::fail; }
};

/// Every system-level check, in report order.
enum class CheckId : std::uint8_t {
    pairing,
    lambda_symmetry,
    parity,
    localization,
    chern1_vanishing,
    largest_weight_structure,
    isotropy,
    effectivity,
};

inline constexpr std::size_t kCheckCount = 8;

inline constexpr std::array<CheckId, kCheckCount> kReportOrder = {
    CheckId::pairing,          CheckId::lambda_symmetry,
    CheckId::parity,           CheckId::localization,
    CheckId::chern1_vanishing, CheckId::largest_weight_structure,
    CheckId::isotropy,         CheckId::effectivity,
};

/// Cheap checks first. Search statistics attribute a rejected candidate
/// to the first failing check in this order.
inline constexpr std::array<CheckId, kCheckCount> kEvaluationOrder = {
    CheckId::parity,           CheckId::lambda_symmetry,
    CheckId::pairing,          CheckId::chern1_vanishing,
    CheckId::effectivity,      CheckId::largest_weight_structure,
    CheckId::localization,     CheckId::isotropy,
};

std::string_view check_name(CheckId id);
std::optional<CheckId> check_from_name(std::string_view name);
/// Citation of the result a check encodes, e.g. "Lemma 2.4".
std::string_view check_anchor(CheckId id);

/// Set of checks, used to run a subset of the suite.
class CheckMask {
public:
    constexpr CheckMask() = default;
    constexpr CheckMask(std::initializer_list<CheckId> ids)
    {
        for (auto id : ids) {
            bits_ |= bit(id);
        }
    }
    static constexpr CheckMask all()
    {
        CheckMask m;
        m.bits_ = (1u << kCheckCount) - 1;
        return m;
    }

    [[nodiscard]] constexpr bool has(CheckId id) const { return bits_ & bit(id); }
    [[nodiscard]] constexpr CheckMask without(CheckId id) const
    {
        CheckMask m = *this;
        m.bits_ &= ~bit(id);
        return m;
    }
    [[nodiscard]] constexpr CheckMask with(CheckId id) const
    {
        CheckMask m = *this;
        m.bits_ |= bit(id);
        return m;
    }

    friend constexpr bool operator==(CheckMask, CheckMask) = default;

private:
    static constexpr unsigned bit(CheckId id)
    {
        return 1u << static_cast<unsigned>(id);
    }
    unsigned bits_ = 0;
};

struct CheckOptions {
    /// When false the effectivity entry is reported as not applicable.
    bool require_effective = false;
};

struct CheckEntry {
    CheckId id;
    Verdict verdict;
    std::string_view anchor;
    std::optional<Witness> witness;
};

struct ConstraintReport {
    std::vector<CheckEntry> checks;

    /// Pass iff no applicable check failed.
    [[nodiscard]] bool overall() const;
    [[nodiscard]] const CheckEntry& entry(CheckId id) const;
};

// --- per-system checks ----------------------------------------------------

/// Union of all weights must be invariant under negation. The failure
/// witness is the smallest l > 0 with N(l) != N(-l).
CheckResult pairing_check(const FixedPointSystem& system);

CheckResult lambda_symmetry_check(const FixedPointSystem& system);

/// Odd point count forces even n; a single point always fails.
CheckResult parity_check(const FixedPointSystem& system);

/// Sum over points of 1 / (product of weights), exactly.
Rational localization_sum(const FixedPointSystem& system);
CheckResult localization_check(const FixedPointSystem& system);

std::int64_t chern1_at(const WeightMultiset& ms);

/// i-th elementary symmetric polynomial of the weights, 0 <= i <= |ms|.
BigInt chern_i_at(const WeightMultiset& ms, std::size_t i);

/// Only applicable to three points with n >= 4; then c1 must vanish at
/// every point.
CheckResult chern1_vanishing_check(const FixedPointSystem& system);

CheckResult effectivity_check(const FixedPointSystem& system);

/// Runs a single check from the suite (including the isotropy ones).
CheckResult evaluate_check(CheckId id, const FixedPointSystem& system,
                           const CheckOptions& options = {});

/// Full report. Throws Error for an empty system.
ConstraintReport check_system(const FixedPointSystem& system,
                              const CheckOptions& options = {});

/// First failing check of `mask` in evaluation order, or nullopt if every
/// masked check passes. Used by the search in place of a full report.
std::optional<CheckId> first_failure(const FixedPointSystem& system,
                                     CheckMask mask,
                                     const CheckOptions& options = {});

}  // namespace fixedpt

#endif  // FIXEDPT_CONSTRAINTS_HPP_
