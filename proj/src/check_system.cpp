#include "fixedpt/constraints.hpp"
#include "fixedpt/isotropy.hpp"

namespace fixedpt {

CheckResult evaluate_check(CheckId id, const FixedPointSystem& system,
                           const CheckOptions& options)
{
    switch (id) {
    case CheckId::pairing:
        return pairing_check(system);
    case CheckId::lambda_symmetry:
        return lambda_symmetry_check(system);
    case CheckId::parity:
        return parity_check(system);
    case CheckId::localization:
        return localization_check(system);
    case CheckId::chern1_vanishing:
        return chern1_vanishing_check(system);
    case CheckId::largest_weight_structure:
        return largest_weight_structure(system);
    case CheckId::isotropy:
        return isotropy_check(system);
    case CheckId::effectivity:
        return options.require_effective ? effectivity_check(system)
                                         : CheckResult::not_applicable();
    }
    throw Error("unknown check");
}

ConstraintReport check_system(const FixedPointSystem& system,
                              const CheckOptions& options)
{
    if (system.size() == 0) {
        throw Error("system has no fixed points");
    }
    ConstraintReport report;
    report.checks.reserve(kCheckCount);
    for (auto id : kReportOrder) {
        auto r = evaluate_check(id, system, options);
        report.checks.push_back(
            {id, r.verdict, check_anchor(id), std::move(r.witness)});
    }
    return report;
}

std::optional<CheckId> first_failure(const FixedPointSystem& system,
                                     CheckMask mask,
                                     const CheckOptions& options)
{
    for (auto id : kEvaluationOrder) {
        if (mask.has(id) && evaluate_check(id, system, options).failed()) {
            return id;
        }
    }
    return std::nullopt;
}

}  // namespace fixedpt
