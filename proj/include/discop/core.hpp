#pragma once

#include <cstdint>
#include <optional>
#include <variant>
#include <vector>

#include "discop/instance.hpp"

namespace discop {

using Window = std::optional<std::int64_t>;

/// Result of the nonsingularity check: either fine, or a null point that
/// receives strictly positive preimage mass.
struct NonsingularityViolation {
    Label witness;
};
using NonsingularityResult = std::variant<std::monostate, NonsingularityViolation>;

/// Points of strictly positive weight, intersected with the enumeration
/// window. Finite instances default to their full support; instances with
/// infinitely many points require a window.
std::vector<Label> support(const Instance& inst, Window window = std::nullopt);

/// Checks that no null point receives positive preimage mass (the
/// absolute-continuity condition that makes composition an operator).
NonsingularityResult check_nonsingular(const FiniteInstance& inst);

/// The representative of the map that agrees with phi on the support and
/// fixes every null point. Induces the same operator. Idempotent.
FiniteInstance canonical_representative(const FiniteInstance& inst);

/// The n-fold preimage of x as an explicit label set, or nullopt if an
/// infinite-mass fiber is encountered along the way. Members are unique and
/// sorted. Null members are kept; they never contribute mass.
std::optional<std::vector<Label>> preimage_set(const Instance& inst, std::int64_t n,
                                               const Label& x);

/// Mass of the n-fold preimage of x: sum of weights over explicit preimages
/// for finite and lazy instances, closed form per orbit kind for orbit
/// families. Infinite declared fibers yield infinite mass.
Mass pushforward(const Instance& inst, std::int64_t n, const Label& x);

}  // namespace discop
