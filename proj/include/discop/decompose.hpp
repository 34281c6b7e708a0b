#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <utility>
#include <variant>
#include <vector>

#include "discop/classify.hpp"
#include "discop/instance.hpp"

namespace discop {

/// One orbit of the support map. The anchor is the orbit member met first
/// in the instance's enumeration order (index 0 for a structured infinite
/// orbit); members follow the map (member i is sent to member
/// i+1, cyclically for a cycle, so a cycle's list starts at the anchor).
/// An infinite orbit stores the windowed stretch of members around the
/// anchor, in map order. `ratio` is mu(next)/mu(current) along the orbit
/// when that quotient is constant (always 1 for finite orbits of a normal
/// instance); it is taken from the first adjacent pair.
struct OrbitRecord {
    enum class Kind { FixedPoint, Cycle, InfiniteLine };

    Label anchor;
    Kind kind = Kind::FixedPoint;
    std::vector<Label> members;
    Rat ratio = Rat(1);

    bool operator==(const OrbitRecord&) const = default;
};

/// Weight sequence of one shift block: a constant finite tuple (a finite
/// geometric sequence is constant) ...
struct ConstantGamma {
    Rat value;
    std::int64_t length = 1;
    bool operator==(const ConstantGamma&) const = default;
};

/// ... or a two-sided geometric sequence gamma(j) = base * ratio^(j-1),
/// normalized so that the anchor (at shift index 1) carries `base`.
struct GeometricGamma {
    Rat base;
    Rat ratio;
    bool operator==(const GeometricGamma&) const = default;
};

/// One backward-shift summand. The relabeling pairs the basis vector at
/// phi^k(anchor) with shift index k+1 (reduced mod length for finite
/// blocks); for infinite orbits it covers the windowed members.
struct ShiftBlock {
    Label anchor;
    std::variant<ConstantGamma, GeometricGamma> gamma;
    std::vector<std::pair<Label, std::int64_t>> relabeling;

    bool operator==(const ShiftBlock&) const = default;
};

/// Orthogonal-sum presentation of a normal instance: one weighted two-sided
/// backward shift per orbit. `window` is set when normality was only
/// verified on a window, and marks the decomposition as windowed too.
struct ShiftDecomposition {
    std::vector<ShiftBlock> blocks;
    std::optional<std::int64_t> window;

    std::vector<Label> anchors() const;

    bool operator==(const ShiftDecomposition&) const = default;
};

/// Partition of the (windowed) support into orbits of the support map.
/// Requires the support-restricted map to be a bijection; the error carries
/// a colliding pair, or the same label twice for an uncovered point.
std::vector<OrbitRecord> orbits(const Instance& inst, Window window = std::nullopt);

/// The decomposition of a normal instance into weighted backward shifts:
/// finite orbits turn into constant blocks, infinite orbits into geometric
/// blocks with base mu(anchor) and the orbit's common ratio. Throws
/// NotNormal with the classifier's witness otherwise.
ShiftDecomposition shift_decomposition(const Instance& inst, Window window = std::nullopt);

/// Inverse construction: a structured-orbit instance whose decomposition
/// agrees with `dec` up to anchor names. Constant blocks of length one
/// become fixed points, longer ones cycles, geometric blocks lines. An
/// empty decomposition gives the empty instance.
OrbitFamilyInstance rebuild_from_decomposition(const ShiftDecomposition& dec);

/// Checks the intertwining property behind the decomposition: for every
/// windowed basis vector, applying the operator and then relabeling equals
/// relabeling and then the backward shift, and the block weights match the
/// instance weights. Fails names the offending basis vector.
Verdict verify_unitary_equivalence(const Instance& inst, const ShiftDecomposition& dec,
                                   Window window = std::nullopt);

/// A bijection shape: so-many pairwise disjoint line orbits, weights not
/// yet chosen. nullopt means countably many.
struct LineSkeletonTemplate {
    std::optional<std::int64_t> orbit_count;
};

/// Chooses a measure making the template's map an unbounded normal
/// instance: orbit i gets the geometric weights with ratio 1/(i+1), so the
/// per-orbit derivative sup is i+1. Requires countably many infinite
/// orbits; no finite collection can produce an unbounded instance.
OrbitFamilyInstance construct_unbounded_normal_measure(const LineSkeletonTemplate& tmpl);

/// Countably many geometric weight sequences, given by the common ratio of
/// sequence i. `count` must be absent (infinitely many sequences).
struct GeometricRatioSchedule {
    std::function<Rat(std::int64_t)> ratio;
    std::optional<std::int64_t> count;
};

/// Chooses a map making the given weight sequences an unbounded normal
/// instance: each sequence becomes a line orbit. The declared ratios must
/// be strictly monotone toward 0 or toward infinity (probed on the first
/// eight); increasing schedules are flipped to the reciprocal orientation,
/// recorded in the construction note.
OrbitFamilyInstance construct_map_for_measure(const GeometricRatioSchedule& schedule);

}  // namespace discop
