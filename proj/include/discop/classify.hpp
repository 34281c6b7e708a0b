#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "discop/core.hpp"
#include "discop/instance.hpp"
#include "discop/op.hpp"

namespace discop {

/// A structured counterexample: the violated condition, the point or pair
/// of points it happened at, and the exact value of each side. For the
/// multiplicative check `depth` records the power at which the identity
/// first broke.
struct Witness {
    std::string condition;
    std::vector<Label> points;
    std::string lhs;
    std::string rhs;
    std::optional<std::int64_t> depth;

    bool operator==(const Witness&) const = default;
};

/// Outcome of one decision procedure. Exact instances get Holds/Fails;
/// black-box instances can only be verified as far as the window reaches.
/// Fails always carries a witness that re-evaluates to a real violation.
class Verdict {
public:
    enum class Status { Holds, Fails, VerifiedOnWindow };

    static Verdict holds() { return Verdict(Status::Holds); }
    static Verdict fails(Witness w) {
        Verdict v(Status::Fails);
        v.witness_ = std::move(w);
        return v;
    }
    static Verdict on_window(std::int64_t n) {
        Verdict v(Status::VerifiedOnWindow);
        v.window_ = n;
        return v;
    }

    Status status() const { return status_; }
    bool is_holds() const { return status_ == Status::Holds; }
    bool is_fails() const { return status_ == Status::Fails; }
    bool is_window() const { return status_ == Status::VerifiedOnWindow; }
    const Witness& witness() const { return *witness_; }
    std::int64_t window() const { return *window_; }

    bool operator==(const Verdict&) const = default;

private:
    explicit Verdict(Status s) : status_(s) {}
    Status status_;
    std::optional<Witness> witness_;
    std::optional<std::int64_t> window_;
};

/// The essential supremum of h: an exact rational, provably unbounded, or
/// the maximum seen on a window.
struct SupH {
    enum class Kind { Exact, Unbounded, Window };
    Kind kind = Kind::Exact;
    std::optional<Rat> value;  // present for Exact and Window

    static SupH exact(Rat v) { return {Kind::Exact, std::move(v)}; }
    static SupH unbounded() { return {Kind::Unbounded, std::nullopt}; }
    static SupH window(Rat v) { return {Kind::Window, std::move(v)}; }

    bool operator==(const SupH&) const = default;
    std::string str() const {
        if (kind == Kind::Unbounded) return "unbounded";
        return value->str();
    }
};

struct Boundedness {
    Verdict verdict;
    SupH sup_h;
};

/// Boundedness of the operator, decided through sup h: exact for finite
/// instances and structured orbit lists, declared for rule families,
/// windowed for black-box instances.
Boundedness is_bounded(const Instance& inst, Window window = std::nullopt);

/// The basis-level commutation condition: the two operator products applied
/// to every basis vector of the support must agree.
Verdict check_condition_31(const Instance& inst, Window window = std::nullopt);

/// Normality: the support-restricted map must be a bijection of the support
/// and every orbit must carry a single geometric ratio (so finite orbits
/// carry constant weight).
Verdict classify_normal(const Instance& inst, Window window = std::nullopt);

/// Quasinormality: finite fiber masses and h constant along every fiber,
/// i.e. h(z) = h(phi(z)) for every support point z.
Verdict classify_quasinormal(const Instance& inst, Window window = std::nullopt);

/// The power identity h(x)^n = mu(phi^{-n}(x))/mu(x) for 1 <= n <= n_max.
Verdict multiplicative_quasinormal_check(const Instance& inst, std::int64_t n_max,
                                         Window window = std::nullopt);

/// Formal normality on the span of the basis: equal norms of the forward
/// and adjoint images of every basis vector, plus the basis commutation
/// condition (the polarization direction).
Verdict formally_normal_on_basis(const Instance& inst, Window window = std::nullopt);

/// Symmetry of the operator. On a positive verdict the map is an involution
/// of the support with invariant weights and sup h = 1. On a negative one
/// the flags say which half broke at the witnessed point.
struct SymmetryReport {
    Verdict verdict;
    bool involution_on_support = false;
    bool weights_phi_invariant = false;
    std::optional<Rat> sup_h;
};
SymmetryReport check_symmetric(const Instance& inst, Window window = std::nullopt);

/// Every positive-weight point must have at least one preimage (possibly a
/// null one): the complement of the image carries no mass.
Verdict almost_surjective(const Instance& inst, Window window = std::nullopt);

/// All verdicts side by side, with cross-implication consistency checks.
/// Violations of the implications are reported, never silently fixed.
struct ClassificationReport {
    Verdict densely_defined = Verdict::holds();
    Verdict bounded = Verdict::holds();
    Verdict normal = Verdict::holds();
    Verdict quasinormal = Verdict::holds();
    Verdict multiplicative = Verdict::holds();
    Verdict formally_normal_on_basis = Verdict::holds();
    Verdict symmetric = Verdict::holds();
    Verdict almost_surjective = Verdict::holds();
    SupH sup_h = SupH::exact(Rat(0));
    std::int64_t n_max = 4;
    /// Anchors of pairwise disjoint infinite orbits, populated when the
    /// instance is normal yet unbounded.
    std::vector<Label> infinite_orbit_witnesses;
    /// Broken cross-implications between exact verdicts, e.g.
    /// "normal holds but quasinormal fails". Empty on a sane build.
    std::vector<std::string> consistency_violations;

    bool operator==(const ClassificationReport&) const = default;
};

ClassificationReport full_report(const Instance& inst, Window window = std::nullopt,
                                 std::int64_t n_max = 4);

}  // namespace discop
