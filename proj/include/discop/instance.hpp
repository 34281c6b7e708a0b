#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "discop/errors.hpp"
#include "discop/label.hpp"
#include "discop/rat.hpp"

namespace discop {

/// The preimage of a single point: either an explicit finite list of labels
/// (no duplicates) or a declaration that the preimage carries infinite
/// total mass.
class FiberInfo {
public:
    static FiberInfo finite(std::vector<Label> members);
    static FiberInfo infinite_mass() { return FiberInfo(); }

    bool is_finite() const { return members_.has_value(); }
    const std::vector<Label>& members() const { return *members_; }

    bool operator==(const FiberInfo&) const = default;

private:
    FiberInfo() = default;
    std::optional<std::vector<Label>> members_;  // nullopt = infinite mass
};

/// A finite measure space with an explicit self-map. Point order follows the
/// `points` vector and fixes enumeration and witness order.
class FiniteInstance {
public:
    /// Validates totality of mu and phi and nonnegativity of weights.
    FiniteInstance(std::vector<Label> points,
                   std::map<Label, Rat> mu,
                   std::map<Label, Label> phi);

    const std::vector<Label>& points() const { return points_; }
    const Rat& mu(const Label& x) const;
    const Label& phi(const Label& x) const;
    bool contains(const Label& x) const { return mu_.count(x) > 0; }

    /// Labels of strictly positive weight, in point order.
    std::vector<Label> support() const;
    /// Full preimage of x under phi (null members included), in point order.
    std::vector<Label> fiber(const Label& x) const;

    bool operator==(const FiniteInstance&) const = default;

private:
    std::vector<Label> points_;
    std::map<Label, Rat> mu_;
    std::map<Label, Label> phi_;
};

/// One structurally-described orbit. All weights are strictly positive.
class OrbitSpec {
public:
    struct FixedPoint { Rat weight; bool operator==(const FixedPoint&) const = default; };
    /// Indices 0..n-1, the map sends i to (i+1) mod n.
    struct Cycle { std::vector<Rat> weights; bool operator==(const Cycle&) const = default; };
    /// Indices k in Z, weight c*q^k, the map sends k to k+1.
    struct Line { Rat base; Rat ratio; bool operator==(const Line&) const = default; };
    /// Indices n in Z+, weight 1 at 0, (c-1)*c^(n-1) at n >= 1; the map sends
    /// 0 to 0 and n to n-1. The derivative h is identically c. Requires c > 1.
    struct RayLoop { Rat ratio; bool operator==(const RayLoop&) const = default; };

    OrbitSpec(FixedPoint s);
    OrbitSpec(Cycle s);
    OrbitSpec(Line s);
    OrbitSpec(RayLoop s);

    static OrbitSpec fixed_point(Rat weight) { return OrbitSpec(FixedPoint{std::move(weight)}); }
    static OrbitSpec cycle(std::vector<Rat> weights) { return OrbitSpec(Cycle{std::move(weights)}); }
    static OrbitSpec line(Rat base, Rat ratio) { return OrbitSpec(Line{std::move(base), std::move(ratio)}); }
    static OrbitSpec ray_loop(Rat ratio) { return OrbitSpec(RayLoop{std::move(ratio)}); }

    template <class T> bool is() const { return std::holds_alternative<T>(v_); }
    template <class T> const T& as() const { return std::get<T>(v_); }
    template <class V> decltype(auto) visit(V&& v) const { return std::visit(std::forward<V>(v), v_); }

    bool infinite() const { return is<Line>() || is<RayLoop>(); }
    /// Number of points, nullopt for infinite orbits.
    std::optional<std::int64_t> size() const;

    bool valid_index(std::int64_t k) const;
    Rat weight_at(std::int64_t k) const;
    std::int64_t image_of(std::int64_t k) const;
    std::vector<std::int64_t> fiber_of(std::int64_t k) const;
    /// r-th index in the orbit's own enumeration order. FixedPoint: 0.
    /// Cycle: r. Line: 0, 1, -1, 2, -2, ... RayLoop: r.
    std::optional<std::int64_t> enum_index(std::int64_t r) const;

    bool operator==(const OrbitSpec&) const = default;

private:
    std::variant<FixedPoint, Cycle, Line, RayLoop> v_;
};

/// Generates orbit i of a countably infinite family of lines. Only named
/// constructions produce these, so equality compares name and note.
struct LineFamilyRule {
    std::string name;  // construction identifier, e.g. "unbounded_normal"
    std::string note;  // deterministic human-readable parameter description
    std::function<OrbitSpec(std::int64_t)> orbit;
    bool h_unbounded = false;  // the per-orbit derivative sup diverges
};

/// A disjoint union of structurally-described orbits; every point has
/// strictly positive weight. Either a finite list of orbit specs or a rule
/// generating a countably infinite family of lines.
class OrbitFamilyInstance {
public:
    explicit OrbitFamilyInstance(std::vector<OrbitSpec> orbits);
    explicit OrbitFamilyInstance(LineFamilyRule rule);

    bool has_rule() const { return rule_ != nullptr; }
    const LineFamilyRule& rule() const { return *rule_; }
    /// Number of orbits; nullopt when generated by a rule (countably many).
    std::optional<std::int64_t> orbit_count() const;
    OrbitSpec orbit(std::int64_t i) const;
    const std::vector<OrbitSpec>& orbit_list() const { return orbits_; }

    bool contains(const Label& x) const;
    Rat weight(const Label& x) const;
    Label image(const Label& x) const;
    FiberInfo fiber(const Label& x) const;

    /// Whether the total point count is finite (no rule, no infinite orbits).
    bool finitely_many_points() const;
    /// First n labels in a stable deterministic order: round-robin over the
    /// orbit list, anti-diagonal over (orbit, position) for rule families.
    std::vector<Label> enumerate(std::int64_t n) const;

    bool operator==(const OrbitFamilyInstance& o) const;

private:
    std::vector<OrbitSpec> orbits_;
    std::shared_ptr<const LineFamilyRule> rule_;
};

/// Behaviour contract for instances given by black-box queries. The
/// consistency requirement (y is in fiber(x) iff image(y) = x) and the
/// stability of enumerate are the author's responsibility; verification
/// against such instances is always windowed.
struct LazyInstance {
    std::function<Rat(const Label&)> weight;
    std::function<Label(const Label&)> image;
    std::function<FiberInfo(const Label&)> fiber;
    std::function<std::vector<Label>(std::int64_t)> enumerate;
};

/// A discrete measure space with a self-map, in one of three
/// representations. All values are immutable after construction and every
/// operation on them is pure.
class Instance {
public:
    Instance(FiniteInstance i) : v_(std::move(i)) {}
    Instance(OrbitFamilyInstance i) : v_(std::move(i)) {}
    Instance(LazyInstance i) : v_(std::move(i)) {}

    bool is_finite() const { return std::holds_alternative<FiniteInstance>(v_); }
    bool is_family() const { return std::holds_alternative<OrbitFamilyInstance>(v_); }
    bool is_lazy() const { return std::holds_alternative<LazyInstance>(v_); }

    const FiniteInstance& finite() const { return std::get<FiniteInstance>(v_); }
    const OrbitFamilyInstance& family() const { return std::get<OrbitFamilyInstance>(v_); }
    const LazyInstance& lazy() const { return std::get<LazyInstance>(v_); }

    /// Uniform queries, dispatching on the representation.
    Rat weight(const Label& x) const;
    Label image(const Label& x) const;
    FiberInfo fiber(const Label& x) const;
    /// First n labels in the instance's stable enumeration order.
    std::vector<Label> enumerate(std::int64_t n) const;
    /// True when full enumeration is impossible without a window.
    bool needs_window() const;

private:
    std::variant<FiniteInstance, OrbitFamilyInstance, LazyInstance> v_;
};

}  // namespace discop
