#include "discop/core.hpp"

#include <algorithm>
#include <set>

namespace discop {

std::vector<Label> support(const Instance& inst, Window window) {
    if (!window && inst.needs_window()) throw MissingWindow();
    if (inst.is_finite() && !window) return inst.finite().support();
    std::int64_t n;
    if (window) {
        n = *window;
    } else {
        // Finite point count without an explicit window: enumerate everything.
        n = inst.is_finite() ? static_cast<std::int64_t>(inst.finite().points().size())
                             : static_cast<std::int64_t>(1) << 40;
    }
    std::vector<Label> out;
    for (const Label& x : inst.enumerate(n))
        if (inst.weight(x).is_positive()) out.push_back(x);
    return out;
}

NonsingularityResult check_nonsingular(const FiniteInstance& inst) {
    for (const Label& x : inst.points()) {
        if (inst.mu(x).is_positive()) continue;
        Rat mass(0);
        for (const Label& y : inst.fiber(x)) mass += inst.mu(y);
        if (mass.is_positive()) return NonsingularityViolation{x};
    }
    return std::monostate{};
}

FiniteInstance canonical_representative(const FiniteInstance& inst) {
    auto ns = check_nonsingular(inst);
    if (auto* v = std::get_if<NonsingularityViolation>(&ns)) throw NotNonsingular(v->witness);
    std::map<Label, Rat> mu;
    std::map<Label, Label> phi;
    for (const Label& x : inst.points()) {
        mu.emplace(x, inst.mu(x));
        phi.emplace(x, inst.mu(x).is_positive() ? inst.phi(x) : x);
    }
    return FiniteInstance(inst.points(), std::move(mu), std::move(phi));
}

std::optional<std::vector<Label>> preimage_set(const Instance& inst, std::int64_t n,
                                               const Label& x) {
    std::set<Label> level{x};
    for (std::int64_t step = 0; step < n; ++step) {
        std::set<Label> next;
        for (const Label& y : level) {
            FiberInfo f = inst.fiber(y);
            if (!f.is_finite()) return std::nullopt;
            next.insert(f.members().begin(), f.members().end());
        }
        level = std::move(next);
    }
    return std::vector<Label>(level.begin(), level.end());
}

Mass pushforward(const Instance& inst, std::int64_t n, const Label& x) {
    auto pre = preimage_set(inst, n, x);
    if (!pre) return Mass::infinite();
    Rat mass(0);
    for (const Label& y : *pre) mass += inst.weight(y);
    return Mass(mass);
}

}  // namespace discop
