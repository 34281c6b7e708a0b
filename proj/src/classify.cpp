#include "discop/classify.hpp"

#include <algorithm>
#include <map>
#include <set>

namespace discop {

namespace {

Witness infinite_fiber_witness(const Label& x) {
    return Witness{"finite_fiber_mass", {x}, "inf", "finite", std::nullopt};
}

Witness nonsingular_witness(const Instance& inst, const Label& null_point) {
    return Witness{"nonsingular", {null_point}, pushforward(inst, 1, null_point).str(), "0",
                   std::nullopt};
}

/// A map that is not nonsingular does not induce an operator, so every
/// classification of such an instance fails with the violation as witness.
/// Exact for finite instances; structured orbits have no null points; lazy
/// instances are caught pointwise by the individual procedures.
std::optional<Witness> nonsingular_gate(const Instance& inst) {
    if (!inst.is_finite()) return std::nullopt;
    auto ns = check_nonsingular(inst.finite());
    if (auto* v = std::get_if<NonsingularityViolation>(&ns))
        return nonsingular_witness(inst, v->witness);
    return std::nullopt;
}

/// Indices that decide a per-point condition on a whole structured orbit.
/// Line weights are self-similar under shifting, so one index stands for
/// all; a ray loop has three regimes (the loop point, its neighbour, the
/// geometric tail); cycles are checked in full.
std::vector<std::int64_t> probe_indices(const OrbitSpec& o) {
    if (o.is<OrbitSpec::Cycle>()) {
        std::vector<std::int64_t> out;
        for (std::int64_t k = 0; k < *o.size(); ++k) out.push_back(k);
        return out;
    }
    if (o.is<OrbitSpec::RayLoop>()) return {0, 1, 2};
    return {0};
}

/// Which points a per-point condition must be evaluated at, and whether
/// success means Holds or only VerifiedOnWindow.
struct PointScope {
    std::vector<Label> points;
    bool exact = true;
    std::int64_t window = 0;       // meaningful when !exact
    bool structural_pass = false;  // rule family: all orbits are lines
};

PointScope point_scope(const Instance& inst, Window window) {
    PointScope sc;
    if (inst.is_finite()) {
        sc.points = inst.finite().support();
        return sc;
    }
    if (inst.is_family()) {
        const OrbitFamilyInstance& fam = inst.family();
        if (fam.has_rule()) {
            sc.structural_pass = true;
            return sc;
        }
        const auto& orbits = fam.orbit_list();
        for (std::int64_t i = 0; i < static_cast<std::int64_t>(orbits.size()); ++i)
            for (std::int64_t k : probe_indices(orbits[static_cast<std::size_t>(i)]))
                sc.points.push_back(Label::at(i, k));
        return sc;
    }
    if (!window) throw MissingWindow();
    sc.points = support(inst, window);
    sc.exact = false;
    sc.window = *window;
    return sc;
}

Verdict scope_pass(const PointScope& sc) {
    return sc.exact ? Verdict::holds() : Verdict::on_window(sc.window);
}

/// Largest value of h on one structured orbit.
Rat orbit_sup_h(const OrbitSpec& o) {
    return o.visit([&](const auto& s) -> Rat {
        using T = std::decay_t<decltype(s)>;
        if constexpr (std::is_same_v<T, OrbitSpec::FixedPoint>) {
            return Rat(1);
        } else if constexpr (std::is_same_v<T, OrbitSpec::Cycle>) {
            auto n = static_cast<std::int64_t>(s.weights.size());
            Rat best(0);
            for (std::int64_t k = 0; k < n; ++k) {
                Rat h = s.weights[static_cast<std::size_t>((k - 1 + n) % n)] /
                        s.weights[static_cast<std::size_t>(k)];
                best = std::max(best, h);
            }
            return best;
        } else if constexpr (std::is_same_v<T, OrbitSpec::Line>) {
            return Rat(1) / s.ratio;
        } else {
            return s.ratio;
        }
    });
}

void require_dense(const Instance& inst, Window window) {
    DenselyDefined dd = densely_defined(inst, window);
    if (dd.status == DenselyDefined::Status::No) throw NotDenselyDefined(*dd.witness);
}

}  // namespace

Boundedness is_bounded(const Instance& inst, Window window) {
    if (inst.is_finite()) {
        Rat best(0);
        for (const Label& x : inst.finite().support())
            best = std::max(best, radon_nikodym(inst, x).value());
        return {Verdict::holds(), SupH::exact(best)};
    }
    if (inst.is_family()) {
        const OrbitFamilyInstance& fam = inst.family();
        if (!fam.has_rule()) {
            Rat best(0);
            for (const OrbitSpec& o : fam.orbit_list()) best = std::max(best, orbit_sup_h(o));
            return {Verdict::holds(), SupH::exact(best)};
        }
        if (fam.rule().h_unbounded) {
            std::string seen;
            std::vector<Label> anchors;
            for (std::int64_t i = 0; i < 3; ++i) {
                Label a = Label::at(i, 0);
                anchors.push_back(a);
                if (!seen.empty()) seen += ", ";
                seen += radon_nikodym(inst, a).str();
            }
            Witness w{"sup_h_finite", std::move(anchors), "h = " + seen + ", ...",
                      "any finite bound", std::nullopt};
            return {Verdict::fails(std::move(w)), SupH::unbounded()};
        }
        if (!window) throw MissingWindow();
        Rat best(0);
        for (std::int64_t i = 0; i < *window; ++i)
            best = std::max(best, orbit_sup_h(fam.orbit(i)));
        return {Verdict::on_window(*window), SupH::window(best)};
    }
    if (!window) throw MissingWindow();
    Rat best(0);
    for (const Label& x : support(inst, window)) {
        Mass h = radon_nikodym(inst, x);
        if (h.is_infinite())
            return {Verdict::fails(infinite_fiber_witness(x)), SupH::unbounded()};
        best = std::max(best, h.value());
    }
    return {Verdict::on_window(*window), SupH::window(best)};
}

Verdict check_condition_31(const Instance& inst, Window window) {
    require_dense(inst, window);
    if (auto w = nonsingular_gate(inst)) return Verdict::fails(std::move(*w));
    PointScope sc = point_scope(inst, window);
    if (sc.structural_pass) return Verdict::holds();
    for (const Label& x : sc.points) {
        Label y = inst.image(x);
        if (!inst.weight(y).is_positive())
            return Verdict::fails(nonsingular_witness(inst, y));
        if (!inst.fiber(y).is_finite()) return Verdict::fails(infinite_fiber_witness(y));
        if (!inst.fiber(x).is_finite()) return Verdict::fails(infinite_fiber_witness(x));
        FinSuppFn lhs = apply_c_cstar_basis(inst, x);
        FinSuppFn rhs = apply_cstar_c_basis(inst, x);
        if (!(lhs == rhs))
            return Verdict::fails(
                Witness{"c_cstar_vs_cstar_c", {x}, lhs.str(), rhs.str(), std::nullopt});
    }
    return scope_pass(sc);
}

namespace {

Verdict normal_finite(const FiniteInstance& fi) {
    std::vector<Label> sup = fi.support();
    std::set<Label> supset(sup.begin(), sup.end());
    // The support map must be injective ...
    std::map<Label, Label> first_preimage;
    for (const Label& x : sup) {
        Label y = fi.phi(x);
        auto [it, inserted] = first_preimage.emplace(y, x);
        if (!inserted)
            return Verdict::fails(Witness{
                "injective_on_support", {it->second, x}, y.str(), y.str(), std::nullopt});
    }
    // ... and onto the support.
    for (const Label& x : sup)
        if (!first_preimage.count(x))
            return Verdict::fails(
                Witness{"onto_support", {x}, "0", fi.mu(x).str(), std::nullopt});
    // Orbits of a finite bijection are cycles; each must carry one weight.
    std::set<Label> visited;
    for (const Label& x : sup) {
        if (visited.count(x)) continue;
        Label cur = x;
        do {
            visited.insert(cur);
            Label nxt = fi.phi(cur);
            if (fi.mu(cur) != fi.mu(nxt))
                return Verdict::fails(Witness{"finite_orbit_constant_measure",
                                              {cur, nxt},
                                              fi.mu(cur).str(),
                                              fi.mu(nxt).str(),
                                              std::nullopt});
            cur = nxt;
        } while (!(cur == x));
    }
    return Verdict::holds();
}

Verdict normal_family(const OrbitFamilyInstance& fam) {
    if (fam.has_rule()) return Verdict::holds();
    const auto& orbits = fam.orbit_list();
    for (std::int64_t i = 0; i < static_cast<std::int64_t>(orbits.size()); ++i) {
        const OrbitSpec& o = orbits[static_cast<std::size_t>(i)];
        if (o.is<OrbitSpec::RayLoop>()) {
            // The loop end absorbs two points.
            Label a = Label::at(i, 0), b = Label::at(i, 1);
            return Verdict::fails(
                Witness{"injective_on_support", {a, b}, a.str(), a.str(), std::nullopt});
        }
        if (o.is<OrbitSpec::Cycle>()) {
            const auto& ws = o.as<OrbitSpec::Cycle>().weights;
            auto n = static_cast<std::int64_t>(ws.size());
            for (std::int64_t k = 0; k < n; ++k) {
                const Rat& a = ws[static_cast<std::size_t>(k)];
                const Rat& b = ws[static_cast<std::size_t>((k + 1) % n)];
                if (!(a == b))
                    return Verdict::fails(Witness{"finite_orbit_constant_measure",
                                                  {Label::at(i, k), Label::at(i, (k + 1) % n)},
                                                  a.str(),
                                                  b.str(),
                                                  std::nullopt});
            }
        }
        // Fixed points and lines satisfy the single-ratio condition outright.
    }
    return Verdict::holds();
}

Verdict normal_lazy(const Instance& inst, Window window) {
    if (!window) throw MissingWindow();
    std::vector<Label> sup = support(inst, window);
    for (const Label& x : sup)
        if (!inst.fiber(x).is_finite()) return Verdict::fails(infinite_fiber_witness(x));
    for (const Label& x : sup) {
        Label y = inst.image(x);
        if (!inst.weight(y).is_positive())
            return Verdict::fails(nonsingular_witness(inst, y));
    }
    std::map<Label, Label> first_preimage;
    for (const Label& x : sup) {
        Label y = inst.image(x);
        auto [it, inserted] = first_preimage.emplace(y, x);
        if (!inserted)
            return Verdict::fails(Witness{
                "injective_on_support", {it->second, x}, y.str(), y.str(), std::nullopt});
    }
    for (const Label& x : sup) {
        // The declared fiber decides coverage exactly even under a window.
        FiberInfo fi = inst.fiber(x);
        bool covered = false;
        for (const Label& z : fi.members())
            if (inst.weight(z).is_positive()) { covered = true; break; }
        if (!covered)
            return Verdict::fails(
                Witness{"onto_support", {x}, "0", inst.weight(x).str(), std::nullopt});
    }
    for (const Label& x : sup) {
        Label y = inst.image(x);
        Label z = inst.image(y);
        if (!inst.weight(z).is_positive())
            return Verdict::fails(nonsingular_witness(inst, z));
        Rat r1 = inst.weight(x) / inst.weight(y);
        Rat r2 = inst.weight(y) / inst.weight(z);
        if (!(r1 == r2))
            return Verdict::fails(
                Witness{"orbit_ratio", {x, y}, r1.str(), r2.str(), std::nullopt});
    }
    return Verdict::on_window(*window);
}

}  // namespace

Verdict classify_normal(const Instance& inst, Window window) {
    if (auto w = nonsingular_gate(inst)) return Verdict::fails(std::move(*w));
    if (inst.is_finite()) return normal_finite(inst.finite());
    if (inst.is_family()) return normal_family(inst.family());
    return normal_lazy(inst, window);
}

Verdict classify_quasinormal(const Instance& inst, Window window) {
    if (auto w = nonsingular_gate(inst)) return Verdict::fails(std::move(*w));
    PointScope sc = point_scope(inst, window);
    if (sc.structural_pass) return Verdict::holds();
    for (const Label& x : sc.points) {
        Mass hx = radon_nikodym(inst, x);
        if (hx.is_infinite()) return Verdict::fails(infinite_fiber_witness(x));
        Label y = inst.image(x);
        if (!inst.weight(y).is_positive())
            return Verdict::fails(nonsingular_witness(inst, y));
        Mass hy = radon_nikodym(inst, y);
        if (hy.is_infinite()) return Verdict::fails(infinite_fiber_witness(y));
        if (!(hx.value() == hy.value()))
            return Verdict::fails(Witness{
                "h_constant_on_fibers", {x, y}, hx.value().str(), hy.value().str(),
                std::nullopt});
    }
    return scope_pass(sc);
}

Verdict multiplicative_quasinormal_check(const Instance& inst, std::int64_t n_max,
                                         Window window) {
    if (n_max < 1) throw BadParameters("n_max must be at least 1");
    if (auto w = nonsingular_gate(inst)) return Verdict::fails(std::move(*w));
    PointScope sc = point_scope(inst, window);
    if (sc.structural_pass) return Verdict::holds();
    for (const Label& x : sc.points) {
        Rat mx = inst.weight(x);
        Mass h1 = radon_nikodym(inst, x);
        if (h1.is_infinite()) throw InfiniteFiber(x);
        for (std::int64_t n = 1; n <= n_max; ++n) {
            Mass mn = pushforward(inst, n, x);
            if (mn.is_infinite()) throw InfiniteFiber(x);
            Rat lhs = h1.value().pow(n);
            Rat rhs = mn.value() / mx;
            if (!(lhs == rhs))
                return Verdict::fails(
                    Witness{"multiplicative_power", {x}, lhs.str(), rhs.str(), n});
        }
    }
    return scope_pass(sc);
}

Verdict formally_normal_on_basis(const Instance& inst, Window window) {
    require_dense(inst, window);
    if (auto w = nonsingular_gate(inst)) return Verdict::fails(std::move(*w));
    PointScope sc = point_scope(inst, window);
    if (sc.structural_pass) return Verdict::holds();
    for (const Label& x : sc.points) {
        if (!inst.fiber(x).is_finite()) return Verdict::fails(infinite_fiber_witness(x));
        Label y = inst.image(x);
        if (!inst.weight(y).is_positive())
            return Verdict::fails(nonsingular_witness(inst, y));
        if (!inst.fiber(y).is_finite()) return Verdict::fails(infinite_fiber_witness(y));
        Rat nc = norm_sq(inst, apply_c(inst, FinSuppFn::basis(x)));
        Rat ns = norm_sq(inst, apply_c_star(inst, FinSuppFn::basis(x)));
        if (!(nc == ns))
            return Verdict::fails(
                Witness{"basis_norm_equality", {x}, nc.str(), ns.str(), std::nullopt});
    }
    // Equal basis norms extend to the span exactly when the basis
    // commutation condition holds (polarization).
    Verdict c31 = check_condition_31(inst, window);
    if (c31.is_fails()) return c31;
    return scope_pass(sc);
}

SymmetryReport check_symmetric(const Instance& inst, Window window) {
    require_dense(inst, window);
    if (auto w = nonsingular_gate(inst))
        return {Verdict::fails(std::move(*w)), false, false, std::nullopt};
    PointScope sc = point_scope(inst, window);
    if (sc.structural_pass) {
        // A rule family consists of lines; probing the first orbit is enough
        // to exhibit the broken pairing.
        sc.points = {Label::at(0, 0), Label::at(0, 1), Label::at(0, 2)};
        sc.structural_pass = false;
    }
    for (const Label& x : sc.points) {
        Label y = inst.image(x);
        if (!inst.weight(y).is_positive())
            return {Verdict::fails(nonsingular_witness(inst, y)), false, false, std::nullopt};
        if (!inst.fiber(x).is_finite())
            return {Verdict::fails(infinite_fiber_witness(x)), false, false, std::nullopt};
        if (!inst.fiber(y).is_finite())
            return {Verdict::fails(infinite_fiber_witness(y)), false, false, std::nullopt};
        bool involution = inst.image(y) == x;
        bool weights_match = inst.weight(x) == inst.weight(y);
        if (!involution || !weights_match) {
            ComplexRat lhs =
                inner_product(inst, apply_c(inst, FinSuppFn::basis(x)), FinSuppFn::basis(y));
            ComplexRat rhs =
                inner_product(inst, FinSuppFn::basis(x), apply_c(inst, FinSuppFn::basis(y)));
            return {Verdict::fails(
                        Witness{"adjoint_pairing", {x, y}, lhs.str(), rhs.str(), std::nullopt}),
                    involution, weights_match, std::nullopt};
        }
    }
    SymmetryReport rep{scope_pass(sc), true, true, Rat(1)};
    return rep;
}

Verdict almost_surjective(const Instance& inst, Window window) {
    if (inst.is_finite()) {
        const FiniteInstance& fi = inst.finite();
        for (const Label& x : fi.support())
            if (fi.fiber(x).empty())
                return Verdict::fails(
                    Witness{"mass_outside_image", {x}, fi.mu(x).str(), "0", std::nullopt});
        return Verdict::holds();
    }
    // Every structured orbit kind maps onto its own point set.
    if (inst.is_family()) return Verdict::holds();
    if (!window) throw MissingWindow();
    for (const Label& x : support(inst, window)) {
        FiberInfo fi = inst.fiber(x);
        if (fi.is_finite() && fi.members().empty())
            return Verdict::fails(
                Witness{"mass_outside_image", {x}, inst.weight(x).str(), "0", std::nullopt});
    }
    return Verdict::on_window(*window);
}

ClassificationReport full_report(const Instance& inst, Window window, std::int64_t n_max) {
    ClassificationReport rep;
    rep.n_max = n_max;
    DenselyDefined dd = densely_defined(inst, window);
    switch (dd.status) {
        case DenselyDefined::Status::Yes: rep.densely_defined = Verdict::holds(); break;
        case DenselyDefined::Status::No:
            rep.densely_defined = Verdict::fails(infinite_fiber_witness(*dd.witness));
            break;
        case DenselyDefined::Status::YesOnWindow:
            rep.densely_defined = Verdict::on_window(*dd.window);
            break;
    }
    if (dd.status == DenselyDefined::Status::No) {
        // Without dense definedness none of the operator-level notions
        // apply; each verdict fails with the same witness.
        Witness w = infinite_fiber_witness(*dd.witness);
        rep.bounded = Verdict::fails(w);
        rep.sup_h = SupH::unbounded();
        rep.normal = Verdict::fails(w);
        rep.quasinormal = Verdict::fails(w);
        rep.multiplicative = Verdict::fails(w);
        rep.formally_normal_on_basis = Verdict::fails(w);
        rep.symmetric = Verdict::fails(w);
        rep.almost_surjective = almost_surjective(inst, window);
    } else {
        Boundedness b = is_bounded(inst, window);
        rep.bounded = b.verdict;
        rep.sup_h = b.sup_h;
        rep.normal = classify_normal(inst, window);
        rep.quasinormal = classify_quasinormal(inst, window);
        try {
            rep.multiplicative = multiplicative_quasinormal_check(inst, n_max, window);
        } catch (const InfiniteFiber& e) {
            rep.multiplicative = Verdict::fails(infinite_fiber_witness(e.point));
        }
        rep.formally_normal_on_basis = formally_normal_on_basis(inst, window);
        rep.symmetric = check_symmetric(inst, window).verdict;
        rep.almost_surjective = almost_surjective(inst, window);
    }

    // Cross-implications between exact verdicts. A broken one points at an
    // implementation bug, so it is surfaced, never patched over.
    auto implies = [&](const Verdict& a, const char* an, const Verdict& b, const char* bn) {
        if (a.is_holds() && b.is_fails())
            rep.consistency_violations.push_back(std::string(an) + " holds but " + bn +
                                                 " fails");
    };
    implies(rep.normal, "normal", rep.quasinormal, "quasinormal");
    implies(rep.normal, "normal", rep.formally_normal_on_basis, "formally_normal_on_basis");
    implies(rep.symmetric, "symmetric", rep.bounded, "bounded");
    implies(rep.quasinormal, "quasinormal", rep.almost_surjective, "almost_surjective");
    if (n_max >= 3 && !rep.quasinormal.is_window() && !rep.multiplicative.is_window() &&
        rep.quasinormal.is_holds() != rep.multiplicative.is_holds())
        rep.consistency_violations.push_back(
            "quasinormal and the multiplicative check disagree");

    if (rep.normal.is_holds() && rep.sup_h.kind == SupH::Kind::Unbounded && inst.is_family()) {
        const OrbitFamilyInstance& fam = inst.family();
        if (fam.has_rule()) {
            for (std::int64_t i = 0; i < 16; ++i)
                rep.infinite_orbit_witnesses.push_back(Label::at(i, 0));
        } else {
            const auto& orbits = fam.orbit_list();
            for (std::int64_t i = 0; i < static_cast<std::int64_t>(orbits.size()); ++i)
                if (orbits[static_cast<std::size_t>(i)].infinite())
                    rep.infinite_orbit_witnesses.push_back(Label::at(i, 0));
        }
    }
    return rep;
}

}  // namespace discop
