#include "discop/op.hpp"

namespace discop {

namespace {

/// Total weight of the one-step preimage of x.
Mass fiber_mass(const Instance& inst, const Label& x) {
    FiberInfo fi = inst.fiber(x);
    if (!fi.is_finite()) return Mass::infinite();
    Rat m(0);
    for (const Label& z : fi.members()) m += inst.weight(z);
    return Mass(m);
}

/// h at a point required to be in the support with a finite fiber.
Rat checked_h(const Instance& inst, const Label& x) {
    Rat mx = inst.weight(x);
    if (!mx.is_positive()) throw NotInSupport(x);
    Mass m = fiber_mass(inst, x);
    if (m.is_infinite()) throw InfiniteFiber(x);
    return m.value() / mx;
}

/// Finite instances are checked globally; the structured orbit kinds have
/// no null points, so only entries touched on a lazy instance can reveal a
/// violation.
void refuse_if_not_nonsingular(const Instance& inst) {
    if (!inst.is_finite()) return;
    auto ns = check_nonsingular(inst.finite());
    if (auto* v = std::get_if<NonsingularityViolation>(&ns)) throw NotNonsingular(v->witness);
}

}  // namespace

DerivativeValue radon_nikodym(const Instance& inst, const Label& x) {
    Rat mx = inst.weight(x);
    if (!mx.is_positive()) return Mass(Rat(0));
    Mass m = fiber_mass(inst, x);
    if (m.is_infinite()) return Mass::infinite();
    return Mass(m.value() / mx);
}

DenselyDefined densely_defined(const Instance& inst, Window window) {
    // Finite instances have finite fibers outright, and every structured
    // orbit kind has fibers of at most two points, so both are exact.
    if (inst.is_finite() || inst.is_family())
        return {DenselyDefined::Status::Yes, std::nullopt, std::nullopt};
    if (!window) throw MissingWindow();
    for (const Label& x : support(inst, window)) {
        if (!inst.fiber(x).is_finite())
            return {DenselyDefined::Status::No, x, std::nullopt};
    }
    return {DenselyDefined::Status::YesOnWindow, std::nullopt, *window};
}

DomainCheck in_domain(const Instance& inst, const FinSuppFn& f) {
    Rat sum(0);
    for (const auto& [x, v] : f.entries()) {
        if (!inst.weight(x).is_positive()) continue;  // null entries carry no mass
        Mass m = fiber_mass(inst, x);
        if (m.is_infinite()) return {false, Rat(0), x};
        sum += v.abs_sq() * m.value();
    }
    return {true, sum, std::nullopt};
}

FinSuppFn apply_c(const Instance& inst, const FinSuppFn& f) {
    refuse_if_not_nonsingular(inst);
    DomainCheck dc = in_domain(inst, f);
    if (!dc.in_domain) throw NotInDomain(*dc.witness);
    FinSuppFn out;
    for (const auto& [x, v] : f.entries()) {
        if (!inst.weight(x).is_positive()) {
            // On a lazy instance a null entry with positive preimage mass is
            // the first visible sign that composition is not an operator.
            Mass m = fiber_mass(inst, x);
            if (m.is_infinite() || m.value().is_positive()) throw NotNonsingular(x);
            continue;
        }
        FiberInfo fi = inst.fiber(x);
        for (const Label& z : fi.members())
            if (inst.weight(z).is_positive()) out.add(z, v);
    }
    return out;
}

FinSuppFn apply_c_star(const Instance& inst, const FinSuppFn& f) {
    refuse_if_not_nonsingular(inst);
    // The adjoint exists only when the operator is densely defined. For a
    // lazy instance that is checked on the touched points: the support of f
    // and its images.
    if (inst.is_lazy()) {
        for (const auto& [z, v] : f.entries()) {
            if (!inst.weight(z).is_positive()) continue;
            if (!inst.fiber(z).is_finite()) throw NotDenselyDefined(z);
            Label x = inst.image(z);
            if (!inst.fiber(x).is_finite()) throw NotDenselyDefined(x);
        }
    }
    FinSuppFn out;
    for (const auto& [z, v] : f.entries()) {
        Rat mz = inst.weight(z);
        if (!mz.is_positive()) continue;
        Label x = inst.image(z);
        Rat mx = inst.weight(x);
        if (!mx.is_positive()) throw NotNonsingular(x);
        out.add(x, (mz / mx) * v);
    }
    return out;
}

FinSuppFn apply_cstar_c_basis(const Instance& inst, const Label& x) {
    return FinSuppFn::basis(x, ComplexRat(checked_h(inst, x)));
}

FinSuppFn apply_c_cstar_basis(const Instance& inst, const Label& x) {
    Rat mx = inst.weight(x);
    if (!mx.is_positive()) throw NotInSupport(x);
    Label y = inst.image(x);
    Rat my = inst.weight(y);
    if (!my.is_positive()) throw NotInSupport(y);
    FiberInfo fi = inst.fiber(y);
    if (!fi.is_finite()) throw InfiniteFiber(y);
    ComplexRat ratio(mx / my);
    FinSuppFn out;
    for (const Label& z : fi.members())
        if (inst.weight(z).is_positive()) out.add(z, ratio);
    return out;
}

FinSuppFn apply_cstar_c_c_basis(const Instance& inst, const Label& x) {
    if (!inst.weight(x).is_positive()) throw NotInSupport(x);
    FiberInfo fi = inst.fiber(x);
    if (!fi.is_finite()) throw InfiniteFiber(x);
    FinSuppFn out;
    for (const Label& y : fi.members()) {
        if (!inst.weight(y).is_positive()) continue;  // h vanishes off the support
        out.add(y, ComplexRat(checked_h(inst, y)));
    }
    return out;
}

FinSuppFn apply_c_cstar_c_basis(const Instance& inst, const Label& x) {
    ComplexRat h(checked_h(inst, x));
    FinSuppFn out;
    FiberInfo fi = inst.fiber(x);
    for (const Label& z : fi.members())
        if (inst.weight(z).is_positive()) out.add(z, h);
    return out;
}

Rat product_domain_functional(const Instance& inst, const FinSuppFn& f, ProductKind which) {
    Rat sum(0);
    auto term = [&](const Rat& coeff_sq, const Label& x) {
        Rat mx = inst.weight(x);
        Mass m = fiber_mass(inst, x);
        if (m.is_infinite()) throw InfiniteFiber(x);
        if (which == ProductKind::C_CstarC)
            sum += coeff_sq * m.value().pow(3) / (mx * mx);
        else
            sum += coeff_sq * m.value() * m.value() / mx;
    };
    if (which == ProductKind::Cstar_C_C) {
        for (const auto& [w, v] : f.entries()) {
            FiberInfo fi = inst.fiber(w);
            if (!fi.is_finite()) throw InfiniteFiber(w);
            for (const Label& x : fi.members())
                if (inst.weight(x).is_positive()) term(v.abs_sq(), x);
        }
    } else {
        for (const auto& [x, v] : f.entries())
            if (inst.weight(x).is_positive()) term(v.abs_sq(), x);
    }
    return sum;
}

Rat norm_sq(const Instance& inst, const FinSuppFn& f) {
    Rat sum(0);
    for (const auto& [x, v] : f.entries()) sum += v.abs_sq() * inst.weight(x);
    return sum;
}

ComplexRat inner_product(const Instance& inst, const FinSuppFn& f, const FinSuppFn& g) {
    ComplexRat sum;
    for (const auto& [x, v] : f.entries()) {
        ComplexRat gx = g.at(x);
        if (gx.is_zero()) continue;
        sum = sum + inst.weight(x) * (v * gx.conj());
    }
    return sum;
}

}  // namespace discop
