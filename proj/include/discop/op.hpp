#pragma once

#include <cstdint>
#include <optional>
#include <variant>

#include "discop/core.hpp"
#include "discop/finsupp.hpp"
#include "discop/instance.hpp"

namespace discop {

/// Value of the Radon-Nikodym derivative h at one point: preimage mass
/// divided by the point's own weight on the support, zero off the support,
/// infinite when the preimage mass diverges.
using DerivativeValue = Mass;

/// h(x) = mu(phi^{-1}(x)) / mu(x) for x in the support, 0 elsewhere.
DerivativeValue radon_nikodym(const Instance& inst, const Label& x);

/// Three-valued answer for dense definedness: exact yes, a witness point
/// with infinite fiber mass, or yes as far as the window reaches.
struct DenselyDefined {
    enum class Status { Yes, No, YesOnWindow };
    Status status = Status::Yes;
    std::optional<Label> witness;       // set when No
    std::optional<std::int64_t> window; // set when YesOnWindow
};

/// The operator is densely defined iff every support point has finite
/// preimage mass. Exact for finite and orbit-family instances; windowed for
/// lazy ones.
DenselyDefined densely_defined(const Instance& inst, Window window = std::nullopt);

/// Domain membership of f, with the exact value of the defining sum
/// (sum of |f(x)|^2 * preimage-mass over the support of f) as certificate.
struct DomainCheck {
    bool in_domain = false;
    Rat sum;                      // the certificate when in_domain
    std::optional<Label> witness; // diverging point otherwise
};
DomainCheck in_domain(const Instance& inst, const FinSuppFn& f);

/// Composition: (C f)(y) = f(phi(y)). Requires f in the domain; entries at
/// null points are dropped (functions are identified a.e.).
FinSuppFn apply_c(const Instance& inst, const FinSuppFn& f);

/// Adjoint: (C* f)(x) = sum over the fiber of x of f(z) mu(z) / mu(x),
/// defined on the support and extended by zero off it.
FinSuppFn apply_c_star(const Instance& inst, const FinSuppFn& f);

/// C*C on a basis vector: h(x) times the basis vector at x.
FinSuppFn apply_cstar_c_basis(const Instance& inst, const Label& x);

/// CC* on a basis vector: mu(x)/mu(phi(x)) times the indicator of the fiber
/// of phi(x).
FinSuppFn apply_c_cstar_basis(const Instance& inst, const Label& x);

/// C*CC on a basis vector: y -> h(y) on the fiber of x, zero elsewhere.
FinSuppFn apply_cstar_c_c_basis(const Instance& inst, const Label& x);

/// CC*C on a basis vector: h(x) times the indicator of the fiber of x.
FinSuppFn apply_c_cstar_c_basis(const Instance& inst, const Label& x);

/// The summability functionals describing the domains of the operator
/// products, evaluated exactly on finitely supported functions.
enum class ProductKind {
    CstarC,    // sum |f(x)|^2 m(x)^2 / mu(x),      m = preimage mass
    C_CstarC,  // sum |f(x)|^2 m(x)^3 / mu(x)^2
    Cstar_C_C, // sum |f(phi(x))|^2 m(x)^2 / mu(x)
};
Rat product_domain_functional(const Instance& inst, const FinSuppFn& f, ProductKind which);

/// The squared norm in the weighted sequence space: sum |f(x)|^2 mu(x).
Rat norm_sq(const Instance& inst, const FinSuppFn& f);

/// The weighted inner product <f, g> = sum f(x) conj(g(x)) mu(x).
ComplexRat inner_product(const Instance& inst, const FinSuppFn& f, const FinSuppFn& g);

}  // namespace discop
