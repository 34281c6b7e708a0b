#pragma once

#include <stdexcept>
#include <string>

#include "discop/label.hpp"

namespace discop {

/// Base class for every error raised by the library.
struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// An unbounded query was made against an instance with infinitely many
/// points and no enumeration window.
struct MissingWindow : Error {
    MissingWindow() : Error("a window is required for this instance kind") {}
};

/// The map pushes positive mass onto a null point, so composition does not
/// define an operator on the L2 space.
struct NotNonsingular : Error {
    Label witness;
    explicit NotNonsingular(Label w)
        : Error("map is not nonsingular at null point " + w.str()),
          witness(std::move(w)) {}
};

struct NotDenselyDefined : Error {
    Label witness;
    explicit NotDenselyDefined(Label w)
        : Error("operator is not densely defined; infinite fiber mass at " + w.str()),
          witness(std::move(w)) {}
};

struct NotInDomain : Error {
    Label witness;
    explicit NotInDomain(Label w)
        : Error("function is not in the operator domain; witness " + w.str()),
          witness(std::move(w)) {}
};

struct NotInSupport : Error {
    Label point;
    explicit NotInSupport(Label p)
        : Error("point " + p.str() + " has zero measure"), point(std::move(p)) {}
};

struct InfiniteFiber : Error {
    Label point;
    explicit InfiniteFiber(Label p)
        : Error("preimage of " + p.str() + " has infinite mass"), point(std::move(p)) {}
};

struct UnknownLabel : Error {
    Label label;
    explicit UnknownLabel(Label l)
        : Error("label " + l.str() + " does not belong to the instance"),
          label(std::move(l)) {}
};

struct NotBijectiveOnSupport : Error {
    Label a, b;  // either a non-injective pair, or a == b for an uncovered point
    NotBijectiveOnSupport(Label a_, Label b_)
        : Error("map is not bijective on the support: " + a_.str() + ", " + b_.str()),
          a(std::move(a_)), b(std::move(b_)) {}
};

struct NotNormal : Error {
    std::string detail;
    explicit NotNormal(std::string d)
        : Error("operator is not normal: " + d), detail(std::move(d)) {}
};

struct MalformedDecomposition : Error {
    explicit MalformedDecomposition(const std::string& why)
        : Error("malformed shift decomposition: " + why) {}
};

struct TemplateLacksInfiniteOrbits : Error {
    TemplateLacksInfiniteOrbits()
        : Error("an unbounded normal instance needs infinitely many infinite orbits") {}
};

struct RatiosNotDivergent : Error {
    explicit RatiosNotDivergent(const std::string& why)
        : Error("ratio family must diverge to 0 or infinity: " + why) {}
};

struct BadParameters : Error {
    explicit BadParameters(const std::string& why) : Error("bad parameters: " + why) {}
};

struct ParseError : Error {
    std::string location;
    ParseError(std::string loc, const std::string& why)
        : Error("parse error at " + loc + ": " + why), location(std::move(loc)) {}
};

struct ValidationError : Error {
    std::string field;
    ValidationError(std::string f, const std::string& why)
        : Error("invalid field '" + f + "': " + why), field(std::move(f)) {}
};

}  // namespace discop
