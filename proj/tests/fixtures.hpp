#pragma once

#include <map>
#include <string>
#include <vector>

#include "discop/instance.hpp"

namespace fixtures {

using namespace discop;

inline Label L(const std::string& s) { return Label::named(s); }

inline FiniteInstance finite(std::vector<std::string> names,
                             std::vector<long long> weights,
                             std::vector<std::string> images) {
    std::vector<Label> points;
    std::map<Label, Rat> mu;
    std::map<Label, Label> phi;
    for (std::size_t i = 0; i < names.size(); ++i) {
        Label p = L(names[i]);
        points.push_back(p);
        mu[p] = Rat(weights[i]);
        phi[p] = L(images[i]);
    }
    return FiniteInstance(std::move(points), std::move(mu), std::move(phi));
}

inline FiniteInstance identity3() {
    return finite({"a", "b", "c"}, {1, 1, 1}, {"a", "b", "c"});
}

/// Composition with this map collapses everything onto c.
inline FiniteInstance collapse3() {
    return finite({"a", "b", "c"}, {1, 1, 1}, {"c", "c", "c"});
}

/// a and b swapped, c fixed; the smallest non-trivial involution.
inline FiniteInstance swap_ab(long long wa = 1, long long wb = 1, long long wc = 1) {
    return finite({"a", "b", "c"}, {wa, wb, wc}, {"b", "a", "c"});
}

inline FiniteInstance cycle3(long long w0, long long w1, long long w2) {
    return finite({"x0", "x1", "x2"}, {w0, w1, w2}, {"x1", "x2", "x0"});
}

/// b is null but receives the mass of a: not nonsingular.
inline FiniteInstance null_receiver() {
    return finite({"a", "b"}, {1, 0}, {"b", "b"});
}

inline Instance line(long long base_num, long long base_den, long long ratio_num,
                     long long ratio_den) {
    return Instance(OrbitFamilyInstance(
        {OrbitSpec::line(Rat(base_num, base_den), Rat(ratio_num, ratio_den))}));
}

inline Instance ray_loop(long long num, long long den = 1) {
    return Instance(OrbitFamilyInstance({OrbitSpec::ray_loop(Rat(num, den))}));
}

/// The line with ratio 1/2 behind a black-box interface, to exercise the
/// windowed code paths.
inline Instance lazy_line_half() {
    OrbitFamilyInstance fam({OrbitSpec::line(Rat(1), Rat(1, 2))});
    LazyInstance lazy;
    lazy.weight = [fam](const Label& x) { return fam.contains(x) ? fam.weight(x) : Rat(0); };
    lazy.image = [fam](const Label& x) { return fam.image(x); };
    lazy.fiber = [fam](const Label& x) { return fam.fiber(x); };
    lazy.enumerate = [fam](std::int64_t n) { return fam.enumerate(n); };
    return Instance(std::move(lazy));
}

/// A black-box point whose fiber carries infinite mass: never densely
/// defined.
inline Instance lazy_infinite_fiber() {
    LazyInstance lazy;
    Label w = L("w");
    lazy.weight = [w](const Label& x) { return x == w ? Rat(1) : Rat(0); };
    lazy.image = [w](const Label&) { return w; };
    lazy.fiber = [](const Label&) { return FiberInfo::infinite_mass(); };
    lazy.enumerate = [w](std::int64_t n) {
        return n > 0 ? std::vector<Label>{w} : std::vector<Label>{};
    };
    return Instance(std::move(lazy));
}

}  // namespace fixtures
