#include "discop/decompose.hpp"

#include <algorithm>
#include <map>
#include <set>

namespace discop {

std::vector<Label> ShiftDecomposition::anchors() const {
    std::vector<Label> out;
    out.reserve(blocks.size());
    for (const ShiftBlock& b : blocks) out.push_back(b.anchor);
    return out;
}

namespace {

/// Throws unless the support map is a bijection of the given point set
/// (images inside, no collisions, full coverage). `covered` may be checked
/// through declared fibers instead, so it is optional here.
void require_bijective(const std::vector<Label>& sup,
                       const std::function<Label(const Label&)>& image,
                       const std::set<Label>& supset) {
    for (const Label& x : sup)
        if (!supset.count(image(x))) throw NotBijectiveOnSupport(x, x);
    std::map<Label, Label> first_preimage;
    for (const Label& x : sup) {
        auto [it, inserted] = first_preimage.emplace(image(x), x);
        if (!inserted) throw NotBijectiveOnSupport(it->second, x);
    }
    for (const Label& x : sup)
        if (!first_preimage.count(x)) throw NotBijectiveOnSupport(x, x);
}

std::vector<OrbitRecord> orbits_finite(const FiniteInstance& fi) {
    std::vector<Label> sup = fi.support();
    std::set<Label> supset(sup.begin(), sup.end());
    require_bijective(sup, [&](const Label& x) -> Label { return fi.phi(x); }, supset);

    // Iterating the support in point order means the first unvisited member
    // of each cycle is its least one, hence the anchor.
    std::vector<OrbitRecord> out;
    std::set<Label> visited;
    for (const Label& x : sup) {
        if (visited.count(x)) continue;
        OrbitRecord rec;
        rec.anchor = x;
        Label cur = x;
        do {
            visited.insert(cur);
            rec.members.push_back(cur);
            cur = fi.phi(cur);
        } while (!(cur == x));
        rec.kind = rec.members.size() == 1 ? OrbitRecord::Kind::FixedPoint
                                           : OrbitRecord::Kind::Cycle;
        out.push_back(std::move(rec));
    }
    return out;
}

/// Window-prefix of a line orbit's own enumeration (0, 1, -1, 2, -2, ...),
/// which is always a contiguous index range, returned in map order.
std::vector<std::int64_t> line_window_indices(std::int64_t window) {
    std::int64_t lo = -((window - 1) / 2);
    std::int64_t hi = window / 2;
    std::vector<std::int64_t> out;
    for (std::int64_t k = lo; k <= hi; ++k) out.push_back(k);
    return out;
}

OrbitRecord line_record(std::int64_t orbit, const OrbitSpec::Line& line,
                        std::int64_t window) {
    OrbitRecord rec;
    rec.anchor = Label::at(orbit, 0);
    rec.kind = OrbitRecord::Kind::InfiniteLine;
    for (std::int64_t k : line_window_indices(window))
        rec.members.push_back(Label::at(orbit, k));
    rec.ratio = line.ratio;
    return rec;
}

std::vector<OrbitRecord> orbits_family(const OrbitFamilyInstance& fam, Window window) {
    std::vector<OrbitRecord> out;
    if (fam.has_rule()) {
        if (!window) throw MissingWindow();
        for (std::int64_t i = 0; i < *window; ++i)
            out.push_back(line_record(i, fam.orbit(i).as<OrbitSpec::Line>(), *window));
        return out;
    }
    const auto& orbits = fam.orbit_list();
    for (std::int64_t i = 0; i < static_cast<std::int64_t>(orbits.size()); ++i) {
        const OrbitSpec& o = orbits[static_cast<std::size_t>(i)];
        if (o.is<OrbitSpec::RayLoop>())
            throw NotBijectiveOnSupport(Label::at(i, 0), Label::at(i, 1));
        OrbitRecord rec;
        if (o.is<OrbitSpec::Line>()) {
            if (!window) throw MissingWindow();
            rec = line_record(i, o.as<OrbitSpec::Line>(), *window);
        } else {
            rec.anchor = Label::at(i, 0);
            std::int64_t n = *o.size();
            for (std::int64_t k = 0; k < n; ++k) rec.members.push_back(Label::at(i, k));
            rec.kind = n == 1 ? OrbitRecord::Kind::FixedPoint : OrbitRecord::Kind::Cycle;
        }
        out.push_back(std::move(rec));
    }
    return out;
}

std::vector<OrbitRecord> orbits_lazy(const Instance& inst, Window window) {
    if (!window) throw MissingWindow();
    std::vector<Label> sup = support(inst, window);
    std::set<Label> supset(sup.begin(), sup.end());
    for (const Label& x : sup)
        if (!inst.weight(inst.image(x)).is_positive()) throw NotBijectiveOnSupport(x, x);
    std::map<Label, Label> pred;
    for (const Label& x : sup) {
        Label y = inst.image(x);
        auto [it, inserted] = pred.emplace(y, x);
        if (!inserted) throw NotBijectiveOnSupport(it->second, x);
    }
    for (const Label& x : sup) {
        // Coverage through the declared fiber is exact even under a window.
        FiberInfo fi = inst.fiber(x);
        bool covered = !fi.is_finite();
        if (fi.is_finite())
            for (const Label& z : fi.members())
                if (inst.weight(z).is_positive()) { covered = true; break; }
        if (!covered) throw NotBijectiveOnSupport(x, x);
    }

    // Chains inside the window are paths or cycles. The first unvisited
    // point in enumeration order is the least member of its chain.
    std::vector<OrbitRecord> out;
    std::set<Label> visited;
    for (const Label& x : sup) {
        if (visited.count(x)) continue;
        // Walk backward to the start of the chain, watching for a cycle.
        bool cycle = false;
        Label start = x;
        while (true) {
            auto it = pred.find(start);
            if (it == pred.end() || !supset.count(it->second)) break;
            if (it->second == x) { cycle = true; break; }
            start = it->second;
        }
        OrbitRecord rec;
        rec.anchor = x;
        Label cur = cycle ? x : start;
        while (true) {
            visited.insert(cur);
            rec.members.push_back(cur);
            Label nxt = inst.image(cur);
            if (!supset.count(nxt) || nxt == (cycle ? x : start)) break;
            cur = nxt;
        }
        if (cycle) {
            rec.kind = rec.members.size() == 1 ? OrbitRecord::Kind::FixedPoint
                                               : OrbitRecord::Kind::Cycle;
        } else {
            rec.kind = OrbitRecord::Kind::InfiniteLine;
            if (rec.members.size() >= 2)
                rec.ratio = inst.weight(rec.members[1]) / inst.weight(rec.members[0]);
        }
        out.push_back(std::move(rec));
    }
    return out;
}

Rat gamma_at(const ShiftBlock& b, std::int64_t j) {
    if (const auto* c = std::get_if<ConstantGamma>(&b.gamma)) return c->value;
    const auto& g = std::get<GeometricGamma>(b.gamma);
    return g.base * g.ratio.pow(j - 1);
}

std::string witness_detail(const Witness& w) {
    std::string s = w.condition + " at ";
    for (std::size_t i = 0; i < w.points.size(); ++i) {
        if (i) s += ", ";
        s += w.points[i].str();
    }
    s += ": " + w.lhs + " vs " + w.rhs;
    return s;
}

}  // namespace

std::vector<OrbitRecord> orbits(const Instance& inst, Window window) {
    if (inst.is_finite()) return orbits_finite(inst.finite());
    if (inst.is_family()) return orbits_family(inst.family(), window);
    return orbits_lazy(inst, window);
}

ShiftDecomposition shift_decomposition(const Instance& inst, Window window) {
    Verdict normal = classify_normal(inst, window);
    if (normal.is_fails()) throw NotNormal(witness_detail(normal.witness()));
    ShiftDecomposition dec;
    if (normal.is_window()) dec.window = normal.window();
    for (const OrbitRecord& rec : orbits(inst, window)) {
        ShiftBlock b;
        b.anchor = rec.anchor;
        if (rec.kind == OrbitRecord::Kind::InfiniteLine) {
            b.gamma = GeometricGamma{inst.weight(rec.anchor), rec.ratio};
        } else {
            b.gamma = ConstantGamma{inst.weight(rec.anchor),
                                    static_cast<std::int64_t>(rec.members.size())};
        }
        // Member phi^k(anchor) pairs with shift index k+1.
        auto n = static_cast<std::int64_t>(rec.members.size());
        std::int64_t anchor_pos = 0;
        for (std::int64_t t = 0; t < n; ++t)
            if (rec.members[static_cast<std::size_t>(t)] == rec.anchor) { anchor_pos = t; break; }
        for (std::int64_t t = 0; t < n; ++t) {
            std::int64_t k = t - anchor_pos;
            std::int64_t idx = rec.kind == OrbitRecord::Kind::InfiniteLine
                                   ? k + 1
                                   : (k + 1 + n) % n;
            b.relabeling.emplace_back(rec.members[static_cast<std::size_t>(t)], idx);
        }
        dec.blocks.push_back(std::move(b));
    }
    return dec;
}

OrbitFamilyInstance rebuild_from_decomposition(const ShiftDecomposition& dec) {
    std::set<Label> seen;
    std::vector<OrbitSpec> specs;
    for (const ShiftBlock& b : dec.blocks) {
        if (!seen.insert(b.anchor).second)
            throw MalformedDecomposition("duplicate anchor " + b.anchor.str());
        if (const auto* c = std::get_if<ConstantGamma>(&b.gamma)) {
            if (!c->value.is_positive())
                throw MalformedDecomposition("block weight must be positive");
            if (c->length < 1) throw MalformedDecomposition("block length must be positive");
            if (c->length == 1) {
                specs.push_back(OrbitSpec::fixed_point(c->value));
            } else {
                specs.push_back(
                    OrbitSpec::cycle(std::vector<Rat>(static_cast<std::size_t>(c->length),
                                                      c->value)));
            }
        } else {
            const auto& g = std::get<GeometricGamma>(b.gamma);
            if (!g.base.is_positive() || !g.ratio.is_positive())
                throw MalformedDecomposition("geometric block needs positive base and ratio");
            specs.push_back(OrbitSpec::line(g.base, g.ratio));
        }
    }
    return OrbitFamilyInstance(std::move(specs));
}

Verdict verify_unitary_equivalence(const Instance& inst, const ShiftDecomposition& dec,
                                   Window window) {
    (void)window;  // the decomposition already records its window
    for (const ShiftBlock& b : dec.blocks) {
        std::map<std::int64_t, Label> by_index;
        for (const auto& [y, j] : b.relabeling)
            if (!by_index.emplace(j, y).second)
                return Verdict::fails(Witness{"shift_intertwining",
                                              {y},
                                              "index " + std::to_string(j) + " reused",
                                              "a bijective relabeling",
                                              std::nullopt});
        const auto* c = std::get_if<ConstantGamma>(&b.gamma);
        for (const auto& [y, j] : b.relabeling) {
            Rat expected = gamma_at(b, j);
            if (!(inst.weight(y) == expected))
                return Verdict::fails(Witness{"shift_block_weights",
                                              {y},
                                              inst.weight(y).str(),
                                              expected.str(),
                                              std::nullopt});
            // The operator sends the basis vector at shift index j to the
            // one at j-1 (cyclically for finite blocks).
            std::int64_t target = c ? (j - 1 + c->length) % c->length : j - 1;
            auto it = by_index.find(target);
            if (it == by_index.end()) continue;  // shifted off the window
            FinSuppFn got = apply_c(inst, FinSuppFn::basis(y));
            FinSuppFn want = FinSuppFn::basis(it->second);
            if (!(got == want))
                return Verdict::fails(Witness{
                    "shift_intertwining", {y}, got.str(), want.str(), std::nullopt});
        }
    }
    return dec.window ? Verdict::on_window(*dec.window) : Verdict::holds();
}

OrbitFamilyInstance construct_unbounded_normal_measure(const LineSkeletonTemplate& tmpl) {
    if (tmpl.orbit_count) throw TemplateLacksInfiniteOrbits();
    LineFamilyRule rule;
    rule.name = "unbounded_normal";
    rule.note = "orbit i carries geometric weights with base 1 and ratio 1/(i+1)";
    rule.orbit = [](std::int64_t i) { return OrbitSpec::line(Rat(1), Rat(1, i + 1)); };
    rule.h_unbounded = true;
    return OrbitFamilyInstance(std::move(rule));
}

OrbitFamilyInstance construct_map_for_measure(const GeometricRatioSchedule& schedule) {
    if (schedule.count)
        throw RatiosNotDivergent("finitely many sequences cannot reach an unbounded sup");
    std::vector<Rat> probe;
    for (std::int64_t i = 0; i < 8; ++i) {
        Rat q = schedule.ratio(i);
        if (!q.is_positive()) throw BadParameters("ratios must be positive");
        probe.push_back(std::move(q));
    }
    bool decreasing = true, increasing = true;
    for (std::size_t i = 0; i + 1 < probe.size(); ++i) {
        if (!(probe[i + 1] < probe[i])) decreasing = false;
        if (!(probe[i] < probe[i + 1])) increasing = false;
    }
    if (!decreasing && !increasing)
        throw RatiosNotDivergent("declared ratios are not strictly monotone");
    bool flip = increasing;  // the derivative sup of a line is 1/ratio
    LineFamilyRule rule;
    rule.name = "geometric_ratios";
    rule.note = flip ? "orientation flipped: orbit i uses ratio 1/q(i)"
                     : "orbit i uses the declared ratio q(i)";
    auto ratio = schedule.ratio;
    rule.orbit = [ratio, flip](std::int64_t i) {
        Rat q = ratio(i);
        return OrbitSpec::line(Rat(1), flip ? Rat(1) / q : q);
    };
    rule.h_unbounded = true;
    return OrbitFamilyInstance(std::move(rule));
}

}  // namespace discop
