#include "discop/instance.hpp"

#include <algorithm>

namespace discop {

FiberInfo FiberInfo::finite(std::vector<Label> members) {
    FiberInfo f;
    std::vector<Label> sorted = members;
    std::sort(sorted.begin(), sorted.end());
    if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end())
        throw ValidationError("fiber", "duplicate labels in a finite fiber");
    f.members_ = std::move(members);
    return f;
}

FiniteInstance::FiniteInstance(std::vector<Label> points,
                               std::map<Label, Rat> mu,
                               std::map<Label, Label> phi)
    : points_(std::move(points)), mu_(std::move(mu)), phi_(std::move(phi)) {
    if (points_.empty()) throw ValidationError("points", "at least one point is required");
    std::vector<Label> sorted = points_;
    std::sort(sorted.begin(), sorted.end());
    if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end())
        throw ValidationError("points", "duplicate point");
    for (const Label& p : points_) {
        auto m = mu_.find(p);
        if (m == mu_.end()) throw ValidationError("mu", "missing weight for " + p.str());
        if (m->second.is_negative())
            throw ValidationError("mu", "negative weight at " + p.str());
        auto f = phi_.find(p);
        if (f == phi_.end()) throw ValidationError("phi", "missing image for " + p.str());
        if (!mu_.count(f->second))
            throw ValidationError("phi", "unknown point " + f->second.str());
    }
    if (mu_.size() != points_.size()) throw ValidationError("mu", "weight for unknown point");
    if (phi_.size() != points_.size()) throw ValidationError("phi", "image for unknown point");
}

const Rat& FiniteInstance::mu(const Label& x) const {
    auto it = mu_.find(x);
    if (it == mu_.end()) throw UnknownLabel(x);
    return it->second;
}

const Label& FiniteInstance::phi(const Label& x) const {
    auto it = phi_.find(x);
    if (it == phi_.end()) throw UnknownLabel(x);
    return it->second;
}

std::vector<Label> FiniteInstance::support() const {
    std::vector<Label> out;
    for (const Label& p : points_)
        if (mu_.at(p).is_positive()) out.push_back(p);
    return out;
}

std::vector<Label> FiniteInstance::fiber(const Label& x) const {
    if (!contains(x)) throw UnknownLabel(x);
    std::vector<Label> out;
    for (const Label& p : points_)
        if (phi_.at(p) == x) out.push_back(p);
    return out;
}

namespace {

void check_positive(const Rat& w, const char* what) {
    if (!w.is_positive()) throw ValidationError(what, "must be strictly positive");
}

}  // namespace

OrbitSpec::OrbitSpec(FixedPoint s) : v_(std::move(s)) {
    check_positive(as<FixedPoint>().weight, "weight");
}

OrbitSpec::OrbitSpec(Cycle s) : v_(std::move(s)) {
    const auto& ws = as<Cycle>().weights;
    if (ws.empty()) throw ValidationError("weights", "a cycle needs at least one weight");
    for (const Rat& w : ws) check_positive(w, "weights");
}

OrbitSpec::OrbitSpec(Line s) : v_(std::move(s)) {
    check_positive(as<Line>().base, "base");
    check_positive(as<Line>().ratio, "ratio");
}

OrbitSpec::OrbitSpec(RayLoop s) : v_(std::move(s)) {
    if (as<RayLoop>().ratio <= Rat(1))
        throw ValidationError("ratio", "a ray loop requires ratio > 1");
}

std::optional<std::int64_t> OrbitSpec::size() const {
    if (is<FixedPoint>()) return 1;
    if (is<Cycle>()) return static_cast<std::int64_t>(as<Cycle>().weights.size());
    return std::nullopt;
}

bool OrbitSpec::valid_index(std::int64_t k) const {
    return visit([&](const auto& s) -> bool {
        using T = std::decay_t<decltype(s)>;
        if constexpr (std::is_same_v<T, FixedPoint>) return k == 0;
        else if constexpr (std::is_same_v<T, Cycle>)
            return k >= 0 && k < static_cast<std::int64_t>(s.weights.size());
        else if constexpr (std::is_same_v<T, Line>) return true;
        else return k >= 0;
    });
}

Rat OrbitSpec::weight_at(std::int64_t k) const {
    return visit([&](const auto& s) -> Rat {
        using T = std::decay_t<decltype(s)>;
        if constexpr (std::is_same_v<T, FixedPoint>) return s.weight;
        else if constexpr (std::is_same_v<T, Cycle>) return s.weights[static_cast<std::size_t>(k)];
        else if constexpr (std::is_same_v<T, Line>) return s.base * s.ratio.pow(k);
        else {
            if (k == 0) return Rat(1);
            return (s.ratio - Rat(1)) * s.ratio.pow(k - 1);
        }
    });
}

std::int64_t OrbitSpec::image_of(std::int64_t k) const {
    return visit([&](const auto& s) -> std::int64_t {
        using T = std::decay_t<decltype(s)>;
        if constexpr (std::is_same_v<T, FixedPoint>) return 0;
        else if constexpr (std::is_same_v<T, Cycle>)
            return (k + 1) % static_cast<std::int64_t>(s.weights.size());
        else if constexpr (std::is_same_v<T, Line>) return k + 1;
        else return k == 0 ? 0 : k - 1;
    });
}

std::vector<std::int64_t> OrbitSpec::fiber_of(std::int64_t k) const {
    return visit([&](const auto& s) -> std::vector<std::int64_t> {
        using T = std::decay_t<decltype(s)>;
        if constexpr (std::is_same_v<T, FixedPoint>) return {0};
        else if constexpr (std::is_same_v<T, Cycle>) {
            auto n = static_cast<std::int64_t>(s.weights.size());
            return {(k - 1 + n) % n};
        } else if constexpr (std::is_same_v<T, Line>) {
            return {k - 1};
        } else {
            if (k == 0) return {0, 1};
            return {k + 1};
        }
    });
}

std::optional<std::int64_t> OrbitSpec::enum_index(std::int64_t r) const {
    return visit([&](const auto& s) -> std::optional<std::int64_t> {
        using T = std::decay_t<decltype(s)>;
        if constexpr (std::is_same_v<T, FixedPoint>) {
            if (r == 0) return 0;
            return std::nullopt;
        } else if constexpr (std::is_same_v<T, Cycle>) {
            if (r < static_cast<std::int64_t>(s.weights.size())) return r;
            return std::nullopt;
        } else if constexpr (std::is_same_v<T, Line>) {
            if (r == 0) return 0;
            if (r % 2 == 1) return (r + 1) / 2;
            return -(r / 2);
        } else {
            return r;
        }
    });
}

OrbitFamilyInstance::OrbitFamilyInstance(std::vector<OrbitSpec> orbits)
    : orbits_(std::move(orbits)) {}

OrbitFamilyInstance::OrbitFamilyInstance(LineFamilyRule rule)
    : rule_(std::make_shared<LineFamilyRule>(std::move(rule))) {}

std::optional<std::int64_t> OrbitFamilyInstance::orbit_count() const {
    if (rule_) return std::nullopt;
    return static_cast<std::int64_t>(orbits_.size());
}

OrbitSpec OrbitFamilyInstance::orbit(std::int64_t i) const {
    if (rule_) {
        if (i < 0) throw UnknownLabel(Label::at(i, 0));
        return rule_->orbit(i);
    }
    if (i < 0 || i >= static_cast<std::int64_t>(orbits_.size()))
        throw UnknownLabel(Label::at(i, 0));
    return orbits_[static_cast<std::size_t>(i)];
}

bool OrbitFamilyInstance::contains(const Label& x) const {
    if (x.is_named()) return false;
    auto [i, k] = x.pos();
    if (rule_) return i >= 0 && rule_->orbit(i).valid_index(k);
    if (i < 0 || i >= static_cast<std::int64_t>(orbits_.size())) return false;
    return orbits_[static_cast<std::size_t>(i)].valid_index(k);
}

Rat OrbitFamilyInstance::weight(const Label& x) const {
    if (!contains(x)) throw UnknownLabel(x);
    return orbit(x.pos().orbit).weight_at(x.pos().index);
}

Label OrbitFamilyInstance::image(const Label& x) const {
    if (!contains(x)) throw UnknownLabel(x);
    return Label::at(x.pos().orbit, orbit(x.pos().orbit).image_of(x.pos().index));
}

FiberInfo OrbitFamilyInstance::fiber(const Label& x) const {
    if (!contains(x)) throw UnknownLabel(x);
    std::vector<Label> members;
    for (std::int64_t k : orbit(x.pos().orbit).fiber_of(x.pos().index))
        members.push_back(Label::at(x.pos().orbit, k));
    return FiberInfo::finite(std::move(members));
}

bool OrbitFamilyInstance::finitely_many_points() const {
    if (rule_) return false;
    for (const OrbitSpec& o : orbits_)
        if (o.infinite()) return false;
    return true;
}

std::vector<Label> OrbitFamilyInstance::enumerate(std::int64_t n) const {
    std::vector<Label> out;
    if (n <= 0) return out;
    if (rule_) {
        // Anti-diagonals of (orbit, position) so every point appears.
        for (std::int64_t t = 0; static_cast<std::int64_t>(out.size()) < n; ++t) {
            for (std::int64_t i = 0; i <= t && static_cast<std::int64_t>(out.size()) < n; ++i) {
                auto idx = rule_->orbit(i).enum_index(t - i);
                if (idx) out.push_back(Label::at(i, *idx));
            }
        }
        return out;
    }
    if (orbits_.empty()) return out;
    bool any_infinite = !finitely_many_points();
    for (std::int64_t r = 0;; ++r) {
        bool emitted = false;
        for (std::int64_t i = 0; i < static_cast<std::int64_t>(orbits_.size()); ++i) {
            auto idx = orbits_[static_cast<std::size_t>(i)].enum_index(r);
            if (!idx) continue;
            emitted = true;
            out.push_back(Label::at(i, *idx));
            if (static_cast<std::int64_t>(out.size()) == n) return out;
        }
        if (!emitted && !any_infinite) return out;  // finite family exhausted
    }
}

bool OrbitFamilyInstance::operator==(const OrbitFamilyInstance& o) const {
    if (has_rule() != o.has_rule()) return false;
    if (has_rule()) return rule_->name == o.rule_->name && rule_->note == o.rule_->note;
    return orbits_ == o.orbits_;
}

Rat Instance::weight(const Label& x) const {
    if (is_finite()) return finite().mu(x);
    if (is_family()) return family().weight(x);
    return lazy().weight(x);
}

Label Instance::image(const Label& x) const {
    if (is_finite()) return finite().phi(x);
    if (is_family()) return family().image(x);
    return lazy().image(x);
}

FiberInfo Instance::fiber(const Label& x) const {
    if (is_finite()) return FiberInfo::finite(finite().fiber(x));
    if (is_family()) return family().fiber(x);
    return lazy().fiber(x);
}

std::vector<Label> Instance::enumerate(std::int64_t n) const {
    if (is_finite()) {
        const auto& pts = finite().points();
        auto take = std::min<std::int64_t>(n, static_cast<std::int64_t>(pts.size()));
        return {pts.begin(), pts.begin() + take};
    }
    if (is_family()) return family().enumerate(n);
    return lazy().enumerate(n);
}

bool Instance::needs_window() const {
    if (is_finite()) return false;
    if (is_family()) return !family().finitely_many_points();
    return true;
}

}  // namespace discop
