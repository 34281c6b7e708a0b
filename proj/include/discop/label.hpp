#pragma once

#include <compare>
#include <cstdint>
#include <string>
#include <variant>

namespace discop {

/// A point identifier. Finite instances use free-form string names; orbit
/// structured instances use (orbit id, index within orbit). Labels carry a
/// total order so witnesses and reports are deterministic.
class Label {
public:
    struct Pos {
        std::int64_t orbit;
        std::int64_t index;
        auto operator<=>(const Pos&) const = default;
    };

    Label() : v_(std::string()) {}
    static Label named(std::string name) { return Label(std::move(name)); }
    static Label at(std::int64_t orbit, std::int64_t index) {
        return Label(Pos{orbit, index});
    }

    bool is_named() const { return std::holds_alternative<std::string>(v_); }
    const std::string& name() const { return std::get<std::string>(v_); }
    const Pos& pos() const { return std::get<Pos>(v_); }

    bool operator==(const Label&) const = default;
    std::strong_ordering operator<=>(const Label& o) const {
        if (v_.index() != o.v_.index())
            return v_.index() <=> o.v_.index();
        if (is_named()) {
            int c = name().compare(o.name());
            return c <=> 0;
        }
        return pos() <=> o.pos();
    }

    /// "name" for named labels, "orbit:index" for structured ones.
    std::string str() const {
        if (is_named()) return name();
        return std::to_string(pos().orbit) + ":" + std::to_string(pos().index);
    }

private:
    explicit Label(std::string s) : v_(std::move(s)) {}
    explicit Label(Pos p) : v_(p) {}
    std::variant<std::string, Pos> v_;
};

}  // namespace discop
