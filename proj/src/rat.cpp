#include "discop/rat.hpp"

#include <stdexcept>

namespace discop {

namespace mp = boost::multiprecision;

std::optional<Rat> Rat::parse(std::string_view s) {
    if (s.empty()) return std::nullopt;
    auto parse_int = [](std::string_view t) -> std::optional<mp::cpp_int> {
        if (t.empty()) return std::nullopt;
        std::size_t i = 0;
        bool neg = false;
        if (t[0] == '-' || t[0] == '+') {
            neg = t[0] == '-';
            i = 1;
        }
        if (i == t.size()) return std::nullopt;
        mp::cpp_int v = 0;
        for (; i < t.size(); ++i) {
            if (t[i] < '0' || t[i] > '9') return std::nullopt;
            v = v * 10 + (t[i] - '0');
        }
        return neg ? -v : v;
    };
    auto slash = s.find('/');
    if (slash == std::string_view::npos) {
        auto n = parse_int(s);
        if (!n) return std::nullopt;
        return Rat(rep(*n));
    }
    auto num = parse_int(s.substr(0, slash));
    auto den = parse_int(s.substr(slash + 1));
    if (!num || !den || *den == 0) return std::nullopt;
    return Rat(rep(*num, *den));
}

Rat Rat::operator/(const Rat& o) const {
    if (o.v_ == 0) throw std::domain_error("Rat: division by zero");
    return Rat(v_ / o.v_);
}

Rat Rat::pow(std::int64_t e) const {
    if (e == 0) return Rat(1);
    if (v_ == 0) {
        if (e < 0) throw std::domain_error("Rat: zero to a negative power");
        return Rat(0);
    }
    bool invert = e < 0;
    std::uint64_t k = invert ? static_cast<std::uint64_t>(-(e + 1)) + 1
                             : static_cast<std::uint64_t>(e);
    rep base = v_;
    rep acc = 1;
    while (k > 0) {
        if (k & 1) acc *= base;
        base *= base;
        k >>= 1;
    }
    if (invert) acc = rep(1) / acc;
    return Rat(acc);
}

std::string Rat::str() const {
    if (is_integer()) return numerator(v_).str();
    return numerator(v_).str() + "/" + denominator(v_).str();
}

std::optional<ComplexRat> ComplexRat::parse(std::string_view s) {
    auto comma = s.find(',');
    if (comma == std::string_view::npos) {
        auto re = Rat::parse(s);
        if (!re) return std::nullopt;
        return ComplexRat(*re);
    }
    auto re = Rat::parse(s.substr(0, comma));
    auto im = Rat::parse(s.substr(comma + 1));
    if (!re || !im) return std::nullopt;
    return ComplexRat(*re, *im);
}

}  // namespace discop
