#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <compare>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>

namespace discop {

/// Exact rational number with arbitrary-precision numerator/denominator.
/// Always kept in lowest terms; the denominator is never zero.
class Rat {
public:
    using rep = boost::multiprecision::cpp_rational;

    Rat() : v_(0) {}
    Rat(long long n) : v_(n) {}
    Rat(long long num, long long den) : v_(rep(num, den)) {}
    explicit Rat(rep v) : v_(std::move(v)) {}

    /// Parses "n", "-n" or "p/q". Returns nullopt on malformed input or zero
    /// denominator.
    static std::optional<Rat> parse(std::string_view s);

    bool is_zero() const { return v_ == 0; }
    bool is_negative() const { return v_ < 0; }
    bool is_positive() const { return v_ > 0; }
    bool is_integer() const { return denominator(v_) == 1; }

    Rat operator+(const Rat& o) const { return Rat(v_ + o.v_); }
    Rat operator-(const Rat& o) const { return Rat(v_ - o.v_); }
    Rat operator-() const { return Rat(-v_); }
    Rat operator*(const Rat& o) const { return Rat(v_ * o.v_); }
    /// Division by zero is a programming error (callers guard with is_zero).
    Rat operator/(const Rat& o) const;
    Rat& operator+=(const Rat& o) { v_ += o.v_; return *this; }
    Rat& operator-=(const Rat& o) { v_ -= o.v_; return *this; }
    Rat& operator*=(const Rat& o) { v_ *= o.v_; return *this; }

    bool operator==(const Rat& o) const { return v_ == o.v_; }
    std::strong_ordering operator<=>(const Rat& o) const {
        if (v_ < o.v_) return std::strong_ordering::less;
        if (v_ > o.v_) return std::strong_ordering::greater;
        return std::strong_ordering::equal;
    }

    /// Integer power; negative exponents require a nonzero base.
    Rat pow(std::int64_t e) const;

    /// Renders as "n" for integers, "p/q" otherwise, in lowest terms.
    std::string str() const;

    const rep& raw() const { return v_; }

private:
    rep v_;
};

/// Complex number with exact rational real and imaginary parts.
struct ComplexRat {
    Rat re;
    Rat im;

    ComplexRat() = default;
    ComplexRat(Rat r) : re(std::move(r)) {}
    ComplexRat(Rat r, Rat i) : re(std::move(r)), im(std::move(i)) {}
    ComplexRat(long long r) : re(r) {}

    bool is_zero() const { return re.is_zero() && im.is_zero(); }

    ComplexRat operator+(const ComplexRat& o) const { return {re + o.re, im + o.im}; }
    ComplexRat operator-(const ComplexRat& o) const { return {re - o.re, im - o.im}; }
    ComplexRat operator*(const ComplexRat& o) const {
        return {re * o.re - im * o.im, re * o.im + im * o.re};
    }
    ComplexRat conj() const { return {re, -im}; }
    /// |z|^2, an exact rational.
    Rat abs_sq() const { return re * re + im * im; }

    bool operator==(const ComplexRat& o) const = default;

    /// Renders as "re,im" (exact rational strings).
    std::string str() const { return re.str() + "," + im.str(); }

    /// Parses the "re,im" form; a bare rational is taken as purely real.
    static std::optional<ComplexRat> parse(std::string_view s);
};

inline ComplexRat operator*(const Rat& a, const ComplexRat& z) {
    return {a * z.re, a * z.im};
}

/// A measure value: either an exact finite rational or declared infinite
/// mass. Infinite mass is an ordinary value, not an error; it is how a
/// divergent preimage mass is reported.
class Mass {
public:
    Mass() : v_(Rat(0)) {}
    Mass(Rat v) : v_(std::move(v)) {}
    static Mass infinite() { Mass m; m.v_.reset(); return m; }

    bool is_finite() const { return v_.has_value(); }
    bool is_infinite() const { return !v_.has_value(); }
    /// Only valid when finite.
    const Rat& value() const { return *v_; }

    bool operator==(const Mass& o) const = default;

    std::string str() const { return v_ ? v_->str() : std::string("inf"); }

private:
    std::optional<Rat> v_;
};

}  // namespace discop
