#pragma once

#include <map>
#include <string>

#include "discop/label.hpp"
#include "discop/rat.hpp"

namespace discop {

/// A finitely supported complex-valued function on the point set. Zero
/// values are never stored, so the key set is exactly the support.
class FinSuppFn {
public:
    FinSuppFn() = default;

    static FinSuppFn zero() { return {}; }
    static FinSuppFn basis(const Label& x, ComplexRat coeff = ComplexRat(Rat(1))) {
        FinSuppFn f;
        f.add(x, std::move(coeff));
        return f;
    }

    bool is_zero() const { return entries_.empty(); }
    const std::map<Label, ComplexRat>& entries() const { return entries_; }
    ComplexRat at(const Label& x) const {
        auto it = entries_.find(x);
        return it == entries_.end() ? ComplexRat() : it->second;
    }

    /// Accumulates coeff at x, dropping the entry if the sum cancels.
    void add(const Label& x, ComplexRat coeff) {
        if (coeff.is_zero()) return;
        auto [it, inserted] = entries_.emplace(x, coeff);
        if (!inserted) {
            it->second = it->second + coeff;
            if (it->second.is_zero()) entries_.erase(it);
        }
    }

    FinSuppFn operator+(const FinSuppFn& o) const {
        FinSuppFn out = *this;
        for (const auto& [x, v] : o.entries_) out.add(x, v);
        return out;
    }

    FinSuppFn scaled(const ComplexRat& c) const {
        FinSuppFn out;
        for (const auto& [x, v] : entries_) out.add(x, c * v);
        return out;
    }

    FinSuppFn conj() const {
        FinSuppFn out;
        for (const auto& [x, v] : entries_) out.add(x, v.conj());
        return out;
    }

    bool operator==(const FinSuppFn&) const = default;

    /// Deterministic rendering "x -> re,im; y -> re,im", "0" when empty.
    std::string str() const {
        if (entries_.empty()) return "0";
        std::string out;
        for (const auto& [x, v] : entries_) {
            if (!out.empty()) out += "; ";
            out += x.str() + " -> " + v.str();
        }
        return out;
    }

private:
    std::map<Label, ComplexRat> entries_;
};

}  // namespace discop
