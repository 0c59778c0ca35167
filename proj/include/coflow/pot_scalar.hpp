#pragma once

#include "coflow/affine.hpp"
#include "coflow/field.hpp"

#include <map>
#include <string>

namespace coflow {

/// Scalar of the potential ansatz with undetermined exponents: a finite sum
/// of monomials  coeff * (1+kt)^E  where E is affine in the unknown frame
/// exponents and k stays symbolic.  Closed under +, -, *; that is all the
/// structure-equation and torsion algebra needs.
class PotScalar {
public:
    PotScalar() = default;
    PotScalar(const FieldElem& c) { insert(c, AffineExp()); }  // NOLINT: implicit by design
    PotScalar(long c) : PotScalar(FieldElem(c)) {}             // NOLINT

    static PotScalar power(const AffineExp& exponent, const FieldElem& coeff = FieldElem(1)) {
        PotScalar s;
        s.insert(coeff, exponent);
        return s;
    }

    bool is_zero() const { return terms_.empty(); }
    const std::map<AffineExp, FieldElem>& terms() const { return terms_; }

    friend bool operator==(const PotScalar& x, const PotScalar& y) {
        return x.terms_ == y.terms_;
    }
    friend bool operator!=(const PotScalar& x, const PotScalar& y) { return !(x == y); }

    PotScalar operator-() const {
        PotScalar out = *this;
        for (auto& [e, c] : out.terms_) c = -c;
        return out;
    }
    friend PotScalar operator+(const PotScalar& x, const PotScalar& y) {
        PotScalar out = x;
        for (const auto& [e, c] : y.terms_) out.insert(c, e);
        return out;
    }
    friend PotScalar operator-(const PotScalar& x, const PotScalar& y) { return x + (-y); }
    friend PotScalar operator*(const PotScalar& x, const PotScalar& y) {
        PotScalar out;
        for (const auto& [ex, cx] : x.terms_)
            for (const auto& [ey, cy] : y.terms_) out.insert(cx * cy, ex + ey);
        return out;
    }
    PotScalar& operator+=(const PotScalar& y) { return *this = *this + y; }
    PotScalar& operator-=(const PotScalar& y) { return *this = *this - y; }

    std::string to_string() const {
        if (terms_.empty()) return "0";
        std::string out;
        for (const auto& [e, c] : terms_) {
            if (!out.empty()) out += " + ";
            out += c.to_string();
            if (!(e == AffineExp())) out += "*(1+k*t)^(" + e.to_string() + ")";
        }
        return out;
    }

private:
    void insert(const FieldElem& coeff, const AffineExp& exponent) {
        auto [it, fresh] = terms_.emplace(exponent, coeff);
        if (!fresh) it->second += coeff;
        if (it->second.is_zero()) terms_.erase(it);
    }

    std::map<AffineExp, FieldElem> terms_;
};

}  // namespace coflow
