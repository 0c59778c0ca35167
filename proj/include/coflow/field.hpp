#pragma once

#include "coflow/rational.hpp"

#include <array>
#include <cmath>
#include <string>

namespace coflow {

/// Element of the real field Q(r2, r3), stored on the basis {1, r2, r3, r6}
/// where r2 = sqrt(2), r3 = sqrt(3), r6 = sqrt(6).  The representation is
/// canonical, so equality and zero-testing are coordinatewise.
class FieldElem {
public:
    FieldElem() = default;
    FieldElem(const Rational& rational) : a_(rational) {}  // NOLINT: implicit by design
    FieldElem(long n) : a_(n) {}                           // NOLINT
    FieldElem(const Rational& a, const Rational& b, const Rational& c, const Rational& d)
        : a_(a), b_(b), c_(c), d_(d) {}

    static FieldElem sqrt2() { return {0, 1, 0, 0}; }
    static FieldElem sqrt3() { return {0, 0, 1, 0}; }
    static FieldElem sqrt6() { return {0, 0, 0, 1}; }

    const Rational& rat_part() const { return a_; }
    const Rational& r2_part() const { return b_; }
    const Rational& r3_part() const { return c_; }
    const Rational& r6_part() const { return d_; }

    bool is_zero() const { return a_ == 0 && b_ == 0 && c_ == 0 && d_ == 0; }
    bool is_rational() const { return b_ == 0 && c_ == 0 && d_ == 0; }

    /// The rational value of a purely rational element.
    Rational as_rational() const {
        if (!is_rational()) throw ScalarError("field element is irrational: " + to_string());
        return a_;
    }

    friend bool operator==(const FieldElem& x, const FieldElem& y) {
        return x.a_ == y.a_ && x.b_ == y.b_ && x.c_ == y.c_ && x.d_ == y.d_;
    }
    friend bool operator!=(const FieldElem& x, const FieldElem& y) { return !(x == y); }

    FieldElem operator-() const { return {-a_, -b_, -c_, -d_}; }

    friend FieldElem operator+(const FieldElem& x, const FieldElem& y) {
        return {x.a_ + y.a_, x.b_ + y.b_, x.c_ + y.c_, x.d_ + y.d_};
    }
    friend FieldElem operator-(const FieldElem& x, const FieldElem& y) {
        return {x.a_ - y.a_, x.b_ - y.b_, x.c_ - y.c_, x.d_ - y.d_};
    }

    // Basis products: r2*r3 = r6, r2*r6 = 2*r3, r3*r6 = 3*r2.
    friend FieldElem operator*(const FieldElem& x, const FieldElem& y) {
        return {x.a_ * y.a_ + 2 * x.b_ * y.b_ + 3 * x.c_ * y.c_ + 6 * x.d_ * y.d_,
                x.a_ * y.b_ + x.b_ * y.a_ + 3 * (x.c_ * y.d_ + x.d_ * y.c_),
                x.a_ * y.c_ + x.c_ * y.a_ + 2 * (x.b_ * y.d_ + x.d_ * y.b_),
                x.a_ * y.d_ + x.d_ * y.a_ + x.b_ * y.c_ + x.c_ * y.b_};
    }

    /// Exact inverse by rationalizing with the three Galois conjugates.
    FieldElem inverse() const {
        if (is_zero()) throw ScalarError("division by zero in Q(r2,r3)");
        const FieldElem c2 = conj_r2();
        const FieldElem c3 = conj_r3();
        const FieldElem c23 = conj_r2().conj_r3();
        const FieldElem num = c2 * c3 * c23;
        const FieldElem norm = (*this) * num;
        // The product over all conjugates is Galois-invariant, hence rational.
        if (!norm.is_rational()) throw ScalarError("field norm failed to rationalize");
        const Rational n = norm.a_;
        return {num.a_ / n, num.b_ / n, num.c_ / n, num.d_ / n};
    }

    friend FieldElem operator/(const FieldElem& x, const FieldElem& y) { return x * y.inverse(); }

    FieldElem& operator+=(const FieldElem& y) { return *this = *this + y; }
    FieldElem& operator-=(const FieldElem& y) { return *this = *this - y; }
    FieldElem& operator*=(const FieldElem& y) { return *this = *this * y; }

    FieldElem conj_r2() const { return {a_, -b_, c_, -d_}; }  // r2 -> -r2
    FieldElem conj_r3() const { return {a_, b_, -c_, -d_}; }  // r3 -> -r3

    double eval() const {
        static const double s2 = std::sqrt(2.0), s3 = std::sqrt(3.0), s6 = std::sqrt(6.0);
        return coflow::to_double(a_) + coflow::to_double(b_) * s2 + coflow::to_double(c_) * s3 +
               coflow::to_double(d_) * s6;
    }

    /// "3/2", "r2", "2r2", "(2r2-2)", "(1/2+r6)"; the empty sum renders as "0".
    std::string to_string() const {
        if (is_zero()) return "0";
        std::string out;
        int parts = 0;
        auto append = [&](const Rational& coeff, const char* radical) {
            if (coeff == 0) return;
            std::string piece;
            if (coeff < 0) piece += "-";
            else if (parts > 0) piece += "+";
            Rational mag = coeff < 0 ? Rational(-coeff) : coeff;
            if (mag != 1 || radical[0] == '\0') piece += coflow::to_string(mag);
            piece += radical;
            out += piece;
            ++parts;
        };
        append(a_, "");
        append(b_, "r2");
        append(c_, "r3");
        append(d_, "r6");
        if (parts > 1) return "(" + out + ")";
        return out;
    }

private:
    Rational a_, b_, c_, d_;  // a + b*r2 + c*r3 + d*r6
};

enum class FieldOp { add, sub, mul, div };

inline FieldElem field_arith(const FieldElem& x, const FieldElem& y, FieldOp op) {
    switch (op) {
        case FieldOp::add: return x + y;
        case FieldOp::sub: return x - y;
        case FieldOp::mul: return x * y;
        case FieldOp::div: return x / y;
    }
    throw ScalarError("unknown field operation");
}

}  // namespace coflow
