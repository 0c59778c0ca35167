#pragma once

#include "coflow/rational.hpp"

#include <array>
#include <string>

namespace coflow {

/// Affine form  lin . vars + cst  over at most three rational unknowns
/// (the independent frame exponents of a paired ansatz).
struct AffineExp {
    std::array<Rational, 3> lin{};
    Rational cst;

    static AffineExp constant(const Rational& c) {
        AffineExp e;
        e.cst = c;
        return e;
    }
    static AffineExp variable(int index, const Rational& coeff = 1) {
        AffineExp e;
        e.lin[index] = coeff;
        return e;
    }

    bool is_constant() const { return lin[0] == 0 && lin[1] == 0 && lin[2] == 0; }
    bool is_zero() const { return is_constant() && cst == 0; }

    friend AffineExp operator+(const AffineExp& x, const AffineExp& y) {
        AffineExp e;
        for (int i = 0; i < 3; ++i) e.lin[i] = x.lin[i] + y.lin[i];
        e.cst = x.cst + y.cst;
        return e;
    }
    friend AffineExp operator-(const AffineExp& x, const AffineExp& y) {
        AffineExp e;
        for (int i = 0; i < 3; ++i) e.lin[i] = x.lin[i] - y.lin[i];
        e.cst = x.cst - y.cst;
        return e;
    }
    AffineExp operator-() const {
        AffineExp e;
        for (int i = 0; i < 3; ++i) e.lin[i] = -lin[i];
        e.cst = -cst;
        return e;
    }
    AffineExp scaled(const Rational& factor) const {
        AffineExp e;
        for (int i = 0; i < 3; ++i) e.lin[i] = lin[i] * factor;
        e.cst = cst * factor;
        return e;
    }

    friend bool operator==(const AffineExp& x, const AffineExp& y) {
        return x.lin == y.lin && x.cst == y.cst;
    }
    friend bool operator<(const AffineExp& x, const AffineExp& y) {
        for (int i = 0; i < 3; ++i)
            if (x.lin[i] != y.lin[i]) return x.lin[i] < y.lin[i];
        return x.cst < y.cst;
    }

    Rational eval(const std::array<Rational, 3>& values) const {
        Rational acc = cst;
        for (int i = 0; i < 3; ++i) acc += lin[i] * values[i];
        return acc;
    }

    /// Composition with an affine change of variables var_i -> images[i].
    AffineExp substitute(const std::array<AffineExp, 3>& images) const {
        AffineExp e = constant(cst);
        for (int i = 0; i < 3; ++i) e = e + images[i].scaled(lin[i]);
        return e;
    }

    std::string to_string() const {
        std::string out;
        const char* names[] = {"s1", "s2", "s3"};
        for (int i = 0; i < 3; ++i) {
            if (lin[i] == 0) continue;
            std::string c = coflow::to_string(lin[i]);
            if (!out.empty() && lin[i] > 0) out += "+";
            if (c == "1") out += names[i];
            else if (c == "-1") out += std::string("-") + names[i];
            else out += c + "*" + names[i];
        }
        if (cst != 0 || out.empty()) {
            if (!out.empty() && cst > 0) out += "+";
            if (cst != 0 || out.empty()) out += coflow::to_string(cst);
        }
        return out;
    }
};

}  // namespace coflow
