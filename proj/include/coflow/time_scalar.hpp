#pragma once

#include "coflow/field.hpp"
#include "coflow/rational.hpp"

#include <cmath>
#include <map>
#include <optional>
#include <string>
#include <utility>

namespace coflow {

/// Exact function of the flow parameter t: a finite sum of monomials
///
///     coeff * (1+k*t)^powExp * exp(expRate*t)
///
/// with coeff in Q(r2,r3) and powExp, expRate rational.  The ring constant k
/// is shared by every power monomial of an instance; scalars whose terms all
/// have powExp = 0 belong to every ring and combine freely.  The ring is
/// closed under +, -, * and d/dt, so flow residuals can be tested for exact
/// vanishing.
class TimeScalar {
public:
    struct Mono {
        Rational pow_exp;   // exponent of (1+k*t)
        Rational exp_rate;  // rate of exp(...*t)
        friend bool operator==(const Mono& x, const Mono& y) {
            return x.pow_exp == y.pow_exp && x.exp_rate == y.exp_rate;
        }
        friend bool operator<(const Mono& x, const Mono& y) {
            if (x.pow_exp != y.pow_exp) return x.pow_exp < y.pow_exp;
            return x.exp_rate < y.exp_rate;
        }
    };

    TimeScalar() = default;
    TimeScalar(const FieldElem& constant) {  // NOLINT: implicit by design
        insert(constant, Mono{0, 0});
        normalize();
    }
    TimeScalar(const Rational& constant) : TimeScalar(FieldElem(constant)) {}  // NOLINT
    TimeScalar(long constant) : TimeScalar(FieldElem(constant)) {}             // NOLINT

    /// coeff * (1+k*t)^a
    static TimeScalar power(const Rational& k, const Rational& a, const FieldElem& coeff = 1) {
        TimeScalar s;
        s.insert(coeff, Mono{a, 0});
        if (a != 0) s.k_ = k;
        s.normalize();
        return s;
    }

    /// coeff * exp(rate*t)
    static TimeScalar exponential(const Rational& rate, const FieldElem& coeff = 1) {
        TimeScalar s;
        s.insert(coeff, Mono{0, rate});
        s.normalize();
        return s;
    }

    static TimeScalar monomial(const Rational& k, const Rational& a, const Rational& rate,
                               const FieldElem& coeff) {
        TimeScalar s;
        s.insert(coeff, Mono{a, rate});
        if (a != 0) s.k_ = k;
        s.normalize();
        return s;
    }

    bool is_zero() const { return terms_.empty(); }
    bool is_constant() const {
        return terms_.empty() ||
               (terms_.size() == 1 && terms_.begin()->first == Mono{0, 0});
    }
    FieldElem constant_value() const {
        if (terms_.empty()) return FieldElem();
        if (!is_constant()) throw ScalarError("time scalar is not constant: " + to_string());
        return terms_.begin()->second;
    }
    bool is_single_monomial() const { return terms_.size() == 1; }

    const std::optional<Rational>& ring_k() const { return k_; }
    std::size_t term_count() const { return terms_.size(); }

    friend bool operator==(const TimeScalar& x, const TimeScalar& y) {
        return x.k_ == y.k_ && x.terms_ == y.terms_;
    }
    friend bool operator!=(const TimeScalar& x, const TimeScalar& y) { return !(x == y); }

    TimeScalar operator-() const {
        TimeScalar out = *this;
        for (auto& [mono, coeff] : out.terms_) coeff = -coeff;
        return out;
    }

    friend TimeScalar operator+(const TimeScalar& x, const TimeScalar& y) {
        TimeScalar out;
        out.k_ = unify(x, y);
        out.terms_ = x.terms_;
        for (const auto& [mono, coeff] : y.terms_) {
            auto [it, fresh] = out.terms_.emplace(mono, coeff);
            if (!fresh) it->second += coeff;
        }
        out.normalize();
        return out;
    }
    friend TimeScalar operator-(const TimeScalar& x, const TimeScalar& y) { return x + (-y); }

    friend TimeScalar operator*(const TimeScalar& x, const TimeScalar& y) {
        TimeScalar out;
        out.k_ = unify(x, y);
        for (const auto& [mx, cx] : x.terms_)
            for (const auto& [my, cy] : y.terms_) {
                Mono mono{mx.pow_exp + my.pow_exp, mx.exp_rate + my.exp_rate};
                auto [it, fresh] = out.terms_.emplace(mono, cx * cy);
                if (!fresh) it->second += cx * cy;
            }
        out.normalize();
        return out;
    }

    TimeScalar& operator+=(const TimeScalar& y) { return *this = *this + y; }
    TimeScalar& operator-=(const TimeScalar& y) { return *this = *this - y; }
    TimeScalar& operator*=(const TimeScalar& y) { return *this = *this * y; }

    /// Termwise exact derivative:
    ///   d/dt (1+kt)^a = a*k*(1+kt)^(a-1),   d/dt exp(bt) = b*exp(bt).
    TimeScalar ddt() const {
        TimeScalar out;
        for (const auto& [mono, coeff] : terms_) {
            if (mono.pow_exp != 0) {
                FieldElem c = coeff * FieldElem(mono.pow_exp * *k_);
                out.insert(c, Mono{mono.pow_exp - 1, mono.exp_rate});
            }
            if (mono.exp_rate != 0) {
                out.insert(coeff * FieldElem(mono.exp_rate), mono);
            }
        }
        out.k_ = k_;
        out.normalize();
        return out;
    }

    /// Coefficient of a single-monomial scalar.
    FieldElem monomial_coefficient() const {
        if (terms_.size() != 1) throw ScalarError("not a single monomial: " + to_string());
        return terms_.begin()->second;
    }

    /// Reciprocal of a single-monomial scalar; stays in the ring.
    TimeScalar monomial_inverse() const {
        if (terms_.size() != 1) throw ScalarError("not a single monomial: " + to_string());
        const auto& [mono, coeff] = *terms_.begin();
        TimeScalar out;
        out.insert(coeff.inverse(), Mono{-mono.pow_exp, -mono.exp_rate});
        if (mono.pow_exp != 0) out.k_ = k_;
        out.normalize();
        return out;
    }

    /// Floating evaluation; used for spot checks only, never for equality.
    double eval(const Rational& t) const {
        double acc = 0;
        double base = 1;
        if (k_) {
            Rational one_plus = 1 + *k_ * t;
            if (one_plus <= 0) throw ScalarError("evaluation outside domain: 1+k*t <= 0");
            base = to_double(one_plus);
        }
        const double td = to_double(t);
        for (const auto& [mono, coeff] : terms_)
            acc += coeff.eval() * std::pow(base, to_double(mono.pow_exp)) *
                   std::exp(to_double(mono.exp_rate) * td);
        return acc;
    }

    /// "c*(1+k*t)^a*exp(b*t)" with rational literals; terms joined by +/-.
    std::string to_string() const {
        if (terms_.empty()) return "0";
        std::string out;
        bool first = true;
        for (const auto& [mono, coeff] : terms_) {
            std::string cs = coeff.to_string();
            bool negated = false;
            if (cs.size() > 1 && cs[0] == '-' && cs.find('(') == std::string::npos) {
                cs = cs.substr(1);
                negated = true;
            } else if (cs == "-1") {
                cs = "1";
                negated = true;
            }
            out += first ? (negated ? "-" : "") : (negated ? " - " : " + ");
            std::string factors;
            if (mono.pow_exp != 0) {
                factors += "(1" + k_term_string() + ")^" + exponent_string(mono.pow_exp);
            }
            if (mono.exp_rate != 0) {
                if (!factors.empty()) factors += "*";
                factors += "exp(" + rate_string(mono.exp_rate) + "t)";
            }
            if (factors.empty()) out += cs;
            else if (cs == "1") out += factors;
            else out += cs + "*" + factors;
            first = false;
        }
        return out;
    }

private:
    static std::optional<Rational> unify(const TimeScalar& x, const TimeScalar& y) {
        if (x.k_ && y.k_) {
            if (*x.k_ != *y.k_)
                throw ScalarError("mixing time scalars with ring constants k=" +
                                  coflow::to_string(*x.k_) + " and k=" + coflow::to_string(*y.k_));
            return x.k_;
        }
        return x.k_ ? x.k_ : y.k_;
    }

    void insert(const FieldElem& coeff, const Mono& mono) {
        auto [it, fresh] = terms_.emplace(mono, coeff);
        if (!fresh) it->second += coeff;
    }

    void normalize() {
        for (auto it = terms_.begin(); it != terms_.end();) {
            if (it->second.is_zero()) it = terms_.erase(it);
            else ++it;
        }
        bool engaged = false;
        for (const auto& [mono, coeff] : terms_)
            if (mono.pow_exp != 0) engaged = true;
        if (!engaged) k_.reset();
        if (engaged && !k_) throw ScalarError("power monomial without a ring constant");
    }

    std::string k_term_string() const {
        Rational k = k_ ? *k_ : Rational(0);
        if (k < 0) return "-" + coflow::to_string(Rational(-k)) + "*t";
        return "+" + coflow::to_string(k) + "*t";
    }
    static std::string exponent_string(const Rational& a) {
        std::string s = coflow::to_string(a);
        if (a < 0 || !is_integer(a)) return "(" + s + ")";
        return s;
    }
    static std::string rate_string(const Rational& b) {
        if (b == 1) return "";
        if (b == -1) return "-";
        return coflow::to_string(b) + "*";
    }

    std::map<Mono, FieldElem> terms_;
    std::optional<Rational> k_;  // engaged iff some pow_exp != 0
};

inline TimeScalar operator*(const FieldElem& c, const TimeScalar& s) { return TimeScalar(c) * s; }
inline TimeScalar operator*(const TimeScalar& s, const FieldElem& c) { return TimeScalar(c) * s; }

}  // namespace coflow
