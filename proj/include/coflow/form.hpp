#pragma once

#include "coflow/field.hpp"

#include <bit>
#include <cstdint>
#include <initializer_list>
#include <map>
#include <stdexcept>
#include <string>
#include <vector>

namespace coflow {

struct FormError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Index sets of coframe covectors are bitmasks: index i <-> bit (i-1).
namespace blades {

using Blade = std::uint32_t;

inline int degree(Blade b) { return std::popcount(b); }

inline std::vector<int> indices(Blade b) {
    std::vector<int> out;
    for (int i = 1; b != 0; ++i, b >>= 1)
        if (b & 1u) out.push_back(i);
    return out;
}

inline Blade from_indices(const std::vector<int>& idx, int dim) {
    Blade b = 0;
    for (int i : idx) {
        if (i < 1 || i > dim) throw FormError("coframe index out of range: " + std::to_string(i));
        b |= Blade(1) << (i - 1);
    }
    return b;
}

/// Sign of x^A ^ x^B for disjoint A, B, by counting inversions of the
/// concatenated index tuple (A ascending, then B ascending).
inline int wedge_sign(Blade a, Blade b) {
    int inversions = 0;
    for (Blade rest = b; rest != 0;) {
        int bit = std::countr_zero(rest);
        rest &= rest - 1;
        inversions += std::popcount(a >> (bit + 1));
    }
    return (inversions % 2 == 0) ? 1 : -1;
}

inline Blade complement(Blade b, int dim) { return ~b & ((Blade(1) << dim) - 1); }

/// Sign s in *x^I = s * x^(I complement) for the unit metric and
/// orientation x^(1...n).
inline int star_sign(Blade b, int dim) { return wedge_sign(b, complement(b, dim)); }

/// Lexicographic order on ascending index tuples (blades of equal degree
/// compare by their first differing index).
struct LexLess {
    bool operator()(Blade a, Blade b) const {
        while (a != 0 && b != 0) {
            int la = std::countr_zero(a), lb = std::countr_zero(b);
            if (la != lb) return la < lb;
            a &= a - 1;
            b &= b - 1;
        }
        return a == 0 && b != 0;
    }
};

/// All blades of the given degree over n indices, in lexicographic order.
inline std::vector<Blade> all(int dim, int degree) {
    std::vector<Blade> out;
    Blade top = Blade(1) << dim;
    for (Blade b = 0; b < top; ++b)
        if (std::popcount(b) == degree) out.push_back(b);
    std::sort(out.begin(), out.end(), LexLess{});
    return out;
}

}  // namespace blades

/// Degree-homogeneous alternating form over an n-dim coframe (n <= 7),
/// a sparse map from increasing index tuples to ring coefficients.
/// The coefficient ring R needs +, -, *, is_zero(), ==, and construction
/// from FieldElem.
template <class R>
class Form {
public:
    using Blade = blades::Blade;
    using TermMap = std::map<Blade, R, blades::LexLess>;

    Form() : dim_(0), degree_(0) {}
    Form(int dim, int degree) : dim_(dim), degree_(degree) {
        if (dim < 0 || dim > 7 || degree < 0 || degree > dim)
            throw FormError("bad form shape: dim=" + std::to_string(dim) +
                            " degree=" + std::to_string(degree));
    }

    /// Single term from a (possibly unsorted) index list; repeated index gives zero.
    static Form term(int dim, std::initializer_list<int> idx, const R& coeff) {
        Form out(dim, static_cast<int>(idx.size()));
        Blade b = 0;
        for (int i : idx) {
            if (i < 1 || i > dim) throw FormError("index out of range");
            Blade bit = Blade(1) << (i - 1);
            if (b & bit) return out;  // repeated covector
            b |= bit;
        }
        // Sign of sorting the written tuple into ascending order.
        std::vector<int> seq(idx);
        int inv = 0;
        for (size_t p = 0; p < seq.size(); ++p)
            for (size_t q = p + 1; q < seq.size(); ++q)
                if (seq[p] > seq[q]) ++inv;
        R c = (inv % 2 == 0) ? coeff : R(-coeff);
        if (!c.is_zero()) out.terms_.emplace(b, std::move(c));
        return out;
    }

    int dim() const { return dim_; }
    int degree() const { return degree_; }
    bool is_zero() const { return terms_.empty(); }
    const TermMap& terms() const { return terms_; }

    R coefficient(Blade b) const {
        auto it = terms_.find(b);
        return it == terms_.end() ? R() : it->second;
    }

    void add_term(Blade b, const R& coeff) {
        if (blades::degree(b) != degree_) throw FormError("term degree mismatch");
        auto [it, fresh] = terms_.emplace(b, coeff);
        if (!fresh) it->second = it->second + coeff;
        if (it->second.is_zero()) terms_.erase(it);
    }

    friend bool operator==(const Form& x, const Form& y) {
        return x.dim_ == y.dim_ && x.degree_ == y.degree_ && x.terms_ == y.terms_;
    }
    friend bool operator!=(const Form& x, const Form& y) { return !(x == y); }

    Form operator-() const {
        Form out(dim_, degree_);
        for (const auto& [b, c] : terms_) out.terms_.emplace(b, R(-c));
        return out;
    }

    friend Form operator+(const Form& x, const Form& y) {
        x.require_same_shape(y, "+");
        Form out = x;
        for (const auto& [b, c] : y.terms_) out.add_term(b, c);
        return out;
    }
    friend Form operator-(const Form& x, const Form& y) { return x + (-y); }

    Form& operator+=(const Form& y) { return *this = *this + y; }
    Form& operator-=(const Form& y) { return *this = *this - y; }

    friend Form operator*(const R& s, const Form& x) {
        Form out(x.dim_, x.degree_);
        for (const auto& [b, c] : x.terms_) {
            R sc = s * c;
            if (!sc.is_zero()) out.terms_.emplace(b, std::move(sc));
        }
        return out;
    }

    /// Exterior product; returns the zero form when degrees overflow dim.
    friend Form wedge(const Form& x, const Form& y) {
        if (x.dim_ != y.dim_) throw FormError("wedge of forms over different coframes");
        int deg = x.degree_ + y.degree_;
        if (deg > x.dim_) return Form(x.dim_, x.dim_);  // zero: no room left
        Form out(x.dim_, deg);
        for (const auto& [bx, cx] : x.terms_)
            for (const auto& [by, cy] : y.terms_) {
                if (bx & by) continue;
                int sign = blades::wedge_sign(bx, by);
                R c = cx * cy;
                out.add_term(bx | by, sign > 0 ? c : R(-c));
            }
        return out;
    }

    /// Contraction with the frame vector dual to covector `index`.
    Form contract(int index) const {
        if (degree_ == 0) throw FormError("contraction of a 0-form");
        if (index < 1 || index > dim_) throw FormError("contraction index out of range");
        Form out(dim_, degree_ - 1);
        Blade bit = Blade(1) << (index - 1);
        for (const auto& [b, c] : terms_) {
            if (!(b & bit)) continue;
            int pos = std::popcount(b & (bit - 1));  // 0-based position inside the tuple
            out.add_term(b & ~bit, (pos % 2 == 0) ? c : R(-c));
        }
        return out;
    }

    /// Hodge star for the orthonormal coframe, orientation x^(1...n).
    Form hodge() const {
        Form out(dim_, dim_ - degree_);
        for (const auto& [b, c] : terms_) {
            int sign = blades::star_sign(b, dim_);
            out.add_term(blades::complement(b, dim_), sign > 0 ? c : R(-c));
        }
        return out;
    }

    /// Applies fn to every coefficient (fn: R -> R), dropping produced zeros.
    template <class Fn>
    Form map_coefficients(Fn&& fn) const {
        Form out(dim_, degree_);
        for (const auto& [b, c] : terms_) {
            R v = fn(b, c);
            if (!v.is_zero()) out.terms_.emplace(b, std::move(v));
        }
        return out;
    }

    /// Dense coefficient vector against a caller-supplied blade list.
    std::vector<R> coefficient_vector(const std::vector<Blade>& basis) const {
        std::vector<R> out;
        out.reserve(basis.size());
        for (Blade b : basis) out.push_back(coefficient(b));
        return out;
    }

    /// Deterministic rendering, terms in lexicographic tuple order.  Index 7
    /// prints as `fiber_symbol` when given (the circle direction of a warped
    /// product).
    std::string to_string(const std::string& symbol = "x",
                          const std::string& fiber_symbol = "") const {
        if (terms_.empty()) return "0";
        std::string out;
        bool first = true;
        for (const auto& [b, c] : terms_) {
            std::string cs = c.to_string();
            bool negated = false;
            if (!cs.empty() && cs[0] == '-' && cs.find_first_of("+- ", 1) == std::string::npos) {
                cs = cs.substr(1);
                negated = true;
            }
            if (cs.find(' ') != std::string::npos) cs = "(" + cs + ")";
            out += first ? (negated ? "-" : "") : (negated ? " - " : " + ");
            std::string blade_str;
            std::string digits;
            bool has_fiber = false;
            for (int i : blades::indices(b)) {
                if (i == 7 && !fiber_symbol.empty()) has_fiber = true;
                else digits += std::to_string(i);
            }
            if (!digits.empty()) blade_str = symbol + "^{" + digits + "}";
            if (has_fiber) blade_str += (blade_str.empty() ? "" : "^") + fiber_symbol;
            if (blade_str.empty()) blade_str = "1";
            if (cs == "1") out += blade_str;
            else out += cs + "*" + blade_str;
            first = false;
        }
        return out;
    }

private:
    void require_same_shape(const Form& y, const char* what) const {
        if (dim_ != y.dim_ || degree_ != y.degree_)
            throw FormError(std::string("form shape mismatch in ") + what);
    }

    int dim_;
    int degree_;
    TermMap terms_;
};

/// Inclusion of a base form into the coframe extended by one fiber covector.
template <class R>
Form<R> embed(const Form<R>& base, int new_dim) {
    if (new_dim < base.dim()) throw FormError("embed target smaller than source");
    Form<R> out(new_dim, base.degree());
    for (const auto& [b, c] : base.terms()) out.add_term(b, c);
    return out;
}

/// Terms of a 7-frame form not involving x^7, as a 6-frame form.
template <class R>
Form<R> base_part(const Form<R>& a) {
    Form<R> out(a.dim() - 1, a.degree());
    blades::Blade fiber = blades::Blade(1) << (a.dim() - 1);
    for (const auto& [b, c] : a.terms())
        if (!(b & fiber)) out.add_term(b, c);
    return out;
}

/// The eta in a = (...) + eta ^ x^7, as a 6-frame form (x^7 sits last in
/// every increasing tuple, so no sign appears).
template <class R>
Form<R> fiber_part(const Form<R>& a) {
    if (a.degree() == 0) return Form<R>(a.dim() - 1, 0);
    Form<R> out(a.dim() - 1, a.degree() - 1);
    blades::Blade fiber = blades::Blade(1) << (a.dim() - 1);
    for (const auto& [b, c] : a.terms())
        if (b & fiber) out.add_term(b & ~fiber, c);
    return out;
}

}  // namespace coflow
