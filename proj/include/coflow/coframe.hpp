#pragma once

#include "coflow/form.hpp"
#include "coflow/time_scalar.hpp"

#include <string>
#include <utility>
#include <vector>

namespace coflow {

/// Invariant coframe h^1..h^n of a Lie algebra, described by its structure
/// equations dh^i (2-forms with coefficients in Q(r2,r3)).
struct Coframe {
    int dim = 0;
    std::string name;
    std::vector<Form<FieldElem>> d_table;  // d_table[i-1] = dh^i

    const Form<FieldElem>& dh(int i) const { return d_table.at(i - 1); }
};

/// Graded Leibniz extension of a structure table dx^i to arbitrary forms.
/// `dx_table[i-1]` must be the 2-form dx^i over the same coframe; any ring R
/// works since coefficients are functions of t alone (d of a coefficient is
/// zero on the base).
template <class R>
Form<R> d(const Form<R>& a, const std::vector<Form<R>>& dx_table) {
    const int n = a.dim();
    if (static_cast<int>(dx_table.size()) != n)
        throw FormError("structure table size does not match coframe dimension");
    Form<R> out(n, std::min(a.degree() + 1, n));
    if (a.degree() + 1 > n) return out;  // top degree: d vanishes
    for (const auto& [b, c] : a.terms()) {
        int pos = 0;
        for (int i : blades::indices(b)) {
            const Form<R>& dxi = dx_table[i - 1];
            if (!dxi.is_zero()) {
                Form<R> rest(n, a.degree() - 1);
                rest.add_term(b & ~(blades::Blade(1) << (i - 1)), (pos % 2 == 0) ? c : R(-c));
                out += wedge(dxi, rest);
            }
            ++pos;
        }
    }
    return out;
}

/// d over the static frame (unit scaling): coefficients stay in R.
template <class R>
std::vector<Form<R>> static_structure_table(const Coframe& frame) {
    std::vector<Form<R>> table;
    table.reserve(frame.dim);
    for (const auto& dh : frame.d_table) {
        Form<R> fx(frame.dim, 2);
        for (const auto& [b, c] : dh.terms()) fx.add_term(b, R(c));
        table.push_back(std::move(fx));
    }
    return table;
}

struct JacobiReport {
    struct Entry {
        int generator;
        Form<FieldElem> d_squared;  // residual 3-form, zero iff Jacobi holds
    };
    std::vector<Entry> entries;
    bool ok = true;
};

/// Checks d(dh^i) = 0 for every generator.
inline JacobiReport validate(const Coframe& frame) {
    JacobiReport report;
    auto table = static_structure_table<FieldElem>(frame);
    for (int i = 1; i <= frame.dim; ++i) {
        Form<FieldElem> dd = d(frame.dh(i), table);
        if (!dd.is_zero()) report.ok = false;
        report.entries.push_back({i, std::move(dd)});
    }
    return report;
}

/// Diagonal time-dependent rescaling x^i(t) = f_i(t) h^i of a coframe, each
/// f_i a single invertible monomial.  Slot 7 of a 7-frame holds the warp
/// factor of the circle covector x^7 = f ds.
class FrameScaling {
public:
    FrameScaling() = default;
    explicit FrameScaling(std::vector<TimeScalar> scales) : scales_(std::move(scales)) {
        for (const auto& f : scales_)
            if (!f.is_single_monomial())
                throw ScalarError("frame scale must be a single invertible monomial");
    }

    static FrameScaling unit(int dim) {
        return FrameScaling(std::vector<TimeScalar>(dim, TimeScalar(1)));
    }

    /// f_i(t) = (1+k*t)^alpha_i; satisfies f_i(0) = 1.
    static FrameScaling power(const Rational& k, const std::vector<Rational>& alphas) {
        std::vector<TimeScalar> scales;
        scales.reserve(alphas.size());
        for (const auto& a : alphas) scales.push_back(TimeScalar::power(k, a));
        return FrameScaling(std::move(scales));
    }

    int dim() const { return static_cast<int>(scales_.size()); }
    const TimeScalar& scale(int i) const { return scales_.at(i - 1); }
    const std::vector<TimeScalar>& scales() const { return scales_; }

    /// f_i'(t) / f_i(t); stays in the ring because f_i is a monomial.
    TimeScalar log_deriv(int i) const { return scale(i).ddt() * scale(i).monomial_inverse(); }

    TimeScalar product(blades::Blade b) const {
        TimeScalar acc(1);
        for (int i : blades::indices(b)) acc *= scale(i);
        return acc;
    }

    /// Appends a fiber scale (the warp) as slot dim+1.
    FrameScaling extended(const TimeScalar& fiber_scale) const {
        std::vector<TimeScalar> scales = scales_;
        scales.push_back(fiber_scale);
        return FrameScaling(std::move(scales));
    }

private:
    std::vector<TimeScalar> scales_;
};

/// Structure table of the rescaled frame: dx^i = sum c^i_jk f_i/(f_j f_k) x^jk.
inline std::vector<Form<TimeScalar>> structure_table(const Coframe& frame,
                                                     const FrameScaling& scaling) {
    if (scaling.dim() < frame.dim) throw FormError("scaling shorter than coframe");
    std::vector<Form<TimeScalar>> table;
    table.reserve(frame.dim);
    for (int i = 1; i <= frame.dim; ++i) {
        Form<TimeScalar> fx(frame.dim, 2);
        for (const auto& [b, c] : frame.dh(i).terms()) {
            TimeScalar factor = scaling.scale(i) * scaling.product(b).monomial_inverse();
            fx.add_term(b, TimeScalar(c) * factor);
        }
        table.push_back(std::move(fx));
    }
    return table;
}

/// 7-frame structure table for the warped product: base equations embedded,
/// dx^7 = 0 (the warp is constant on the base and ds is closed).
inline std::vector<Form<TimeScalar>> structure_table_7(const Coframe& base,
                                                       const FrameScaling& base_scaling) {
    auto table6 = structure_table(base, base_scaling);
    std::vector<Form<TimeScalar>> table7;
    table7.reserve(7);
    for (const auto& fx : table6) table7.push_back(embed(fx, 7));
    table7.push_back(Form<TimeScalar>(7, 2));
    return table7;
}

/// Change of frame x -> h: a coefficient on x^I picks up prod_{i in I} f_i.
inline Form<TimeScalar> to_static_frame(const Form<TimeScalar>& a, const FrameScaling& scaling) {
    return a.map_coefficients(
        [&](blades::Blade b, const TimeScalar& c) { return c * scaling.product(b); });
}

/// Change of frame h -> x: divides by the (invertible) monomial product.
inline Form<TimeScalar> to_scaled_frame(const Form<TimeScalar>& a, const FrameScaling& scaling) {
    return a.map_coefficients([&](blades::Blade b, const TimeScalar& c) {
        return c * scaling.product(b).monomial_inverse();
    });
}

/// Hodge star of a static-frame form for the metric declaring {f_i h^i}
/// orthonormal: change basis to the scaled frame, apply the unit star, change
/// back.  Signs come from the unit case; orientation is h^(1...n).
inline Form<TimeScalar> hodge_scaled(const Form<TimeScalar>& a, const FrameScaling& scaling) {
    return to_static_frame(to_scaled_frame(a, scaling).hodge(), scaling);
}

/// d/dt of a form written in the scaled frame: coefficients differentiate and
/// every monomial x^I gains sum_{i in I} f_i'/f_i.
inline Form<TimeScalar> ddt(const Form<TimeScalar>& a, const FrameScaling& scaling) {
    return a.map_coefficients([&](blades::Blade b, const TimeScalar& c) {
        TimeScalar v = c.ddt();
        for (int i : blades::indices(b)) v += c * scaling.log_deriv(i);
        return v;
    });
}

}  // namespace coflow
