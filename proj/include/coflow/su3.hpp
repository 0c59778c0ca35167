#pragma once

#include "coflow/catalog.hpp"
#include "coflow/coframe.hpp"
#include "coflow/form.hpp"
#include "coflow/linalg.hpp"

#include <string>
#include <vector>

namespace coflow {

/// Raised when an input is not an SU(3)-structure of the assumed shape
/// (inconsistent torsion cross-determinations, failed reconstruction).
struct StructureError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// ---------------------------------------------------------------------------
// Model forms of an adapted basis.  All engine computations are written in
// the (scaled, orthonormal) frame in which the structure takes this shape,
// so these constants are the SU(3)-structure.
// ---------------------------------------------------------------------------

template <class R>
Form<R> adapted_omega(int dim = 6) {
    using F = Form<R>;
    return F::term(dim, {1, 2}, R(FieldElem(1))) + F::term(dim, {3, 4}, R(FieldElem(1))) +
           F::term(dim, {5, 6}, R(FieldElem(1)));
}

template <class R>
Form<R> adapted_psi_plus(int dim = 6) {
    using F = Form<R>;
    return F::term(dim, {1, 3, 5}, R(FieldElem(1))) + F::term(dim, {1, 4, 6}, R(FieldElem(-1))) +
           F::term(dim, {2, 3, 6}, R(FieldElem(-1))) + F::term(dim, {2, 4, 5}, R(FieldElem(-1)));
}

template <class R>
Form<R> adapted_psi_minus(int dim = 6) {
    using F = Form<R>;
    return F::term(dim, {2, 4, 6}, R(FieldElem(-1))) + F::term(dim, {2, 3, 5}, R(FieldElem(1))) +
           F::term(dim, {1, 4, 5}, R(FieldElem(1))) + F::term(dim, {1, 3, 6}, R(FieldElem(1)));
}

template <class R>
Form<R> to_ring(const Form<FieldElem>& a) {
    Form<R> out(a.dim(), a.degree());
    for (const auto& [b, c] : a.terms()) out.add_term(b, R(c));
    return out;
}

// ---------------------------------------------------------------------------
// Irreducible pieces of 2- and 3-forms over the model structure.  The bases
// are rational constants shared by every coframe, so the projection matrices
// are computed once and applied to any coefficient ring.
// ---------------------------------------------------------------------------

class Su3ModelBases {
public:
    static const Su3ModelBases& get() {
        static const Su3ModelBases instance;
        return instance;
    }

    std::vector<blades::Blade> blades1, blades2, blades3, blades4;
    Form<FieldElem> omega, psi_plus, psi_minus, omega_sq, vol;

    std::vector<Form<FieldElem>> two_six;      // *(x^i ^ psi+), i = 1..6
    std::vector<Form<FieldElem>> two_eight;    // basis of {s^psi+ = 0, s^omega^2 = 0}
    std::vector<Form<FieldElem>> three_twelve; // basis of {g^omega = 0, g^psi+- = 0}

    FMatrix solve2;        // 15x15: [omega | two_six | two_eight] -> Lambda^2
    FMatrix solve3;        // 20x20: [psi+ | psi- | x^i^omega | three_twelve] -> Lambda^3
    FMatrix solve4_plus;   // 15x15: [omega^2 | x^i^psi+ | -(w_j)^omega] -> Lambda^4
    FMatrix solve4_minus;  // 15x15: [omega^2 | x^i^psi- | -(w_j)^omega] -> Lambda^4

private:
    Su3ModelBases() {
        blades1 = blades::all(6, 1);
        blades2 = blades::all(6, 2);
        blades3 = blades::all(6, 3);
        blades4 = blades::all(6, 4);
        omega = adapted_omega<FieldElem>();
        psi_plus = adapted_psi_plus<FieldElem>();
        psi_minus = adapted_psi_minus<FieldElem>();
        omega_sq = wedge(omega, omega);
        vol = Form<FieldElem>::term(6, {1, 2, 3, 4, 5, 6}, 1);

        for (int i = 1; i <= 6; ++i)
            two_six.push_back(wedge(Form<FieldElem>::term(6, {i}, 1), psi_plus).hodge());
        two_eight = wedge_nullspace(blades2, {psi_plus, omega_sq});
        three_twelve = wedge_nullspace(blades3, {omega, psi_plus, psi_minus});
        if (two_six.size() != 6 || two_eight.size() != 8 || three_twelve.size() != 12)
            throw StructureError("unexpected SU(3) module dimensions");

        std::vector<Form<FieldElem>> cols2;
        cols2.push_back(omega);
        for (const auto& f : two_six) cols2.push_back(f);
        for (const auto& f : two_eight) cols2.push_back(f);
        solve2 = inverted(cols2, blades2, "Lambda^2 basis");

        std::vector<Form<FieldElem>> cols3;
        cols3.push_back(psi_plus);
        cols3.push_back(psi_minus);
        for (int i = 1; i <= 6; ++i) cols3.push_back(wedge(Form<FieldElem>::term(6, {i}, 1), omega));
        for (const auto& f : three_twelve) cols3.push_back(f);
        solve3 = inverted(cols3, blades3, "Lambda^3 basis");

        solve4_plus = torsion_matrix(psi_plus);
        solve4_minus = torsion_matrix(psi_minus);
    }

    // Solution space of {candidate ^ probe_i = 0 for all probes} inside the
    // span of `domain` blades, returned as forms.
    std::vector<Form<FieldElem>> wedge_nullspace(const std::vector<blades::Blade>& domain,
                                                 const std::vector<Form<FieldElem>>& probes) const {
        FMatrix rows;
        int deg = blades::degree(domain.front());
        for (const auto& probe : probes) {
            int out_deg = deg + probe.degree();
            if (out_deg > 6) continue;
            for (blades::Blade target : blades::all(6, out_deg)) {
                std::vector<FieldElem> row;
                row.reserve(domain.size());
                for (blades::Blade b : domain) {
                    Form<FieldElem> unit(6, deg);
                    unit.add_term(b, FieldElem(1));
                    row.push_back(wedge(unit, probe).coefficient(target));
                }
                rows.push_back(std::move(row));
            }
        }
        std::vector<Form<FieldElem>> out;
        for (const auto& v : nullspace(rows)) {
            Form<FieldElem> f(6, deg);
            for (std::size_t j = 0; j < domain.size(); ++j)
                if (!v[j].is_zero()) f.add_term(domain[j], v[j]);
            out.push_back(std::move(f));
        }
        return out;
    }

    FMatrix inverted(const std::vector<Form<FieldElem>>& columns,
                     const std::vector<blades::Blade>& target_blades, const char* what) const {
        FMatrix m(target_blades.size(), std::vector<FieldElem>(columns.size()));
        for (std::size_t c = 0; c < columns.size(); ++c) {
            auto vec = columns[c].coefficient_vector(target_blades);
            for (std::size_t r = 0; r < target_blades.size(); ++r) m[r][c] = vec[r];
        }
        auto inv = invert(std::move(m));
        if (!inv) throw StructureError(std::string("singular projection system: ") + what);
        return *inv;
    }

    // Columns of the map (s0, a_i, b_j) -> s0*omega^2 + (a_i x^i)^psi - (b_j w_j)^omega.
    FMatrix torsion_matrix(const Form<FieldElem>& psi) const {
        std::vector<Form<FieldElem>> cols;
        cols.push_back(omega_sq);
        for (int i = 1; i <= 6; ++i) cols.push_back(wedge(Form<FieldElem>::term(6, {i}, 1), psi));
        for (const auto& w : two_eight) cols.push_back(-wedge(w, omega));
        return inverted(cols, blades4, "torsion extraction");
    }
};

// ---------------------------------------------------------------------------
// Type decomposition
// ---------------------------------------------------------------------------

template <class R>
struct Decomp2 {
    R scalar;         // coefficient of omega
    Form<R> six;      // component in span{*(x^i ^ psi+)}
    Form<R> eight;    // component with eight^psi+ = 0, eight^omega^2 = 0
};

template <class R>
struct Decomp3 {
    R plus, minus;    // coefficients of psi+ and psi-
    Form<R> eta;      // 1-form with six = eta ^ omega
    Form<R> six;
    Form<R> twelve;   // component killed by wedging with omega, psi+, psi-
};

template <class R>
Decomp2<R> decompose2(const Form<R>& sigma) {
    const auto& mb = Su3ModelBases::get();
    if (sigma.dim() != 6 || sigma.degree() != 2) throw FormError("decompose2 expects a 2-form");
    auto x = mat_apply(mb.solve2, sigma.coefficient_vector(mb.blades2));
    Decomp2<R> out{x[0], Form<R>(6, 2), Form<R>(6, 2)};
    for (int i = 0; i < 6; ++i) out.six += x[1 + i] * to_ring<R>(mb.two_six[i]);
    for (int j = 0; j < 8; ++j) out.eight += x[7 + j] * to_ring<R>(mb.two_eight[j]);
    return out;
}

template <class R>
Decomp3<R> decompose3(const Form<R>& gamma) {
    const auto& mb = Su3ModelBases::get();
    if (gamma.dim() != 6 || gamma.degree() != 3) throw FormError("decompose3 expects a 3-form");
    auto x = mat_apply(mb.solve3, gamma.coefficient_vector(mb.blades3));
    Decomp3<R> out{x[0], x[1], Form<R>(6, 1), Form<R>(6, 3), Form<R>(6, 3)};
    for (int i = 0; i < 6; ++i) out.eta.add_term(blades::Blade(1) << i, x[2 + i]);
    out.six = wedge(out.eta, adapted_omega<R>());
    for (int j = 0; j < 12; ++j) out.twelve += x[8 + j] * to_ring<R>(mb.three_twelve[j]);
    return out;
}

// ---------------------------------------------------------------------------
// Torsion forms
// ---------------------------------------------------------------------------

template <class R>
struct Su3Torsion {
    R sigma0, pi0;
    Form<R> pi1, nu1;     // 1-forms
    Form<R> pi2, sigma2;  // 2-forms in the 8-dim module
    Form<R> nu3;          // 3-form in the 12-dim module
};

/// Extracts the seven torsion forms from the structure equations:
///   d omega = -(3/2) sigma0 psi+ + (3/2) pi0 psi- + nu1 ^ omega + nu3
///   d psi+  = pi0 omega^2 + pi1 ^ psi+ - pi2 ^ omega
///   d psi-  = sigma0 omega^2 + pi1 ^ psi- - sigma2 ^ omega
/// The shared unknowns are determined twice and must agree exactly; the
/// reconstruction of all three derivatives is verified before returning.
template <class R>
Su3Torsion<R> su3_torsion(const std::vector<Form<R>>& dx_table) {
    const auto& mb = Su3ModelBases::get();
    const Form<R> omega = adapted_omega<R>();
    const Form<R> psi_plus = adapted_psi_plus<R>();
    const Form<R> psi_minus = adapted_psi_minus<R>();
    const Form<R> omega_sq = wedge(omega, omega);

    const Form<R> d_omega = d(omega, dx_table);
    const Form<R> d_psi_plus = d(psi_plus, dx_table);
    const Form<R> d_psi_minus = d(psi_minus, dx_table);

    Su3Torsion<R> tor;
    auto dec = decompose3(d_omega);
    const R minus_two_thirds = R(FieldElem(Rational(-2, 3)));
    const R two_thirds = R(FieldElem(Rational(2, 3)));
    tor.sigma0 = minus_two_thirds * dec.plus;
    tor.pi0 = two_thirds * dec.minus;
    tor.nu1 = dec.eta;
    tor.nu3 = dec.twelve;

    auto xp = mat_apply(mb.solve4_plus, d_psi_plus.coefficient_vector(mb.blades4));
    auto xm = mat_apply(mb.solve4_minus, d_psi_minus.coefficient_vector(mb.blades4));
    Form<R> pi1_p(6, 1), pi1_m(6, 1);
    tor.pi2 = Form<R>(6, 2);
    tor.sigma2 = Form<R>(6, 2);
    for (int i = 0; i < 6; ++i) {
        pi1_p.add_term(blades::Blade(1) << i, xp[1 + i]);
        pi1_m.add_term(blades::Blade(1) << i, xm[1 + i]);
    }
    for (int j = 0; j < 8; ++j) {
        tor.pi2 += xp[7 + j] * to_ring<R>(mb.two_eight[j]);
        tor.sigma2 += xm[7 + j] * to_ring<R>(mb.two_eight[j]);
    }
    tor.pi1 = pi1_p;

    if (!(xp[0] == tor.pi0) || !(xm[0] == tor.sigma0) || !(pi1_p == pi1_m))
        throw StructureError("torsion cross-determinations disagree; "
                             "input is not an SU(3)-structure of the assumed form");

    const R neg32 = R(FieldElem(Rational(-3, 2)));
    const R pos32 = R(FieldElem(Rational(3, 2)));
    Form<R> rec_omega = neg32 * tor.sigma0 * psi_plus + pos32 * tor.pi0 * psi_minus +
                        wedge(tor.nu1, omega) + tor.nu3;
    Form<R> rec_plus = tor.pi0 * omega_sq + wedge(tor.pi1, psi_plus) - wedge(tor.pi2, omega);
    Form<R> rec_minus =
        tor.sigma0 * omega_sq + wedge(tor.pi1, psi_minus) - wedge(tor.sigma2, omega);
    if (!(rec_omega == d_omega) || !(rec_plus == d_psi_plus) || !(rec_minus == d_psi_minus))
        throw StructureError("torsion reconstruction failed");

    return tor;
}

// ---------------------------------------------------------------------------
// Classification (non-vanishing pattern of the torsion forms)
// ---------------------------------------------------------------------------

enum class Su3Class { calabi_yau, nearly_kahler, symplectic_half_flat, balanced, other };

inline const char* to_string(Su3Class c) {
    switch (c) {
        case Su3Class::calabi_yau: return "CalabiYau";
        case Su3Class::nearly_kahler: return "NearlyKahler";
        case Su3Class::symplectic_half_flat: return "SymplecticHalfFlat";
        case Su3Class::balanced: return "Balanced";
        case Su3Class::other: return "Other";
    }
    return "?";
}

struct Su3Classification {
    Su3Class cls;
    std::vector<std::string> nonzero;  // names of nonvanishing torsion forms
};

template <class R>
Su3Classification classify_su3(const Su3Torsion<R>& tor) {
    Su3Classification out;
    if (!tor.sigma0.is_zero()) out.nonzero.push_back("sigma0");
    if (!tor.pi0.is_zero()) out.nonzero.push_back("pi0");
    if (!tor.pi1.is_zero()) out.nonzero.push_back("pi1");
    if (!tor.nu1.is_zero()) out.nonzero.push_back("nu1");
    if (!tor.pi2.is_zero()) out.nonzero.push_back("pi2");
    if (!tor.sigma2.is_zero()) out.nonzero.push_back("sigma2");
    if (!tor.nu3.is_zero()) out.nonzero.push_back("nu3");
    if (out.nonzero.empty()) out.cls = Su3Class::calabi_yau;
    else if (out.nonzero == std::vector<std::string>{"sigma0"}) out.cls = Su3Class::nearly_kahler;
    else if (out.nonzero == std::vector<std::string>{"sigma2"})
        out.cls = Su3Class::symplectic_half_flat;
    else if (out.nonzero == std::vector<std::string>{"nu3"}) out.cls = Su3Class::balanced;
    else out.cls = Su3Class::other;
    return out;
}

// ---------------------------------------------------------------------------
// SU(3)-structure on a coframe: the model forms carried by a (possibly
// time-rescaled) adapted frame.
// ---------------------------------------------------------------------------

struct SU3Structure {
    Coframe frame;
    FrameScaling scaling;                 // six frame factors, f_i(0) = 1
    std::vector<Form<TimeScalar>> table;  // scaled structure equations

    static SU3Structure make(Coframe frame, FrameScaling scaling) {
        if (frame.dim != 6) throw StructureError("SU(3)-structure needs a 6-dim coframe");
        if (scaling.dim() != 6) throw StructureError("frame scaling must have six factors");
        for (int i = 1; i <= 6; ++i) {
            // f_i(0) = 1 <=> the single monomial carries unit coefficient
            if (!(scaling.scale(i).monomial_coefficient() == FieldElem(1)))
                throw StructureError("frame scale not normalized to f(0) = 1");
        }
        auto table = structure_table(frame, scaling);
        return SU3Structure{std::move(frame), std::move(scaling), std::move(table)};
    }

    static SU3Structure unit(Coframe frame) {
        return make(std::move(frame), FrameScaling::unit(6));
    }

    Form<TimeScalar> omega() const { return adapted_omega<TimeScalar>(); }
    Form<TimeScalar> psi_plus() const { return adapted_psi_plus<TimeScalar>(); }
    Form<TimeScalar> psi_minus() const { return adapted_psi_minus<TimeScalar>(); }

    Su3Torsion<TimeScalar> torsion() const { return su3_torsion(table); }
};

/// Diagnostic: the bilinear form B with B(X,Y) vol = -3 (i_X omega)^(i_Y psi+)^psi+
/// on the adapted frame.  Must come out diagonal and proportional to the
/// identity; the proportionality constant is reported, not assumed.
struct MetricDiagnostic {
    bool diagonal_proportional = false;
    FieldElem constant;
};

inline MetricDiagnostic su3_metric_diagnostic() {
    const auto& mb = Su3ModelBases::get();
    MetricDiagnostic diag;
    diag.diagonal_proportional = true;
    for (int i = 1; i <= 6; ++i) {
        for (int j = 1; j <= 6; ++j) {
            Form<FieldElem> w =
                wedge(wedge(mb.omega.contract(i), mb.psi_plus.contract(j)), mb.psi_plus);
            FieldElem value = FieldElem(-3) * w.coefficient(blades::complement(0, 6));
            if (i == j) {
                if (i == 1) diag.constant = value;
                else if (!(value == diag.constant)) diag.diagonal_proportional = false;
            } else if (!value.is_zero()) {
                diag.diagonal_proportional = false;
            }
        }
    }
    return diag;
}

}  // namespace coflow
