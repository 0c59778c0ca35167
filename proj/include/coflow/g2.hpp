#pragma once

#include "coflow/su3.hpp"

#include <string>
#include <vector>

namespace coflow {

/// Warped product of a 6-dim coframe with a circle: the 7-frame is
/// (x^1..x^6, x^7 = f ds) and is declared orthonormal, so the induced metric
/// is g_base + f^2 ds^2.  The defining 3-form is
///
///     phi = f omega ^ ds + (alpha psi+ - beta psi-),   alpha^2 + beta^2 = 1.
struct WarpedG2Structure {
    SU3Structure base;
    TimeScalar warp;  // f(t): single positive monomial
    FieldElem alpha, beta;
    FrameScaling scaling7;                 // base scales + warp
    std::vector<Form<TimeScalar>> table7;  // structure equations with dx^7 = 0

    static WarpedG2Structure make(SU3Structure base, TimeScalar warp, FieldElem alpha,
                                  FieldElem beta) {
        if (!(alpha * alpha + beta * beta == FieldElem(1)))
            throw StructureError("orientation pair must satisfy alpha^2 + beta^2 = 1");
        if (!warp.is_single_monomial())
            throw StructureError("warp factor must be a single invertible monomial");
        if (!(warp.monomial_coefficient().eval() > 0.0))
            throw StructureError("warp factor must be positive at t = 0");
        auto scaling7 = base.scaling.extended(warp);
        auto table7 = structure_table_7(base.frame, base.scaling);
        return WarpedG2Structure{std::move(base), std::move(warp), alpha, beta,
                                 std::move(scaling7), std::move(table7)};
    }

    /// phi in the orthonormal 7-frame: omega ^ x^7 + alpha psi+ - beta psi-.
    Form<TimeScalar> phi() const {
        auto x7 = Form<TimeScalar>::term(7, {7}, TimeScalar(1));
        return wedge(embed(adapted_omega<TimeScalar>(), 7), x7) +
               TimeScalar(alpha) * embed(adapted_psi_plus<TimeScalar>(), 7) -
               TimeScalar(beta) * embed(adapted_psi_minus<TimeScalar>(), 7);
    }

    /// *phi = (1/2) omega^2 + (alpha psi- + beta psi+) ^ x^7.
    Form<TimeScalar> star_phi() const {
        auto omega = adapted_omega<TimeScalar>();
        auto x7 = Form<TimeScalar>::term(7, {7}, TimeScalar(1));
        return TimeScalar(FieldElem(Rational(1, 2))) * embed(wedge(omega, omega), 7) +
               wedge(TimeScalar(alpha) * embed(adapted_psi_minus<TimeScalar>(), 7) +
                         TimeScalar(beta) * embed(adapted_psi_plus<TimeScalar>(), 7),
                     x7);
    }

    Form<TimeScalar> d7(const Form<TimeScalar>& a) const { return d(a, table7); }

    Su3Torsion<TimeScalar> base_torsion() const { return base.torsion(); }
};

/// Builds phi and *phi, verifying the Hodge star of phi against the closed
/// expression (the star is computed, not assumed).
struct PhiPair {
    Form<TimeScalar> phi, star_phi;
};

inline PhiPair build_phi(const WarpedG2Structure& w) {
    PhiPair out{w.phi(), w.star_phi()};
    if (!(out.phi.hodge() == out.star_phi))
        throw StructureError("Hodge star of phi does not match its closed form");
    return out;
}

// ---------------------------------------------------------------------------
// G2 torsion forms
// ---------------------------------------------------------------------------

struct G2Torsion {
    TimeScalar tau0;
    Form<TimeScalar> tau1;  // 1-form on the 7-frame
    Form<TimeScalar> tau2;  // 2-form in the 14-dim module
    Form<TimeScalar> tau3;  // 3-form in the 27-dim module

    friend bool operator==(const G2Torsion& x, const G2Torsion& y) {
        return x.tau0 == y.tau0 && x.tau1 == y.tau1 && x.tau2 == y.tau2 && x.tau3 == y.tau3;
    }
};

/// Direct evaluation of the torsion forms:
///   tau0 = (1/7) * *(d phi ^ phi)
///   tau1 = (-1/12) * *(*d phi ^ phi)
///   tau2 = -*d*phi + 4 *(tau1 ^ *phi)
///   tau3 = *d phi - tau0 phi - 3 *(tau1 ^ phi)
/// The decomposition of d phi and d *phi is reconstructed exactly and the
/// module membership of tau2, tau3 is verified before returning.
inline G2Torsion g2_torsion_direct(const WarpedG2Structure& w) {
    const Form<TimeScalar> phi = w.phi();
    const Form<TimeScalar> star_phi = w.star_phi();
    const Form<TimeScalar> dphi = w.d7(phi);
    const Form<TimeScalar> dstar_phi = w.d7(star_phi);

    G2Torsion tor;
    tor.tau0 = TimeScalar(FieldElem(Rational(1, 7))) * wedge(dphi, phi).hodge().coefficient(0);
    tor.tau1 = TimeScalar(FieldElem(Rational(-1, 12))) * wedge(dphi.hodge(), phi).hodge();
    tor.tau2 = -dstar_phi.hodge() +
               TimeScalar(FieldElem(4)) * wedge(tor.tau1, star_phi).hodge();
    tor.tau3 = dphi.hodge() - tor.tau0 * phi -
               TimeScalar(FieldElem(3)) * wedge(tor.tau1, phi).hodge();

    Form<TimeScalar> rec_dphi = tor.tau0 * star_phi +
                                TimeScalar(FieldElem(3)) * wedge(tor.tau1, phi) +
                                tor.tau3.hodge();
    Form<TimeScalar> rec_dstar =
        TimeScalar(FieldElem(4)) * wedge(tor.tau1, star_phi) + wedge(tor.tau2, phi);
    if (!(rec_dphi == dphi) || !(rec_dstar == dstar_phi))
        throw StructureError("G2 torsion reconstruction failed");
    if (!(wedge(tor.tau2, phi) == -tor.tau2.hodge()))
        throw StructureError("tau2 is not in the 14-dim module");
    if (!wedge(tor.tau3, phi).is_zero() || !wedge(tor.tau3, star_phi).is_zero())
        throw StructureError("tau3 is not in the 27-dim module");
    return tor;
}

/// Torsion of the warped structure from the torsion of the base: with the
/// warp constant on the base the auxiliary 1-forms reduce to
///   eta1 = pi1 + nu1,  eta2 = pi1 - 2 nu1,  eta3 = -pi1 + nu1.
inline G2Torsion g2_torsion_warped(const Su3Torsion<TimeScalar>& t, const WarpedG2Structure& w) {
    using F = Form<TimeScalar>;
    const TimeScalar a(w.alpha), b(w.beta);
    const F omega6 = adapted_omega<TimeScalar>();
    const F psi_p6 = adapted_psi_plus<TimeScalar>();
    const F psi_m6 = adapted_psi_minus<TimeScalar>();
    const F omega_sq6 = wedge(omega6, omega6);
    const F x7 = F::term(7, {7}, TimeScalar(1));

    const F eta1 = t.pi1 + t.nu1;
    const F eta2 = t.pi1 - TimeScalar(FieldElem(2)) * t.nu1;
    const F eta3 = -t.pi1 + t.nu1;

    const TimeScalar ap0_bs0 = a * t.pi0 - b * t.sigma0;   // alpha pi0 - beta sigma0
    const TimeScalar as0_bp0 = a * t.sigma0 + b * t.pi0;   // alpha sigma0 + beta pi0
    const F ap2_bs2 = a * t.pi2 - b * t.sigma2;
    const F as2_bp2 = a * t.sigma2 + b * t.pi2;

    G2Torsion tor;
    tor.tau0 = TimeScalar(FieldElem(Rational(12, 7))) * ap0_bs0;

    tor.tau1 = TimeScalar(FieldElem(Rational(1, 2))) * as0_bp0 * x7 +
               TimeScalar(FieldElem(Rational(1, 6))) * embed(eta1, 7);

    // f * (1/3) *(eta2 ^ omega^2) ^ ds = (1/3) *(eta2 ^ omega^2) ^ x^7
    tor.tau2 = -embed(as2_bp2, 7) +
               TimeScalar(FieldElem(Rational(1, 3))) *
                   wedge(embed(wedge(eta2, omega_sq6).hodge(), 7), x7) -
               TimeScalar(FieldElem(Rational(1, 3))) *
                   embed(wedge(eta2, a * psi_m6 + b * psi_p6).hodge(), 7);

    const F psi_mix = a * psi_p6 - b * psi_m6;  // alpha psi+ - beta psi-
    F bracket = TimeScalar(FieldElem(Rational(2, 7))) * ap0_bs0 * omega6 -
                TimeScalar(FieldElem(Rational(1, 2))) * wedge(eta3, psi_mix).hodge() + ap2_bs2;
    tor.tau3 = wedge(embed(bracket, 7), x7) -
               TimeScalar(FieldElem(Rational(1, 2))) * embed(wedge(eta3, omega6).hodge(), 7) -
               TimeScalar(FieldElem(Rational(3, 14))) * ap0_bs0 * embed(psi_mix, 7) -
               embed(t.nu3.hodge(), 7);
    return tor;
}

// ---------------------------------------------------------------------------
// Classification
// ---------------------------------------------------------------------------

enum class G2Class {
    parallel,
    nearly_parallel,
    closed,
    coclosed_pure_type,
    locally_conformal_parallel,
    coclosed,
    other
};

inline const char* to_string(G2Class c) {
    switch (c) {
        case G2Class::parallel: return "Parallel";
        case G2Class::nearly_parallel: return "NearlyParallel";
        case G2Class::closed: return "Closed";
        case G2Class::coclosed_pure_type: return "CoclosedPureType";
        case G2Class::locally_conformal_parallel: return "LocallyConformalParallel";
        case G2Class::coclosed: return "Coclosed";
        case G2Class::other: return "Other";
    }
    return "?";
}

struct G2Classification {
    G2Class cls;
    std::vector<std::string> nonzero;
};

inline G2Classification classify_g2(const G2Torsion& tor) {
    G2Classification out;
    bool z0 = tor.tau0.is_zero(), z1 = tor.tau1.is_zero(), z2 = tor.tau2.is_zero(),
         z3 = tor.tau3.is_zero();
    if (!z0) out.nonzero.push_back("tau0");
    if (!z1) out.nonzero.push_back("tau1");
    if (!z2) out.nonzero.push_back("tau2");
    if (!z3) out.nonzero.push_back("tau3");
    if (z0 && z1 && z2 && z3) out.cls = G2Class::parallel;
    else if (!z0 && z1 && z2 && z3) out.cls = G2Class::nearly_parallel;
    else if (z0 && z1 && !z2 && z3) out.cls = G2Class::closed;
    else if (z0 && z1 && z2 && !z3) out.cls = G2Class::coclosed_pure_type;
    else if (z0 && !z1 && z2 && z3) out.cls = G2Class::locally_conformal_parallel;
    else if (z1 && z2) out.cls = G2Class::coclosed;
    else out.cls = G2Class::other;
    return out;
}

// ---------------------------------------------------------------------------
// Vanishing conditions for the warped torsion in terms of the base torsion
// (the constant-warp specialization: the d log f contributions drop).
// ---------------------------------------------------------------------------

struct WarpedClassConditions {
    bool tau0_zero, tau1_zero, tau2_zero, tau3_zero;
    // the individual conditions, in the order
    // (i) a*pi0-b*sigma0, (ii) a*sigma0+b*pi0, (iii) eta1, (iv) eta2,
    // (v) a*sigma2+b*pi2, (vi) = (i), (vii) eta3, (viii) a*pi2-b*sigma2, (ix) nu3
    std::vector<bool> condition;
};

inline WarpedClassConditions warped_class_conditions(const Su3Torsion<TimeScalar>& t,
                                                     const FieldElem& alpha,
                                                     const FieldElem& beta) {
    const TimeScalar a(alpha), b(beta);
    bool i = (a * t.pi0 - b * t.sigma0).is_zero();
    bool ii = (a * t.sigma0 + b * t.pi0).is_zero();
    bool iii = (t.pi1 + t.nu1).is_zero();
    bool iv = (t.pi1 - TimeScalar(FieldElem(2)) * t.nu1).is_zero();
    bool v = (a * t.sigma2 + b * t.pi2).is_zero();
    bool vii = (-t.pi1 + t.nu1).is_zero();
    bool viii = (a * t.pi2 - b * t.sigma2).is_zero();
    bool ix = t.nu3.is_zero();
    WarpedClassConditions out;
    out.condition = {i, ii, iii, iv, v, i, vii, viii, ix};
    out.tau0_zero = i;
    out.tau1_zero = ii && iii;
    out.tau2_zero = iv && v;
    out.tau3_zero = i && vii && viii && ix;
    return out;
}

/// Diagnostic: B(X,Y) vol7 = (1/6) (i_X phi)^(i_Y phi)^phi on the 7-frame.
inline MetricDiagnostic g2_metric_diagnostic(const FieldElem& alpha, const FieldElem& beta) {
    using F = Form<FieldElem>;
    F x7 = F::term(7, {7}, FieldElem(1));
    F phi = wedge(embed(adapted_omega<FieldElem>(), 7), x7) +
            alpha * embed(adapted_psi_plus<FieldElem>(), 7) -
            beta * embed(adapted_psi_minus<FieldElem>(), 7);
    MetricDiagnostic diag;
    diag.diagonal_proportional = true;
    const FieldElem sixth(Rational(1, 6));
    for (int i = 1; i <= 7; ++i) {
        for (int j = 1; j <= 7; ++j) {
            F w = wedge(wedge(phi.contract(i), phi.contract(j)), phi);
            FieldElem value = sixth * w.coefficient(blades::complement(0, 7));
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
