#pragma once

#include "coflow/catalog.hpp"
#include "coflow/laplacian.hpp"

#include <string>
#include <vector>

namespace coflow {

enum class WarpKind { power, exponential };

/// A candidate (or verified) solution of the coflow
///     dt(*phi(t)) = -Delta(*phi(t)),
/// given by frame exponents f_i = (1+kt)^alpha_i and a warp of potential or
/// exponential type.  The orientation of the defining 3-form is (0,1).
struct FlowSolution {
    std::string algebra;
    Su3Family family;
    Coframe frame;
    std::vector<Rational> alphas;  // six frame exponents
    WarpKind warp_kind = WarpKind::power;
    Rational beta_or_rate;  // warp exponent (power) or warp rate (exponential)
    Rational k;             // ring constant; a nominal nonzero value for
                            // exponential warps, where only alphas use it
    FieldElem c = FieldElem(1);

    TimeScalar warp() const {
        if (warp_kind == WarpKind::power) return TimeScalar::power(k, beta_or_rate, c);
        return TimeScalar::exponential(beta_or_rate, c);
    }
    FrameScaling base_scaling() const { return FrameScaling::power(k, alphas); }

    /// Interval around t = 0 on which 1+kt > 0 (all of R for k = 0 or a
    /// purely exponential solution with static frame).
    std::string validity() const {
        bool uses_k = warp_kind == WarpKind::power;
        for (const auto& a : alphas)
            if (a != 0) uses_k = true;
        if (!uses_k || k == 0) return "(-inf, inf)";
        Rational bound = Rational(-1) / k;
        if (k < 0) return "(-inf, " + to_string(bound) + ")";
        return "(" + to_string(bound) + ", inf)";
    }

    WarpedG2Structure warped_structure() const {
        auto base = SU3Structure::make(frame, base_scaling());
        return WarpedG2Structure::make(std::move(base), warp(), FieldElem(0), FieldElem(1));
    }
};

/// Parameter names accepted by perturb(): alpha1..alpha6, beta, rate, k.
/// On an exponential solution "k" (and "beta") address the rate, since the
/// rate is the only solved warp parameter there.
inline FlowSolution perturb(FlowSolution sol, const std::string& name, const Rational& delta) {
    if (name.rfind("alpha", 0) == 0 && name.size() == 6 && name[5] >= '1' && name[5] <= '6') {
        sol.alphas[name[5] - '1'] += delta;
    } else if (name == "beta" || name == "rate") {
        sol.beta_or_rate += delta;
    } else if (name == "k") {
        if (sol.warp_kind == WarpKind::exponential) sol.beta_or_rate += delta;  // rate alias
        else sol.k += delta;
    } else {
        throw FlowError("unknown perturbation target: " + name);
    }
    return sol;
}

// ---------------------------------------------------------------------------
// Flow equation assembly
// ---------------------------------------------------------------------------

/// The coclosed-flow system for orientation (alpha, beta), as exact residual
/// forms on the base (zero iff the family satisfies the coflow), plus the
/// side conditions demanded of a coclosed warped structure.
struct CoclosedSystem {
    Form<TimeScalar> eq1;  // 4-form: dt omega^2 - (coflow right-hand side)
    Form<TimeScalar> eq2;  // 3-form: fiber equation residual
    bool side_conditions;  // alpha*sigma_i + beta*pi_i = 0 for i = 0,2
    std::string rendered;
};

inline CoclosedSystem assemble_flow_system_coclosed(const WarpedG2Structure& w) {
    using F = Form<TimeScalar>;
    const TimeScalar a(w.alpha), b(w.beta);
    auto tor = su3_torsion(w.base.table);
    auto table6 = structure_table(w.base.frame, w.base.scaling);
    const F omega = adapted_omega<TimeScalar>();
    const F psi_p = adapted_psi_plus<TimeScalar>();
    const F psi_m = adapted_psi_minus<TimeScalar>();
    const F omega_sq = wedge(omega, omega);
    const TimeScalar A = a * tor.pi0 - b * tor.sigma0;
    const F ap2_bs2 = a * tor.pi2 - b * tor.sigma2;
    const TimeScalar logf = w.warp.ddt() * w.warp.monomial_inverse();

    CoclosedSystem out{F(6, 4), F(6, 3), false, {}};
    // Scalar torsion forms are invariant functions: their d6-terms vanish.
    out.eq1 = ddt(omega_sq, w.base.scaling) + TimeScalar(FieldElem(3)) * A * A * omega_sq -
              TimeScalar(FieldElem(3)) * A * wedge(ap2_bs2, omega) -
              TimeScalar(FieldElem(2)) * d(tor.nu3.hodge(), table6);
    out.eq2 = logf * (b * psi_p + a * psi_m) + b * ddt(psi_p, w.base.scaling) +
              a * ddt(psi_m, w.base.scaling) +
              A * (TimeScalar(FieldElem(-3)) * tor.sigma0 * psi_p +
                   TimeScalar(FieldElem(3)) * tor.pi0 * psi_m +
                   TimeScalar(FieldElem(2)) * tor.nu3) +
              d(ap2_bs2, table6);
    out.side_conditions = (a * tor.sigma0 + b * tor.pi0).is_zero() &&
                          (a * tor.sigma2 + b * tor.pi2).is_zero();
    out.rendered =
        "dt omega^2(t) = -3*(a*pi0-b*sigma0)^2*omega^2(t) "
        "+ 3*(a*pi0-b*sigma0)*(a*pi2-b*sigma2)^omega(t) + 2*d6(*6 nu3(t))\n"
        "(f'/f)*(b*psi+(t)+a*psi-(t)) + b*dt psi+(t) + a*dt psi-(t) = "
        "-(a*pi0-b*sigma0)*(-3*sigma0(t)*psi+(t)+3*pi0(t)*psi-(t)+2*nu3(t)) "
        "- d6(a*pi2(t)-b*sigma2(t))\n"
        "residual eq1: " + out.eq1.to_string() + "\n" +
        "residual eq2: " + out.eq2.to_string() + "\n";
    return out;
}

/// The closed-flow system (assembly only, no solver): for a closed warped
/// structure the flow reduces to
///     f'(t) omega(t) + f(t) dt omega(t) = 0
///     a dt psi+(t) - b dt psi-(t) = -d6(a sigma2(t) + b pi2(t)).
struct ClosedSystem {
    Form<TimeScalar> lhs1;       // 2-form
    Form<TimeScalar> lhs2, rhs2; // 3-forms
    std::string rendered;
};

inline ClosedSystem assemble_flow_system_closed(const WarpedG2Structure& w) {
    using F = Form<TimeScalar>;
    if (!w.d7(w.phi()).is_zero())
        throw FlowError("structure is not closed: the closed-flow system does not apply");
    const TimeScalar a(w.alpha), b(w.beta);
    auto tor = su3_torsion(w.base.table);
    auto table6 = structure_table(w.base.frame, w.base.scaling);
    ClosedSystem out;
    out.lhs1 = w.warp.ddt() * adapted_omega<TimeScalar>() +
               w.warp * ddt(adapted_omega<TimeScalar>(), w.base.scaling);
    out.lhs2 = a * ddt(adapted_psi_plus<TimeScalar>(), w.base.scaling) -
               b * ddt(adapted_psi_minus<TimeScalar>(), w.base.scaling);
    out.rhs2 = -d(a * tor.sigma2 + b * tor.pi2, table6);
    out.rendered =
        "f'(t)*omega(t) + f(t)*dt omega(t) = 0\n"
        "a*dt psi+(t) - b*dt psi-(t) = -d6(a*sigma2(t) + b*pi2(t))\n"
        "lhs1: " + out.lhs1.to_string() + "\n" +
        "lhs2: " + out.lhs2.to_string() + "\n" +
        "rhs2: " + out.rhs2.to_string() + "\n";
    return out;
}

// ---------------------------------------------------------------------------
// Residual verification
// ---------------------------------------------------------------------------

struct CoflowResidual {
    Form<TimeScalar> eq1;    // reduced system, first equation (base 4-form)
    Form<TimeScalar> eq2;    // reduced system, second equation (base 3-form)
    Form<TimeScalar> frame;  // dt(*phi) + Delta7(*phi) on the 7-frame
    bool coclosed = false;       // d *phi(t) = 0 identically
    bool paths_agree = false;    // frame = (1/2) eq1 + eq2 ^ x^7

    bool zero() const {
        return eq1.is_zero() && eq2.is_zero() && frame.is_zero() && coclosed;
    }
};

/// Exact residual of the coflow for a warped structure with orientation
/// (0,1): both the reduced two-equation system and the frame-level form
/// dt(*phi) + Delta(*phi) are evaluated; for genuinely coclosed families the
/// two assemblies agree identically.
inline CoflowResidual coflow_residual_of(const WarpedG2Structure& w) {
    using F = Form<TimeScalar>;
    CoflowResidual out;
    auto sys = assemble_flow_system_coclosed(w);
    out.eq1 = sys.eq1;
    out.eq2 = sys.eq2;
    const F star_phi = w.star_phi();
    out.coclosed = w.d7(star_phi).is_zero() && sys.side_conditions;
    out.frame = ddt(star_phi, w.scaling7) + laplacian7(star_phi, w.table7);
    F combined = TimeScalar(FieldElem(Rational(1, 2))) * embed(out.eq1, 7) +
                 wedge(embed(out.eq2, 7), F::term(7, {7}, TimeScalar(1)));
    out.paths_agree = (combined == out.frame);
    return out;
}

inline CoflowResidual coflow_residual(const FlowSolution& sol) {
    return coflow_residual_of(sol.warped_structure());
}

// ---------------------------------------------------------------------------
// The nearly Kaehler closed-form solution
// ---------------------------------------------------------------------------

/// Closed-form coflow solution over a nearly Kaehler base with torsion
/// scalar sigma0: every frame factor is (1+kt)^(1/2) and the warp is
/// c (1+kt)^(1/2) with k = -3 sigma0^2 / 2; valid for 1 + kt > 0.
/// Requires sigma0 != 0 with sigma0^2 rational (so that k is rational).
inline FlowSolution nk_solution(const FieldElem& sigma0, const FieldElem& c) {
    if (sigma0.is_zero())
        throw FlowError("sigma0 = 0 is the torsion-free case; the structure is stationary");
    if (c.is_zero()) throw FlowError("warp amplitude c must be nonzero");
    FieldElem s0sq = sigma0 * sigma0;
    if (!s0sq.is_rational())
        throw FlowError("sigma0^2 must be rational for a potential-type solution");

    // Rescale the model structure constants so the base has the requested
    // sigma0 (the catalog structure carries sigma0 = -2; d scales linearly).
    Coframe frame = catalog_entry("su2+su2").frame;
    FieldElem factor = -sigma0 * FieldElem(Rational(1, 2));
    for (auto& dh : frame.d_table)
        dh = dh.map_coefficients(
            [&](blades::Blade, const FieldElem& coeff) { return factor * coeff; });
    frame.name = "nk(sigma0=" + sigma0.to_string() + ")";

    FlowSolution sol;
    sol.algebra = frame.name;
    sol.family = Su3Family::nearly_kahler;
    sol.frame = std::move(frame);
    sol.alphas.assign(6, Rational(1, 2));
    sol.warp_kind = WarpKind::power;
    sol.beta_or_rate = Rational(1, 2);
    sol.k = Rational(-3, 2) * s0sq.as_rational();
    sol.c = c;
    return sol;
}

/// The fixed exponential-warp solution over e(1,1)+e(1,1): static frame,
/// f(t) = c exp(-2t), valid for all t.  The nominal ring constant makes
/// frame-exponent perturbations observable.
inline FlowSolution e11e11_solution(const FieldElem& c) {
    if (c.is_zero()) throw FlowError("warp amplitude c must be nonzero");
    FlowSolution sol;
    sol.algebra = "e11e11";
    sol.family = Su3Family::symplectic_half_flat;
    sol.frame = catalog_entry("e11e11").frame;
    sol.alphas.assign(6, Rational(0));
    sol.warp_kind = WarpKind::exponential;
    sol.beta_or_rate = Rational(-2);
    sol.k = Rational(-1);
    sol.c = c;
    return sol;
}

}  // namespace coflow
