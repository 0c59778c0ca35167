#pragma once

#include "coflow/g2.hpp"

namespace coflow {

struct FlowError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Codifferential on the orthonormal 7-frame: delta = (-1)^k * d * on k-forms.
inline Form<TimeScalar> codifferential7(const Form<TimeScalar>& a,
                                        const std::vector<Form<TimeScalar>>& table7) {
    Form<TimeScalar> out = d(a.hodge(), table7).hodge();
    return (a.degree() % 2 == 0) ? out : -out;
}

/// Hodge Laplacian d delta + delta d with respect to the warped metric at
/// frozen t (the structure table already carries the time dependence).
inline Form<TimeScalar> laplacian7(const Form<TimeScalar>& a,
                                   const std::vector<Form<TimeScalar>>& table7) {
    Form<TimeScalar> out(a.dim(), a.degree());
    if (a.degree() > 0) out += d(codifferential7(a, table7), table7);
    if (a.degree() < a.dim()) out += codifferential7(d(a, table7), table7);
    return out;
}

inline Form<TimeScalar> laplacian7(const Form<TimeScalar>& a, const WarpedG2Structure& w) {
    return laplacian7(a, w.table7);
}

/// Laplacian of a closed warped structure from the base torsion:
/// Delta phi = -d6(alpha sigma2 + beta pi2) for constant warp.  Verified
/// against the direct Hodge Laplacian before returning.
inline Form<TimeScalar> laplacian_closed_formula(const WarpedG2Structure& w,
                                                 const Su3Torsion<TimeScalar>& t) {
    const Form<TimeScalar> phi = w.phi();
    if (!w.d7(phi).is_zero()) throw FlowError("structure is not closed: d phi != 0");
    auto table6 = structure_table(w.base.frame, w.base.scaling);
    Form<TimeScalar> rhs =
        -embed(d(TimeScalar(w.alpha) * t.sigma2 + TimeScalar(w.beta) * t.pi2, table6), 7);
    if (!(rhs == laplacian7(phi, w)))
        throw FlowError("closed-case Laplacian formula disagrees with the direct computation");
    return rhs;
}

/// Laplacian of the dual 4-form of a coclosed warped structure with constant
/// warp, from the base torsion:
///
///   Delta *phi = (3/2)(a pi0 - b sigma0) [ (a pi0 - b sigma0) omega^2
///                  - (a pi2 - b sigma2) ^ omega ] - d6(*6 nu3)
///                + f [ (a pi0 - b sigma0)(-3 sigma0 psi+ + 3 pi0 psi- + 2 nu3)
///                  + d6(a pi2 - b sigma2) ] ^ ds.
///
/// Scalar torsion forms are invariant functions here, so their d6-terms drop.
/// Verified against the direct Hodge Laplacian of *phi before returning.
inline Form<TimeScalar> laplacian_coclosed_formula(const WarpedG2Structure& w,
                                                   const Su3Torsion<TimeScalar>& t) {
    using F = Form<TimeScalar>;
    const F star_phi = w.star_phi();
    if (!w.d7(star_phi).is_zero()) throw FlowError("structure is not coclosed: d *phi != 0");
    auto table6 = structure_table(w.base.frame, w.base.scaling);
    const TimeScalar a(w.alpha), b(w.beta);
    const TimeScalar ap0_bs0 = a * t.pi0 - b * t.sigma0;
    const F ap2_bs2 = a * t.pi2 - b * t.sigma2;
    const F omega6 = adapted_omega<TimeScalar>();
    const F omega_sq6 = wedge(omega6, omega6);
    const F x7 = F::term(7, {7}, TimeScalar(1));

    F base_part = TimeScalar(FieldElem(Rational(3, 2))) * ap0_bs0 *
                      (ap0_bs0 * omega_sq6 - wedge(ap2_bs2, omega6)) -
                  d(t.nu3.hodge(), table6);
    F fiber_bracket = ap0_bs0 * (TimeScalar(FieldElem(-3)) * t.sigma0 *
                                     adapted_psi_plus<TimeScalar>() +
                                 TimeScalar(FieldElem(3)) * t.pi0 * adapted_psi_minus<TimeScalar>() +
                                 TimeScalar(FieldElem(2)) * t.nu3) +
                     d(ap2_bs2, table6);
    F rhs = embed(base_part, 7) + wedge(embed(fiber_bracket, 7), x7);
    if (!(rhs == laplacian7(star_phi, w)))
        throw FlowError("coclosed-case Laplacian formula disagrees with the direct computation");
    return rhs;
}

}  // namespace coflow
