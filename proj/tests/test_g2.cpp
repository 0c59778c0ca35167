#include "coflow/catalog.hpp"
#include "coflow/g2.hpp"
#include "coflow/laplacian.hpp"

#include <catch2/catch_amalgamated.hpp>

#include <random>

using namespace coflow;
using blades::Blade;
using F = Form<TimeScalar>;

namespace {

std::mt19937 rng(98231u);

FrameScaling random_power_scaling(const Rational& k) {
    std::uniform_int_distribution<int> num(-2, 2);
    std::uniform_int_distribution<int> den(1, 4);
    std::vector<Rational> alphas;
    for (int i = 0; i < 6; ++i) alphas.emplace_back(num(rng), den(rng));
    return FrameScaling::power(k, alphas);
}

WarpedG2Structure unit_warped(const std::string& id, const FieldElem& alpha,
                              const FieldElem& beta, const TimeScalar& warp = TimeScalar(1)) {
    return WarpedG2Structure::make(SU3Structure::unit(catalog_entry(id).frame), warp, alpha, beta);
}

const std::vector<std::pair<FieldElem, FieldElem>>& orientations() {
    static const std::vector<std::pair<FieldElem, FieldElem>> pairs = {
        {FieldElem(1), FieldElem(0)},
        {FieldElem(0), FieldElem(1)},
        {FieldElem(Rational(3, 5)), FieldElem(Rational(4, 5))},
    };
    return pairs;
}

Coframe abelian() { return parse_structure_equations("(0,0,0,0,0,0)", 6); }

}  // namespace

TEST_CASE("phi and its star", "[g2]") {
    SECTION("orientation (1,0), unit warp, abelian base") {
        auto w = WarpedG2Structure::make(SU3Structure::unit(abelian()), TimeScalar(1),
                                         FieldElem(1), FieldElem(0));
        auto pair = build_phi(w);
        F expected = wedge(embed(adapted_omega<TimeScalar>(), 7), F::term(7, {7}, TimeScalar(1))) +
                     embed(adapted_psi_plus<TimeScalar>(), 7);
        CHECK(pair.phi == expected);
    }
    SECTION("orientation (0,1), warp c: phi = c omega ^ ds - psi- in the static frame") {
        FieldElem c(3);
        auto w = unit_warped("su2+su2", FieldElem(0), FieldElem(1), TimeScalar(c));
        auto pair = build_phi(w);
        F phi_h = to_static_frame(pair.phi, w.scaling7);
        F expected = TimeScalar(c) * wedge(embed(adapted_omega<TimeScalar>(), 7),
                                           F::term(7, {7}, TimeScalar(1))) -
                     embed(adapted_psi_minus<TimeScalar>(), 7);
        CHECK(phi_h == expected);
    }
    SECTION("star phi = (1/2) omega^2 + c psi+ ^ ds in the static frame") {
        FieldElem c(3);
        auto w = unit_warped("su2+su2", FieldElem(0), FieldElem(1), TimeScalar(c));
        auto star_h = to_static_frame(build_phi(w).star_phi, w.scaling7);
        auto omega = adapted_omega<TimeScalar>();
        F expected = TimeScalar(FieldElem(Rational(1, 2))) * embed(wedge(omega, omega), 7) +
                     TimeScalar(c) * wedge(embed(adapted_psi_plus<TimeScalar>(), 7),
                                           F::term(7, {7}, TimeScalar(1)));
        CHECK(star_h == expected);
    }
    SECTION("orientation must sit on the unit circle") {
        CHECK_THROWS_AS(unit_warped("h3", FieldElem(1), FieldElem(1)), StructureError);
    }
}

TEST_CASE("star operators of base and warped product are related", "[g2][exterior-properties]") {
    // *7 eta = f *6 eta ^ ds   and   *7 (eta ^ ds) = (-1)^k f^-1 *6 eta,
    // for every basis monomial eta of every degree, checked in the static
    // frame with a nontrivial warp and base scaling.
    Rational k(-6);
    auto base_scaling = random_power_scaling(k);
    TimeScalar f = TimeScalar::power(k, Rational(1, 2), FieldElem(Rational(5, 2)));
    auto scaling7 = base_scaling.extended(f);
    F ds = F::term(7, {7}, TimeScalar(1));
    for (int deg = 0; deg <= 6; ++deg) {
        for (Blade b : blades::all(6, deg)) {
            F eta(6, deg);
            eta.add_term(b, TimeScalar(1));
            F star6 = hodge_scaled(eta, base_scaling);
            CHECK(hodge_scaled(embed(eta, 7), scaling7) == f * wedge(embed(star6, 7), ds));
            F eta_ds = wedge(embed(eta, 7), ds);
            F rhs = f.monomial_inverse() * embed(star6, 7);
            CHECK(hodge_scaled(eta_ds, scaling7) == (deg % 2 == 0 ? rhs : -rhs));
        }
    }
}

TEST_CASE("direct torsion on model cases", "[g2]") {
    SECTION("torsion-free: abelian base, constant warp") {
        for (const auto& [alpha, beta] : orientations()) {
            auto w = WarpedG2Structure::make(SU3Structure::unit(abelian()),
                                             TimeScalar(FieldElem(Rational(7, 5))), alpha, beta);
            auto tor = g2_torsion_direct(w);
            CHECK(tor.tau0.is_zero());
            CHECK(tor.tau1.is_zero());
            CHECK(tor.tau2.is_zero());
            CHECK(tor.tau3.is_zero());
            CHECK(classify_g2(tor).cls == G2Class::parallel);
        }
    }
    SECTION("nearly Kaehler base, orientation (0,1): tau0 = 24/7 and pure tau3 remainder") {
        auto w = unit_warped("su2+su2", FieldElem(0), FieldElem(1), TimeScalar(FieldElem(2)));
        auto tor = g2_torsion_direct(w);
        CHECK(tor.tau0 == TimeScalar(FieldElem(Rational(24, 7))));
        CHECK(tor.tau1.is_zero());
        CHECK(tor.tau2.is_zero());
        F expected_tau3 =
            TimeScalar(FieldElem(Rational(4, 7))) *
                wedge(embed(adapted_omega<TimeScalar>(), 7), F::term(7, {7}, TimeScalar(1))) +
            TimeScalar(FieldElem(Rational(3, 7))) * embed(adapted_psi_minus<TimeScalar>(), 7);
        CHECK(tor.tau3 == expected_tau3);
        CHECK(classify_g2(tor).cls == G2Class::coclosed);
    }
    SECTION("balanced base h3, orientation (0,1), unit warp: tau3 = -*6 nu3") {
        auto w = unit_warped("h3", FieldElem(0), FieldElem(1));
        auto tor = g2_torsion_direct(w);
        CHECK(tor.tau0.is_zero());
        CHECK(tor.tau1.is_zero());
        CHECK(tor.tau2.is_zero());
        auto nu3 = w.base_torsion().nu3;
        CHECK(tor.tau3 == -embed(nu3.hodge(), 7));
        CHECK(classify_g2(tor).cls == G2Class::coclosed_pure_type);
    }
    SECTION("SHF base, orientation (0,1): tau2 vanishes, structure is coclosed") {
        auto w = unit_warped("e11e11", FieldElem(0), FieldElem(1));
        auto tor = g2_torsion_direct(w);
        CHECK(tor.tau1.is_zero());
        CHECK(tor.tau2.is_zero());
        CHECK(g2_torsion_warped(w.base_torsion(), w) == tor);
    }
}

TEST_CASE("warped torsion formulas agree with the direct computation",
          "[g2][exterior-properties]") {
    for (const auto& entry : catalog()) {
        for (const auto& [alpha, beta] : orientations()) {
            SU3Structure base = SU3Structure::unit(entry.frame);
            auto w = WarpedG2Structure::make(base, TimeScalar(FieldElem(Rational(3, 2))), alpha,
                                             beta);
            INFO(entry.id << " alpha=" << alpha.to_string() << " beta=" << beta.to_string());
            auto direct = g2_torsion_direct(w);
            auto warped = g2_torsion_warped(su3_torsion(w.base.table), w);
            CHECK(direct == warped);
        }
    }
}

TEST_CASE("warped torsion agreement under random admissible scalings",
          "[g2][exterior-properties]") {
    Rational k(-4);
    for (const auto& id : {"su2+su2", "g5,1+R", "g6,54", "h2", "h19-"}) {
        auto scaling = random_power_scaling(k);
        TimeScalar warp = TimeScalar::power(k, Rational(1, 3), FieldElem(2));
        auto base = SU3Structure::make(catalog_entry(id).frame, scaling);
        for (const auto& [alpha, beta] : orientations()) {
            auto w = WarpedG2Structure::make(base, warp, alpha, beta);
            INFO(id);
            CHECK(g2_torsion_direct(w) == g2_torsion_warped(su3_torsion(base.table), w));
        }
    }
}

TEST_CASE("no nearly parallel structures arise: tau3 = 0 forces tau0 = 0", "[g2]") {
    for (const auto& entry : catalog()) {
        for (const auto& [alpha, beta] : orientations()) {
            auto w = WarpedG2Structure::make(SU3Structure::unit(entry.frame), TimeScalar(1),
                                             alpha, beta);
            auto tor = g2_torsion_direct(w);
            INFO(entry.id);
            if (tor.tau3.is_zero()) CHECK(tor.tau0.is_zero());
            CHECK(classify_g2(tor).cls != G2Class::nearly_parallel);
        }
    }
}

TEST_CASE("classification patterns", "[g2]") {
    G2Torsion tor{TimeScalar(), F(7, 1), F(7, 2), F(7, 3)};
    CHECK(classify_g2(tor).cls == G2Class::parallel);
    tor.tau0 = TimeScalar(FieldElem(Rational(24, 7)));
    CHECK(classify_g2(tor).cls == G2Class::nearly_parallel);
    tor.tau3.add_term(blades::from_indices({1, 2, 3}, 7), TimeScalar(1));
    CHECK(classify_g2(tor).cls == G2Class::coclosed);
    tor.tau0 = TimeScalar();
    CHECK(classify_g2(tor).cls == G2Class::coclosed_pure_type);
    tor.tau1.add_term(blades::from_indices({1}, 7), TimeScalar(1));
    CHECK(classify_g2(tor).cls == G2Class::other);
    CHECK(classify_g2(tor).nonzero == std::vector<std::string>{"tau1", "tau3"});
}

TEST_CASE("vanishing conditions report", "[g2]") {
    SECTION("SHF base with orientation (0,1) is coclosed") {
        auto tor6 = SU3Structure::unit(catalog_entry("e11e11").frame).torsion();
        auto cond = warped_class_conditions(tor6, FieldElem(0), FieldElem(1));
        CHECK(cond.tau1_zero);
        CHECK(cond.tau2_zero);
        CHECK_FALSE(cond.tau3_zero);
    }
    SECTION("torsion-free base satisfies every condition") {
        auto tor6 = SU3Structure::unit(abelian()).torsion();
        auto cond = warped_class_conditions(tor6, FieldElem(Rational(3, 5)),
                                            FieldElem(Rational(4, 5)));
        CHECK(cond.tau0_zero);
        CHECK(cond.tau1_zero);
        CHECK(cond.tau2_zero);
        CHECK(cond.tau3_zero);
    }
    SECTION("nearly Kaehler base with orientation (1,0) is not coclosed") {
        auto tor6 = SU3Structure::unit(catalog_entry("su2+su2").frame).torsion();
        auto cond = warped_class_conditions(tor6, FieldElem(1), FieldElem(0));
        CHECK(cond.tau0_zero);
        CHECK_FALSE(cond.tau1_zero);
        CHECK(cond.tau3_zero);
    }
    SECTION("conditions match the computed torsion on the catalog") {
        for (const auto& entry : catalog()) {
            for (const auto& [alpha, beta] : orientations()) {
                auto w = WarpedG2Structure::make(SU3Structure::unit(entry.frame), TimeScalar(1),
                                                 alpha, beta);
                auto tor6 = su3_torsion(w.base.table);
                auto tor7 = g2_torsion_direct(w);
                auto cond = warped_class_conditions(tor6, alpha, beta);
                INFO(entry.id);
                CHECK(cond.tau0_zero == tor7.tau0.is_zero());
                CHECK(cond.tau1_zero == tor7.tau1.is_zero());
                CHECK(cond.tau2_zero == tor7.tau2.is_zero());
                CHECK(cond.tau3_zero == tor7.tau3.is_zero());
            }
        }
    }
}

TEST_CASE("metric recovery diagnostic on the 7-frame", "[g2]") {
    for (const auto& [alpha, beta] : orientations()) {
        auto diag = g2_metric_diagnostic(alpha, beta);
        CHECK(diag.diagonal_proportional);
        CHECK(!diag.constant.is_zero());
        INFO("constant: " << diag.constant.to_string());
    }
}

TEST_CASE("Laplacian of torsion-free structures vanishes", "[laplacian]") {
    auto w = WarpedG2Structure::make(SU3Structure::unit(abelian()), TimeScalar(1), FieldElem(1),
                                     FieldElem(0));
    CHECK(laplacian7(w.phi(), w).is_zero());
    CHECK(laplacian7(w.star_phi(), w).is_zero());
}

TEST_CASE("Laplacian commutes with the Hodge star on phi", "[laplacian]") {
    for (const auto& entry : catalog()) {
        for (const auto& [alpha, beta] : orientations()) {
            auto w = WarpedG2Structure::make(SU3Structure::unit(entry.frame),
                                             TimeScalar(FieldElem(2)), alpha, beta);
            auto phi = w.phi();
            INFO(entry.id);
            CHECK(laplacian7(phi, w).hodge() == laplacian7(phi.hodge(), w));
        }
    }
}

TEST_CASE("Laplacian on 3-forms matches the star-d composition formula", "[laplacian]") {
    // On 3-forms  Delta = *d*d - d*d*  (the two codifferential signs differ).
    auto w = unit_warped("g6,38", FieldElem(Rational(3, 5)), FieldElem(Rational(4, 5)));
    auto phi = w.phi();
    auto direct = laplacian7(phi, w);
    auto spelled = w.d7(w.d7(phi).hodge()).hodge() - w.d7(w.d7(phi.hodge()).hodge());
    CHECK(direct == spelled);
}

TEST_CASE("closed-case Laplacian formula", "[laplacian]") {
    SECTION("SHF bases with orientation (1,0) are closed; formula matches direct") {
        for (const auto& id : {"e11e11", "g5,1+R", "A5,7", "g6,54"}) {
            auto w = unit_warped(id, FieldElem(1), FieldElem(0));
            auto tor6 = su3_torsion(w.base.table);
            INFO(id);
            CHECK(w.d7(w.phi()).is_zero());
            CHECK_NOTHROW(laplacian_closed_formula(w, tor6));
        }
    }
    SECTION("abelian base: closed with zero Laplacian") {
        auto w = WarpedG2Structure::make(SU3Structure::unit(abelian()), TimeScalar(1),
                                         FieldElem(0), FieldElem(1));
        CHECK(laplacian_closed_formula(w, su3_torsion(w.base.table)).is_zero());
    }
    SECTION("non-closed base raises the precondition error") {
        auto w = unit_warped("h3", FieldElem(0), FieldElem(1));
        CHECK_THROWS_AS(laplacian_closed_formula(w, su3_torsion(w.base.table)), FlowError);
    }
}

TEST_CASE("coclosed-case Laplacian formula", "[laplacian]") {
    SECTION("nearly Kaehler base at (0,1): Delta *phi = 6 omega^2 + 12 psi+ ^ x7") {
        auto w = unit_warped("su2+su2", FieldElem(0), FieldElem(1), TimeScalar(FieldElem(2)));
        auto rhs = laplacian_coclosed_formula(w, su3_torsion(w.base.table));
        auto omega = adapted_omega<TimeScalar>();
        F expected = TimeScalar(FieldElem(6)) * embed(wedge(omega, omega), 7) +
                     TimeScalar(FieldElem(12)) * wedge(embed(adapted_psi_plus<TimeScalar>(), 7),
                                                       F::term(7, {7}, TimeScalar(1)));
        CHECK(rhs == expected);
    }
    SECTION("balanced base at (0,1): Delta *phi = -d6(*6 nu3)") {
        auto w = unit_warped("h3", FieldElem(0), FieldElem(1));
        auto tor6 = su3_torsion(w.base.table);
        auto table6 = structure_table(w.base.frame, w.base.scaling);
        CHECK(laplacian_coclosed_formula(w, tor6) == -embed(d(tor6.nu3.hodge(), table6), 7));
    }
    SECTION("balanced bases are coclosed for every orientation") {
        for (const auto& [alpha, beta] : orientations()) {
            auto w = unit_warped("h5", alpha, beta);
            CHECK_NOTHROW(laplacian_coclosed_formula(w, su3_torsion(w.base.table)));
        }
    }
    SECTION("torsion-free base gives zero") {
        auto w = WarpedG2Structure::make(SU3Structure::unit(abelian()), TimeScalar(1),
                                         FieldElem(0), FieldElem(1));
        CHECK(laplacian_coclosed_formula(w, su3_torsion(w.base.table)).is_zero());
    }
    SECTION("violated precondition raises") {
        auto w = unit_warped("su2+su2", FieldElem(1), FieldElem(0));
        CHECK_THROWS_AS(laplacian_coclosed_formula(w, su3_torsion(w.base.table)), FlowError);
    }
}
