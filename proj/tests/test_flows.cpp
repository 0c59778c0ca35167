#include "coflow/coflow.hpp"
#include "coflow/solver.hpp"

#include <catch2/catch_amalgamated.hpp>

using namespace coflow;
using F = Form<TimeScalar>;

namespace {

F ds() { return F::term(7, {7}, TimeScalar(1)); }

std::vector<Rational> rats(std::initializer_list<Rational> v) { return {v}; }

}  // namespace

TEST_CASE("nearly Kaehler closed-form solution", "[flows]") {
    SECTION("sigma0 = -2, c = 1 reproduces the product-of-spheres flow") {
        auto sol = nk_solution(FieldElem(-2), FieldElem(1));
        CHECK(sol.k == Rational(-6));
        CHECK(sol.beta_or_rate == Rational(1, 2));
        CHECK(sol.validity() == "(-inf, 1/6)");

        auto w = sol.warped_structure();
        TimeScalar front = TimeScalar::power(Rational(-6), Rational(3, 2));
        F phi_h = to_static_frame(w.phi(), w.scaling7);
        F expected_phi =
            front * (wedge(embed(adapted_omega<TimeScalar>(), 7), ds()) -
                     embed(adapted_psi_minus<TimeScalar>(), 7));
        CHECK(phi_h == expected_phi);

        TimeScalar front4 = TimeScalar::power(Rational(-6), Rational(2));
        F star_h = to_static_frame(w.star_phi(), w.scaling7);
        auto omega = adapted_omega<TimeScalar>();
        F expected_star =
            front4 * (TimeScalar(FieldElem(Rational(1, 2))) * embed(wedge(omega, omega), 7) +
                      wedge(embed(adapted_psi_plus<TimeScalar>(), 7), ds()));
        CHECK(star_h == expected_star);

        auto res = coflow_residual(sol);
        CHECK(res.zero());
        CHECK(res.paths_agree);
    }
    SECTION("generic sigma0 = 1") {
        auto sol = nk_solution(FieldElem(1), FieldElem(1));
        CHECK(sol.k == Rational(-3, 2));
        CHECK(sol.validity() == "(-inf, 2/3)");
        CHECK(coflow_residual(sol).zero());
    }
    SECTION("irrational sigma0 with rational square") {
        auto sol = nk_solution(FieldElem::sqrt2(), FieldElem(1));
        CHECK(sol.k == Rational(-3));
        CHECK(coflow_residual(sol).zero());
    }
    SECTION("sigma0 = 0 is rejected") {
        CHECK_THROWS_AS(nk_solution(FieldElem(0), FieldElem(1)), FlowError);
    }
    SECTION("frame factors pair up") {
        auto sol = nk_solution(FieldElem(-2), FieldElem(1));
        auto scaling = sol.base_scaling();
        CHECK(scaling.scale(1) == scaling.scale(2));
        CHECK(scaling.scale(3) == scaling.scale(4));
        CHECK(scaling.scale(5) == scaling.scale(6));
        CHECK(scaling.scale(1) * scaling.scale(2) == scaling.scale(3) * scaling.scale(4));
        CHECK(scaling.scale(3) * scaling.scale(4) == scaling.scale(5) * scaling.scale(6));
    }
}

TEST_CASE("compatibility is preserved along solutions", "[flows]") {
    for (auto sol : {nk_solution(FieldElem(-2), FieldElem(1)), e11e11_solution(FieldElem(1))}) {
        auto w = sol.warped_structure();
        F psi_p = to_static_frame(embed(adapted_psi_plus<TimeScalar>(), 7), w.scaling7);
        F psi_m = to_static_frame(embed(adapted_psi_minus<TimeScalar>(), 7), w.scaling7);
        F omega = to_static_frame(embed(adapted_omega<TimeScalar>(), 7), w.scaling7);
        F omega_cubed = wedge(wedge(omega, omega), omega);
        CHECK(TimeScalar(FieldElem(3)) * wedge(psi_p, psi_m) ==
              TimeScalar(FieldElem(2)) * omega_cubed);
    }
}

TEST_CASE("exponential solution over e(1,1)+e(1,1)", "[flows]") {
    auto sol = e11e11_solution(FieldElem(1));
    CHECK(sol.validity() == "(-inf, inf)");
    CHECK(sol.warp().to_string() == "exp(-2*t)");
    auto res = coflow_residual(sol);
    CHECK(res.zero());
    CHECK(res.paths_agree);
    SECTION("torsion data of the solution") {
        auto base = SU3Structure::make(sol.frame, sol.base_scaling());
        auto tor = su3_torsion(base.table);
        auto table6 = structure_table(sol.frame, sol.base_scaling());
        F expected(6, 3);
        expected.add_term(blades::from_indices({1, 3, 5}, 6), TimeScalar(-2));
        expected.add_term(blades::from_indices({1, 4, 6}, 6), TimeScalar(2));
        expected.add_term(blades::from_indices({2, 3, 6}, 6), TimeScalar(2));
        expected.add_term(blades::from_indices({2, 4, 5}, 6), TimeScalar(2));
        CHECK(d(tor.sigma2, table6) == expected);
    }
    SECTION("wrong-sign warp rate is detected") {
        auto bad = sol;
        bad.beta_or_rate = Rational(2);
        CHECK_FALSE(coflow_residual(bad).zero());
    }
}

TEST_CASE("ansatz solver reproduces the known rows", "[flows][solver]") {
    SECTION("g5,1+R") {
        auto outcome = solve_potential_ansatz(catalog_entry("g5,1+R"));
        REQUIRE(outcome.solutions.size() == 1);
        const auto& sol = outcome.solutions[0];
        CHECK(sol.alphas == rats({Rational(1, 6), Rational(-1, 6), Rational(1, 6),
                                  Rational(-1, 6), Rational(1, 6), Rational(-1, 6)}));
        CHECK(sol.beta_or_rate == Rational(1, 6));
        CHECK(sol.k == Rational(-3));
        CHECK(coflow_residual(sol).zero());
    }
    SECTION("h3") {
        auto outcome = solve_potential_ansatz(catalog_entry("h3"));
        REQUIRE(outcome.solutions.size() == 1);
        const auto& sol = outcome.solutions[0];
        CHECK(sol.alphas == rats({Rational(1, 6), Rational(1, 6), Rational(1, 6), Rational(1, 6),
                                  Rational(-1, 6), Rational(-1, 6)}));
        CHECK(sol.beta_or_rate == Rational(-1, 6));
        CHECK(sol.k == Rational(-12));
    }
    SECTION("h19-") {
        auto outcome = solve_potential_ansatz(catalog_entry("h19-"));
        REQUIRE(outcome.solutions.size() == 1);
        const auto& sol = outcome.solutions[0];
        CHECK(sol.alphas == rats({Rational(1, 2), Rational(1, 2), 0, 0, 0, 0}));
        CHECK(sol.beta_or_rate == Rational(-1, 2));
        CHECK(sol.k == Rational(-2));
    }
    SECTION("A5,17 at a = 2") {
        auto outcome = solve_potential_ansatz(catalog_entry("A5,17", 2));
        REQUIRE(outcome.solutions.size() == 1);
        CHECK(outcome.solutions[0].k == Rational(-16));
        CHECK(outcome.solutions[0].beta_or_rate == Rational(1, 2));
    }
    SECTION("e11e11 falls back to the exponential warp") {
        auto outcome = solve_potential_ansatz(catalog_entry("e11e11"));
        REQUIRE(outcome.solutions.size() == 1);
        const auto& sol = outcome.solutions[0];
        CHECK(sol.warp_kind == WarpKind::exponential);
        CHECK(sol.beta_or_rate == Rational(-2));
        CHECK(sol.alphas == rats({0, 0, 0, 0, 0, 0}));
    }
    SECTION("nearly Kaehler base is rejected") {
        CHECK_THROWS_AS(solve_potential_ansatz(catalog_entry("su2+su2")), FlowError);
    }
}

TEST_CASE("table reproduction", "[flows][solver]") {
    auto report = reproduce_tables({1, 2});
    CHECK(report.all_match);
    REQUIRE(report.shf.size() == 8);  // A5,17 twice
    REQUIRE(report.balanced.size() == 6);
    std::vector<Rational> balanced_k;
    for (const auto& row : report.balanced) balanced_k.push_back(row.solution.k);
    CHECK(balanced_k == rats({Rational(-192), Rational(-12), Rational(-9), Rational(-6),
                              Rational(-3), Rational(-2)}));
    SECTION("every reproduced solution stays in class and coclosed") {
        for (const auto& row : report.balanced) {
            auto res = coflow_residual(row.solution);
            CHECK(res.coclosed);
            CHECK(res.paths_agree);
        }
    }
    SECTION("torsion data columns are rendered") {
        CHECK(report.shf[0].torsion_data != "0");
        CHECK(report.balanced[0].torsion_data != "0");
    }
}

TEST_CASE("perturbing any solved parameter breaks the residual", "[flows][solver]") {
    const Rational delta(1, 100);
    auto check_sensitivity = [&](const FlowSolution& sol) {
        std::vector<std::string> names = {"alpha1", "alpha2", "alpha3",
                                          "alpha4", "alpha5", "alpha6"};
        names.push_back(sol.warp_kind == WarpKind::power ? "beta" : "rate");
        names.push_back("k");
        for (const auto& name : names) {
            INFO(sol.algebra << " perturbing " << name);
            CHECK_FALSE(coflow_residual(perturb(sol, name, delta)).zero());
        }
    };
    check_sensitivity(nk_solution(FieldElem(-2), FieldElem(1)));
    check_sensitivity(e11e11_solution(FieldElem(1)));
    check_sensitivity(solve_potential_ansatz(catalog_entry("g5,1+R")).solutions.at(0));
    check_sensitivity(solve_potential_ansatz(catalog_entry("h19-")).solutions.at(0));
}

TEST_CASE("closed-flow system assembly", "[flows]") {
    SECTION("abelian base: zero right-hand sides") {
        auto base = SU3Structure::unit(parse_structure_equations("(0,0,0,0,0,0)", 6));
        auto w = WarpedG2Structure::make(base, TimeScalar(1), FieldElem(1), FieldElem(0));
        auto sys = assemble_flow_system_closed(w);
        CHECK(sys.lhs1.is_zero());
        CHECK(sys.lhs2.is_zero());
        CHECK(sys.rhs2.is_zero());
    }
    SECTION("SHF base at (1,0): rhs is -d sigma2") {
        auto base = SU3Structure::unit(catalog_entry("e11e11").frame);
        auto w = WarpedG2Structure::make(base, TimeScalar(1), FieldElem(1), FieldElem(0));
        auto sys = assemble_flow_system_closed(w);
        auto tor = su3_torsion(w.base.table);
        auto table6 = structure_table(w.base.frame, w.base.scaling);
        CHECK(sys.rhs2 == -d(tor.sigma2, table6));
        CHECK(sys.rendered.find("a*dt psi+(t)") != std::string::npos);
    }
    SECTION("non-closed structure is rejected") {
        auto base = SU3Structure::unit(catalog_entry("h3").frame);
        auto w = WarpedG2Structure::make(base, TimeScalar(1), FieldElem(0), FieldElem(1));
        CHECK_THROWS_AS(assemble_flow_system_closed(w), FlowError);
    }
}

TEST_CASE("coclosed side conditions hold along accepted solutions", "[flows]") {
    for (const auto& id : {"g5,1+R", "h3"}) {
        auto sol = solve_potential_ansatz(catalog_entry(id)).solutions.at(0);
        auto sys = assemble_flow_system_coclosed(sol.warped_structure());
        INFO(id);
        CHECK(sys.side_conditions);
    }
}
