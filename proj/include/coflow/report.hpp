#pragma once

#include "coflow/coflow.hpp"
#include "coflow/solver.hpp"

#include <json.hpp>

#include <string>

namespace coflow {

using json = nlohmann::json;

/// SU(3) torsion report: every scalar and form as an exact rendering.
inline json torsion_report(const std::string& algebra, const Su3Torsion<TimeScalar>& tor) {
    auto cls = classify_su3(tor);
    return json{{"algebra", algebra},
                {"sigma0", tor.sigma0.to_string()},
                {"pi0", tor.pi0.to_string()},
                {"pi1", tor.pi1.to_string()},
                {"nu1", tor.nu1.to_string()},
                {"pi2", tor.pi2.to_string()},
                {"sigma2", tor.sigma2.to_string()},
                {"nu3", tor.nu3.to_string()},
                {"class", to_string(cls.cls)},
                {"nonzero", cls.nonzero}};
}

inline json g2_report(const std::string& algebra, const FieldElem& alpha, const FieldElem& beta,
                      const G2Torsion& tor, bool theorem_agree) {
    return json{{"algebra", algebra},
                {"alpha", alpha.to_string()},
                {"beta", beta.to_string()},
                {"tau0", tor.tau0.to_string()},
                {"tau1", tor.tau1.to_string("x", "ds")},
                {"tau2", tor.tau2.to_string("x", "ds")},
                {"tau3", tor.tau3.to_string("x", "ds")},
                {"g2_class", to_string(classify_g2(tor).cls)},
                {"theorem23_agree", theorem_agree}};
}

inline json solution_record(const FlowSolution& sol, bool residual_zero,
                            const std::string& torsion_data) {
    json alphas = json::array();
    for (const auto& a : sol.alphas) alphas.push_back(to_string(a));
    return json{{"algebra", sol.algebra},
                {"class", family_name(sol.family)},
                {"alphas", alphas},
                {"warp_kind", sol.warp_kind == WarpKind::power ? "power" : "exponential"},
                {"beta_or_rate", to_string(sol.beta_or_rate)},
                {"k", to_string(sol.k)},
                {"c", sol.c.to_string()},
                {"validity", sol.validity()},
                {"residual_zero", residual_zero},
                {"torsion_column", torsion_data}};
}

/// Rebuilds a solution from its record (catalog algebras only); the inverse
/// of solution_record up to the reported fields.
inline FlowSolution solution_from_record(const json& record) {
    FlowSolution sol;
    sol.algebra = record.at("algebra").get<std::string>();
    std::string cls = record.at("class").get<std::string>();
    CatalogEntry entry = catalog_entry(sol.algebra);
    sol.family = entry.family;
    if (family_name(sol.family) != cls)
        throw FlowError("solution record class does not match the catalog");
    sol.frame = entry.frame;
    for (const auto& a : record.at("alphas"))
        sol.alphas.push_back(rational_from_string(a.get<std::string>()));
    sol.warp_kind = record.at("warp_kind").get<std::string>() == "power" ? WarpKind::power
                                                                         : WarpKind::exponential;
    sol.beta_or_rate = rational_from_string(record.at("beta_or_rate").get<std::string>());
    sol.k = rational_from_string(record.at("k").get<std::string>());
    std::string c = record.at("c").get<std::string>();
    if (c.find('r') != std::string::npos)
        throw FlowError("cannot rebuild an irrational warp amplitude from a record");
    sol.c = FieldElem(rational_from_string(c));
    return sol;
}

}  // namespace coflow
