#pragma once

#include "coflow/parser.hpp"

#include <optional>
#include <string>
#include <vector>

namespace coflow {

struct CatalogError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

enum class Su3Family { nearly_kahler, symplectic_half_flat, balanced };

struct CatalogEntry {
    std::string id;       // CLI name
    std::string display;  // pretty name
    Su3Family family;     // class of the canonical structure in the adapted basis
    Coframe frame;
};

namespace detail {

inline Coframe named(const std::string& text, const std::string& name) {
    Coframe frame = parse_structure_equations(text, 6);
    frame.name = name;
    return frame;
}

/// A_{5,17}^{-a,-a,1} + R for rational a != 0:
///   dh1 = a h15 + h35,  dh2 = -a h25 + h45,
///   dh3 = -h15 + a h35, dh4 = -h25 - a h45, dh5 = dh6 = 0.
inline Coframe a517_frame(const Rational& a) {
    if (a == 0) throw CatalogError("A5,17 requires parameter a != 0");
    using F = Form<FieldElem>;
    Coframe frame;
    frame.dim = 6;
    frame.name = "A5,17(a=" + to_string(a) + ")";
    FieldElem fa(a);
    frame.d_table = {
        F::term(6, {1, 5}, fa) + F::term(6, {3, 5}, 1),
        F::term(6, {2, 5}, -fa) + F::term(6, {4, 5}, 1),
        F::term(6, {1, 5}, -1) + F::term(6, {3, 5}, fa),
        F::term(6, {2, 5}, -1) + F::term(6, {4, 5}, -fa),
        F(6, 2),
        F(6, 2),
    };
    return frame;
}

}  // namespace detail

/// The built-in coframes: one nearly Kaehler model, the unimodular solvable
/// algebras carrying symplectic half-flat structures, and the nilpotent
/// algebras carrying balanced structures, all written in a basis adapted to
/// the canonical SU(3)-structure.  su2+su2 is stored in the adapted basis
/// obtained from the product of round spheres; the constants live in Q(r3).
inline std::vector<CatalogEntry> catalog(const Rational& a517_param = 1) {
    using detail::named;
    std::vector<CatalogEntry> out;
    auto add = [&](std::string id, std::string display, Su3Family family, Coframe frame) {
        frame.name = id;
        out.push_back({std::move(id), std::move(display), family, std::move(frame)});
    };

    add("su2+su2", "su(2)+su(2)", Su3Family::nearly_kahler,
        named("(r3h35-3h36-h45-r3h46,"
              "2r3h45,"
              "-r3h15+3h16+h25+r3h26,"
              "-2r3h25,"
              "2r3h24,"
              "-3h13-r3h14-r3h23+h24)",
              "su2+su2"));

    add("e11e11", "e(1,1)+e(1,1)", Su3Family::symplectic_half_flat,
        named("(0,0,-h14,-h13,h25,-h26)", "e11e11"));
    add("g5,1+R", "g_{5,1}+R", Su3Family::symplectic_half_flat,
        named("(0,0,0,h15,0,h13)", "g5,1+R"));
    add("A5,7", "A_{5,7}^{-1,-1,1}+R", Su3Family::symplectic_half_flat,
        named("(h16,-h26,-h36,h46,0,0)", "A5,7"));
    add("A5,17", "A_{5,17}^{-a,-a,1}+R", Su3Family::symplectic_half_flat,
        detail::a517_frame(a517_param));
    add("g6,N3", "g_{6,N3}", Su3Family::symplectic_half_flat,
        named("(0,-2h35,0,-h15,0,h13)", "g6,N3"));
    add("g6,38", "g_{6,38}^0", Su3Family::symplectic_half_flat,
        named("(2h36,0,-h26,h25-h26,-h23-h24,h23)", "g6,38"));
    add("g6,54", "g_{6,54}^{0,-1}", Su3Family::symplectic_half_flat,
        named("(1/2r2h16+h45,-1/2r2h26,h25-1/2r2h36,1/2r2h46,0,0)", "g6,54"));
    add("g6,118", "g_{6,118}^{0,-1,-1}", Su3Family::symplectic_half_flat,
        named("(-h15+h36,h25+h46,-h16-h35,-h26+h45,0,0)", "g6,118"));

    add("h2", "h_2", Su3Family::balanced,
        named("(0,0,0,0,"
              "2h12+(2r2-2)h13+(-2-2r2)h24-2h34,"
              "4r2h12+4r2h23-4r2h34)",
              "h2"));
    add("h3", "h_3", Su3Family::balanced, named("(0,0,0,0,0,-2h12+2h34)", "h3"));
    add("h4", "h_4", Su3Family::balanced, named("(0,0,0,0,2h13,h14+h23)", "h4"));
    add("h5", "h_5", Su3Family::balanced, named("(0,0,0,0,h13-h24,h14+h23)", "h5"));
    add("h6", "h_6", Su3Family::balanced, named("(0,0,0,0,h13,h14)", "h6"));
    add("h19-", "h_19^-", Su3Family::balanced, named("(0,0,-h15,-h25,0,-h13-h24)", "h19-"));

    return out;
}

inline std::vector<std::string> catalog_names() {
    std::vector<std::string> names;
    for (const auto& entry : catalog()) names.push_back(entry.id);
    return names;
}

inline CatalogEntry catalog_entry(const std::string& id, const Rational& a517_param = 1) {
    for (auto& entry : catalog(a517_param))
        if (entry.id == id) return entry;
    std::string known;
    for (const auto& name : catalog_names()) known += (known.empty() ? "" : ", ") + name;
    throw CatalogError("unknown algebra '" + id + "'; available: " + known);
}

inline const char* family_name(Su3Family family) {
    switch (family) {
        case Su3Family::nearly_kahler: return "NearlyKahler";
        case Su3Family::symplectic_half_flat: return "SymplecticHalfFlat";
        case Su3Family::balanced: return "Balanced";
    }
    return "?";
}

}  // namespace coflow
