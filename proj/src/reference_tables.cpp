#include "liesym/reference_tables.hpp"

#include <algorithm>
#include <cctype>
#include <map>
#include <set>
#include <stdexcept>

namespace liesym {

namespace {

using S = std::string;
using Cx = std::vector<std::string>;

PrintedBracketTable integer1() {
    return {"integer-1", 1, Regime::Integer,
            {{"G3", "G2", "G1", ""},
             {"G3", "G4", "2*G3", ""},
             {"G3", "G5", "-2*G6 + 4*G4", ""},
             {"G1", "G2", "-G6", ""},
             {"G1", "G5", "2*G2", ""},
             {"G1", "G4", "G1", ""},
             {"G2", "G4", "-G2", ""},
             {"G4", "G5", "2*G5", ""}}};
}

PrintedBracketTable fractional1() {
    // full 3x3 table, zero cells included
    return {"fractional-1", 1, Regime::Fractional,
            {{"G01", "G02", "0", "table cell"},
             {"G01", "G03", "2*alpha*G01", ""},
             {"G02", "G01", "0", "table cell"},
             {"G02", "G03", "0", "table cell"},
             {"G03", "G01", "-2*alpha*G01", ""},
             {"G03", "G02", "0", "table cell"}}};
}

PrintedBracketTable integer2() {
    return {"integer-2", 2, Regime::Integer,
            {{"G21", "G28", "2*G24", ""},
             {"G21", "G25", "-G22", ""},
             {"G21", "G27", "G21", ""},
             {"G21", "G24", "-G29", ""},
             {"G28", "G26", "-4*G29 + G27", ""},
             {"G28", "G25", "-2*G28", ""},
             {"G28", "G27", "-2*G23", ""},
             {"G26", "G27", "2*G26", ""},
             {"G26", "G24", "2*G21", ""},
             {"G26", "G23", "2*G22", ""},
             {"G25", "G24", "G23", ""},
             {"G25", "G23", "-G24", ""},
             {"G25", "G22", "G21", ""},
             {"G27", "G24", "2*G24", ""},
             {"G27", "G23", "G23", ""},
             {"G27", "G22", "-G22", ""},
             {"G23", "G22", "G29", ""}}};
}

PrintedBracketTable fractional2() {
    return {"fractional-2", 2, Regime::Fractional,
            {{"G11", "G14", "2*alpha*G11", ""},
             {"G14", "G13", "-4*G13", ""},
             {"G14", "G12", "-2*alpha*G12", ""},
             {"G11", "G16", "~F", "printed as G(x,y,t) d_u"}}};
}

PrintedBracketTable integer3() {
    return {"integer-3", 3, Regime::Integer,
            {{"G31", "G312", "2*G35", ""},
             {"G31", "G312", "-G32", "second printed value for the same pair"},
             {"G31", "G311", "G31", ""},
             {"G31", "G35", "-G313", ""},
             {"G31", "G38", "G33", ""},
             {"G312", "G310", "6*G313 - 4*G311", ""},
             {"G312", "G311", "-2*G312", ""},
             {"G312", "G32", "-2*G34", ""},
             {"G312", "G33", "-2*G36", ""},
             {"G310", "G311", "2*G310", ""},
             {"G310", "G35", "2*G31", ""},
             {"G310", "G34", "2*G32", ""},
             {"G310", "G36", "2*G33", ""},
             {"G37", "G35", "-G34", ""},
             {"G37", "G34", "-G35", ""},
             {"G37", "G32", "-G31", ""},
             {"G37", "G38", "-G39", ""},
             {"G37", "G39", "G38", ""},
             {"G311", "G35", "G35", ""},
             {"G311", "G34", "G34", ""},
             {"G311", "G32", "-G32", ""},
             {"G311", "G36", "G36", ""},
             {"G311", "G33", "-G33", ""},
             {"G35", "G38", "G36", ""},
             {"G34", "G32", "2*G313", ""},
             {"G34", "G39", "-G36", ""},
             {"G32", "G39", "-G33", "printed without '='"},
             {"G36", "G38", "-G35", ""},
             {"G36", "G33", "G313", ""},
             {"G36", "G39", "G34", ""},
             {"G38", "G33", "-G31", ""},
             {"G38", "G39", "-G37", ""},
             {"G33", "G39", "-G32", ""}}};
}

PrintedBracketTable fractional3() {
    return {"fractional-3", 3, Regime::Fractional,
            {{"G43", "G47", "alpha*G43", ""},
             {"G43", "G45", "-2*G44", ""},
             {"G44", "G47", "alpha*G44", ""},
             {"G44", "G45", "-G43", ""},
             {"G47", "G46", "-2*G46", ""},
             {"G47", "G42", "-alpha*G42", ""},
             {"G47", "G41", "-alpha*G41", ""},
             {"G41", "G45", "2*G42", ""}}};
}

PrintedBracketTable integer4() {
    return {"integer-4", 4, Regime::Integer,
            {{"G51", "G517", "2*G56", ""},
             {"G51", "G517", "G52", "second printed value for the same pair"},
             {"G51", "G512", "G53", ""},
             {"G51", "G513", "-G54", ""},
             {"G51", "G516", "G51", ""},
             {"G51", "G56", "-G518", ""},
             {"G517", "G515", "8*G518 - G516", ""},
             {"G517", "G516", "-2*G517", ""},
             {"G517", "G52", "-2*G58", ""},
             {"G517", "G53", "-2*G57", ""},
             {"G517", "G54", "-2*G581", "G581 is not a catalog name"},
             {"G517", "G516", "2*G515", "second printed value for the same pair"},
             {"G515", "G56", "2*G51", ""},
             {"G515", "G55", "2*G53", ""},
             {"G515", "G57", "2*G53", ""},
             {"G515", "G58", "2*G54", ""},
             {"G59", "G511", "G512", ""},
             {"G59", "G512", "-G511", ""},
             {"G59", "G510", "G513", ""},
             {"G59", "G513", "-G510", ""},
             {"G59", "G56", "-G55", ""},
             {"G59", "G55", "G56", ""},
             {"G59", "G52", "-G51", ""},
             {"G511", "G514", "G510", ""},
             {"G511", "G512", "G59", ""},
             {"G511", "G510", "-G514", ""},
             {"G511", "G55", "-G57", ""},
             {"G511", "G57", "G55", ""},
             {"G511", "G52", "G53", ""},
             {"G511", "G53", "G52", ""},
             {"G514", "G512", "-G513", ""},
             {"G514", "G510", "G511", ""},
             {"G514", "G513", "G512", ""},
             {"G514", "G57", "G58", ""},
             {"G514", "G58", "-G57", ""},
             {"G514", "G53", "G54", ""},
             {"G514", "G58", "-G53", "second printed value for the same pair"},
             {"G512", "G513", "-G514", ""},
             {"G512", "G56", "-G57", ""},
             {"G512", "G57", "G56", ""},
             {"G512", "G53", "G51", ""},
             {"G510", "G513", "G59", ""},
             {"G510", "G55", "G58", ""},
             {"G510", "G58", "-G55", ""},
             {"G510", "G52", "G54", "printed as X_{52}"},
             {"G510", "G58", "-G52", "second printed value for the same pair"},
             {"G513", "G54", "-G51", ""},
             {"G513", "G58", "-G56", ""},
             {"G513", "G56", "G58", ""},
             {"G516", "G54", "-G54", ""},
             {"G516", "G53", "-G53", ""},
             {"G516", "G52", "-G52", ""},
             {"G516", "G58", "G58", ""},
             {"G516", "G57", "G57", ""},
             {"G516", "G55", "G55", ""},
             {"G516", "G56", "G56", ""},
             {"G55", "G52", "G518", ""},
             {"G57", "G53", "G518", ""},
             {"G581", "G54", "G518", "G581 is not a catalog name"}}};
}

PrintedBracketTable fractional4() {
    return {"fractional-4", 4, Regime::Fractional,
            {{"G64", "G67", "-G65", ""},
             {"G64", "G68", "-G66", ""},
             {"G65", "G67", "G64", ""},
             {"G65", "G69", "-G66", ""},
             {"G62", "G67", "G61", ""},
             {"G62", "G69", "G63", ""},
             {"G61", "G67", "-G62", ""},
             {"G61", "G63", "G68", ""},
             {"G67", "G68", "2*G69", ""},
             {"G67", "G69", "-G68", ""},
             {"G63", "G68", "-G61", ""},
             {"G63", "G69", "-G62", ""},
             {"G68", "G66", "-G64", ""},
             {"G68", "G69", "G67", ""},
             {"G66", "G69", "G65", ""}}};
}

// --- conserved vectors ------------------------------------------------------

PrintedConservedVector local(S sym, S W, S Ct, Cx cx, S note = {}) {
    return {std::move(sym), std::move(W), std::move(Ct), {}, {}, std::move(cx), std::move(note)};
}

PrintedConservedVector nonlocal(S sym, S W, S Ct, S fi, S j, Cx cx, S note = {}) {
    return {std::move(sym), std::move(W), std::move(Ct), std::move(fi), std::move(j), std::move(cx),
            std::move(note)};
}

PrintedConservationTable cons_integer1() {
    const S L = "(u_t-u_{xx})";
    return {"integer-1", 1, Regime::Integer,
            {local("G1", "", "-u_x*phi", {"phi*" + L + "-u_x*phi_x+phi*u_{xx}"}, "W not printed"),
             local("G2", "-u*x-2*t*u_x", "W*phi",
                   {"2*t*(phi*" + L + ")+W*phi_x+phi*(u+x*u_x+2*t*u_{xx})"},
                   "unbalanced parenthesis closed after the Lagrangian factor"),
             local("G3", "-u_t", "phi*" + L + "+W*phi", {"W*phi_x+phi*u_{tx}"}),
             local("G4", "-2*t*u_t-x*u_x", "2*t*phi*" + L + "+W*phi",
                   {"x*phi*" + L + "+W*phi_x+(u_x+x*u_{xx}+2*t*u_{tx})"}),
             local("G5", "-u*(2*t+x^2)-4*t^2*u_t-4*t*x*u_x", "4*t^2*phi*" + L + "+W*phi",
                   {"4*t*x*phi*" + L +
                    "+W*phi_x+phi*(2*t*u_x+2*u*x+x^2*u_x+4*t^2*u_{tx}+4*t*(u_x+x*u_{xx}))"},
                   "unbalanced parenthesis closed at the end"),
             local("G6", "u", "W*phi", {"W*phi_x-phi*u_x"}),
             local("G7", "F", "W*phi", {"W*phi_x-phi*F_x"})}};
}

PrintedConservationTable cons_integer2() {
    const S L = "(u_t-u_{xx}-u_{yy})";
    return {"integer-2", 2, Regime::Integer,
            {local("G21", "-u_x", "-u_x*phi", {"phi*" + L + "+W*phi_x+u_{xx}", "W*phi_y"}),
             local("G22", "-u_y", "-u_y*phi", {"W*phi_y", "phi*" + L + "+W*phi_y+u_{yy}"}),
             local("G23", "-u*y-2*t*u_y", "W*phi",
                   {"W*phi_x+phi*(y*u_x)", "2*t*phi*" + L + "+W*phi_y+phi*(u_y*y+u+2*t*u_{yy})"}),
             local("G24", "-u*x-2*t*u_x", "W*phi",
                   {"2*t*phi*" + L + "+W*phi_x+phi*(u+x*u_x+2*t*u_{xx})", "W*phi_y+phi*x*u_y"}),
             local("G25", "-y*u_x+x*u_y", "W*phi",
                   {"y*phi*" + L + "+W*phi_x-phi*(u_y-y*u_{xx})",
                    "-x*phi*" + L + "+W*phi_y-phi*(x*u_{yy}-u_x)"}),
             local("G26", "-u_t", "phi*" + L + "+W*phi",
                   {"W*phi_x+phi*u_{tx}", "W*phi_y+phi*u_{ty}"}),
             local("G27", "-2*t*u_t-x*u_x-y*u_y", "2*t*phi*" + L + "+W*phi",
                   {"x*phi*" + L + "+W*phi_x+phi*(2*t*u_{tx}+x*u_{xx}+u_x)",
                    "y*phi*" + L + "+W*phi_y+phi*(2*t*u_{ty}+y*u_{yy}+u_y)"}),
             local("G28", "-u*(4*t+x^2+y^2)-4*t^2*u_t-4*x*t*u_x-4*y*t*u_y",
                   "4*t^2*phi*" + L + "+W*phi",
                   {"4*x*t*phi*" + L +
                        "+W*phi_x+phi*(4*t*u_x+x^2*u_x+2*x*u+y^2*u_x+2*y*u+4*t^2*u_{tx}+4*t*(u_x+x*u_{xx}))",
                    "4*y*t*phi*" + L +
                        "+W*phi_y+phi*(4*t*u_y+x^2*u_y+2*y*u+y^2*u_y+4*t^2*u_{ty}+4*t*(u_y+y*u_{yy}))"}),
             local("G29", "u", "W*phi", {"W*phi_x-phi*u_x", "W*phi_y-phi*u_y"}),
             local("G210", "F", "W*phi", {"W*phi_x-phi*F_x", "W*phi_y-phi*F_y"})}};
}

PrintedConservationTable cons_integer3() {
    const S L = "(u_t-u_{xx}-u_{yy}-u_{zz})";
    return {"integer-3", 3, Regime::Integer,
            {local("G31", "-u_x", "W*phi", {"phi*" + L + "+W*phi_x+u_{xx}", "W*phi_y", "W*phi_z"}),
             local("G32", "-u_y", "W*phi", {"W*phi_x", "phi*" + L + "+W*phi_y+u_{yy}", "W*phi_z"}),
             local("G33", "-u_z", "W*phi", {"W*phi_x", "W*phi_y", "phi*" + L + "+W*phi_z+u_{zz}"}),
             local("G34", "-u*y-2*t*u_y", "W*phi",
                   {"W*phi_x+phi*(y*u_y)", "2*t*phi*" + L + "+W*phi_y+phi*(u+y*u_y+2*t*u_{yy})",
                    "W*phi_z+phi*(y*u_z)"}),
             local("G35", "-u*x-2*t*u_x", "W*phi",
                   {"2*t*phi*" + L + "+W*phi_x+phi*(u+x*u_x+2*t*u_{xx})", "W*phi_y+phi*(x*u_y)",
                    "W*phi_z+phi*(x*u_z)"}),
             local("G36", "-u*z-2*t*u_z", "W*phi",
                   {"W*phi_x+phi*(z*u_x)", "W*phi_y+phi*(z*u_y)",
                    "2*t*phi*" + L + "+W*phi_z+phi*(u+z*u_z+2*t*u_{zz})"}),
             local("G37", "y*u_x-x*u_y", "W*phi",
                   {"-y*phi*" + L + "+W*phi_x-phi*(y*u_{xx}-u_y)",
                    "x*phi*" + L + "+W*phi_y-phi*(u_x-x*u_{yy})", "W*phi_z"}),
             local("G38", "z*u_x-x*u_z", "W*phi",
                   {"-z*phi*" + L + "+W*phi_x-phi*(z*u_{xx}-u_z)", "W*phi_y",
                    "x*phi*" + L + "+W*phi_z-phi*(u_x-x*u_{zz})"}),
             local("G39", "z*u_y-y*u_z", "W*phi",
                   {"W*phi_x", "-z*phi*" + L + "+W*phi_y-phi*(z*u_{yy}-u_z)",
                    "y*phi*" + L + "+W*phi_z-phi*(u_y-y*u_{zz})"}),
             local("G310", "-u_t", "phi*" + L + "+W*phi",
                   {"W*phi_x+phi*u_{tx}", "W*phi_y+phi*u_{ty}", "W*phi_z+phi*u_{tz}"}),
             local("G311", "-2*t*u_t-x*u_x-y*u_y-z*u_z", "2*t*phi*" + L + "+W*phi",
                   {"x*phi*" + L + "+W*phi_x+phi*(u_x+2*t*u_{tx}+x*u_{xx})",
                    "y*phi*" + L + "+W*phi_y+phi*(u_y+2*t*u_{ty}+y*u_{yy})",
                    "z*phi*" + L + "+W*phi_z+phi*(u_z+2*t*u_{tz}+z*u_{zz})"}),
             local("G312", "-u*(6*t+x^2+y^2+z^2)-4*t^2*u_t-4*x*t*u_x-4*y*t*u_y-4*z*t*u_z",
                   "4*t^2*phi*" + L + "+W*phi",
                   {"4*x*t*phi*" + L +
                        "+W*phi_x+phi*(6*t*u_x+x^2*u_x+2*x*u+y^2*u_x+z^2*u_x+4*t^2*u_{tx}+4*t*(x*u_{xx}+u_x))",
                    "4*y*t*phi*" + L +
                        "+W*phi_y+phi*(6*t*u_y+x^2*u_y+2*u*y+y^2*u_y+z^2*u_y+4*t^2*u_{ty}+4*t*(u_y+y*u_{yy}))",
                    "4*z*t*phi*" + L +
                        "+W*phi_z+phi*(6*t*u_z+x^2*u_z+y^2*u_z+z^2*u_z+2*z*u+4*t^2*u_{tz}+4*t*(u_z+z*u_{zz}))"}),
             local("G313", "u", "W*phi", {"W*phi_x-phi*u_x", "W*phi_y-phi*u_y", "W*phi_z-phi*u_z"}),
             local("G314", "F", "W*phi", {"W*phi_x-phi*F_x", "W*phi_y-phi*F_y", "W*phi_z-phi*F_z"})}};
}

PrintedConservationTable cons_integer4() {
    const S L = "(u_t-u_{xx}-u_{yy}-u_{zz}-u_{ww})";
    const S L3 = "(u_t-u_{xx}-u_{yy}-u_{zz})";  // printed without u_{ww} in several entries
    return {
        "integer-4", 4, Regime::Integer,
        {local("G51", "-u_x", "W*phi", {"phi*" + L + "+W*phi_x+phi*u_{xx}", "W*phi_y", "W*phi_z", "W*phi_w"}),
         local("G52", "-u_y", "W*phi", {"W*phi_x", "phi*" + L + "+W*phi_y+phi*u_{yy}", "W*phi_z", "W*phi_w"}),
         local("G53", "-u_z", "W*phi", {"W*phi_x", "W*phi_y", "phi*" + L + "+W*phi_z+phi*u_{zz}", "W*phi_w"}),
         local("G54", "-u_w", "W*phi_w", {"W*phi_x", "W*phi_y", "W*phi_z", "phi*" + L + "+W*phi_w+phi*u_{ww}"}),
         local("G55", "-u*y-2*t*u_y", "W*phi",
               {"W*phi_x+phi*(y*u_x)", "2*t*phi*" + L3 + "+W*phi_y+phi*(u+y*u_y+2*t*u_{yy})",
                "W*phi_z+phi*(y*u_z)", "W*phi_w+phi*(y*u_w)"}),
         local("G56", "-u*x-2*t*u_x", "W*phi",
               {"2*t*phi*" + L3 + "+W*phi_x+phi*(u+x*u_x+2*t*u_{xx})", "W*phi_y+phi*(x*u_y)",
                "W*phi_z+phi*(x*u_z)", "W*phi_w+phi*(x*u_w)"}),
         local("G57", "-u*z-2*t*u_z", "W*phi",
               {"W*phi_x+phi*(z*u_x)", "W*phi_y+phi*(z*u_y)",
                "2*t*phi*" + L3 + "+W*phi_z+phi*(u+z*u_z+2*t*u_{zz})", "W*phi_w+phi*(z*u_w)"}),
         local("G58", "-u*w-2*t*u_w", "W*phi",
               {"W*phi_x+phi*(w*u_x)", "W*phi_y+phi*(w*u_y)", "W*phi_z+phi*(w*u_z)",
                "2*t*phi*" + L3 + "+W*phi_w+phi*(u+w*u_w+2*t*u_{ww})"}),
         local("G59", "y*u_x-x*u_y", "W*phi",
               {"-y*phi*" + L3 + "+W*phi_x-phi*(y*u_{xx}-u_y)", "x*phi*" + L3 + "+W*phi_y-phi*(u_x-x*u_{yy})",
                "W*phi_z", "W*phi_w"}),
         local("G510", "w*u_y-y*u_w", "W*phi",
               {"W*phi_x", "-w*phi*" + L + "+W*phi_y-phi*(w*u_{yy}-u_w)", "W*phi_z",
                "y*phi*" + L + "+W*phi_w-phi*(u_y-y*u_{ww})"}),
         local("G511", "z*u_x-x*u_z", "W*phi",
               {"-z*phi*" + L3 + "+W*phi_x-phi*(z*u_{xx}-u_z)", "W*phi_y",
                "x*phi*" + L3 + "+W*phi_z-phi*(u_x-x*u_{zz})", "W*phi_w"}),
         local("G512", "z*u_y-y*u_z", "W*phi",
               {"W*phi_x", "-z*phi*" + L3 + "+W*phi_y-phi*(z*u_{yy}-u_z)",
                "y*phi*" + L3 + "+W*phi_z-phi*(u_y-y*u_{zz})", "W*phi_w"}),
         local("G513", "w*u_x-x*u_w", "W*phi",
               {"-w*phi*" + L + "+W*phi_x-phi*(w*u_{xx}-u_w)", "W*phi_y", "W*phi_z",
                "x*phi*" + L + "+W*phi_w-phi*(u_x-x*u_{ww})"},
               "unbalanced parenthesis closed at the end of the term"),
         local("G514", "w*u_z-z*u_w", "W*phi",
               {"W*phi_x", "W*phi_y", "-w*phi*" + L + "+W*phi_z-phi*(w*u_{zz}-u_w)",
                "z*phi*" + L + "+W*phi_w-phi*(u_z-z*u_{ww})"}),
         local("G515", "-u_t", "phi*" + L + "+W*phi",
               {"W*phi_x+phi*u_{tx}", "W*phi_y+phi*u_{ty}", "W*phi_z+phi*u_{tz}", "W*phi_w+phi*u_{tw}"}),
         local("G516", "-2*t*u_t-x*u_x-y*u_y-z*u_z-w*u_w", "2*t*phi*" + L + "+W*phi",
               {"x*phi*" + L + "+W*phi_x+phi*(u_x+2*t*u_{tx}+u_x+x*u_{xx})",
                "y*phi*" + L + "+W*phi_y+phi*(u_y+2*t*u_{ty}+u_y+y*u_{yy})",
                "z*phi*" + L + "+W*phi_z+phi*(u_z+2*t*u_{tz}+u_z+z*u_{zz})",
                "w*phi*" + L + "+W*phi_w+phi*(u_z+2*t*u_{tz}+u_w+z*u_{zz})"}),
         local("G517", "-u*(8*t+x^2+y^2+z^2+w^2)-4*t^2*u_t-4*x*t*u_x-4*y*t*u_y-4*z*t*u_z-4*w*t*u_w",
               "4*t^2*phi*" + L + "+W*phi",
               {"4*x*t*phi*" + L +
                    "+W*phi_x+phi*(8*t*u_x+x^2*u_x+2*x*u+y^2*u_x+z^2*u_x+4*t^2*u_{tx}+4*t*(x*u_{xx}+u_x))",
                "4*y*t*phi*" + L +
                    "+W*phi_y+phi*(8*t*u_y+x^2*u_y+2*u*y+y^2*u_y+z^2*u_y+4*t^2*u_{ty}+4*t*(u_y+y*u_{yy}))",
                "4*z*t*phi*" + L +
                    "+W*phi_z+phi*(8*t*u_z+x^2*u_z+y^2*u_z+z^2*u_z+2*z*u+4*t^2*u_{tz}+4*t*(u_z+z*u_{zz}))",
                "4*w*t*phi*" + L +
                    "+W*phi_w+phi*(8*t*u_w+x^2*u_w+y^2*u_w+z^2*u_w+2*w*u+4*t^2*u_{tw}+4*t*(u_w+w*u_{ww}))"}),
         local("G518", "u", "W*phi",
               {"W*phi_x-phi*u_x", "W*phi_y-phi*u_y", "W*phi_z-phi*u_z", "W*phi_w-phi*u_w"}),
         local("G519", "F", "W*phi",
               {"W*phi_x-phi*F_x", "W*phi_y-phi*F_y", "W*phi_z-phi*F_z", "W*phi_w-phi*F_w"})}};
}

PrintedConservationTable cons_fractional1() {
    const S L = "(Dalpha_u-u_{xx})";
    return {"fractional-1", 1, Regime::Fractional,
            {nonlocal("G01", "-u_x", "0", "W", "W", {"phi*" + L + "+W*phi_x-phi*u_{xx}"}),
             nonlocal("G02", "2*t*u_t-alpha*x*u_x", "2*t*phi*" + L, "W", "W",
                      {"alpha*x*phi*" + L + "+W*phi_x-phi*(2*t*u_{xt}-alpha*x*u_{xx})"}),
             nonlocal("G03", "u", "0", "W", "W", {"W*phi_x-2*phi*u_x"}),
             nonlocal("G04", "", "0", "F", "F", {"F*phi_x-phi*F_x"}, "W not printed")}};
}

PrintedConservationTable cons_fractional2() {
    const S L = "(Dalpha_u-u_{xx}-u_{yy})";
    return {
        "fractional-2", 2, Regime::Fractional,
        {nonlocal("G11", "-u_x", "0", "W", "W", {"phi*" + L + "+W*phi_x+u_{xx}*phi", "W*phi_y+phi*u_{xy}"}),
         nonlocal("G12", "-u_y", "0", "W", "-u_y", {"W*phi_x+phi*u_{xy}", "phi*" + L + "+W*phi_y+u_{yy}*phi"}),
         nonlocal("G13", "-y*u_x+x*u_y", "0", "W", "W",
                  {"y*phi*" + L + "+W*phi_x-phi*(u_y+x*u_{xy}-y*u_{xx})",
                   "-x*phi*" + L + "+W*phi_y-phi*(x*u_{yy}-(y*u_{xy}+u_x))"},
                  "unbalanced parenthesis closed at the end"),
         nonlocal("G14", "u*(3*alpha-2)-4*t*u_t-2*alpha*x*u_x-2*alpha*y*u_y", "4*t*" + L, "W", "W",
                  {"2*alpha*x*phi*" + L +
                       "+W*phi_x-(3*alpha*u_x-2*u_x-4*t*u_{xt}-2*alpha*(u_x+x*u_{xx})-2*alpha*y*u_{xy})*phi",
                   "2*alpha*y*phi*" + L +
                       "+W*phi_y+(3*alpha*u_y-2*u_y-4*t*u_{yt}-2*alpha*x*u_{xy}-2*alpha*(y*u_{yy}+u_y))*phi"}),
         nonlocal("G15", "u", "0", "W", "u", {"u*phi_x-u_x*phi", "u*phi_y-u_y*phi"}),
         nonlocal("G16", "", "0", "F", "F", {"F*phi_x-F_x*phi", "F*phi_y-F_y*phi"}, "W not printed")}};
}

PrintedConservationTable cons_fractional3() {
    // the printed Lagrangian factor reads D_t^{1-alpha}u
    const S L = "(D1alpha_u-(u_{xx}+u_{yy}+u_{zz}))";
    return {
        "fractional-3", 3, Regime::Fractional,
        {nonlocal("G41", "-u_x", "0", "W", "W",
                  {"phi*" + L + "+W*phi_x+phi*u_{xx}", "W*phi_y+phi*u_{xy}", "W*phi_z+phi*u_{xz}"}),
         nonlocal("G42", "-u_y", "0", "W", "W",
                  {"W*phi_x+phi*u_{xy}", "phi*" + L + "+W*phi_y+phi*u_{yy}", "W*phi_z+phi*u_{yz}"}),
         nonlocal("G43", "-u_z", "0", "W", "W",
                  {"W*phi_x+phi*u_{xz}", "W*phi_y+phi*u_{yz}", "phi*" + L + "+W*phi_z+phi*u_{zz}"}),
         nonlocal("G44", "y*u_x-x*u_y", "0", "W", "W",
                  {"-y*phi*" + L + "+W*phi_x-phi*(y*u_{xx}-(x*u_{xy}+u_y))",
                   "x*phi*" + L + "+W*phi_y-phi*((u_x+y*u_{xy})-x*u_{yy})",
                   "W*phi_z+phi*(y*u_{xz}-x*u_{yz})"}),
         nonlocal("G45", "y*u_z-z*u_y", "0", "W", "W",
                  {"W*phi_x+phi*(y*u_{xz}-z*u_{xy})",
                   "z*phi*" + L + "+W*phi_y-phi*((u_z+y*u_{zy})-z*u_{yy})",
                   "-y*phi*" + L + "+W*phi_z-phi*(y*u_{zz}-(u_y+z*u_{yz}))"}),
         nonlocal("G46", "x*u_z-z*u_x", "0", "W", "W",
                  {"z*phi*" + L + "+W*phi_x-phi*((u_z+x*u_{xz})-z*u_{xx})",
                   "W*phi_y+phi*(x*u_{yz}-z*u_{xy})",
                   "-x*phi*" + L + "+W*phi_z-phi*(x*u_{zz}-(u_x+u_{xz}))"}),
         nonlocal("G47", "u*(alpha-1)-2*t*u_t-alpha*x*u_x-alpha*y*u_y-alpha*z*u_z", "2*t*phi*" + L, "W", "W",
                  {"alpha*x*phi*" + L +
                       "+W*phi_x+phi*(u_x*(alpha-1)-2*t*u_{xt}-alpha*(u_x+x*u_{xx})-alpha*y*u_{xy}-alpha*z*u_{xz})",
                   "alpha*y*phi*" + L +
                       "+W*phi_y+phi*(u_y*(alpha-1)-2*t*u_{yt}-alpha*(u_y+y*u_{yy})-alpha*x*u_{xy}-alpha*z*u_{yz})",
                   "alpha*z*phi*" + L +
                       "+W*phi_z+phi*(u_z*(alpha-1)-2*t*u_{zt}-alpha*(u_z+z*u_{zz})-alpha*x*u_{xz}-alpha*y*u_{yz})"},
                  "stray comma before the second line of C^x dropped"),
         nonlocal("G48", "u", "0", "W", "W", {"W*phi_x-phi*u_x", "W*phi_y-phi*u_y", "W*phi_z-phi*u_z"}),
         nonlocal("G49", "F", "0", "W", "W", {"W*phi_x-phi*F_x", "W*phi_y-phi*F_y", "W*phi_z-phi*F_z"})}};
}

PrintedConservationTable cons_fractional4() {
    const S L = "(D1alpha_u-(u_{xx}+u_{yy}+u_{zz}+u_{ww}))";
    return {
        "fractional-4", 4, Regime::Fractional,
        {nonlocal("G61", "-u_x", "0", "W", "W",
                  {"phi*" + L + "+W*phi_x+phi*u_{xx}", "W*phi_y+phi*u_{xy}", "W*phi_z+phi*u_{xz}",
                   "W*phi_w+phi*u_{xw}"}),
         nonlocal("G62", "-u_y", "0", "W", "W",
                  {"W*phi_x+phi*u_{xy}", "phi*" + L + "+W*phi_y+phi*u_{yy}", "W*phi_z+phi*u_{zy}",
                   "W*phi_w+phi*u_{yw}"}),
         nonlocal("G63", "-u_z", "0", "W", "W",
                  {"W*phi_x+phi*u_{xz}", "W*phi_y+phi*u_{yz}", "phi*" + L + "+W*phi_z+phi*u_{zz}",
                   "W*phi_w+phi*u_{wz}"}),
         nonlocal("G64", "-u_w", "0", "W", "W",
                  {"W*phi_x+phi*u_{xw}", "W*phi_y+phi*u_{yw}", "W*phi_z+phi*u_{zw}",
                   "phi*" + L + "+W*phi_w+phi*u_{ww}"}),
         nonlocal("G65", "y*u_x-x*u_y", "0", "W", "W",
                  {"-y*phi*" + L + "+W*phi_x-phi*(y*u_{xx}-(u_{xy}+u_y))",
                   "x*phi*" + L + "+W*phi_y-phi*((u_x+u_{xy})-x*u_{yy})",
                   "W*phi_z+phi*(y*u_{xz}-x*u_{yz})", "W*phi_w+phi*(y*u_{xw}-x*u_{yw})"}),
         nonlocal("G66", "y*u_z-z*u_y", "0", "W", "W",
                  {"W*phi_x+phi*(y*u_{xz}-z*u_{xy})",
                   "z*phi*" + L + "+W*phi_y-phi*((u_z+u_{zy})-z*u_{yy})",
                   "-y*phi*" + L + "+W*phi_z-phi*(y*u_{zz}-(u_y+u_{yz}))",
                   "W*phi_w+phi*(y*u_{zw}-z*u_{yw})"}),
         nonlocal("G67", "w*u_y-y*u_w", "0", "W", "W",
                  {"W*phi_x+phi*(w*u_{xy}-y*u_{xw})",
                   "-w*phi*" + L + "+W*phi_y-phi*(w*u_{yy}-(y*u_{wy}+u_w))",
                   "W*phi_z+phi*(w*u_{yz}-y*u_{wz})",
                   "y*phi*" + L + "+W*phi_w-phi*((w*u_{yw}+u_y)-y*u_{ww})"}),
         nonlocal("G69", "x*u_z-z*u_x", "0", "W", "W",
                  {"z*phi*" + L + "+W*phi_x-phi*((x*u_{xz}+u_z)-z*u_{xx})",
                   "W*phi_y+phi*(x*u_{zy}-z*u_{xy})",
                   "-x*phi*" + L + "+W*phi_z-phi*(x*u_{zz}-(z*u_{xz}+u_x))",
                   "W*phi_w+phi*(x*u_{zw}-z*u_{xw})"},
                  "printed list skips G68"),
         nonlocal("G610", "w*u_x-x*u_w", "0", "W", "W",
                  {"-w*phi*" + L + "+W*phi_x-phi*(w*u_{xx}-(x*u_{xw}+u_w))",
                   "W*phi_y+phi*(w*u_{xy}-x*u_{wy})", "W*phi_z+phi*(w*u_{xz}-x*u_{wz})",
                   "x*phi*" + L + "+W*phi_w-phi*((w*u_{xw}+u_x)-x*u_{ww})"}),
         nonlocal("G611", "w*u_z-z*u_w", "0", "W", "W",
                  {"W*phi_x+phi*(w*u_{xz}-z*u_{xw})", "W*phi_y+phi*(w*u_{yz}-z*u_{yw})",
                   "-w*phi*" + L + "+W*phi_z-phi*(w*u_{zz}-(z*u_{wz}+u_w))",
                   "z*phi*" + L + "+W*phi_w-phi*((u_z+u_{zw})-z*u_{ww})"}),
         nonlocal("G612", "u*(alpha-1)-alpha*x*u_x-alpha*y*u_y-alpha*z*u_z-alpha*w*u_w-2*t*u_t",
                  "2*t*phi*" + L, "W", "W",
                  {"alpha*x*phi*" + L +
                       "+W*phi_x-phi*((alpha-1)*u_x-alpha*(u_x+x*u_{xx})-alpha*y*u_{xy}-alpha*z*u_{xz}-alpha*w*u_{xw}-2*t*u_{xt})",
                   "alpha*y*phi*" + L +
                       "+W*phi_y-phi*((alpha-1)*u_y-alpha*(u_y+y*u_{yy})-alpha*x*u_{xy}-alpha*z*u_{zy}-alpha*w*u_{wy}-2*t*u_{yt})",
                   "alpha*z*phi*" + L +
                       "+W*phi_z-phi*((alpha-1)*u_z-alpha*x*u_{xz}-alpha*y*u_{yz}-alpha*(u_z+z*u_{zz})-alpha*w*u_{wz}-2*t*u_{zt})",
                   "alpha*w*phi*" + L +
                       "+W*phi_w-phi*((alpha-1)*u_w-alpha*x*u_{xw}-alpha*y*u_{yw}-alpha*z*u_{zw}-alpha*(u_w+w*u_{ww})-2*t*u_{wt})"}),
         nonlocal("G613", "u", "0", "W", "W",
                  {"W*phi_x-phi*u_x", "W*phi_y-phi*u_y", "W*phi_z-phi*u_z", "W*phi_w-phi*u_w"}),
         nonlocal("G614", "F", "0", "W", "W",
                  {"W*phi_x-phi*F_x", "W*phi_y-phi*F_y", "W*phi_z-phi*F_z", "W*phi_w-phi*F_w"})}};
}

std::vector<AllowedDiscrepancy> allow_list() {
    // printed bracket values that disagree with direct computation
    return {
        {"integer-1", "G3", "G2", "G1", "factor: computed 2*G1"},
        {"fractional-1", "G01", "G02", "0", "zero cell; computed alpha*G01"},
        {"fractional-1", "G01", "G03", "2*alpha*G01", "G01 and G03 commute"},
        {"fractional-1", "G02", "G01", "0", "zero cell; computed -alpha*G01"},
        {"fractional-1", "G03", "G01", "-2*alpha*G01", "G01 and G03 commute"},
        {"integer-2", "G28", "G26", "-4*G29 + G27", "coefficients: computed -4*G27 + 4*G29"},
        {"integer-2", "G28", "G25", "-2*G28", "G28 and G25 commute"},
        {"integer-2", "G28", "G27", "-2*G23", "wrong generator: computed -2*G28"},
        {"integer-2", "G25", "G22", "G21", "sign: computed -G21"},
        {"integer-2", "G27", "G24", "2*G24", "factor: computed G24"},
        {"fractional-2", "G14", "G13", "-4*G13", "dilation and rotation commute"},
        {"integer-3", "G31", "G312", "-G32", "second value for the pair; computed 2*G35"},
        {"integer-3", "G37", "G34", "-G35", "sign: computed G35"},
        {"integer-3", "G37", "G32", "-G31", "sign: computed G31"},
        {"integer-3", "G34", "G32", "2*G313", "factor: computed G313"},
        {"integer-3", "G34", "G39", "-G36", "sign: computed G36"},
        {"integer-3", "G32", "G39", "-G33", "sign: computed G33"},
        {"integer-3", "G36", "G39", "G34", "sign: computed -G34"},
        {"integer-3", "G38", "G33", "-G31", "sign: computed G31"},
        {"fractional-3", "G43", "G45", "-2*G44", "wrong generator: computed G42"},
        {"fractional-3", "G44", "G47", "alpha*G44", "rotation and dilation commute"},
        {"fractional-3", "G44", "G45", "-G43", "wrong generator: computed G46"},
        {"fractional-3", "G47", "G46", "-2*G46", "dilation and rotation commute"},
        {"fractional-3", "G41", "G45", "2*G42", "G41 and G45 commute"},
        {"integer-4", "G51", "G517", "G52", "second value for the pair; computed 2*G56"},
        {"integer-4", "G51", "G513", "-G54", "sign: computed G54"},
        {"integer-4", "G517", "G515", "8*G518 - G516", "coefficient: computed -4*G516 + 8*G518"},
        {"integer-4", "G517", "G52", "-2*G58", "wrong generator: computed -2*G55"},
        {"integer-4", "G517", "G54", "-2*G581", "names the unknown G581; computed -2*G58"},
        {"integer-4", "G517", "G516", "2*G515", "second value for the pair; computed -2*G517"},
        {"integer-4", "G515", "G55", "2*G53", "wrong generator: computed 2*G52"},
        {"integer-4", "G59", "G52", "-G51", "sign: computed G51"},
        {"integer-4", "G511", "G52", "G53", "sign: computed -G53"},
        {"integer-4", "G514", "G57", "G58", "sign: computed -G58"},
        {"integer-4", "G514", "G58", "-G57", "sign: computed G57"},
        {"integer-4", "G514", "G53", "G54", "sign: computed -G54"},
        {"integer-4", "G514", "G58", "-G53", "second value for the pair; computed G57"},
        {"integer-4", "G510", "G55", "G58", "sign: computed -G58"},
        {"integer-4", "G510", "G58", "-G55", "sign: computed G55"},
        {"integer-4", "G510", "G52", "G54", "sign: computed -G54"},
        {"integer-4", "G510", "G58", "-G52", "second value for the pair; computed G55"},
        {"integer-4", "G513", "G54", "-G51", "sign: computed G51"},
        {"integer-4", "G513", "G58", "-G56", "sign: computed G56"},
        {"integer-4", "G513", "G56", "G58", "sign: computed -G58"},
        {"integer-4", "G581", "G54", "G518", "G581 is not a generator"},
        {"fractional-4", "G64", "G67", "-G65", "table inconsistent with the printed basis under any signed relabeling; computed -G62"},
        {"fractional-4", "G64", "G68", "-G66", "table inconsistent with the printed basis under any signed relabeling; computed 0"},
        {"fractional-4", "G65", "G67", "G64", "table inconsistent with the printed basis under any signed relabeling; computed G69"},
        {"fractional-4", "G65", "G69", "-G66", "table inconsistent with the printed basis under any signed relabeling; computed -G67"},
        {"fractional-4", "G62", "G67", "G61", "table inconsistent with the printed basis under any signed relabeling; computed G64"},
        {"fractional-4", "G62", "G69", "G63", "table inconsistent with the printed basis under any signed relabeling; computed 0"},
        {"fractional-4", "G61", "G67", "-G62", "table inconsistent with the printed basis under any signed relabeling; computed 0"},
        {"fractional-4", "G61", "G63", "G68", "table inconsistent with the printed basis under any signed relabeling; computed 0"},
        {"fractional-4", "G67", "G68", "2*G69", "table inconsistent with the printed basis under any signed relabeling; computed 0"},
        {"fractional-4", "G67", "G69", "-G68", "table inconsistent with the printed basis under any signed relabeling; computed G65"},
        {"fractional-4", "G63", "G68", "-G61", "table inconsistent with the printed basis under any signed relabeling; computed G61"},
        {"fractional-4", "G63", "G69", "-G62", "table inconsistent with the printed basis under any signed relabeling; computed 0"},
        {"fractional-4", "G68", "G66", "-G64", "table inconsistent with the printed basis under any signed relabeling; computed -G65"},
        {"fractional-4", "G68", "G69", "G67", "table inconsistent with the printed basis under any signed relabeling; computed G610"},
        {"fractional-4", "G66", "G69", "G65", "table inconsistent with the printed basis under any signed relabeling; computed 0"}};
}

Fixtures build() {
    Fixtures f;
    f.brackets = {integer1(), fractional1(), integer2(), fractional2(),
                  integer3(), fractional3(), integer4(), fractional4()};
    f.allow_list = allow_list();
    f.conservation = {cons_integer1(),    cons_fractional1(), cons_integer2(), cons_fractional2(),
                      cons_integer3(),    cons_fractional3(), cons_integer4(), cons_fractional4()};
    return f;
}

template <class T>
const T* find_table(const std::vector<T>& v, int n, Regime r) {
    for (const auto& t : v)
        if (t.n == n && t.regime == r) return &t;
    return nullptr;
}

}  // namespace

const PrintedBracketTable* Fixtures::bracket_table(int n, Regime r) const {
    return find_table(brackets, n, r);
}

const PrintedConservationTable* Fixtures::conservation_table(int n, Regime r) const {
    return find_table(conservation, n, r);
}

const Fixtures& default_fixtures() {
    static const Fixtures f = build();
    return f;
}

nlohmann::json to_json(const Fixtures& f) {
    using nlohmann::json;
    json out;
    out["brackets"] = json::array();
    for (const auto& t : f.brackets) {
        json e = json::array();
        for (const auto& b : t.entries) e.push_back({{"a", b.a}, {"b", b.b}, {"value", b.value}, {"note", b.note}});
        out["brackets"].push_back({{"id", t.id}, {"n", t.n}, {"regime", regime_name(t.regime)}, {"entries", e}});
    }
    out["allow_list"] = json::array();
    for (const auto& a : f.allow_list)
        out["allow_list"].push_back(
            {{"table", a.table}, {"a", a.a}, {"b", a.b}, {"value", a.value}, {"reason", a.reason}});
    out["conservation"] = json::array();
    for (const auto& t : f.conservation) {
        json e = json::array();
        for (const auto& c : t.entries)
            e.push_back({{"symmetry", c.symmetry},
                         {"W", c.W},
                         {"Ct", c.Ct},
                         {"fracint_arg", c.fracint_arg},
                         {"j_arg", c.j_arg},
                         {"Cx", c.Cx},
                         {"note", c.note}});
        out["conservation"].push_back(
            {{"id", t.id}, {"n", t.n}, {"regime", regime_name(t.regime)}, {"entries", e}});
    }
    return out;
}

Fixtures fixtures_from_json(const nlohmann::json& j) {
    try {
        Fixtures f;
        for (const auto& t : j.at("brackets")) {
            PrintedBracketTable pt{t.at("id").get<S>(), t.at("n").get<int>(),
                                   parse_regime(t.at("regime").get<S>()), {}};
            for (const auto& e : t.at("entries"))
                pt.entries.push_back({e.at("a").get<S>(), e.at("b").get<S>(), e.at("value").get<S>(),
                                      e.value("note", S{})});
            f.brackets.push_back(std::move(pt));
        }
        for (const auto& a : j.at("allow_list"))
            f.allow_list.push_back({a.at("table").get<S>(), a.at("a").get<S>(), a.at("b").get<S>(),
                                    a.at("value").get<S>(), a.value("reason", S{})});
        for (const auto& t : j.at("conservation")) {
            PrintedConservationTable pt{t.at("id").get<S>(), t.at("n").get<int>(),
                                        parse_regime(t.at("regime").get<S>()), {}};
            for (const auto& e : t.at("entries"))
                pt.entries.push_back({e.at("symmetry").get<S>(), e.at("W").get<S>(), e.at("Ct").get<S>(),
                                      e.value("fracint_arg", S{}), e.value("j_arg", S{}),
                                      e.at("Cx").get<Cx>(), e.value("note", S{})});
            f.conservation.push_back(std::move(pt));
        }
        return f;
    } catch (const nlohmann::json::exception& e) {
        throw std::invalid_argument(std::string("malformed fixture document: ") + e.what());
    }
}

// --- bracket regression ------------------------------------------------------

PrintedValue parse_printed_value(const std::string& text) {
    std::string s;
    for (char c : text)
        if (!std::isspace(static_cast<unsigned char>(c))) s += c;
    PrintedValue v;
    if (s == "~F") {
        v.infinite = true;
        return v;
    }
    if (s == "0") return v;
    // signed terms at parenthesis depth 0
    std::vector<std::string> terms;
    std::string cur;
    int depth = 0;
    for (std::size_t i = 0; i < s.size(); ++i) {
        const char c = s[i];
        if (c == '(') ++depth;
        if (c == ')') --depth;
        if ((c == '+' || c == '-') && depth == 0 && i > 0 && s[i - 1] != '*' && !cur.empty()) {
            terms.push_back(cur);
            cur.clear();
        }
        cur += c;
    }
    if (!cur.empty()) terms.push_back(cur);
    if (terms.empty()) throw std::invalid_argument("empty printed value");
    for (std::string term : terms) {
        Rational sign(1);
        if (term[0] == '+' || term[0] == '-') {
            if (term[0] == '-') sign = Rational(-1);
            term.erase(0, 1);
        }
        const auto star = term.rfind('*');
        const std::string name = star == std::string::npos ? term : term.substr(star + 1);
        if (name.size() < 2 || name[0] != 'G')
            throw std::invalid_argument("printed term '" + term + "' does not end in a generator name");
        RatFunc coef(sign);
        if (star != std::string::npos) {
            const auto parts = split_alpha(to_poly(parse(term.substr(0, star))));
            if (parts.size() > 1 || (parts.size() == 1 && !parts.begin()->first.empty()))
                throw std::invalid_argument("printed coefficient '" + term.substr(0, star) +
                                            "' is not a function of alpha");
            coef = parts.empty() ? RatFunc(0) : RatFunc(parts.begin()->second) * coef;
        }
        v.terms.emplace_back(name, coef);
    }
    return v;
}

std::size_t BracketRegression::mismatches() const {
    return static_cast<std::size_t>(
        std::count_if(checks.begin(), checks.end(), [](const BracketCheck& c) { return !c.match; }));
}

bool BracketRegression::pass() const {
    if (!stale_allowances.empty()) return false;
    return std::all_of(checks.begin(), checks.end(),
                       [](const BracketCheck& c) { return c.match || c.allowed; });
}

BracketRegression bracket_regression(const PrintedBracketTable& table,
                                     const std::vector<AllowedDiscrepancy>& allow) {
    const auto gens = generators({table.n, table.regime});
    const auto basis = fields(gens);
    std::vector<std::string> names;
    std::map<std::string, std::size_t> index;
    for (std::size_t i = 0; i < basis.size(); ++i) {
        names.push_back(basis[i].name);
        index[basis[i].name] = i;
    }
    BracketRegression out;
    out.table = table.id;
    std::set<std::pair<std::size_t, std::size_t>> printed_pairs;
    std::vector<bool> allow_used(allow.size(), false);

    for (const auto& e : table.entries) {
        BracketCheck c{e.a, e.b, e.value, "", false, false, e.note};
        const auto ia = index.find(e.a), ib = index.find(e.b);
        if (ia == index.end() || ib == index.end()) {
            c.computed = "undefined";
            c.note = "unknown generator in the printed pair";
        } else {
            printed_pairs.insert(std::minmax(ia->second, ib->second));
            const auto dec = decompose_in_basis(lie_bracket(basis[ia->second], basis[ib->second]), basis);
            const bool zero = dec.in_span && dec.is_zero();
            c.computed = zero ? "0" : dec.str(names);
            try {
                const auto pv = parse_printed_value(e.value);
                if (pv.infinite) {
                    c.match = !dec.in_span && dec.infinite;
                } else {
                    std::vector<RatFunc> want(basis.size(), RatFunc(0));
                    bool known = true;
                    for (const auto& [name, coef] : pv.terms) {
                        const auto it = index.find(name);
                        if (it == index.end()) {
                            known = false;
                            c.note = "printed value names the unknown generator " + name;
                            break;
                        }
                        want[it->second] += coef;
                    }
                    if (known && dec.in_span) {
                        c.match = true;
                        for (std::size_t k = 0; k < want.size(); ++k)
                            if (!(want[k] - dec.coeffs[k]).is_zero()) c.match = false;
                    }
                }
            } catch (const std::exception& ex) {
                c.note = std::string("unreadable printed value: ") + ex.what();
            }
        }
        for (std::size_t k = 0; k < allow.size(); ++k) {
            const auto& a = allow[k];
            if (a.table == table.id && a.a == e.a && a.b == e.b && a.value == e.value) {
                allow_used[k] = true;
                if (c.match) out.stale_allowances.push_back("[" + a.a + "," + a.b + "] = " + a.value +
                                                            " is allow-listed but matches");
                else c.allowed = true;
            }
        }
        out.checks.push_back(std::move(c));
    }
    for (std::size_t k = 0; k < allow.size(); ++k)
        if (allow[k].table == table.id && !allow_used[k])
            out.stale_allowances.push_back("[" + allow[k].a + "," + allow[k].b + "] = " + allow[k].value +
                                           " is allow-listed but not printed");

    const auto t = commutator_table(basis);
    for (std::size_t i = 0; i < basis.size(); ++i)
        for (std::size_t j = i + 1; j < basis.size(); ++j) {
            const auto& d = t.at(i, j).dec;
            if (d.in_span && d.is_zero()) continue;
            if (!printed_pairs.count({i, j})) out.unprinted.emplace_back(names[i], names[j]);
        }
    return out;
}

nlohmann::json to_json(const BracketRegression& r) {
    using nlohmann::json;
    json checks = json::array();
    for (const auto& c : r.checks) {
        json e{{"a", c.a}, {"b", c.b}, {"printed", c.printed}, {"computed", c.computed},
               {"status", c.match ? "match" : (c.allowed ? "allow-listed" : "mismatch")}};
        if (!c.note.empty()) e["note"] = c.note;
        checks.push_back(std::move(e));
    }
    json unprinted = json::array();
    for (const auto& [a, b] : r.unprinted) unprinted.push_back({a, b});
    return {{"table", r.table},
            {"pass", r.pass()},
            {"checks", checks},
            {"stale_allowances", r.stale_allowances},
            {"unprinted_nonzero", unprinted}};
}

}  // namespace liesym
