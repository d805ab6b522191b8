#include "cyclicity/presets.hpp"

#include "cyclicity/errors.hpp"

namespace cyc {

const std::vector<Preset>& presets() {
    static const std::vector<Preset> table = {
        {"ejbh",
         "x' = -y + x*(x^2+y^2); y' = x + y*(x^2+y^2)",
         {},
         "(x^2+y^2)^2",
         "non-degenerate unstable focus; dr/dtheta = r^3"},
        {"ejfd",
         "x' = (x-y)*(x^2+y^2); y' = (x+y)*(x^2+y^2)",
         {},
         "(x^2+y^2)^2",
         "cubic homogeneous degenerate focus; dr/dtheta = r"},
        {"ex1",
         "x' = -y*((2*mu+1)*x^2+y^2) + x^3*(l1*x^2+l2*(x^2+y^2)); "
         "y' = x*(x^2+(1-2*mu)*y^2) + x^2*y*(l1*x^2+l2*(x^2+y^2))",
         {{"mu", Rational(1, 2)}, {"l1", Rational(1)}, {"l2", Rational(0)}},
         "exp(-2*mu*x^2/(x^2+y^2))*(x^2+y^2)^3",
         "degenerate focus of degree 3 with a non-analytic factor"},
        {"ex2",
         "x' = -y*(x^2+y^2) + x^3; y' = x*(x^2+y^2) + x^2*y",
         {},
         "(x^2+y^2)^2",
         "degree-3 instance with angular average pi"},
        {"ex3",
         "x' = (x-y)*(x^2+y^2); y' = (x+y)*(x^2+y^2)",
         {},
         "(x^2+y^2)^2",
         "alias of ejfd; its perturbation family carries the invariant circle "
         "x^2+y^2 = eps"},
        {"ex4",
         "x' = y + x^3; y' = -x^3 + 2*x^2*y",
         {},
         "(x^4 + 2*y^2)^(5/4)",
         "nilpotent, Andreev number 2, semistable cycle on the cylinder"},
        {"ex5",
         "x' = y - nu1*x^3; y' = -x^5 + nu2*x^2*y",
         {{"nu1", Rational(1, 10)}, {"nu2", Rational(1, 10)}},
         "x^6 - (nu2 + 3*nu1)*x^3*y + 3*y^2",
         "quasihomogeneous nilpotent point, Andreev number 3; focus iff nu2 != 3*nu1"},
    };
    return table;
}

const Preset& preset(const std::string& name) {
    for (auto& p : presets())
        if (p.name == name) return p;
    throw ParseError("unknown preset '" + name + "'");
}

} // namespace cyc
