// Evaluates the Green function at a few torsion points on y^2 = x^3 - x (tau = i)
// by all three routes and prints the agreement in bits.
#include "ellgreen.hpp"

#include <iostream>

int main() {
    using namespace ellgreen;
    PrecisionContext ctx(256);
    Tau tau = Tau::i();
    for (LatticeCoord z : {LatticeCoord(mpq_class(1, 2), 0), LatticeCoord(mpq_class(1, 3), mpq_class(1, 3)),
                           LatticeCoord(mpq_class(1, 5), mpq_class(2, 5))}) {
        GreenValue s = phi(z, tau, ctx, Method::sigma);
        GreenValue q = phi(z, tau, ctx, Method::siegel);
        GreenValue k = phi(z, tau, ctx, Method::kronecker);
        std::cout << "z = (" << z.a1() << ", " << z.a2() << ")\n"
                  << "  sigma     " << s.value.to_string(40) << '\n'
                  << "  siegel    agrees to " << agree_bits(s.value, q.value, ctx) << " bits\n"
                  << "  kronecker agrees to " << agree_bits(s.value, k.value, ctx) << " bits\n";
    }
    // sum over the nonzero 3-torsion equals -2 log 3
    BigReal sum = make_scalar<BigReal>(0, ctx);
    for (const TorsionCoord& t : torsion_points(3)) sum += phi(LatticeCoord(t), tau, ctx, Method::sigma).value;
    std::cout << "sum over E[3] \\ 0: " << sum.to_string(30) << '\n';
    return 0;
}
