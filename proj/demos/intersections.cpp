// Minimal tour of the Chow-ring API: the intersection pairing on the
// conifold resolution and the divisor recovered from pairing constraints.

#include <iostream>

#include "sodcheck/chow.hpp"

int main() {
    using namespace sodcheck;
    const ChowRing ring(BundleGeometry::conifold());
    const CurveClass section{1, 0}, fibre_line{0, 1};

    std::cout << "E.C = " << ring.intersect({1, 0}, section)
              << "  H.C = " << ring.intersect({0, 1}, section) << "\n";
    std::cout << "E.L = " << ring.intersect({1, 0}, fibre_line)
              << "  H.L = " << ring.intersect({0, 1}, fibre_line) << "\n";
    std::cout << "K   = " << format_divisor(ring.canonical_class(), ring.geometry()) << "\n";

    const DivisorClass d = ring.solve_divisor({{section, -1}, {fibre_line, 1}});
    std::cout << "divisor with D.C = -1, D.L = 1: " << format_divisor(d, ring.geometry())
              << "\n";
    return 0;
}
