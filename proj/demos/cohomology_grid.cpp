// Prints h^i(O(aE + bH)) over a small grid next to the Riemann-Roch
// Euler characteristic, the cross-check the cohomology module is
// gated on.

#include <cstdio>

#include "sodcheck/cohomology.hpp"
#include "sodcheck/ktheory.hpp"

int main() {
    using namespace sodcheck;
    const ChowRing ring(BundleGeometry::conifold());
    const KClass structure = kclass_of_line_bundle(ring, {0, 0});

    std::printf("  a   b    h^0 h^1 h^2 h^3    chi  hrr\n");
    for (long long a = -4; a <= 2; ++a)
        for (long long b = -2; b <= 2; ++b) {
            const DivisorClass d{a, b};
            const CohomologyVector h = line_bundle_cohomology(d, ring);
            const long long chi = euler_characteristic(h);
            const long long hrr = euler_pairing(ring, structure, kclass_of_line_bundle(ring, d));
            std::printf("%3lld %3lld    %3lld %3lld %3lld %3lld   %4lld %4lld%s\n", a, b, h[0],
                        h[1], h[2], h[3], chi, hrr, chi == hrr ? "" : "  MISMATCH");
        }
    return 0;
}
