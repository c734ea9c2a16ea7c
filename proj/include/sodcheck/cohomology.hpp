#pragma once

#include <algorithm>
#include <utility>
#include <vector>

#include "sodcheck/chow.hpp"
#include "sodcheck/error.hpp"

namespace sodcheck {

/* h^0, ..., h^dim of a sheaf on the total space; length dimension + 1. */
using CohomologyVector = std::vector<long long>;

inline long long euler_characteristic(const CohomologyVector& h) {
    long long chi = 0;
    for (size_t i = 0; i < h.size(); ++i) chi += (i % 2 == 0 ? h[i] : -h[i]);
    return chi;
}

/* Cohomology of O(n) on the projective line: the base case. */
inline std::pair<long long, long long> p1_cohomology(long long n) {
    return {std::max(n + 1, 0LL), std::max(-n - 1, 0LL)};
}

/* Twists of the base line bundles in the pushforward of O(a xi + b h):
   Sym^a of the dual bundle tensored by O(b). One entry per monomial of
   degree a in the r summands; sorted descending. */
inline std::vector<long long> pushforward_summands(long long a, long long b,
                                                   const BundleGeometry& g) {
    if (a < 0)
        throw Error("negative-fiber-degree", "pushforward needs fibre degree >= 0");
    std::vector<long long> out;
    std::vector<long long> counts(g.twists.size(), 0);
    auto recurse = [&](auto&& self, size_t factor, long long remaining) -> void {
        if (factor + 1 == g.twists.size()) {
            long long degree = b;
            counts[factor] = remaining;
            for (size_t i = 0; i < counts.size(); ++i)
                degree += counts[i] * (-g.twists[i]);
            out.push_back(degree);
            return;
        }
        for (long long k = 0; k <= remaining; ++k) {
            counts[factor] = k;
            self(self, factor + 1, remaining - k);
        }
    };
    recurse(recurse, 0, a);
    std::sort(out.rbegin(), out.rend());
    return out;
}

/* Exact cohomology of O(aE + bH). Nonnegative fibre degree pushes forward
   to the line; -(r-1) <= a <= -1 is fibrewise acyclic; a <= -r goes
   through Serre duality against K_Y. */
inline CohomologyVector line_bundle_cohomology(DivisorClass d, const ChowRing& ring) {
    const int r = ring.geometry().rank();
    const int dim = ring.dimension();
    CohomologyVector h(static_cast<size_t>(dim) + 1, 0);
    if (d.e >= 0) {
        for (long long s : pushforward_summands(d.e, d.h, ring.geometry())) {
            const auto [h0, h1] = p1_cohomology(s);
            h[0] += h0;
            h[1] += h1;
        }
        return h;
    }
    if (d.e >= -(r - 1)) return h;
    const CohomologyVector dual = line_bundle_cohomology(ring.canonical_class() - d, ring);
    for (int i = 0; i <= dim; ++i) h[static_cast<size_t>(i)] = dual[static_cast<size_t>(dim - i)];
    return h;
}

/* dim Ext^i(O(src), O(dst)) = h^i(O(dst - src)). */
inline CohomologyVector rhom_dims(DivisorClass src, DivisorClass dst, const ChowRing& ring) {
    return line_bundle_cohomology(dst - src, ring);
}

} // namespace sodcheck
