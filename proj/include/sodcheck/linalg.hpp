#pragma once

#include <algorithm>
#include <cstdlib>
#include <optional>
#include <vector>

#include "sodcheck/rational.hpp"

namespace sodcheck {

using RationalMatrix = std::vector<std::vector<Rational>>;
using IntMatrix = std::vector<std::vector<long long>>;

namespace linalg {

/* Rank of a rational matrix by Gaussian elimination. */
inline int rank(RationalMatrix m) {
    if (m.empty()) return 0;
    const size_t rows = m.size(), cols = m[0].size();
    int rk = 0;
    for (size_t col = 0; col < cols && static_cast<size_t>(rk) < rows; ++col) {
        size_t pivot = rk;
        while (pivot < rows && m[pivot][col].is_zero()) ++pivot;
        if (pivot == rows) continue;
        std::swap(m[pivot], m[static_cast<size_t>(rk)]);
        const Rational inv = Rational(1) / m[static_cast<size_t>(rk)][col];
        for (size_t j = col; j < cols; ++j) m[static_cast<size_t>(rk)][j] *= inv;
        for (size_t i = 0; i < rows; ++i) {
            if (i == static_cast<size_t>(rk) || m[i][col].is_zero()) continue;
            const Rational f = m[i][col];
            for (size_t j = col; j < cols; ++j) m[i][j] -= f * m[static_cast<size_t>(rk)][j];
        }
        ++rk;
    }
    return rk;
}

/* Solves A x = b over the rationals. Returns nullopt when inconsistent.
   Requires the solution to be unique (full column rank); callers check
   rank separately when underdetermination needs its own diagnosis. */
inline std::optional<std::vector<Rational>> solve_unique(const RationalMatrix& a,
                                                         const std::vector<Rational>& b) {
    const size_t rows = a.size();
    const size_t cols = rows ? a[0].size() : 0;
    RationalMatrix m = a;
    for (size_t i = 0; i < rows; ++i) m[i].push_back(b[i]);

    size_t rk = 0;
    std::vector<size_t> pivot_col;
    for (size_t col = 0; col < cols && rk < rows; ++col) {
        size_t pivot = rk;
        while (pivot < rows && m[pivot][col].is_zero()) ++pivot;
        if (pivot == rows) continue;
        std::swap(m[pivot], m[rk]);
        const Rational inv = Rational(1) / m[rk][col];
        for (size_t j = col; j <= cols; ++j) m[rk][j] *= inv;
        for (size_t i = 0; i < rows; ++i) {
            if (i == rk || m[i][col].is_zero()) continue;
            const Rational f = m[i][col];
            for (size_t j = col; j <= cols; ++j) m[i][j] -= f * m[rk][j];
        }
        pivot_col.push_back(col);
        ++rk;
    }
    for (size_t i = rk; i < rows; ++i)
        if (!m[i][cols].is_zero()) return std::nullopt; // inconsistent
    if (rk < cols) return std::nullopt;                 // not unique; caller pre-checks rank

    std::vector<Rational> x(cols, Rational(0));
    for (size_t i = 0; i < rk; ++i) x[pivot_col[i]] = m[i][cols];
    return x;
}

struct SmithDecomposition {
    IntMatrix d; // diagonal, l * a * r = d
    IntMatrix l; // unimodular
    IntMatrix r; // unimodular
};

inline IntMatrix identity(size_t n) {
    IntMatrix m(n, std::vector<long long>(n, 0));
    for (size_t i = 0; i < n; ++i) m[i][i] = 1;
    return m;
}

inline IntMatrix matmul(const IntMatrix& a, const IntMatrix& b) {
    const size_t n = a.size(), k = b.size(), p = b.empty() ? 0 : b[0].size();
    IntMatrix c(n, std::vector<long long>(p, 0));
    for (size_t i = 0; i < n; ++i)
        for (size_t j = 0; j < k; ++j) {
            if (a[i][j] == 0) continue;
            for (size_t t = 0; t < p; ++t)
                c[i][t] = detail::checked_add(c[i][t], detail::checked_mul(a[i][j], b[j][t]));
        }
    return c;
}

/* Smith normal form of an integer matrix: unimodular l, r with l*a*r
   diagonal and nonnegative on the diagonal. Row/column reduction towards
   the minimal pivot, as in the standard algorithm. */
inline SmithDecomposition smith_normal_form(const IntMatrix& a) {
    const size_t rows = a.size();
    const size_t cols = rows ? a[0].size() : 0;
    SmithDecomposition s{a, identity(rows), identity(cols)};
    IntMatrix& d = s.d;

    auto add_row = [&](size_t dst, size_t src, long long f) {
        for (size_t j = 0; j < cols; ++j)
            d[dst][j] = detail::checked_add(d[dst][j], detail::checked_mul(f, d[src][j]));
        for (size_t j = 0; j < rows; ++j)
            s.l[dst][j] = detail::checked_add(s.l[dst][j], detail::checked_mul(f, s.l[src][j]));
    };
    auto add_col = [&](size_t dst, size_t src, long long f) {
        for (size_t i = 0; i < rows; ++i)
            d[i][dst] = detail::checked_add(d[i][dst], detail::checked_mul(f, d[i][src]));
        for (size_t i = 0; i < cols; ++i)
            s.r[i][dst] = detail::checked_add(s.r[i][dst], detail::checked_mul(f, s.r[i][src]));
    };

    const size_t nmin = std::min(rows, cols);
    for (size_t k = 0; k < nmin; ++k) {
        for (;;) {
            // Locate the minimal nonzero entry of the trailing block.
            size_t pi = k, pj = k;
            long long best = 0;
            for (size_t i = k; i < rows; ++i)
                for (size_t j = k; j < cols; ++j)
                    if (d[i][j] != 0 && (best == 0 || std::abs(d[i][j]) < best)) {
                        best = std::abs(d[i][j]);
                        pi = i;
                        pj = j;
                    }
            if (best == 0) break; // trailing block is zero
            if (pi != k) {
                std::swap(d[pi], d[k]);
                std::swap(s.l[pi], s.l[k]);
            }
            if (pj != k) {
                for (size_t i = 0; i < rows; ++i) std::swap(d[i][pj], d[i][k]);
                for (size_t i = 0; i < cols; ++i) std::swap(s.r[i][pj], s.r[i][k]);
            }
            bool clean = true;
            for (size_t i = k + 1; i < rows; ++i)
                if (d[i][k] != 0) {
                    add_row(i, k, -(d[i][k] / d[k][k]));
                    if (d[i][k] != 0) clean = false;
                }
            for (size_t j = k + 1; j < cols; ++j)
                if (d[k][j] != 0) {
                    add_col(j, k, -(d[k][j] / d[k][k]));
                    if (d[k][j] != 0) clean = false;
                }
            if (!clean) continue;
            // Enforce divisibility of the trailing block by the pivot.
            size_t bad_row = 0;
            bool divides = true;
            for (size_t i = k + 1; i < rows && divides; ++i)
                for (size_t j = k + 1; j < cols; ++j)
                    if (d[i][j] % d[k][k] != 0) {
                        divides = false;
                        bad_row = i;
                        break;
                    }
            if (divides) break;
            add_row(k, bad_row, 1);
        }
        if (d[k][k] < 0) {
            for (size_t j = 0; j < cols; ++j) d[k][j] = -d[k][j];
            for (size_t j = 0; j < rows; ++j) s.l[k][j] = -s.l[k][j];
        }
    }
    return s;
}

/* Integer solution of A x = b, if one exists. Works through the Smith
   form: with l*a*r = d, solve d y = l b by division and set x = r y. */
inline std::optional<std::vector<long long>> solve_integer(const IntMatrix& a,
                                                           const std::vector<long long>& b) {
    const size_t rows = a.size();
    const size_t cols = rows ? a[0].size() : 0;
    if (rows == 0) return std::vector<long long>{};
    const SmithDecomposition s = smith_normal_form(a);

    std::vector<long long> lb(rows, 0);
    for (size_t i = 0; i < rows; ++i)
        for (size_t j = 0; j < rows; ++j)
            lb[i] = detail::checked_add(lb[i], detail::checked_mul(s.l[i][j], b[j]));

    std::vector<long long> y(cols, 0);
    const size_t nmin = std::min(rows, cols);
    for (size_t i = 0; i < nmin; ++i) {
        if (s.d[i][i] == 0) {
            if (lb[i] != 0) return std::nullopt;
        } else {
            if (lb[i] % s.d[i][i] != 0) return std::nullopt;
            y[i] = lb[i] / s.d[i][i];
        }
    }
    for (size_t i = nmin; i < rows; ++i)
        if (lb[i] != 0) return std::nullopt;

    std::vector<long long> x(cols, 0);
    for (size_t i = 0; i < cols; ++i)
        for (size_t j = 0; j < cols; ++j)
            x[i] = detail::checked_add(x[i], detail::checked_mul(s.r[i][j], y[j]));
    return x;
}

/* Integer solution of a rational system: scales each row by its common
   denominator, then solves over the integers. */
inline std::optional<std::vector<long long>> solve_integer(const RationalMatrix& a,
                                                           const std::vector<Rational>& b) {
    const size_t rows = a.size();
    const size_t cols = rows ? a[0].size() : 0;
    IntMatrix ai(rows, std::vector<long long>(cols, 0));
    std::vector<long long> bi(rows, 0);
    for (size_t i = 0; i < rows; ++i) {
        long long lcm = b[i].den();
        for (size_t j = 0; j < cols; ++j)
            lcm = detail::checked_mul(lcm / std::gcd(lcm, a[i][j].den()), a[i][j].den());
        for (size_t j = 0; j < cols; ++j)
            ai[i][j] = detail::checked_mul(a[i][j].num(), lcm / a[i][j].den());
        bi[i] = detail::checked_mul(b[i].num(), lcm / b[i].den());
    }
    return solve_integer(ai, bi);
}

} // namespace linalg
} // namespace sodcheck
