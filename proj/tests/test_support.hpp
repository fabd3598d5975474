#pragma once

#include "skewdiv/int_matrix.hpp"
#include "skewdiv/snf.hpp"

#include <numeric>
#include <random>
#include <vector>

namespace testsupport {

using skewdiv::IntMatrix;

inline IntMatrix random_int_matrix(std::mt19937_64& rng, int rows, int cols, long long lo,
                                   long long hi) {
    std::uniform_int_distribution<long long> dist(lo, hi);
    IntMatrix m(rows, cols);
    for (int i = 0; i < rows; ++i)
        for (int j = 0; j < cols; ++j) m.at(i, j) = static_cast<long>(dist(rng));
    return m;
}

// Product of random elementary row operations: determinant is +1 or -1 by
// construction.
inline IntMatrix random_unimodular(std::mt19937_64& rng, int n, int ops = 25) {
    IntMatrix u = IntMatrix::identity(n);
    if (n < 2) return u;
    std::uniform_int_distribution<int> which(0, 2);
    std::uniform_int_distribution<int> row(0, n - 1);
    std::uniform_int_distribution<long long> mult(-3, 3);
    for (int k = 0; k < ops; ++k) {
        int i = row(rng), j = row(rng);
        switch (which(rng)) {
            case 0: {  // row i += c * row j
                if (i == j) break;
                const long long c = mult(rng);
                for (int t = 0; t < n; ++t)
                    u.at(i, t) += static_cast<long>(c) * u.at(j, t);
                break;
            }
            case 1: {  // swap
                if (i == j) break;
                for (int t = 0; t < n; ++t) std::swap(u.at(i, t), u.at(j, t));
                break;
            }
            default: {  // negate
                for (int t = 0; t < n; ++t) u.at(i, t) = -u.at(i, t);
                break;
            }
        }
    }
    return u;
}

// Cofactor-expansion determinant: an implementation-independent oracle for
// small matrices.
inline mpz_class cofactor_det(const IntMatrix& m) {
    const int n = m.rows();
    if (n == 0) return 1;
    if (n == 1) return m.at(0, 0);
    mpz_class det = 0;
    for (int i = 0; i < n; ++i) {
        if (m.at(i, 0) == 0) continue;
        IntMatrix minor(n - 1, n - 1);
        for (int r = 0, mr = 0; r < n; ++r) {
            if (r == i) continue;
            for (int c = 1; c < n; ++c) minor.at(mr, c - 1) = m.at(r, c);
            ++mr;
        }
        const mpz_class term = m.at(i, 0) * cofactor_det(minor);
        if (i % 2 == 0)
            det += term;
        else
            det -= term;
    }
    return det;
}

// Invariant factors via gcds of k x k minors: d_k = g_k / g_{k-1}. Brute force
// over all row/column subsets; only sensible for tiny matrices.
inline std::vector<mpz_class> minor_gcd_invariant_factors(const IntMatrix& m) {
    const int rows = m.rows(), cols = m.cols();
    const int nmin = std::min(rows, cols);
    std::vector<mpz_class> d(nmin, 0);
    mpz_class g_prev = 1;
    for (int k = 1; k <= nmin; ++k) {
        mpz_class g = 0;
        std::vector<int> rsel(k), csel(k);
        std::iota(rsel.begin(), rsel.end(), 0);
        for (;;) {
            std::iota(csel.begin(), csel.end(), 0);
            for (;;) {
                IntMatrix sub(k, k);
                for (int i = 0; i < k; ++i)
                    for (int j = 0; j < k; ++j) sub.at(i, j) = m.at(rsel[i], csel[j]);
                mpz_class det = cofactor_det(sub);
                mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), det.get_mpz_t());
                int i = k - 1;
                while (i >= 0 && csel[i] == cols - k + i) --i;
                if (i < 0) break;
                ++csel[i];
                for (int j = i + 1; j < k; ++j) csel[j] = csel[j - 1] + 1;
            }
            int i = k - 1;
            while (i >= 0 && rsel[i] == rows - k + i) --i;
            if (i < 0) break;
            ++rsel[i];
            for (int j = i + 1; j < k; ++j) rsel[j] = rsel[j - 1] + 1;
        }
        if (g == 0) break;  // all k-minors vanish: d_k and beyond are zero
        mpz_divexact(d[k - 1].get_mpz_t(), g.get_mpz_t(), g_prev.get_mpz_t());
        g_prev = g;
    }
    return d;
}

} // namespace testsupport
