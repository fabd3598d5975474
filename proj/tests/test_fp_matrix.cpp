#include "skewdiv/fp_matrix.hpp"
#include "skewdiv/int_matrix.hpp"

#include <doctest.h>

#include <random>
#include <set>

using namespace skewdiv;

TEST_SUITE_BEGIN("gfp_linalg");

TEST_CASE("Prime accepts primes and rejects everything else") {
    for (long long p : {2, 3, 5, 7, 11, 97, 1000003}) CHECK(Prime(p).value() == p);
    for (long long n : {-7LL, 0LL, 1LL, 4LL, 6LL, 9LL, 15LL, 1000000LL})
        CHECK_THROWS_AS(Prime{n}, std::invalid_argument);
}

TEST_CASE("rref of an invertible 2x2 over F_2 is the identity") {
    FpMatrix m(Prime(2), 2, 2, {1, 1, 0, 1});
    auto rr = rref(m);
    CHECK(rr.rank == 2);
    CHECK(rr.matrix == FpMatrix(Prime(2), 2, 2, {1, 0, 0, 1}));
    CHECK(rr.pivot_cols == std::vector<int>{0, 1});
}

TEST_CASE("rref of a rank-1 matrix over F_3 matches the row-space oracle") {
    FpMatrix m(Prime(3), 2, 2, {2, 1, 1, 2});

    // oracle: enumerate every F_3 combination of the rows
    std::set<std::pair<long long, long long>> span;
    for (long long a = 0; a < 3; ++a)
        for (long long b = 0; b < 3; ++b)
            span.insert({(a * 2 + b * 1) % 3, (a * 1 + b * 2) % 3});
    CHECK(span.size() == 3);  // 3^1 elements, so rank 1

    auto rr = rref(m);
    CHECK(rr.rank == 1);
    CHECK(rr.matrix == FpMatrix(Prime(3), 2, 2, {1, 2, 0, 0}));
    // the reduced row lies in the span
    CHECK(span.count({rr.matrix(0, 0), rr.matrix(0, 1)}) == 1);
}

TEST_CASE("rref of the zero matrix") {
    for (long long p : {2, 5}) {
        FpMatrix z(Prime(p), 3, 3);
        auto rr = rref(z);
        CHECK(rr.rank == 0);
        CHECK(rr.matrix == z);
        CHECK(rr.pivot_cols.empty());
    }
}

TEST_CASE("rref handles zero-dimensional matrices") {
    for (auto [r, c] : std::vector<std::pair<int, int>>{{0, 0}, {0, 3}, {3, 0}}) {
        FpMatrix m(Prime(3), r, c);
        auto rr = rref(m);
        CHECK(rr.rank == 0);
        CHECK(rr.matrix.rows() == r);
        CHECK(rr.matrix.cols() == c);
    }
}

TEST_CASE("rref is idempotent and invariant under invertible row mixes") {
    std::mt19937_64 rng(20240811);
    for (long long p : {2, 3, 5}) {
        std::uniform_int_distribution<long long> entry(0, p - 1);
        std::uniform_int_distribution<int> dim(1, 8);
        for (int trial = 0; trial < 60; ++trial) {
            const int rows = dim(rng), cols = dim(rng);
            std::vector<long long> e(static_cast<std::size_t>(rows) * cols);
            for (auto& v : e) v = entry(rng);
            FpMatrix m(Prime(p), rows, cols, e);
            auto rr = rref(m);

            CHECK(rref(rr.matrix).matrix == rr.matrix);

            // random invertible row operations must not change the RREF
            FpMatrix mixed = m;
            std::uniform_int_distribution<int> row(0, rows - 1);
            std::uniform_int_distribution<long long> scale(1, p - 1);
            for (int op = 0; op < 15; ++op) {
                const int i = row(rng), j = row(rng);
                switch (op % 3) {
                    case 0:
                        for (int t = 0; t < cols; ++t) {
                            auto tmp = mixed(i, t);
                            mixed.set(i, t, mixed(j, t));
                            mixed.set(j, t, tmp);
                        }
                        break;
                    case 1: {
                        const long long c = scale(rng);
                        for (int t = 0; t < cols; ++t) mixed.set(i, t, mixed(i, t) * c);
                        break;
                    }
                    default:
                        if (i != j) {
                            const long long c = entry(rng);
                            for (int t = 0; t < cols; ++t)
                                mixed.set(i, t, mixed(i, t) + c * mixed(j, t));
                        }
                        break;
                }
            }
            auto rr2 = rref(mixed);
            CHECK(rr2.matrix == rr.matrix);
            CHECK(rr2.pivot_cols == rr.pivot_cols);
        }
    }
}

TEST_CASE("bit-packed GF(2) elimination is identical to the generic path") {
    std::mt19937_64 rng(7);
    std::uniform_int_distribution<int> dim(1, 24);
    std::uniform_int_distribution<long long> bit(0, 1);
    for (int trial = 0; trial < 1000; ++trial) {
        const int rows = dim(rng), cols = dim(rng);
        std::vector<long long> e(static_cast<std::size_t>(rows) * cols);
        for (auto& v : e) v = bit(rng);
        FpMatrix m(Prime(2), rows, cols, e);
        auto generic = rref(m);
        auto packed = rref_bitpacked_gf2(m);
        CHECK(generic.matrix == packed.matrix);
        CHECK(generic.rank == packed.rank);
        CHECK(generic.pivot_cols == packed.pivot_cols);
    }
    CHECK_THROWS_AS(rref_bitpacked_gf2(FpMatrix(Prime(3), 1, 1)), std::invalid_argument);
}

TEST_CASE("mat_mul_mod_p basics") {
    Prime p2(2);
    FpMatrix id(p2, 2, 2, {1, 0, 0, 1});
    FpMatrix b(p2, 2, 2, {1, 1, 0, 1});
    CHECK(mat_mul_mod_p(id, b) == b);

    FpMatrix row(p2, 1, 2, {1, 1});
    FpMatrix col(p2, 2, 1, {1, 1});
    CHECK(mat_mul_mod_p(row, col) == FpMatrix(p2, 1, 1, {0}));  // 2 = 0 mod 2

    CHECK_THROWS_AS(mat_mul_mod_p(row, row), std::invalid_argument);
}

TEST_CASE("mat_mul_mod_p agrees with integer arithmetic") {
    std::mt19937_64 rng(99);
    Prime p(5);
    std::uniform_int_distribution<long long> entry(0, 4);
    for (int trial = 0; trial < 25; ++trial) {
        std::vector<long long> ae(16), be(16);
        for (auto& v : ae) v = entry(rng);
        for (auto& v : be) v = entry(rng);
        FpMatrix a(p, 4, 4, ae), b(p, 4, 4, be);
        // integer-arithmetic oracle
        IntMatrix prod = lift_to_int(a) * lift_to_int(b);
        CHECK(mat_mul_mod_p(a, b) == reduce_mod_p(prod, p));
    }
}

TEST_CASE("rank_mod_p basics and transpose invariance") {
    for (long long p : {2, 3, 7}) {
        IntMatrix id = IntMatrix::identity(5);
        CHECK(rank_mod_p(id, Prime(p)) == 5);
    }
    std::mt19937_64 rng(3);
    std::uniform_int_distribution<long long> entry(-9, 9);
    for (int trial = 0; trial < 40; ++trial) {
        IntMatrix m(4, 6);
        for (int i = 0; i < 4; ++i)
            for (int j = 0; j < 6; ++j) m.at(i, j) = static_cast<long>(entry(rng));
        for (long long p : {2, 3, 5}) {
            const long long r = rank_mod_p(m, Prime(p));
            CHECK(r <= 4);
            CHECK(r == rank_mod_p(m.transposed(), Prime(p)));
        }
    }
}

TEST_SUITE_END();
