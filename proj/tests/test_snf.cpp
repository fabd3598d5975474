#include "skewdiv/incidence.hpp"
#include "skewdiv/snf.hpp"

#include <doctest.h>

#include "test_support.hpp"

#include <random>

using namespace skewdiv;
using namespace testsupport;

namespace {

IntMatrix from_rows(const std::vector<std::vector<long>>& rows) {
    const int nr = static_cast<int>(rows.size());
    const int nc = nr ? static_cast<int>(rows[0].size()) : 0;
    IntMatrix m(nr, nc);
    for (int i = 0; i < nr; ++i)
        for (int j = 0; j < nc; ++j) m.at(i, j) = rows[i][j];
    return m;
}

bool divisibility_chain_holds(const std::vector<mpz_class>& d) {
    for (std::size_t i = 1; i < d.size(); ++i) {
        if (d[i - 1] == 0) {
            if (d[i] != 0) return false;
            continue;
        }
        if (d[i] != 0 && !mpz_divisible_p(d[i].get_mpz_t(), d[i - 1].get_mpz_t()))
            return false;
    }
    return true;
}

} // namespace

TEST_SUITE_BEGIN("exact_snf");

TEST_CASE("smith normal form of fixed examples") {
    {
        auto s = smith_normal_form(from_rows({{2, 0}, {0, 6}}));
        CHECK(s.diagonal == std::vector<mpz_class>{2, 6});
    }
    {
        // gcd-of-minors oracle: d1 = 2, d1*d2 = |det| = 8
        auto m = from_rows({{2, 4}, {6, 8}});
        auto s = smith_normal_form(m);
        CHECK(s.diagonal == std::vector<mpz_class>{2, 4});
        CHECK(minor_gcd_invariant_factors(m) == s.diagonal);
    }
    {
        auto s = smith_normal_form(IntMatrix(3, 5));
        CHECK(s.diagonal == std::vector<mpz_class>{0, 0, 0});
    }
    {
        auto s = smith_normal_form(IntMatrix(0, 4));
        CHECK(s.diagonal.empty());
    }
}

TEST_CASE("smith normal form: chain, minors oracle, witnesses on random input") {
    std::mt19937_64 rng(101);
    std::uniform_int_distribution<int> dim(1, 6);
    for (int trial = 0; trial < 60; ++trial) {
        const IntMatrix m = random_int_matrix(rng, dim(rng), dim(rng), -9, 9);
        auto s = smith_normal_form(m, true);
        CHECK(divisibility_chain_holds(s.diagonal));
        CHECK(minor_gcd_invariant_factors(m) == s.diagonal);

        REQUIRE(s.row_transform.has_value());
        REQUIRE(s.col_transform.has_value());
        IntMatrix d = (*s.row_transform * m) * *s.col_transform;
        REQUIRE(d.rows() == m.rows());
        REQUIRE(d.cols() == m.cols());
        for (int i = 0; i < d.rows(); ++i)
            for (int j = 0; j < d.cols(); ++j)
                CHECK(d.at(i, j) == (i == j ? s.diagonal[i] : mpz_class(0)));
        // the witnesses are unimodular
        mpz_class du = determinant(*s.row_transform);
        mpz_class dv = determinant(*s.col_transform);
        CHECK((du == 1 || du == -1));
        CHECK((dv == 1 || dv == -1));
    }
}

TEST_CASE("smith normal form is invariant under unimodular transforms") {
    std::mt19937_64 rng(202);
    const IntMatrix m = random_int_matrix(rng, 5, 5, -9, 9);
    const auto base = smith_normal_form(m).diagonal;
    for (int trial = 0; trial < 30; ++trial) {
        const IntMatrix u = random_unimodular(rng, 5);
        const IntMatrix v = random_unimodular(rng, 5);
        CHECK(smith_normal_form((u * m) * v).diagonal == base);
    }
}

TEST_CASE("determinant: fixed values and oracle agreement") {
    CHECK(determinant(IntMatrix::identity(6)) == 1);
    CHECK(determinant(IntMatrix(0, 0)) == 1);
    CHECK(determinant(from_rows({{2, 4}, {6, 8}})) == -8);
    CHECK(determinant(from_rows({{1, 2}, {2, 4}})) == 0);
    CHECK_THROWS_AS(determinant(IntMatrix(2, 3)), std::invalid_argument);

    std::mt19937_64 rng(303);
    std::uniform_int_distribution<int> dim(1, 6);
    for (int trial = 0; trial < 60; ++trial) {
        const IntMatrix m = random_int_matrix(rng, dim(rng), 0, -9, 9);
        const IntMatrix sq = random_int_matrix(rng, m.rows(), m.rows(), -9, 9);
        CHECK(determinant(sq) == cofactor_det(sq));
        CHECK(determinant(sq, 3) == cofactor_det(sq));  // threaded path identical
    }
}

TEST_CASE("rank over the rationals") {
    CHECK(rank_over_rationals(IntMatrix(3, 3)) == 0);
    CHECK(rank_over_rationals(IntMatrix::identity(4)) == 4);
    CHECK(rank_over_rationals(from_rows({{1, 2}, {2, 4}})) == 1);
    CHECK(rank_over_rationals(from_rows({{0, 1}, {0, 0}})) == 1);

    std::mt19937_64 rng(404);
    for (int trial = 0; trial < 40; ++trial) {
        const IntMatrix m = random_int_matrix(rng, 5, 7, -4, 4);
        // oracle: count of nonzero invariant factors
        long long nonzero = 0;
        for (const auto& d : smith_normal_form(m).diagonal)
            if (d != 0) ++nonzero;
        CHECK(rank_over_rationals(m) == nonzero);
        CHECK(rank_over_rationals(m.transposed()) == nonzero);
    }
}

TEST_CASE("p-local profile: fixed examples") {
    {
        auto prof = p_local_elementary_divisors(IntMatrix::identity(5), Prime(3));
        CHECK(prof.count(0) == 5);
        CHECK(prof.rank() == 5);
        CHECK(prof.max_exponent() == 0);
    }
    {
        // elementary divisors 2^1 * 3 and 2^3: exponents 1 and 3 at p = 2
        auto prof = p_local_elementary_divisors(from_rows({{6, 0}, {0, 8}}), Prime(2));
        CHECK(prof.count(1) == 1);
        CHECK(prof.count(3) == 1);
        CHECK(prof.weighted_exponent_sum() == 4);
    }
    {
        // singular input: only the nonzero invariant factor contributes
        auto prof = p_local_elementary_divisors(from_rows({{2, 4}, {1, 2}}), Prime(2));
        CHECK(prof.rank() == 1);
        CHECK(prof.count(0) == 1);
    }
}

TEST_CASE("p-local cap escalates past the initial exponent") {
    // valuation 20 forces the default cap of 8 to grow
    IntMatrix m(2, 2);
    m.at(0, 0) = mpz_class(1) << 20;
    m.at(1, 1) = 3;
    auto prof = p_local_elementary_divisors(m, Prime(2));
    CHECK(prof.count(0) == 1);
    CHECK(prof.count(20) == 1);

    // valuation 70 exceeds every word-size cap and lands in the bigint engine
    IntMatrix big(1, 1);
    big.at(0, 0) = mpz_class(1) << 70;
    auto prof2 = p_local_elementary_divisors(big, Prime(2));
    CHECK(prof2.count(70) == 1);
}

TEST_CASE("engine agreement on random matrices") {
    std::mt19937_64 rng(505);
    std::uniform_int_distribution<int> dim(1, 10);
    for (int trial = 0; trial < 60; ++trial) {
        const IntMatrix m = random_int_matrix(rng, dim(rng), dim(rng), -9, 9);
        const auto snf = smith_normal_form(m);
        for (long long p : {2, 3, 5}) {
            const auto a = profile_from_snf(snf, Prime(p));
            const auto b = p_local_elementary_divisors(m, Prime(p));
            CHECK(a == b);
            CHECK_NOTHROW(elementary_divisors(m, Prime(p), DivisorEngine::Both));
        }
    }
}

TEST_CASE("filtration dimensions: fixed examples") {
    {
        // diag(1, 2, 4) at p = 2: layers 3, 2, 1, then the chain is exhausted
        auto dims = filtration_dims(from_rows({{1, 0, 0}, {0, 2, 0}, {0, 0, 4}}), Prime(2), 4);
        CHECK(dims == std::vector<long long>{3, 2, 1, 0, 0});
    }
    {
        // rank-1 rectangular map: the free kernel never drains
        auto dims = filtration_dims(from_rows({{1, 0}}), Prime(2), 3);
        CHECK(dims == std::vector<long long>{2, 1, 1, 1});
    }
    {
        auto dims = filtration_dims(IntMatrix::identity(4), Prime(5), 2);
        CHECK(dims == std::vector<long long>{4, 0, 0});
    }
    {
        auto dims = filtration_dims(IntMatrix(2, 3), Prime(3), 2);
        CHECK(dims == std::vector<long long>{3, 3, 3});
    }
    {
        auto dims = filtration_dims(from_rows({{4}}), Prime(2), 0);
        CHECK(dims == std::vector<long long>{1});
    }
}

TEST_CASE("filtration differences reproduce the divisor profile") {
    std::mt19937_64 rng(606);
    std::uniform_int_distribution<int> rdim(1, 8), cdim(1, 8);
    for (int trial = 0; trial < 50; ++trial) {
        const IntMatrix m = random_int_matrix(rng, rdim(rng), cdim(rng), -9, 9);
        const auto snf = smith_normal_form(m);
        for (long long p : {2, 3, 5}) {
            const auto prof = profile_from_snf(snf, Prime(p));
            const int i_max = static_cast<int>(std::max<long long>(prof.max_exponent(), 0)) + 1;
            const auto dims = filtration_dims(m, Prime(p), i_max);
            const auto filt = profile_from_filtration(dims, Prime(p), prof.size);
            CHECK(filt.multiplicities == prof.multiplicities);
            // what remains at the top layer is the free kernel
            CHECK(dims.back() == m.cols() - prof.rank());
        }
    }
}

TEST_CASE("filtration dimensions are monotone non-increasing") {
    std::mt19937_64 rng(707);
    for (int trial = 0; trial < 20; ++trial) {
        const IntMatrix m = random_int_matrix(rng, 6, 6, -9, 9);
        const auto dims = filtration_dims(m, Prime(2), 6);
        for (std::size_t i = 1; i < dims.size(); ++i) CHECK(dims[i] <= dims[i - 1]);
    }
}

TEST_CASE("spectrum checks pass for A and fail for J") {
    const Prime p(2);
    const IntMatrix a = build_eta({p, 4, 2, 2, IncidenceKind::Skew});
    const auto rep = char_poly_free_spectrum_check(a, p);
    CHECK(rep.all_pass());
    for (const auto& c : rep.checks())
        if (c.name == "trace_A_squared") CHECK(c.computed == "560");

    const auto bad = char_poly_free_spectrum_check(all_ones(35, 35), p);
    CHECK_FALSE(bad.all_pass());
    CHECK_THROWS_AS(char_poly_free_spectrum_check(all_ones(12, 12), p),
                    std::invalid_argument);
}

TEST_CASE("profile JSON uses ascending exponent keys") {
    auto prof = p_local_elementary_divisors(from_rows({{6, 0}, {0, 8}}), Prime(2));
    const auto j = prof.to_json();
    CHECK(j.dump() == R"({"p":2,"size":2,"multiplicities":{"1":1,"3":1}})");
}

TEST_SUITE_END();
