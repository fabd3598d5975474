#include "skewdiv/incidence.hpp"

#include <doctest.h>

using namespace skewdiv;

TEST_SUITE_BEGIN("incidence");

TEST_CASE("incidence spec validation") {
    CHECK_THROWS_AS(IncidenceSpec({Prime(2), 4, 0, 2, IncidenceKind::Skew}).validate(),
                    std::invalid_argument);
    CHECK_THROWS_AS(IncidenceSpec({Prime(2), 4, 2, 4, IncidenceKind::Skew}).validate(),
                    std::invalid_argument);
    CHECK_THROWS_AS(
        IncidenceSpec({Prime(2), 4, 2, 2, IncidenceKind::HyperplaneComplement}).validate(),
        std::invalid_argument);
    CHECK_NOTHROW(
        IncidenceSpec({Prime(2), 4, 3, 2, IncidenceKind::HyperplaneComplement}).validate());
}

TEST_CASE("skew incidence matrix of lines, p = 2") {
    const Prime p(2);
    const IntMatrix a = build_eta({p, 4, 2, 2, IncidenceKind::Skew});
    REQUIRE(a.rows() == 35);
    REQUIRE(a.cols() == 35);
    CHECK(a == a.transposed());
    CHECK(a.trace() == 0);
    for (int i = 0; i < 35; ++i) {
        CHECK(a.at(i, i) == 0);
        CHECK(a.row_sum(i) == 16);
        CHECK(a.col_sum(i) == 16);
    }
}

TEST_CASE("point-line skew matrix, p = 2: every point avoids 28 lines") {
    const IntMatrix phi = build_eta({Prime(2), 4, 1, 2, IncidenceKind::Skew});
    REQUIRE(phi.rows() == 15);
    REQUIRE(phi.cols() == 35);
    for (int i = 0; i < 15; ++i) CHECK(phi.row_sum(i) == 28);
}

TEST_CASE("eta transposes across swapped dimensions") {
    const IntMatrix a12 = build_eta({Prime(2), 4, 1, 2, IncidenceKind::Skew});
    const IntMatrix a21 = build_eta({Prime(2), 4, 2, 1, IncidenceKind::Skew});
    CHECK(a12.transposed() == a21);
}

TEST_CASE("hyperplane-complement matrix row sums are p^2 (p^2+p+1)") {
    const IntMatrix c2 = build_psi(Prime(2));
    REQUIRE(c2.rows() == 15);
    REQUIRE(c2.cols() == 35);
    for (int i = 0; i < c2.rows(); ++i) CHECK(c2.row_sum(i) == 28);

    const IntMatrix c3 = build_psi(Prime(3));
    REQUIRE(c3.rows() == 40);
    REQUIRE(c3.cols() == 130);
    for (int i = 0; i < c3.rows(); ++i) CHECK(c3.row_sum(i) == 117);
}

TEST_CASE("psi entries vanish exactly on containment") {
    const Prime p(2);
    const auto bundle = build_bundle(p);
    for (std::size_t i = 0; i < bundle.hyperplanes.size(); ++i)
        for (std::size_t j = 0; j < bundle.lines.size(); ++j) {
            const bool contained =
                intersection_dim(bundle.hyperplanes[i], bundle.lines[j]) == 2;
            CHECK(bundle.psi.at(i, j) == (contained ? 0 : 1));
        }
}

TEST_CASE("all-ones matrix identities") {
    const IntMatrix j2 = all_ones(2, 2);
    CHECK(j2.at(0, 0) == 1);
    CHECK(j2.at(1, 1) == 1);

    const IntMatrix j = all_ones(35, 35);
    CHECK(j * j == mpz_class(35) * j);

    const IntMatrix a = build_eta({Prime(2), 4, 2, 2, IncidenceKind::Skew});
    CHECK(a * j == mpz_class(16) * j);  // row sums are p^4
}

TEST_CASE("matrix identity holds for A and fails for J") {
    for (long long p : {2, 3}) {
        const IntMatrix a = build_eta({Prime(p), 4, 2, 2, IncidenceKind::Skew});
        CHECK(verify_matrix_identity(a, Prime(p)));
    }
    CHECK_FALSE(verify_matrix_identity(all_ones(35, 35), Prime(2)));
    CHECK_THROWS_AS(verify_matrix_identity(all_ones(34, 34), Prime(2)),
                    std::invalid_argument);
    CHECK_THROWS_AS(verify_matrix_identity(all_ones(34, 35), Prime(2)),
                    std::invalid_argument);
}

TEST_CASE("counting lemmas hold for p = 2 and p = 3") {
    for (long long p : {2, 3}) {
        const auto rep = verify_counting_lemmas(Prime(p));
        CHECK(rep.all_pass());
    }
}

TEST_CASE("composite product values at p = 2 are exactly {16,6,8} and {16,12}") {
    const auto b = build_bundle(Prime(2));
    const IntMatrix a2 = b.eta22 * b.eta22;
    for (int i = 0; i < a2.rows(); ++i)
        for (int j = 0; j < a2.cols(); ++j) {
            const mpz_class v = a2.at(i, j);
            if (i == j)
                CHECK(v == 16);
            else
                CHECK((v == 6 || v == 8));
        }
    const IntMatrix c = b.eta22 * b.phi.transposed();
    for (int i = 0; i < c.rows(); ++i)
        for (int j = 0; j < c.cols(); ++j) {
            const mpz_class v = c.at(i, j);
            CHECK((v == 16 || v == 12));
        }
}

TEST_CASE("construction is identical across thread counts") {
    IncidenceBuildOptions serial;
    IncidenceBuildOptions parallel;
    parallel.threads = 3;
    const IntMatrix a1 = build_eta({Prime(3), 4, 2, 2, IncidenceKind::Skew}, serial);
    const IntMatrix a2 = build_eta({Prime(3), 4, 2, 2, IncidenceKind::Skew}, parallel);
    CHECK(a1 == a2);
}

TEST_SUITE_END();
