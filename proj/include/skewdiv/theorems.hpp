#pragma once

#include "skewdiv/incidence.hpp"
#include "skewdiv/report.hpp"
#include "skewdiv/snf.hpp"

#include <array>

namespace skewdiv {

/// Closed-form expected values for one prime: elementary-divisor
/// multiplicities, determinant, eigenvalue multiplicities, the three simple
/// module dimensions, family sizes, and the mod-p rank targets. All internal
/// consistency relations are checked at construction.
struct ClosedForms {
    long long p = 0;

    // multiplicity of p^i among the elementary divisors, i = 0..4
    std::array<long long, 5> e{};

    int det_sign = 0;            // (-1)^p
    long long det_valuation = 0; // p^4 + 2p^3 + 3p^2 + 2p + 4

    long long eig_mult_p4 = 0;      // 1
    long long eig_mult_p = 0;       // p^4 + p^2
    long long eig_mult_neg_p2 = 0;  // p^3 + p^2 + p

    long long dim_s1 = 0;  // p(p+1)(p+2)/6
    long long dim_s2 = 0;  // p(2p^2+1)/3
    long long dim_s3 = 0;  // = dim_s1

    long long count_l1 = 0;  // p^3 + p^2 + p + 1
    long long count_l2 = 0;  // (p^2+1)(p^2+p+1)
    long long count_l3 = 0;  // = count_l1

    long long kernel_dim = 0;  // |L_2| - e_0 = (3p^4 + p^3 + 6p^2 + 2p + 3)/3

    long long phi_rank = 0;           // dim S_1 + dim S_2
    long long psi_rank = 0;           // dim S_2 + dim S_3
    long long phi_plus_psi_rank = 0;  // dim S_1 + dim S_2 + dim S_3
};

ClosedForms closed_forms(const Prime& p);

struct VerifyOptions {
    int threads = 1;
    /// Largest p allowed without the override (the full pipeline is desk-scale
    /// up to p = 7).
    long long guard_max_p = 7;
    bool override_guard = false;
    EnumerationOptions family_guard;
    /// Run every check group regardless of p (exact determinant, spectrum
    /// ranks, counting lemmas, filtration oracle).
    bool all_checks = false;
};

/// Builds A, runs the selected divisor engine(s) and the filtration oracle,
/// and checks the computed profile, determinant, matrix identity, counting
/// lemmas and spectrum against the closed forms. Collects all failures.
VerificationReport verify_theorem(const Prime& p, DivisorEngine engine,
                                  const VerifyOptions& opt = {});
VerificationReport verify_theorem_on(const IncidenceBundle& b, DivisorEngine engine,
                                     const VerifyOptions& opt = {});

/// Mod-p rank and containment consequences: p-rank of A, ranks of the phi and
/// psi matrices and their stack, row-space containments, kernel dimension,
/// column-sum divisibility.
VerificationReport verify_rank_structure(const Prime& p, const VerifyOptions& opt = {});
VerificationReport verify_rank_structure_on(const IncidenceBundle& b,
                                            const VerifyOptions& opt = {});

/// Integer identities between the closed forms over p in {2,3,5,7,11,13}.
/// Appends per-check rows to out when given.
bool multiplicity_polynomial_identities(VerificationReport* out = nullptr);

} // namespace skewdiv
