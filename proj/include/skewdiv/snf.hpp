#pragma once

#include "skewdiv/int_matrix.hpp"
#include "skewdiv/report.hpp"

#include <map>
#include <optional>
#include <vector>

namespace skewdiv {

/// Smith normal form: diagonal d_1 | d_2 | ... (non-negative, trailing zeros
/// for rank-deficient input). With witnesses, U * M * V equals diag(diagonal)
/// exactly, U and V unimodular.
struct SnfResult {
    std::vector<mpz_class> diagonal;
    std::optional<IntMatrix> row_transform;  // U
    std::optional<IntMatrix> col_transform;  // V
};

SnfResult smith_normal_form(const IntMatrix& m, bool want_witnesses = false);

/// Multiset of p-power elementary divisors as an exponent -> multiplicity map.
/// Only nonzero invariant factors contribute; the sum of the counts is the rank.
struct ElementaryDivisorProfile {
    long long p = 0;
    long long size = 0;  // min(rows, cols) of the source matrix
    std::map<long long, long long> multiplicities;

    long long count(long long exponent) const;
    long long rank() const;
    long long max_exponent() const;          // -1 when empty
    long long weighted_exponent_sum() const;  // Σ i * f_i

    nlohmann::ordered_json to_json() const;

    friend bool operator==(const ElementaryDivisorProfile& a,
                           const ElementaryDivisorProfile& b) {
        return a.p == b.p && a.size == b.size && a.multiplicities == b.multiplicities;
    }
};

/// p-parts of the invariant factors of an already computed SNF.
ElementaryDivisorProfile profile_from_snf(const SnfResult& snf, const Prime& p);

struct PLocalOptions {
    long long initial_cap_exponent = 8;
    /// Exact rank, if the caller already knows it (skips the internal certificate).
    std::optional<long long> known_rank;
    /// v_p(|det|), if the caller already has the exact determinant.
    std::optional<long long> known_vp_abs_det;
    /// For square nonsingular inputs up to this dimension, validate the profile
    /// against an internally computed exact determinant valuation.
    int det_validation_max_dim = 128;
};

/// Capped-precision elimination over Z/p^K with minimal-valuation pivoting.
/// The cap auto-escalates until every pivot valuation is certified below K-2
/// and the pivot count matches the exact rank; for square nonsingular inputs
/// the profile is additionally validated against v_p(|det|) when available.
/// Disagreement that escalation cannot explain is a hard error (std::logic_error).
ElementaryDivisorProfile p_local_elementary_divisors(const IntMatrix& m, const Prime& p,
                                                     const PLocalOptions& opt = {});

/// Exact integer determinant via fraction-free (division-exact) elimination.
/// Row updates within a pivot step may run on several threads; the result is
/// identical for any thread count.
mpz_class determinant(const IntMatrix& m, int threads = 1);

/// Exact rank via fraction-free elimination with full pivoting.
long long rank_over_rationals(const IntMatrix& m);

/// dim over F_p of the mod-p image of M_i = {x : m*x ∈ p^i * Z^cols}, for
/// i = 0..i_max, computed by iterated p-adic kernel lifting — independent of
/// both divisor engines. Monotone non-increasing; dims[i] - dims[i+1] is the
/// multiplicity of p^i among the elementary divisors.
std::vector<long long> filtration_dims(const IntMatrix& m, const Prime& p, int i_max);

/// f_i recovered from consecutive differences of filtration dimensions.
ElementaryDivisorProfile profile_from_filtration(const std::vector<long long>& dims,
                                                 const Prime& p, long long size);

/// Trace, trace of the square, the two eigenvalue-multiplicity ranks, and the
/// cubic annihilation (A - p^4 I)(A - p I)(A + p^2 I) = 0, all exact.
VerificationReport char_poly_free_spectrum_check(const IntMatrix& a, const Prime& p);

enum class DivisorEngine { Bigint, PLocal, Both };

/// Front door for the divisor computation. Engine Both runs the bigint SNF and
/// the p-local engine and throws std::logic_error if they disagree.
ElementaryDivisorProfile elementary_divisors(const IntMatrix& m, const Prime& p,
                                             DivisorEngine engine,
                                             const PLocalOptions& opt = {});

} // namespace skewdiv
