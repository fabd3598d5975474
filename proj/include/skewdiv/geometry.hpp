#pragma once

#include "skewdiv/fp_matrix.hpp"

#include <gmpxx.h>
#include <optional>
#include <stdexcept>
#include <vector>

namespace skewdiv {

/// Thrown when an operation would enumerate or verify more than the configured cap.
class ResourceGuardError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Gaussian binomial coefficient [n choose r]_q: the number of r-subspaces of
/// an n-dimensional space over a field with q elements. Returns 0 for r < 0 or
/// r > n (by convention).
mpz_class gaussian_binomial(int n, int r, const mpz_class& q);
inline mpz_class gaussian_binomial(int n, int r, long long q) {
    return gaussian_binomial(n, r, mpz_class(static_cast<long>(q)));
}

/// An r-subspace of F_p^n, held as its canonical reduced-row-echelon basis.
/// Two Subspace values are equal iff their bases are identical; RREF canonicity
/// makes this equivalent to equality of the spanned spaces.
class Subspace {
public:
    /// basis must already be a full-row-rank reduced row echelon form.
    Subspace(int ambient_dim, FpMatrix basis);

    /// Canonicalizes an arbitrary spanning set: rows are reduced, zero rows dropped.
    static Subspace span_of(int ambient_dim, const FpMatrix& spanning_rows);

    const FpMatrix& basis() const { return basis_; }
    int ambient_dim() const { return n_; }
    int dim() const { return basis_.rows(); }
    const Prime& prime() const { return basis_.prime(); }

    friend bool operator==(const Subspace& a, const Subspace& b);
    /// Canonical order: lexicographic on the flattened basis, entries read
    /// row-major as integers in [0, p-1].
    friend bool operator<(const Subspace& a, const Subspace& b);

private:
    int n_;
    FpMatrix basis_;
};

struct EnumerationOptions {
    long long family_cap = 1000000;
    bool override_cap = false;
};

/// The fully enumerated, canonically ordered list of all r-subspaces of F_p^n.
class SubspaceFamily {
public:
    SubspaceFamily(Prime p, int n, int r, std::vector<Subspace> sorted_members);

    const std::vector<Subspace>& members() const { return members_; }
    const Subspace& operator[](std::size_t i) const { return members_[i]; }
    std::size_t size() const { return members_.size(); }

    /// Position of s in the canonical order, or nullopt if s is not a member.
    std::optional<std::size_t> index_of(const Subspace& s) const;

    const Prime& prime() const { return p_; }
    int ambient_dim() const { return n_; }
    int subspace_dim() const { return r_; }

private:
    Prime p_;
    int n_;
    int r_;
    std::vector<Subspace> members_;
};

SubspaceFamily enumerate_subspaces(const Prime& p, int n, int r,
                                   const EnumerationOptions& opt = {});

/// dim(R ∩ S), computed as dim R + dim S minus the rank of the stacked bases.
int intersection_dim(const Subspace& a, const Subspace& b);

/// Incidence relation: true iff R ∩ S = {0}.
bool is_incident(const Subspace& a, const Subspace& b);

} // namespace skewdiv
