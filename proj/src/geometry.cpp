#include "skewdiv/geometry.hpp"

#include <algorithm>
#include <array>
#include <stdexcept>

namespace skewdiv {

mpz_class gaussian_binomial(int n, int r, const mpz_class& q) {
    if (n < 0) throw std::invalid_argument("gaussian_binomial: n must be >= 0");
    if (q < 2) throw std::invalid_argument("gaussian_binomial: q must be >= 2");
    if (r < 0 || r > n) return 0;
    // prod_{i=0}^{r-1} (q^{n-i} - 1) / (q^{i+1} - 1), exact
    mpz_class num = 1, den = 1, qe;
    for (int i = 0; i < r; ++i) {
        mpz_pow_ui(qe.get_mpz_t(), q.get_mpz_t(), static_cast<unsigned long>(n - i));
        num *= qe - 1;
        mpz_pow_ui(qe.get_mpz_t(), q.get_mpz_t(), static_cast<unsigned long>(i + 1));
        den *= qe - 1;
    }
    mpz_class out;
    mpz_divexact(out.get_mpz_t(), num.get_mpz_t(), den.get_mpz_t());
    return out;
}

Subspace::Subspace(int ambient_dim, FpMatrix basis)
    : n_(ambient_dim), basis_(std::move(basis)) {
    if (basis_.cols() != n_)
        throw std::invalid_argument("Subspace: basis width differs from ambient dimension");
    if (basis_.rows() > n_)
        throw std::invalid_argument("Subspace: more basis rows than ambient dimension");
    RrefResult rr = rref(basis_);
    if (rr.rank != basis_.rows() || !(rr.matrix == basis_))
        throw std::invalid_argument("Subspace: basis is not a full-rank reduced echelon form");
}

Subspace Subspace::span_of(int ambient_dim, const FpMatrix& spanning_rows) {
    RrefResult rr = rref(spanning_rows);
    std::vector<long long> rows(rr.matrix.data().begin(),
                                rr.matrix.data().begin() +
                                    static_cast<std::size_t>(rr.rank) * spanning_rows.cols());
    return Subspace(ambient_dim,
                    FpMatrix(spanning_rows.prime(), rr.rank, spanning_rows.cols(), rows));
}

bool operator==(const Subspace& a, const Subspace& b) {
    return a.n_ == b.n_ && a.basis_ == b.basis_;
}

bool operator<(const Subspace& a, const Subspace& b) {
    if (a.basis_.rows() != b.basis_.rows())
        return a.basis_.rows() < b.basis_.rows();
    return std::lexicographical_compare(a.basis_.data().begin(), a.basis_.data().end(),
                                        b.basis_.data().begin(), b.basis_.data().end());
}

SubspaceFamily::SubspaceFamily(Prime p, int n, int r, std::vector<Subspace> sorted_members)
    : p_(p), n_(n), r_(r), members_(std::move(sorted_members)) {
    for (std::size_t i = 1; i < members_.size(); ++i)
        if (!(members_[i - 1] < members_[i]))
            throw std::invalid_argument("SubspaceFamily: members not strictly increasing");
}

std::optional<std::size_t> SubspaceFamily::index_of(const Subspace& s) const {
    if (s.prime() != p_ || s.ambient_dim() != n_ || s.dim() != r_) return std::nullopt;
    auto it = std::lower_bound(members_.begin(), members_.end(), s);
    if (it == members_.end() || !(*it == s)) return std::nullopt;
    return static_cast<std::size_t>(it - members_.begin());
}

SubspaceFamily enumerate_subspaces(const Prime& p, int n, int r,
                                   const EnumerationOptions& opt) {
    if (n < 0 || r < 0 || r > n)
        throw std::invalid_argument("enumerate_subspaces: need 0 <= r <= n");
    const mpz_class total = gaussian_binomial(n, r, p.value());
    if (!opt.override_cap && total > static_cast<long>(opt.family_cap))
        throw ResourceGuardError("enumerate_subspaces: family of " + total.get_str() +
                                 " subspaces exceeds the cap of " +
                                 std::to_string(opt.family_cap) +
                                 " (raise the cap or set the override)");

    const long long pv = p.value();
    std::vector<Subspace> members;
    members.reserve(total.fits_ulong_p() ? total.get_ui() : 0);

    // Pivot-column subsets in lexicographic order; for each subset, run an
    // odometer over the free entries. Every RREF matrix is produced exactly once.
    std::vector<int> piv(r);
    for (int i = 0; i < r; ++i) piv[i] = i;

    const bool empty_range = (r == 0);
    bool subsets_done = false;
    while (!subsets_done) {
        std::vector<std::pair<int, int>> free_pos;  // (row, col), row-major
        {
            std::vector<bool> is_piv(n, false);
            for (int c : piv) is_piv[c] = true;
            for (int i = 0; i < r; ++i)
                for (int j = piv[i] + 1; j < n; ++j)
                    if (!is_piv[j]) free_pos.emplace_back(i, j);
        }

        std::vector<long long> digits(free_pos.size(), 0);
        for (;;) {
            FpMatrix basis(p, r, n);
            for (int i = 0; i < r; ++i) basis.set(i, piv[i], 1);
            for (std::size_t k = 0; k < free_pos.size(); ++k)
                basis.set(free_pos[k].first, free_pos[k].second, digits[k]);
            members.emplace_back(n, std::move(basis));

            // next assignment
            std::size_t k = 0;
            while (k < digits.size() && ++digits[k] == pv) digits[k++] = 0;
            if (k == digits.size()) break;
        }

        if (empty_range) break;
        // next r-subset of {0..n-1}
        int i = r - 1;
        while (i >= 0 && piv[i] == n - r + i) --i;
        if (i < 0) {
            subsets_done = true;
        } else {
            ++piv[i];
            for (int j = i + 1; j < r; ++j) piv[j] = piv[j - 1] + 1;
        }
    }

    std::sort(members.begin(), members.end());
    if (mpz_class(static_cast<unsigned long>(members.size())) != total)
        throw std::logic_error("enumerate_subspaces: generated count does not match the Gaussian binomial");
    return SubspaceFamily(p, n, r, std::move(members));
}

namespace {

// Rank of the stacked bases without allocation for the common small case.
int stacked_rank(const Subspace& a, const Subspace& b) {
    const int n = a.ambient_dim();
    const int rows = a.dim() + b.dim();
    const long long p = a.prime().value();

    constexpr int kSmall = 16;
    long long small_buf[kSmall * kSmall];
    std::vector<long long> big_buf;
    long long* w;
    if (rows <= kSmall && n <= kSmall) {
        w = small_buf;
    } else {
        big_buf.resize(static_cast<std::size_t>(rows) * n);
        w = big_buf.data();
    }
    for (int i = 0; i < a.dim(); ++i)
        for (int j = 0; j < n; ++j) w[i * n + j] = a.basis()(i, j);
    for (int i = 0; i < b.dim(); ++i)
        for (int j = 0; j < n; ++j) w[(a.dim() + i) * n + j] = b.basis()(i, j);

    // Forward elimination with cross-multiplication (no inverses needed).
    int rank = 0;
    for (int col = 0; col < n && rank < rows; ++col) {
        int pr = -1;
        for (int i = rank; i < rows; ++i)
            if (w[i * n + col] != 0) { pr = i; break; }
        if (pr < 0) continue;
        if (pr != rank)
            for (int j = col; j < n; ++j) std::swap(w[pr * n + j], w[rank * n + j]);
        const long long piv = w[rank * n + col];
        for (int i = rank + 1; i < rows; ++i) {
            const long long f = w[i * n + col];
            if (f == 0) continue;
            for (int j = col; j < n; ++j) {
                long long v = (piv * w[i * n + j] % p - f * w[rank * n + j] % p) % p;
                w[i * n + j] = v < 0 ? v + p : v;
            }
        }
        ++rank;
    }
    return rank;
}

} // namespace

int intersection_dim(const Subspace& a, const Subspace& b) {
    if (a.prime() != b.prime() || a.ambient_dim() != b.ambient_dim())
        throw std::invalid_argument("intersection_dim: mismatched ambient space");
    return a.dim() + b.dim() - stacked_rank(a, b);
}

bool is_incident(const Subspace& a, const Subspace& b) {
    return intersection_dim(a, b) == 0;
}

} // namespace skewdiv
