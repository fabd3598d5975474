#include "skewdiv/incidence.hpp"

#include <stdexcept>
#include <thread>

namespace skewdiv {

void IncidenceSpec::validate() const {
    if (n < 2) throw std::invalid_argument("IncidenceSpec: ambient dimension must be >= 2");
    if (r < 1 || r > n - 1 || s < 1 || s > n - 1)
        throw std::invalid_argument("IncidenceSpec: need 1 <= r, s <= n-1");
    if (kind == IncidenceKind::HyperplaneComplement && r != n - 1)
        throw std::invalid_argument("IncidenceSpec: hyperplane-complement incidence needs r = n-1");
}

namespace {

template <class Pred>
IntMatrix build_incidence(const SubspaceFamily& row_family, const SubspaceFamily& col_family,
                          int threads, Pred pred) {
    IntMatrix m(static_cast<int>(row_family.size()), static_cast<int>(col_family.size()));
    auto fill_rows = [&](std::size_t lo, std::size_t hi) {
        for (std::size_t i = lo; i < hi; ++i)
            for (std::size_t j = 0; j < col_family.size(); ++j)
                if (pred(row_family[i], col_family[j]))
                    m.at(static_cast<int>(i), static_cast<int>(j)) = 1;
    };

    const std::size_t nrows = row_family.size();
    if (threads <= 1 || nrows < 2 * static_cast<std::size_t>(threads)) {
        fill_rows(0, nrows);
        return m;
    }
    std::vector<std::thread> pool;
    const std::size_t chunk = (nrows + threads - 1) / threads;
    for (int t = 0; t < threads; ++t) {
        const std::size_t lo = t * chunk;
        if (lo >= nrows) break;
        pool.emplace_back(fill_rows, lo, std::min(nrows, lo + chunk));
    }
    for (auto& th : pool) th.join();
    return m;
}

} // namespace

IntMatrix build_eta(const IncidenceSpec& spec, const IncidenceBuildOptions& opt) {
    spec.validate();
    if (spec.kind != IncidenceKind::Skew)
        throw std::invalid_argument("build_eta: spec kind must be skew");
    SubspaceFamily rows = enumerate_subspaces(spec.p, spec.n, spec.r, opt.guard);
    if (spec.r == spec.s)
        return build_incidence(rows, rows, opt.threads,
                               [](const Subspace& a, const Subspace& b) { return is_incident(a, b); });
    SubspaceFamily cols = enumerate_subspaces(spec.p, spec.n, spec.s, opt.guard);
    return build_incidence(rows, cols, opt.threads,
                           [](const Subspace& a, const Subspace& b) { return is_incident(a, b); });
}

IntMatrix build_psi(const Prime& p, const IncidenceBuildOptions& opt) {
    IncidenceSpec spec{p, 4, 3, 2, IncidenceKind::HyperplaneComplement};
    spec.validate();
    SubspaceFamily rows = enumerate_subspaces(p, 4, 3, opt.guard);
    SubspaceFamily cols = enumerate_subspaces(p, 4, 2, opt.guard);
    // entry(x, y) = 1 unless y ⊆ x, i.e. unless dim(x ∩ y) = dim y
    return build_incidence(rows, cols, opt.threads,
                           [](const Subspace& x, const Subspace& y) {
                               return intersection_dim(x, y) != y.dim();
                           });
}

IntMatrix all_ones(int rows, int cols) { return IntMatrix::all_ones(rows, cols); }

bool verify_matrix_identity(const IntMatrix& a, const Prime& p) {
    const long pv = static_cast<long>(p.value());
    const long long l2 = (pv * pv + 1) * (pv * pv + pv + 1);
    if (a.rows() != a.cols())
        throw std::invalid_argument("verify_matrix_identity: matrix not square");
    if (a.rows() != l2)
        throw std::invalid_argument("verify_matrix_identity: size does not match |L_2| for p");

    const IntMatrix a2 = a * a;
    const mpz_class c1 = mpz_class(pv) * pv - pv;          // p^2 - p
    const mpz_class c2 = mpz_class(pv) * pv * pv;          // p^3
    const mpz_class c3 = c2 * pv - c2;                     // p^4 - p^3
    for (int i = 0; i < a.rows(); ++i)
        for (int j = 0; j < a.cols(); ++j) {
            mpz_class v = a2.at(i, j) + c1 * a.at(i, j) - c3;
            if (i == j) v -= c2;
            if (v != 0) return false;
        }
    return true;
}

IncidenceBundle build_bundle(const Prime& p, const IncidenceBuildOptions& opt) {
    SubspaceFamily points = enumerate_subspaces(p, 4, 1, opt.guard);
    SubspaceFamily lines = enumerate_subspaces(p, 4, 2, opt.guard);
    SubspaceFamily hyperplanes = enumerate_subspaces(p, 4, 3, opt.guard);
    auto skew = [](const Subspace& a, const Subspace& b) { return is_incident(a, b); };
    IntMatrix eta22 = build_incidence(lines, lines, opt.threads, skew);
    IntMatrix phi = build_incidence(points, lines, opt.threads, skew);
    IntMatrix psi = build_incidence(hyperplanes, lines, opt.threads,
                                    [](const Subspace& x, const Subspace& y) {
                                        return intersection_dim(x, y) != y.dim();
                                    });
    return IncidenceBundle{std::move(points), std::move(lines), std::move(hyperplanes),
                           std::move(eta22), std::move(phi), std::move(psi)};
}

namespace {

// Scan a product matrix against an expected-entry rule, reporting the first
// mismatch and the total count.
template <class Expect>
void check_entries(VerificationReport& rep, const std::string& name, const IntMatrix& m,
                   Expect expect) {
    long long bad = 0;
    std::string first;
    for (int i = 0; i < m.rows(); ++i)
        for (int j = 0; j < m.cols(); ++j) {
            const mpz_class want = expect(i, j);
            if (m.at(i, j) != want) {
                if (bad == 0)
                    first = "(x=" + std::to_string(i) + ", y=" + std::to_string(j) +
                            ", expected=" + want.get_str() + ", found=" + m.at(i, j).get_str() + ")";
                ++bad;
            }
        }
    rep.add(name, "all entries as counted",
            bad == 0 ? "all entries as counted" : std::to_string(bad) + " mismatches, first " + first,
            bad == 0);
}

void check_divisibility(VerificationReport& rep, const std::string& name, const IntMatrix& m,
                        const mpz_class& modulus) {
    long long bad = 0;
    std::string first;
    for (int i = 0; i < m.rows(); ++i)
        for (int j = 0; j < m.cols(); ++j)
            if (!mpz_divisible_p(m.at(i, j).get_mpz_t(), modulus.get_mpz_t())) {
                if (bad == 0)
                    first = "(x=" + std::to_string(i) + ", y=" + std::to_string(j) +
                            ", found=" + m.at(i, j).get_str() + ")";
                ++bad;
            }
    rep.add(name, "all entries divisible by " + modulus.get_str(),
            bad == 0 ? "all entries divisible by " + modulus.get_str()
                     : std::to_string(bad) + " mismatches, first " + first,
            bad == 0);
}

} // namespace

VerificationReport verify_counting_lemmas(const IncidenceBundle& b) {
    const long p = static_cast<long>(b.lines.prime().value());
    VerificationReport rep(p);
    const mpz_class p2 = mpz_class(p) * p;
    const mpz_class p3 = p2 * p;
    const mpz_class p4 = p3 * p;
    const IntMatrix& a = b.eta22;

    // a_{x,y}: the two-lines-skew-to-both count, three cases
    {
        IntMatrix a2 = a * a;
        check_entries(rep, "a_cases", a2, [&](int i, int j) -> mpz_class {
            if (i == j) return p4;
            if (a.at(i, j) != 0) return p4 - p3 - p2 + p;  // skew pair
            return p4 - p3;
        });
    }

    // b_{x,y}: point x against line y, two cases; phi entry 0 means x lies on y
    {
        IntMatrix c = a * b.phi.transposed();  // |L_2| x |L_1|
        check_entries(rep, "b_cases", c, [&](int y, int x) -> mpz_class {
            if (b.phi.at(x, y) == 0) return p4;
            return p4 - p2;
        });
    }

    // psi composite lands in p^2 * Z^{L_2}
    {
        IntMatrix d = a * b.psi.transposed();  // |L_2| x |L_3|
        check_divisibility(rep, "psi_composite_mod_p2", d, p2);
    }

    // gamma = A + (p^2-p) I; A * gamma lands in p^3 * Z^{L_2}
    {
        IntMatrix g = a * a.plus_scaled_identity(p2 - p);
        check_divisibility(rep, "gamma_composite_mod_p3", g, p3);
    }

    // A applied to the all-one vector: every row sum is p^4
    {
        long long bad = 0;
        for (int i = 0; i < a.rows(); ++i)
            if (a.row_sum(i) != p4) ++bad;
        rep.add("eta_all_one_eigenvector", "every row sum = " + p4.get_str(),
                bad == 0 ? "every row sum = " + p4.get_str()
                         : std::to_string(bad) + " rows off",
                bad == 0);
    }

    return rep;
}

VerificationReport verify_counting_lemmas(const Prime& p, const IncidenceBuildOptions& opt) {
    return verify_counting_lemmas(build_bundle(p, opt));
}

} // namespace skewdiv
