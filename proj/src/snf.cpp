#include "skewdiv/snf.hpp"

#include <algorithm>
#include <stdexcept>
#include <thread>
#include <utility>

namespace skewdiv {

// ---------------------------------------------------------------------------
// Smith normal form over Z
//
// Classical elimination: pick the nonzero entry of minimal absolute value in
// the remaining submatrix, run gcd-reducing row/column operations until the
// pivot is alone, then enforce divisibility of the rest of the submatrix and
// recurse. Arbitrary-precision entries keep every step exact.
// ---------------------------------------------------------------------------

SnfResult smith_normal_form(const IntMatrix& m, bool want_witnesses) {
    const int rows = m.rows(), cols = m.cols();
    const int nmin = std::min(rows, cols);

    std::vector<mpz_class> w(static_cast<std::size_t>(rows) * cols);
    for (int i = 0; i < rows; ++i)
        for (int j = 0; j < cols; ++j) w[static_cast<std::size_t>(i) * cols + j] = m.at(i, j);
    auto at = [&](int i, int j) -> mpz_class& {
        return w[static_cast<std::size_t>(i) * cols + j];
    };

    SnfResult res;
    if (want_witnesses) {
        res.row_transform = IntMatrix::identity(rows);
        res.col_transform = IntMatrix::identity(cols);
    }
    IntMatrix* U = res.row_transform ? &*res.row_transform : nullptr;
    IntMatrix* V = res.col_transform ? &*res.col_transform : nullptr;

    auto swap_rows = [&](int a, int b) {
        if (a == b) return;
        for (int j = 0; j < cols; ++j) std::swap(at(a, j), at(b, j));
        if (U)
            for (int j = 0; j < rows; ++j) std::swap(U->at(a, j), U->at(b, j));
    };
    auto swap_cols = [&](int a, int b) {
        if (a == b) return;
        for (int i = 0; i < rows; ++i) std::swap(at(i, a), at(i, b));
        if (V)
            for (int i = 0; i < cols; ++i) std::swap(V->at(i, a), V->at(i, b));
    };
    // row dst -= q * row src
    auto row_submul = [&](int dst, int src, const mpz_class& q) {
        for (int j = 0; j < cols; ++j)
            mpz_submul(at(dst, j).get_mpz_t(), q.get_mpz_t(), at(src, j).get_mpz_t());
        if (U)
            for (int j = 0; j < rows; ++j)
                mpz_submul(U->at(dst, j).get_mpz_t(), q.get_mpz_t(), U->at(src, j).get_mpz_t());
    };
    // col dst -= q * col src
    auto col_submul = [&](int dst, int src, const mpz_class& q) {
        for (int i = 0; i < rows; ++i)
            mpz_submul(at(i, dst).get_mpz_t(), q.get_mpz_t(), at(i, src).get_mpz_t());
        if (V)
            for (int i = 0; i < cols; ++i)
                mpz_submul(V->at(i, dst).get_mpz_t(), q.get_mpz_t(), V->at(i, src).get_mpz_t());
    };
    auto negate_row = [&](int a) {
        for (int j = 0; j < cols; ++j) at(a, j) = -at(a, j);
        if (U)
            for (int j = 0; j < rows; ++j) U->at(a, j) = -U->at(a, j);
    };

    bool exhausted = false;
    for (int t = 0; t < nmin && !exhausted; ++t) {
        for (;;) {
            // minimal |entry| in the remaining submatrix, row-major tie-break
            int bi = -1, bj = -1;
            for (int i = t; i < rows; ++i)
                for (int j = t; j < cols; ++j) {
                    const mpz_class& v = at(i, j);
                    if (v == 0) continue;
                    if (bi < 0 || mpz_cmpabs(v.get_mpz_t(), at(bi, bj).get_mpz_t()) < 0) {
                        bi = i;
                        bj = j;
                    }
                }
            if (bi < 0) {
                exhausted = true;  // submatrix is zero; trailing diagonal stays 0
                break;
            }
            swap_rows(t, bi);
            swap_cols(t, bj);

            bool clean = true;
            mpz_class q;
            for (int i = t + 1; i < rows; ++i) {
                if (at(i, t) == 0) continue;
                mpz_tdiv_q(q.get_mpz_t(), at(i, t).get_mpz_t(), at(t, t).get_mpz_t());
                if (q != 0) row_submul(i, t, q);
                if (at(i, t) != 0) clean = false;
            }
            for (int j = t + 1; j < cols; ++j) {
                if (at(t, j) == 0) continue;
                mpz_tdiv_q(q.get_mpz_t(), at(t, j).get_mpz_t(), at(t, t).get_mpz_t());
                if (q != 0) col_submul(j, t, q);
                if (at(t, j) != 0) clean = false;
            }
            if (!clean) continue;  // leftover remainders are smaller than the pivot

            // divisibility chain: any non-multiple below gets pulled into row t
            int di = -1;
            for (int i = t + 1; i < rows && di < 0; ++i)
                for (int j = t + 1; j < cols; ++j)
                    if (!mpz_divisible_p(at(i, j).get_mpz_t(), at(t, t).get_mpz_t())) {
                        di = i;
                        break;
                    }
            if (di >= 0) {
                row_submul(t, di, mpz_class(-1));  // row t += row di
                continue;
            }
            break;
        }
        if (!exhausted && at(t, t) < 0) negate_row(t);
    }

    res.diagonal.resize(nmin);
    for (int t = 0; t < nmin; ++t) res.diagonal[t] = at(t, t);
    return res;
}

ElementaryDivisorProfile profile_from_snf(const SnfResult& snf, const Prime& p) {
    ElementaryDivisorProfile prof;
    prof.p = p.value();
    prof.size = static_cast<long long>(snf.diagonal.size());
    const mpz_class pz(static_cast<long>(p.value()));
    mpz_class rest;
    for (const mpz_class& d : snf.diagonal) {
        if (d == 0) continue;
        const long long v =
            static_cast<long long>(mpz_remove(rest.get_mpz_t(), d.get_mpz_t(), pz.get_mpz_t()));
        ++prof.multiplicities[v];
    }
    return prof;
}

long long ElementaryDivisorProfile::count(long long exponent) const {
    auto it = multiplicities.find(exponent);
    return it == multiplicities.end() ? 0 : it->second;
}

long long ElementaryDivisorProfile::rank() const {
    long long r = 0;
    for (const auto& [e, c] : multiplicities) r += c;
    return r;
}

long long ElementaryDivisorProfile::max_exponent() const {
    long long m = -1;
    for (const auto& [e, c] : multiplicities)
        if (c > 0) m = std::max(m, e);
    return m;
}

long long ElementaryDivisorProfile::weighted_exponent_sum() const {
    long long s = 0;
    for (const auto& [e, c] : multiplicities) s += e * c;
    return s;
}

nlohmann::ordered_json ElementaryDivisorProfile::to_json() const {
    nlohmann::ordered_json j;
    j["p"] = p;
    j["size"] = size;
    nlohmann::ordered_json mult;
    for (const auto& [e, c] : multiplicities) mult[std::to_string(e)] = c;
    j["multiplicities"] = std::move(mult);
    return j;
}

// ---------------------------------------------------------------------------
// Fraction-free (Bareiss) elimination
// ---------------------------------------------------------------------------

mpz_class determinant(const IntMatrix& m, int threads) {
    if (m.rows() != m.cols()) throw std::invalid_argument("determinant: matrix not square");
    const int n = m.rows();
    if (n == 0) return 1;

    std::vector<mpz_class> w(static_cast<std::size_t>(n) * n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) w[static_cast<std::size_t>(i) * n + j] = m.at(i, j);
    auto at = [&](int i, int j) -> mpz_class& {
        return w[static_cast<std::size_t>(i) * n + j];
    };

    int sign = 1;
    mpz_class prev(1);
    for (int k = 0; k + 1 < n; ++k) {
        if (at(k, k) == 0) {
            int pr = -1;
            for (int i = k + 1; i < n; ++i)
                if (at(i, k) != 0) { pr = i; break; }
            if (pr < 0) return 0;
            for (int j = k; j < n; ++j) std::swap(at(k, j), at(pr, j));
            sign = -sign;
        }
        auto update_rows = [&](int lo, int hi) {
            mpz_class t1;
            for (int i = lo; i < hi; ++i) {
                for (int j = k + 1; j < n; ++j) {
                    mpz_mul(t1.get_mpz_t(), at(i, j).get_mpz_t(), at(k, k).get_mpz_t());
                    mpz_submul(t1.get_mpz_t(), at(i, k).get_mpz_t(), at(k, j).get_mpz_t());
                    mpz_divexact(at(i, j).get_mpz_t(), t1.get_mpz_t(), prev.get_mpz_t());
                }
                at(i, k) = 0;
            }
        };
        const int first = k + 1, last = n;
        if (threads > 1 && last - first >= 2 * threads) {
            std::vector<std::thread> pool;
            const int chunk = (last - first + threads - 1) / threads;
            for (int t = 0; t < threads; ++t) {
                const int lo = first + t * chunk;
                if (lo >= last) break;
                pool.emplace_back(update_rows, lo, std::min(last, lo + chunk));
            }
            for (auto& th : pool) th.join();
        } else {
            update_rows(first, last);
        }
        prev = at(k, k);
    }
    mpz_class d = at(n - 1, n - 1);
    if (sign < 0) d = -d;
    return d;
}

long long rank_over_rationals(const IntMatrix& m) {
    const int rows = m.rows(), cols = m.cols();
    std::vector<mpz_class> w(static_cast<std::size_t>(rows) * cols);
    for (int i = 0; i < rows; ++i)
        for (int j = 0; j < cols; ++j) w[static_cast<std::size_t>(i) * cols + j] = m.at(i, j);
    auto at = [&](int i, int j) -> mpz_class& {
        return w[static_cast<std::size_t>(i) * cols + j];
    };

    const int nmin = std::min(rows, cols);
    mpz_class prev(1), t1;
    int r = 0;
    while (r < nmin) {
        int bi = -1, bj = -1;
        for (int i = r; i < rows && bi < 0; ++i)
            for (int j = r; j < cols; ++j)
                if (at(i, j) != 0) {
                    bi = i;
                    bj = j;
                    break;
                }
        if (bi < 0) break;
        if (bi != r)
            for (int j = r; j < cols; ++j) std::swap(at(bi, j), at(r, j));
        if (bj != r)
            for (int i = r; i < rows; ++i) std::swap(at(i, bj), at(i, r));
        for (int i = r + 1; i < rows; ++i) {
            for (int j = r + 1; j < cols; ++j) {
                mpz_mul(t1.get_mpz_t(), at(i, j).get_mpz_t(), at(r, r).get_mpz_t());
                mpz_submul(t1.get_mpz_t(), at(i, r).get_mpz_t(), at(r, j).get_mpz_t());
                mpz_divexact(at(i, j).get_mpz_t(), t1.get_mpz_t(), prev.get_mpz_t());
            }
            at(i, r) = 0;
        }
        prev = at(r, r);
        ++r;
    }
    return r;
}

// ---------------------------------------------------------------------------
// p-local engine: elimination over Z/p^K with minimal-valuation pivoting
// ---------------------------------------------------------------------------

namespace {

struct PLocalOutcome {
    std::vector<long long> valuations;
    bool cap_hit = false;
};

bool pow_fits_u64(long long p, long long k, unsigned long long limit,
                  unsigned long long* out) {
    unsigned long long v = 1;
    for (long long i = 0; i < k; ++i) {
        if (v > limit / static_cast<unsigned long long>(p)) return false;
        v *= static_cast<unsigned long long>(p);
    }
    *out = v;
    return true;
}

unsigned long long inv_mod_u64(unsigned long long a, unsigned long long m) {
    long long t = 0, new_t = 1;
    long long r = static_cast<long long>(m), new_r = static_cast<long long>(a % m);
    while (new_r != 0) {
        long long q = r / new_r;
        t = std::exchange(new_t, t - q * new_t);
        r = std::exchange(new_r, r - q * new_r);
    }
    if (t < 0) t += static_cast<long long>(m);
    return static_cast<unsigned long long>(t);
}

PLocalOutcome plocal_eliminate_u64(const IntMatrix& m, long long p, long long K,
                                   unsigned long long pk) {
    const int rows = m.rows(), cols = m.cols();
    const int nmin = std::min(rows, cols);
    const bool narrow = pk < (1ULL << 32);  // products fit a 64-bit word directly

    std::vector<unsigned long long> g(static_cast<std::size_t>(rows) * cols);
    for (int i = 0; i < rows; ++i)
        for (int j = 0; j < cols; ++j)
            g[static_cast<std::size_t>(i) * cols + j] =
                mpz_fdiv_ui(m.at(i, j).get_mpz_t(), pk);
    auto at = [&](int i, int j) -> unsigned long long& {
        return g[static_cast<std::size_t>(i) * cols + j];
    };

    const unsigned long long pu = static_cast<unsigned long long>(p);
    auto val = [&](unsigned long long x) {
        long long v = 0;
        while (x % pu == 0) {
            x /= pu;
            ++v;
        }
        return v;
    };
    auto mulmod = [&](unsigned long long a, unsigned long long b) -> unsigned long long {
        if (narrow) return a * b % pk;
        return static_cast<unsigned long long>(
            static_cast<unsigned __int128>(a) * b % pk);
    };

    std::vector<unsigned long long> ppow(static_cast<std::size_t>(K) + 1);
    ppow[0] = 1;
    for (long long i = 1; i <= K; ++i) ppow[i] = ppow[i - 1] * pu;

    PLocalOutcome out;
    long long floor_v = 0;
    for (int t = 0; t < nmin; ++t) {
        long long best_v = K;
        int bi = -1, bj = -1;
        for (int i = t; i < rows; ++i) {
            for (int j = t; j < cols; ++j) {
                const unsigned long long x = at(i, j);
                if (!x) continue;
                const long long v = val(x);
                if (v < best_v) {
                    best_v = v;
                    bi = i;
                    bj = j;
                    if (v == floor_v) break;
                }
            }
            if (bi >= 0 && best_v == floor_v) break;
        }
        if (bi < 0) break;                       // submatrix ≡ 0 mod p^K
        if (best_v >= K - 2) {                   // cap margin exhausted
            out.cap_hit = true;
            return out;
        }
        if (bi != t)
            for (int j = t; j < cols; ++j) std::swap(at(t, j), at(bi, j));
        if (bj != t)
            for (int i = t; i < rows; ++i) std::swap(at(i, t), at(i, bj));

        const unsigned long long pv = ppow[best_v];
        const unsigned long long uinv = inv_mod_u64(at(t, t) / pv, pk);
        for (int j = t; j < cols; ++j) at(t, j) = mulmod(at(t, j), uinv);
        for (int i = t + 1; i < rows; ++i) {
            const unsigned long long a = at(i, t);
            if (!a) continue;
            const unsigned long long mult = a / pv;  // exact: val(a) >= best_v
            unsigned long long* ri = &at(i, 0);
            const unsigned long long* rt = &at(t, 0);
            for (int j = t; j < cols; ++j) {
                const unsigned long long s = mulmod(mult, rt[j]);
                ri[j] = ri[j] >= s ? ri[j] - s : ri[j] + pk - s;
            }
        }
        // the implied column operations only touch row t
        for (int j = t + 1; j < cols; ++j) at(t, j) = 0;

        out.valuations.push_back(best_v);
        floor_v = best_v;
    }
    return out;
}

PLocalOutcome plocal_eliminate_mpz(const IntMatrix& m, long long p, long long K) {
    const int rows = m.rows(), cols = m.cols();
    const int nmin = std::min(rows, cols);
    const mpz_class pz(static_cast<long>(p));
    mpz_class pk;
    mpz_pow_ui(pk.get_mpz_t(), pz.get_mpz_t(), static_cast<unsigned long>(K));

    std::vector<mpz_class> g(static_cast<std::size_t>(rows) * cols);
    for (int i = 0; i < rows; ++i)
        for (int j = 0; j < cols; ++j)
            mpz_fdiv_r(g[static_cast<std::size_t>(i) * cols + j].get_mpz_t(),
                       m.at(i, j).get_mpz_t(), pk.get_mpz_t());
    auto at = [&](int i, int j) -> mpz_class& {
        return g[static_cast<std::size_t>(i) * cols + j];
    };

    auto val = [&](const mpz_class& x) {
        mpz_class rest;
        return static_cast<long long>(
            mpz_remove(rest.get_mpz_t(), x.get_mpz_t(), pz.get_mpz_t()));
    };

    PLocalOutcome out;
    long long floor_v = 0;
    mpz_class pv, unit, uinv, mult, tmp;
    for (int t = 0; t < nmin; ++t) {
        long long best_v = K;
        int bi = -1, bj = -1;
        for (int i = t; i < rows; ++i) {
            for (int j = t; j < cols; ++j) {
                if (at(i, j) == 0) continue;
                const long long v = val(at(i, j));
                if (v < best_v) {
                    best_v = v;
                    bi = i;
                    bj = j;
                    if (v == floor_v) break;
                }
            }
            if (bi >= 0 && best_v == floor_v) break;
        }
        if (bi < 0) break;
        if (best_v >= K - 2) {
            out.cap_hit = true;
            return out;
        }
        if (bi != t)
            for (int j = t; j < cols; ++j) std::swap(at(t, j), at(bi, j));
        if (bj != t)
            for (int i = t; i < rows; ++i) std::swap(at(i, t), at(i, bj));

        mpz_pow_ui(pv.get_mpz_t(), pz.get_mpz_t(), static_cast<unsigned long>(best_v));
        mpz_divexact(unit.get_mpz_t(), at(t, t).get_mpz_t(), pv.get_mpz_t());
        mpz_invert(uinv.get_mpz_t(), unit.get_mpz_t(), pk.get_mpz_t());
        for (int j = t; j < cols; ++j) {
            at(t, j) *= uinv;
            mpz_fdiv_r(at(t, j).get_mpz_t(), at(t, j).get_mpz_t(), pk.get_mpz_t());
        }
        for (int i = t + 1; i < rows; ++i) {
            if (at(i, t) == 0) continue;
            mpz_divexact(mult.get_mpz_t(), at(i, t).get_mpz_t(), pv.get_mpz_t());
            for (int j = t; j < cols; ++j) {
                mpz_submul(at(i, j).get_mpz_t(), mult.get_mpz_t(), at(t, j).get_mpz_t());
                mpz_fdiv_r(at(i, j).get_mpz_t(), at(i, j).get_mpz_t(), pk.get_mpz_t());
            }
        }
        for (int j = t + 1; j < cols; ++j) at(t, j) = 0;

        out.valuations.push_back(best_v);
        floor_v = best_v;
    }
    return out;
}

// Forward elimination mod a word prime; a full-rank result certifies the exact rank.
long long rank_mod_word_prime(const IntMatrix& m, long long q) {
    const int rows = m.rows(), cols = m.cols();
    std::vector<long long> w(static_cast<std::size_t>(rows) * cols);
    for (int i = 0; i < rows; ++i)
        for (int j = 0; j < cols; ++j)
            w[static_cast<std::size_t>(i) * cols + j] = static_cast<long long>(
                mpz_fdiv_ui(m.at(i, j).get_mpz_t(), static_cast<unsigned long>(q)));
    auto at = [&](int i, int j) -> long long& {
        return w[static_cast<std::size_t>(i) * cols + j];
    };

    int rank = 0;
    for (int col = 0; col < cols && rank < rows; ++col) {
        int pr = -1;
        for (int i = rank; i < rows; ++i)
            if (at(i, col) != 0) { pr = i; break; }
        if (pr < 0) continue;
        if (pr != rank)
            for (int j = col; j < cols; ++j) std::swap(at(pr, j), at(rank, j));
        const long long piv = at(rank, col);
        for (int i = rank + 1; i < rows; ++i) {
            const long long f = at(i, col);
            if (f == 0) continue;
            for (int j = col; j < cols; ++j) {
                long long v = (piv * at(i, j) % q - f * at(rank, j) % q) % q;
                at(i, j) = v < 0 ? v + q : v;
            }
        }
        ++rank;
    }
    return rank;
}

long long certified_rank(const IntMatrix& m, long long p) {
    const long long nmin = std::min(m.rows(), m.cols());
    if (nmin == 0) return 0;
    // A full-rank elimination mod any prime is a proof of full rank over Q.
    static constexpr long long probes[] = {1000003, 1000033, 1000037, 1000039, 1000081};
    for (long long q : probes) {
        if (q == p) continue;
        if (rank_mod_word_prime(m, q) == nmin) return nmin;
    }
    return rank_over_rationals(m);
}

} // namespace

ElementaryDivisorProfile p_local_elementary_divisors(const IntMatrix& m, const Prime& prime,
                                                     const PLocalOptions& opt) {
    const long long p = prime.value();
    ElementaryDivisorProfile prof;
    prof.p = p;
    prof.size = std::min(m.rows(), m.cols());
    if (prof.size == 0) return prof;

    const long long rank = opt.known_rank ? *opt.known_rank : certified_rank(m, p);

    long long cap = std::max<long long>(4, opt.initial_cap_exponent);
    for (;;) {
        unsigned long long pk = 0;
        PLocalOutcome out = pow_fits_u64(p, cap, (1ULL << 62), &pk)
                                ? plocal_eliminate_u64(m, p, cap, pk)
                                : plocal_eliminate_mpz(m, p, cap);
        if (out.cap_hit) {
            cap *= 2;
            continue;
        }
        if (static_cast<long long>(out.valuations.size()) < rank) {
            cap *= 2;  // entries alive beyond the cap were treated as zero
            continue;
        }
        if (static_cast<long long>(out.valuations.size()) > rank)
            throw std::logic_error("p_local_elementary_divisors: more pivots than the matrix rank");

        prof.multiplicities.clear();
        for (long long v : out.valuations) ++prof.multiplicities[v];

        if (m.rows() == m.cols() && rank == m.rows()) {
            std::optional<long long> vp_det = opt.known_vp_abs_det;
            if (!vp_det && m.rows() <= opt.det_validation_max_dim) {
                const mpz_class d = determinant(m);
                mpz_class rest;
                vp_det = static_cast<long long>(mpz_remove(
                    rest.get_mpz_t(), d.get_mpz_t(), mpz_class(static_cast<long>(p)).get_mpz_t()));
            }
            if (vp_det && prof.weighted_exponent_sum() != *vp_det) {
                if (cap > *vp_det + 2)
                    throw std::logic_error(
                        "p_local_elementary_divisors: profile disagrees with the determinant "
                        "valuation");
                cap *= 2;
                continue;
            }
        }
        return prof;
    }
}

// ---------------------------------------------------------------------------
// Filtration oracle: iterated p-adic kernel lifting
//
// Generators of M_i = {x : m x ≡ 0 mod p^i} are kept modulo p^i; together with
// the implicit p^i * Z^cols they span M_i. Lifting solves one mod-p system on
// the residuals (m g)/p^i per level, and the generating set is echelon-reduced
// over Z/p^{i+1} (invertible row operations only) to stay small. No part of
// this touches either divisor engine.
// ---------------------------------------------------------------------------

namespace {

template <typename T> struct ScalarOps;

template <> struct ScalarOps<long long> {
    static long long from_entry(const mpz_class& v) { return mpz_get_si(v.get_mpz_t()); }
    static long long mod(long long a, long long m) {
        long long r = a % m;
        return r < 0 ? r + m : r;
    }
    static long long mulmod(long long a, long long b, long long m) { return a * b % m; }
    static long long divexact(long long a, long long b) { return a / b; }
    static long long valuation(long long x, long long p) {
        long long v = 0;
        while (x % p == 0) {
            x /= p;
            ++v;
        }
        return v;
    }
    static long long inv_mod(long long u, long long m) {
        return static_cast<long long>(
            inv_mod_u64(static_cast<unsigned long long>(u), static_cast<unsigned long long>(m)));
    }
    static long long pow(long long p, long long e) {
        long long v = 1;
        while (e--) v *= p;
        return v;
    }
    static long long to_small(long long v) { return v; }
};

template <> struct ScalarOps<mpz_class> {
    static mpz_class from_entry(const mpz_class& v) { return v; }
    static mpz_class mod(const mpz_class& a, const mpz_class& m) {
        mpz_class r;
        mpz_fdiv_r(r.get_mpz_t(), a.get_mpz_t(), m.get_mpz_t());
        return r;
    }
    static mpz_class mulmod(const mpz_class& a, const mpz_class& b, const mpz_class& m) {
        return mod(a * b, m);
    }
    static mpz_class divexact(const mpz_class& a, const mpz_class& b) {
        mpz_class r;
        mpz_divexact(r.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
        return r;
    }
    static long long valuation(const mpz_class& x, const mpz_class& p) {
        mpz_class rest;
        return static_cast<long long>(
            mpz_remove(rest.get_mpz_t(), x.get_mpz_t(), p.get_mpz_t()));
    }
    static mpz_class inv_mod(const mpz_class& u, const mpz_class& m) {
        mpz_class r;
        mpz_invert(r.get_mpz_t(), u.get_mpz_t(), m.get_mpz_t());
        return r;
    }
    static mpz_class pow(const mpz_class& p, long long e) {
        mpz_class v;
        mpz_pow_ui(v.get_mpz_t(), p.get_mpz_t(), static_cast<unsigned long>(e));
        return v;
    }
    static long long to_small(const mpz_class& v) { return mpz_get_si(v.get_mpz_t()); }
};

// Echelon form of the generator rows over Z/p^k: global minimal-valuation
// pivoting, unit-normalized pivots, full clearing below. Row operations are
// invertible, so the spanned module is unchanged; zero rows are dropped.
template <typename T>
void echelon_mod_pk(std::vector<std::vector<T>>& rows, const T& p_t, const T& pk,
                    long long k) {
    if (rows.empty()) return;
    const int nc = static_cast<int>(rows[0].size());
    const int nr = static_cast<int>(rows.size());
    int t = 0;
    while (t < nr) {
        long long best_v = k;
        int bi = -1, bj = -1;
        for (int i = t; i < nr && best_v > 0; ++i)
            for (int j = 0; j < nc; ++j) {
                if (rows[i][j] == 0) continue;
                const long long v = ScalarOps<T>::valuation(rows[i][j], p_t);
                if (v < best_v) {
                    best_v = v;
                    bi = i;
                    bj = j;
                    if (v == 0) break;
                }
            }
        if (bi < 0) break;
        std::swap(rows[t], rows[bi]);
        const T pv = ScalarOps<T>::pow(p_t, best_v);
        const T uinv =
            ScalarOps<T>::inv_mod(ScalarOps<T>::divexact(rows[t][bj], pv), pk);
        for (int j = 0; j < nc; ++j)
            rows[t][j] = ScalarOps<T>::mulmod(rows[t][j], uinv, pk);
        for (int i = t + 1; i < nr; ++i) {
            if (rows[i][bj] == 0) continue;
            const T mult = ScalarOps<T>::divexact(rows[i][bj], pv);
            for (int j = 0; j < nc; ++j) {
                T s = ScalarOps<T>::mulmod(mult, rows[t][j], pk);
                rows[i][j] = ScalarOps<T>::mod(rows[i][j] - s, pk);
            }
        }
        ++t;
    }
    rows.resize(t);
}

template <typename T>
std::vector<long long> filtration_impl(const IntMatrix& m, const Prime& prime, int i_max) {
    const int rows = m.rows(), cols = m.cols();
    const long long p = prime.value();
    std::vector<long long> dims;
    dims.push_back(cols);
    if (i_max == 0) return dims;

    const T p_t(static_cast<long>(p));
    std::vector<T> me(static_cast<std::size_t>(rows) * cols);
    for (int i = 0; i < rows; ++i)
        for (int j = 0; j < cols; ++j)
            me[static_cast<std::size_t>(i) * cols + j] = ScalarOps<T>::from_entry(m.at(i, j));

    const FpMatrix mbar = reduce_mod_p(m, prime);

    // level 1: a basis of the mod-p kernel, lifted to integer vectors
    std::vector<std::vector<T>> gens;
    {
        const RrefResult rr = rref(mbar);
        std::vector<bool> is_piv(cols, false);
        for (int c : rr.pivot_cols) is_piv[c] = true;
        for (int fc = 0; fc < cols; ++fc) {
            if (is_piv[fc]) continue;
            std::vector<T> g(cols, T(0));
            g[fc] = 1;
            for (int k = 0; k < rr.rank; ++k) {
                const long long e = rr.matrix(k, fc);
                if (e) g[rr.pivot_cols[k]] = T(static_cast<long>(p - e));
            }
            gens.push_back(std::move(g));
        }
        dims.push_back(static_cast<long long>(gens.size()));
    }

    for (int level = 2; level <= i_max; ++level) {
        const int i = level - 1;  // gens generate M_i modulo p^i * Z^cols
        const T pi = ScalarOps<T>::pow(p_t, i);
        const T pl = ScalarOps<T>::pow(p_t, level);
        const int ng = static_cast<int>(gens.size());

        // residual system [ (m g)/p^i | m ] over F_p; unknowns are generator
        // coefficients plus the p^i * e_k coordinates
        FpMatrix sys(prime, rows, ng + cols);
        for (int j = 0; j < ng; ++j)
            for (int rr_ = 0; rr_ < rows; ++rr_) {
                T acc(0);
                const T* mrow = &me[static_cast<std::size_t>(rr_) * cols];
                for (int k = 0; k < cols; ++k) acc += mrow[k] * gens[j][k];
                const T res = ScalarOps<T>::mod(ScalarOps<T>::divexact(acc, pi), p_t);
                sys.set(rr_, j, ScalarOps<T>::to_small(res));
            }
        for (int k = 0; k < cols; ++k)
            for (int rr_ = 0; rr_ < rows; ++rr_) sys.set(rr_, ng + k, mbar(rr_, k));

        const RrefResult rr = rref(sys);
        std::vector<bool> is_piv(ng + cols, false);
        for (int c : rr.pivot_cols) is_piv[c] = true;

        std::vector<std::vector<T>> next;
        for (int fc = 0; fc < ng + cols; ++fc) {
            if (is_piv[fc]) continue;
            // nullspace basis vector for free column fc
            std::vector<long long> c(ng + cols, 0);
            c[fc] = 1;
            for (int k = 0; k < rr.rank; ++k) {
                const long long e = rr.matrix(k, fc);
                if (e) c[rr.pivot_cols[k]] = p - e;
            }
            std::vector<T> v(cols, T(0));
            for (int j = 0; j < ng; ++j) {
                if (c[j] == 0) continue;
                const T cj(static_cast<long>(c[j]));
                for (int k = 0; k < cols; ++k) v[k] += cj * gens[j][k];
            }
            for (int k = 0; k < cols; ++k) {
                if (c[ng + k]) v[k] += pi * T(static_cast<long>(c[ng + k]));
                v[k] = ScalarOps<T>::mod(v[k], pl);
            }
            bool nonzero = false;
            for (int k = 0; k < cols; ++k)
                if (v[k] != 0) { nonzero = true; break; }
            if (nonzero) next.push_back(std::move(v));
        }
        for (const auto& g : gens) {
            std::vector<T> h(cols);
            bool nonzero = false;
            for (int k = 0; k < cols; ++k) {
                h[k] = ScalarOps<T>::mod(p_t * g[k], pl);
                if (h[k] != 0) nonzero = true;
            }
            if (nonzero) next.push_back(std::move(h));
        }

        echelon_mod_pk(next, p_t, pl, level);
        gens = std::move(next);

        FpMatrix gm(prime, static_cast<int>(gens.size()), cols);
        for (int i2 = 0; i2 < static_cast<int>(gens.size()); ++i2)
            for (int k = 0; k < cols; ++k)
                gm.set(i2, k, ScalarOps<T>::to_small(ScalarOps<T>::mod(gens[i2][k], p_t)));
        dims.push_back(rref(gm).rank);
    }
    return dims;
}

} // namespace

std::vector<long long> filtration_dims(const IntMatrix& m, const Prime& p, int i_max) {
    if (i_max < 0) throw std::invalid_argument("filtration_dims: i_max must be >= 0");

    // word path when every intermediate value provably fits
    const long long pv = p.value();
    bool word_ok = false;
    long long plim = 1;
    {
        bool fits = true;
        for (int e = 0; e < i_max + 1; ++e) {
            if (plim > (1LL << 31) / pv) { fits = false; break; }
            plim *= pv;
        }
        if (fits) {
            mpz_class ma = m.max_abs();
            if (ma < 1) ma = 1;
            const mpz_class bound = ma * static_cast<long>(plim) * std::max(m.cols(), 1);
            word_ok = bound < (mpz_class(1) << 62);
        }
    }
    return word_ok ? filtration_impl<long long>(m, p, i_max)
                   : filtration_impl<mpz_class>(m, p, i_max);
}

ElementaryDivisorProfile profile_from_filtration(const std::vector<long long>& dims,
                                                 const Prime& p, long long size) {
    ElementaryDivisorProfile prof;
    prof.p = p.value();
    prof.size = size;
    for (std::size_t i = 0; i + 1 < dims.size(); ++i) {
        const long long f = dims[i] - dims[i + 1];
        if (f < 0)
            throw std::logic_error("profile_from_filtration: dimensions not monotone");
        if (f > 0) prof.multiplicities[static_cast<long long>(i)] = f;
    }
    return prof;
}

// ---------------------------------------------------------------------------
// Spectrum checks
// ---------------------------------------------------------------------------

VerificationReport char_poly_free_spectrum_check(const IntMatrix& a, const Prime& prime) {
    const long p = static_cast<long>(prime.value());
    const long l2 = (p * p + 1) * (p * p + p + 1);
    if (a.rows() != a.cols() || a.rows() != l2)
        throw std::invalid_argument(
            "char_poly_free_spectrum_check: size does not match |L_2| for p");
    const long long n = a.rows();
    const mpz_class p2 = mpz_class(p) * p;
    const mpz_class p3 = p2 * p;
    const mpz_class p4 = p3 * p;

    VerificationReport rep(p);
    {
        const mpz_class tr = a.trace();
        rep.add("trace_A", "0", tr.get_str(), tr == 0);
    }
    {
        mpz_class tr2 = 0;
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j)
                mpz_addmul(tr2.get_mpz_t(), a.at(i, j).get_mpz_t(), a.at(j, i).get_mpz_t());
        const mpz_class want = p4 * l2;
        rep.add("trace_A_squared", want.get_str(), tr2.get_str(), tr2 == want);
    }
    {
        const long long want = static_cast<long long>(n) - (p * p * p * p + p * p);
        const long long got = rank_over_rationals(a.plus_scaled_identity(mpz_class(-p)));
        rep.add_value("rank_A_minus_pI", want, got);
    }
    {
        const long long want = static_cast<long long>(n) - (p * p * p + p * p + p);
        const long long got = rank_over_rationals(a.plus_scaled_identity(p2));
        rep.add_value("rank_A_plus_p2I", want, got);
    }
    {
        const IntMatrix z =
            (a.plus_scaled_identity(-p4) * a.plus_scaled_identity(mpz_class(-p))) *
            a.plus_scaled_identity(p2);
        rep.add("minimal_polynomial_annihilation", "zero matrix",
                z.is_zero() ? "zero matrix" : "nonzero matrix", z.is_zero());
    }
    return rep;
}

ElementaryDivisorProfile elementary_divisors(const IntMatrix& m, const Prime& p,
                                             DivisorEngine engine, const PLocalOptions& opt) {
    switch (engine) {
        case DivisorEngine::Bigint:
            return profile_from_snf(smith_normal_form(m, false), p);
        case DivisorEngine::PLocal:
            return p_local_elementary_divisors(m, p, opt);
        case DivisorEngine::Both: {
            ElementaryDivisorProfile a = profile_from_snf(smith_normal_form(m, false), p);
            ElementaryDivisorProfile b = p_local_elementary_divisors(m, p, opt);
            if (!(a == b))
                throw std::logic_error(
                    "elementary_divisors: the bigint SNF and the p-local engine disagree");
            return a;
        }
    }
    throw std::logic_error("elementary_divisors: unknown engine");
}

} // namespace skewdiv
