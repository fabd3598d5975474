#pragma once

#include "skewdiv/prime.hpp"

#include <cstddef>
#include <vector>

namespace skewdiv {

class IntMatrix;

/// Dense matrix over F_p. Entries are kept as least non-negative residues,
/// normalized at construction.
class FpMatrix {
public:
    FpMatrix(Prime p, int rows, int cols);
    FpMatrix(Prime p, int rows, int cols, const std::vector<long long>& entries);

    long long operator()(int i, int j) const { return e_[idx(i, j)]; }
    void set(int i, int j, long long v) { e_[idx(i, j)] = normalize(v, p_.value()); }

    int rows() const { return rows_; }
    int cols() const { return cols_; }
    const Prime& prime() const { return p_; }
    const std::vector<long long>& data() const { return e_; }

    FpMatrix transposed() const;

    static long long normalize(long long v, long long p) {
        long long r = v % p;
        return r < 0 ? r + p : r;
    }

    friend bool operator==(const FpMatrix& a, const FpMatrix& b) {
        return a.p_ == b.p_ && a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.e_ == b.e_;
    }

private:
    std::size_t idx(int i, int j) const {
        return static_cast<std::size_t>(i) * cols_ + j;
    }

    Prime p_;
    int rows_;
    int cols_;
    std::vector<long long> e_;
};

struct RrefResult {
    FpMatrix matrix;
    int rank = 0;
    std::vector<int> pivot_cols;
};

/// The unique reduced row echelon form of m over F_p: unit pivots, zeros above
/// and below each pivot, pivot columns strictly increasing, zero rows last.
RrefResult rref(const FpMatrix& m);

/// Word-parallel XOR elimination on bit-packed rows. Output is identical to
/// rref(); requires p = 2.
RrefResult rref_bitpacked_gf2(const FpMatrix& m);

FpMatrix mat_mul_mod_p(const FpMatrix& a, const FpMatrix& b);

/// Rank over F_p of an integer matrix reduced entrywise mod p.
long long rank_mod_p(const IntMatrix& m, const Prime& p);

long long inverse_mod_p(long long a, long long p);

} // namespace skewdiv
