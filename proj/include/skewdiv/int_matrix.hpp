#pragma once

#include "skewdiv/fp_matrix.hpp"

#include <gmpxx.h>
#include <vector>

namespace skewdiv {

/// Dense matrix of arbitrary-precision integers.
class IntMatrix {
public:
    IntMatrix() : rows_(0), cols_(0) {}
    IntMatrix(int rows, int cols);

    static IntMatrix identity(int n);
    static IntMatrix all_ones(int rows, int cols);
    static IntMatrix vstack(const IntMatrix& top, const IntMatrix& bottom);

    mpz_class& at(int i, int j) { return e_[idx(i, j)]; }
    const mpz_class& at(int i, int j) const { return e_[idx(i, j)]; }

    int rows() const { return rows_; }
    int cols() const { return cols_; }

    IntMatrix transposed() const;
    mpz_class trace() const;
    mpz_class row_sum(int i) const;
    mpz_class col_sum(int j) const;
    mpz_class max_abs() const;
    bool is_zero() const;

    /// m + c*I (square only).
    IntMatrix plus_scaled_identity(const mpz_class& c) const;

    IntMatrix operator+(const IntMatrix& o) const;
    IntMatrix operator-(const IntMatrix& o) const;

    /// Exact integer product. Uses a word-size path when entry bounds allow;
    /// results are bit-identical either way.
    IntMatrix operator*(const IntMatrix& o) const;

    friend bool operator==(const IntMatrix& a, const IntMatrix& b) {
        return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.e_ == b.e_;
    }

private:
    std::size_t idx(int i, int j) const {
        return static_cast<std::size_t>(i) * cols_ + j;
    }

    int rows_;
    int cols_;
    std::vector<mpz_class> e_;
};

IntMatrix operator*(const mpz_class& c, const IntMatrix& m);

/// Entrywise least non-negative residues mod p.
FpMatrix reduce_mod_p(const IntMatrix& m, const Prime& p);

IntMatrix lift_to_int(const FpMatrix& m);

} // namespace skewdiv
