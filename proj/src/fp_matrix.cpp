#include "skewdiv/fp_matrix.hpp"
#include "skewdiv/int_matrix.hpp"

#include <cstdint>
#include <stdexcept>
#include <utility>

namespace skewdiv {

namespace {
// Entry arithmetic assumes products of two residues fit in a signed 64-bit
// word, so the modulus is capped.
constexpr long long kMaxModulus = 1LL << 31;
}

FpMatrix::FpMatrix(Prime p, int rows, int cols) : p_(p), rows_(rows), cols_(cols) {
    if (rows < 0 || cols < 0)
        throw std::invalid_argument("FpMatrix: negative dimensions");
    if (p.value() >= kMaxModulus)
        throw std::invalid_argument("FpMatrix: modulus too large for word arithmetic");
    e_.assign(static_cast<std::size_t>(rows) * cols, 0);
}

FpMatrix::FpMatrix(Prime p, int rows, int cols, const std::vector<long long>& entries)
    : FpMatrix(p, rows, cols) {
    if (entries.size() != e_.size())
        throw std::invalid_argument("FpMatrix: entry count does not match dimensions");
    for (std::size_t k = 0; k < e_.size(); ++k) e_[k] = normalize(entries[k], p_.value());
}

FpMatrix FpMatrix::transposed() const {
    FpMatrix t(p_, cols_, rows_);
    for (int i = 0; i < rows_; ++i)
        for (int j = 0; j < cols_; ++j)
            t.e_[static_cast<std::size_t>(j) * rows_ + i] = e_[idx(i, j)];
    return t;
}

long long inverse_mod_p(long long a, long long p) {
    a = FpMatrix::normalize(a, p);
    if (a == 0) throw std::invalid_argument("inverse_mod_p: zero is not invertible");
    long long t = 0, new_t = 1, r = p, new_r = a;
    while (new_r != 0) {
        long long q = r / new_r;
        t = std::exchange(new_t, t - q * new_t);
        r = std::exchange(new_r, r - q * new_r);
    }
    return FpMatrix::normalize(t, p);
}

RrefResult rref(const FpMatrix& m) {
    const long long p = m.prime().value();
    const int rows = m.rows(), cols = m.cols();
    std::vector<long long> w = m.data();
    auto at = [&](int i, int j) -> long long& {
        return w[static_cast<std::size_t>(i) * cols + j];
    };

    std::vector<int> pivots;
    int rank = 0;
    for (int col = 0; col < cols && rank < rows; ++col) {
        int pr = -1;
        for (int i = rank; i < rows; ++i)
            if (at(i, col) != 0) { pr = i; break; }
        if (pr < 0) continue;
        if (pr != rank)
            for (int j = col; j < cols; ++j) std::swap(at(pr, j), at(rank, j));
        const long long inv = inverse_mod_p(at(rank, col), p);
        for (int j = col; j < cols; ++j) at(rank, j) = at(rank, j) * inv % p;
        for (int i = 0; i < rows; ++i) {
            if (i == rank) continue;
            const long long f = at(i, col);
            if (f == 0) continue;
            for (int j = col; j < cols; ++j) {
                long long v = (at(i, j) - f * at(rank, j)) % p;
                at(i, j) = v < 0 ? v + p : v;
            }
        }
        pivots.push_back(col);
        ++rank;
    }
    return {FpMatrix(m.prime(), rows, cols, w), rank, std::move(pivots)};
}

RrefResult rref_bitpacked_gf2(const FpMatrix& m) {
    if (m.prime().value() != 2)
        throw std::invalid_argument("rref_bitpacked_gf2: modulus must be 2");
    const int rows = m.rows(), cols = m.cols();
    const int words = (cols + 63) / 64;
    std::vector<std::uint64_t> bits(static_cast<std::size_t>(rows) * words, 0);
    auto word = [&](int i, int w) -> std::uint64_t& {
        return bits[static_cast<std::size_t>(i) * words + w];
    };
    for (int i = 0; i < rows; ++i)
        for (int j = 0; j < cols; ++j)
            if (m(i, j)) word(i, j >> 6) |= std::uint64_t(1) << (j & 63);

    auto test = [&](int i, int j) {
        return (word(i, j >> 6) >> (j & 63)) & 1;
    };

    std::vector<int> pivots;
    int rank = 0;
    for (int col = 0; col < cols && rank < rows; ++col) {
        int pr = -1;
        for (int i = rank; i < rows; ++i)
            if (test(i, col)) { pr = i; break; }
        if (pr < 0) continue;
        if (pr != rank)
            for (int w = 0; w < words; ++w) std::swap(word(pr, w), word(rank, w));
        for (int i = 0; i < rows; ++i) {
            if (i == rank || !test(i, col)) continue;
            for (int w = 0; w < words; ++w) word(i, w) ^= word(rank, w);
        }
        pivots.push_back(col);
        ++rank;
    }

    std::vector<long long> out(static_cast<std::size_t>(rows) * cols, 0);
    for (int i = 0; i < rows; ++i)
        for (int j = 0; j < cols; ++j)
            out[static_cast<std::size_t>(i) * cols + j] = test(i, j);
    return {FpMatrix(m.prime(), rows, cols, out), rank, std::move(pivots)};
}

FpMatrix mat_mul_mod_p(const FpMatrix& a, const FpMatrix& b) {
    if (a.prime() != b.prime())
        throw std::invalid_argument("mat_mul_mod_p: moduli differ");
    if (a.cols() != b.rows())
        throw std::invalid_argument("mat_mul_mod_p: inner dimensions differ");
    const long long p = a.prime().value();
    FpMatrix c(a.prime(), a.rows(), b.cols());
    for (int i = 0; i < a.rows(); ++i)
        for (int k = 0; k < a.cols(); ++k) {
            const long long aik = a(i, k);
            if (aik == 0) continue;
            for (int j = 0; j < b.cols(); ++j) {
                long long v = (c(i, j) + aik * b(k, j)) % p;
                c.set(i, j, v);
            }
        }
    return c;
}

long long rank_mod_p(const IntMatrix& m, const Prime& p) {
    FpMatrix r = reduce_mod_p(m, p);
    if (p.value() == 2) return rref_bitpacked_gf2(r).rank;
    return rref(r).rank;
}

} // namespace skewdiv
