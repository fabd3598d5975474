#include "skewdiv/int_matrix.hpp"

#include <stdexcept>

namespace skewdiv {

IntMatrix::IntMatrix(int rows, int cols) : rows_(rows), cols_(cols) {
    if (rows < 0 || cols < 0)
        throw std::invalid_argument("IntMatrix: negative dimensions");
    e_.assign(static_cast<std::size_t>(rows) * cols, mpz_class(0));
}

IntMatrix IntMatrix::identity(int n) {
    IntMatrix m(n, n);
    for (int i = 0; i < n; ++i) m.at(i, i) = 1;
    return m;
}

IntMatrix IntMatrix::all_ones(int rows, int cols) {
    IntMatrix m(rows, cols);
    for (auto& v : m.e_) v = 1;
    return m;
}

IntMatrix IntMatrix::vstack(const IntMatrix& top, const IntMatrix& bottom) {
    if (top.cols() != bottom.cols())
        throw std::invalid_argument("IntMatrix::vstack: column counts differ");
    IntMatrix m(top.rows() + bottom.rows(), top.cols());
    for (int i = 0; i < top.rows(); ++i)
        for (int j = 0; j < top.cols(); ++j) m.at(i, j) = top.at(i, j);
    for (int i = 0; i < bottom.rows(); ++i)
        for (int j = 0; j < bottom.cols(); ++j) m.at(top.rows() + i, j) = bottom.at(i, j);
    return m;
}

IntMatrix IntMatrix::transposed() const {
    IntMatrix t(cols_, rows_);
    for (int i = 0; i < rows_; ++i)
        for (int j = 0; j < cols_; ++j) t.at(j, i) = at(i, j);
    return t;
}

mpz_class IntMatrix::trace() const {
    if (rows_ != cols_) throw std::invalid_argument("IntMatrix::trace: not square");
    mpz_class s = 0;
    for (int i = 0; i < rows_; ++i) s += at(i, i);
    return s;
}

mpz_class IntMatrix::row_sum(int i) const {
    mpz_class s = 0;
    for (int j = 0; j < cols_; ++j) s += at(i, j);
    return s;
}

mpz_class IntMatrix::col_sum(int j) const {
    mpz_class s = 0;
    for (int i = 0; i < rows_; ++i) s += at(i, j);
    return s;
}

mpz_class IntMatrix::max_abs() const {
    mpz_class m = 0;
    for (const auto& v : e_)
        if (mpz_cmpabs(v.get_mpz_t(), m.get_mpz_t()) > 0) {
            m = v;
            mpz_abs(m.get_mpz_t(), m.get_mpz_t());
        }
    return m;
}

bool IntMatrix::is_zero() const {
    for (const auto& v : e_)
        if (v != 0) return false;
    return true;
}

IntMatrix IntMatrix::plus_scaled_identity(const mpz_class& c) const {
    if (rows_ != cols_)
        throw std::invalid_argument("IntMatrix::plus_scaled_identity: not square");
    IntMatrix m = *this;
    for (int i = 0; i < rows_; ++i) m.at(i, i) += c;
    return m;
}

IntMatrix IntMatrix::operator+(const IntMatrix& o) const {
    if (rows_ != o.rows_ || cols_ != o.cols_)
        throw std::invalid_argument("IntMatrix: shape mismatch in addition");
    IntMatrix m = *this;
    for (std::size_t k = 0; k < e_.size(); ++k) m.e_[k] += o.e_[k];
    return m;
}

IntMatrix IntMatrix::operator-(const IntMatrix& o) const {
    if (rows_ != o.rows_ || cols_ != o.cols_)
        throw std::invalid_argument("IntMatrix: shape mismatch in subtraction");
    IntMatrix m = *this;
    for (std::size_t k = 0; k < e_.size(); ++k) m.e_[k] -= o.e_[k];
    return m;
}

IntMatrix IntMatrix::operator*(const IntMatrix& o) const {
    if (cols_ != o.rows_)
        throw std::invalid_argument("IntMatrix: inner dimensions differ");
    IntMatrix c(rows_, o.cols_);
    if (rows_ == 0 || cols_ == 0 || o.cols_ == 0) return c;

    const mpz_class ma = max_abs(), mb = o.max_abs();
    if (ma == 0 || mb == 0) return c;

    // Accumulated dot products bounded by ma * mb * inner; stay in words when safe.
    mpz_class bound = ma * mb * cols_;
    if (bound < (mpz_class(1) << 62)) {
        const std::size_t na = e_.size(), nb = o.e_.size();
        std::vector<long long> a64(na), b64(nb);
        for (std::size_t k = 0; k < na; ++k) a64[k] = mpz_get_si(e_[k].get_mpz_t());
        for (std::size_t k = 0; k < nb; ++k) b64[k] = mpz_get_si(o.e_[k].get_mpz_t());
        std::vector<long long> c64(static_cast<std::size_t>(rows_) * o.cols_, 0);
        const int K = cols_, N = o.cols_;
        for (int i = 0; i < rows_; ++i) {
            long long* crow = c64.data() + static_cast<std::size_t>(i) * N;
            for (int k = 0; k < K; ++k) {
                const long long aik = a64[static_cast<std::size_t>(i) * K + k];
                if (aik == 0) continue;
                const long long* brow = b64.data() + static_cast<std::size_t>(k) * N;
                for (int j = 0; j < N; ++j) crow[j] += aik * brow[j];
            }
        }
        for (std::size_t k = 0; k < c64.size(); ++k) c.e_[k] = static_cast<long>(c64[k]);
        return c;
    }

    for (int i = 0; i < rows_; ++i)
        for (int k = 0; k < cols_; ++k) {
            const mpz_class& aik = at(i, k);
            if (aik == 0) continue;
            mpz_class* crow = &c.e_[static_cast<std::size_t>(i) * o.cols_];
            const mpz_class* brow = &o.e_[static_cast<std::size_t>(k) * o.cols_];
            for (int j = 0; j < o.cols_; ++j)
                mpz_addmul(crow[j].get_mpz_t(), aik.get_mpz_t(), brow[j].get_mpz_t());
        }
    return c;
}

IntMatrix operator*(const mpz_class& c, const IntMatrix& m) {
    IntMatrix out(m.rows(), m.cols());
    for (int i = 0; i < m.rows(); ++i)
        for (int j = 0; j < m.cols(); ++j) out.at(i, j) = c * m.at(i, j);
    return out;
}

FpMatrix reduce_mod_p(const IntMatrix& m, const Prime& p) {
    FpMatrix r(p, m.rows(), m.cols());
    const unsigned long pu = static_cast<unsigned long>(p.value());
    for (int i = 0; i < m.rows(); ++i)
        for (int j = 0; j < m.cols(); ++j) {
            unsigned long v = mpz_fdiv_ui(m.at(i, j).get_mpz_t(), pu);
            if (v) r.set(i, j, static_cast<long long>(v));
        }
    return r;
}

IntMatrix lift_to_int(const FpMatrix& m) {
    IntMatrix r(m.rows(), m.cols());
    for (int i = 0; i < m.rows(); ++i)
        for (int j = 0; j < m.cols(); ++j)
            if (m(i, j)) r.at(i, j) = static_cast<long>(m(i, j));
    return r;
}

} // namespace skewdiv
