#include "stieltjes/matrix.hpp"

#include "stieltjes/error.hpp"

#include <utility>

namespace stieltjes {

RatMatrix::RatMatrix(std::initializer_list<std::initializer_list<long>> rows) {
    rows_ = rows.size();
    cols_ = rows_ ? rows.begin()->size() : 0;
    data_.reserve(rows_ * cols_);
    for (const auto& r : rows) {
        if (r.size() != cols_) fail("DomainError", "ragged matrix literal");
        for (long v : r) data_.emplace_back(v);
    }
}

RatMatrix RatMatrix::identity(std::size_t n) {
    RatMatrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
    return m;
}

BigRat det_bareiss(const RatMatrix& m) {
    if (!m.square()) fail("NonSquare", "determinant of a " + std::to_string(m.rows()) + "x" + std::to_string(m.cols()) + " matrix");
    const std::size_t n = m.rows();
    if (n == 0) return 1;
    std::vector<std::vector<BigInt>> a(n, std::vector<BigInt>(n));
    BigInt scale = 1;
    for (std::size_t i = 0; i < n; ++i) {
        BigInt l = 1;
        for (std::size_t j = 0; j < n; ++j) mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), m(i, j).get_den_mpz_t());
        scale *= l;
        for (std::size_t j = 0; j < n; ++j) a[i][j] = m(i, j).get_num() * (l / m(i, j).get_den());
    }
    int sign = 1;
    BigInt prev = 1;
    for (std::size_t k = 0; k + 1 < n; ++k) {
        if (a[k][k] == 0) {
            std::size_t p = k + 1;
            while (p < n && a[p][k] == 0) ++p;
            if (p == n) return 0;
            std::swap(a[k], a[p]);
            sign = -sign;
        }
        for (std::size_t i = k + 1; i < n; ++i) {
            for (std::size_t j = k + 1; j < n; ++j) {
                BigInt t = a[i][j] * a[k][k] - a[i][k] * a[k][j];
                mpz_divexact(a[i][j].get_mpz_t(), t.get_mpz_t(), prev.get_mpz_t());
            }
        }
        prev = a[k][k];
    }
    BigRat det(a[n - 1][n - 1] * sign, scale);
    det.canonicalize();
    return det;
}

std::vector<BigRat> solve_exact(const RatMatrix& m, const std::vector<BigRat>& rhs) {
    if (!m.square()) fail("NonSquare", "solve_exact needs a square matrix");
    const std::size_t n = m.rows();
    if (rhs.size() != n) fail("DimensionMismatch", "right-hand side length differs from matrix size");
    std::vector<std::vector<BigRat>> a(n, std::vector<BigRat>(n + 1));
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) a[i][j] = m(i, j);
        a[i][n] = rhs[i];
    }
    for (std::size_t k = 0; k < n; ++k) {
        std::size_t p = k;
        while (p < n && a[p][k] == 0) ++p;
        if (p == n) fail("SingularSystem", "matrix is singular at column " + std::to_string(k));
        if (p != k) std::swap(a[p], a[k]);
        const BigRat inv = 1 / a[k][k];
        for (std::size_t j = k; j <= n; ++j) a[k][j] *= inv;
        for (std::size_t i = 0; i < n; ++i) {
            if (i == k || a[i][k] == 0) continue;
            const BigRat f = a[i][k];
            for (std::size_t j = k; j <= n; ++j) a[i][j] -= f * a[k][j];
        }
    }
    std::vector<BigRat> x(n);
    for (std::size_t i = 0; i < n; ++i) x[i] = a[i][n];
    return x;
}

} // namespace stieltjes
