#pragma once

#include "stieltjes/bigrat.hpp"

#include <cstddef>
#include <functional>
#include <unordered_map>
#include <vector>

namespace stieltjes {

class RatMatrix {
public:
    RatMatrix() = default;
    RatMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols) {}
    RatMatrix(std::initializer_list<std::initializer_list<long>> rows);
    static RatMatrix identity(std::size_t n);

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }
    bool square() const { return rows_ == cols_; }

    BigRat& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
    const BigRat& operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

    friend bool operator==(const RatMatrix&, const RatMatrix&) = default;

private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<BigRat> data_;
};

// Fraction-free Bareiss elimination on the row-wise common-denominator lift.
BigRat det_bareiss(const RatMatrix& m);
// Exact solution of m x = rhs; throws SingularSystem.
std::vector<BigRat> solve_exact(const RatMatrix& m, const std::vector<BigRat>& rhs);

// Division-free determinant over any commutative ring, by Laplace expansion
// memoised on the set of used columns: O(n 2^n) ring products. Meant for the
// small matrices of series or polynomials (n <= ~16).
template <class T>
T det_expand(const std::vector<std::vector<T>>& m, const T& zero, const T& one) {
    const std::size_t n = m.size();
    if (n == 0) return one;
    // memo[mask] = det of rows (n - popcount(mask)) .. n-1 restricted to columns in mask
    std::unordered_map<unsigned, T> memo;
    std::function<T(unsigned)> rec = [&](unsigned mask) -> T {
        if (mask == 0) return one;
        auto it = memo.find(mask);
        if (it != memo.end()) return it->second;
        const std::size_t row = n - static_cast<std::size_t>(__builtin_popcount(mask));
        T acc = zero;
        int position = 0;
        for (std::size_t j = 0; j < n; ++j) {
            if (!(mask & (1U << j))) continue;
            const T sub = rec(mask & ~(1U << j));
            const T term = m[row][j] * sub;
            if (position % 2 == 0) acc = acc + term;
            else acc = acc - term;
            ++position;
        }
        memo.emplace(mask, acc);
        return acc;
    };
    return rec((n >= 32) ? 0xffffffffU : ((1U << n) - 1U));
}

} // namespace stieltjes
