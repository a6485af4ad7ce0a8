#pragma once

// Small dense linear algebra: just enough for ordinary least squares via
// Householder QR with column pivoting, plus the (X^T X)^-1 needed for
// regression standard errors. Rank is judged against a relative tolerance on
// the R diagonal; rank deficiency is reported, never papered over.

#include <cmath>
#include <cstddef>
#include <numeric>
#include <string>
#include <vector>

#include "sensecast/error.hpp"

namespace sensecast {

class Matrix {
public:
    Matrix() = default;
    Matrix(std::size_t rows, std::size_t cols, double fill = 0.0)
        : rows_(rows), cols_(cols), data_(rows * cols, fill) {}

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }

    double& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
    double operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

private:
    std::size_t rows_ = 0, cols_ = 0;
    std::vector<double> data_;
};

struct LeastSquaresResult {
    std::vector<double> coefficients;  // in original column order
    std::vector<double> fitted;        // A * coefficients
    std::vector<double> residuals;     // b - fitted
    double rss = 0.0;
    std::size_t rank = 0;
    // Upper-triangular R and the column permutation of the pivoted QR,
    // kept so callers can form (A^T A)^-1 without refactorizing.
    Matrix r;
    std::vector<std::size_t> perm;
};

namespace detail {

constexpr double kRankTolerance = 1e-10;  // relative to |R(0,0)|

}  // namespace detail

// Minimizes ||A x - b||_2. Throws SingularDesignError when rows < cols or the
// design is rank-deficient within the relative tolerance.
inline LeastSquaresResult least_squares(const Matrix& a, const std::vector<double>& b) {
    const std::size_t n = a.rows();
    const std::size_t p = a.cols();
    if (b.size() != n) throw ShapeError("least_squares: b length != rows");
    if (n < p) throw SingularDesignError("least_squares: fewer rows than columns");
    if (p == 0) throw ShapeError("least_squares: zero columns");

    Matrix work = a;
    std::vector<double> rhs = b;
    std::vector<std::size_t> perm(p);
    std::iota(perm.begin(), perm.end(), std::size_t{0});

    // Squared column norms of the remaining submatrix, for pivot selection.
    std::vector<double> colnorm(p, 0.0);
    for (std::size_t j = 0; j < p; ++j) {
        for (std::size_t i = 0; i < n; ++i) colnorm[j] += work(i, j) * work(i, j);
    }

    double r00 = 0.0;
    for (std::size_t k = 0; k < p; ++k) {
        std::size_t pivot = k;
        for (std::size_t j = k + 1; j < p; ++j) {
            if (colnorm[j] > colnorm[pivot]) pivot = j;
        }
        if (pivot != k) {
            for (std::size_t i = 0; i < n; ++i) std::swap(work(i, k), work(i, pivot));
            std::swap(colnorm[k], colnorm[pivot]);
            std::swap(perm[k], perm[pivot]);
        }

        // Householder reflector for column k.
        double norm = 0.0;
        for (std::size_t i = k; i < n; ++i) norm += work(i, k) * work(i, k);
        norm = std::sqrt(norm);
        if (k == 0) r00 = norm;
        if (norm == 0.0 || (k > 0 && norm <= detail::kRankTolerance * r00)) {
            throw SingularDesignError("design matrix rank-deficient at column " +
                                      std::to_string(perm[k]) + " (rank " + std::to_string(k) + ")");
        }
        const double alpha = work(k, k) >= 0.0 ? -norm : norm;
        std::vector<double> v(n - k);
        v[0] = work(k, k) - alpha;
        for (std::size_t i = k + 1; i < n; ++i) v[i - k] = work(i, k);
        double vtv = 0.0;
        for (double x : v) vtv += x * x;

        work(k, k) = alpha;
        for (std::size_t i = k + 1; i < n; ++i) work(i, k) = 0.0;

        if (vtv > 0.0) {
            for (std::size_t j = k + 1; j < p; ++j) {
                double dot = 0.0;
                for (std::size_t i = k; i < n; ++i) dot += v[i - k] * work(i, j);
                const double scale = 2.0 * dot / vtv;
                for (std::size_t i = k; i < n; ++i) work(i, j) -= scale * v[i - k];
            }
            double dot = 0.0;
            for (std::size_t i = k; i < n; ++i) dot += v[i - k] * rhs[i];
            const double scale = 2.0 * dot / vtv;
            for (std::size_t i = k; i < n; ++i) rhs[i] -= scale * v[i - k];
        }
        for (std::size_t j = k + 1; j < p; ++j) {
            colnorm[j] -= work(k, j) * work(k, j);
            if (colnorm[j] < 0.0) colnorm[j] = 0.0;
        }
    }

    // Back-substitution: R z = (Q^T b)[0..p)
    std::vector<double> z(p, 0.0);
    for (std::size_t k = p; k-- > 0;) {
        double s = rhs[k];
        for (std::size_t j = k + 1; j < p; ++j) s -= work(k, j) * z[j];
        z[k] = s / work(k, k);
    }

    LeastSquaresResult res;
    res.rank = p;
    res.perm = perm;
    res.r = Matrix(p, p);
    for (std::size_t i = 0; i < p; ++i) {
        for (std::size_t j = i; j < p; ++j) res.r(i, j) = work(i, j);
    }
    res.coefficients.assign(p, 0.0);
    for (std::size_t k = 0; k < p; ++k) res.coefficients[perm[k]] = z[k];

    res.fitted.assign(n, 0.0);
    res.residuals.assign(n, 0.0);
    for (std::size_t i = 0; i < n; ++i) {
        double yhat = 0.0;
        for (std::size_t j = 0; j < p; ++j) yhat += a(i, j) * res.coefficients[j];
        res.fitted[i] = yhat;
        res.residuals[i] = b[i] - yhat;
        res.rss += res.residuals[i] * res.residuals[i];
    }
    return res;
}

// (A^T A)^-1 from a pivoted QR: P R^-1 R^-T P^T.
inline Matrix normal_matrix_inverse(const LeastSquaresResult& ls) {
    const std::size_t p = ls.r.rows();
    // Invert upper-triangular R.
    Matrix rinv(p, p);
    for (std::size_t j = p; j-- > 0;) {
        rinv(j, j) = 1.0 / ls.r(j, j);
        for (std::size_t i = j; i-- > 0;) {
            double s = 0.0;
            for (std::size_t k = i + 1; k <= j; ++k) s += ls.r(i, k) * rinv(k, j);
            rinv(i, j) = -s / ls.r(i, i);
        }
    }
    // S = R^-1 R^-T, then undo the column permutation.
    Matrix out(p, p);
    for (std::size_t i = 0; i < p; ++i) {
        for (std::size_t j = 0; j < p; ++j) {
            double s = 0.0;
            for (std::size_t k = (i > j ? i : j); k < p; ++k) s += rinv(i, k) * rinv(j, k);
            out(ls.perm[i], ls.perm[j]) = s;
        }
    }
    return out;
}

}  // namespace sensecast
