// Copyright 2026 The spindrive Authors
// SPDX-License-Identifier: Apache-2.0

/**
 * @file linalg.hpp
 * @brief Small dense linear algebra: cyclic Jacobi eigensolver for real
 *        symmetric matrices and a one-sided Jacobi SVD least-squares solver.
 *
 * Everything here targets spin-cluster dimensions (<= 16). Determinism
 * matters more than speed: fixed sweep orders, no pivot randomization.
 */

#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <numeric>
#include <stdexcept>
#include <vector>

namespace spindrive {

using cxd = std::complex<double>;

/// Dense row-major real matrix.
struct Mat {
    int rows = 0, cols = 0;
    std::vector<double> a;

    Mat() = default;
    Mat(int r, int c) : rows(r), cols(c), a(static_cast<size_t>(r) * c, 0.0) {}

    double& operator()(int i, int j) { return a[static_cast<size_t>(i) * cols + j]; }
    double operator()(int i, int j) const { return a[static_cast<size_t>(i) * cols + j]; }

    static Mat identity(int n) {
        Mat m(n, n);
        for (int i = 0; i < n; ++i) m(i, i) = 1.0;
        return m;
    }
};

inline std::vector<double> matvec(const Mat& m, const std::vector<double>& x) {
    std::vector<double> y(m.rows, 0.0);
    for (int i = 0; i < m.rows; ++i) {
        double s = 0.0;
        for (int j = 0; j < m.cols; ++j) s += m(i, j) * x[j];
        y[i] = s;
    }
    return y;
}

inline Mat matmul(const Mat& a, const Mat& b) {
    Mat c(a.rows, b.cols);
    for (int i = 0; i < a.rows; ++i)
        for (int k = 0; k < a.cols; ++k) {
            const double aik = a(i, k);
            if (aik == 0.0) continue;
            for (int j = 0; j < b.cols; ++j) c(i, j) += aik * b(k, j);
        }
    return c;
}

inline Mat transpose(const Mat& m) {
    Mat t(m.cols, m.rows);
    for (int i = 0; i < m.rows; ++i)
        for (int j = 0; j < m.cols; ++j) t(j, i) = m(i, j);
    return t;
}

inline double dot(const std::vector<double>& x, const std::vector<double>& y) {
    double s = 0.0;
    for (size_t i = 0; i < x.size(); ++i) s += x[i] * y[i];
    return s;
}

inline double norm2(const std::vector<double>& x) { return std::sqrt(dot(x, x)); }

inline double norm_inf(const std::vector<double>& x) {
    double m = 0.0;
    for (double v : x) m = std::max(m, std::abs(v));
    return m;
}

/// Eigendecomposition of a real symmetric matrix, ascending eigenvalues.
struct SymEig {
    std::vector<double> values;
    Mat vectors;  ///< column k is the eigenvector of values[k]
};

/// Cyclic Jacobi rotations. Throws if the off-diagonal mass fails to shrink
/// below machine scale within max_sweeps.
inline SymEig eigh(Mat m, int max_sweeps = 64) {
    if (m.rows != m.cols) throw std::invalid_argument("eigh: matrix must be square");
    const int n = m.rows;
    Mat v = Mat::identity(n);

    double frob = 0.0;
    for (double x : m.a) frob += x * x;
    frob = std::sqrt(frob);
    const double tol = 1e-15 * std::max(frob, 1.0);

    bool converged = (n <= 1);
    for (int sweep = 0; sweep < max_sweeps && !converged; ++sweep) {
        double off = 0.0;
        for (int p = 0; p < n; ++p)
            for (int q = p + 1; q < n; ++q) off += m(p, q) * m(p, q);
        if (std::sqrt(2.0 * off) <= tol) {
            converged = true;
            break;
        }
        for (int p = 0; p < n; ++p) {
            for (int q = p + 1; q < n; ++q) {
                const double apq = m(p, q);
                if (std::abs(apq) <= 1e-300) {
                    m(p, q) = m(q, p) = 0.0;
                    continue;
                }
                const double theta = (m(q, q) - m(p, p)) / (2.0 * apq);
                const double t = std::copysign(1.0, theta) /
                                 (std::abs(theta) + std::sqrt(theta * theta + 1.0));
                const double c = 1.0 / std::sqrt(t * t + 1.0);
                const double s = t * c;
                const double app = m(p, p), aqq = m(q, q);
                m(p, p) = app - t * apq;
                m(q, q) = aqq + t * apq;
                m(p, q) = m(q, p) = 0.0;
                for (int k = 0; k < n; ++k) {
                    if (k != p && k != q) {
                        const double akp = m(k, p), akq = m(k, q);
                        m(k, p) = m(p, k) = c * akp - s * akq;
                        m(k, q) = m(q, k) = s * akp + c * akq;
                    }
                    const double vkp = v(k, p), vkq = v(k, q);
                    v(k, p) = c * vkp - s * vkq;
                    v(k, q) = s * vkp + c * vkq;
                }
            }
        }
    }
    if (!converged) {
        double off = 0.0;
        for (int p = 0; p < n; ++p)
            for (int q = p + 1; q < n; ++q) off += m(p, q) * m(p, q);
        if (std::sqrt(2.0 * off) > tol)
            throw std::runtime_error("eigh: Jacobi sweep did not converge");
    }

    SymEig out;
    out.values.resize(n);
    for (int i = 0; i < n; ++i) out.values[i] = m(i, i);
    std::vector<int> order(n);
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(),
                     [&](int i, int j) { return out.values[i] < out.values[j]; });
    std::vector<double> sorted(n);
    Mat vs(n, n);
    for (int k = 0; k < n; ++k) {
        sorted[k] = out.values[order[k]];
        for (int r = 0; r < n; ++r) vs(r, k) = v(r, order[k]);
    }
    out.values = std::move(sorted);
    out.vectors = std::move(vs);
    return out;
}

/// Minimum-norm least-squares solution of A x ~= b with singular values below
/// rcond * sigma_max treated as zero.
struct LstsqSolution {
    std::vector<double> x;
    std::vector<double> singular_values;  ///< descending
    int rank = 0;
    double residual_inf = 0.0;  ///< ||A x - b||_inf against the input matrix
};

/// One-sided Jacobi SVD: orthogonalizes the columns of A by plane rotations,
/// accumulating them into V; singular values are the final column norms.
inline LstsqSolution svd_least_squares(const Mat& a0, const std::vector<double>& b,
                                       double rcond = 1e-10) {
    if (static_cast<int>(b.size()) != a0.rows)
        throw std::invalid_argument("svd_least_squares: rhs size mismatch");
    const int m = a0.rows, n = a0.cols;
    Mat a = a0;
    Mat v = Mat::identity(n);

    for (int sweep = 0; sweep < 60; ++sweep) {
        bool rotated = false;
        for (int i = 0; i < n; ++i) {
            for (int j = i + 1; j < n; ++j) {
                double alpha = 0.0, beta = 0.0, gamma = 0.0;
                for (int k = 0; k < m; ++k) {
                    alpha += a(k, i) * a(k, i);
                    beta += a(k, j) * a(k, j);
                    gamma += a(k, i) * a(k, j);
                }
                if (std::abs(gamma) <= 1e-15 * std::sqrt(alpha * beta) || gamma == 0.0)
                    continue;
                rotated = true;
                const double zeta = (beta - alpha) / (2.0 * gamma);
                const double t = std::copysign(1.0, zeta) /
                                 (std::abs(zeta) + std::sqrt(1.0 + zeta * zeta));
                const double c = 1.0 / std::sqrt(1.0 + t * t);
                const double s = c * t;
                for (int k = 0; k < m; ++k) {
                    const double aki = a(k, i), akj = a(k, j);
                    a(k, i) = c * aki - s * akj;
                    a(k, j) = s * aki + c * akj;
                }
                for (int k = 0; k < n; ++k) {
                    const double vki = v(k, i), vkj = v(k, j);
                    v(k, i) = c * vki - s * vkj;
                    v(k, j) = s * vki + c * vkj;
                }
            }
        }
        if (!rotated) break;
    }

    std::vector<double> sigma(n, 0.0);
    for (int j = 0; j < n; ++j) {
        double s = 0.0;
        for (int k = 0; k < m; ++k) s += a(k, j) * a(k, j);
        sigma[j] = std::sqrt(s);
    }
    std::vector<int> order(n);
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(),
                     [&](int i, int j) { return sigma[i] > sigma[j]; });

    LstsqSolution out;
    out.x.assign(n, 0.0);
    out.singular_values.resize(n);
    const double smax = n > 0 ? sigma[order[0]] : 0.0;
    for (int kk = 0; kk < n; ++kk) {
        const int j = order[kk];
        out.singular_values[kk] = sigma[j];
        if (sigma[j] > rcond * smax && sigma[j] > 0.0) {
            ++out.rank;
            double ub = 0.0;  // (u_j . b) * sigma_j = column_j . b
            for (int k = 0; k < m; ++k) ub += a(k, j) * b[k];
            const double coef = ub / (sigma[j] * sigma[j]);
            for (int k = 0; k < n; ++k) out.x[k] += v(k, j) * coef;
        }
    }
    std::vector<double> r = matvec(a0, out.x);
    for (int k = 0; k < m; ++k) r[k] -= b[k];
    out.residual_inf = norm_inf(r);
    return out;
}

}  // namespace spindrive
