#pragma once

// Minimal dense matrix/vector helpers used by the network and regression
// code. Row-major storage, no expression templates, no aliasing tricks.

#include <cmath>
#include <cstddef>
#include <stdexcept>
#include <vector>

namespace gin {

struct Mat {
    int rows = 0;
    int cols = 0;
    std::vector<double> a;

    Mat() = default;
    Mat(int r, int c, double fill = 0.0) : rows(r), cols(c), a(static_cast<std::size_t>(r) * c, fill) {}

    double& operator()(int i, int j) { return a[static_cast<std::size_t>(i) * cols + j]; }
    double operator()(int i, int j) const { return a[static_cast<std::size_t>(i) * cols + j]; }

    std::size_t size() const { return a.size(); }
};

using Vec = std::vector<double>;

/// y += M x
inline void matvec_acc(const Mat& m, const Vec& x, Vec& y) {
    for (int i = 0; i < m.rows; ++i) {
        double s = 0.0;
        const double* row = &m.a[static_cast<std::size_t>(i) * m.cols];
        for (int j = 0; j < m.cols; ++j) s += row[j] * x[j];
        y[i] += s;
    }
}

/// y += M^T x
inline void matTvec_acc(const Mat& m, const Vec& x, Vec& y) {
    for (int i = 0; i < m.rows; ++i) {
        const double xi = x[i];
        if (xi == 0.0) continue;
        const double* row = &m.a[static_cast<std::size_t>(i) * m.cols];
        for (int j = 0; j < m.cols; ++j) y[j] += row[j] * xi;
    }
}

/// M += alpha * u v^T
inline void outer_acc(Mat& m, const Vec& u, const Vec& v, double alpha = 1.0) {
    for (int i = 0; i < m.rows; ++i) {
        double* row = &m.a[static_cast<std::size_t>(i) * m.cols];
        const double ui = alpha * u[i];
        if (ui == 0.0) continue;
        for (int j = 0; j < m.cols; ++j) row[j] += ui * v[j];
    }
}

/// Cyclic Jacobi eigendecomposition of a symmetric matrix. Returns
/// eigenvalues in `evals` and orthonormal eigenvectors as columns of `evecs`.
inline void jacobi_eigen(const Mat& sym, Vec& evals, Mat& evecs, int max_sweeps = 100) {
    const int n = sym.rows;
    if (sym.cols != n) throw std::invalid_argument("jacobi_eigen: matrix not square");
    Mat a = sym;
    evecs = Mat(n, n);
    for (int i = 0; i < n; ++i) evecs(i, i) = 1.0;

    for (int sweep = 0; sweep < max_sweeps; ++sweep) {
        double off = 0.0;
        for (int p = 0; p < n; ++p)
            for (int q = p + 1; q < n; ++q) off += a(p, q) * a(p, q);
        if (off < 1e-26) break;
        for (int p = 0; p < n; ++p) {
            for (int q = p + 1; q < n; ++q) {
                const double apq = a(p, q);
                if (std::abs(apq) < 1e-300) continue;
                const double theta = (a(q, q) - a(p, p)) / (2.0 * apq);
                const double t = (theta >= 0 ? 1.0 : -1.0) /
                                 (std::abs(theta) + std::sqrt(theta * theta + 1.0));
                const double c = 1.0 / std::sqrt(t * t + 1.0);
                const double s = t * c;
                for (int k = 0; k < n; ++k) {
                    const double akp = a(k, p), akq = a(k, q);
                    a(k, p) = c * akp - s * akq;
                    a(k, q) = s * akp + c * akq;
                }
                for (int k = 0; k < n; ++k) {
                    const double apk = a(p, k), aqk = a(q, k);
                    a(p, k) = c * apk - s * aqk;
                    a(q, k) = s * apk + c * aqk;
                }
                for (int k = 0; k < n; ++k) {
                    const double vkp = evecs(k, p), vkq = evecs(k, q);
                    evecs(k, p) = c * vkp - s * vkq;
                    evecs(k, q) = s * vkp + c * vkq;
                }
            }
        }
    }
    evals.assign(n, 0.0);
    for (int i = 0; i < n; ++i) evals[i] = a(i, i);
}

/// Least-squares solve of (X^T X) beta = X^T y through the eigensystem,
/// dropping near-null directions (Moore-Penrose style). Sets
/// `rank_deficient` when directions were dropped.
inline Vec pinv_solve(const Mat& xtx, const Vec& xty, bool& rank_deficient) {
    const int n = xtx.rows;
    Vec evals;
    Mat q;
    jacobi_eigen(xtx, evals, q);
    double lmax = 0.0;
    for (double l : evals) lmax = std::max(lmax, std::abs(l));
    const double tol = lmax * n * 1e-13;
    rank_deficient = false;
    Vec beta(n, 0.0);
    for (int k = 0; k < n; ++k) {
        if (std::abs(evals[k]) <= tol) {
            rank_deficient = true;
            continue;
        }
        double proj = 0.0;
        for (int i = 0; i < n; ++i) proj += q(i, k) * xty[i];
        proj /= evals[k];
        for (int i = 0; i < n; ++i) beta[i] += q(i, k) * proj;
    }
    return beta;
}

}  // namespace gin
