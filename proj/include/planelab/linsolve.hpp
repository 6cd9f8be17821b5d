#pragma once

#include <array>
#include <cmath>
#include <stdexcept>
#include <vector>

namespace planelab {

// Small dense n x n solver (n <= 16), Gaussian elimination with partial
// pivoting. Everything in this project that is "linear in the unknown" funnels
// through here.
class Mat {
public:
    Mat(int rows, int cols) : r_(rows), c_(cols), a_(static_cast<size_t>(rows * cols), 0.0) {}

    double& operator()(int i, int j) { return a_[static_cast<size_t>(i * c_ + j)]; }
    double operator()(int i, int j) const { return a_[static_cast<size_t>(i * c_ + j)]; }
    int rows() const { return r_; }
    int cols() const { return c_; }

private:
    int r_, c_;
    std::vector<double> a_;
};

// Solve A x = b. Throws std::runtime_error when the pivot collapses.
inline std::vector<double> solve_linear(Mat a, std::vector<double> b) {
    const int n = a.rows();
    for (int k = 0; k < n; ++k) {
        int piv = k;
        for (int i = k + 1; i < n; ++i)
            if (std::fabs(a(i, k)) > std::fabs(a(piv, k))) piv = i;
        if (std::fabs(a(piv, k)) < 1e-14)
            throw std::runtime_error("solve_linear: singular system");
        if (piv != k) {
            for (int j = k; j < n; ++j) std::swap(a(piv, j), a(k, j));
            std::swap(b[static_cast<size_t>(piv)], b[static_cast<size_t>(k)]);
        }
        for (int i = k + 1; i < n; ++i) {
            double f = a(i, k) / a(k, k);
            if (f == 0.0) continue;
            for (int j = k; j < n; ++j) a(i, j) -= f * a(k, j);
            b[static_cast<size_t>(i)] -= f * b[static_cast<size_t>(k)];
        }
    }
    std::vector<double> x(static_cast<size_t>(n), 0.0);
    for (int i = n - 1; i >= 0; --i) {
        double s = b[static_cast<size_t>(i)];
        for (int j = i + 1; j < n; ++j) s -= a(i, j) * x[static_cast<size_t>(j)];
        x[static_cast<size_t>(i)] = s / a(i, i);
    }
    return x;
}

// Row echelon rank with a relative threshold; used by the dimension probes.
inline int matrix_rank(Mat a, double tol) {
    const int m = a.rows(), n = a.cols();
    double scale = 0.0;
    for (int i = 0; i < m; ++i)
        for (int j = 0; j < n; ++j) scale = std::max(scale, std::fabs(a(i, j)));
    if (scale == 0.0) return 0;
    const double thresh = tol * scale;
    int rank = 0;
    int row = 0;
    for (int col = 0; col < n && row < m; ++col) {
        int piv = row;
        for (int i = row + 1; i < m; ++i)
            if (std::fabs(a(i, col)) > std::fabs(a(piv, col))) piv = i;
        if (std::fabs(a(piv, col)) <= thresh) continue;
        if (piv != row)
            for (int j = 0; j < n; ++j) std::swap(a(piv, j), a(row, j));
        for (int i = 0; i < m; ++i) {
            if (i == row) continue;
            double f = a(i, col) / a(row, col);
            if (f == 0.0) continue;
            for (int j = 0; j < n; ++j) a(i, j) -= f * a(row, j);
        }
        ++row;
        ++rank;
    }
    return rank;
}

// General affine solve A z = q returning one particular solution plus a basis
// of the null space (full pivoting). Used to sample points of an implicitly
// defined set with free directions.
struct AffineSolution {
    bool consistent = false;
    std::vector<double> particular;             // size n
    std::vector<std::vector<double>> nullspace; // each size n
};

inline AffineSolution solve_affine(Mat a, std::vector<double> q, double tol = 1e-10) {
    const int m = a.rows(), n = a.cols();
    double scale = 0.0;
    for (int i = 0; i < m; ++i)
        for (int j = 0; j < n; ++j) scale = std::max(scale, std::fabs(a(i, j)));
    const double thresh = tol * std::max(scale, 1.0);

    std::vector<int> pivot_col;
    int row = 0;
    for (int col = 0; col < n && row < m; ++col) {
        int piv = row;
        for (int i = row + 1; i < m; ++i)
            if (std::fabs(a(i, col)) > std::fabs(a(piv, col))) piv = i;
        if (std::fabs(a(piv, col)) <= thresh) continue;
        if (piv != row) {
            for (int j = 0; j < n; ++j) std::swap(a(piv, j), a(row, j));
            std::swap(q[static_cast<size_t>(piv)], q[static_cast<size_t>(row)]);
        }
        double d = a(row, col);
        for (int j = 0; j < n; ++j) a(row, j) /= d;
        q[static_cast<size_t>(row)] /= d;
        for (int i = 0; i < m; ++i) {
            if (i == row) continue;
            double f = a(i, col);
            if (f == 0.0) continue;
            for (int j = 0; j < n; ++j) a(i, j) -= f * a(row, j);
            q[static_cast<size_t>(i)] -= f * q[static_cast<size_t>(row)];
        }
        pivot_col.push_back(col);
        ++row;
    }
    AffineSolution out;
    for (int i = row; i < m; ++i)
        if (std::fabs(q[static_cast<size_t>(i)]) > 1e4 * thresh) return out; // inconsistent
    out.consistent = true;
    out.particular.assign(static_cast<size_t>(n), 0.0);
    std::vector<bool> is_pivot(static_cast<size_t>(n), false);
    for (int r2 = 0; r2 < static_cast<int>(pivot_col.size()); ++r2) {
        is_pivot[static_cast<size_t>(pivot_col[static_cast<size_t>(r2)])] = true;
        out.particular[static_cast<size_t>(pivot_col[static_cast<size_t>(r2)])] = q[static_cast<size_t>(r2)];
    }
    for (int col = 0; col < n; ++col) {
        if (is_pivot[static_cast<size_t>(col)]) continue;
        std::vector<double> dir(static_cast<size_t>(n), 0.0);
        dir[static_cast<size_t>(col)] = 1.0;
        for (int r2 = 0; r2 < static_cast<int>(pivot_col.size()); ++r2)
            dir[static_cast<size_t>(pivot_col[static_cast<size_t>(r2)])] = -a(r2, col);
        out.nullspace.push_back(std::move(dir));
    }
    return out;
}

} // namespace planelab
