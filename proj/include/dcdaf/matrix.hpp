#pragma once

#include <cmath>
#include <cstddef>
#include <stdexcept>
#include <vector>

namespace dcdaf {

// Dense square matrix, row-major. The adaptive recursions keep it symmetric,
// so row l doubles as column l (contiguous access for the DCD inner loop).
struct Matrix {
    int n = 0;
    std::vector<double> a;

    Matrix() = default;
    explicit Matrix(int size) : n(size), a(static_cast<size_t>(size) * size, 0.0) {}

    static Matrix identity(int size, double scale = 1.0) {
        Matrix m(size);
        for (int i = 0; i < size; ++i) m(i, i) = scale;
        return m;
    }

    double& operator()(int i, int j) { return a[static_cast<size_t>(i) * n + j]; }
    double operator()(int i, int j) const { return a[static_cast<size_t>(i) * n + j]; }

    const double* row(int i) const { return &a[static_cast<size_t>(i) * n]; }
    double* row(int i) { return &a[static_cast<size_t>(i) * n]; }
};

inline double dot(const std::vector<double>& x, const std::vector<double>& y) {
    double s = 0.0;
    for (size_t i = 0; i < x.size(); ++i) s += x[i] * y[i];
    return s;
}

inline std::vector<double> matvec(const Matrix& m, const std::vector<double>& x) {
    if (static_cast<int>(x.size()) != m.n) throw std::invalid_argument("matvec: dimension mismatch");
    std::vector<double> y(x.size(), 0.0);
    for (int i = 0; i < m.n; ++i) {
        const double* r = m.row(i);
        double s = 0.0;
        for (int j = 0; j < m.n; ++j) s += r[j] * x[j];
        y[static_cast<size_t>(i)] = s;
    }
    return y;
}

inline double max_abs(const std::vector<double>& x) {
    double m = 0.0;
    for (double v : x) m = std::max(m, std::fabs(v));
    return m;
}

inline double max_abs_diff(const std::vector<double>& x, const std::vector<double>& y) {
    double m = 0.0;
    for (size_t i = 0; i < x.size(); ++i) m = std::max(m, std::fabs(x[i] - y[i]));
    return m;
}

inline double max_abs_diff(const Matrix& x, const Matrix& y) { return max_abs_diff(x.a, y.a); }

inline double max_asymmetry(const Matrix& m) {
    double worst = 0.0;
    for (int i = 0; i < m.n; ++i)
        for (int j = i + 1; j < m.n; ++j) worst = std::max(worst, std::fabs(m(i, j) - m(j, i)));
    return worst;
}

inline bool all_finite(const std::vector<double>& x) {
    for (double v : x)
        if (!std::isfinite(v)) return false;
    return true;
}

}  // namespace dcdaf
