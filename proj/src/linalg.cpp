#include "stratakit/linalg.hpp"

#include <algorithm>
#include <cmath>

namespace stratakit {

std::vector<double> solve_linear(Matrix A, std::vector<double> b) {
    const std::size_t n = A.size();
    if (n == 0 || A[0].size() != n || b.size() != n)
        throw InvalidInputError("solve_linear: shape mismatch");
    double scale = 0.0;
    for (const auto& row : A)
        for (double v : row) scale = std::max(scale, std::abs(v));
    for (std::size_t col = 0; col < n; ++col) {
        std::size_t pivot = col;
        for (std::size_t r = col + 1; r < n; ++r)
            if (std::abs(A[r][col]) > std::abs(A[pivot][col])) pivot = r;
        if (std::abs(A[pivot][col]) <= 1e-14 * std::max(scale, 1e-300))
            throw NumericFailureError("solve_linear: numerically singular matrix");
        std::swap(A[pivot], A[col]);
        std::swap(b[pivot], b[col]);
        for (std::size_t r = col + 1; r < n; ++r) {
            double f = A[r][col] / A[col][col];
            if (f == 0.0) continue;
            for (std::size_t c = col; c < n; ++c) A[r][c] -= f * A[col][c];
            b[r] -= f * b[col];
        }
    }
    std::vector<double> x(n, 0.0);
    for (std::size_t i = n; i-- > 0;) {
        double acc = b[i];
        for (std::size_t c = i + 1; c < n; ++c) acc -= A[i][c] * x[c];
        x[i] = acc / A[i][i];
    }
    return x;
}

std::vector<double> singular_values(Matrix A) {
    if (A.empty() || A[0].empty()) return {};
    std::size_t m = A.size(), n = A[0].size();
    if (m < n) {
        // Work on the transpose: the nonzero singular values agree.
        Matrix T(n, std::vector<double>(m));
        for (std::size_t i = 0; i < m; ++i)
            for (std::size_t j = 0; j < n; ++j) T[j][i] = A[i][j];
        A = std::move(T);
        std::swap(m, n);
    }
    // One-sided Jacobi: rotate column pairs until mutually orthogonal.
    auto col_dot = [&](std::size_t p, std::size_t q) {
        double s = 0.0;
        for (std::size_t i = 0; i < m; ++i) s += A[i][p] * A[i][q];
        return s;
    };
    for (int sweep = 0; sweep < 60; ++sweep) {
        double off = 0.0;
        for (std::size_t p = 0; p + 1 < n; ++p) {
            for (std::size_t q = p + 1; q < n; ++q) {
                double app = col_dot(p, p), aqq = col_dot(q, q), apq = col_dot(p, q);
                if (std::abs(apq) <= 1e-15 * std::sqrt(app * aqq) || apq == 0.0) continue;
                off = std::max(off, std::abs(apq) / std::max(std::sqrt(app * aqq), 1e-300));
                double zeta = (aqq - app) / (2.0 * apq);
                double t = (zeta >= 0 ? 1.0 : -1.0) / (std::abs(zeta) + std::sqrt(1.0 + zeta * zeta));
                double c = 1.0 / std::sqrt(1.0 + t * t), s = c * t;
                for (std::size_t i = 0; i < m; ++i) {
                    double ap = A[i][p], aq = A[i][q];
                    A[i][p] = c * ap - s * aq;
                    A[i][q] = s * ap + c * aq;
                }
            }
        }
        if (off < 1e-14) break;
    }
    std::vector<double> sv(n);
    for (std::size_t j = 0; j < n; ++j) sv[j] = std::sqrt(std::max(col_dot(j, j), 0.0));
    std::sort(sv.rbegin(), sv.rend());
    return sv;
}

double min_singular_value_scaled(Matrix A) {
    if (A.empty() || A[0].empty()) return 0.0;
    const std::size_t m = A.size(), n = A[0].size();
    for (std::size_t j = 0; j < n; ++j) {
        double norm = 0.0;
        for (std::size_t i = 0; i < m; ++i) norm += A[i][j] * A[i][j];
        norm = std::sqrt(norm);
        if (norm == 0.0) return 0.0;
        for (std::size_t i = 0; i < m; ++i) A[i][j] /= norm;
    }
    auto sv = singular_values(std::move(A));
    return sv.empty() ? 0.0 : sv.back();
}

} // namespace stratakit
