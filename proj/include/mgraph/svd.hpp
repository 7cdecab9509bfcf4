#pragma once

#include <vector>

namespace mgraph {

struct Matrix {
    int rows = 0;
    int cols = 0;
    std::vector<double> data;  // row-major

    Matrix() = default;
    Matrix(int r, int c) : rows(r), cols(c), data(static_cast<size_t>(r) * static_cast<size_t>(c), 0.0) {}
    double& at(int i, int j) { return data[static_cast<size_t>(i) * static_cast<size_t>(cols) + static_cast<size_t>(j)]; }
    double at(int i, int j) const {
        return data[static_cast<size_t>(i) * static_cast<size_t>(cols) + static_cast<size_t>(j)];
    }
};

// All singular values (descending) by one-sided Jacobi on the columns.
// Convergence: off-diagonal Frobenius mass of the implicit Gram matrix below
// tol times its total mass.
std::vector<double> jacobiSingularValues(const Matrix& a, double tol = 1e-12, int maxSweeps = 100);

// Symmetric eigenvalues (descending) by cyclic Jacobi; small matrices.
std::vector<double> symmetricEigenvalues(Matrix s, int maxSweeps = 100);

// Top `count` singular values. Uses one-sided Jacobi up to jacobiLimit
// columns and seeded subspace iteration on A^T A above it; both paths are
// deterministic.
std::vector<double> topSingularValues(const Matrix& a, int count, double tol = 1e-11, int jacobiLimit = 320);

double spectralNorm(const Matrix& a);

}  // namespace mgraph
