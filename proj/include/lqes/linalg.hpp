#pragma once

#include <cstddef>
#include <vector>

// Just enough dense linear algebra for small dispersion matrices.

namespace lqes {

class Matrix {
public:
    Matrix() = default;
    explicit Matrix(std::size_t n) : n_(n), a_(n * n, 0.0) {}

    static Matrix identity(std::size_t n);

    double& operator()(std::size_t i, std::size_t j) { return a_[i * n_ + j]; }
    double operator()(std::size_t i, std::size_t j) const { return a_[i * n_ + j]; }
    std::size_t dim() const { return n_; }

    bool symmetric(double tol = 1e-12) const;

private:
    std::size_t n_ = 0;
    std::vector<double> a_;
};

// Lower-triangular Cholesky factor; throws std::invalid_argument if the
// matrix is not symmetric positive definite.
Matrix cholesky_lower(const Matrix& m);

// beta' M beta
double quadratic_form(const Matrix& m, const std::vector<double>& beta);

}  // namespace lqes
