#include "lqes/linalg.hpp"

#include <cmath>
#include <stdexcept>

namespace lqes {

Matrix Matrix::identity(std::size_t n) {
    Matrix m(n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
    return m;
}

bool Matrix::symmetric(double tol) const {
    for (std::size_t i = 0; i < n_; ++i)
        for (std::size_t j = i + 1; j < n_; ++j)
            if (std::fabs((*this)(i, j) - (*this)(j, i)) > tol) return false;
    return true;
}

Matrix cholesky_lower(const Matrix& m) {
    std::size_t n = m.dim();
    if (n == 0) throw std::invalid_argument("cholesky: empty matrix");
    if (!m.symmetric()) throw std::invalid_argument("cholesky: matrix not symmetric");
    Matrix l(n);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j <= i; ++j) {
            double s = m(i, j);
            for (std::size_t k = 0; k < j; ++k) s -= l(i, k) * l(j, k);
            if (i == j) {
                if (s <= 0.0)
                    throw std::invalid_argument("cholesky: matrix not positive definite");
                l(i, i) = std::sqrt(s);
            } else {
                l(i, j) = s / l(j, j);
            }
        }
    }
    return l;
}

double quadratic_form(const Matrix& m, const std::vector<double>& beta) {
    std::size_t n = m.dim();
    if (beta.size() != n) throw std::invalid_argument("quadratic_form: size mismatch");
    double q = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        double row = 0.0;
        for (std::size_t j = 0; j < n; ++j) row += m(i, j) * beta[j];
        q += beta[i] * row;
    }
    return q;
}

}  // namespace lqes
