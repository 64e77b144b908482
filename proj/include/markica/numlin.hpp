#ifndef MARKICA_NUMLIN_HPP
#define MARKICA_NUMLIN_HPP

#include "markica/matrix.hpp"

namespace markica::numlin {

inline constexpr double kDefaultEigenFloor = 1e-12;
inline constexpr int kJacobiMaxSweeps = 100;

struct Centered {
    Matrix data;
    Vector mean;
};

struct EigenDecomposition {
    Vector values;   // descending
    Matrix vectors;  // column i pairs with values[i]
};

Centered center_columns(const Matrix& x);

// X^T X / rows. Rows must be >= 2.
Matrix covariance(const Matrix& xc);

// Cyclic Jacobi. Throws std::invalid_argument for asymmetric input (tolerance
// 1e-9 relative to max(1, |S|_inf)) and NumericalError if the off-diagonal
// mass has not vanished after kJacobiMaxSweeps sweeps.
EigenDecomposition sym_eig(const Matrix& s);

// V diag(1 / sqrt(max(lambda_i, floor))) V^T
Matrix inv_sqrt_sym(const Matrix& s, double floor = kDefaultEigenFloor);

Matrix matmul(const Matrix& a, const Matrix& b);
// a * b^T without materialising the transpose.
Matrix matmul_bt(const Matrix& a, const Matrix& b);
// a^T * b
Matrix matmul_at(const Matrix& a, const Matrix& b);

}  // namespace markica::numlin

#endif
