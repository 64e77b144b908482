#ifndef MARKICA_FASTICA_HPP
#define MARKICA_FASTICA_HPP

#include "markica/contrast.hpp"
#include "markica/matrix.hpp"
#include "markica/numlin.hpp"

#include <cstdint>
#include <iosfwd>

namespace markica::fastica {

struct FastIcaConfig {
    std::size_t n_components = 1;
    ContrastFunction fun{ContrastKind::logcosh};
    double tol = 1e-4;
    int max_iter = 200;
    std::uint64_t seed = 42;
    bool whiten = true;
};

// Fitted state. Rows of unmixing are orthonormal.
struct FastIcaModel {
    Vector mean;       // cols
    Matrix whitening;  // n_components x cols
    Matrix unmixing;   // n_components x n_components
    int n_iter = 0;
    bool converged = false;
    ContrastFunction fun{ContrastKind::logcosh};
    std::uint64_t seed = 0;

    std::size_t n_components() const { return unmixing.rows(); }
    std::size_t n_features() const { return mean.size(); }
    // unmixing * whitening: maps centered input rows to sources.
    Matrix components() const;
};

struct Whitened {
    Matrix z;     // rows x n_components, (1/rows) Z^T Z = I
    Matrix k;     // n_components x cols
    Vector mean;  // cols
};

// PCA whitening from the covariance eigendecomposition, keeping the top
// n_components eigenpairs. Throws NumericalError when the n_components-th
// eigenvalue falls below floor * (largest eigenvalue).
Whitened whiten(const Matrix& x, std::size_t n_components,
                double floor = numlin::kDefaultEigenFloor);

// (W W^T)^{-1/2} W. Throws NumericalError for rank-deficient W.
Matrix sym_decorrelate(const Matrix& w);

struct IcaResult {
    Matrix w;
    int n_iter = 0;
    bool converged = false;
};

// Parallel fixed-point FastICA on whitened data Z (rows = samples).
// Initial W: n_components^2 normal draws from Rng(seed), row-major, then
// symmetrically decorrelated. Stops when max_i |1 - |<w_i_new, w_i_old>|| < tol.
// Running out of iterations is reported through `converged`, not thrown.
IcaResult ica_parallel(const Matrix& z, const ContrastFunction& fun, double tol, int max_iter,
                       std::uint64_t seed);

FastIcaModel fit(const Matrix& x, const FastIcaConfig& config);

// (X - mean) K^T W^T
Matrix transform(const FastIcaModel& model, const Matrix& x);

// Flat text serialization; values written with 17 significant digits so
// that read_model(write_model(m)) reproduces every double bit-for-bit.
void write_model(std::ostream& out, const FastIcaModel& model);
FastIcaModel read_model(std::istream& in);

}  // namespace markica::fastica

#endif
