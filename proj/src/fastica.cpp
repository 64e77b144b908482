#include "markica/fastica.hpp"

#include "markica/errors.hpp"
#include "markica/rng.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace markica::fastica {

using numlin::matmul;
using numlin::matmul_bt;

Matrix FastIcaModel::components() const { return matmul(unmixing, whitening); }

Whitened whiten(const Matrix& x, std::size_t n_components, double floor) {
    if (x.rows() < 2) throw std::invalid_argument("whiten: need at least 2 rows");
    if (n_components < 1 || n_components > std::min(x.rows(), x.cols()))
        throw std::invalid_argument("whiten: n_components must lie in [1, min(rows, cols)]");
    if (!x.all_finite()) throw std::invalid_argument("whiten: input contains non-finite values");

    auto [xc, mean] = numlin::center_columns(x);
    const auto eig = numlin::sym_eig(numlin::covariance(xc));

    const double top = eig.values.front();
    const double kth = eig.values[n_components - 1];
    if (!(top > 0.0) || kth < floor * top)
        throw NumericalError("whiten: covariance rank is below n_components=" +
                             std::to_string(n_components) + " (eigenvalue " +
                             std::to_string(kth) + ")");

    Matrix k(n_components, x.cols());
    for (std::size_t i = 0; i < n_components; ++i) {
        const double s = 1.0 / std::sqrt(eig.values[i]);
        for (std::size_t j = 0; j < x.cols(); ++j) k(i, j) = s * eig.vectors(j, i);
    }
    Matrix z = matmul_bt(xc, k);
    return {std::move(z), std::move(k), std::move(mean)};
}

Matrix sym_decorrelate(const Matrix& w) {
    if (w.rows() != w.cols()) throw std::invalid_argument("sym_decorrelate: W must be square");
    const auto eig = numlin::sym_eig(matmul_bt(w, w));
    const double top = eig.values.front();
    if (!(top > 0.0) || eig.values.back() <= numlin::kDefaultEigenFloor * top)
        throw NumericalError("sym_decorrelate: W is rank deficient");

    const std::size_t n = w.rows();
    Matrix root(n, n);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = i; j < n; ++j) {
            double acc = 0.0;
            for (std::size_t k = 0; k < n; ++k)
                acc += eig.vectors(i, k) * eig.vectors(j, k) / std::sqrt(eig.values[k]);
            root(i, j) = acc;
            root(j, i) = acc;
        }
    }
    return matmul(root, w);
}

IcaResult ica_parallel(const Matrix& z, const ContrastFunction& fun, double tol, int max_iter,
                       std::uint64_t seed) {
    if (!(tol > 0.0)) throw std::invalid_argument("ica_parallel: tol must be > 0");
    if (max_iter < 1) throw std::invalid_argument("ica_parallel: max_iter must be >= 1");

    const std::size_t k = z.cols();
    const double inv_n = 1.0 / static_cast<double>(z.rows());

    Rng rng(seed);
    Matrix w0(k, k);
    for (double& v : w0.values()) v = rng.normal();
    IcaResult res{sym_decorrelate(w0), 0, false};

    for (int it = 0; it < max_iter; ++it) {
        const auto ev = fun.eval(matmul_bt(res.w, z));  // k x n
        Matrix next = matmul(ev.g, z);                  // k x k
        for (std::size_t i = 0; i < k; ++i) {
            auto row = next.row(i);
            auto wi = res.w.row(i);
            for (std::size_t j = 0; j < k; ++j) row[j] = row[j] * inv_n - ev.gprime_mean[i] * wi[j];
        }
        next = sym_decorrelate(next);

        double lim = 0.0;
        for (std::size_t i = 0; i < k; ++i) {
            auto a = next.row(i);
            auto b = res.w.row(i);
            double dot = 0.0;
            for (std::size_t j = 0; j < k; ++j) dot += a[j] * b[j];
            lim = std::max(lim, std::abs(std::abs(dot) - 1.0));
        }
        res.w = std::move(next);
        res.n_iter = it + 1;
        if (lim < tol) {
            res.converged = true;
            break;
        }
    }
    return res;
}

FastIcaModel fit(const Matrix& x, const FastIcaConfig& config) {
    if (config.n_components < 1 || config.n_components > std::min(x.rows(), x.cols()))
        throw std::invalid_argument("fit: n_components must lie in [1, min(rows, cols)]");

    FastIcaModel model;
    model.fun = config.fun;
    model.seed = config.seed;

    Matrix z;
    if (config.whiten) {
        auto wh = whiten(x, config.n_components);
        z = std::move(wh.z);
        model.whitening = std::move(wh.k);
        model.mean = std::move(wh.mean);
    } else {
        // Input is taken as already white: no centering, identity whitening.
        if (config.n_components != x.cols())
            throw std::invalid_argument("fit: without whitening n_components must equal cols");
        z = x;
        model.whitening = Matrix::identity(x.cols());
        model.mean.assign(x.cols(), 0.0);
    }

    auto ica = ica_parallel(z, config.fun, config.tol, config.max_iter, config.seed);
    model.unmixing = std::move(ica.w);
    model.n_iter = ica.n_iter;
    model.converged = ica.converged;
    return model;
}

Matrix transform(const FastIcaModel& model, const Matrix& x) {
    if (x.cols() != model.n_features())
        throw std::invalid_argument("transform: expected " + std::to_string(model.n_features()) +
                                    " columns, got " + std::to_string(x.cols()));
    Matrix xc = x;
    for (std::size_t i = 0; i < xc.rows(); ++i) {
        auto r = xc.row(i);
        for (std::size_t j = 0; j < r.size(); ++j) r[j] -= model.mean[j];
    }
    return matmul_bt(xc, model.components());
}

}  // namespace markica::fastica
