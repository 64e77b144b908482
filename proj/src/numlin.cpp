#include "markica/numlin.hpp"

#include "markica/errors.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <stdexcept>

namespace markica::numlin {

Centered center_columns(const Matrix& x) {
    const std::size_t n = x.rows();
    const std::size_t d = x.cols();
    Vector mean(d, 0.0);
    for (std::size_t i = 0; i < n; ++i) {
        auto r = x.row(i);
        for (std::size_t j = 0; j < d; ++j) mean[j] += r[j];
    }
    for (double& m : mean) m /= static_cast<double>(n);

    Matrix xc = x;
    for (std::size_t i = 0; i < n; ++i) {
        auto r = xc.row(i);
        for (std::size_t j = 0; j < d; ++j) r[j] -= mean[j];
    }
    return {std::move(xc), std::move(mean)};
}

Matrix covariance(const Matrix& xc) {
    if (xc.rows() < 2) throw std::invalid_argument("covariance: need at least 2 rows");
    Matrix c = matmul_at(xc, xc);
    const double inv_n = 1.0 / static_cast<double>(xc.rows());
    for (std::size_t i = 0; i < c.rows(); ++i) {
        for (std::size_t j = i; j < c.cols(); ++j) {
            // exact symmetry: both halves come from the same accumulated value
            const double v = c(i, j) * inv_n;
            c(i, j) = v;
            c(j, i) = v;
        }
    }
    return c;
}

namespace {

void require_symmetric(const Matrix& s) {
    if (s.rows() != s.cols()) throw std::invalid_argument("sym_eig: matrix is not square");
    const double tol = 1e-9 * std::max(1.0, norm_inf(s));
    for (std::size_t i = 0; i < s.rows(); ++i)
        for (std::size_t j = i + 1; j < s.cols(); ++j)
            if (std::abs(s(i, j) - s(j, i)) > tol)
                throw std::invalid_argument("sym_eig: matrix is not symmetric");
}

// Applies the rotation (c, s) with tau = s / (1 + c) to the pair (g, h).
inline void rotate(double& g, double& h, double s, double tau) {
    const double gv = g;
    const double hv = h;
    g = gv - s * (hv + gv * tau);
    h = hv + s * (gv - hv * tau);
}

}  // namespace

EigenDecomposition sym_eig(const Matrix& s) {
    require_symmetric(s);
    const std::size_t n = s.rows();

    // Work on the symmetrised input so tiny asymmetries do not bias the result.
    Matrix a(n, n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) a(i, j) = 0.5 * (s(i, j) + s(j, i));
    Matrix v = Matrix::identity(n);

    constexpr double eps = std::numeric_limits<double>::epsilon();
    bool converged = n == 1;
    for (int sweep = 0; sweep < kJacobiMaxSweeps && !converged; ++sweep) {
        std::size_t rotations = 0;
        for (std::size_t p = 0; p + 1 < n; ++p) {
            for (std::size_t q = p + 1; q < n; ++q) {
                const double apq = a(p, q);
                // Relative threshold keeps small eigenvalues of graded
                // matrices accurate.
                if (std::abs(apq) <= eps * std::sqrt(std::abs(a(p, p) * a(q, q))) ||
                    apq == 0.0)
                    continue;
                ++rotations;

                const double theta = (a(q, q) - a(p, p)) / (2.0 * apq);
                double t;
                if (std::abs(theta) > 1e150) {
                    t = 0.5 / theta;
                } else {
                    t = 1.0 / (std::abs(theta) + std::sqrt(theta * theta + 1.0));
                    if (theta < 0.0) t = -t;
                }
                const double c = 1.0 / std::sqrt(t * t + 1.0);
                const double sn = t * c;
                const double tau = sn / (1.0 + c);

                a(p, p) -= t * apq;
                a(q, q) += t * apq;
                a(p, q) = 0.0;
                a(q, p) = 0.0;
                for (std::size_t r = 0; r < n; ++r) {
                    if (r == p || r == q) continue;
                    rotate(a(r, p), a(r, q), sn, tau);
                    a(p, r) = a(r, p);
                    a(q, r) = a(r, q);
                }
                for (std::size_t r = 0; r < n; ++r) rotate(v(r, p), v(r, q), sn, tau);
            }
        }
        converged = rotations == 0;
    }
    if (!converged) throw NumericalError("sym_eig: Jacobi sweeps did not converge");

    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t i, std::size_t j) { return a(i, i) > a(j, j); });

    EigenDecomposition out{Vector(n), Matrix(n, n)};
    for (std::size_t k = 0; k < n; ++k) {
        out.values[k] = a(order[k], order[k]);
        for (std::size_t r = 0; r < n; ++r) out.vectors(r, k) = v(r, order[k]);
    }
    return out;
}

Matrix inv_sqrt_sym(const Matrix& s, double floor) {
    const auto eig = sym_eig(s);
    const std::size_t n = s.rows();
    Vector scale(n);
    for (std::size_t k = 0; k < n; ++k) scale[k] = 1.0 / std::sqrt(std::max(eig.values[k], floor));

    Matrix out(n, n);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = i; j < n; ++j) {
            double acc = 0.0;
            for (std::size_t k = 0; k < n; ++k)
                acc += eig.vectors(i, k) * scale[k] * eig.vectors(j, k);
            out(i, j) = acc;
            out(j, i) = acc;
        }
    }
    return out;
}

Matrix matmul(const Matrix& a, const Matrix& b) {
    if (a.cols() != b.rows())
        throw std::invalid_argument("matmul: inner dimensions differ (" + std::to_string(a.cols()) +
                                    " vs " + std::to_string(b.rows()) + ")");
    Matrix c(a.rows(), b.cols());
    for (std::size_t i = 0; i < a.rows(); ++i) {
        auto ci = c.row(i);
        for (std::size_t k = 0; k < a.cols(); ++k) {
            const double aik = a(i, k);
            if (aik == 0.0) continue;
            auto bk = b.row(k);
            for (std::size_t j = 0; j < b.cols(); ++j) ci[j] += aik * bk[j];
        }
    }
    return c;
}

Matrix matmul_bt(const Matrix& a, const Matrix& b) {
    if (a.cols() != b.cols()) throw std::invalid_argument("matmul_bt: column counts differ");
    Matrix c(a.rows(), b.rows());
    for (std::size_t i = 0; i < a.rows(); ++i) {
        auto ai = a.row(i);
        for (std::size_t j = 0; j < b.rows(); ++j) {
            auto bj = b.row(j);
            double acc = 0.0;
            for (std::size_t k = 0; k < a.cols(); ++k) acc += ai[k] * bj[k];
            c(i, j) = acc;
        }
    }
    return c;
}

Matrix matmul_at(const Matrix& a, const Matrix& b) {
    if (a.rows() != b.rows()) throw std::invalid_argument("matmul_at: row counts differ");
    Matrix c(a.cols(), b.cols());
    for (std::size_t k = 0; k < a.rows(); ++k) {
        auto ak = a.row(k);
        auto bk = b.row(k);
        for (std::size_t i = 0; i < a.cols(); ++i) {
            const double aki = ak[i];
            if (aki == 0.0) continue;
            auto ci = c.row(i);
            for (std::size_t j = 0; j < b.cols(); ++j) ci[j] += aki * bk[j];
        }
    }
    return c;
}

}  // namespace markica::numlin
