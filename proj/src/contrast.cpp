#include "markica/contrast.hpp"

#include <cmath>
#include <stdexcept>

namespace markica {

double m_arcsinh_value(double x) {
    return std::asinh(x) * (1.0 / 12.0) * std::sqrt(std::abs(x));
}

double m_arcsinh_derivative(double x) {
    const double ax = std::abs(x);
    if (ax < kMArcsinhZeroGuard) return 0.0;
    return std::sqrt(ax) / (12.0 * std::sqrt(x * x + 1.0)) +
           (x * std::asinh(x)) / (24.0 * std::pow(ax, 1.5));
}

ContrastFunction::ContrastFunction(ContrastKind kind, double alpha) : kind_(kind), alpha_(alpha) {
    if (kind_ == ContrastKind::logcosh && !(alpha_ >= 1.0 && alpha_ <= 2.0))
        throw std::invalid_argument("logcosh alpha must lie in [1, 2]");
}

namespace {
ContrastKind kind_from_name(std::string_view name) {
    if (name == "logcosh") return ContrastKind::logcosh;
    if (name == "exp") return ContrastKind::exp;
    if (name == "cube") return ContrastKind::cube;
    if (name == "m_arcsinh") return ContrastKind::m_arcsinh;
    throw std::invalid_argument("Unknown contrast function '" + std::string(name) +
                                "'; should be one of 'logcosh', 'exp', 'cube', 'm_arcsinh'");
}
}  // namespace

ContrastFunction::ContrastFunction(std::string_view name, double alpha)
    : ContrastFunction(kind_from_name(name), alpha) {}

std::string_view ContrastFunction::name() const {
    return kContrastNames[static_cast<std::size_t>(kind_)];
}

double ContrastFunction::g(double u) const {
    switch (kind_) {
        case ContrastKind::logcosh: return std::tanh(alpha_ * u);
        case ContrastKind::exp: return u * std::exp(-0.5 * u * u);
        case ContrastKind::cube: return u * u * u;
        case ContrastKind::m_arcsinh: return m_arcsinh_value(u);
    }
    return 0.0;
}

double ContrastFunction::gprime(double u) const {
    switch (kind_) {
        case ContrastKind::logcosh: {
            const double t = std::tanh(alpha_ * u);
            return alpha_ * (1.0 - t * t);
        }
        case ContrastKind::exp: return (1.0 - u * u) * std::exp(-0.5 * u * u);
        case ContrastKind::cube: return 3.0 * u * u;
        case ContrastKind::m_arcsinh: return m_arcsinh_derivative(u);
    }
    return 0.0;
}

ContrastResult ContrastFunction::eval(const Matrix& u) const {
    ContrastResult out{Matrix(u.rows(), u.cols()), Vector(u.rows(), 0.0)};
    const double inv_cols = 1.0 / static_cast<double>(u.cols());
    for (std::size_t i = 0; i < u.rows(); ++i) {
        auto in = u.row(i);
        auto gi = out.g.row(i);
        double acc = 0.0;
        switch (kind_) {
            case ContrastKind::logcosh:
                for (std::size_t j = 0; j < in.size(); ++j) {
                    const double t = std::tanh(alpha_ * in[j]);
                    gi[j] = t;
                    acc += alpha_ * (1.0 - t * t);
                }
                break;
            case ContrastKind::exp:
                for (std::size_t j = 0; j < in.size(); ++j) {
                    const double x = in[j];
                    const double e = std::exp(-0.5 * x * x);
                    gi[j] = x * e;
                    acc += (1.0 - x * x) * e;
                }
                break;
            case ContrastKind::cube:
                for (std::size_t j = 0; j < in.size(); ++j) {
                    const double x = in[j];
                    gi[j] = x * x * x;
                    acc += 3.0 * x * x;
                }
                break;
            case ContrastKind::m_arcsinh:
                for (std::size_t j = 0; j < in.size(); ++j) {
                    gi[j] = m_arcsinh_value(in[j]);
                    acc += m_arcsinh_derivative(in[j]);
                }
                break;
        }
        out.gprime_mean[i] = acc * inv_cols;
    }
    return out;
}

}  // namespace markica
