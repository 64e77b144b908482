#ifndef MARKICA_CONTRAST_HPP
#define MARKICA_CONTRAST_HPP

#include "markica/matrix.hpp"

#include <array>
#include <string>
#include <string_view>

namespace markica {

// m-arcsinh kernel: arcsinh(x) * sqrt(|x|) / 12. Odd, zero at zero.
double m_arcsinh_value(double x);

// Analytic derivative of m_arcsinh_value:
//   sqrt(|x|) / (12 sqrt(x^2 + 1)) + x arcsinh(x) / (24 |x|^{3/2})
// The second term is 0/0 at the origin; its limit (and that of the whole
// expression) is 0, which is returned for |x| < kMArcsinhZeroGuard.
inline constexpr double kMArcsinhZeroGuard = 1e-12;
double m_arcsinh_derivative(double x);

enum class ContrastKind { logcosh, exp, cube, m_arcsinh };

inline constexpr std::array<std::string_view, 4> kContrastNames = {"logcosh", "exp", "cube",
                                                                   "m_arcsinh"};

struct ContrastResult {
    Matrix g;           // g(u) elementwise
    Vector gprime_mean; // per-row mean of g'(u)
};

// A G-function nonlinearity from the closed registry. Construction by name
// rejects anything outside kContrastNames.
class ContrastFunction {
public:
    explicit ContrastFunction(ContrastKind kind = ContrastKind::logcosh, double alpha = 1.0);
    explicit ContrastFunction(std::string_view name, double alpha = 1.0);

    ContrastKind kind() const { return kind_; }
    double alpha() const { return alpha_; }
    std::string_view name() const;

    // Pointwise g and g' for a single value.
    double g(double u) const;
    double gprime(double u) const;

    // g(U) and the row means of g'(U) in one traversal.
    ContrastResult eval(const Matrix& u) const;

private:
    ContrastKind kind_;
    double alpha_;
};

}  // namespace markica

#endif
