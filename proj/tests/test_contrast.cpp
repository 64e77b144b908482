#include <doctest.h>

#include "markica/contrast.hpp"
#include "mpfr_oracle.hpp"

#include <cmath>
#include <random>
#include <stdexcept>

using namespace markica;

// Frozen from a 40-digit mpmath evaluation of the kernel formulas at x = 1.
constexpr double kValueAt1 = 0.07344779891829525;
constexpr double kDerivAt1 = 0.09564946455802659;

TEST_CASE("m_arcsinh_value") {
    CHECK(m_arcsinh_value(0.0) == 0.0);
    CHECK(m_arcsinh_value(1.0) == doctest::Approx(kValueAt1).epsilon(1e-15));
    CHECK(m_arcsinh_value(-1.0) == -m_arcsinh_value(1.0));
    CHECK(std::abs(m_arcsinh_value(1.0) - oracle::m_arcsinh_value(1.0)) < 1e-15);
    CHECK(std::abs(std::asinh(1.0) / 12.0 - kValueAt1) < 1e-16);
}

TEST_CASE("m_arcsinh_derivative") {
    CHECK(m_arcsinh_derivative(0.0) == 0.0);
    CHECK(m_arcsinh_derivative(1.0) == doctest::Approx(kDerivAt1).epsilon(1e-15));
    CHECK(m_arcsinh_derivative(-1.0) == m_arcsinh_derivative(1.0));
    CHECK(std::abs(m_arcsinh_derivative(1.0) - oracle::m_arcsinh_derivative(1.0)) < 1e-15);
    CHECK(std::abs(1.0 / (12.0 * std::sqrt(2.0)) + std::asinh(1.0) / 24.0 - kDerivAt1) < 1e-16);

    SUBCASE("zero guard returns the analytic limit") {
        CHECK(m_arcsinh_derivative(1e-13) == 0.0);
        CHECK(m_arcsinh_derivative(-1e-300) == 0.0);
        // just above the guard the expression is tiny and finite
        const double d = m_arcsinh_derivative(1e-11);
        CHECK(std::isfinite(d));
        CHECK(d < 1e-5);
    }
}

TEST_CASE("m_arcsinh derivative matches MPFR across magnitudes") {
    for (double x : {1e-9, 1e-6, 1e-3, 0.1, 0.5, 2.0, 7.5, 40.0, 1e3, 1e6}) {
        for (double s : {1.0, -1.0}) {
            const double ref = oracle::m_arcsinh_derivative(s * x);
            CHECK(m_arcsinh_derivative(s * x) == doctest::Approx(ref).epsilon(1e-13));
            CHECK(m_arcsinh_value(s * x) == doctest::Approx(oracle::m_arcsinh_value(s * x)).epsilon(1e-13));
        }
    }
}

TEST_CASE("derivative agrees with central differences of the value") {
    const double h = 1e-6;
    int checked = 0;
    for (int i = 0; i <= 2000; ++i) {
        const double x = -5.0 + 10.0 * i / 2000.0;
        if (std::abs(x) < 1e-3) continue;
        const double fd = (m_arcsinh_value(x + h) - m_arcsinh_value(x - h)) / (2 * h);
        const double an = m_arcsinh_derivative(x);
        CHECK(std::abs(fd - an) / std::abs(an) < 1e-5);
        ++checked;
    }
    CHECK(checked == 2000);
}

TEST_CASE("kernel symmetry and sign") {
    std::mt19937_64 gen(11);
    std::uniform_real_distribution<double> u(-50.0, 50.0);
    for (int i = 0; i < 10000; ++i) {
        const double x = u(gen);
        REQUIRE(m_arcsinh_value(-x) == -m_arcsinh_value(x));
        REQUIRE(m_arcsinh_derivative(-x) == m_arcsinh_derivative(x));
        REQUIRE(m_arcsinh_derivative(x) >= 0.0);
    }
}

TEST_CASE("registry names") {
    for (auto name : kContrastNames) CHECK(ContrastFunction(name).name() == name);
    CHECK_THROWS_AS(ContrastFunction("tanh"), std::invalid_argument);
    CHECK_THROWS_AS(ContrastFunction("M_ARCSINH"), std::invalid_argument);
    CHECK_THROWS_AS(ContrastFunction("logcosh", 3.0), std::invalid_argument);
}

TEST_CASE("eval examples") {
    SUBCASE("m_arcsinh at zero") {
        const auto r = ContrastFunction("m_arcsinh").eval(Matrix{{0.0}});
        CHECK(r.g == Matrix{{0.0}});
        CHECK(r.gprime_mean == Vector{0.0});
    }
    SUBCASE("m_arcsinh at one") {
        const auto r = ContrastFunction("m_arcsinh").eval(Matrix{{1.0}});
        CHECK(r.g(0, 0) == doctest::Approx(kValueAt1).epsilon(1e-15));
        CHECK(r.gprime_mean[0] == doctest::Approx(kDerivAt1).epsilon(1e-15));
    }
    SUBCASE("cube") {
        const auto r = ContrastFunction("cube").eval(Matrix{{2.0, -1.0}});
        CHECK(r.g == Matrix{{8.0, -1.0}});
        CHECK(r.gprime_mean == Vector{7.5});
    }
    SUBCASE("row means match pointwise evaluation") {
        const Matrix u{{0.3, -1.2, 2.0}, {0.0, 4.0, -0.5}};
        for (auto name : kContrastNames) {
            const ContrastFunction f(name);
            const auto r = f.eval(u);
            for (std::size_t i = 0; i < 2; ++i) {
                double m = 0.0;
                for (std::size_t j = 0; j < 3; ++j) {
                    CHECK(r.g(i, j) == f.g(u(i, j)));
                    m += f.gprime(u(i, j));
                }
                CHECK(r.gprime_mean[i] == doctest::Approx(m / 3.0).epsilon(1e-15));
            }
        }
    }
}

TEST_CASE("all registry functions stay finite on extreme inputs") {
    const Matrix u{{0.0, 1e-300, -1e-300, 1e6, -1e6}};
    for (auto name : kContrastNames) {
        const auto r = ContrastFunction(name).eval(u);
        CHECK(r.g.all_finite());
        CHECK(std::isfinite(r.gprime_mean[0]));
    }
}

TEST_CASE("baseline g' matches numeric derivative of g") {
    const double h = 1e-5;
    for (auto name : {"logcosh", "exp", "cube"}) {
        const ContrastFunction f(name);
        for (int i = 0; i <= 400; ++i) {
            const double x = -4.0 + 8.0 * i / 400.0;
            const double fd = (f.g(x + h) - f.g(x - h)) / (2 * h);
            const double an = f.gprime(x);
            // absolute floor where g' crosses zero (exp at |x| = 1)
            CHECK(std::abs(fd - an) <= 1e-6 * std::max(std::abs(an), 1e-3));
        }
    }
    const ContrastFunction lc(ContrastKind::logcosh, 1.5);
    CHECK(lc.g(0.4) == doctest::Approx(std::tanh(0.6)));
    CHECK(lc.gprime(0.4) == doctest::Approx(1.5 * (1 - std::tanh(0.6) * std::tanh(0.6))));
}
