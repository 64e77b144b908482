#include <doctest.h>

#include "markica/classifier.hpp"
#include "markica/errors.hpp"
#include "markica/rng.hpp"

#include <cmath>
#include <stdexcept>
#include <vector>

using namespace markica;
using namespace markica::classifier;

namespace {

struct Blobs {
    Matrix x;
    std::vector<Label> y;
};

// Two well separated gaussian blobs, classes interleaved.
Blobs blobs(std::size_t n, std::uint64_t seed) {
    Rng rng(seed);
    Blobs b{Matrix(n, 2), std::vector<Label>(n)};
    for (std::size_t i = 0; i < n; ++i) {
        const Label c = static_cast<Label>(i % 2);
        const double cx = c ? 2.0 : -2.0;
        b.x(i, 0) = cx + 0.5 * rng.normal();
        b.x(i, 1) = -cx + 0.5 * rng.normal();
        b.y[i] = c;
    }
    return b;
}

Parameters tiny_params(std::uint64_t seed) {
    Rng rng(seed);
    Parameters p;
    p.weights = {Matrix(2, 3), Matrix(3, 2)};
    p.biases = {Vector(3), Vector(2)};
    for (auto& w : p.weights)
        for (double& v : w.values()) v = rng.uniform(-1.0, 1.0);
    for (auto& b : p.biases)
        for (double& v : b) v = rng.uniform(-0.5, 0.5);
    return p;
}

std::vector<double*> flat(Parameters& p) {
    std::vector<double*> out;
    for (std::size_t l = 0; l < p.weights.size(); ++l) {
        for (double& v : p.weights[l].values()) out.push_back(&v);
        for (double& v : p.biases[l]) out.push_back(&v);
    }
    return out;
}

}  // namespace

TEST_CASE("activation examples") {
    CHECK(act_forward(Activation::relu, -2.0) == 0.0);
    CHECK(act_forward(Activation::relu, 2.5) == 2.5);
    CHECK(act_forward(Activation::identity, 3.5) == 3.5);
    CHECK(act_forward(Activation::tanh, 0.3) == std::tanh(0.3));
    CHECK(act_forward(Activation::m_arcsinh, 1.0) == doctest::Approx(std::asinh(1.0) / 12.0).epsilon(1e-15));

    CHECK(act_derivative(Activation::tanh, 0.0) == 1.0);
    CHECK(act_derivative(Activation::identity, -7.0) == 1.0);
    CHECK(act_derivative(Activation::relu, 0.0) == 0.0);
    CHECK(act_derivative(Activation::relu, -1.0) == 0.0);
    CHECK(act_derivative(Activation::relu, 1.0) == 1.0);
    CHECK(act_derivative(Activation::m_arcsinh, 0.0) == 0.0);
    CHECK(act_derivative(Activation::m_arcsinh, 1.0) ==
          doctest::Approx(1.0 / (12.0 * std::sqrt(2.0)) + std::asinh(1.0) / 24.0).epsilon(1e-15));
}

TEST_CASE("activation names") {
    for (auto a : kAllActivations) CHECK(parse_activation(activation_name(a)) == a);
    CHECK(parse_activation("m-arcsinh") == Activation::m_arcsinh);
    CHECK(activation_name(Activation::m_arcsinh) == "m_arcsinh");
    CHECK_THROWS_AS(parse_activation("sigmoid"), std::invalid_argument);
}

TEST_CASE("analytic gradient matches central differences") {
    // 5 samples; the first input column straddles zero so m_arcsinh sees both signs.
    const Matrix x{{-0.8, 0.3}, {-0.1, -1.2}, {0.05, 0.7}, {0.6, -0.4}, {1.3, 0.9}};
    const std::vector<std::size_t> t{0, 1, 1, 0, 1};
    const double h = 1e-6;
    for (auto act : kAllActivations) {
        for (double alpha : {0.0, 1e-2}) {
            CAPTURE(activation_name(act));
            CAPTURE(alpha);
            Parameters p = tiny_params(3);
            Parameters g;
            loss_and_gradient(p, act, x, t, alpha, &g);
            auto pv = flat(p);
            auto gv = flat(g);
            REQUIRE(pv.size() == gv.size());
            double diff2 = 0.0, sum2 = 0.0;
            for (std::size_t k = 0; k < pv.size(); ++k) {
                const double saved = *pv[k];
                *pv[k] = saved + h;
                const double up = loss_and_gradient(p, act, x, t, alpha);
                *pv[k] = saved - h;
                const double down = loss_and_gradient(p, act, x, t, alpha);
                *pv[k] = saved;
                const double fd = (up - down) / (2 * h);
                diff2 += (fd - *gv[k]) * (fd - *gv[k]);
                sum2 += (fd + *gv[k]) * (fd + *gv[k]);
            }
            CHECK(std::sqrt(diff2) / std::sqrt(sum2) < 1e-5);
        }
    }
}

TEST_CASE("loss value") {
    // zero weights: uniform softmax, loss ln 2
    Parameters p;
    p.weights = {Matrix(2, 3), Matrix(3, 2)};
    p.biases = {Vector(3), Vector(2)};
    const Matrix x{{1, 2}, {3, 4}};
    const std::vector<std::size_t> t{0, 1};
    CHECK(loss_and_gradient(p, Activation::tanh, x, t, 0.0) == doctest::Approx(std::log(2.0)).epsilon(1e-15));

    // L2 term 0.5 * alpha * sum(W^2) / n
    p.weights[1](0, 0) = 2.0;
    const double with_l2 = loss_and_gradient(p, Activation::tanh, x, t, 0.5);
    const double without = loss_and_gradient(p, Activation::tanh, x, t, 0.0);
    CHECK(with_l2 - without == doctest::Approx(0.5 * 0.5 * 4.0 / 2.0));
}

TEST_CASE("fit on separable blobs") {
    const auto b = blobs(200, 7);
    for (auto act : kAllActivations) {
        CAPTURE(activation_name(act));
        MlpConfig cfg;
        cfg.activation = act;
        const auto model = fit(b.x, b.y, cfg);
        CHECK(metrics::accuracy(b.y, model.predict(b.x)) >= 0.95);
        CHECK(model.loss_curve.back() < model.loss_curve.front());
        CHECK(model.n_epochs <= 250);
        CHECK(model.n_epochs - model.best_epoch <= cfg.patience + 1);
        CHECK(model.validation_scores.size() == static_cast<std::size_t>(model.n_epochs));
        CHECK(model.fit_seconds >= 0.0);
        for (const auto& w : model.params.weights) CHECK(w.all_finite());
    }
}

TEST_CASE("XOR with a small tanh network") {
    const Matrix x{{0, 0}, {0, 1}, {1, 0}, {1, 1}};
    const std::vector<Label> y{0, 1, 1, 0};
    MlpConfig cfg;
    cfg.hidden_sizes = {8};
    cfg.activation = Activation::tanh;
    cfg.max_iter = 2000;
    cfg.early_stopping = false;
    const auto model = fit(x, y, cfg);
    CHECK(model.predict(x) == y);
}

TEST_CASE("determinism and probabilities") {
    const auto b = blobs(120, 3);
    MlpConfig cfg;
    cfg.activation = Activation::m_arcsinh;
    cfg.max_iter = 40;
    const auto m1 = fit(b.x, b.y, cfg);
    const auto m2 = fit(b.x, b.y, cfg);
    CHECK(m1.loss_curve == m2.loss_curve);
    CHECK(m1.validation_scores == m2.validation_scores);
    CHECK(m1.params.weights == m2.params.weights);
    CHECK(m1.predict(b.x) == m1.predict(b.x));

    const Matrix p = m1.predict_proba(b.x);
    for (std::size_t i = 0; i < p.rows(); ++i) {
        double s = 0.0;
        for (double v : p.row(i)) {
            CHECK(v >= 0.0);
            s += v;
        }
        CHECK(std::abs(s - 1.0) < 1e-9);
    }
    CHECK_THROWS_AS(m1.predict(Matrix(3, 5)), std::invalid_argument);
}

TEST_CASE("labels are mapped back to the original class values") {
    auto b = blobs(100, 9);
    for (auto& v : b.y) v = v ? 7 : -3;
    MlpConfig cfg;
    const auto model = fit(b.x, b.y, cfg);
    CHECK(model.classes == std::vector<Label>{-3, 7});
    CHECK(metrics::accuracy(b.y, model.predict(b.x)) >= 0.95);
}

TEST_CASE("ties go to the lowest class index") {
    MlpModel m;
    m.activation = Activation::identity;
    m.classes = {4, 9};
    m.params.weights = {Matrix(2, 2), Matrix(2, 2)};
    m.params.biases = {Vector(2), Vector(2)};
    CHECK(m.predict(Matrix{{1.0, -1.0}}) == std::vector<Label>{4});
}

TEST_CASE("early stopping bound holds for small patience") {
    const auto b = blobs(200, 11);
    for (int patience : {1, 3, 5}) {
        MlpConfig cfg;
        cfg.patience = patience;
        cfg.activation = Activation::identity;
        const auto model = fit(b.x, b.y, cfg);
        CHECK(model.n_epochs - model.best_epoch <= patience + 1);
        CHECK(model.best_epoch >= 1);
    }
}

TEST_CASE("fit rejects bad input") {
    const auto b = blobs(40, 1);
    MlpConfig cfg;
    CHECK_THROWS_AS(fit(b.x, std::vector<Label>(40, 1), cfg), std::invalid_argument);
    CHECK_THROWS_AS(fit(b.x, std::vector<Label>(39, 1), cfg), std::invalid_argument);
    Matrix bad = b.x;
    bad(0, 0) = std::nan("");
    CHECK_THROWS_AS(fit(bad, b.y, cfg), std::invalid_argument);
    cfg.validation_fraction = 1.0;
    CHECK_THROWS_AS(fit(b.x, b.y, cfg), std::invalid_argument);
    cfg = {};
    cfg.hidden_sizes = {};
    CHECK_THROWS_AS(fit(b.x, b.y, cfg), std::invalid_argument);

    cfg = {};
    cfg.learning_rate = 1e300;
    cfg.activation = Activation::identity;
    Matrix huge = b.x;
    for (double& v : huge.values()) v *= 1e300;
    CHECK_THROWS_AS(fit(huge, b.y, cfg), TrainingError);
}
