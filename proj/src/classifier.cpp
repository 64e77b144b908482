#include "markica/classifier.hpp"

#include "markica/contrast.hpp"
#include "markica/errors.hpp"
#include "markica/numlin.hpp"
#include "markica/rng.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <numeric>
#include <set>
#include <stdexcept>
#include <string>

namespace markica::classifier {

std::string_view activation_name(Activation a) {
    switch (a) {
        case Activation::m_arcsinh: return "m_arcsinh";
        case Activation::identity: return "identity";
        case Activation::tanh: return "tanh";
        case Activation::relu: return "relu";
    }
    return "unknown";
}

Activation parse_activation(std::string_view name) {
    if (name == "m_arcsinh" || name == "m-arcsinh") return Activation::m_arcsinh;
    if (name == "identity") return Activation::identity;
    if (name == "tanh") return Activation::tanh;
    if (name == "relu") return Activation::relu;
    throw std::invalid_argument("unknown activation '" + std::string(name) + "'");
}

double act_forward(Activation kind, double x) {
    switch (kind) {
        case Activation::m_arcsinh: return m_arcsinh_value(x);
        case Activation::identity: return x;
        case Activation::tanh: return std::tanh(x);
        case Activation::relu: return x > 0.0 ? x : 0.0;
    }
    return x;
}

double act_derivative(Activation kind, double x) {
    switch (kind) {
        case Activation::m_arcsinh: return m_arcsinh_derivative(x);
        case Activation::identity: return 1.0;
        case Activation::tanh: {
            const double t = std::tanh(x);
            return 1.0 - t * t;
        }
        case Activation::relu: return x > 0.0 ? 1.0 : 0.0;
    }
    return 1.0;
}

namespace {

// Pre-activations and activations for every layer of one forward pass.
struct Trace {
    std::vector<Matrix> pre;   // pre[l]: input to the nonlinearity of layer l
    std::vector<Matrix> post;  // post[0] = x, post[l + 1] = act(pre[l]); last = logits
};

Matrix affine(const Matrix& a, const Matrix& w, const Vector& b) {
    Matrix z = numlin::matmul(a, w);
    for (std::size_t i = 0; i < z.rows(); ++i) {
        auto r = z.row(i);
        for (std::size_t j = 0; j < r.size(); ++j) r[j] += b[j];
    }
    return z;
}

Trace forward(const Parameters& p, Activation act, const Matrix& x) {
    Trace t;
    t.post.push_back(x);
    const std::size_t layers = p.weights.size();
    for (std::size_t l = 0; l < layers; ++l) {
        Matrix z = affine(t.post.back(), p.weights[l], p.biases[l]);
        if (l + 1 == layers) {
            t.post.push_back(std::move(z));
            break;
        }
        Matrix a = z;
        for (double& v : a.values()) v = act_forward(act, v);
        t.pre.push_back(std::move(z));
        t.post.push_back(std::move(a));
    }
    return t;
}

// In-place row softmax; returns per-row log-sum-exp.
Vector softmax_rows(Matrix& logits) {
    Vector lse(logits.rows());
    for (std::size_t i = 0; i < logits.rows(); ++i) {
        auto r = logits.row(i);
        const double m = *std::max_element(r.begin(), r.end());
        double s = 0.0;
        for (double v : r) s += std::exp(v - m);
        lse[i] = m + std::log(s);
        for (double& v : r) v = std::exp(v - lse[i]);
    }
    return lse;
}

Parameters zeros_like(const Parameters& p) {
    Parameters z;
    for (const auto& w : p.weights) z.weights.emplace_back(w.rows(), w.cols());
    for (const auto& b : p.biases) z.biases.emplace_back(b.size(), 0.0);
    return z;
}

Parameters glorot_init(const std::vector<std::size_t>& widths, Rng& rng) {
    Parameters p;
    for (std::size_t l = 0; l + 1 < widths.size(); ++l) {
        const double fan_in = static_cast<double>(widths[l]);
        const double fan_out = static_cast<double>(widths[l + 1]);
        const double bound = std::sqrt(6.0 / (fan_in + fan_out));
        Matrix w(widths[l], widths[l + 1]);
        for (double& v : w.values()) v = rng.uniform(-bound, bound);
        Vector b(widths[l + 1]);
        for (double& v : b) v = rng.uniform(-bound, bound);
        p.weights.push_back(std::move(w));
        p.biases.push_back(std::move(b));
    }
    return p;
}

// Flat views over every parameter, weights first, for the optimizer.
template <typename P, typename F>
void for_each_span(P& p, F&& f) {
    for (auto& w : p.weights) f(w.values());
    for (auto& b : p.biases) f(std::span(b));
}

class Adam {
public:
    Adam(const Parameters& shape, const MlpConfig& cfg)
        : m_(zeros_like(shape)), v_(zeros_like(shape)), cfg_(cfg) {}

    void step(Parameters& params, const Parameters& grad) {
        ++t_;
        const double lr_t = cfg_.learning_rate * std::sqrt(1.0 - std::pow(cfg_.beta2, t_)) /
                            (1.0 - std::pow(cfg_.beta1, t_));
        std::vector<std::span<double>> ps, ms, vs;
        std::vector<std::span<const double>> gs;
        for_each_span(params, [&](std::span<double> s) { ps.push_back(s); });
        for_each_span(m_, [&](std::span<double> s) { ms.push_back(s); });
        for_each_span(v_, [&](std::span<double> s) { vs.push_back(s); });
        for_each_span(grad, [&](auto s) { gs.push_back(s); });
        for (std::size_t k = 0; k < ps.size(); ++k) {
            for (std::size_t i = 0; i < ps[k].size(); ++i) {
                const double g = gs[k][i];
                ms[k][i] = cfg_.beta1 * ms[k][i] + (1.0 - cfg_.beta1) * g;
                vs[k][i] = cfg_.beta2 * vs[k][i] + (1.0 - cfg_.beta2) * g * g;
                ps[k][i] -= lr_t * ms[k][i] / (std::sqrt(vs[k][i]) + cfg_.epsilon);
            }
        }
    }

private:
    Parameters m_, v_;
    const MlpConfig& cfg_;
    int t_ = 0;
};

void validate(const MlpConfig& c) {
    if (c.hidden_sizes.empty()) throw std::invalid_argument("MlpConfig: need at least one hidden layer");
    for (auto h : c.hidden_sizes)
        if (h < 1) throw std::invalid_argument("MlpConfig: hidden sizes must be >= 1");
    if (c.max_iter < 1) throw std::invalid_argument("MlpConfig: max_iter must be >= 1");
    if (c.patience < 1) throw std::invalid_argument("MlpConfig: patience must be >= 1");
    if (!(c.validation_fraction > 0.0 && c.validation_fraction < 1.0))
        throw std::invalid_argument("MlpConfig: validation_fraction must lie in (0, 1)");
    if (!(c.learning_rate > 0.0)) throw std::invalid_argument("MlpConfig: learning_rate must be > 0");
    if (c.alpha < 0.0) throw std::invalid_argument("MlpConfig: alpha must be >= 0");
}

}  // namespace

double loss_and_gradient(const Parameters& params, Activation activation, const Matrix& x,
                         std::span<const std::size_t> targets, double alpha, Parameters* grad) {
    const std::size_t n = x.rows();
    if (targets.size() != n) throw std::invalid_argument("loss_and_gradient: target count mismatch");
    const double inv_n = 1.0 / static_cast<double>(n);

    Trace t = forward(params, activation, x);
    Matrix& probs = t.post.back();
    double loss = 0.0;
    for (std::size_t i = 0; i < n; ++i) loss -= probs(i, targets[i]);  // logits at this point
    for (double v : softmax_rows(probs)) loss += v;
    loss *= inv_n;
    double sq = 0.0;
    for (const auto& w : params.weights)
        for (double v : w.values()) sq += v * v;
    loss += 0.5 * alpha * sq * inv_n;

    if (!grad) return loss;

    *grad = zeros_like(params);
    Matrix delta = probs;
    for (std::size_t i = 0; i < n; ++i) delta(i, targets[i]) -= 1.0;
    for (double& v : delta.values()) v *= inv_n;

    for (std::size_t l = params.weights.size(); l-- > 0;) {
        Matrix gw = numlin::matmul_at(t.post[l], delta);
        auto gwv = gw.values();
        auto wv = params.weights[l].values();
        for (std::size_t k = 0; k < gwv.size(); ++k) gwv[k] += alpha * wv[k] * inv_n;
        grad->weights[l] = std::move(gw);
        auto& gb = grad->biases[l];
        for (std::size_t i = 0; i < delta.rows(); ++i) {
            auto r = delta.row(i);
            for (std::size_t j = 0; j < r.size(); ++j) gb[j] += r[j];
        }
        if (l == 0) break;
        Matrix prev = numlin::matmul_bt(delta, params.weights[l]);
        const Matrix& z = t.pre[l - 1];
        auto pv = prev.values();
        auto zv = z.values();
        for (std::size_t k = 0; k < pv.size(); ++k) pv[k] *= act_derivative(activation, zv[k]);
        delta = std::move(prev);
    }
    return loss;
}

Matrix MlpModel::predict_proba(const Matrix& x) const {
    if (x.cols() != n_features())
        throw std::invalid_argument("predict: expected " + std::to_string(n_features()) +
                                    " features, got " + std::to_string(x.cols()));
    Trace t = forward(params, activation, x);
    Matrix probs = std::move(t.post.back());
    softmax_rows(probs);
    return probs;
}

std::vector<Label> MlpModel::predict(const Matrix& x) const {
    const Matrix probs = predict_proba(x);
    std::vector<Label> out(x.rows());
    for (std::size_t i = 0; i < probs.rows(); ++i) {
        auto r = probs.row(i);
        std::size_t best = 0;
        for (std::size_t j = 1; j < r.size(); ++j)
            if (r[j] > r[best]) best = j;
        out[i] = classes[best];
    }
    return out;
}

MlpModel fit(const Matrix& x, std::span<const Label> y, const MlpConfig& config) {
    validate(config);
    if (x.rows() != y.size()) throw std::invalid_argument("fit: X rows and y length differ");
    if (!x.all_finite()) throw std::invalid_argument("fit: X contains non-finite values");

    const auto start = std::chrono::steady_clock::now();

    MlpModel model;
    model.activation = config.activation;
    {
        std::set<Label> uniq(y.begin(), y.end());
        model.classes.assign(uniq.begin(), uniq.end());
    }
    if (model.classes.size() < 2) throw std::invalid_argument("fit: need at least 2 distinct labels");

    std::vector<std::size_t> target(y.size());
    for (std::size_t i = 0; i < y.size(); ++i)
        target[i] = static_cast<std::size_t>(
            std::lower_bound(model.classes.begin(), model.classes.end(), y[i]) -
            model.classes.begin());

    std::size_t n_train = x.rows();
    std::size_t n_val = 0;
    if (config.early_stopping) {
        n_val = static_cast<std::size_t>(
            std::ceil(config.validation_fraction * static_cast<double>(x.rows())));
        if (n_val < 1 || n_val >= x.rows())
            throw std::invalid_argument("fit: too few rows for the validation holdout");
        n_train = x.rows() - n_val;
    }
    const Matrix x_train = x.row_block(0, n_train);
    const std::span<const std::size_t> t_train(target.data(), n_train);
    Matrix x_val;
    std::vector<Label> y_val;
    if (n_val) {
        x_val = x.row_block(n_train, n_val);
        y_val.assign(y.begin() + static_cast<std::ptrdiff_t>(n_train), y.end());
    }

    std::vector<std::size_t> widths{x.cols()};
    widths.insert(widths.end(), config.hidden_sizes.begin(), config.hidden_sizes.end());
    widths.push_back(model.classes.size());

    Rng rng(config.seed);
    model.params = glorot_init(widths, rng);
    Adam adam(model.params, config);

    const std::size_t batch =
        std::clamp<std::size_t>(config.batch_size ? config.batch_size : 200, 1, n_train);
    std::vector<std::size_t> order(n_train);
    std::iota(order.begin(), order.end(), 0);

    Parameters best = model.params;
    double best_score = -std::numeric_limits<double>::infinity();
    double best_loss = std::numeric_limits<double>::infinity();
    int no_improvement = 0;
    Parameters grad;

    for (int epoch = 1; epoch <= config.max_iter; ++epoch) {
        rng.shuffle(order.begin(), order.end());
        double epoch_loss = 0.0;
        for (std::size_t first = 0; first < n_train; first += batch) {
            const std::size_t len = std::min(batch, n_train - first);
            std::span<const std::size_t> idx(order.data() + first, len);
            const Matrix xb = x_train.select_rows(idx);
            std::vector<std::size_t> tb(len);
            for (std::size_t k = 0; k < len; ++k) tb[k] = t_train[idx[k]];
            const double loss =
                loss_and_gradient(model.params, config.activation, xb, tb, config.alpha, &grad);
            if (!std::isfinite(loss))
                throw TrainingError("MLP training diverged (non-finite loss) at epoch " +
                                    std::to_string(epoch));
            epoch_loss += loss * static_cast<double>(len);
            adam.step(model.params, grad);
        }
        epoch_loss /= static_cast<double>(n_train);
        model.loss_curve.push_back(epoch_loss);
        model.n_epochs = epoch;

        if (config.early_stopping) {
            const double score = metrics::accuracy(y_val, model.predict(x_val));
            model.validation_scores.push_back(score);
            no_improvement = score < best_score + config.tol ? no_improvement + 1 : 0;
            if (score > best_score) {
                best_score = score;
                best = model.params;
                model.best_epoch = epoch;
            }
        } else {
            no_improvement = epoch_loss > best_loss - config.tol ? no_improvement + 1 : 0;
            if (epoch_loss < best_loss) best_loss = epoch_loss;
            model.best_epoch = epoch;
        }
        if (no_improvement > config.patience) break;
    }
    if (config.early_stopping) model.params = std::move(best);

    model.fit_seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    return model;
}

}  // namespace markica::classifier
