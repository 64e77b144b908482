#ifndef MARKICA_CLASSIFIER_HPP
#define MARKICA_CLASSIFIER_HPP

#include "markica/matrix.hpp"
#include "markica/metrics.hpp"

#include <array>
#include <cstdint>
#include <span>
#include <string_view>
#include <vector>

namespace markica::classifier {

using metrics::Label;

enum class Activation { m_arcsinh, identity, tanh, relu };

inline constexpr std::array<Activation, 4> kAllActivations = {
    Activation::m_arcsinh, Activation::identity, Activation::tanh, Activation::relu};

std::string_view activation_name(Activation a);
// Accepts "m_arcsinh" (also "m-arcsinh"), "identity", "tanh", "relu".
Activation parse_activation(std::string_view name);

double act_forward(Activation kind, double x);
// relu'(0) = 0; m_arcsinh shares the zero guard of the contrast kernel.
double act_derivative(Activation kind, double x);

struct MlpConfig {
    std::vector<std::size_t> hidden_sizes{100};
    Activation activation = Activation::relu;
    std::uint64_t seed = 1;
    int max_iter = 250;  // epochs
    double learning_rate = 1e-3;
    std::size_t batch_size = 0;  // 0 selects min(200, n_samples)
    bool early_stopping = true;
    double validation_fraction = 0.1;
    int patience = 10;
    double tol = 1e-4;
    double alpha = 1e-4;  // L2 penalty
    double beta1 = 0.9;
    double beta2 = 0.999;
    double epsilon = 1e-8;
};

// Layer l maps width[l] -> width[l + 1]; weights[l] is width[l] x width[l+1].
struct Parameters {
    std::vector<Matrix> weights;
    std::vector<Vector> biases;
};

struct MlpModel {
    Parameters params;
    Activation activation = Activation::relu;
    std::vector<Label> classes;       // sorted; output unit i scores classes[i]
    std::vector<double> loss_curve;   // mean training loss per epoch
    std::vector<double> validation_scores;
    int n_epochs = 0;
    int best_epoch = 0;  // 1-based epoch whose parameters were kept
    double fit_seconds = 0.0;

    std::size_t n_features() const { return params.weights.front().rows(); }
    std::size_t n_classes() const { return classes.size(); }

    // Row-wise softmax probabilities.
    Matrix predict_proba(const Matrix& x) const;
    // Argmax of predict_proba; ties go to the lowest class index.
    std::vector<Label> predict(const Matrix& x) const;
};

// Mean cross-entropy of softmax outputs plus alpha/(2 n) * sum of squared
// weights. When grad is non-null it receives d loss / d params.
double loss_and_gradient(const Parameters& params, Activation activation, const Matrix& x,
                         std::span<const std::size_t> targets, double alpha,
                         Parameters* grad = nullptr);

// Minibatch Adam on softmax cross-entropy. With early_stopping the last
// ceil(validation_fraction * rows) rows are held out, accuracy on them is
// tracked each epoch, and training stops once it has failed to improve by
// more than tol for more than `patience` consecutive epochs; the best
// parameters are restored. Throws TrainingError on a non-finite loss.
MlpModel fit(const Matrix& x, std::span<const Label> y, const MlpConfig& config);

}  // namespace markica::classifier

#endif
