#ifndef MARKICA_METRICS_HPP
#define MARKICA_METRICS_HPP

#include "markica/matrix.hpp"

#include <map>
#include <span>
#include <vector>

namespace markica::metrics {

using Label = int;

struct PrecisionRecallF1 {
    double precision = 0.0;
    double recall = 0.0;
    double f1 = 0.0;
};

struct ClassificationScores {
    double accuracy = 0.0;
    double precision_weighted = 0.0;
    double recall_weighted = 0.0;
    double f1_weighted = 0.0;
    std::map<Label, std::size_t> support;
};

double accuracy(std::span<const Label> y_true, std::span<const Label> y_pred);

// Per-class precision/recall/F1 averaged with weights = support in y_true.
// Precision of a never-predicted class is 0; F1 is 0 when P + R = 0.
PrecisionRecallF1 weighted_prf(std::span<const Label> y_true, std::span<const Label> y_pred);

ClassificationScores score(std::span<const Label> y_true, std::span<const Label> y_pred);

// Normalized Amari index in [0, 1]; 0 iff P is a scaled permutation.
// Throws std::invalid_argument for non-square P, n < 2, or an all-zero
// row or column.
double amari_index(const Matrix& p);

}  // namespace markica::metrics

#endif
