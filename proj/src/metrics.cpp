#include "markica/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <stdexcept>

namespace markica::metrics {

namespace {
void check_pair(std::span<const Label> y_true, std::span<const Label> y_pred) {
    if (y_true.size() != y_pred.size())
        throw std::invalid_argument("metrics: y_true and y_pred differ in length");
    if (y_true.empty()) throw std::invalid_argument("metrics: empty label vectors");
}
}  // namespace

double accuracy(std::span<const Label> y_true, std::span<const Label> y_pred) {
    check_pair(y_true, y_pred);
    std::size_t hits = 0;
    for (std::size_t i = 0; i < y_true.size(); ++i) hits += y_true[i] == y_pred[i];
    return static_cast<double>(hits) / static_cast<double>(y_true.size());
}

PrecisionRecallF1 weighted_prf(std::span<const Label> y_true, std::span<const Label> y_pred) {
    check_pair(y_true, y_pred);
    std::set<Label> classes(y_true.begin(), y_true.end());
    classes.insert(y_pred.begin(), y_pred.end());

    PrecisionRecallF1 out;
    const double n = static_cast<double>(y_true.size());
    for (Label c : classes) {
        std::size_t tp = 0, pred = 0, support = 0;
        for (std::size_t i = 0; i < y_true.size(); ++i) {
            const bool t = y_true[i] == c;
            const bool p = y_pred[i] == c;
            tp += t && p;
            pred += p;
            support += t;
        }
        if (support == 0) continue;  // zero weight
        const double precision = pred ? static_cast<double>(tp) / static_cast<double>(pred) : 0.0;
        const double recall = static_cast<double>(tp) / static_cast<double>(support);
        const double f1 =
            precision + recall > 0.0 ? 2.0 * precision * recall / (precision + recall) : 0.0;
        const double w = static_cast<double>(support) / n;
        out.precision += w * precision;
        out.recall += w * recall;
        out.f1 += w * f1;
    }
    return out;
}

ClassificationScores score(std::span<const Label> y_true, std::span<const Label> y_pred) {
    ClassificationScores s;
    s.accuracy = accuracy(y_true, y_pred);
    const auto prf = weighted_prf(y_true, y_pred);
    s.precision_weighted = prf.precision;
    s.recall_weighted = prf.recall;
    s.f1_weighted = prf.f1;
    for (Label y : y_true) ++s.support[y];
    return s;
}

double amari_index(const Matrix& p) {
    const std::size_t n = p.rows();
    if (n != p.cols()) throw std::invalid_argument("amari_index: matrix must be square");
    if (n < 2) throw std::invalid_argument("amari_index: need n >= 2");

    Vector row_max(n, 0.0), col_max(n, 0.0), row_sum(n, 0.0), col_sum(n, 0.0);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
            const double a = std::abs(p(i, j));
            row_max[i] = std::max(row_max[i], a);
            col_max[j] = std::max(col_max[j], a);
            row_sum[i] += a;
            col_sum[j] += a;
        }
    }
    double total = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        if (row_max[i] == 0.0) throw std::invalid_argument("amari_index: all-zero row");
        if (col_max[i] == 0.0) throw std::invalid_argument("amari_index: all-zero column");
        total += row_sum[i] / row_max[i] - 1.0;
        total += col_sum[i] / col_max[i] - 1.0;
    }
    const double nd = static_cast<double>(n);
    return total / (2.0 * nd * (nd - 1.0));
}

}  // namespace markica::metrics
