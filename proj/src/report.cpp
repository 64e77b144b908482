#include "markica/bench.hpp"

#include <cstdio>
#include <sstream>
#include <stdexcept>

namespace markica::bench {

ReportFormat parse_report_format(std::string_view name) {
    if (name == "csv") return ReportFormat::csv;
    if (name == "markdown" || name == "md") return ReportFormat::markdown;
    throw std::invalid_argument("unknown report format '" + std::string(name) + "'");
}

namespace {

std::string fixed2(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.2f", v);
    return buf;
}

std::string display_activation(classifier::Activation a) {
    switch (a) {
        case classifier::Activation::m_arcsinh: return "m-arcsinh";
        case classifier::Activation::identity: return "Identity";
        case classifier::Activation::tanh: return "tanh";
        case classifier::Activation::relu: return "ReLU";
    }
    return "?";
}

std::string display_extraction(Extraction e) {
    return e == Extraction::fastica_logcosh ? "FastICA" : "m-ar-K-FastICA";
}

}  // namespace

std::string emit_report(const std::vector<BenchmarkRow>& rows, ReportFormat format) {
    if (rows.empty()) throw std::invalid_argument("emit_report: no rows");
    std::ostringstream out;
    if (format == ReportFormat::csv) {
        out << "dataset,activation,extraction,training_time_s,accuracy,precision,recall,f1\n";
        for (const auto& r : rows) {
            out << r.dataset << ',' << classifier::activation_name(r.activation) << ','
                << extraction_name(r.extraction) << ',';
            if (r.error) {
                out << "NA,NA,NA,NA,NA\n";
                continue;
            }
            out << fixed2(r.training_time_s) << ',' << fixed2(r.accuracy) << ','
                << fixed2(r.precision) << ',' << fixed2(r.recall) << ',' << fixed2(r.f1) << '\n';
        }
        return out.str();
    }

    out << "| Dataset | Kernel | Feature extraction | Training time (s) | Accuracy | Precision | "
           "Recall | F1-score |\n";
    out << "|---|---|---|---|---|---|---|---|\n";
    for (const auto& r : rows) {
        out << "| " << r.dataset << " | " << display_activation(r.activation) << " | "
            << display_extraction(r.extraction) << " | ";
        if (r.error) {
            out << "error: " << *r.error << " | | | | |\n";
            continue;
        }
        out << fixed2(r.training_time_s) << " | " << fixed2(r.accuracy) << " | "
            << fixed2(r.precision) << " | " << fixed2(r.recall) << " | " << fixed2(r.f1) << " |\n";
    }
    return out.str();
}

}  // namespace markica::bench
