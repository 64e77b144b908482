#ifndef MARKICA_BENCH_HPP
#define MARKICA_BENCH_HPP

#include "markica/classifier.hpp"
#include "markica/contrast.hpp"
#include "markica/dataset.hpp"
#include "markica/fastica.hpp"

#include <array>
#include <cstdint>
#include <filesystem>
#include <functional>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace markica::bench {

enum class Extraction { fastica_logcosh, m_ar_k_fastica };

inline constexpr std::array<Extraction, 2> kAllExtractions = {Extraction::fastica_logcosh,
                                                              Extraction::m_ar_k_fastica};

std::string_view extraction_name(Extraction e);
Extraction parse_extraction(std::string_view name);
ContrastFunction extraction_contrast(Extraction e);

struct BenchmarkRow {
    std::string dataset;
    classifier::Activation activation = classifier::Activation::relu;
    Extraction extraction = Extraction::fastica_logcosh;
    double training_time_s = 0.0;
    double accuracy = 0.0;
    double precision = 0.0;
    double recall = 0.0;
    double f1 = 0.0;
    int ica_iterations = 0;
    bool ica_converged = false;
    std::optional<std::string> error;  // set when the cell failed
};

struct BenchConfig {
    std::uint64_t ica_seed = 42;
    std::uint64_t mlp_seed = 1;
    int mlp_max_iter = 250;
    bool early_stopping = true;
    unsigned jobs = 1;  // worker threads; results do not depend on it
};

// Extraction fitted on the train partition and applied to both partitions.
struct ExtractedSplit {
    data::Split features;
    fastica::FastIcaModel model;
};

ExtractedSplit extract(const data::Split& split, std::size_t n_components, Extraction extraction,
                       std::uint64_t seed);

// dataset x activation x extraction, in the order
//   for dataset: for extraction: for activation
// Failures are recorded on the affected rows and the run continues.
std::vector<BenchmarkRow> run_benchmark(const std::vector<data::DatasetSpec>& specs,
                                        const std::filesystem::path& data_dir,
                                        const BenchConfig& config = {});

enum class ReportFormat { csv, markdown };
ReportFormat parse_report_format(std::string_view name);

// csv: header dataset,activation,extraction,training_time_s,accuracy,precision,recall,f1
// with every number at 2 decimals. markdown: one table with display names.
// Throws std::invalid_argument for an empty row list.
std::string emit_report(const std::vector<BenchmarkRow>& rows, ReportFormat format);

struct BssResult {
    double amari = 0.0;
    bool converged = false;
    int n_iter = 0;
    double mixing_condition = 0.0;
};

// Mixing matrix with entries uniform in [-1, 1], redrawn until its 2-norm
// condition number is below max_condition.
Matrix random_mixing(std::size_t n, std::uint64_t seed, double max_condition = 10.0);

// Mixes sine/square/sawtooth sources with random_mixing(3, seed), runs
// FastICA with `fun`, and scores unmixing * whitening * mixing.
BssResult bss_demo(const ContrastFunction& fun, std::uint64_t seed, std::size_t n_samples = 10000);

}  // namespace markica::bench

#endif
