#ifndef MARKICA_DATASET_HPP
#define MARKICA_DATASET_HPP

#include "markica/matrix.hpp"
#include "markica/metrics.hpp"

#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

namespace markica::data {

using metrics::Label;

struct LabeledData {
    Matrix x;
    std::vector<Label> y;
};

struct DatasetSpec {
    std::string name;
    std::string train_file;
    std::optional<std::string> test_file;  // only for pre-partitioned data
    bool header = false;
    // Column index, or header name when header = true.
    std::variant<std::size_t, std::string> label_column = std::size_t{0};
    std::vector<std::string> drop_columns;  // header names
    std::size_t n_components = 1;
    // Raw label text -> class id. Empty means labels are parsed as integers.
    std::map<std::string, Label> label_map;
};

// The five benchmark datasets, in report order.
const std::vector<DatasetSpec>& standard_datasets();
// Throws std::invalid_argument for an unknown name.
const DatasetSpec& find_dataset(std::string_view name);

struct LoadedDataset {
    LabeledData data;                 // contents of train_file
    std::optional<LabeledData> test;  // contents of test_file, if any
};

// Throws DataError for missing files, rows with the wrong field count, and
// non-numeric feature cells; messages carry file and line number.
LoadedDataset load_dataset(const DatasetSpec& spec, const std::filesystem::path& data_dir);

struct Split {
    LabeledData train;
    LabeledData test;
};

// First floor(0.8 * rows) rows train, the remainder test, order preserved.
// Requires rows >= 5.
Split split_80_20(const Matrix& x, std::span<const Label> y);

// SPECTF keeps its shipped partitions; everything else goes through split_80_20.
Split partition(const LoadedDataset& loaded);

enum class SourceKind { sine, square, sawtooth, laplace };
SourceKind parse_source_kind(std::string_view name);

// One standardized (zero mean, unit variance) column per kind. Periodic
// kinds get a seeded random phase; laplace draws i.i.d. samples.
// Requires n_samples >= 100.
Matrix synth_sources(std::span<const SourceKind> kinds, std::size_t n_samples, std::uint64_t seed);

}  // namespace markica::data

#endif
