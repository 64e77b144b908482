#include "markica/dataset.hpp"

#include "markica/errors.hpp"
#include "markica/rng.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <numbers>
#include <sstream>
#include <stdexcept>

namespace markica::data {

namespace fs = std::filesystem;

const std::vector<DatasetSpec>& standard_datasets() {
    static const std::vector<DatasetSpec> specs = [] {
        std::vector<DatasetSpec> v;
        v.push_back({.name = "breast_cancer",
                     .train_file = "breast_cancer.csv",
                     .header = true,
                     .label_column = std::string("target"),
                     .n_components = 16});
        v.push_back({.name = "heart_failure",
                     .train_file = "heart_failure_clinical_records_dataset.csv",
                     .header = true,
                     .label_column = std::string("DEATH_EVENT"),
                     .n_components = 2});
        v.push_back({.name = "haberman",
                     .train_file = "haberman.data",
                     .header = false,
                     .label_column = std::size_t{3},
                     .n_components = 2,
                     .label_map = {{"1", 0}, {"2", 1}}});  // survived 5y / died within 5y
        v.push_back({.name = "parkinsons",
                     .train_file = "parkinsons.data",
                     .header = true,
                     .label_column = std::string("status"),
                     .drop_columns = {"name"},
                     .n_components = 8});
        v.push_back({.name = "spectf",
                     .train_file = "SPECTF.train",
                     .test_file = "SPECTF.test",
                     .header = false,
                     .label_column = std::size_t{0},
                     .n_components = 43});
        return v;
    }();
    return specs;
}

const DatasetSpec& find_dataset(std::string_view name) {
    for (const auto& s : standard_datasets())
        if (s.name == name) return s;
    std::string known;
    for (const auto& s : standard_datasets()) known += (known.empty() ? "" : ", ") + s.name;
    throw std::invalid_argument("unknown dataset '" + std::string(name) + "' (known: " + known + ")");
}

namespace {

std::string_view trim(std::string_view s) {
    while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
    while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) s.remove_suffix(1);
    return s;
}

std::vector<std::string> split_fields(std::string_view line) {
    std::vector<std::string> out;
    std::size_t start = 0;
    while (true) {
        const auto comma = line.find(',', start);
        const auto field = trim(line.substr(start, comma == std::string_view::npos ? comma : comma - start));
        std::string f(field);
        // strip surrounding double quotes
        if (f.size() >= 2 && f.front() == '"' && f.back() == '"') f = f.substr(1, f.size() - 2);
        out.push_back(std::move(f));
        if (comma == std::string_view::npos) break;
        start = comma + 1;
    }
    return out;
}

struct CsvRow {
    int line_no;
    std::vector<std::string> fields;
};

struct CsvTable {
    std::vector<std::string> header;
    std::vector<CsvRow> rows;
};

CsvTable read_csv(const fs::path& path, bool header) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw DataError("cannot open data file " + path.string());
    CsvTable t;
    std::string line;
    int line_no = 0;
    bool header_pending = header;
    while (std::getline(in, line)) {
        ++line_no;
        if (trim(line).empty()) continue;
        auto fields = split_fields(line);
        if (header_pending) {
            t.header = std::move(fields);
            header_pending = false;
            continue;
        }
        t.rows.push_back({line_no, std::move(fields)});
    }
    if (t.rows.empty()) throw DataError(path.string() + ": no data rows");
    return t;
}

std::optional<double> parse_number(std::string_view s) {
    if (!s.empty() && s.front() == '+') s.remove_prefix(1);
    double v = 0.0;
    auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc{} || p != s.data() + s.size() || !std::isfinite(v)) return std::nullopt;
    return v;
}

LabeledData load_file(const DatasetSpec& spec, const fs::path& path) {
    const CsvTable t = read_csv(path, spec.header);
    const std::size_t width = spec.header ? t.header.size() : t.rows.front().fields.size();

    auto column_index = [&](const std::string& name) -> std::size_t {
        auto it = std::find(t.header.begin(), t.header.end(), name);
        if (it == t.header.end())
            throw DataError(path.string() + ": header has no column '" + name + "'");
        return static_cast<std::size_t>(it - t.header.begin());
    };

    std::size_t label_col = 0;
    if (const auto* idx = std::get_if<std::size_t>(&spec.label_column)) {
        label_col = *idx;
    } else {
        if (!spec.header) throw std::invalid_argument("named label column requires a header");
        label_col = column_index(std::get<std::string>(spec.label_column));
    }
    if (label_col >= width)
        throw DataError(path.string() + ": label column " + std::to_string(label_col) +
                        " out of range for " + std::to_string(width) + " fields");

    std::vector<bool> keep(width, true);
    keep[label_col] = false;
    for (const auto& d : spec.drop_columns) keep[column_index(d)] = false;
    const auto n_features = static_cast<std::size_t>(std::count(keep.begin(), keep.end(), true));
    if (n_features == 0) throw DataError(path.string() + ": no feature columns");

    LabeledData out{Matrix(t.rows.size(), n_features), {}};
    out.y.reserve(t.rows.size());
    for (std::size_t r = 0; r < t.rows.size(); ++r) {
        const auto& row = t.rows[r];
        auto where = [&] { return path.string() + ":" + std::to_string(row.line_no) + ": "; };
        if (row.fields.size() != width)
            throw DataError(where() + "expected " + std::to_string(width) + " fields, got " +
                            std::to_string(row.fields.size()));
        auto dst = out.x.row(r);
        std::size_t k = 0;
        for (std::size_t c = 0; c < width; ++c) {
            if (!keep[c]) continue;
            const auto v = parse_number(row.fields[c]);
            if (!v) {
                const std::string col = spec.header ? "'" + t.header[c] + "'" : std::to_string(c);
                throw DataError(where() + "column " + col + ": non-numeric value '" +
                                row.fields[c] + "'");
            }
            dst[k++] = *v;
        }

        const std::string& raw = row.fields[label_col];
        if (!spec.label_map.empty()) {
            auto it = spec.label_map.find(raw);
            if (it == spec.label_map.end()) throw DataError(where() + "unexpected label '" + raw + "'");
            out.y.push_back(it->second);
        } else {
            const auto v = parse_number(raw);
            if (!v || *v != std::floor(*v)) throw DataError(where() + "non-integer label '" + raw + "'");
            out.y.push_back(static_cast<Label>(*v));
        }
    }
    return out;
}

}  // namespace

LoadedDataset load_dataset(const DatasetSpec& spec, const fs::path& data_dir) {
    LoadedDataset out{load_file(spec, data_dir / spec.train_file), std::nullopt};
    if (spec.test_file) {
        out.test = load_file(spec, data_dir / *spec.test_file);
        if (out.test->x.cols() != out.data.x.cols())
            throw DataError(spec.name + ": train and test files differ in feature count");
    }
    return out;
}

Split split_80_20(const Matrix& x, std::span<const Label> y) {
    if (x.rows() != y.size()) throw std::invalid_argument("split_80_20: X rows and y length differ");
    if (x.rows() < 5) throw std::invalid_argument("split_80_20: need at least 5 rows");
    // Integer form of floor(0.8 * n).
    const std::size_t n_train = x.rows() * 4 / 5;
    const std::size_t n_test = x.rows() - n_train;
    Split s;
    s.train.x = x.row_block(0, n_train);
    s.train.y.assign(y.begin(), y.begin() + static_cast<std::ptrdiff_t>(n_train));
    s.test.x = x.row_block(n_train, n_test);
    s.test.y.assign(y.begin() + static_cast<std::ptrdiff_t>(n_train), y.end());
    return s;
}

Split partition(const LoadedDataset& loaded) {
    if (loaded.test) return {loaded.data, *loaded.test};
    return split_80_20(loaded.data.x, loaded.data.y);
}

SourceKind parse_source_kind(std::string_view name) {
    if (name == "sine") return SourceKind::sine;
    if (name == "square") return SourceKind::square;
    if (name == "sawtooth") return SourceKind::sawtooth;
    if (name == "laplace") return SourceKind::laplace;
    throw std::invalid_argument("unknown source kind '" + std::string(name) + "'");
}

Matrix synth_sources(std::span<const SourceKind> kinds, std::size_t n_samples, std::uint64_t seed) {
    if (n_samples < 100) throw std::invalid_argument("synth_sources: need at least 100 samples");
    if (kinds.empty()) throw std::invalid_argument("synth_sources: no source kinds given");

    constexpr double two_pi = 2.0 * std::numbers::pi;
    Rng rng(seed);
    Matrix s(n_samples, kinds.size());
    for (std::size_t c = 0; c < kinds.size(); ++c) {
        const double phase = two_pi * rng.uniform();
        for (std::size_t i = 0; i < n_samples; ++i) {
            // time runs over [0, 100]
            const double t = 100.0 * static_cast<double>(i) / static_cast<double>(n_samples - 1);
            double v = 0.0;
            switch (kinds[c]) {
                case SourceKind::sine: v = std::sin(2.0 * t + phase); break;
                case SourceKind::square: v = std::sin(3.0 * t + phase) >= 0.0 ? 1.0 : -1.0; break;
                case SourceKind::sawtooth: {
                    const double x = t + phase / two_pi;
                    v = 2.0 * (x - std::floor(x)) - 1.0;
                    break;
                }
                case SourceKind::laplace: {
                    double p = 0.0;
                    while (p == 0.0) p = rng.uniform();
                    const double u = p - 0.5;  // (-0.5, 0.5)
                    v = (u < 0.0 ? 1.0 : -1.0) * std::log(1.0 - 2.0 * std::abs(u));
                    break;
                }
            }
            s(i, c) = v;
        }
    }

    // Standardize each column (population variance).
    for (std::size_t c = 0; c < s.cols(); ++c) {
        double mean = 0.0;
        for (std::size_t i = 0; i < n_samples; ++i) mean += s(i, c);
        mean /= static_cast<double>(n_samples);
        double var = 0.0;
        for (std::size_t i = 0; i < n_samples; ++i) {
            s(i, c) -= mean;
            var += s(i, c) * s(i, c);
        }
        const double sd = std::sqrt(var / static_cast<double>(n_samples));
        for (std::size_t i = 0; i < n_samples; ++i) s(i, c) /= sd;
    }
    return s;
}

}  // namespace markica::data
