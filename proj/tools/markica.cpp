// markica: FastICA feature extraction and benchmark driver.
//
//   markica fetch    --data-dir <path>
//   markica extract  --dataset <name> --fun <contrast> --n-components <k> --seed <int> --out <csv>
//   markica bench    --data-dir <path> --format csv|markdown --out <path>
//   markica bss-demo --fun <contrast> --seed <int>

#include "markica/bench.hpp"
#include "markica/dataset.hpp"
#include "markica/fastica.hpp"
#include "markica/fetch.hpp"

#include <CLI11.hpp>

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>

#ifndef MARKICA_BUNDLED_DATA_DIR
#define MARKICA_BUNDLED_DATA_DIR "data"
#endif

namespace {

namespace fs = std::filesystem;
using namespace markica;

std::string default_data_dir() {
    if (const char* env = std::getenv("MARK_ICA_DATA_DIR"); env && *env) return env;
    return MARKICA_BUNDLED_DATA_DIR;
}

void write_text(const std::string& path, const std::string& text) {
    if (path.empty() || path == "-") {
        std::cout << text;
        return;
    }
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot open " + path + " for writing");
    out << text;
}

int run_extract(const std::string& data_dir, const std::string& dataset, const std::string& fun,
                std::size_t n_components, std::uint64_t seed, const std::string& out_path,
                const std::string& model_path) {
    const auto& spec = data::find_dataset(dataset);
    const auto split = data::partition(data::load_dataset(spec, data_dir));

    fastica::FastIcaConfig cfg;
    cfg.n_components = n_components ? n_components : spec.n_components;
    cfg.fun = ContrastFunction(fun);
    cfg.seed = seed;
    const auto model = fastica::fit(split.train.x, cfg);
    if (!model.converged)
        std::cerr << "warning: FastICA did not converge in " << model.n_iter << " iterations\n";

    std::string text;
    for (std::size_t j = 0; j < model.n_components(); ++j) text += "ic" + std::to_string(j) + ",";
    text += "label,partition\n";
    char buf[32];
    auto emit = [&](const data::LabeledData& part, const char* name) {
        const Matrix s = fastica::transform(model, part.x);
        for (std::size_t i = 0; i < s.rows(); ++i) {
            for (double v : s.row(i)) {
                std::snprintf(buf, sizeof buf, "%.17g,", v);
                text += buf;
            }
            text += std::to_string(part.y[i]) + "," + name + "\n";
        }
    };
    emit(split.train, "train");
    emit(split.test, "test");
    write_text(out_path, text);

    if (!model_path.empty()) {
        std::ofstream m(model_path, std::ios::binary);
        if (!m) throw std::runtime_error("cannot open " + model_path + " for writing");
        fastica::write_model(m, model);
    }
    return 0;
}

int run_bench(const std::string& data_dir, const std::string& format, const std::string& out_path,
              const bench::BenchConfig& cfg, const std::vector<std::string>& only) {
    std::vector<data::DatasetSpec> specs;
    if (only.empty()) {
        specs = data::standard_datasets();
    } else {
        for (const auto& name : only) specs.push_back(data::find_dataset(name));
    }
    const auto fmt = bench::parse_report_format(format);
    const auto rows = bench::run_benchmark(specs, data_dir, cfg);
    write_text(out_path, bench::emit_report(rows, fmt));

    int failed = 0;
    for (const auto& r : rows) {
        if (!r.error) continue;
        ++failed;
        std::cerr << "error: " << r.dataset << '/' << classifier::activation_name(r.activation) << '/'
                  << bench::extraction_name(r.extraction) << ": " << *r.error << '\n';
    }
    return failed ? 2 : 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"FastICA feature extraction with the m-arcsinh contrast, and its benchmark"};
    app.require_subcommand(1);

    std::string data_dir = default_data_dir();

    auto* fetch_cmd = app.add_subcommand("fetch", "Download the UCI dataset files");
    std::string mirror{markica::fetch::kUciBase};
    fetch_cmd->add_option("--data-dir", data_dir, "Destination directory")->capture_default_str();
    fetch_cmd->add_option("--mirror", mirror, "Base URL serving the UCI paths")->capture_default_str();

    auto* extract_cmd = app.add_subcommand("extract", "Fit FastICA on a dataset and write its components");
    std::string dataset, fun = "m_arcsinh", out_path, model_path;
    std::size_t n_components = 0;
    std::uint64_t seed = 42;
    extract_cmd->add_option("--data-dir", data_dir)->capture_default_str();
    extract_cmd->add_option("--dataset", dataset, "breast_cancer|heart_failure|haberman|parkinsons|spectf")
        ->required();
    extract_cmd->add_option("--fun", fun, "logcosh|exp|cube|m_arcsinh")->capture_default_str();
    extract_cmd->add_option("--n-components", n_components, "Defaults to the dataset's setting");
    extract_cmd->add_option("--seed", seed)->capture_default_str();
    extract_cmd->add_option("--out", out_path, "Output CSV ('-' for stdout)")->required();
    extract_cmd->add_option("--model", model_path, "Also write the fitted model here");

    auto* bench_cmd = app.add_subcommand("bench", "Run the dataset x activation x extraction benchmark");
    std::string format = "csv";
    bench::BenchConfig bcfg;
    std::vector<std::string> only;
    bench_cmd->add_option("--data-dir", data_dir)->capture_default_str();
    bench_cmd->add_option("--format", format, "csv|markdown")->capture_default_str();
    bench_cmd->add_option("--out", out_path, "Report path ('-' for stdout)")->required();
    bench_cmd->add_option("--mlp-max-iter", bcfg.mlp_max_iter)->capture_default_str();
    bench_cmd->add_option("--ica-seed", bcfg.ica_seed)->capture_default_str();
    bench_cmd->add_option("--mlp-seed", bcfg.mlp_seed)->capture_default_str();
    bench_cmd->add_option("--jobs", bcfg.jobs, "Worker threads")->capture_default_str();
    bench_cmd->add_flag("!--no-early-stopping", bcfg.early_stopping,
                        "Train every MLP for the full epoch budget or until the training loss plateaus");
    bench_cmd->add_option("--datasets", only, "Subset of datasets")->delimiter(',');

    auto* bss_cmd = app.add_subcommand("bss-demo", "Unmix three synthetic sources and print the Amari index");
    std::string bss_fun = "m_arcsinh";
    std::uint64_t bss_seed = 0;
    bss_cmd->add_option("--fun", bss_fun)->capture_default_str();
    bss_cmd->add_option("--seed", bss_seed)->capture_default_str();

    CLI11_PARSE(app, argc, argv);

    try {
        if (*fetch_cmd) {
            fetch::fetch_all(data_dir, MARKICA_BUNDLED_DATA_DIR, mirror,
                             [](const std::string& line) { std::cerr << line << '\n'; });
            return 0;
        }
        if (*extract_cmd)
            return run_extract(data_dir, dataset, fun, n_components, seed, out_path, model_path);
        if (*bench_cmd) return run_bench(data_dir, format, out_path, bcfg, only);
        if (*bss_cmd) {
            const auto r = bench::bss_demo(ContrastFunction(bss_fun), bss_seed);
            std::printf("amari_index %.6g\nconverged %s\nn_iter %d\n", r.amari,
                        r.converged ? "true" : "false", r.n_iter);
            return 0;
        }
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
    return 0;
}
