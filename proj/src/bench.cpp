#include "markica/bench.hpp"

#include "markica/metrics.hpp"
#include "markica/numlin.hpp"
#include "markica/rng.hpp"

#include <atomic>
#include <cmath>
#include <stdexcept>
#include <thread>

namespace markica::bench {

std::string_view extraction_name(Extraction e) {
    return e == Extraction::fastica_logcosh ? "fastica_logcosh" : "m_ar_k_fastica";
}

Extraction parse_extraction(std::string_view name) {
    if (name == "fastica_logcosh") return Extraction::fastica_logcosh;
    if (name == "m_ar_k_fastica") return Extraction::m_ar_k_fastica;
    throw std::invalid_argument("unknown extraction '" + std::string(name) + "'");
}

ContrastFunction extraction_contrast(Extraction e) {
    return ContrastFunction(e == Extraction::fastica_logcosh ? ContrastKind::logcosh
                                                             : ContrastKind::m_arcsinh);
}

ExtractedSplit extract(const data::Split& split, std::size_t n_components, Extraction extraction,
                       std::uint64_t seed) {
    fastica::FastIcaConfig cfg;
    cfg.n_components = n_components;
    cfg.fun = extraction_contrast(extraction);
    cfg.seed = seed;
    ExtractedSplit out;
    out.model = fastica::fit(split.train.x, cfg);
    out.features.train = {fastica::transform(out.model, split.train.x), split.train.y};
    out.features.test = {fastica::transform(out.model, split.test.x), split.test.y};
    return out;
}

namespace {

// Runs fn(i) for i in [0, n) on up to `jobs` threads. fn must not throw.
template <typename F>
void parallel_for(std::size_t n, unsigned jobs, F&& fn) {
    if (jobs <= 1 || n <= 1) {
        for (std::size_t i = 0; i < n; ++i) fn(i);
        return;
    }
    std::atomic<std::size_t> next{0};
    std::vector<std::jthread> workers;
    for (unsigned w = 0; w < std::min<std::size_t>(jobs, n); ++w)
        workers.emplace_back([&] {
            for (std::size_t i = next++; i < n; i = next++) fn(i);
        });
}

}  // namespace

std::vector<BenchmarkRow> run_benchmark(const std::vector<data::DatasetSpec>& specs,
                                        const std::filesystem::path& data_dir,
                                        const BenchConfig& config) {
    using classifier::kAllActivations;
    const std::size_t n_ext = kAllExtractions.size();
    const std::size_t n_act = kAllActivations.size();

    std::vector<BenchmarkRow> rows;
    for (const auto& spec : specs)
        for (auto e : kAllExtractions)
            for (auto a : kAllActivations) {
                BenchmarkRow r;
                r.dataset = spec.name;
                r.extraction = e;
                r.activation = a;
                rows.push_back(std::move(r));
            }
    auto row_at = [&](std::size_t d, std::size_t e, std::size_t a) -> BenchmarkRow& {
        return rows[(d * n_ext + e) * n_act + a];
    };

    // Both extraction arms of a dataset see the same partitions.
    std::vector<std::optional<data::Split>> splits(specs.size());
    for (std::size_t d = 0; d < specs.size(); ++d) {
        try {
            splits[d] = data::partition(data::load_dataset(specs[d], data_dir));
        } catch (const std::exception& ex) {
            for (std::size_t e = 0; e < n_ext; ++e)
                for (std::size_t a = 0; a < n_act; ++a) row_at(d, e, a).error = ex.what();
        }
    }

    std::vector<std::optional<ExtractedSplit>> extracted(specs.size() * n_ext);
    parallel_for(extracted.size(), config.jobs, [&](std::size_t k) {
        const std::size_t d = k / n_ext;
        const std::size_t e = k % n_ext;
        if (!splits[d]) return;
        try {
            extracted[k] = extract(*splits[d], specs[d].n_components, kAllExtractions[e], config.ica_seed);
            for (std::size_t a = 0; a < n_act; ++a) {
                row_at(d, e, a).ica_iterations = extracted[k]->model.n_iter;
                row_at(d, e, a).ica_converged = extracted[k]->model.converged;
            }
        } catch (const std::exception& ex) {
            for (std::size_t a = 0; a < n_act; ++a) row_at(d, e, a).error = ex.what();
        }
    });

    parallel_for(rows.size(), config.jobs, [&](std::size_t i) {
        BenchmarkRow& row = rows[i];
        const auto& ext = extracted[i / n_act];
        if (!ext || row.error) return;
        try {
            classifier::MlpConfig mc;
            mc.activation = row.activation;
            mc.seed = config.mlp_seed;
            mc.max_iter = config.mlp_max_iter;
            mc.early_stopping = config.early_stopping;
            const auto model = classifier::fit(ext->features.train.x, ext->features.train.y, mc);
            const auto pred = model.predict(ext->features.test.x);
            const auto s = metrics::score(ext->features.test.y, pred);
            row.training_time_s = model.fit_seconds;
            row.accuracy = s.accuracy;
            row.precision = s.precision_weighted;
            row.recall = s.recall_weighted;
            row.f1 = s.f1_weighted;
        } catch (const std::exception& ex) {
            row.error = ex.what();
        }
    });
    return rows;
}

Matrix random_mixing(std::size_t n, std::uint64_t seed, double max_condition) {
    Rng rng(seed);
    for (int attempt = 0; attempt < 10000; ++attempt) {
        Matrix a(n, n);
        for (double& v : a.values()) v = rng.uniform(-1.0, 1.0);
        const auto eig = numlin::sym_eig(numlin::matmul_at(a, a));
        if (!(eig.values.back() > 0.0)) continue;
        const double cond = std::sqrt(eig.values.front() / eig.values.back());
        if (cond < max_condition) return a;
    }
    throw std::runtime_error("random_mixing: no well-conditioned draw found");
}

BssResult bss_demo(const ContrastFunction& fun, std::uint64_t seed, std::size_t n_samples) {
    const std::array kinds = {data::SourceKind::sine, data::SourceKind::square,
                              data::SourceKind::sawtooth};
    const Matrix s = data::synth_sources(kinds, n_samples, seed);
    const Matrix a = random_mixing(kinds.size(), seed);
    const Matrix x = numlin::matmul_bt(s, a);  // rows: A * s_t

    fastica::FastIcaConfig cfg;
    cfg.n_components = kinds.size();
    cfg.fun = fun;
    cfg.seed = seed;
    const auto model = fastica::fit(x, cfg);

    BssResult r;
    r.amari = metrics::amari_index(numlin::matmul(model.components(), a));
    r.converged = model.converged;
    r.n_iter = model.n_iter;
    const auto eig = numlin::sym_eig(numlin::matmul_at(a, a));
    r.mixing_condition = std::sqrt(eig.values.front() / eig.values.back());
    return r;
}

}  // namespace markica::bench
