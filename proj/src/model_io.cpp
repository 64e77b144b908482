// Text serialization for fitted FastICA models.
//
//   markica-fastica 1
//   n_components <k>
//   cols <d>
//   fun <name>
//   seed <integer>
//   n_iter <integer>
//   converged <0|1>
//   mean
//   <d values>
//   K
//   <k lines of d values>
//   W
//   <k lines of k values>
//
// Values are space separated, printed with %.17g.

#include "markica/errors.hpp"
#include "markica/fastica.hpp"

#include <charconv>
#include <cstdio>
#include <cstdlib>
#include <istream>
#include <ostream>
#include <sstream>
#include <string>

namespace markica::fastica {

namespace {

constexpr const char* kMagic = "markica-fastica";

void write_row(std::ostream& out, std::span<const double> row) {
    char buf[32];
    for (std::size_t j = 0; j < row.size(); ++j) {
        std::snprintf(buf, sizeof buf, "%.17g", row[j]);
        if (j) out << ' ';
        out << buf;
    }
    out << '\n';
}

struct LineReader {
    std::istream& in;
    int line_no = 0;

    std::string next() {
        std::string line;
        if (!std::getline(in, line)) fail("unexpected end of input");
        ++line_no;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        return line;
    }

    [[noreturn]] void fail(const std::string& what) const {
        throw DataError("model file line " + std::to_string(line_no) + ": " + what);
    }

    std::string keyed(const std::string& key) {
        const auto line = next();
        if (line.rfind(key + ' ', 0) != 0) fail("expected '" + key + "'");
        return line.substr(key.size() + 1);
    }

    void literal(const std::string& word) {
        if (next() != word) fail("expected '" + word + "'");
    }

    std::uint64_t integer(const std::string& key) {
        const auto text = keyed(key);
        std::uint64_t v = 0;
        auto [p, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
        if (ec != std::errc{} || p != text.data() + text.size()) fail("bad integer for " + key);
        return v;
    }

    void values(std::span<double> dst) {
        const auto line = next();
        const char* p = line.c_str();
        for (double& d : dst) {
            char* end = nullptr;
            d = std::strtod(p, &end);
            if (end == p) fail("expected " + std::to_string(dst.size()) + " values");
            p = end;
        }
        while (*p == ' ') ++p;
        if (*p != '\0') fail("trailing data");
    }
};

}  // namespace

void write_model(std::ostream& out, const FastIcaModel& model) {
    out << kMagic << " 1\n";
    out << "n_components " << model.n_components() << '\n';
    out << "cols " << model.n_features() << '\n';
    out << "fun " << model.fun.name() << '\n';
    out << "seed " << model.seed << '\n';
    out << "n_iter " << model.n_iter << '\n';
    out << "converged " << (model.converged ? 1 : 0) << '\n';
    out << "mean\n";
    write_row(out, model.mean);
    out << "K\n";
    for (std::size_t i = 0; i < model.whitening.rows(); ++i) write_row(out, model.whitening.row(i));
    out << "W\n";
    for (std::size_t i = 0; i < model.unmixing.rows(); ++i) write_row(out, model.unmixing.row(i));
}

FastIcaModel read_model(std::istream& in) {
    LineReader r{in};
    if (r.next() != std::string(kMagic) + " 1") r.fail("not a markica-fastica v1 model");

    const auto k = r.integer("n_components");
    const auto d = r.integer("cols");
    if (k == 0 || d == 0) r.fail("empty model");

    FastIcaModel m;
    try {
        m.fun = ContrastFunction(r.keyed("fun"));
    } catch (const std::invalid_argument& e) {
        r.fail(e.what());
    }
    m.seed = r.integer("seed");
    m.n_iter = static_cast<int>(r.integer("n_iter"));
    m.converged = r.integer("converged") != 0;

    r.literal("mean");
    m.mean.assign(d, 0.0);
    r.values(m.mean);

    r.literal("K");
    m.whitening = Matrix(k, d);
    for (std::size_t i = 0; i < k; ++i) r.values(m.whitening.row(i));

    r.literal("W");
    m.unmixing = Matrix(k, k);
    for (std::size_t i = 0; i < k; ++i) r.values(m.unmixing.row(i));
    return m;
}

}  // namespace markica::fastica
