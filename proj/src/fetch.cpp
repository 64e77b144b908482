#include "markica/fetch.hpp"

#include <httplib.h>

#include <fstream>
#include <stdexcept>

namespace markica::fetch {

namespace fs = std::filesystem;

const std::vector<RemoteFile>& uci_files() {
    static const std::vector<RemoteFile> files = {
        {"/ml/machine-learning-databases/parkinsons/parkinsons.data", "parkinsons.data", 195, true},
        {"/ml/machine-learning-databases/haberman/haberman.data", "haberman.data", 306, false},
        {"/ml/machine-learning-databases/00519/heart_failure_clinical_records_dataset.csv",
         "heart_failure_clinical_records_dataset.csv", 299, true},
        {"/ml/machine-learning-databases/spect/SPECTF.train", "SPECTF.train", 80, false},
        {"/ml/machine-learning-databases/spect/SPECTF.test", "SPECTF.test", 187, false},
    };
    return files;
}

std::size_t count_rows(std::string_view text, bool header) {
    std::size_t rows = 0;
    std::size_t pos = 0;
    while (pos < text.size()) {
        auto end = text.find('\n', pos);
        if (end == std::string_view::npos) end = text.size();
        const auto line = text.substr(pos, end - pos);
        if (line.find_first_not_of(" \t\r") != std::string_view::npos) ++rows;
        pos = end + 1;
    }
    if (header && rows > 0) --rows;
    return rows;
}

void fetch_all(const fs::path& data_dir, const fs::path& bundled_dir, std::string_view base_url,
               const std::function<void(const std::string&)>& log) {
    fs::create_directories(data_dir);
    httplib::Client client{std::string(base_url)};
    client.set_follow_location(true);
    client.set_connection_timeout(30);
    client.set_read_timeout(60);

    for (const auto& f : uci_files()) {
        const std::string url = std::string(base_url) + f.path;
        if (log) log("GET " + url);
        auto res = client.Get(f.path);
        if (!res)
            throw std::runtime_error("fetch " + url + ": " + httplib::to_string(res.error()));
        if (res->status != 200)
            throw std::runtime_error("fetch " + url + ": HTTP " + std::to_string(res->status));
        const auto rows = count_rows(res->body, f.header);
        if (rows != f.expected_rows)
            throw std::runtime_error("fetch " + url + ": expected " + std::to_string(f.expected_rows) +
                                     " rows, got " + std::to_string(rows));
        std::ofstream out(data_dir / f.local_name, std::ios::binary);
        out << res->body;
        if (!out) throw std::runtime_error("cannot write " + (data_dir / f.local_name).string());
        if (log) log("  " + f.local_name + ": " + std::to_string(rows) + " rows");
    }

    const fs::path bundled = bundled_dir / "breast_cancer.csv";
    const fs::path target = data_dir / "breast_cancer.csv";
    if (fs::exists(bundled) && !fs::equivalent(bundled_dir, data_dir)) {
        fs::copy_file(bundled, target, fs::copy_options::overwrite_existing);
        if (log) log("  breast_cancer.csv: copied bundled snapshot");
    }
}

}  // namespace markica::fetch
