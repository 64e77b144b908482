#ifndef MARKICA_FETCH_HPP
#define MARKICA_FETCH_HPP

#include <filesystem>
#include <functional>
#include <string>
#include <string_view>
#include <vector>

namespace markica::fetch {

inline constexpr std::string_view kUciBase = "https://archive.ics.uci.edu";

struct RemoteFile {
    std::string path;        // on the server, relative to the base URL
    std::string local_name;  // inside the data directory
    std::size_t expected_rows;
    bool header;
};

// The UCI files used by the standard datasets.
const std::vector<RemoteFile>& uci_files();

// Data rows in `text` (non-blank lines, minus the header line if present).
std::size_t count_rows(std::string_view text, bool header);

// Downloads every uci_files() entry from `base_url` into data_dir after
// checking its row count, then copies the bundled breast-cancer snapshot
// from bundled_dir. Throws std::runtime_error on HTTP failure or a row
// count mismatch; nothing is written for a file that fails verification.
void fetch_all(const std::filesystem::path& data_dir, const std::filesystem::path& bundled_dir,
               std::string_view base_url = kUciBase,
               const std::function<void(const std::string&)>& log = {});

}  // namespace markica::fetch

#endif
