#include <doctest.h>

#include "markica/fetch.hpp"

#include <httplib.h>

#include <filesystem>
#include <fstream>
#include <map>
#include <sstream>
#include <string>
#include <thread>

#include <unistd.h>

using namespace markica::fetch;
namespace fs = std::filesystem;

namespace {

std::string rows_text(std::size_t n, bool header) {
    std::string s = header ? "a,b,c\n" : "";
    for (std::size_t i = 0; i < n; ++i) s += std::to_string(i) + ",1,2\n";
    return s;
}

// Serves uci_files() paths from memory on a loopback port.
class FakeMirror {
public:
    explicit FakeMirror(std::map<std::string, std::string> files) : files_(std::move(files)) {
        server_.Get(".*", [this](const httplib::Request& req, httplib::Response& res) {
            auto it = files_.find(req.path);
            if (it == files_.end()) {
                res.status = 404;
                return;
            }
            res.set_content(it->second, "text/plain");
        });
        port_ = server_.bind_to_any_port("127.0.0.1");
        thread_ = std::thread([this] { server_.listen_after_bind(); });
        server_.wait_until_ready();
    }
    ~FakeMirror() {
        server_.stop();
        thread_.join();
    }
    std::string url() const { return "http://127.0.0.1:" + std::to_string(port_); }

private:
    std::map<std::string, std::string> files_;
    httplib::Server server_;
    int port_ = 0;
    std::thread thread_;
};

std::map<std::string, std::string> good_files() {
    std::map<std::string, std::string> m;
    for (const auto& f : uci_files()) m[f.path] = rows_text(f.expected_rows, f.header);
    return m;
}

struct TempDir {
    fs::path path;
    TempDir() {
        static int counter = 0;
        path = fs::temp_directory_path() /
               ("markica-fetch-" + std::to_string(::getpid()) + "-" + std::to_string(counter++));
        fs::remove_all(path);
    }
    ~TempDir() { fs::remove_all(path); }
};

}  // namespace

TEST_CASE("count_rows") {
    CHECK(count_rows("", false) == 0);
    CHECK(count_rows("1,2\n3,4\n", false) == 2);
    CHECK(count_rows("1,2\r\n3,4", false) == 2);
    CHECK(count_rows("h1,h2\n1,2\n\n3,4\n  \n", true) == 2);
}

TEST_CASE("uci file table") {
    std::size_t total = 0;
    for (const auto& f : uci_files()) total += f.expected_rows;
    CHECK(uci_files().size() == 5);
    CHECK(total == 195 + 306 + 299 + 80 + 187);
}

TEST_CASE("fetch_all downloads, verifies and copies the bundled snapshot") {
    FakeMirror mirror(good_files());
    TempDir out;
    TempDir bundled;
    fs::create_directories(bundled.path);
    std::ofstream(bundled.path / "breast_cancer.csv") << "x,target\n1,0\n";

    std::vector<std::string> log;
    fetch_all(out.path, bundled.path, mirror.url(), [&](const std::string& l) { log.push_back(l); });
    for (const auto& f : uci_files()) {
        REQUIRE(fs::exists(out.path / f.local_name));
        std::ifstream in(out.path / f.local_name, std::ios::binary);
        std::stringstream ss;
        ss << in.rdbuf();
        CHECK(count_rows(ss.str(), f.header) == f.expected_rows);
    }
    CHECK(fs::exists(out.path / "breast_cancer.csv"));
    CHECK_FALSE(log.empty());
}

TEST_CASE("fetch_all rejects a file with the wrong row count") {
    auto files = good_files();
    const auto& bad = uci_files()[1];
    files[bad.path] = rows_text(bad.expected_rows - 1, bad.header);
    FakeMirror mirror(files);
    TempDir out;
    try {
        fetch_all(out.path, out.path, mirror.url());
        FAIL("expected an exception");
    } catch (const std::runtime_error& e) {
        CHECK(std::string(e.what()).find("expected " + std::to_string(bad.expected_rows)) !=
              std::string::npos);
    }
    CHECK_FALSE(fs::exists(out.path / bad.local_name));
}

TEST_CASE("fetch_all reports HTTP errors") {
    auto files = good_files();
    files.erase(uci_files()[0].path);
    FakeMirror mirror(files);
    TempDir out;
    CHECK_THROWS_WITH_AS(fetch_all(out.path, out.path, mirror.url()),
                         doctest::Contains("HTTP 404"), std::runtime_error);
}
