#pragma once

#include "catalog.hpp"

#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>
#include <string>

namespace testutil {

namespace fs = std::filesystem;

inline std::string read_file(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

inline void write_file(const fs::path& p, const std::string& s) {
  std::ofstream out(p, std::ios::binary);
  out << s;
}

// Scratch copy of the shipped data directory, removed on destruction.
struct TempData {
  fs::path dir;
  TempData() {
    std::random_device rd;
    dir = fs::temp_directory_path() / ("hypertope_test_" + std::to_string(rd()) + std::to_string(rd()));
    fs::create_directories(dir);
    for (const auto& e : fs::directory_iterator(ht::default_data_dir())) fs::copy_file(e.path(), dir / e.path().filename());
  }
  ~TempData() {
    std::error_code ec;
    fs::remove_all(dir, ec);
  }
  std::string path() const { return dir.string(); }
  // Rewrites SHA256SUMS so that the current file contents are trusted.
  void reseal() const {
    std::string m;
    for (const auto& e : fs::directory_iterator(dir))
      if (e.path().extension() == ".json")
        m += ht::sha256_hex(read_file(e.path())) + "  " + e.path().filename().string() + "\n";
    write_file(dir / "SHA256SUMS", m);
  }
};

}  // namespace testutil
