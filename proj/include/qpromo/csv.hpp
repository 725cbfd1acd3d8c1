#pragma once

#include <cstdint>
#include <filesystem>
#include <fstream>
#include <string>
#include <vector>

namespace qpromo {

// Shortest round-trip decimal form of v (std::to_chars), so that rewriting
// a parsed file reproduces it byte for byte.
std::string format_double(double v);

// Minimal CSV writer: comma separated, '\n' line endings, no quoting. All
// fields written by this project (ids, labels, numbers) are comma-free.
class CsvWriter {
 public:
  CsvWriter(const std::filesystem::path& path,
            const std::vector<std::string>& header);
  void write_row(const std::vector<std::string>& fields);

 private:
  std::ofstream out_;
  size_t columns_;
};

struct CsvTable {
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;
};

CsvTable read_csv(const std::string& path);

// FNV-1a digest of a file's bytes, hex encoded; recorded in run manifests.
std::string file_digest(const std::string& path);

}  // namespace qpromo
