#include "qpromo/csv.hpp"

#include <charconv>
#include <sstream>

#include "qpromo/errors.hpp"
#include "qpromo/rng.hpp"

namespace qpromo {

std::string format_double(double v) {
  char buf[32];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), v);
  if (ec != std::errc())
    throw ParameterError("format_double: value does not fit buffer");
  return std::string(buf, ptr);
}

CsvWriter::CsvWriter(const std::filesystem::path& path,
                     const std::vector<std::string>& header)
    : out_(path), columns_(header.size()) {
  if (!out_) throw ParseError("CsvWriter: cannot open " + path.string());
  write_row(header);
}

void CsvWriter::write_row(const std::vector<std::string>& fields) {
  if (fields.size() != columns_)
    throw DimensionError("CsvWriter: row has " + std::to_string(fields.size()) +
                         " fields, expected " + std::to_string(columns_));
  for (size_t i = 0; i < fields.size(); ++i) {
    if (i) out_ << ',';
    out_ << fields[i];
  }
  out_ << '\n';
}

CsvTable read_csv(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("read_csv: cannot open " + path);
  CsvTable table;
  std::string line;
  auto split = [](const std::string& s) {
    std::vector<std::string> fields;
    std::string field;
    std::istringstream ss(s);
    while (std::getline(ss, field, ',')) fields.push_back(field);
    if (!s.empty() && s.back() == ',') fields.emplace_back();
    return fields;
  };
  if (!std::getline(in, line))
    throw ParseError("read_csv: " + path + " is empty");
  table.header = split(line);
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    auto fields = split(line);
    if (fields.size() != table.header.size())
      throw ParseError("read_csv: " + path + ": row with " +
                       std::to_string(fields.size()) + " fields, expected " +
                       std::to_string(table.header.size()));
    table.rows.push_back(std::move(fields));
  }
  return table;
}

std::string file_digest(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ParseError("file_digest: cannot open " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  const std::string bytes = ss.str();
  const std::uint64_t h = fnv1a64(bytes);
  char buf[17];
  static const char* hex = "0123456789abcdef";
  for (int i = 0; i < 16; ++i) buf[i] = hex[(h >> (60 - 4 * i)) & 0xf];
  buf[16] = '\0';
  return std::string(buf);
}

}  // namespace qpromo
