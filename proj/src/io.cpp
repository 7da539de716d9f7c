#include "pstab/io.hpp"

#include <array>
#include <bit>
#include <charconv>
#include <cmath>
#include <cstdint>
#include <cstring>
#include <fstream>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include "pstab/error.hpp"

static_assert(std::endian::native == std::endian::little,
              "binary matrix format assumes a little-endian host");

namespace pstab {

namespace {

constexpr std::array<char, 4> kMatrixMagic = {'P', 'S', 'T', 'B'};
constexpr std::uint32_t kMatrixVersion = 1;

double parse_double(const std::string& token, std::size_t line, std::size_t col) {
  double value = 0.0;
  const char* begin = token.data();
  const char* end = begin + token.size();
  // from_chars does not skip whitespace.
  while (begin < end && (*begin == ' ' || *begin == '\t')) ++begin;
  while (end > begin && (end[-1] == ' ' || end[-1] == '\t' || end[-1] == '\r')) --end;
  const auto res = std::from_chars(begin, end, value);
  if (res.ec != std::errc() || res.ptr != end || begin == end) {
    fail_data("parse error: row " + std::to_string(line) + ", column " +
              std::to_string(col) + ": cannot parse \"" + token + "\" as a number");
  }
  if (!std::isfinite(value)) {
    fail_data("validation error: row " + std::to_string(line) + ", column " +
              std::to_string(col) + ": non-finite value");
  }
  return value;
}

Matrix load_matrix_csv(const std::string& path, std::istream& in) {
  std::string line;
  std::size_t declared_rows = 0, declared_cols = 0;
  bool has_header = false;

  std::vector<double> values;
  std::size_t cols = 0;
  std::size_t data_row = 0;
  std::size_t line_no = 0;

  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line_no == 1 && !line.empty() && line[0] == '#') {
      std::istringstream hs(line.substr(1));
      if (!(hs >> declared_rows >> declared_cols)) {
        fail_data("format error: " + path + ": malformed header line \"" + line +
                  "\" (expected \"# rows cols\")");
      }
      has_header = true;
      continue;
    }
    if (line.empty()) continue;

    ++data_row;
    std::size_t col = 0;
    std::size_t start = 0;
    while (true) {
      const std::size_t comma = line.find(',', start);
      const std::string token = line.substr(
          start, comma == std::string::npos ? std::string::npos : comma - start);
      ++col;
      values.push_back(parse_double(token, data_row, col));
      if (comma == std::string::npos) break;
      start = comma + 1;
    }
    if (data_row == 1) {
      cols = col;
    } else if (col != cols) {
      fail_data("format error: " + path + ": row " + std::to_string(data_row) +
                " has " + std::to_string(col) + " columns, expected " +
                std::to_string(cols));
    }
  }

  if (data_row == 0) {
    fail_data("format error: " + path + ": no data rows");
  }
  if (has_header && (declared_rows != data_row || declared_cols != cols)) {
    fail_data("format error: " + path + ": header declares " +
              std::to_string(declared_rows) + "x" + std::to_string(declared_cols) +
              " but file contains " + std::to_string(data_row) + "x" +
              std::to_string(cols));
  }
  return Matrix(data_row, cols, std::move(values));
}

template <typename T>
void read_exact(std::istream& in, T* out, std::size_t count, const std::string& path) {
  in.read(reinterpret_cast<char*>(out), static_cast<std::streamsize>(sizeof(T) * count));
  if (static_cast<std::size_t>(in.gcount()) != sizeof(T) * count) {
    fail_data("format error: " + path + ": truncated file");
  }
}

Matrix load_matrix_binary(const std::string& path, std::istream& in) {
  std::array<char, 4> magic{};
  read_exact(in, magic.data(), magic.size(), path);
  if (magic != kMatrixMagic) {
    fail_data("format error: " + path + ": bad magic bytes (expected PSTB)");
  }
  std::uint32_t version = 0;
  read_exact(in, &version, 1, path);
  if (version != kMatrixVersion) {
    fail_data("format error: " + path + ": unsupported version " +
              std::to_string(version));
  }
  std::uint64_t rows = 0, cols = 0;
  read_exact(in, &rows, 1, path);
  read_exact(in, &cols, 1, path);
  if (rows == 0 || cols == 0) {
    fail_data("format error: " + path + ": empty matrix dimensions");
  }
  Matrix m(static_cast<std::size_t>(rows), static_cast<std::size_t>(cols));
  read_exact(in, m.values.data(), m.values.size(), path);
  if (!m.all_finite()) {
    fail_data("validation error: " + path + ": non-finite value in matrix");
  }
  return m;
}

}  // namespace

MatrixFormat matrix_format_from_name(const std::string& name) {
  if (name == "auto") return MatrixFormat::autodetect;
  if (name == "csv") return MatrixFormat::csv;
  if (name == "binary") return MatrixFormat::binary;
  fail_data("configuration error: unknown matrix format \"" + name +
            "\" (expected csv, binary or auto)");
}

const char* matrix_format_name(MatrixFormat format) {
  switch (format) {
    case MatrixFormat::autodetect: return "auto";
    case MatrixFormat::csv: return "csv";
    case MatrixFormat::binary: return "binary";
  }
  return "auto";
}

Matrix load_matrix(const std::string& path, MatrixFormat format) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    fail_data("data error: cannot open " + path);
  }
  if (format == MatrixFormat::autodetect) {
    std::array<char, 4> head{};
    in.read(head.data(), head.size());
    const bool is_binary =
        in.gcount() == 4 && head == kMatrixMagic;
    in.clear();
    in.seekg(0);
    format = is_binary ? MatrixFormat::binary : MatrixFormat::csv;
  }
  return format == MatrixFormat::binary ? load_matrix_binary(path, in)
                                        : load_matrix_csv(path, in);
}

void write_matrix(const Matrix& m, const std::string& path, MatrixFormat format) {
  if (m.rows == 0 || m.cols == 0) {
    fail_data("validation error: refusing to write empty matrix to " + path);
  }
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) {
    fail_data("data error: cannot open " + path + " for writing");
  }
  if (format == MatrixFormat::binary || format == MatrixFormat::autodetect) {
    out.write(kMatrixMagic.data(), kMatrixMagic.size());
    out.write(reinterpret_cast<const char*>(&kMatrixVersion), sizeof(kMatrixVersion));
    const std::uint64_t rows = m.rows, cols = m.cols;
    out.write(reinterpret_cast<const char*>(&rows), sizeof(rows));
    out.write(reinterpret_cast<const char*>(&cols), sizeof(cols));
    out.write(reinterpret_cast<const char*>(m.values.data()),
              static_cast<std::streamsize>(sizeof(double) * m.values.size()));
  } else {
    out << "# " << m.rows << " " << m.cols << "\n";
    char buf[64];
    for (std::size_t i = 0; i < m.rows; ++i) {
      for (std::size_t j = 0; j < m.cols; ++j) {
        std::snprintf(buf, sizeof(buf), "%.17g", m.at(i, j));
        out << (j ? "," : "") << buf;
      }
      out << "\n";
    }
  }
  if (!out) {
    fail_data("data error: failed while writing " + path);
  }
}

Labels load_labels(const std::string& path) {
  std::ifstream in(path);
  if (!in) {
    fail_data("data error: cannot open " + path);
  }
  std::vector<long long> raw;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    long long id = 0;
    const char* begin = line.data();
    const char* end = begin + line.size();
    while (begin < end && (*begin == ' ' || *begin == '\t')) ++begin;
    while (end > begin && (end[-1] == ' ' || end[-1] == '\t')) --end;
    const auto res = std::from_chars(begin, end, id);
    if (res.ec != std::errc() || res.ptr != end || begin == end) {
      fail_data("parse error: " + path + ": row " + std::to_string(line_no) +
                ": cannot parse \"" + line + "\" as an integer label");
    }
    if (id < 0) {
      fail_data("validation error: " + path + ": row " + std::to_string(line_no) +
                ": negative class id " + std::to_string(id));
    }
    raw.push_back(id);
  }
  if (raw.empty()) {
    fail_data("format error: " + path + ": empty label file");
  }

  std::map<long long, int> remap;
  for (long long id : raw) remap.emplace(id, 0);
  int next = 0;
  for (auto& [orig, mapped] : remap) mapped = next++;

  Labels labels;
  labels.class_count = next;
  labels.values.reserve(raw.size());
  for (long long id : raw) labels.values.push_back(remap[id]);
  labels.original_ids.resize(static_cast<std::size_t>(next));
  for (const auto& [orig, mapped] : remap) {
    labels.original_ids[static_cast<std::size_t>(mapped)] = orig;
  }
  return labels;
}

void write_labels(const Labels& labels, const std::string& path) {
  std::ofstream out(path, std::ios::trunc);
  if (!out) {
    fail_data("data error: cannot open " + path + " for writing");
  }
  for (int v : labels.values) out << v << "\n";
  if (!out) {
    fail_data("data error: failed while writing " + path);
  }
}

}  // namespace pstab
