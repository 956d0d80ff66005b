// Copyright 2026 The SRLU Authors
// SPDX-License-Identifier: Apache-2.0

#include "file_formats.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <cstring>
#include <fstream>
#include <sstream>

namespace srlucli {

namespace {

std::string lower(std::string s) {
  std::transform(s.begin(), s.end(), s.begin(), [](unsigned char c) { return std::tolower(c); });
  return s;
}

double parse_double(const std::string& tok, const std::string& context) {
  double v = 0.0;
  const char* begin = tok.c_str();
  const char* end = begin + tok.size();
  if (begin != end && *begin == '+') ++begin;  // from_chars rejects a leading +
  auto res = std::from_chars(begin, end, v);
  if (res.ec != std::errc{} || res.ptr != end)
    throw FileParseError("bad numeric value '" + tok + "' in " + context);
  if (!std::isfinite(v)) throw FileParseError("non-finite value '" + tok + "' in " + context);
  return v;
}

std::uint64_t parse_index(const std::string& tok, const std::string& context) {
  std::uint64_t v = 0;
  auto res = std::from_chars(tok.c_str(), tok.c_str() + tok.size(), v);
  if (res.ec != std::errc{} || res.ptr != tok.c_str() + tok.size())
    throw FileParseError("bad index '" + tok + "' in " + context);
  return v;
}

// Next non-comment, non-blank line.
bool next_content_line(std::istream& in, std::string& line) {
  while (std::getline(in, line)) {
    std::size_t i = 0;
    while (i < line.size() && std::isspace(static_cast<unsigned char>(line[i]))) ++i;
    if (i == line.size()) continue;
    if (line[i] == '%') continue;
    return true;
  }
  return false;
}

std::vector<std::string> split_ws(const std::string& line) {
  std::vector<std::string> out;
  std::istringstream ss(line);
  std::string tok;
  while (ss >> tok) out.push_back(tok);
  return out;
}

LoadedMatrix load_matrix_market(std::istream& in, const std::string& header,
                                const std::string& path) {
  const std::vector<std::string> head = split_ws(lower(header));
  if (head.size() < 4 || head[0] != "%%matrixmarket" || head[1] != "matrix")
    throw FileParseError(path + ": malformed MatrixMarket header");
  const std::string& layout = head[2];
  const std::string& field = head[3];
  const std::string symmetry = head.size() > 4 ? head[4] : "general";
  if (layout != "coordinate" && layout != "array")
    throw FileParseError(path + ": unsupported layout '" + layout + "'");
  if (field != "real" && field != "integer" && field != "double")
    throw FileParseError(path + ": unsupported field '" + field + "'");
  if (symmetry != "general" && symmetry != "symmetric")
    throw FileParseError(path + ": unsupported symmetry '" + symmetry + "'");

  std::string line;
  if (!next_content_line(in, line)) throw FileParseError(path + ": missing size line");
  const std::vector<std::string> size_toks = split_ws(line);

  LoadedMatrix m;
  if (layout == "coordinate") {
    if (size_toks.size() != 3) throw FileParseError(path + ": coordinate size line needs m n nnz");
    m.rows = parse_index(size_toks[0], path);
    m.cols = parse_index(size_toks[1], path);
    const std::uint64_t nnz = parse_index(size_toks[2], path);
    if (m.rows == 0 || m.cols == 0) throw FileParseError(path + ": empty dimensions");
    m.data.assign(m.rows * m.cols, 0.0);
    for (std::uint64_t e = 0; e < nnz; ++e) {
      if (!next_content_line(in, line)) throw FileParseError(path + ": truncated entry list");
      const std::vector<std::string> toks = split_ws(line);
      if (toks.size() != 3) throw FileParseError(path + ": coordinate entry needs i j v");
      const std::uint64_t i = parse_index(toks[0], path);
      const std::uint64_t j = parse_index(toks[1], path);
      if (i < 1 || i > m.rows || j < 1 || j > m.cols)
        throw FileParseError(path + ": index out of range");
      const double v = parse_double(toks[2], path);
      m.data[(i - 1) * m.cols + (j - 1)] = v;
      if (symmetry == "symmetric" && i != j) m.data[(j - 1) * m.cols + (i - 1)] = v;
    }
  } else {
    if (size_toks.size() != 2) throw FileParseError(path + ": array size line needs m n");
    m.rows = parse_index(size_toks[0], path);
    m.cols = parse_index(size_toks[1], path);
    if (m.rows == 0 || m.cols == 0) throw FileParseError(path + ": empty dimensions");
    if (symmetry != "general") throw FileParseError(path + ": symmetric array not supported");
    m.data.assign(m.rows * m.cols, 0.0);
    // Array entries are listed column-major, possibly several per line.
    std::uint64_t filled = 0;
    const std::uint64_t total = m.rows * m.cols;
    while (filled < total) {
      if (!next_content_line(in, line)) throw FileParseError(path + ": truncated array data");
      for (const std::string& tok : split_ws(line)) {
        if (filled >= total) throw FileParseError(path + ": surplus array data");
        const std::uint64_t col = filled / m.rows;
        const std::uint64_t row = filled % m.rows;
        m.data[row * m.cols + col] = parse_double(tok, path);
        ++filled;
      }
    }
  }
  return m;
}

LoadedMatrix load_csv(std::istream& in, const std::string& first_line, const std::string& path) {
  LoadedMatrix m;
  std::string line = first_line;
  bool have_line = true;
  while (have_line) {
    std::string trimmed = line;
    while (!trimmed.empty() && (trimmed.back() == '\r' || trimmed.back() == '\n'))
      trimmed.pop_back();
    if (!trimmed.empty()) {
      std::vector<double> row;
      std::size_t start = 0;
      while (true) {
        const std::size_t comma = trimmed.find(',', start);
        std::string tok = trimmed.substr(start, comma == std::string::npos ? std::string::npos
                                                                           : comma - start);
        // allow surrounding spaces
        const std::size_t b = tok.find_first_not_of(" \t");
        const std::size_t e = tok.find_last_not_of(" \t");
        if (b == std::string::npos) throw FileParseError(path + ": empty CSV field");
        row.push_back(parse_double(tok.substr(b, e - b + 1), path));
        if (comma == std::string::npos) break;
        start = comma + 1;
      }
      if (m.cols == 0) {
        m.cols = row.size();
      } else if (row.size() != m.cols) {
        throw FileParseError(path + ": ragged CSV row");
      }
      m.data.insert(m.data.end(), row.begin(), row.end());
      ++m.rows;
    }
    have_line = static_cast<bool>(std::getline(in, line));
  }
  if (m.rows == 0) throw FileParseError(path + ": empty CSV file");
  return m;
}

void append_le_u64(std::string& buf, std::uint64_t v) {
  for (int i = 0; i < 8; ++i) buf.push_back(static_cast<char>((v >> (8 * i)) & 0xff));
}

void append_le_double(std::string& buf, double v) {
  std::uint64_t bits;
  std::memcpy(&bits, &v, sizeof(bits));
  append_le_u64(buf, bits);
}

std::uint64_t read_le_u64(const std::string& buf, std::size_t off) {
  std::uint64_t v = 0;
  for (int i = 0; i < 8; ++i)
    v |= static_cast<std::uint64_t>(static_cast<unsigned char>(buf[off + i])) << (8 * i);
  return v;
}

double read_le_double(const std::string& buf, std::size_t off) {
  const std::uint64_t bits = read_le_u64(buf, off);
  double v;
  std::memcpy(&v, &bits, sizeof(v));
  return v;
}

std::uint64_t byte_sum(const std::string& buf, std::size_t begin, std::size_t end) {
  std::uint64_t s = 0;
  for (std::size_t i = begin; i < end; ++i) s += static_cast<unsigned char>(buf[i]);
  return s;
}

constexpr char kMagic[5] = {'S', 'R', 'L', 'U', '1'};

}  // namespace

std::string format_double(double v) {
  char buf[64];
  auto res = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, res.ptr);
}

LoadedMatrix load_matrix_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw FileIoError("cannot open " + path);
  std::string first;
  if (!std::getline(in, first)) throw FileParseError(path + ": empty file");
  if (first.rfind("%%MatrixMarket", 0) == 0 || first.rfind("%%matrixmarket", 0) == 0)
    return load_matrix_market(in, first, path);
  return load_csv(in, first, path);
}

void save_matrix_market_array(const std::string& path, std::uint64_t rows, std::uint64_t cols,
                              const std::vector<double>& row_major) {
  if (row_major.size() != rows * cols) throw FileParseError("save: size mismatch");
  std::ofstream out(path);
  if (!out) throw FileIoError("cannot write " + path);
  out << "%%MatrixMarket matrix array real general\n";
  out << rows << " " << cols << "\n";
  for (std::uint64_t j = 0; j < cols; ++j)
    for (std::uint64_t i = 0; i < rows; ++i) out << format_double(row_major[i * cols + j]) << "\n";
  if (!out) throw FileIoError("write failed for " + path);
}

void save_csv(const std::string& path, std::uint64_t rows, std::uint64_t cols,
              const std::vector<double>& row_major) {
  if (row_major.size() != rows * cols) throw FileParseError("save: size mismatch");
  std::ofstream out(path);
  if (!out) throw FileIoError("cannot write " + path);
  for (std::uint64_t i = 0; i < rows; ++i) {
    for (std::uint64_t j = 0; j < cols; ++j) {
      if (j) out << ",";
      out << format_double(row_major[i * cols + j]);
    }
    out << "\n";
  }
  if (!out) throw FileIoError("write failed for " + path);
}

void save_factor_file(const std::string& path, const FactorFileData& d) {
  if (d.pi1.size() != d.m || d.pi2.size() != d.n || d.lhat.size() != d.m * d.k ||
      d.uhat.size() != d.k * d.n)
    throw FileParseError("factor data sizes are inconsistent");
  std::string buf(kMagic, sizeof(kMagic));
  append_le_u64(buf, d.m);
  append_le_u64(buf, d.n);
  append_le_u64(buf, d.k);
  append_le_u64(buf, d.b);
  for (std::uint64_t v : d.pi1) append_le_u64(buf, v);
  for (std::uint64_t v : d.pi2) append_le_u64(buf, v);
  for (double v : d.lhat) append_le_double(buf, v);
  for (double v : d.uhat) append_le_double(buf, v);
  append_le_u64(buf, byte_sum(buf, sizeof(kMagic), buf.size()));

  std::ofstream out(path, std::ios::binary);
  if (!out) throw FileIoError("cannot write " + path);
  out.write(buf.data(), static_cast<std::streamsize>(buf.size()));
  if (!out) throw FileIoError("write failed for " + path);
}

FactorFileData load_factor_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw FileIoError("cannot open " + path);
  std::string buf((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
  if (buf.size() < sizeof(kMagic) + 4 * 8 + 8 || std::memcmp(buf.data(), kMagic, sizeof(kMagic)) != 0)
    throw FileParseError(path + ": not an SRLU1 factorization file");

  std::size_t off = sizeof(kMagic);
  FactorFileData d;
  d.m = read_le_u64(buf, off); off += 8;
  d.n = read_le_u64(buf, off); off += 8;
  d.k = read_le_u64(buf, off); off += 8;
  d.b = read_le_u64(buf, off); off += 8;
  if (d.m == 0 || d.n == 0 || d.k > d.m || d.k > d.n)
    throw FileParseError(path + ": implausible dimensions");
  const std::uint64_t payload_words = d.m + d.n + d.m * d.k + d.k * d.n;
  const std::size_t expect = sizeof(kMagic) + (4 + payload_words) * 8 + 8;
  if (buf.size() != expect) throw FileParseError(path + ": truncated or oversized payload");

  d.pi1.resize(d.m);
  for (auto& v : d.pi1) { v = read_le_u64(buf, off); off += 8; }
  d.pi2.resize(d.n);
  for (auto& v : d.pi2) { v = read_le_u64(buf, off); off += 8; }
  d.lhat.resize(d.m * d.k);
  for (auto& v : d.lhat) { v = read_le_double(buf, off); off += 8; }
  d.uhat.resize(d.k * d.n);
  for (auto& v : d.uhat) { v = read_le_double(buf, off); off += 8; }

  const std::uint64_t stored = read_le_u64(buf, off);
  const std::uint64_t computed = byte_sum(buf, sizeof(kMagic), off);
  if (stored != computed) throw FileParseError(path + ": checksum mismatch");
  return d;
}

void write_pbm(const std::string& path, std::uint64_t rows, std::uint64_t cols,
               const std::function<bool(std::uint64_t, std::uint64_t)>& pred) {
  std::ofstream out(path);
  if (!out) throw FileIoError("cannot write " + path);
  out << "P1\n" << cols << " " << rows << "\n";
  for (std::uint64_t i = 0; i < rows; ++i) {
    std::size_t on_line = 0;
    for (std::uint64_t j = 0; j < cols; ++j) {
      out << (pred(i, j) ? '1' : '0');
      if (++on_line >= 64) {
        out << "\n";
        on_line = 0;
      } else if (j + 1 < cols) {
        out << ' ';
      }
    }
    if (on_line) out << "\n";
  }
  if (!out) throw FileIoError("write failed for " + path);
}

}  // namespace srlucli
