#include "nestalg/matrix_io.hpp"

#include <array>
#include <charconv>
#include <cmath>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>

#include "nestalg/errors.hpp"

namespace nestalg {
namespace {

std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

// Splits on runs of blanks.
std::vector<std::string_view> fields(std::string_view line) {
  std::vector<std::string_view> out;
  std::size_t pos = 0;
  while (pos < line.size()) {
    const auto start = line.find_first_not_of(" \t\r", pos);
    if (start == std::string_view::npos) break;
    auto end = line.find_first_of(" \t\r", start);
    if (end == std::string_view::npos) end = line.size();
    out.push_back(line.substr(start, end - start));
    pos = end;
  }
  return out;
}

Index parse_size(std::string_view text) {
  Index value = 0;
  const auto [ptr, ec] =
      std::from_chars(text.data(), text.data() + text.size(), value);
  if (ec != std::errc() || ptr != text.data() + text.size()) {
    throw FormatError("expected a non-negative integer, got '" +
                      std::string(text) + "'");
  }
  return value;
}

}  // namespace

std::string format_double(double x) {
  std::array<char, 32> buf{};
  const auto [ptr, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), x);
  if (ec != std::errc()) throw FormatError("cannot format number");
  return {buf.data(), ptr};
}

double parse_double(std::string_view text) {
  text = trim(text);
  double value = 0.0;
  const auto [ptr, ec] =
      std::from_chars(text.data(), text.data() + text.size(), value);
  if (ec != std::errc() || ptr != text.data() + text.size() ||
      !std::isfinite(value)) {
    throw FormatError("expected a finite decimal number, got '" +
                      std::string(text) + "'");
  }
  return value;
}

void write_cmx(std::ostream& out, const ComplexMatrix& m) {
  out << m.rows() << ' ' << m.cols() << '\n';
  for (const Complex& z : m.entries()) {
    out << format_double(z.real()) << ' ' << format_double(z.imag()) << '\n';
  }
}

ComplexMatrix read_cmx(std::istream& in) {
  std::string line;
  if (!std::getline(in, line)) throw FormatError("cmx: missing header line");
  const auto header = fields(line);
  if (header.size() != 2) throw FormatError("cmx: header must be 'rows cols'");
  const Index rows = parse_size(header[0]);
  const Index cols = parse_size(header[1]);
  if (rows == 0 || cols == 0) throw FormatError("cmx: dimensions must be positive");

  std::vector<Complex> entries;
  entries.reserve(rows * cols);
  Index line_no = 1;
  while (entries.size() < rows * cols && std::getline(in, line)) {
    ++line_no;
    const auto parts = fields(line);
    if (parts.empty()) continue;
    if (parts.size() != 2) {
      throw FormatError("cmx: line " + std::to_string(line_no) +
                        " must hold 're im'");
    }
    entries.emplace_back(parse_double(parts[0]), parse_double(parts[1]));
  }
  if (entries.size() != rows * cols) {
    throw FormatError("cmx: expected " + std::to_string(rows * cols) +
                      " entries, found " + std::to_string(entries.size()));
  }
  while (std::getline(in, line)) {
    if (!trim(line).empty()) throw FormatError("cmx: trailing content");
  }
  return {rows, cols, std::move(entries)};
}

void save_cmx(const std::filesystem::path& path, const ComplexMatrix& m) {
  std::ofstream out(path);
  if (!out) throw FormatError("cannot open " + path.string() + " for writing");
  write_cmx(out, m);
}

ComplexMatrix load_cmx(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw FormatError("cannot open " + path.string());
  return read_cmx(in);
}

}  // namespace nestalg
