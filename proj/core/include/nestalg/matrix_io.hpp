#ifndef NESTALG_MATRIX_IO_HPP_
#define NESTALG_MATRIX_IO_HPP_

#include <filesystem>
#include <iosfwd>
#include <string>
#include <string_view>

#include "nestalg/linalg.hpp"

namespace nestalg {

// "cmx v1": first line `rows cols`, then rows*cols lines `re im`, row-major.
// Numbers are written in shortest round-trip form, so reading back a written
// file reproduces every double bit-exactly.
void write_cmx(std::ostream& out, const ComplexMatrix& m);
ComplexMatrix read_cmx(std::istream& in);
void save_cmx(const std::filesystem::path& path, const ComplexMatrix& m);
ComplexMatrix load_cmx(const std::filesystem::path& path);

// Shortest decimal text that parses back to exactly `x`.
std::string format_double(double x);
double parse_double(std::string_view text);

}  // namespace nestalg

#endif  // NESTALG_MATRIX_IO_HPP_
