#pragma once

#include <string>
#include <vector>

#include "qcalab/complex_matrix.hpp"

namespace qcalab {

/// Shortest round-trip decimal for a double (regression-stable).
std::string format_double(double v);

/// One CSV line, RFC-4180 dialect (fields quoted only when needed).
std::string csv_line(const std::vector<std::string>& fields);

void write_text_file(const std::string& path, const std::string& content);
std::string read_text_file(const std::string& path);

std::vector<std::vector<std::string>> parse_csv(const std::string& text);

std::string matrix_to_csv(const ComplexMatrix& m);
std::string real_matrix_to_csv(const std::vector<double>& row_major, std::size_t n);

}  // namespace qcalab
