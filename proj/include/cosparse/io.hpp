#pragma once

#include <string>
#include <vector>

#include "cosparse/model.hpp"

namespace cosparse {

// Text matrix format: first line "rows cols", then row-major entries,
// whitespace separated, written with 17 significant digits.
std::string format_matrix(const Matrix& m);
Matrix parse_matrix(const std::string& text);
void write_matrix(const std::string& path, const Matrix& m);
Matrix read_matrix(const std::string& path);

// Signals serialize as CSV "index,value" (0-based), cosupports as "index".
std::string format_signal_csv(const Vector& x);
Vector parse_signal_csv(const std::string& text);
std::string format_index_csv(const std::vector<int>& idx);
std::vector<int> parse_index_csv(const std::string& text);

// All file output goes through a temp file + rename.
void write_file_atomic(const std::string& path, const std::string& content);
std::string read_file(const std::string& path);

// 17 significant digits; round-trips a double exactly.
std::string format_double(double v);

}  // namespace cosparse
