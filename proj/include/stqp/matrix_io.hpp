#pragma once

#include <filesystem>
#include <iosfwd>
#include <vector>

#include "stqp/linalg.hpp"

namespace stqp {

// Text format: line 1 holds the integer n, the next n lines hold n
// whitespace-separated decimal floats each (full matrix, symmetric
// within 1e-9 relative). Writers emit 17 significant digits.
SymMatrix read_matrix(std::istream& in, const std::string& context = "<stream>");
SymMatrix read_matrix_file(const std::filesystem::path& path);
void write_matrix(std::ostream& out, const SymMatrix& q);
void write_matrix_file(const std::filesystem::path& path, const SymMatrix& q);

// Vectors are plain whitespace-separated decimals; the count defines n.
std::vector<double> read_vector(std::istream& in, const std::string& context = "<stream>");
std::vector<double> read_vector_file(const std::filesystem::path& path);

// 17-significant-digit decimal rendering used by every writer.
std::string format_double(double v);

}  // namespace stqp
