#include "stqp/matrix_io.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>

namespace stqp {

std::string format_double(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

SymMatrix read_matrix(std::istream& in, const std::string& context) {
    long long n = 0;
    if (!(in >> n)) throw DataError(context + ": expected dimension on line 1");
    if (n < 1) throw DataError(context + ": dimension must be >= 1");
    if (n > SymMatrix::max_dim) {
        throw SolverError(context + ": dimension " + std::to_string(n) + " exceeds cap " +
                          std::to_string(SymMatrix::max_dim));
    }
    std::vector<std::vector<double>> rows(static_cast<std::size_t>(n),
                                          std::vector<double>(static_cast<std::size_t>(n)));
    for (auto& row : rows) {
        for (double& v : row) {
            if (!(in >> v)) throw DataError(context + ": truncated or non-numeric matrix data");
            if (!std::isfinite(v)) throw DataError(context + ": non-finite matrix entry");
        }
    }
    try {
        return SymMatrix::from_rows(rows);
    } catch (const DataError& e) {
        throw DataError(context + ": " + e.what());
    }
}

SymMatrix read_matrix_file(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw DataError("cannot open matrix file " + path.string());
    return read_matrix(in, path.string());
}

void write_matrix(std::ostream& out, const SymMatrix& q) {
    const int n = q.dim();
    out << n << '\n';
    for (int k = 0; k < n; ++k) {
        for (int l = 0; l < n; ++l) {
            if (l) out << ' ';
            out << format_double(q(k, l));
        }
        out << '\n';
    }
}

void write_matrix_file(const std::filesystem::path& path, const SymMatrix& q) {
    std::ofstream out(path);
    if (!out) throw DataError("cannot open " + path.string() + " for writing");
    write_matrix(out, q);
    out.flush();
    if (!out) throw DataError("write failed for " + path.string());
}

std::vector<double> read_vector(std::istream& in, const std::string& context) {
    std::vector<double> v;
    double x = 0.0;
    while (in >> x) {
        if (!std::isfinite(x)) throw DataError(context + ": non-finite vector entry");
        v.push_back(x);
    }
    if (v.empty()) throw DataError(context + ": no numeric data");
    return v;
}

std::vector<double> read_vector_file(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw DataError("cannot open vector file " + path.string());
    return read_vector(in, path.string());
}

}  // namespace stqp
