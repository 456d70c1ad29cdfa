#pragma once

#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace stqp {

// Malformed input data (files, serialized models, asymmetric matrices).
class DataError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Solver resource caps (dimension limits, enumeration bounds).
class SolverError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Dense symmetric matrix, row-major. The upper triangle is authoritative;
// the lower triangle is an exact mirror maintained by all mutators.
class SymMatrix {
public:
    static constexpr int max_dim = 512;

    explicit SymMatrix(int n);
    static SymMatrix identity(int n);
    static SymMatrix all_ones(int n);

    // Builds from a full row-major matrix. Entries asymmetric beyond
    // 1e-9 relative are rejected; smaller discrepancies are resolved in
    // favour of the upper triangle.
    static SymMatrix from_rows(const std::vector<std::vector<double>>& rows);

    int dim() const { return n_; }

    double operator()(int k, int l) const { return data_[static_cast<std::size_t>(k) * n_ + l]; }

    void set(int k, int l, double v) {
        data_[static_cast<std::size_t>(k) * n_ + l] = v;
        data_[static_cast<std::size_t>(l) * n_ + k] = v;
    }

    std::span<const double> row(int k) const {
        return {data_.data() + static_cast<std::size_t>(k) * n_, static_cast<std::size_t>(n_)};
    }

    const std::vector<double>& data() const { return data_; }

    SymMatrix operator+(const SymMatrix& rhs) const;
    SymMatrix operator-(const SymMatrix& rhs) const;
    SymMatrix scaled(double factor) const;

    // this + factor * I
    SymMatrix plus_scaled_identity(double factor) const;

    double max_entry() const;

private:
    int n_;
    std::vector<double> data_;
};

// Point on the standard simplex: nonnegative coordinates summing to one.
// Construction renormalizes; coordinates in [-1e-12, 0) are clamped to
// zero and larger violations (or a sum off by more than 1e-9) throw.
class SimplexPoint {
public:
    explicit SimplexPoint(std::vector<double> coords);

    // Divides nonnegative weights by their (positive) sum. Used for
    // generated points whose raw sum is not yet close to one.
    static SimplexPoint normalized(std::vector<double> weights);

    static SimplexPoint barycenter(int n);
    static SimplexPoint vertex(int n, int i);

    int dim() const { return static_cast<int>(coords_.size()); }
    double operator[](int i) const { return coords_[i]; }
    const std::vector<double>& coords() const { return coords_; }

private:
    SimplexPoint() = default;
    std::vector<double> coords_;
};

enum class Definiteness { PositiveSemiDefinite, NegativeSemiDefinite, Indefinite };

// x'Qx evaluated as sum_k Q_kk x_k^2 + 2 sum_{k<l} Q_kl x_k x_l.
double quadratic_form(const SymMatrix& q, const SimplexPoint& x);
double quadratic_form(const SymMatrix& q, std::span<const double> x);

// Q := A + c e' + e c', so that x'Qx = x'Ax + 2 c'x on the simplex.
SymMatrix homogenize(const SymMatrix& a, const std::vector<double>& c);

struct EigExtremes {
    double lambda_min;
    double lambda_max;
};

// Smallest and largest eigenvalues via cyclic Jacobi rotations.
EigExtremes eig_extremes(const SymMatrix& q);

double frobenius_norm(const SymMatrix& q);

// PSD iff lambda_min >= -tol, NSD iff lambda_max <= tol; PSD wins the
// near-zero overlap.
Definiteness classify_definiteness(const SymMatrix& q, double tol = 1e-9);

namespace detail {

// All eigenvalues, ascending. Internal: the public surface only exposes
// the extremes, but tests check the full spectrum against the Frobenius
// norm on small matrices.
std::vector<double> jacobi_eigenvalues(const SymMatrix& q);

}  // namespace detail

}  // namespace stqp
