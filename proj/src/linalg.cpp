#include "stqp/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>

namespace stqp {

namespace {

void check_dim(int n) {
    if (n < 1) {
        throw std::invalid_argument("matrix dimension must be >= 1");
    }
    if (n > SymMatrix::max_dim) {
        throw SolverError("matrix dimension " + std::to_string(n) + " exceeds cap " +
                          std::to_string(SymMatrix::max_dim));
    }
}

}  // namespace

SymMatrix::SymMatrix(int n) : n_(n) {
    check_dim(n);
    data_.assign(static_cast<std::size_t>(n) * n, 0.0);
}

SymMatrix SymMatrix::identity(int n) {
    SymMatrix m(n);
    for (int i = 0; i < n; ++i) m.set(i, i, 1.0);
    return m;
}

SymMatrix SymMatrix::all_ones(int n) {
    SymMatrix m(n);
    for (int i = 0; i < n; ++i)
        for (int j = i; j < n; ++j) m.set(i, j, 1.0);
    return m;
}

SymMatrix SymMatrix::from_rows(const std::vector<std::vector<double>>& rows) {
    const int n = static_cast<int>(rows.size());
    check_dim(n);
    for (const auto& r : rows) {
        if (static_cast<int>(r.size()) != n) {
            throw DataError("matrix rows must all have length n");
        }
    }
    SymMatrix m(n);
    for (int k = 0; k < n; ++k) {
        for (int l = k; l < n; ++l) {
            const double a = rows[k][l];
            const double b = rows[l][k];
            const double scale = std::max({1.0, std::abs(a), std::abs(b)});
            if (std::abs(a - b) > 1e-9 * scale) {
                throw DataError("matrix asymmetric beyond 1e-9 relative at (" +
                                std::to_string(k) + "," + std::to_string(l) + ")");
            }
            m.set(k, l, a);
        }
    }
    return m;
}

SymMatrix SymMatrix::operator+(const SymMatrix& rhs) const {
    if (rhs.n_ != n_) throw std::invalid_argument("dimension mismatch");
    SymMatrix out(n_);
    for (std::size_t i = 0; i < data_.size(); ++i) out.data_[i] = data_[i] + rhs.data_[i];
    return out;
}

SymMatrix SymMatrix::operator-(const SymMatrix& rhs) const {
    if (rhs.n_ != n_) throw std::invalid_argument("dimension mismatch");
    SymMatrix out(n_);
    for (std::size_t i = 0; i < data_.size(); ++i) out.data_[i] = data_[i] - rhs.data_[i];
    return out;
}

SymMatrix SymMatrix::scaled(double factor) const {
    SymMatrix out(n_);
    for (std::size_t i = 0; i < data_.size(); ++i) out.data_[i] = data_[i] * factor;
    return out;
}

SymMatrix SymMatrix::plus_scaled_identity(double factor) const {
    SymMatrix out = *this;
    for (int i = 0; i < n_; ++i) out.set(i, i, (*this)(i, i) + factor);
    return out;
}

double SymMatrix::max_entry() const {
    return *std::max_element(data_.begin(), data_.end());
}

SimplexPoint::SimplexPoint(std::vector<double> coords) {
    if (coords.empty()) throw std::invalid_argument("simplex point needs n >= 1");
    double sum = 0.0;
    for (double& c : coords) {
        if (c < 0.0) {
            if (c < -1e-12) {
                throw std::invalid_argument("simplex coordinate below -1e-12: " + std::to_string(c));
            }
            c = 0.0;
        }
        sum += c;
    }
    if (std::abs(sum - 1.0) > 1e-9) {
        throw std::invalid_argument("simplex coordinates sum to " + std::to_string(sum) +
                                    ", beyond 1e-9 of 1");
    }
    for (double& c : coords) c /= sum;
    coords_ = std::move(coords);
}

SimplexPoint SimplexPoint::normalized(std::vector<double> weights) {
    if (weights.empty()) throw std::invalid_argument("simplex point needs n >= 1");
    double sum = 0.0;
    for (double& w : weights) {
        if (w < 0.0) {
            if (w < -1e-12) {
                throw std::invalid_argument("negative weight in simplex normalization");
            }
            w = 0.0;
        }
        sum += w;
    }
    if (!(sum > 0.0)) throw std::invalid_argument("cannot normalize nonpositive weight sum");
    SimplexPoint p;
    p.coords_ = std::move(weights);
    for (double& c : p.coords_) c /= sum;
    return p;
}

SimplexPoint SimplexPoint::barycenter(int n) {
    if (n < 1) throw std::invalid_argument("simplex point needs n >= 1");
    SimplexPoint p;
    p.coords_.assign(n, 1.0 / n);
    return p;
}

SimplexPoint SimplexPoint::vertex(int n, int i) {
    if (n < 1 || i < 0 || i >= n) throw std::invalid_argument("vertex index out of range");
    SimplexPoint p;
    p.coords_.assign(n, 0.0);
    p.coords_[i] = 1.0;
    return p;
}

double quadratic_form(const SymMatrix& q, std::span<const double> x) {
    const int n = q.dim();
    if (static_cast<int>(x.size()) != n) throw std::invalid_argument("dimension mismatch");
    double diag = 0.0;
    double off = 0.0;
    for (int k = 0; k < n; ++k) {
        diag += q(k, k) * x[k] * x[k];
        double rowsum = 0.0;
        const auto row = q.row(k);
        for (int l = k + 1; l < n; ++l) rowsum += row[l] * x[l];
        off += x[k] * rowsum;
    }
    return diag + 2.0 * off;
}

double quadratic_form(const SymMatrix& q, const SimplexPoint& x) {
    return quadratic_form(q, std::span<const double>(x.coords()));
}

SymMatrix homogenize(const SymMatrix& a, const std::vector<double>& c) {
    const int n = a.dim();
    if (static_cast<int>(c.size()) != n) throw std::invalid_argument("dimension mismatch");
    SymMatrix q(n);
    for (int k = 0; k < n; ++k)
        for (int l = k; l < n; ++l) q.set(k, l, a(k, l) + c[k] + c[l]);
    return q;
}

double frobenius_norm(const SymMatrix& q) {
    double sum = 0.0;
    for (double v : q.data()) sum += v * v;
    return std::sqrt(sum);
}

namespace detail {

std::vector<double> jacobi_eigenvalues(const SymMatrix& q) {
    const int n = q.dim();
    std::vector<double> a = q.data();
    auto at = [&](int k, int l) -> double& { return a[static_cast<std::size_t>(k) * n + l]; };

    const double fro = frobenius_norm(q);
    const double off_target = 1e-14 * fro;

    auto off_mass = [&]() {
        double s = 0.0;
        for (int k = 0; k < n; ++k)
            for (int l = k + 1; l < n; ++l) s += 2.0 * at(k, l) * at(k, l);
        return std::sqrt(s);
    };

    constexpr int max_sweeps = 100;
    for (int sweep = 0; sweep < max_sweeps && off_mass() > off_target; ++sweep) {
        for (int p = 0; p < n - 1; ++p) {
            for (int r = p + 1; r < n; ++r) {
                const double apq = at(p, r);
                if (apq == 0.0) continue;
                const double app = at(p, p);
                const double aqq = at(r, r);
                // Rotation angle from the classic two-by-two reduction.
                const double theta = (aqq - app) / (2.0 * apq);
                const double t = (theta >= 0.0 ? 1.0 : -1.0) /
                                 (std::abs(theta) + std::sqrt(theta * theta + 1.0));
                const double cs = 1.0 / std::sqrt(t * t + 1.0);
                const double sn = t * cs;
                const double tau = sn / (1.0 + cs);

                at(p, p) = app - t * apq;
                at(r, r) = aqq + t * apq;
                at(p, r) = 0.0;
                at(r, p) = 0.0;
                for (int k = 0; k < n; ++k) {
                    if (k == p || k == r) continue;
                    const double akp = at(k, p);
                    const double akq = at(k, r);
                    at(k, p) = akp - sn * (akq + tau * akp);
                    at(p, k) = at(k, p);
                    at(k, r) = akq + sn * (akp - tau * akq);
                    at(r, k) = at(k, r);
                }
            }
        }
    }

    std::vector<double> eig(n);
    for (int k = 0; k < n; ++k) eig[k] = at(k, k);
    std::sort(eig.begin(), eig.end());
    return eig;
}

}  // namespace detail

EigExtremes eig_extremes(const SymMatrix& q) {
    const std::vector<double> eig = detail::jacobi_eigenvalues(q);
    return {eig.front(), eig.back()};
}

Definiteness classify_definiteness(const SymMatrix& q, double tol) {
    if (tol < 0.0) throw std::invalid_argument("tolerance must be nonnegative");
    const EigExtremes e = eig_extremes(q);
    if (e.lambda_min >= -tol) return Definiteness::PositiveSemiDefinite;
    if (e.lambda_max <= tol) return Definiteness::NegativeSemiDefinite;
    return Definiteness::Indefinite;
}

}  // namespace stqp
