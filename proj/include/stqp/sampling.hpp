#pragma once

#include <vector>

#include "stqp/linalg.hpp"
#include "stqp/rng.hpp"

namespace stqp {

// Standard normal by Box-Muller (cosine branch only): consumes exactly
// two uniforms per draw, keeping streams position-independent.
double sample_std_normal(SeededRng& rng);

// GOE matrix: diagonal N(0,2), strict upper triangle N(0,1), all
// independent; lower triangle mirrored. Entries are drawn row-major
// over the upper triangle.
SymMatrix sample_goe(int n, SeededRng& rng);

// W = Y Y' with the p columns of Y i.i.d. N_n(0, Sigma), realized as
// L z for the lower Cholesky factor L of Sigma.
SymMatrix sample_wishart(const SymMatrix& sigma, int p, SeededRng& rng);

// Upper triangle (incl. diagonal) i.i.d. Uniform[0,1], mirrored.
SymMatrix sample_uniform_symmetric(int n, SeededRng& rng);

// Uniform point on the simplex (Dirichlet(1,...,1)) via normalized
// exponentials; strictly positive coordinates.
SimplexPoint sample_dirichlet(int n, SeededRng& rng);

// Lower-triangular factor L with Sigma = L L', row-major n*n with an
// explicit zero upper triangle. Fails below pivot 1e-12.
std::vector<double> cholesky_lower(const SymMatrix& sigma);

}  // namespace stqp
