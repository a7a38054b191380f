#pragma once

#include <functional>
#include <vector>

#include "ucl/matrix.hpp"

namespace ucl {

struct EigResult {
    std::vector<double> values;  // descending
    ComplexMatrix vectors;       // column j pairs with values[j]
};

/// Hermitian eigendecomposition, h = V diag(w) V^dagger. Input must be
/// Hermitian within herm_tol. Householder tridiagonalization followed by
/// implicit-shift QL; no external dependency.
EigResult herm_eig(const ComplexMatrix& h, double herm_tol = 1e-10);

/// Eigenvalues only (descending); cheaper, no vector accumulation.
std::vector<double> herm_eigenvalues(const ComplexMatrix& h, double herm_tol = 1e-10);

double min_eigenvalue(const ComplexMatrix& h, double herm_tol = 1e-10);

/// True iff the minimum eigenvalue is >= -tol.
bool is_psd(const ComplexMatrix& h, double tol, double herm_tol = 1e-10);

/// Spectral function of a PSD Hermitian matrix: eigenvalues below null_tol
/// are mapped to 0 (pseudo-function on the support); eigenvalues below
/// -null_tol raise. Covers sqrt and 1/sqrt.
ComplexMatrix herm_fn(const ComplexMatrix& h, const std::function<double(double)>& f,
                      double null_tol);

ComplexMatrix herm_sqrt(const ComplexMatrix& h, double null_tol = 1e-10);
ComplexMatrix herm_inv_sqrt(const ComplexMatrix& h, double null_tol = 1e-10);

struct QrResult {
    ComplexMatrix q;  // unitary
    ComplexMatrix r;  // upper triangular
};

/// Householder QR of a square complex matrix.
QrResult qr_decompose(const ComplexMatrix& a);

}  // namespace ucl
