#pragma once

#include "sskpca/common.hpp"

#include <vector>

namespace sskpca {

struct EigenPair {
    double value = 0.0;
    Vector vector;
};

// Full spectrum in ascending order; columns of `vectors` are orthonormal with
// the largest-magnitude entry made positive.
struct EigenDecomposition {
    Vector values;
    Matrix vectors;
};

// deterministic sign: flip so the largest-magnitude entry is positive
void fixSign(Vector& v);

EigenDecomposition symmetricEig(const Matrix& a);

// Largest Rayleigh quotient v^T A v / v^T B v over range(B), solved by
// whitening on B's range (relative eigenvalue cutoff). Returned vector has
// unit 2-norm.
EigenPair generalizedEigMax(const Matrix& a, const Matrix& b, double rangeTolerance = 1e-10);

// Top-k of the same pencil, values descending.
std::vector<EigenPair> generalizedEigTop(const Matrix& a, const Matrix& b, Index k,
                                         double rangeTolerance = 1e-10);

// Smallest zeta > 0 with det(C - zeta P) = 0 for C PD, P PSD nonzero,
// computed as 1/mu_max of P v = mu C v; u normalized so u^T P u = 1.
struct PencilEdge {
    double delta = 0.0;
    Vector u;
};

PencilEdge pencilLeftEdge(const Matrix& c, const Matrix& p);

}  // namespace sskpca
