#pragma once

#include "sskpca/common.hpp"

#include <vector>

namespace sskpca {

// min alpha^T C alpha - 2 b^T alpha  subject to  alpha^T P alpha = s2
struct CqpProblem {
    Matrix c;  // symmetric PD
    Vector b;
    Matrix p;  // symmetric PSD
    double s2 = 1.0;
};

struct CqpSolution {
    Vector alpha;
    double zeta = 0.0;  // multiplier; alpha = (C - zeta P)^{-1} b off the hard case
    double objective = 0.0;
    bool hardCase = false;
    double residual = 0.0;  // |alpha^T P alpha - s2| / s2
};

double cqpObjective(const CqpProblem& problem, const Vector& alpha);

// f(zeta) = alpha(zeta)^T P alpha(zeta) - s2 with alpha(zeta) = (C - zeta P)^{-1} b,
// one PD factorization per call. Throws when C - zeta P is not PD.
double secularValue(const CqpProblem& problem, double zeta);

// Global minimizer via the secular equation: bracket below the pencil edge
// delta, Brent to 1e-12 relative, Newton polish. Falls back to the
// pure-eigenvector hard case when no sign change exists below the edge
// (b = 0, or b orthogonal to the whole edge eigenspace).
CqpSolution solveSecular(const CqpProblem& problem);

// Direct route through the 2m x 2m pencil
//   [[C, -P], [-(1/s2) b b^T, C]]  vs  blockdiag(P, P):
// smallest real eigenvalue whose alpha meets the constraint. Unstable by
// design; test oracle only, not for the hard case.
CqpSolution solveEigOracle(const CqpProblem& problem);

// Variable change f = K alpha for the uncentered constraint f^T f = s2:
// explicit rational secular equation in the eigenbasis of K^{-1} + c D.
// Errors when K's condition estimate exceeds 1e12.
CqpSolution solveUncenteredExplicit(const Matrix& k, const std::vector<Index>& labeled,
                                    const Vector& t, double c, double s2);

}  // namespace sskpca
