#pragma once

#include "sskpca/common.hpp"
#include "sskpca/dataset.hpp"
#include "sskpca/kernels.hpp"

#include <vector>

namespace sskpca {

// Representer-form function f(x) = sum_i alpha_i k(x_i, x) (- centeringMean
// when centered). trainingValues holds the prediction values at the training
// points.
struct SolutionFunction {
    Vector alpha;
    KernelSpec spec;
    Matrix trainingPoints;  // empty when the kernel was supplied as a matrix
    Vector trainingValues;
    double centeringMean = 0.0;
    bool centered = true;
};

struct EigenfunctionBasis {
    std::vector<SolutionFunction> functions;
    Vector eigenvalues;  // descending
};

// Top-count maximizers of the (centered or plain) variance of f over
// |f|^2_H = alpha^T K alpha; each rescaled so alpha^T K alpha = 1.
EigenfunctionBasis kpcaFit(const KernelMatrix& k, bool centered, Index count);

// Penalizes within-group variance: denominator becomes
// C = K + c * sum_i K_i^T (I - E_{|G_i|}) K_i; rescaled so alpha^T C alpha = 1.
EigenfunctionBasis mvkpcaFit(const KernelMatrix& k, const GroupSet& groups, double c,
                             Index count);

// Out-of-sample evaluation; defined for the gaussian kernel only (graph
// kernels have no representer extension off the training set).
double predict(const SolutionFunction& fn, const Vector& x);
Vector predictMany(const SolutionFunction& fn, const Matrix& x);

}  // namespace sskpca
