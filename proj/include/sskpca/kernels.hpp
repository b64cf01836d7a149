#pragma once

#include "sskpca/common.hpp"

#include <string>

namespace sskpca {

enum class KernelKind { Gaussian, Diffusion, Mixed, LaplacianPinv };

std::string kindName(KernelKind kind);
KernelKind kindFromName(const std::string& name);

struct KernelSpec {
    KernelKind kind = KernelKind::Gaussian;
    double gamma = 1.0;  // inverse squared length-scale
    double tau = 1.0;    // diffusion time
    double w = 0.5;      // mixture weight on the gaussian part
    int knn = 10;
    double jitter = -1.0;  // ridge added where an inverse is needed; <0 = default rule
};

// kNN graph with Gaussian edge weights. S is the symmetrically normalized
// weight matrix, L = diag(Se) - S its Laplacian.
struct Graph {
    Matrix w;
    Matrix s;
    Matrix l;
};

struct KernelMatrix {
    Matrix k;
    KernelSpec spec;
    Matrix points;  // empty when the kernel was not built from points

    Index m() const { return k.rows(); }
};

// K_ij = exp(-gamma * |x_i - x_j|^2). Rows computed in parallel blocks;
// entries do not depend on the partitioning.
KernelMatrix gaussianKernel(const Matrix& points, double gamma);

// Union-symmetrized kNN adjacency, edge weights exp(-d^2 / sigma^2) with
// sigma^2 the mean squared distance over connected pairs, zero diagonal.
// Errors if any vertex ends up isolated.
Graph buildGraph(const Matrix& points, int knn);

// exp(-tau * L) through a full symmetric eigendecomposition.
KernelMatrix diffusionKernel(const Graph& graph, double tau);

KernelMatrix mixedKernel(const KernelMatrix& kGamma, const KernelMatrix& kDiff, double w);

// Pseudo-inverse of L over its nonzero spectrum. Requires a connected graph:
// exactly one eigenvalue below 1e-9 * lambda_max counts as zero.
KernelMatrix laplacianPinv(const Graph& graph);

// All kinds from raw points; graph kinds build their graph from spec.knn.
KernelMatrix buildKernel(const Matrix& points, const KernelSpec& spec);

// P = K^T (I - E_m) K with E_m = ones/m, assembled as M^T M for exact PSD
// symmetry; the uncentered form drops the centering.
Matrix centeredVarianceOperator(const Matrix& k);
Matrix uncenteredVarianceOperator(const Matrix& k);

double defaultJitter(const Matrix& k);
double effectiveJitter(const KernelMatrix& k);

// Binary cache: small header (m, kind, parameters, dataset hash) + row-major
// doubles. load returns false on any mismatch.
void saveCachedKernel(const std::string& path, std::uint64_t datasetHash, const KernelMatrix& k);
bool loadCachedKernel(const std::string& path, std::uint64_t datasetHash, const KernelSpec& spec,
                      Matrix& k);

}  // namespace sskpca
