#pragma once

#include "sskpca/kpca.hpp"
#include "sskpca/lrkpca.hpp"
#include "sskpca/lskpca.hpp"

#include <string>
#include <vector>

namespace sskpca {

// Plain-text model: kernel spec, a hash of the training points, coefficient
// vector(s) and eigenvalues; LS/LR runs also store (c, s2, zeta, objective).
// Training points themselves are not stored; prediction re-supplies them and
// the hash must match.
struct Model {
    std::string method = "kpca";
    KernelSpec spec;
    bool centered = true;
    std::uint64_t trainHash = 0;
    Index m = 0;
    std::vector<Vector> alphas;
    std::vector<double> centeringMeans;
    std::vector<double> eigenvalues;  // empty for ls/lr
    bool hasSolverInfo = false;
    double c = 0.0;
    double s2 = 0.0;
    double zeta = 0.0;
    double objective = 0.0;
};

void saveModel(const std::string& path, const Model& model);
Model loadModel(const std::string& path);

Model modelFromBasis(const EigenfunctionBasis& basis, const std::string& method,
                     std::uint64_t trainHash);
Model modelFromLs(const LsSolution& sol, std::uint64_t trainHash);
Model modelFromLr(const LrSolution& sol, std::uint64_t trainHash);

// Rebuilds an evaluable function; trainingPoints must hash to model.trainHash.
SolutionFunction functionFromModel(const Model& model, const Matrix& trainingPoints,
                                   std::size_t component = 0);

}  // namespace sskpca
