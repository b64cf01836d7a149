#pragma once

#include "sskpca/cqp.hpp"
#include "sskpca/dataset.hpp"
#include "sskpca/kernels.hpp"
#include "sskpca/kpca.hpp"

namespace sskpca {

struct LsConfig {
    double c = 1.0;
    double s2 = 1.0;
    bool centered = true;
};

struct LsSolution {
    SolutionFunction fn;
    CqpSolution cqp;
    LsConfig cfg;
};

// min alpha^T K alpha + c |K_L alpha - t|^2  s.t.  variance(f) = s2,
// assembled as C = K + c K_L^T K_L, b = c K_L^T t and handed to the secular
// solver. The variance operator follows cfg.centered.
LsSolution lskpcaFit(const KernelMatrix& k, const Dataset& data, const LsConfig& cfg);

// Same problem with K = pinv(L) on a connected graph and the plain (not
// centered) variance; the resulting f automatically satisfies e^T f = 0.
LsSolution sgtSpecialCase(const Graph& graph, const Dataset& data, const LsConfig& cfg);

}  // namespace sskpca
