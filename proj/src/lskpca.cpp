#include "sskpca/lskpca.hpp"

namespace sskpca {

LsSolution lskpcaFit(const KernelMatrix& k, const Dataset& data, const LsConfig& cfg) {
    if (cfg.c < 0) throw InvalidArgument("lskpcaFit: c must be >= 0");
    if (!(cfg.s2 > 0)) throw InvalidArgument("lskpcaFit: s2 must be positive");
    if (data.y.size() != k.m()) throw InvalidArgument("lskpcaFit: kernel/label size mismatch");
    const auto labeled = labeledIndices(data.y);
    if (labeled.empty()) throw InvalidArgument("lskpcaFit: no labeled points");

    const Index m = k.m();
    const Index l = static_cast<Index>(labeled.size());
    Matrix kl(l, m);
    Vector t(l);
    for (Index i = 0; i < l; ++i) {
        kl.row(i) = k.k.row(labeled[static_cast<std::size_t>(i)]);
        t(i) = data.y(labeled[static_cast<std::size_t>(i)]);
    }

    CqpProblem problem;
    problem.c = symmetrized(k.k + cfg.c * kl.transpose() * kl);
    problem.c.diagonal().array() += effectiveJitter(k);
    problem.b = cfg.c * kl.transpose() * t;
    problem.p = cfg.centered ? centeredVarianceOperator(k.k) : uncenteredVarianceOperator(k.k);
    problem.s2 = cfg.s2;

    LsSolution out;
    out.cqp = solveSecular(problem);
    out.cfg = cfg;
    out.fn.alpha = out.cqp.alpha;
    out.fn.spec = k.spec;
    out.fn.trainingPoints = k.points;
    out.fn.centered = cfg.centered;
    out.fn.centeringMean = 0.0;  // classification thresholds absorb any offset
    out.fn.trainingValues = k.k * out.fn.alpha;
    return out;
}

LsSolution sgtSpecialCase(const Graph& graph, const Dataset& data, const LsConfig& cfg) {
    if (cfg.centered)
        throw InvalidArgument("sgtSpecialCase: requires the uncentered configuration");
    return lskpcaFit(laplacianPinv(graph), data, cfg);
}

}  // namespace sskpca
