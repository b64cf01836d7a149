#include "sskpca/lrkpca.hpp"

#include "sskpca/lskpca.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>

namespace sskpca {
namespace {

double logistic(double x) {
    if (x >= 0) return 1.0 / (1.0 + std::exp(-x));
    const double e = std::exp(x);
    return e / (1.0 + e);
}

}  // namespace

ReweightState reweight(const Vector& g, const Vector& t) {
    if (g.size() != t.size()) throw InvalidArgument("reweight: size mismatch");
    ReweightState st;
    st.g = g;
    st.z.resize(g.size());
    st.r.resize(g.size());
    st.s.resize(g.size());
    for (Index i = 0; i < g.size(); ++i) {
        double z = logistic(t(i) * g(i));
        z = std::clamp(z, 1e-12, 1.0 - 1e-12);
        st.z(i) = z;
        st.r(i) = z * (1.0 - z);
        st.s(i) = g(i) - (z - t(i)) * (1.0 - z) / z;
    }
    return st;
}

double lrObjective(const Vector& alpha, const Matrix& k, const Matrix& kl, const Vector& t,
                   double c) {
    const Vector g = kl * alpha;
    double loss = 0.0;
    for (Index i = 0; i < g.size(); ++i) loss += logistic(-t(i) * g(i));
    return alpha.dot(k * alpha) + c * loss;
}

Vector lrLossGradient(const Vector& alpha, const Matrix& kl, const Vector& t, double c) {
    const auto st = reweight(kl * alpha, t);
    return -c * kl.transpose() * t.cwiseProduct(st.r);
}

LrSolution lrkpcaFit(const KernelMatrix& k, const Dataset& data, const LrConfig& cfg) {
    if (cfg.c < 0) throw InvalidArgument("lrkpcaFit: c must be >= 0");
    if (!(cfg.s2 > 0)) throw InvalidArgument("lrkpcaFit: s2 must be positive");
    if (cfg.maxIterations < 1) throw InvalidArgument("lrkpcaFit: maxIterations must be >= 1");
    if (!(cfg.growth > 1)) throw InvalidArgument("lrkpcaFit: growth factor must exceed 1");
    const auto labeled = labeledIndices(data.y);
    if (labeled.empty()) throw InvalidArgument("lrkpcaFit: no labeled points");

    const Index m = k.m();
    const Index l = static_cast<Index>(labeled.size());
    Matrix kl(l, m);
    Vector t(l);
    for (Index i = 0; i < l; ++i) {
        kl.row(i) = k.k.row(labeled[static_cast<std::size_t>(i)]);
        t(i) = data.y(labeled[static_cast<std::size_t>(i)]);
    }
    const double jitter = effectiveJitter(k);
    const Matrix p =
        cfg.centered ? centeredVarianceOperator(k.k) : uncenteredVarianceOperator(k.k);

    LsSolution warm = lskpcaFit(k, data, LsConfig{cfg.c, cfg.s2, cfg.centered});
    LrSolution out;
    out.cfg = cfg;
    out.cqp = warm.cqp;

    Vector alpha = warm.fn.alpha;
    double obj = lrObjective(alpha, k.k, kl, t, cfg.c);
    out.trace.push_back({0, obj, 0.0, 0.0});

    Vector bestAlpha = alpha;
    double bestObj = obj;
    const double lambdaBase = cfg.lambda0 >= 0
                                  ? cfg.lambda0
                                  : 1e-4 * k.k.trace() / static_cast<double>(std::max<Index>(1, m));

    for (int n = 1; n <= cfg.maxIterations; ++n) {
        out.iterations = n;
        const ReweightState st = reweight(kl * alpha, t);
        Matrix c0 = symmetrized(k.k + cfg.c * kl.transpose() * st.r.asDiagonal() * kl);
        c0.diagonal().array() += jitter;
        const Vector b0 = cfg.c * kl.transpose() * st.r.cwiseProduct(st.s);

        double lambda = lambdaBase;
        bool accepted = false;
        for (int attempt = 0; attempt <= cfg.maxEscalations; ++attempt) {
            CqpProblem problem;
            problem.c = c0;
            problem.c.diagonal().array() += lambda;
            problem.b = b0 + lambda * alpha;
            problem.p = p;
            problem.s2 = cfg.s2;
            const CqpSolution sol = solveSecular(problem);

            const double step = (sol.alpha - alpha).norm() / std::max(alpha.norm(), 1e-300);
            const double objNew = lrObjective(sol.alpha, k.k, kl, t, cfg.c);
            if (step < cfg.convergenceTol) out.converged = true;
            if (out.converged || objNew < obj) {
                alpha = sol.alpha;
                obj = objNew;
                out.cqp = sol;
                out.trace.push_back({n, obj, lambda, step});
                accepted = true;
                break;
            }
            lambda *= cfg.growth;
        }
        if (!accepted) {
            out.escalationWarning = true;
            out.trace.push_back({n, obj, lambda, 0.0});
            break;
        }
        if (obj < bestObj) {
            bestObj = obj;
            bestAlpha = alpha;
        }
        if (out.converged) break;
    }

    const Vector finalAlpha = out.escalationWarning ? bestAlpha : alpha;
    out.fn.alpha = finalAlpha;
    out.fn.spec = k.spec;
    out.fn.trainingPoints = k.points;
    out.fn.centered = cfg.centered;
    out.fn.centeringMean = 0.0;
    out.fn.trainingValues = k.k * finalAlpha;
    return out;
}

void writeTraceCsv(const std::string& path, const std::vector<LrTraceRow>& trace) {
    std::ofstream outFile(path);
    if (!outFile) throw InvalidArgument("cannot write " + path);
    outFile << "iteration,objective,lambda,step_norm\n";
    char buf[128];
    for (const auto& row : trace) {
        std::snprintf(buf, sizeof buf, "%d,%.17g,%.17g,%.17g\n", row.iteration, row.objective,
                      row.lambda, row.stepNorm);
        outFile << buf;
    }
    if (!outFile) throw InvalidArgument("write failure on " + path);
}

}  // namespace sskpca
