// Python surface: generators, kernels, the four fits, the constrained
// quadratic solver, evaluation heads and the risk bound. Fit results come
// back as plain dicts so the python side stays dependency-free.

#include "sskpca/cqp.hpp"
#include "sskpca/dataset.hpp"
#include "sskpca/eval.hpp"
#include "sskpca/kernels.hpp"
#include "sskpca/kpca.hpp"
#include "sskpca/lrkpca.hpp"
#include "sskpca/lskpca.hpp"

#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

namespace py = pybind11;
using namespace sskpca;

namespace {

KernelSpec makeSpec(const std::string& kind, double gamma, double tau, double w, int knn,
                    double jitter) {
    KernelSpec spec;
    spec.kind = kindFromName(kind);
    spec.gamma = gamma;
    spec.tau = tau;
    spec.w = w;
    spec.knn = knn;
    spec.jitter = jitter;
    return spec;
}

Dataset makeDataset(const Matrix& x, const IntVector& y) {
    if (y.size() != x.rows()) throw InvalidArgument("x and y row counts differ");
    Dataset data;
    data.x = x;
    data.y = y;
    return data;
}

py::dict basisDict(const EigenfunctionBasis& basis) {
    const Index m = basis.functions.empty() ? 0 : basis.functions[0].alpha.size();
    const Index count = static_cast<Index>(basis.functions.size());
    Matrix alphas(m, count), values(m, count);
    Vector means(count);
    for (Index j = 0; j < count; ++j) {
        const auto& fn = basis.functions[static_cast<std::size_t>(j)];
        alphas.col(j) = fn.alpha;
        values.col(j) = fn.trainingValues;
        means(j) = fn.centeringMean;
    }
    py::dict out;
    out["alphas"] = alphas;
    out["eigenvalues"] = basis.eigenvalues;
    out["training_values"] = values;
    out["centering_means"] = means;
    return out;
}

py::dict cqpDict(const CqpSolution& sol) {
    py::dict out;
    out["alpha"] = sol.alpha;
    out["zeta"] = sol.zeta;
    out["objective"] = sol.objective;
    out["hard_case"] = sol.hardCase;
    out["residual"] = sol.residual;
    return out;
}

py::dict functionDict(const SolutionFunction& fn) {
    py::dict out;
    out["alpha"] = fn.alpha;
    out["training_values"] = fn.trainingValues;
    out["centering_mean"] = fn.centeringMean;
    out["centered"] = fn.centered;
    return out;
}

}  // namespace

PYBIND11_MODULE(_sskpca, module) {
    module.doc() = "semi-supervised kernel component analysis";

    py::register_exception<InvalidArgument>(module, "InvalidArgumentError", PyExc_ValueError);
    py::register_exception<NumericalError>(module, "NumericalErrorException", PyExc_RuntimeError);

    module.def(
        "two_moons",
        [](Index m, double noise, Index labeledPerClass, std::uint64_t seed) {
            const Dataset d = genTwoMoons(m, noise, labeledPerClass, seed);
            return py::make_tuple(d.x, d.y);
        },
        py::arg("m"), py::arg("noise") = 0.05, py::arg("labeled_per_class") = 4,
        py::arg("seed") = 1);

    module.def(
        "two_gaussians",
        [](Index m, double separation, Index dims, Index labeledPerClass, std::uint64_t seed) {
            const Dataset d = genTwoGaussians(m, separation, dims, labeledPerClass, seed);
            return py::make_tuple(d.x, d.y);
        },
        py::arg("m"), py::arg("separation") = 2.5, py::arg("dims") = 2,
        py::arg("labeled_per_class") = 4, py::arg("seed") = 1);

    module.def(
        "gaussian_kernel",
        [](const Matrix& x, double gamma) { return gaussianKernel(x, gamma).k; }, py::arg("x"),
        py::arg("gamma"));

    module.def(
        "build_kernel",
        [](const Matrix& x, const std::string& kind, double gamma, double tau, double w, int knn,
           double jitter) { return buildKernel(x, makeSpec(kind, gamma, tau, w, knn, jitter)).k; },
        py::arg("x"), py::arg("kind") = "gaussian", py::arg("gamma") = 1.0, py::arg("tau") = 1.0,
        py::arg("w") = 0.5, py::arg("knn") = 10, py::arg("jitter") = -1.0);

    module.def(
        "kpca_fit",
        [](const Matrix& x, double gamma, bool centered, Index components) {
            return basisDict(kpcaFit(gaussianKernel(x, gamma), centered, components));
        },
        py::arg("x"), py::arg("gamma"), py::arg("centered") = true, py::arg("components") = 1);

    module.def(
        "mv_kpca_fit",
        [](const Matrix& x, const IntVector& y, double gamma, double c, Index components) {
            const Dataset data = makeDataset(x, y);
            return basisDict(
                mvkpcaFit(gaussianKernel(x, gamma), groupsFromLabels(data), c, components));
        },
        py::arg("x"), py::arg("y"), py::arg("gamma"), py::arg("c") = 1.0,
        py::arg("components") = 1);

    module.def(
        "ls_kpca_fit",
        [](const Matrix& x, const IntVector& y, double gamma, double c, double s2,
           bool centered) {
            LsConfig cfg;
            cfg.c = c;
            cfg.s2 = s2;
            cfg.centered = centered;
            const LsSolution sol = lskpcaFit(gaussianKernel(x, gamma), makeDataset(x, y), cfg);
            py::dict out = functionDict(sol.fn);
            out["solver"] = cqpDict(sol.cqp);
            return out;
        },
        py::arg("x"), py::arg("y"), py::arg("gamma"), py::arg("c") = 1.0, py::arg("s2") = 1.0,
        py::arg("centered") = true);

    module.def(
        "lr_kpca_fit",
        [](const Matrix& x, const IntVector& y, double gamma, double c, double s2, bool centered,
           int maxIterations) {
            LrConfig cfg;
            cfg.c = c;
            cfg.s2 = s2;
            cfg.centered = centered;
            cfg.maxIterations = maxIterations;
            const LrSolution sol = lrkpcaFit(gaussianKernel(x, gamma), makeDataset(x, y), cfg);
            py::dict out = functionDict(sol.fn);
            out["solver"] = cqpDict(sol.cqp);
            out["iterations"] = sol.iterations;
            out["converged"] = sol.converged;
            out["escalation_warning"] = sol.escalationWarning;
            py::list trace;
            for (const auto& row : sol.trace) {
                py::dict r;
                r["iteration"] = row.iteration;
                r["objective"] = row.objective;
                r["lambda"] = row.lambda;
                r["step_norm"] = row.stepNorm;
                trace.append(r);
            }
            out["trace"] = trace;
            return out;
        },
        py::arg("x"), py::arg("y"), py::arg("gamma"), py::arg("c") = 1.0, py::arg("s2") = 1.0,
        py::arg("centered") = true, py::arg("max_iterations") = 50);

    module.def(
        "predict",
        [](const Matrix& trainX, const Vector& alpha, double gamma, const Matrix& newX,
           bool centered, double centeringMean) {
            SolutionFunction fn;
            fn.alpha = alpha;
            fn.spec.kind = KernelKind::Gaussian;
            fn.spec.gamma = gamma;
            fn.trainingPoints = trainX;
            fn.centered = centered;
            fn.centeringMean = centeringMean;
            return predictMany(fn, newX);
        },
        py::arg("train_x"), py::arg("alpha"), py::arg("gamma"), py::arg("new_x"),
        py::arg("centered") = true, py::arg("centering_mean") = 0.0);

    module.def(
        "solve_secular",
        [](const Matrix& c, const Vector& b, const Matrix& p, double s2) {
            CqpProblem problem;
            problem.c = c;
            problem.b = b;
            problem.p = p;
            problem.s2 = s2;
            return cqpDict(solveSecular(problem));
        },
        py::arg("c"), py::arg("b"), py::arg("p"), py::arg("s2"));

    module.def("threshold_head", &thresholdHead, py::arg("f"), py::arg("t"));

    module.def(
        "transductive_error",
        [](const IntVector& predictions, const IntVector& truth) {
            return transductiveError(predictions, truth);
        },
        py::arg("predictions"), py::arg("truth"));

    module.def("risk_bound_constant", &riskBoundConstant);

    module.def(
        "risk_bound",
        [](double empiricalRisk, double q, double s2, Index l, Index n, double delta) {
            RiskBoundInput in;
            in.empiricalRisk = empiricalRisk;
            in.q = q;
            in.s2 = s2;
            in.l = l;
            in.n = n;
            in.deltaConf = delta;
            return riskBound(in);
        },
        py::arg("empirical_risk"), py::arg("q"), py::arg("s2"), py::arg("l"), py::arg("n"),
        py::arg("delta") = 0.05);

    module.def("risk_bound_general", &riskBoundGeneral, py::arg("empirical_risk"), py::arg("mu"),
               py::arg("k_fro"), py::arg("l"), py::arg("n"), py::arg("delta") = 0.05);
}
