#include "sskpca/model_io.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>

namespace sskpca {
namespace {

std::string fmt(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

}  // namespace

void saveModel(const std::string& path, const Model& model) {
    std::ofstream out(path);
    if (!out) throw InvalidArgument("cannot write " + path);
    out << "sskpca-model 1\n";
    out << "method " << model.method << "\n";
    out << "kernel " << kindName(model.spec.kind) << "\n";
    out << "gamma " << fmt(model.spec.gamma) << "\n";
    out << "tau " << fmt(model.spec.tau) << "\n";
    out << "w " << fmt(model.spec.w) << "\n";
    out << "knn " << model.spec.knn << "\n";
    out << "jitter " << fmt(model.spec.jitter) << "\n";
    out << "centered " << (model.centered ? 1 : 0) << "\n";
    out << "m " << model.m << "\n";
    out << "trainhash " << model.trainHash << "\n";
    out << "components " << model.alphas.size() << "\n";
    if (model.hasSolverInfo)
        out << "solver c " << fmt(model.c) << " s2 " << fmt(model.s2) << " zeta "
            << fmt(model.zeta) << " objective " << fmt(model.objective) << "\n";
    for (std::size_t j = 0; j < model.alphas.size(); ++j) {
        out << "mean " << (j + 1) << " " << fmt(model.centeringMeans[j]) << "\n";
        if (j < model.eigenvalues.size())
            out << "eigenvalue " << (j + 1) << " " << fmt(model.eigenvalues[j]) << "\n";
        out << "alpha " << (j + 1);
        for (Index i = 0; i < model.alphas[j].size(); ++i) out << " " << fmt(model.alphas[j](i));
        out << "\n";
    }
    out << "end\n";
    if (!out) throw InvalidArgument("write failure on " + path);
}

Model loadModel(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw InvalidArgument("cannot open " + path);
    std::string header;
    std::getline(in, header);
    if (header != "sskpca-model 1") throw InvalidArgument(path + ": not a model file");

    Model model;
    std::size_t components = 0;
    std::string line;
    while (std::getline(in, line)) {
        std::istringstream ss(line);
        std::string key;
        ss >> key;
        if (key.empty()) continue;
        if (key == "end") break;
        if (key == "method") ss >> model.method;
        else if (key == "kernel") {
            std::string kind;
            ss >> kind;
            model.spec.kind = kindFromName(kind);
        } else if (key == "gamma") ss >> model.spec.gamma;
        else if (key == "tau") ss >> model.spec.tau;
        else if (key == "w") ss >> model.spec.w;
        else if (key == "knn") ss >> model.spec.knn;
        else if (key == "jitter") ss >> model.spec.jitter;
        else if (key == "centered") {
            int v = 0;
            ss >> v;
            model.centered = v != 0;
        } else if (key == "m") ss >> model.m;
        else if (key == "trainhash") ss >> model.trainHash;
        else if (key == "components") ss >> components;
        else if (key == "solver") {
            std::string tag;
            model.hasSolverInfo = true;
            while (ss >> tag) {
                if (tag == "c") ss >> model.c;
                else if (tag == "s2") ss >> model.s2;
                else if (tag == "zeta") ss >> model.zeta;
                else if (tag == "objective") ss >> model.objective;
            }
        } else if (key == "mean") {
            std::size_t idx = 0;
            double v = 0;
            ss >> idx >> v;
            if (ss.fail() || idx == 0)
                throw InvalidArgument(path + ": malformed line '" + line + "'");
            model.centeringMeans.resize(std::max(model.centeringMeans.size(), idx));
            model.centeringMeans[idx - 1] = v;
        } else if (key == "eigenvalue") {
            std::size_t idx = 0;
            double v = 0;
            ss >> idx >> v;
            if (ss.fail() || idx == 0)
                throw InvalidArgument(path + ": malformed line '" + line + "'");
            model.eigenvalues.resize(std::max(model.eigenvalues.size(), idx));
            model.eigenvalues[idx - 1] = v;
        } else if (key == "alpha") {
            std::size_t idx = 0;
            ss >> idx;
            if (ss.fail() || idx == 0)
                throw InvalidArgument(path + ": malformed line '" + line + "'");
            std::vector<double> vals;
            double v;
            while (ss >> v) vals.push_back(v);
            // the value loop always ends with failbit; garbage shows as non-eof
            if (!ss.eof() || vals.empty())
                throw InvalidArgument(path + ": malformed line '" + line + "'");
            model.alphas.resize(std::max(model.alphas.size(), idx));
            model.alphas[idx - 1] =
                Eigen::Map<const Vector>(vals.data(), static_cast<Index>(vals.size()));
        } else {
            throw InvalidArgument(path + ": unknown model line '" + key + "'");
        }
        if (ss.fail() && key != "solver" && key != "alpha")
            throw InvalidArgument(path + ": malformed line '" + line + "'");
    }
    if (model.alphas.size() != components || components == 0)
        throw InvalidArgument(path + ": component count mismatch");
    for (const auto& a : model.alphas)
        if (a.size() != model.m) throw InvalidArgument(path + ": alpha length mismatch");
    if (model.centeringMeans.size() != components)
        model.centeringMeans.resize(components, 0.0);
    return model;
}

Model modelFromBasis(const EigenfunctionBasis& basis, const std::string& method,
                     std::uint64_t trainHash) {
    if (basis.functions.empty()) throw InvalidArgument("modelFromBasis: empty basis");
    Model model;
    model.method = method;
    model.spec = basis.functions.front().spec;
    model.centered = basis.functions.front().centered;
    model.trainHash = trainHash;
    model.m = basis.functions.front().alpha.size();
    for (std::size_t j = 0; j < basis.functions.size(); ++j) {
        model.alphas.push_back(basis.functions[j].alpha);
        model.centeringMeans.push_back(basis.functions[j].centeringMean);
        model.eigenvalues.push_back(basis.eigenvalues(static_cast<Index>(j)));
    }
    return model;
}

namespace {
Model modelFromSolution(const SolutionFunction& fn, const CqpSolution& cqp, double c, double s2,
                        const std::string& method, std::uint64_t trainHash) {
    Model model;
    model.method = method;
    model.spec = fn.spec;
    model.centered = fn.centered;
    model.trainHash = trainHash;
    model.m = fn.alpha.size();
    model.alphas.push_back(fn.alpha);
    model.centeringMeans.push_back(fn.centeringMean);
    model.hasSolverInfo = true;
    model.c = c;
    model.s2 = s2;
    model.zeta = cqp.zeta;
    model.objective = cqp.objective;
    return model;
}
}  // namespace

Model modelFromLs(const LsSolution& sol, std::uint64_t trainHash) {
    return modelFromSolution(sol.fn, sol.cqp, sol.cfg.c, sol.cfg.s2, "ls", trainHash);
}

Model modelFromLr(const LrSolution& sol, std::uint64_t trainHash) {
    return modelFromSolution(sol.fn, sol.cqp, sol.cfg.c, sol.cfg.s2, "lr", trainHash);
}

SolutionFunction functionFromModel(const Model& model, const Matrix& trainingPoints,
                                   std::size_t component) {
    if (component >= model.alphas.size())
        throw InvalidArgument("functionFromModel: component out of range");
    if (trainingPoints.rows() != model.m)
        throw InvalidArgument("functionFromModel: training point count mismatch");
    if (hashMatrix(trainingPoints) != model.trainHash)
        throw InvalidArgument("functionFromModel: training points do not match the stored hash");
    SolutionFunction fn;
    fn.alpha = model.alphas[component];
    fn.spec = model.spec;
    fn.trainingPoints = trainingPoints;
    fn.centered = model.centered;
    fn.centeringMean = model.centeringMeans[component];
    const KernelMatrix k = buildKernel(trainingPoints, model.spec);
    fn.trainingValues = (k.k * fn.alpha).array() - fn.centeringMean;
    return fn;
}

}  // namespace sskpca
