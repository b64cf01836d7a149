#include "sskpca/dataset.hpp"
#include "sskpca/eval.hpp"
#include "sskpca/kernels.hpp"
#include "sskpca/kpca.hpp"
#include "sskpca/lrkpca.hpp"
#include "sskpca/lskpca.hpp"
#include "sskpca/model_io.hpp"

#include "CLI11.hpp"

#include <chrono>
#include <cstdio>
#include <ctime>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

namespace fs = std::filesystem;
using namespace sskpca;

namespace {

std::string fmt(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

// timestamps are allowed only in this file
class RunLog {
public:
    explicit RunLog(const fs::path& dir) : out_(dir / "run.log", std::ios::app) { stamp("start"); }
    ~RunLog() { stamp("end"); }
    void note(const std::string& msg) {
        stamp(msg);
    }

private:
    void stamp(const std::string& msg) {
        const auto now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
        char ts[32];
        std::strftime(ts, sizeof ts, "%Y-%m-%dT%H:%M:%S", std::gmtime(&now));
        out_ << ts << " " << msg << "\n";
        out_.flush();
    }
    std::ofstream out_;
};

fs::path ensureOutDir(const std::string& out) {
    fs::path dir(out.empty() ? "." : out);
    fs::create_directories(dir);
    return dir;
}

void writePredictions(const fs::path& path, const Vector& f) {
    std::ofstream out(path);
    if (!out) throw InvalidArgument("cannot write " + path.string());
    out << "index,f,label\n";
    for (Index i = 0; i < f.size(); ++i)
        out << i << "," << fmt(f(i)) << "," << (f(i) > 0 ? 1 : -1) << "\n";
    if (!out) throw InvalidArgument("write failure on " + path.string());
}

struct KernelFlags {
    std::string kernel = "gaussian";
    double gamma = 1.0;
    double tau = 1.0;
    double mixW = 0.5;
    int knn = 10;
    double jitter = -1.0;

    KernelSpec spec() const {
        KernelSpec s;
        s.kind = kindFromName(kernel);
        s.gamma = gamma;
        s.tau = tau;
        s.w = mixW;
        s.knn = knn;
        s.jitter = jitter;
        return s;
    }
};

void addKernelFlags(CLI::App* cmd, KernelFlags& k) {
    cmd->add_option("--kernel", k.kernel, "gaussian|diffusion|mixed|lpinv")
        ->check(CLI::IsMember({"gaussian", "diffusion", "mixed", "lpinv"}));
    cmd->add_option("--gamma", k.gamma, "gaussian inverse squared length-scale");
    cmd->add_option("--tau", k.tau, "diffusion time");
    cmd->add_option("--mix-w", k.mixW, "weight on the gaussian part of the mixed kernel");
    cmd->add_option("--knn", k.knn, "graph neighbor count");
    cmd->add_option("--jitter", k.jitter, "diagonal ridge used where an inverse is needed");
}

KernelMatrix buildKernelCached(const Matrix& x, const KernelSpec& spec,
                               const std::string& cachePath) {
    if (!cachePath.empty()) {
        Matrix cached;
        if (loadCachedKernel(cachePath, hashMatrix(x), spec, cached)) {
            KernelMatrix k;
            k.k = std::move(cached);
            k.spec = spec;
            k.points = x;
            return k;
        }
    }
    KernelMatrix k = buildKernel(x, spec);
    if (!cachePath.empty()) saveCachedKernel(cachePath, hashMatrix(x), k);
    return k;
}

std::string defaultGridPath(const std::string& name) {
    if (const char* env = std::getenv("SSKPCA_GRID_DIR")) {
        const fs::path p = fs::path(env) / name;
        if (fs::exists(p)) return p.string();
    }
    const fs::path local = fs::path("grids") / name;
    if (fs::exists(local)) return local.string();
    throw InvalidArgument("grid file '" + name +
                          "' not found; pass --grid or set SSKPCA_GRID_DIR");
}

int runGen(Index twoMoons, Index twoGaussians, Index dims, double sep, double noise, Index labels,
           std::uint64_t seed, const std::string& outFile) {
    Dataset data;
    if (twoMoons > 0 && twoGaussians > 0)
        throw InvalidArgument("choose one of --two-moons / --two-gaussians");
    if (twoMoons > 0) data = genTwoMoons(twoMoons, noise, labels, seed);
    else if (twoGaussians > 0) data = genTwoGaussians(twoGaussians, sep, dims, labels, seed);
    else throw InvalidArgument("gen needs --two-moons N or --two-gaussians N");
    saveCsv(outFile, data);
    std::cout << "wrote " << outFile << " (" << data.m() << " points, "
              << labeledIndices(data.y).size() << " labeled)\n";
    return 0;
}

int runFit(const std::string& dataPath, Index labelColumn, const std::string& method,
           const KernelFlags& kflags, double c, double s2, double s2pp, bool uncentered,
           Index components, const std::string& cachePath, const fs::path& outDir) {
    RunLog log(outDir);
    const Dataset data = loadCsv(dataPath, labelColumn);
    const KernelSpec spec = kflags.spec();
    const KernelMatrix k = buildKernelCached(data.x, spec, cachePath);
    const std::uint64_t trainHash = hashMatrix(data.x);
    const bool centered = !uncentered;
    const double s2abs = s2pp > 0 ? s2pp * static_cast<double>(data.m()) : s2;

    Model model;
    Vector f;
    if (method == "kpca") {
        const auto basis = kpcaFit(k, centered, components);
        model = modelFromBasis(basis, method, trainHash);
        f = basis.functions.front().trainingValues;
    } else if (method == "mv") {
        const auto basis = mvkpcaFit(k, groupsFromLabels(data), c, components);
        model = modelFromBasis(basis, method, trainHash);
        f = basis.functions.front().trainingValues;
    } else if (method == "ls") {
        const LsSolution sol = lskpcaFit(k, data, LsConfig{c, s2abs, centered});
        model = modelFromLs(sol, trainHash);
        f = sol.fn.trainingValues;
        log.note("ls zeta " + fmt(sol.cqp.zeta) + " objective " + fmt(sol.cqp.objective) +
                 " residual " + fmt(sol.cqp.residual));
    } else if (method == "lr") {
        const LrSolution sol = lrkpcaFit(k, data, LrConfig{c, s2abs, centered});
        model = modelFromLr(sol, trainHash);
        f = sol.fn.trainingValues;
        writeTraceCsv((outDir / "lr_trace.csv").string(), sol.trace);
        log.note("lr iterations " + std::to_string(sol.iterations) +
                 (sol.converged ? " converged" : " not converged") +
                 (sol.escalationWarning ? " escalation-limit" : ""));
        if (sol.escalationWarning)
            std::cerr << "warning: proximal escalation limit reached; best iterate returned\n";
    } else {
        throw InvalidArgument("unknown method '" + method + "'");
    }

    saveModel((outDir / "model.txt").string(), model);
    writePredictions(outDir / "predictions.csv", f);
    std::cout << "wrote " << (outDir / "model.txt").string() << " and "
              << (outDir / "predictions.csv").string() << "\n";
    return 0;
}

int runPredict(const std::string& modelPath, const std::string& trainPath,
               const std::string& dataPath, Index labelColumn, std::size_t component,
               const fs::path& outDir) {
    RunLog log(outDir);
    const Model model = loadModel(modelPath);
    const Dataset train = loadCsv(trainPath, labelColumn);
    if (component < 1 || component > model.alphas.size())
        throw InvalidArgument("--component out of range (model has " +
                              std::to_string(model.alphas.size()) + ")");
    const SolutionFunction fn = functionFromModel(model, train.x, component - 1);

    Vector f;
    if (dataPath.empty()) {
        f = fn.trainingValues;
    } else {
        const Dataset fresh = loadCsv(dataPath, labelColumn);
        if (fresh.x.rows() == train.x.rows() && hashMatrix(fresh.x) == hashMatrix(train.x))
            f = fn.trainingValues;
        else
            f = predictMany(fn, fresh.x);  // gaussian-only off the training set
    }
    writePredictions(outDir / "predictions.csv", f);
    std::cout << "wrote " << (outDir / "predictions.csv").string() << "\n";
    return 0;
}

int runCv(const std::string& dataPath, Index labelColumn, const std::string& gridPath, int folds,
          bool loo, std::uint64_t seed, const fs::path& outDir) {
    RunLog log(outDir);
    const Dataset data = loadCsv(dataPath, labelColumn);
    const std::string grid = gridPath.empty() ? defaultGridPath("default.grid") : gridPath;
    const auto configs = expandGrid(parseGridFile(grid));
    log.note("grid " + grid + " with " + std::to_string(configs.size()) + " configs");
    const CvResult result = loo ? looSelect(data, configs)
                                : crossValidate(data, configs, folds, seed);
    writeCvReport((outDir / "cv_table.csv").string(), result);
    std::ofstream sel(outDir / "selected.txt");
    sel << configSummary(result.best) << "\n";
    sel << "mean_error " << fmt(result.table[static_cast<std::size_t>(result.bestIndex)].mean)
        << "\n";
    std::cout << "selected: " << configSummary(result.best) << "\n";
    return 0;
}

int runBench(const std::string& synthetic, Index m, Index dims, double sep, double noise,
             int splits, Index labels, const std::string& methodsCsv, const std::string& gridPath,
             std::uint64_t seed, const fs::path& outDir) {
    RunLog log(outDir);
    if (splits < 1) throw InvalidArgument("--splits must be >= 1");

    Dataset full;  // fully labeled; masks applied per split
    if (synthetic == "two-moons") {
        if (m == 0) m = 200;
        full = genTwoMoons(m, noise, m / 2, substream(seed, "bench-data").next());
    } else if (synthetic == "g241c-like") {
        if (m == 0) m = 1500;
        full = genTwoGaussians(m, sep, dims, m / 2, substream(seed, "bench-data").next());
    } else {
        throw InvalidArgument("--synthetic must be two-moons or g241c-like");
    }

    std::vector<std::string> methods;
    std::stringstream ss(methodsCsv);
    std::string item;
    while (std::getline(ss, item, ',')) if (!item.empty()) methods.push_back(item);
    if (methods.empty()) throw InvalidArgument("--methods is empty");

    std::vector<EvalConfig> grid;
    if (!gridPath.empty()) grid = expandGrid(parseGridFile(gridPath));
    else {
        const std::string name = synthetic == "two-moons" ? "two_moons.grid" : "g241c.grid";
        grid = expandGrid(parseGridFile(defaultGridPath(name)));
    }

    std::vector<EvalConfig> chosen;
    for (const auto& name : methods) {
        const Method method = methodFromName(name);
        if (method == Method::OneNN) {
            EvalConfig cfg;
            cfg.method = Method::OneNN;
            chosen.push_back(cfg);
            continue;
        }
        bool found = false;
        for (const auto& cfg : grid)
            if (cfg.method == method) {  // first grid entry for the method
                chosen.push_back(cfg);
                found = true;
                break;
            }
        if (!found)
            throw InvalidArgument("no config for method '" + name + "' in the grid file");
    }

    // kernels shared across splits
    std::vector<KernelMatrix> kernels(chosen.size());
    for (std::size_t i = 0; i < chosen.size(); ++i)
        if (chosen[i].method != Method::OneNN)
            kernels[i] = buildKernel(full.x, chosen[i].kernel);

    std::ofstream rows(outDir / "bench.csv");
    rows << "method,split,error\n";
    std::vector<std::vector<double>> errors(chosen.size());
    for (int split = 0; split < splits; ++split) {
        Rng mask = substream(seed, "bench-split", static_cast<std::uint64_t>(split));
        Dataset masked = full;
        masked.y = maskLabels(full.y, labels, mask);
        std::vector<Index> hidden;
        for (Index i = 0; i < masked.m(); ++i)
            if (masked.y(i) == 0) hidden.push_back(i);
        for (std::size_t ci = 0; ci < chosen.size(); ++ci) {
            const RunResult run = chosen[ci].method == Method::OneNN
                                      ? runConfig(masked, chosen[ci])
                                      : runConfig(masked, kernels[ci], chosen[ci]);
            IntVector pred(static_cast<Index>(hidden.size())),
                truth(static_cast<Index>(hidden.size()));
            for (std::size_t i = 0; i < hidden.size(); ++i) {
                pred(static_cast<Index>(i)) = run.predictions(hidden[i]);
                truth(static_cast<Index>(i)) = full.y(hidden[i]);
            }
            const double err = transductiveError(pred, truth);
            errors[ci].push_back(err);
            rows << static_cast<int>(chosen[ci].method) << "," << split << "," << fmt(err)
                 << "\n";
        }
        log.note("split " + std::to_string(split) + " done");
    }

    std::ofstream summary(outDir / "bench_summary.csv");
    summary << "method,mean,std\n";
    std::cout << "method  mean(std) over " << splits << " splits\n";
    for (std::size_t ci = 0; ci < chosen.size(); ++ci) {
        double mean = 0;
        for (const double e : errors[ci]) mean += e;
        mean /= static_cast<double>(errors[ci].size());
        double var = 0;
        for (const double e : errors[ci]) var += (e - mean) * (e - mean);
        const double sd = errors[ci].size() > 1
                              ? std::sqrt(var / static_cast<double>(errors[ci].size() - 1))
                              : 0.0;
        summary << static_cast<int>(chosen[ci].method) << "," << fmt(mean) << "," << fmt(sd)
                << "\n";
        std::printf("%-6s  %.4f (%.4f)\n", methodName(chosen[ci].method).c_str(), mean, sd);
    }
    return 0;
}

int runBound(double rl, double q, double s2, Index l, Index n, double delta, bool general,
             double mu, double kfro) {
    double value;
    if (general) {
        value = riskBoundGeneral(rl, mu, kfro, l, n, delta);
    } else {
        RiskBoundInput input;
        input.empiricalRisk = rl;
        input.q = q;
        input.s2 = s2;
        input.l = l;
        input.n = n;
        input.deltaConf = delta;
        value = riskBound(input);
    }
    std::cout << fmt(value) << "\n";
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"semi-supervised kernel PCA toolkit"};
    app.require_subcommand(1);

    // gen
    auto* gen = app.add_subcommand("gen", "generate a synthetic dataset CSV");
    Index genMoons = 0, genGauss = 0, genDims = 2, genLabels = 4;
    double genSep = 2.5, genNoise = 0.05;
    std::uint64_t genSeed = 1;
    std::string genOut = "dataset.csv";
    gen->add_option("--two-moons", genMoons, "point count for the two-moons generator");
    gen->add_option("--two-gaussians", genGauss, "point count for the two-Gaussians generator");
    gen->add_option("--dims", genDims, "dimensionality (two-gaussians)");
    gen->add_option("--sep", genSep, "mean separation (two-gaussians)");
    gen->add_option("--noise", genNoise, "noise standard deviation (two-moons)");
    gen->add_option("--labels", genLabels, "labeled points per class");
    gen->add_option("--seed", genSeed, "generator seed");
    gen->add_option("--out", genOut, "output CSV path");

    // fit
    auto* fit = app.add_subcommand("fit", "fit one model and write model + predictions");
    std::string fitData, fitMethod = "ls", fitCache, fitOut = ".";
    KernelFlags fitKernel;
    double fitC = 1.0, fitS2 = 1.0, fitS2pp = 0.0;
    bool fitUncentered = false;
    Index fitK = 1, fitLabelCol = -1;
    std::uint64_t fitSeed = 1;
    fit->add_option("data", fitData, "dataset CSV")->required();
    fit->add_option("--method", fitMethod, "kpca|mv|ls|lr")
        ->check(CLI::IsMember({"kpca", "mv", "ls", "lr"}));
    addKernelFlags(fit, fitKernel);
    fit->add_option("--c", fitC, "labeled-loss weight");
    fit->add_option("--s2", fitS2, "variance constraint level (absolute)");
    fit->add_option("--s2pp", fitS2pp, "variance constraint level per point (s2 = value * m)");
    fit->add_flag("--uncentered", fitUncentered, "plain variance instead of centered");
    fit->add_flag("--centered", [](std::int64_t) {}, "centered variance (default)");
    fit->add_flag("--groups-from-labels", [](std::int64_t) {},
                  "mv groups from class labels (default and only mode)");
    fit->add_option("--k", fitK, "eigenfunction count (kpca/mv)");
    fit->add_option("--label-column", fitLabelCol, "label column index (default last)");
    fit->add_option("--kernel-cache", fitCache, "binary kernel cache file");
    fit->add_option("--seed", fitSeed, "accepted for interface uniformity");
    fit->add_option("--out", fitOut, "output directory");

    // predict
    auto* pred = app.add_subcommand("predict", "evaluate a saved model");
    std::string predModel, predTrain, predData, predOut = ".";
    std::size_t predComponent = 1;
    Index predLabelCol = -1;
    pred->add_option("--model", predModel, "model file")->required();
    pred->add_option("--train", predTrain, "training dataset CSV (hash must match)")->required();
    pred->add_option("--data", predData, "points to evaluate (default: training points)");
    pred->add_option("--component", predComponent, "1-based eigenfunction index");
    pred->add_option("--label-column", predLabelCol, "label column index (default last)");
    pred->add_option("--out", predOut, "output directory");

    // cv
    auto* cv = app.add_subcommand("cv", "cross-validated model selection over a grid");
    std::string cvData, cvGrid, cvOut = ".";
    int cvFolds = 10;
    bool cvLoo = false;
    std::uint64_t cvSeed = 1;
    Index cvLabelCol = -1;
    cv->add_option("data", cvData, "dataset CSV")->required();
    cv->add_option("--grid", cvGrid, "grid file (default grids/default.grid)");
    cv->add_option("--folds", cvFolds, "fold count");
    cv->add_flag("--loo", cvLoo, "leave-one-out instead of k folds");
    cv->add_option("--seed", cvSeed, "fold shuffle seed");
    cv->add_option("--label-column", cvLabelCol, "label column index (default last)");
    cv->add_option("--out", cvOut, "output directory");

    // bench
    auto* bench = app.add_subcommand("bench", "seeded multi-split benchmark");
    std::string benchSyn = "g241c-like", benchMethods = "ls,1nn", benchGrid, benchOut = ".";
    Index benchM = 0, benchDims = 241, benchLabels = 50;
    double benchSep = 2.5, benchNoise = 0.05;
    int benchSplits = 12;
    std::uint64_t benchSeed = 1;
    bench->add_option("--synthetic", benchSyn, "two-moons|g241c-like");
    bench->add_option("--m", benchM, "point count (default 200 moons / 1500 g241c)");
    bench->add_option("--dims", benchDims, "dimensionality (g241c-like)");
    bench->add_option("--sep", benchSep, "mean separation (g241c-like)");
    bench->add_option("--noise", benchNoise, "noise level (two-moons)");
    bench->add_option("--splits", benchSplits, "number of label splits");
    bench->add_option("--labels", benchLabels, "labeled points per class");
    bench->add_option("--methods", benchMethods, "comma list from kpca,mv,ls,lr,1nn");
    bench->add_option("--grid", benchGrid, "grid file supplying each method's config");
    bench->add_option("--seed", benchSeed, "base seed");
    bench->add_option("--out", benchOut, "output directory");

    // bound
    auto* bound = app.add_subcommand("bound", "evaluate the transductive risk bound");
    double bRl = 0.0, bQ = 0.0, bS2 = 1.0, bDelta = 0.05, bMu = 1.0, bKfro = 1.0;
    Index bL = 1, bN = 1;
    bool bGeneral = false;
    bound->add_option("--rl", bRl, "empirical labeled risk");
    bound->add_option("--q", bQ, "rank of the coefficient-space quadratic");
    bound->add_option("--s2", bS2, "variance constraint level");
    bound->add_option("--l", bL, "labeled count")->required();
    bound->add_option("--n", bN, "unlabeled count")->required();
    bound->add_option("--delta", bDelta, "confidence parameter");
    bound->add_flag("--general", bGeneral, "use the coefficient-norm form");
    bound->add_option("--mu", bMu, "coefficient-norm bound (general form)");
    bound->add_option("--kfro", bKfro, "Frobenius norm of K (general form)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }

    try {
        if (gen->parsed())
            return runGen(genMoons, genGauss, genDims, genSep, genNoise, genLabels, genSeed,
                          genOut);
        if (fit->parsed())
            return runFit(fitData, fitLabelCol, fitMethod, fitKernel, fitC, fitS2, fitS2pp,
                          fitUncentered, fitK, fitCache, ensureOutDir(fitOut));
        if (pred->parsed())
            return runPredict(predModel, predTrain, predData, predLabelCol, predComponent,
                              ensureOutDir(predOut));
        if (cv->parsed())
            return runCv(cvData, cvLabelCol, cvGrid, cvFolds, cvLoo, cvSeed, ensureOutDir(cvOut));
        if (bench->parsed())
            return runBench(benchSyn, benchM, benchDims, benchSep, benchNoise, benchSplits,
                            benchLabels, benchMethods, benchGrid, benchSeed,
                            ensureOutDir(benchOut));
        if (bound->parsed())
            return runBound(bRl, bQ, bS2, bL, bN, bDelta, bGeneral, bMu, bKfro);
        std::cerr << "no subcommand\n";
        return 2;
    } catch (const InvalidArgument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const NumericalError& e) {
        std::cerr << "numerical error: " << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
}
