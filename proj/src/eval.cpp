#include "sskpca/eval.hpp"

#include "sskpca/eig.hpp"
#include "sskpca/kpca.hpp"
#include "sskpca/lrkpca.hpp"
#include "sskpca/lskpca.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>
#include <map>
#include <sstream>
#include <tuple>

namespace sskpca {

double thresholdHead(const Vector& f, const Vector& t) {
    if (f.size() != t.size() || f.size() < 1)
        throw InvalidArgument("thresholdHead: need matching nonempty f and t");
    std::vector<double> sorted(f.data(), f.data() + f.size());
    std::sort(sorted.begin(), sorted.end());
    std::vector<double> candidates;
    candidates.push_back(-std::numeric_limits<double>::infinity());
    for (std::size_t i = 0; i + 1 < sorted.size(); ++i)
        if (sorted[i] < sorted[i + 1]) candidates.push_back(0.5 * (sorted[i] + sorted[i + 1]));
    candidates.push_back(std::numeric_limits<double>::infinity());

    double best = candidates.front();
    Index bestErrors = f.size() + 1;
    double bestMargin = -1.0;
    for (const double b : candidates) {
        Index errors = 0;
        double margin = std::numeric_limits<double>::infinity();
        for (Index i = 0; i < f.size(); ++i) {
            const int pred = f(i) > b ? 1 : -1;
            if (pred != static_cast<int>(t(i))) ++errors;
            margin = std::min(margin, std::abs(f(i) - b));
        }
        if (errors < bestErrors || (errors == bestErrors && margin > bestMargin)) {
            bestErrors = errors;
            bestMargin = margin;
            best = b;
        }
    }
    return best;
}

LinearClassifier svmHead(const Matrix& features, const Vector& t) {
    const Index l = features.rows();
    if (l != t.size() || l < 1) throw InvalidArgument("svmHead: shape mismatch");
    if (features.cols() > 10) throw InvalidArgument("svmHead: at most 10 features");

    LinearClassifier cls;
    bool hasPos = false, hasNeg = false;
    for (Index i = 0; i < l; ++i) (t(i) > 0 ? hasPos : hasNeg) = true;
    if (!hasPos || !hasNeg) {
        cls.w = Vector::Zero(features.cols());
        cls.bias = hasPos ? 1.0 : -1.0;
        cls.degenerate = true;
        return cls;
    }

    const double penalty = 1e6;  // effectively hard margin when separable
    const Matrix gram = features * features.transpose();
    Vector alpha = Vector::Zero(l);
    Vector fcache = Vector::Zero(l);  // sum_j alpha_j t_j K_ij, bias-free

    const int maxPasses = 10000;
    for (int pass = 0; pass < maxPasses; ++pass) {
        double largestChange = 0.0;
        for (Index i = 0; i < l; ++i) {
            for (Index j = i + 1; j < l; ++j) {
                const double eta = gram(i, i) + gram(j, j) - 2.0 * gram(i, j);
                if (eta <= 1e-30) continue;
                const double ei = fcache(i) - t(i);
                const double ej = fcache(j) - t(j);
                double lo, hi;
                if (t(i) != t(j)) {
                    lo = std::max(0.0, alpha(j) - alpha(i));
                    hi = std::min(penalty, penalty + alpha(j) - alpha(i));
                } else {
                    lo = std::max(0.0, alpha(i) + alpha(j) - penalty);
                    hi = std::min(penalty, alpha(i) + alpha(j));
                }
                if (lo >= hi) continue;
                double ajNew = alpha(j) + t(j) * (ei - ej) / eta;
                ajNew = std::clamp(ajNew, lo, hi);
                const double dj = ajNew - alpha(j);
                if (std::abs(dj) < 1e-14 * (1.0 + alpha(j))) continue;
                const double di = -t(i) * t(j) * dj;
                alpha(i) += di;
                alpha(j) = ajNew;
                fcache += (di * t(i)) * gram.col(i) + (dj * t(j)) * gram.col(j);
                largestChange = std::max(largestChange, std::abs(dj));
            }
        }
        if (largestChange < 1e-12) break;
    }

    cls.w = features.transpose() * alpha.cwiseProduct(t);
    // bias from free support vectors; fall back to the midpoint rule
    double biasSum = 0.0;
    Index biasCount = 0;
    for (Index i = 0; i < l; ++i) {
        if (alpha(i) > 1e-8 && alpha(i) < penalty * (1.0 - 1e-8)) {
            biasSum += t(i) - fcache(i);
            ++biasCount;
        }
    }
    if (biasCount > 0) {
        cls.bias = biasSum / static_cast<double>(biasCount);
    } else {
        double posMin = std::numeric_limits<double>::infinity();
        double negMax = -std::numeric_limits<double>::infinity();
        for (Index i = 0; i < l; ++i) {
            const double v = features.row(i).dot(cls.w);
            if (t(i) > 0) posMin = std::min(posMin, v);
            else negMax = std::max(negMax, v);
        }
        cls.bias = -0.5 * (posMin + negMax);
    }
    return cls;
}

int classifyLinear(const LinearClassifier& cls, const Vector& phi) {
    return phi.dot(cls.w) + cls.bias > 0 ? 1 : -1;
}

double transductiveError(const IntVector& predictions, const IntVector& truth) {
    if (predictions.size() != truth.size())
        throw InvalidArgument("transductiveError: length mismatch");
    if (predictions.size() == 0) return 0.0;
    Index wrong = 0;
    for (Index i = 0; i < predictions.size(); ++i)
        if (predictions(i) != truth(i)) ++wrong;
    return static_cast<double>(wrong) / static_cast<double>(predictions.size());
}

std::string methodName(Method method) {
    switch (method) {
        case Method::Kpca: return "kpca";
        case Method::Mv: return "mv";
        case Method::Ls: return "ls";
        case Method::Lr: return "lr";
        case Method::OneNN: return "1nn";
    }
    throw InvalidArgument("unknown method");
}

Method methodFromName(const std::string& name) {
    if (name == "kpca") return Method::Kpca;
    if (name == "mv") return Method::Mv;
    if (name == "ls") return Method::Ls;
    if (name == "lr") return Method::Lr;
    if (name == "1nn") return Method::OneNN;
    throw InvalidArgument("unknown method '" + name + "'");
}

std::string headName(Head head) { return head == Head::Threshold ? "threshold" : "svm10"; }

Head headFromName(const std::string& name) {
    if (name == "threshold") return Head::Threshold;
    if (name == "svm10" || name == "svm") return Head::Svm;
    throw InvalidArgument("unknown head '" + name + "'");
}

namespace {

// pin parameters the (method, kernel) pair never reads so duplicates collapse
EvalConfig canonical(EvalConfig cfg) {
    switch (cfg.kernel.kind) {
        case KernelKind::Gaussian:
            cfg.kernel.tau = 1.0;
            cfg.kernel.w = 0.5;
            cfg.kernel.knn = 10;
            break;
        case KernelKind::Diffusion:
            cfg.kernel.gamma = 1.0;
            cfg.kernel.w = 0.5;
            break;
        case KernelKind::Mixed: break;
        case KernelKind::LaplacianPinv:
            cfg.kernel.gamma = 1.0;
            cfg.kernel.tau = 1.0;
            cfg.kernel.w = 0.5;
            break;
    }
    switch (cfg.method) {
        case Method::Kpca:
            cfg.c = 0.0;
            cfg.s2 = 1.0;
            cfg.s2PerPoint = false;
            break;
        case Method::Mv:
            cfg.s2 = 1.0;
            cfg.s2PerPoint = false;
            break;
        case Method::Ls:
        case Method::Lr:
            cfg.head = Head::Threshold;
            cfg.components = 1;
            break;
        case Method::OneNN:
            cfg.kernel = KernelSpec{};
            cfg.c = 0.0;
            cfg.s2 = 1.0;
            cfg.s2PerPoint = false;
            cfg.head = Head::Threshold;
            cfg.components = 1;
            break;
    }
    if (cfg.head == Head::Threshold && (cfg.method == Method::Kpca || cfg.method == Method::Mv))
        cfg.components = 1;
    return cfg;
}

auto configKey(const EvalConfig& c) {
    return std::make_tuple(static_cast<int>(c.method), static_cast<int>(c.kernel.kind),
                           c.kernel.gamma, c.kernel.tau, c.kernel.w, c.kernel.knn, c.c, c.s2,
                           c.s2PerPoint, c.centered, static_cast<int>(c.head), c.components);
}

// total order for deterministic tie-breaking: smaller c first, then gamma
bool configLess(const EvalConfig& a, const EvalConfig& b) {
    const auto ka = std::make_tuple(a.c, a.kernel.gamma, a.kernel.tau, a.kernel.w, a.kernel.knn,
                                    a.s2, static_cast<int>(a.method),
                                    static_cast<int>(a.kernel.kind), static_cast<int>(a.head),
                                    a.components, a.centered, a.s2PerPoint);
    const auto kb = std::make_tuple(b.c, b.kernel.gamma, b.kernel.tau, b.kernel.w, b.kernel.knn,
                                    b.s2, static_cast<int>(b.method),
                                    static_cast<int>(b.kernel.kind), static_cast<int>(b.head),
                                    b.components, b.centered, b.s2PerPoint);
    return ka < kb;
}

}  // namespace

std::vector<EvalConfig> expandGrid(const ParamGrid& grid) {
    std::vector<EvalConfig> out;
    std::vector<decltype(configKey(EvalConfig{}))> seen;
    for (const Method method : grid.methods)
        for (const KernelKind kind : grid.kinds)
            for (const double gamma : grid.gammas)
                for (const double tau : grid.taus)
                    for (const double w : grid.ws)
                        for (const int knn : grid.knns)
                            for (const double c : grid.cs)
                                for (const double s2 : grid.s2s)
                                    for (const int centered : grid.centered)
                                        for (const Head head : grid.heads)
                                            for (const int comp : grid.components) {
                                                EvalConfig cfg;
                                                cfg.method = method;
                                                cfg.kernel.kind = kind;
                                                cfg.kernel.gamma = gamma;
                                                cfg.kernel.tau = tau;
                                                cfg.kernel.w = w;
                                                cfg.kernel.knn = knn;
                                                cfg.c = c;
                                                cfg.s2 = s2;
                                                cfg.s2PerPoint = grid.s2PerPoint;
                                                cfg.centered = centered != 0;
                                                cfg.head = head;
                                                cfg.components = comp;
                                                cfg = canonical(cfg);
                                                const auto key = configKey(cfg);
                                                if (std::find(seen.begin(), seen.end(), key) !=
                                                    seen.end())
                                                    continue;
                                                seen.push_back(key);
                                                out.push_back(cfg);
                                            }
    if (out.empty()) throw InvalidArgument("expandGrid: empty grid");
    return out;
}

ParamGrid parseGridFile(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw InvalidArgument("cannot open grid file " + path);
    ParamGrid grid;
    std::string line;
    std::size_t lineNo = 0;
    while (std::getline(in, line)) {
        ++lineNo;
        const auto hash = line.find('#');
        if (hash != std::string::npos) line = line.substr(0, hash);
        const auto eq = line.find('=');
        if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
        if (eq == std::string::npos)
            throw InvalidArgument(path + ":" + std::to_string(lineNo) + ": expected key = values");
        auto trim = [](std::string s) {
            const auto b = s.find_first_not_of(" \t\r");
            if (b == std::string::npos) return std::string();
            const auto e = s.find_last_not_of(" \t\r");
            return s.substr(b, e - b + 1);
        };
        const std::string key = trim(line.substr(0, eq));
        std::vector<std::string> values;
        std::stringstream ss(line.substr(eq + 1));
        std::string item;
        while (std::getline(ss, item, ',')) {
            item = trim(item);
            if (!item.empty()) values.push_back(item);
        }
        if (values.empty())
            throw InvalidArgument(path + ":" + std::to_string(lineNo) + ": no values for " + key);
        auto doubles = [&] {
            std::vector<double> v;
            for (const auto& s : values) v.push_back(std::stod(s));
            return v;
        };
        auto ints = [&] {
            std::vector<int> v;
            for (const auto& s : values) v.push_back(std::stoi(s));
            return v;
        };
        try {
            if (key == "method") {
                grid.methods.clear();
                for (const auto& s : values) grid.methods.push_back(methodFromName(s));
            } else if (key == "kernel") {
                grid.kinds.clear();
                for (const auto& s : values) grid.kinds.push_back(kindFromName(s));
            } else if (key == "gamma") {
                grid.gammas = doubles();
            } else if (key == "tau") {
                grid.taus = doubles();
            } else if (key == "mix-w") {
                grid.ws = doubles();
            } else if (key == "knn") {
                grid.knns = ints();
            } else if (key == "c") {
                grid.cs = doubles();
            } else if (key == "s2") {
                grid.s2s = doubles();
                grid.s2PerPoint = false;
            } else if (key == "s2pp") {
                grid.s2s = doubles();
                grid.s2PerPoint = true;
            } else if (key == "centered") {
                grid.centered.clear();
                for (const auto& s : values) {
                    if (s == "true" || s == "1") grid.centered.push_back(1);
                    else if (s == "false" || s == "0") grid.centered.push_back(0);
                    else throw InvalidArgument("centered must be true/false");
                }
            } else if (key == "head") {
                grid.heads.clear();
                for (const auto& s : values) grid.heads.push_back(headFromName(s));
            } else if (key == "components") {
                grid.components = ints();
            } else {
                throw InvalidArgument("unknown key '" + key + "'");
            }
        } catch (const std::exception& e) {
            throw InvalidArgument(path + ":" + std::to_string(lineNo) + ": " + e.what());
        }
    }
    return grid;
}

std::string configSummary(const EvalConfig& cfg) {
    char buf[256];
    std::snprintf(buf, sizeof buf,
                  "method=%s kernel=%s gamma=%g tau=%g mix-w=%g knn=%d c=%g s2=%g%s %s head=%s "
                  "components=%d",
                  methodName(cfg.method).c_str(), kindName(cfg.kernel.kind).c_str(),
                  cfg.kernel.gamma, cfg.kernel.tau, cfg.kernel.w, cfg.kernel.knn, cfg.c, cfg.s2,
                  cfg.s2PerPoint ? " (per point)" : "", cfg.centered ? "centered" : "uncentered",
                  headName(cfg.head).c_str(), cfg.components);
    return buf;
}

namespace {

IntVector signsOf(const Vector& scores) {
    IntVector out(scores.size());
    for (Index i = 0; i < scores.size(); ++i) out(i) = scores(i) > 0 ? 1 : -1;
    return out;
}

RunResult headOverBasis(const Dataset& data, const EigenfunctionBasis& basis,
                        const EvalConfig& cfg) {
    const auto labeled = labeledIndices(data.y);
    const Index m = data.m();
    RunResult res;
    if (cfg.head == Head::Threshold) {
        const Vector& f = basis.functions.front().trainingValues;
        Vector fl(static_cast<Index>(labeled.size())), tl(static_cast<Index>(labeled.size()));
        for (std::size_t i = 0; i < labeled.size(); ++i) {
            fl(static_cast<Index>(i)) = f(labeled[i]);
            tl(static_cast<Index>(i)) = data.y(labeled[i]);
        }
        const double b = thresholdHead(fl, tl);
        res.scores = f.array() - b;
        res.predictions = signsOf(res.scores);
        return res;
    }
    const Index k = static_cast<Index>(basis.functions.size());
    Matrix phi(m, k);
    for (Index j = 0; j < k; ++j) phi.col(j) = basis.functions[static_cast<std::size_t>(j)].trainingValues;
    Matrix phiL(static_cast<Index>(labeled.size()), k);
    Vector tl(static_cast<Index>(labeled.size()));
    for (std::size_t i = 0; i < labeled.size(); ++i) {
        phiL.row(static_cast<Index>(i)) = phi.row(labeled[i]);
        tl(static_cast<Index>(i)) = data.y(labeled[i]);
    }
    const LinearClassifier cls = svmHead(phiL, tl);
    res.headDegenerate = cls.degenerate;
    res.scores = phi * cls.w;
    res.scores.array() += cls.bias;
    res.predictions = signsOf(res.scores);
    return res;
}

RunResult oneNearestNeighbor(const Dataset& data) {
    const auto labeled = labeledIndices(data.y);
    if (labeled.empty()) throw InvalidArgument("1nn: no labeled points");
    RunResult res;
    res.predictions.resize(data.m());
    res.scores = Vector::Zero(data.m());
    parallelFor(data.m(), [&](Index begin, Index end) {
        for (Index i = begin; i < end; ++i) {
            double best = std::numeric_limits<double>::infinity();
            int label = 0;
            for (const Index j : labeled) {
                const double d2 = (data.x.row(i) - data.x.row(j)).squaredNorm();
                if (d2 < best) {
                    best = d2;
                    label = data.y(j);
                }
            }
            res.predictions(i) = label;
            res.scores(i) = label;
        }
    });
    return res;
}

}  // namespace

RunResult runConfig(const Dataset& data, const KernelMatrix& k, const EvalConfig& cfg) {
    if (cfg.method == Method::OneNN) return oneNearestNeighbor(data);
    const double s2 = cfg.s2PerPoint ? cfg.s2 * static_cast<double>(data.m()) : cfg.s2;
    switch (cfg.method) {
        case Method::Kpca: {
            const auto basis = kpcaFit(k, cfg.centered, cfg.components);
            return headOverBasis(data, basis, cfg);
        }
        case Method::Mv: {
            const auto basis = mvkpcaFit(k, groupsFromLabels(data), cfg.c, cfg.components);
            return headOverBasis(data, basis, cfg);
        }
        case Method::Ls: {
            const LsSolution sol = lskpcaFit(k, data, LsConfig{cfg.c, s2, cfg.centered});
            const auto labeled = labeledIndices(data.y);
            Vector fl(static_cast<Index>(labeled.size())), tl(static_cast<Index>(labeled.size()));
            for (std::size_t i = 0; i < labeled.size(); ++i) {
                fl(static_cast<Index>(i)) = sol.fn.trainingValues(labeled[i]);
                tl(static_cast<Index>(i)) = data.y(labeled[i]);
            }
            const double b = thresholdHead(fl, tl);
            RunResult res;
            res.scores = sol.fn.trainingValues.array() - b;
            res.predictions = signsOf(res.scores);
            return res;
        }
        case Method::Lr: {
            LrConfig lrCfg;
            lrCfg.c = cfg.c;
            lrCfg.s2 = s2;
            lrCfg.centered = cfg.centered;
            const LrSolution sol = lrkpcaFit(k, data, lrCfg);
            const auto labeled = labeledIndices(data.y);
            Vector fl(static_cast<Index>(labeled.size())), tl(static_cast<Index>(labeled.size()));
            for (std::size_t i = 0; i < labeled.size(); ++i) {
                fl(static_cast<Index>(i)) = sol.fn.trainingValues(labeled[i]);
                tl(static_cast<Index>(i)) = data.y(labeled[i]);
            }
            const double b = thresholdHead(fl, tl);
            RunResult res;
            res.scores = sol.fn.trainingValues.array() - b;
            res.predictions = signsOf(res.scores);
            return res;
        }
        default: break;
    }
    throw InvalidArgument("runConfig: unknown method");
}

RunResult runConfig(const Dataset& data, const EvalConfig& cfg) {
    if (cfg.method == Method::OneNN) return oneNearestNeighbor(data);
    return runConfig(data, buildKernel(data.x, cfg.kernel), cfg);
}

CvResult crossValidate(const Dataset& data, const std::vector<EvalConfig>& grid, int folds,
                       std::uint64_t seed) {
    if (grid.empty()) throw InvalidArgument("crossValidate: empty grid");
    const auto labeled = labeledIndices(data.y);
    if (folds < 2 || static_cast<std::size_t>(folds) > labeled.size())
        throw InvalidArgument("crossValidate: folds must be in [2, |labeled|]");
    Rng rng = substream(seed, "cv-folds");
    const auto foldSets = makeFolds(labeled, folds, rng);

    // kernels shared across configs and folds (labels do not touch them)
    std::map<std::string, KernelMatrix> kernels;
    for (const auto& cfg : grid) {
        if (cfg.method == Method::OneNN) continue;
        std::ostringstream key;
        key << kindName(cfg.kernel.kind) << "," << cfg.kernel.gamma << "," << cfg.kernel.tau << ","
            << cfg.kernel.w << "," << cfg.kernel.knn << "," << cfg.kernel.jitter;
        if (!kernels.count(key.str())) kernels.emplace(key.str(), buildKernel(data.x, cfg.kernel));
    }

    CvResult result;
    result.table.resize(grid.size());
    parallelFor(static_cast<Index>(grid.size()), [&](Index begin, Index end) {
        for (Index g = begin; g < end; ++g) {
            const EvalConfig& cfg = grid[static_cast<std::size_t>(g)];
            CvRow row;
            row.config = cfg;
            const KernelMatrix* kptr = nullptr;
            if (cfg.method != Method::OneNN) {
                std::ostringstream key;
                key << kindName(cfg.kernel.kind) << "," << cfg.kernel.gamma << ","
                    << cfg.kernel.tau << "," << cfg.kernel.w << "," << cfg.kernel.knn << ","
                    << cfg.kernel.jitter;
                kptr = &kernels.at(key.str());
            }
            for (const auto& fold : foldSets) {
                Dataset hidden = data;
                for (const Index i : fold) hidden.y(i) = 0;
                RunResult run;
                try {
                    run = cfg.method == Method::OneNN ? runConfig(hidden, cfg)
                                                      : runConfig(hidden, *kptr, cfg);
                } catch (const NumericalError&) {
                    row.foldErrors.push_back(1.0);  // failed fit scores worst
                    continue;
                }
                IntVector pred(static_cast<Index>(fold.size())), truth(static_cast<Index>(fold.size()));
                for (std::size_t i = 0; i < fold.size(); ++i) {
                    pred(static_cast<Index>(i)) = run.predictions(fold[i]);
                    truth(static_cast<Index>(i)) = data.y(fold[i]);
                }
                row.foldErrors.push_back(transductiveError(pred, truth));
            }
            double mean = 0.0;
            for (const double e : row.foldErrors) mean += e;
            mean /= static_cast<double>(row.foldErrors.size());
            double var = 0.0;
            for (const double e : row.foldErrors) var += (e - mean) * (e - mean);
            row.mean = mean;
            row.stddev = row.foldErrors.size() > 1
                             ? std::sqrt(var / static_cast<double>(row.foldErrors.size() - 1))
                             : 0.0;
            result.table[static_cast<std::size_t>(g)] = std::move(row);
        }
    });

    Index best = 0;
    for (Index g = 1; g < static_cast<Index>(result.table.size()); ++g) {
        const auto& cand = result.table[static_cast<std::size_t>(g)];
        const auto& cur = result.table[static_cast<std::size_t>(best)];
        if (cand.mean < cur.mean ||
            (cand.mean == cur.mean && configLess(cand.config, cur.config)))
            best = g;
    }
    result.bestIndex = best;
    result.best = result.table[static_cast<std::size_t>(best)].config;
    return result;
}

CvResult looSelect(const Dataset& data, const std::vector<EvalConfig>& grid) {
    const auto labeled = labeledIndices(data.y);
    return crossValidate(data, grid, static_cast<int>(labeled.size()), 0);
}

void writeCvReport(const std::string& path, const CvResult& result) {
    // all-numeric cells (method/kernel/head as enum ids) so the table stays
    // machine-parseable by the CSV reader
    std::ofstream out(path);
    if (!out) throw InvalidArgument("cannot write " + path);
    out << "method,kernel,gamma,tau,mix_w,knn,c,s2,s2_per_point,centered,head,components";
    const std::size_t folds = result.table.empty() ? 0 : result.table.front().foldErrors.size();
    for (std::size_t i = 0; i < folds; ++i) out << ",fold" << (i + 1);
    out << ",mean,std,selected\n";
    char buf[256];
    for (std::size_t g = 0; g < result.table.size(); ++g) {
        const auto& row = result.table[g];
        const auto& c = row.config;
        std::snprintf(buf, sizeof buf, "%d,%d,%.17g,%.17g,%.17g,%d,%.17g,%.17g,%d,%d,%d,%d",
                      static_cast<int>(c.method), static_cast<int>(c.kernel.kind), c.kernel.gamma,
                      c.kernel.tau, c.kernel.w, c.kernel.knn, c.c, c.s2, c.s2PerPoint ? 1 : 0,
                      c.centered ? 1 : 0, static_cast<int>(c.head), c.components);
        out << buf;
        for (const double e : row.foldErrors) {
            std::snprintf(buf, sizeof buf, ",%.17g", e);
            out << buf;
        }
        std::snprintf(buf, sizeof buf, ",%.17g,%.17g,%d\n", row.mean, row.stddev,
                      static_cast<Index>(g) == result.bestIndex ? 1 : 0);
        out << buf;
    }
    if (!out) throw InvalidArgument("write failure on " + path);
}

double riskBoundConstant() { return std::sqrt(32.0 * std::log(4.0 * M_E) / 3.0); }

double riskBound(const RiskBoundInput& input) {
    if (input.l < 1 || input.n < 1) throw InvalidArgument("riskBound: need l, n >= 1");
    if (!(input.deltaConf > 0 && input.deltaConf < 1))
        throw InvalidArgument("riskBound: delta must lie in (0, 1)");
    const double l = static_cast<double>(input.l);
    const double n = static_cast<double>(input.n);
    const double r = 1.0 / l + 1.0 / n;
    return input.empiricalRisk + std::sqrt(2.0 * input.q * input.s2 / (l * n)) +
           riskBoundConstant() * r * std::sqrt(std::min(l, n)) +
           std::sqrt(2.0 * r * std::log(1.0 / input.deltaConf));
}

double riskBoundGeneral(double empiricalRisk, double mu, double kFro, Index l, Index n,
                        double deltaConf) {
    if (l < 1 || n < 1) throw InvalidArgument("riskBoundGeneral: need l, n >= 1");
    if (!(deltaConf > 0 && deltaConf < 1))
        throw InvalidArgument("riskBoundGeneral: delta must lie in (0, 1)");
    const double ld = static_cast<double>(l);
    const double nd = static_cast<double>(n);
    const double r = 1.0 / ld + 1.0 / nd;
    return empiricalRisk + std::sqrt(2.0 * mu * mu * kFro * kFro / (ld * nd)) +
           riskBoundConstant() * r * std::sqrt(std::min(ld, nd)) +
           std::sqrt(2.0 * r * std::log(1.0 / deltaConf));
}

Index numericalRank(const Matrix& m, double relTol) {
    const auto eig = symmetricEig(m);
    const double largest = eig.values.cwiseAbs().maxCoeff();
    if (largest <= 0) return 0;
    Index rank = 0;
    for (Index i = 0; i < eig.values.size(); ++i)
        if (std::abs(eig.values(i)) > relTol * largest) ++rank;
    return rank;
}

}  // namespace sskpca
