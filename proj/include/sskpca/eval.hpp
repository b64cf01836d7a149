#pragma once

#include "sskpca/common.hpp"
#include "sskpca/dataset.hpp"
#include "sskpca/kernels.hpp"

#include <string>
#include <vector>

namespace sskpca {

// Threshold b minimizing labeled 0/1 error of sign(f - b); candidates are the
// midpoints of the sorted labeled f-values plus -inf/+inf sentinels, ties
// broken toward the candidate with the largest margin to the nearest value.
double thresholdHead(const Vector& f, const Vector& t);

struct LinearClassifier {
    Vector w;
    double bias = 0.0;
    bool degenerate = false;  // single-class input; constant classifier
};

// Maximum-margin linear classifier on up to 10 features (soft margin with
// penalty 1e6 as the inseparable fallback), trained by pairwise SMO sweeps.
LinearClassifier svmHead(const Matrix& features, const Vector& t);
int classifyLinear(const LinearClassifier& cls, const Vector& phi);

// fraction of mismatches; inputs restricted to the evaluated points
double transductiveError(const IntVector& predictions, const IntVector& truth);

enum class Method { Kpca, Mv, Ls, Lr, OneNN };
enum class Head { Threshold, Svm };

std::string methodName(Method method);
Method methodFromName(const std::string& name);
std::string headName(Head head);
Head headFromName(const std::string& name);

struct EvalConfig {
    Method method = Method::Ls;
    KernelSpec kernel;
    double c = 1.0;
    double s2 = 1.0;  // absolute, or per point when s2PerPoint (resolved as s2 * m)
    bool s2PerPoint = false;
    bool centered = true;
    Head head = Head::Threshold;
    int components = 1;
};

struct ParamGrid {
    std::vector<Method> methods{Method::Ls};
    std::vector<KernelKind> kinds{KernelKind::Gaussian};
    std::vector<double> gammas{1.0};
    std::vector<double> taus{1.0};
    std::vector<double> ws{0.5};
    std::vector<int> knns{10};
    std::vector<double> cs{1.0};
    std::vector<double> s2s{1.0};
    bool s2PerPoint = false;
    std::vector<int> centered{1};
    std::vector<Head> heads{Head::Threshold};
    std::vector<int> components{1};
};

// Cartesian product with parameters irrelevant to a (method, kernel) pair
// pinned to defaults, exact duplicates dropped.
std::vector<EvalConfig> expandGrid(const ParamGrid& grid);

// "key = v1, v2, ..." lines, '#' comments. Keys: method, kernel, gamma, tau,
// mix-w, knn, c, s2, s2pp, centered, head, components.
ParamGrid parseGridFile(const std::string& path);

std::string configSummary(const EvalConfig& cfg);

struct RunResult {
    IntVector predictions;  // +-1 for every point
    Vector scores;
    bool headDegenerate = false;
};

// Fits cfg.method using data.y as the visible labels and predicts every
// point. The kernel must match cfg.kernel (built once by the caller so CV
// folds can share it); 1-NN ignores it.
RunResult runConfig(const Dataset& data, const KernelMatrix& k, const EvalConfig& cfg);
RunResult runConfig(const Dataset& data, const EvalConfig& cfg);

struct CvRow {
    EvalConfig config;
    std::vector<double> foldErrors;
    double mean = 0.0;
    double stddev = 0.0;
};

struct CvResult {
    EvalConfig best;
    Index bestIndex = 0;
    std::vector<CvRow> table;
};

// Transductive k-fold CV over the labeled points: each fold's labels are
// hidden (points stay in the fit), errors averaged, argmin returned with ties
// broken by config values so grid order cannot matter.
CvResult crossValidate(const Dataset& data, const std::vector<EvalConfig>& grid, int folds,
                       std::uint64_t seed);
CvResult looSelect(const Dataset& data, const std::vector<EvalConfig>& grid);

void writeCvReport(const std::string& path, const CvResult& result);

struct RiskBoundInput {
    double empiricalRisk = 0.0;  // on the labeled points
    double q = 0.0;              // rank of the coefficient-space quadratic
    double s2 = 1.0;
    Index l = 1;
    Index n = 1;
    double deltaConf = 0.05;
};

// sqrt(32 ln(4e) / 3), provably below 5.05
double riskBoundConstant();

// R_l + sqrt(2 q s2 / (l n)) + const * r * sqrt(min(l, n)) + sqrt(2 r ln(1/delta)),
// r = 1/l + 1/n
double riskBound(const RiskBoundInput& input);

// uniform-deviation form with a coefficient-norm bound mu and |K|_Frobenius
double riskBoundGeneral(double empiricalRisk, double mu, double kFro, Index l, Index n,
                        double deltaConf);

Index numericalRank(const Matrix& m, double relTol = 1e-10);

}  // namespace sskpca
