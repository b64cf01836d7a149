#pragma once

#include "sskpca/cqp.hpp"
#include "sskpca/dataset.hpp"
#include "sskpca/kernels.hpp"
#include "sskpca/kpca.hpp"

#include <string>
#include <vector>

namespace sskpca {

// Newton-style working quantities at g = K_L alpha:
//   z = 1/(1+exp(-t g)), r = z (1-z), s = g - (z-t)(1-z)/z,
// with z clamped to [1e-12, 1-1e-12] before the division.
struct ReweightState {
    Vector g;
    Vector z;
    Vector r;
    Vector s;
};

ReweightState reweight(const Vector& g, const Vector& t);

struct LrConfig {
    double c = 1.0;
    double s2 = 1.0;
    bool centered = true;
    int maxIterations = 50;
    double convergenceTol = 1e-8;  // relative step norm on alpha
    double lambda0 = -1.0;         // proximal weight; <0 = 1e-4 * trace(K)/m
    double growth = 10.0;
    int maxEscalations = 12;
};

struct LrTraceRow {
    int iteration = 0;
    double objective = 0.0;
    double lambda = 0.0;
    double stepNorm = 0.0;
};

struct LrSolution {
    SolutionFunction fn;
    CqpSolution cqp;  // last inner solve
    LrConfig cfg;
    std::vector<LrTraceRow> trace;
    int iterations = 0;
    bool converged = false;
    bool escalationWarning = false;  // proximal escalation ran out without improvement
};

// alpha^T K alpha + c * sum_i sigmoid(-t_i g_i): the monitored objective the
// proximal backtracking loop must strictly decrease.
double lrObjective(const Vector& alpha, const Matrix& k, const Matrix& kl, const Vector& t,
                   double c);

// Gradient of the sigmoid loss term alone: -c K_L^T (t .* r).
Vector lrLossGradient(const Vector& alpha, const Matrix& kl, const Vector& t, double c);

// Reweighted sequence of constrained quadratic solves, started from the
// least-squares fit with the same (c, s2). Steps are accepted only on strict
// objective decrease; otherwise the proximal weight grows until acceptance or
// the escalation limit (which returns the best iterate with a warning flag).
LrSolution lrkpcaFit(const KernelMatrix& k, const Dataset& data, const LrConfig& cfg);

// iteration, objective, lambda, step norm
void writeTraceCsv(const std::string& path, const std::vector<LrTraceRow>& trace);

}  // namespace sskpca
