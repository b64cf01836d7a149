#include "sskpca/cqp.hpp"

#include "sskpca/eig.hpp"

#include <Eigen/Cholesky>
#include <Eigen/Eigenvalues>
#include <Eigen/LU>

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <optional>

namespace sskpca {
namespace {

constexpr int kMaxDoublings = 200;
constexpr int kMaxBrentIterations = 200;
constexpr double kRelTol = 1e-12;

void validate(const CqpProblem& pr) {
    const Index m = pr.c.rows();
    if (pr.c.cols() != m || pr.p.rows() != m || pr.p.cols() != m || pr.b.size() != m)
        throw InvalidArgument("cqp: inconsistent shapes");
    if (!(pr.s2 > 0)) throw InvalidArgument("cqp: s2 must be positive");
    if (!pr.c.allFinite() || !pr.p.allFinite() || !pr.b.allFinite())
        throw InvalidArgument("cqp: non-finite inputs");
}

std::optional<Vector> tryShifted(const CqpProblem& pr, double zeta) {
    Eigen::LLT<Matrix> llt(symmetrized(pr.c - zeta * pr.p));
    if (llt.info() != Eigen::Success) return std::nullopt;
    return llt.solve(pr.b);
}

// least-squares solve of a symmetric (possibly singular) system
Vector pinvSolve(const Matrix& m, const Vector& b, double relCutoff = 1e-12) {
    const auto eig = symmetricEig(m);
    const double largest = eig.values.cwiseAbs().maxCoeff();
    const double cutoff = relCutoff * std::max(largest, 1e-300);
    Vector proj = eig.vectors.transpose() * b;
    for (Index i = 0; i < proj.size(); ++i)
        proj(i) = std::abs(eig.values(i)) > cutoff ? proj(i) / eig.values(i) : 0.0;
    return eig.vectors * proj;
}

double brentRoot(const std::function<double(double)>& f, double a, double b, double fa, double fb) {
    if (fa == 0) return a;
    if (fb == 0) return b;
    if (fa * fb > 0) throw NumericalError("brent: root not bracketed");
    double c = a, fc = fa, d = b - a, e = d;
    for (int iter = 0; iter < kMaxBrentIterations; ++iter) {
        if (std::abs(fc) < std::abs(fb)) {
            a = b; b = c; c = a;
            fa = fb; fb = fc; fc = fa;
        }
        const double tol = 2.0 * std::numeric_limits<double>::epsilon() * std::abs(b) +
                           0.5 * kRelTol * std::max(1.0, std::abs(b));
        const double mid = 0.5 * (c - b);
        if (std::abs(mid) <= tol || fb == 0.0) return b;
        if (std::abs(e) >= tol && std::abs(fa) > std::abs(fb)) {
            double p, q, r;
            const double s = fb / fa;
            if (a == c) {  // secant
                p = 2.0 * mid * s;
                q = 1.0 - s;
            } else {  // inverse quadratic
                q = fa / fc;
                r = fb / fc;
                p = s * (2.0 * mid * q * (q - r) - (b - a) * (r - 1.0));
                q = (q - 1.0) * (r - 1.0) * (s - 1.0);
            }
            if (p > 0) q = -q;
            p = std::abs(p);
            if (2.0 * p < std::min(3.0 * mid * q - std::abs(tol * q), std::abs(e * q))) {
                e = d;
                d = p / q;
            } else {
                d = mid;
                e = d;
            }
        } else {
            d = mid;
            e = d;
        }
        a = b;
        fa = fb;
        b += std::abs(d) > tol ? d : (mid > 0 ? tol : -tol);
        fb = f(b);
        if ((fb > 0) == (fc > 0)) {
            c = a;
            fc = fa;
            d = b - a;
            e = d;
        }
    }
    return b;
}

CqpSolution finishAt(const CqpProblem& pr, double zeta, bool hardCase, Vector alpha) {
    CqpSolution sol;
    sol.alpha = std::move(alpha);
    sol.zeta = zeta;
    sol.hardCase = hardCase;
    sol.residual = std::abs(sol.alpha.dot(pr.p * sol.alpha) - pr.s2) / pr.s2;
    sol.objective = cqpObjective(pr, sol.alpha);
    return sol;
}

std::optional<CqpSolution> hardCaseSolve(const CqpProblem& pr, const PencilEdge& edge) {
    const Vector alphaP = pinvSolve(pr.c - edge.delta * pr.p, pr.b);
    const double qp = alphaP.dot(pr.p * alphaP);
    if (qp > pr.s2 * (1.0 + 1e-10)) return std::nullopt;  // edge system overshoots; caller retries
    const double cross = edge.u.dot(pr.p * alphaP);
    const double tau = -cross + std::sqrt(std::max(0.0, cross * cross + pr.s2 - qp));
    return finishAt(pr, edge.delta, true, alphaP + tau * edge.u);
}

}  // namespace

double cqpObjective(const CqpProblem& pr, const Vector& alpha) {
    return alpha.dot(pr.c * alpha) - 2.0 * pr.b.dot(alpha);
}

double secularValue(const CqpProblem& pr, double zeta) {
    validate(pr);
    const auto alpha = tryShifted(pr, zeta);
    if (!alpha) throw NumericalError("secularValue: C - zeta P not positive definite");
    return alpha->dot(pr.p * *alpha) - pr.s2;
}

CqpSolution solveSecular(const CqpProblem& pr) {
    validate(pr);
    const PencilEdge edge = pencilLeftEdge(pr.c, pr.p);
    const double delta = edge.delta;
    const double s = std::sqrt(pr.s2);
    const double bnorm = pr.b.norm();

    if (bnorm == 0.0) {
        if (auto sol = hardCaseSolve(pr, edge)) return *sol;
        throw NumericalError("solveSecular: hard-case solve failed for b = 0");
    }

    const double scale = std::max(1.0, std::abs(delta));
    const auto fOf = [&](double zeta) -> std::optional<double> {
        const auto alpha = tryShifted(pr, zeta);
        if (!alpha) return std::nullopt;
        return alpha->dot(pr.p * *alpha) - pr.s2;
    };

    // March a probe toward the edge until the secular value turns positive.
    // Never seeing a sign change before the factorization gives out means the
    // minimizer sits on the edge itself: the classical hard case. Checking
    // b against a single edge vector instead would misfire when the edge
    // eigenvalue is degenerate.
    const double ub = edge.u.dot(pr.b);
    double gap = std::max(std::abs(ub) / s, 1e-15 * scale);
    double failGap = 0.0;  // closest approach that failed to factor
    double hi = delta - gap;
    std::optional<double> fhi = fOf(hi);
    for (int i = 0; i < 200 && (!fhi || *fhi < 0); ++i) {
        if (!fhi) {
            failGap = gap;
            gap *= 4.0;  // too close to factor; back away
        } else {
            const double next = 0.25 * gap;
            if (next <= failGap) break;  // squeezed against the failing band
            gap = next;
        }
        hi = delta - gap;
        if (!(hi < delta)) break;
        fhi = fOf(hi);
    }
    if (!fhi || *fhi < 0) {
        if (auto sol = hardCaseSolve(pr, edge)) return *sol;
        throw NumericalError("solveSecular: cannot reach positive secular value below the edge");
    }

    double lo = delta - std::max(scale, 2.0 * gap);
    std::optional<double> flo = fOf(lo);
    int doublings = 0;
    while (flo && *flo >= 0) {
        if (++doublings > kMaxDoublings)
            throw NumericalError("solveSecular: bracket expansion exceeded 200 doublings");
        lo = delta - 2.0 * (delta - lo);
        flo = fOf(lo);
    }
    if (!flo) throw NumericalError("solveSecular: factorization failed left of the edge");

    const auto fPlain = [&](double zeta) {
        const auto v = fOf(zeta);
        if (!v) throw NumericalError("solveSecular: factorization failed inside the bracket");
        return *v;
    };
    double zeta = brentRoot(fPlain, lo, hi, *flo, *fhi);

    // Newton polish; derivative f'(z) = 2 (P alpha)^T (C - zP)^{-1} (P alpha)
    Vector alpha;
    double fval = 0.0;
    for (int step = 0; step < 4; ++step) {
        Eigen::LLT<Matrix> llt(symmetrized(pr.c - zeta * pr.p));
        if (llt.info() != Eigen::Success) break;
        alpha = llt.solve(pr.b);
        const Vector pa = pr.p * alpha;
        fval = alpha.dot(pa) - pr.s2;
        if (step == 3 || std::abs(fval) <= 1e-14 * pr.s2) break;
        const double deriv = 2.0 * pa.dot(llt.solve(pa));
        if (!(deriv > 0)) break;
        const double next = zeta - fval / deriv;
        if (!(next < delta) || !std::isfinite(next)) break;
        zeta = next;
    }
    if (alpha.size() == 0) {
        const auto a = tryShifted(pr, zeta);
        if (!a) throw NumericalError("solveSecular: final factorization failed");
        alpha = *a;
    }
    return finishAt(pr, zeta, false, std::move(alpha));
}

CqpSolution solveEigOracle(const CqpProblem& pr) {
    validate(pr);
    const Index m = pr.c.rows();
    if (m > 200) throw InvalidArgument("solveEigOracle: oracle limited to m <= 200");

    Matrix a = Matrix::Zero(2 * m, 2 * m);
    a.topLeftCorner(m, m) = pr.c;
    a.topRightCorner(m, m) = -pr.p;
    a.bottomLeftCorner(m, m) = -(1.0 / pr.s2) * pr.b * pr.b.transpose();
    a.bottomRightCorner(m, m) = pr.c;
    Matrix bmat = Matrix::Zero(2 * m, 2 * m);
    bmat.topLeftCorner(m, m) = pr.p;
    bmat.bottomRightCorner(m, m) = pr.p;

    Eigen::GeneralizedEigenSolver<Matrix> ges;
    ges.compute(a, bmat, false);
    const auto alphas = ges.alphas();
    const auto betas = ges.betas();
    const double betaScale = betas.cwiseAbs().maxCoeff();
    if (betaScale <= 0) throw NumericalError("solveEigOracle: pencil has no finite eigenvalues");

    std::vector<double> candidates;
    for (Index i = 0; i < alphas.size(); ++i) {
        if (std::abs(betas(i)) <= 1e-10 * betaScale) continue;
        const auto lam = alphas(i) / betas(i);
        if (std::abs(lam.imag()) > 1e-8 * (1.0 + std::abs(lam.real()))) continue;
        candidates.push_back(lam.real());
    }
    std::sort(candidates.begin(), candidates.end());

    for (const double zeta : candidates) {
        Eigen::FullPivLU<Matrix> lu(pr.c - zeta * pr.p);
        if (!lu.isInvertible()) continue;
        const Vector alpha = lu.solve(pr.b);
        const double residual = std::abs(alpha.dot(pr.p * alpha) - pr.s2) / pr.s2;
        if (residual <= 1e-6) return finishAt(pr, zeta, false, alpha);
    }
    throw NumericalError("solveEigOracle: no real eigenvalue met the constraint");
}

CqpSolution solveUncenteredExplicit(const Matrix& k, const std::vector<Index>& labeled,
                                    const Vector& t, double c, double s2) {
    const Index m = k.rows();
    if (k.cols() != m) throw InvalidArgument("solveUncenteredExplicit: K must be square");
    if (static_cast<Index>(labeled.size()) != t.size())
        throw InvalidArgument("solveUncenteredExplicit: labeled/t size mismatch");
    if (!(s2 > 0)) throw InvalidArgument("solveUncenteredExplicit: s2 must be positive");
    if (c < 0) throw InvalidArgument("solveUncenteredExplicit: c must be >= 0");

    const auto kEig = symmetricEig(k);
    const double lmin = kEig.values(0);
    const double lmax = kEig.values(m - 1);
    if (!(lmin > 0) || lmax / lmin > 1e12)
        throw NumericalError("solveUncenteredExplicit: K condition estimate " +
                             std::to_string(lmin > 0 ? lmax / lmin : std::numeric_limits<double>::infinity()) +
                             " exceeds 1e12");
    const auto applyKinv = [&](const Vector& v) -> Vector {
        return kEig.vectors * (kEig.vectors.transpose() * v).cwiseQuotient(kEig.values);
    };

    Matrix g = kEig.vectors * kEig.values.cwiseInverse().asDiagonal() * kEig.vectors.transpose();
    Vector bf = Vector::Zero(m);
    for (std::size_t j = 0; j < labeled.size(); ++j) {
        g(labeled[j], labeled[j]) += c;
        bf(labeled[j]) = c * t(static_cast<Index>(j));
    }
    const auto gEig = symmetricEig(symmetrized(g));
    const Vector theta = gEig.values;
    const Vector beta = gEig.vectors.transpose() * bf;
    const double thetaMin = theta(0);
    const double s = std::sqrt(s2);

    const auto secular = [&](double zeta) {
        double acc = -s2;
        for (Index j = 0; j < m; ++j) {
            const double r = beta(j) / (theta(j) - zeta);
            acc += r * r;
        }
        return acc;
    };

    const double scale = std::max(1.0, std::abs(thetaMin));
    double zeta;
    bool hard = false;
    Vector fCoeffs(m);
    if (beta.norm() == 0.0 || std::abs(beta(0)) <= 1e-10 * beta.norm()) {
        // hard case in f-space: fill the edge coordinate to meet |f|^2 = s2
        zeta = thetaMin;
        hard = true;
        const double edgeTol = 1e-12 * std::max(1.0, std::abs(theta(m - 1)));
        double qp = 0.0;
        for (Index j = 0; j < m; ++j) {
            if (theta(j) - thetaMin <= edgeTol) {
                fCoeffs(j) = 0.0;
            } else {
                fCoeffs(j) = beta(j) / (theta(j) - zeta);
                qp += fCoeffs(j) * fCoeffs(j);
            }
        }
        if (qp > s2)
            throw NumericalError("solveUncenteredExplicit: hard-case edge system overshoots");
        fCoeffs(0) = std::sqrt(s2 - qp);
    } else {
        double hi = thetaMin - std::abs(beta(0)) / s;
        double fhi = secular(hi);
        for (int i = 0; i < 200 && fhi < 0; ++i) {
            hi = thetaMin - 0.25 * (thetaMin - hi);
            fhi = secular(hi);
        }
        double lo = thetaMin - scale;
        double flo = secular(lo);
        int doublings = 0;
        while (flo >= 0) {
            if (++doublings > kMaxDoublings)
                throw NumericalError("solveUncenteredExplicit: bracket expansion failed");
            lo = thetaMin - 2.0 * (thetaMin - lo);
            flo = secular(lo);
        }
        zeta = brentRoot(secular, lo, hi, flo, fhi);
        for (int j = 0; j < m; ++j) fCoeffs(j) = beta(j) / (theta(j) - zeta);
    }

    const Vector f = gEig.vectors * fCoeffs;
    CqpSolution sol;
    sol.alpha = applyKinv(f);
    sol.zeta = zeta;
    sol.hardCase = hard;
    sol.residual = std::abs(f.squaredNorm() - s2) / s2;
    // objective in coefficient space: alpha^T C alpha - 2 b^T alpha with
    // C = K + c K_L^T K_L and b = c K_L^T t, expressed through f = K alpha
    double labeledPart = 0.0;
    for (std::size_t j = 0; j < labeled.size(); ++j) {
        const double d = f(labeled[j]) - t(static_cast<Index>(j));
        labeledPart += d * d - t(static_cast<Index>(j)) * t(static_cast<Index>(j));
    }
    sol.objective = sol.alpha.dot(f) + c * labeledPart;
    return sol;
}

}  // namespace sskpca
