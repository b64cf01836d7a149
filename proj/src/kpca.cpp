#include "sskpca/kpca.hpp"

#include "sskpca/eig.hpp"

#include <cmath>

namespace sskpca {
namespace {

SolutionFunction makeFunction(const KernelMatrix& k, Vector alpha, bool centered) {
    SolutionFunction fn;
    fn.alpha = std::move(alpha);
    fn.spec = k.spec;
    fn.trainingPoints = k.points;
    fn.centered = centered;
    Vector raw = k.k * fn.alpha;
    fn.centeringMean = centered ? raw.mean() : 0.0;
    fn.trainingValues = raw.array() - fn.centeringMean;
    return fn;
}

EigenfunctionBasis fitPencil(const KernelMatrix& k, const Matrix& p, const Matrix& denom,
                             bool centered, Index count) {
    const auto pairs = generalizedEigTop(p, denom, count);
    EigenfunctionBasis basis;
    basis.eigenvalues.resize(count);
    for (Index i = 0; i < count; ++i) {
        Vector alpha = pairs[static_cast<std::size_t>(i)].vector;
        const double q = alpha.dot(denom * alpha);
        if (!(q > 0)) throw NumericalError("kpca: eigenvector escaped the constraint range");
        alpha /= std::sqrt(q);
        fixSign(alpha);
        basis.functions.push_back(makeFunction(k, std::move(alpha), centered));
        basis.eigenvalues(i) = pairs[static_cast<std::size_t>(i)].value;
    }
    return basis;
}

}  // namespace

EigenfunctionBasis kpcaFit(const KernelMatrix& k, bool centered, Index count) {
    const Matrix p = centered ? centeredVarianceOperator(k.k) : uncenteredVarianceOperator(k.k);
    return fitPencil(k, p, k.k, centered, count);
}

EigenfunctionBasis mvkpcaFit(const KernelMatrix& k, const GroupSet& groups, double c,
                             Index count) {
    if (c < 0) throw InvalidArgument("mvkpcaFit: c must be >= 0");
    const Index m = k.m();
    Matrix denom = k.k;
    for (const auto& group : groups) {
        if (group.empty()) throw InvalidArgument("mvkpcaFit: empty group");
        Matrix rows(static_cast<Index>(group.size()), m);
        for (std::size_t i = 0; i < group.size(); ++i) {
            if (group[i] < 0 || group[i] >= m) throw InvalidArgument("mvkpcaFit: group index out of range");
            rows.row(static_cast<Index>(i)) = k.k.row(group[i]);
        }
        Matrix centeredRows = rows.rowwise() - rows.colwise().mean();
        denom += c * centeredRows.transpose() * centeredRows;
    }
    denom = symmetrized(denom);
    return fitPencil(k, centeredVarianceOperator(k.k), denom, true, count);
}

double predict(const SolutionFunction& fn, const Vector& x) {
    Matrix one(1, x.size());
    one.row(0) = x;
    return predictMany(fn, one)(0);
}

Vector predictMany(const SolutionFunction& fn, const Matrix& x) {
    if (fn.spec.kind != KernelKind::Gaussian)
        throw InvalidArgument("predict: out-of-sample evaluation requires a gaussian kernel");
    if (fn.trainingPoints.size() == 0)
        throw InvalidArgument("predict: solution carries no training points");
    if (x.cols() != fn.trainingPoints.cols())
        throw InvalidArgument("predict: dimension mismatch");
    Vector out(x.rows());
    const Vector trainSq = fn.trainingPoints.rowwise().squaredNorm();
    parallelFor(x.rows(), [&](Index begin, Index end) {
        for (Index i = begin; i < end; ++i) {
            double acc = 0.0;
            const double xs = x.row(i).squaredNorm();
            for (Index j = 0; j < fn.trainingPoints.rows(); ++j) {
                const double d2 =
                    std::max(0.0, trainSq(j) + xs - 2.0 * fn.trainingPoints.row(j).dot(x.row(i)));
                acc += fn.alpha(j) * std::exp(-fn.spec.gamma * d2);
            }
            out(i) = acc - fn.centeringMean;
        }
    });
    return out;
}

}  // namespace sskpca
