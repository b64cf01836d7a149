#include "sskpca/eig.hpp"

#include <Eigen/Cholesky>
#include <Eigen/Eigenvalues>

#include <cmath>

namespace sskpca {

void fixSign(Vector& v) {
    Index best = 0;
    v.cwiseAbs().maxCoeff(&best);
    if (v(best) < 0) v = -v;
}

EigenDecomposition symmetricEig(const Matrix& a) {
    if (!a.allFinite()) throw InvalidArgument("symmetricEig: non-finite entries");
    Eigen::SelfAdjointEigenSolver<Matrix> solver(symmetrized(a));
    if (solver.info() != Eigen::Success) throw NumericalError("symmetricEig: failed to converge");
    EigenDecomposition out;
    out.values = solver.eigenvalues();
    out.vectors = solver.eigenvectors();
    for (Index i = 0; i < out.vectors.cols(); ++i) {
        Vector v = out.vectors.col(i);
        fixSign(v);
        out.vectors.col(i) = v;
    }
    return out;
}

namespace {

// columns spanning range(B) scaled so (W y)^T B (W y) = y^T y
Matrix rangeWhitener(const Matrix& b, double rangeTolerance) {
    const auto eig = symmetricEig(b);
    const double largest = eig.values.size() > 0 ? eig.values(eig.values.size() - 1) : 0.0;
    if (largest <= 0) throw NumericalError("generalized eigensolver: B numerically zero");
    const double cutoff = rangeTolerance * largest;
    std::vector<Index> keep;
    for (Index i = 0; i < eig.values.size(); ++i)
        if (eig.values(i) > cutoff) keep.push_back(i);
    Matrix w(b.rows(), static_cast<Index>(keep.size()));
    for (std::size_t j = 0; j < keep.size(); ++j)
        w.col(static_cast<Index>(j)) = eig.vectors.col(keep[j]) / std::sqrt(eig.values[keep[j]]);
    return w;
}

}  // namespace

std::vector<EigenPair> generalizedEigTop(const Matrix& a, const Matrix& b, Index k,
                                         double rangeTolerance) {
    const Matrix w = rangeWhitener(b, rangeTolerance);
    if (k < 1 || k > w.cols())
        throw InvalidArgument("generalized eigensolver: k out of range (rank " +
                              std::to_string(w.cols()) + ")");
    const Matrix reduced = symmetrized(w.transpose() * a * w);
    const auto eig = symmetricEig(reduced);
    std::vector<EigenPair> out;
    out.reserve(static_cast<std::size_t>(k));
    const Index r = reduced.rows();
    for (Index i = 0; i < k; ++i) {
        EigenPair p;
        p.value = eig.values(r - 1 - i);
        p.vector = w * eig.vectors.col(r - 1 - i);
        p.vector.normalize();
        fixSign(p.vector);
        out.push_back(std::move(p));
    }
    return out;
}

EigenPair generalizedEigMax(const Matrix& a, const Matrix& b, double rangeTolerance) {
    return generalizedEigTop(a, b, 1, rangeTolerance)[0];
}

PencilEdge pencilLeftEdge(const Matrix& c, const Matrix& p) {
    Eigen::LLT<Matrix> llt(symmetrized(c));
    if (llt.info() != Eigen::Success)
        throw NumericalError("pencilLeftEdge: C not positive definite");
    const Matrix l = llt.matrixL();
    // mu_max of P v = mu C v through L^{-1} P L^{-T}
    Matrix whitened = l.triangularView<Eigen::Lower>().solve(symmetrized(p));
    whitened = l.triangularView<Eigen::Lower>().solve(Matrix(whitened.transpose()));
    const auto eig = symmetricEig(whitened);
    const double muMax = eig.values(eig.values.size() - 1);
    if (muMax <= 0) throw NumericalError("pencilLeftEdge: P numerically zero");
    PencilEdge out;
    out.delta = 1.0 / muMax;
    Vector y = eig.vectors.col(eig.values.size() - 1);
    Vector u = l.transpose().triangularView<Eigen::Upper>().solve(y);
    const double pu = u.dot(p * u);
    if (pu <= 0) throw NumericalError("pencilLeftEdge: edge vector has zero P-norm");
    u /= std::sqrt(pu);
    fixSign(u);
    out.u = u;
    return out;
}

}  // namespace sskpca
