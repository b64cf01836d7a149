#include "doctest.h"

#include "sskpca/eig.hpp"

#include <cmath>

using namespace sskpca;

namespace {

Matrix randomSpd(Index m, std::uint64_t seed, double ridge = 0.1) {
    Rng rng(seed);
    Matrix a(m, m);
    for (Index i = 0; i < m; ++i)
        for (Index j = 0; j < m; ++j) a(i, j) = rng.normal();
    return symmetrized(a * a.transpose()) + ridge * Matrix::Identity(m, m);
}

Matrix randomPsdRankDeficient(Index m, Index rank, std::uint64_t seed) {
    Rng rng(seed);
    Matrix f(m, rank);
    for (Index i = 0; i < m; ++i)
        for (Index j = 0; j < rank; ++j) f(i, j) = rng.normal();
    return symmetrized(f * f.transpose());
}

}  // namespace

TEST_CASE("symmetricEig reconstructs and orders ascending") {
    const Matrix a = randomSpd(12, 1);
    const EigenDecomposition eig = symmetricEig(a);
    for (Index i = 0; i + 1 < 12; ++i) CHECK(eig.values(i) <= eig.values(i + 1));
    const Matrix rebuilt =
        eig.vectors * eig.values.asDiagonal() * eig.vectors.transpose();
    CHECK((rebuilt - a).cwiseAbs().maxCoeff() < 1e-10 * a.cwiseAbs().maxCoeff());
    CHECK((eig.vectors.transpose() * eig.vectors - Matrix::Identity(12, 12))
              .cwiseAbs()
              .maxCoeff() < 1e-12);
    // sign convention: the largest-magnitude entry of each column is positive
    for (Index j = 0; j < 12; ++j) {
        Index arg = 0;
        eig.vectors.col(j).cwiseAbs().maxCoeff(&arg);
        CHECK(eig.vectors(arg, j) > 0);
    }
}

TEST_CASE("fixSign is idempotent and deterministic under negation") {
    Vector v(3);
    v << 0.2, -0.9, 0.3;
    Vector w = -v;
    fixSign(v);
    fixSign(w);
    CHECK(v == w);
    CHECK(v(1) == 0.9);
}

TEST_CASE("generalized eigenproblem on a diagonal pencil") {
    // A = diag(1, 8, 3), B = diag(1, 4, 1): ratios 1, 2, 3 -> max 3 at e3
    Matrix a = Vector::Zero(3).asDiagonal();
    a.diagonal() << 1, 8, 3;
    Matrix b = Vector::Zero(3).asDiagonal();
    b.diagonal() << 1, 4, 1;
    const EigenPair top = generalizedEigMax(a, b);
    CHECK(top.value == doctest::Approx(3.0).epsilon(1e-12));
    CHECK(std::abs(top.vector(2)) == doctest::Approx(1.0).epsilon(1e-12));

    const auto all = generalizedEigTop(a, b, 3);
    REQUIRE(all.size() == 3);
    CHECK(all[0].value == doctest::Approx(3.0));
    CHECK(all[1].value == doctest::Approx(2.0));
    CHECK(all[2].value == doctest::Approx(1.0));
    for (const auto& pair : all) CHECK(pair.vector.norm() == doctest::Approx(1.0));
}

TEST_CASE("generalized eigenproblem restricted to range(B) when B is singular") {
    // B has rank 2; the maximizer must stay in range(B)
    const Matrix b = randomPsdRankDeficient(6, 2, 3);
    const Matrix a = randomSpd(6, 4);
    const EigenPair top = generalizedEigMax(a, b);
    // residual of the pencil equation projected on range(B)
    const Vector r = a * top.vector - top.value * (b * top.vector);
    const EigenDecomposition eb = symmetricEig(b);
    // components of r along range(B) directions must vanish
    for (Index i = 0; i < 6; ++i)
        if (eb.values(i) > 1e-10 * eb.values(5))
            CHECK(std::abs(eb.vectors.col(i).dot(r)) < 1e-8);
    // Rayleigh quotient matches the reported value
    const double rq = top.vector.dot(a * top.vector) / top.vector.dot(b * top.vector);
    CHECK(rq == doctest::Approx(top.value).epsilon(1e-10));
}

TEST_CASE("generalized eigenvalues dominate random Rayleigh samples") {
    const Matrix a = randomSpd(8, 7);
    const Matrix b = randomSpd(8, 8);
    const EigenPair top = generalizedEigMax(a, b);
    Rng rng(99);
    for (int trial = 0; trial < 2000; ++trial) {
        Vector v(8);
        for (Index i = 0; i < 8; ++i) v(i) = rng.normal();
        const double rq = v.dot(a * v) / v.dot(b * v);
        CHECK(rq <= top.value * (1 + 1e-12) + 1e-12);
    }
}

TEST_CASE("pencilLeftEdge matches the smallest singular zeta") {
    // C = I, P = diag(2, 1, 0): det(I - zeta P) = 0 first at zeta = 1/2
    const Matrix c = Matrix::Identity(3, 3);
    Matrix p = Vector::Zero(3).asDiagonal();
    p.diagonal() << 2, 1, 0;
    const PencilEdge edge = pencilLeftEdge(c, p);
    CHECK(edge.delta == doctest::Approx(0.5).epsilon(1e-12));
    // u spans the edge eigenvector e1 with u^T P u = 1
    CHECK(edge.u.dot(p * edge.u) == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(std::abs(edge.u(0)) == doctest::Approx(1.0 / std::sqrt(2.0)).epsilon(1e-10));

    const Matrix c2 = randomSpd(9, 11);
    const Matrix p2 = randomPsdRankDeficient(9, 5, 12);
    const PencilEdge e2 = pencilLeftEdge(c2, p2);
    CHECK(e2.delta > 0);
    // C - zeta P stays PD strictly inside the edge and loses PD beyond it
    const auto minEig = [&](double zeta) {
        return Eigen::SelfAdjointEigenSolver<Matrix>(c2 - zeta * p2).eigenvalues().minCoeff();
    };
    CHECK(minEig(0.999 * e2.delta) > 0);
    CHECK(minEig(1.001 * e2.delta) < 0);
    CHECK(e2.u.dot(p2 * e2.u) == doctest::Approx(1.0).epsilon(1e-10));
    // (C - delta P) u = 0
    CHECK(((c2 - e2.delta * p2) * e2.u).cwiseAbs().maxCoeff() <
          1e-8 * c2.cwiseAbs().maxCoeff());
}
