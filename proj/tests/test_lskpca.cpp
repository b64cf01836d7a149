#include "doctest.h"

#include "sskpca/eig.hpp"
#include "sskpca/kpca.hpp"
#include "sskpca/lskpca.hpp"

#include <cmath>

using namespace sskpca;

namespace {

Dataset moons(Index m, Index labeledPerClass, std::uint64_t seed) {
    return genTwoMoons(m, 0.05, labeledPerClass, seed);
}

double cosineSimilarity(const Vector& a, const Vector& b) {
    return std::abs(a.dot(b)) / (a.norm() * b.norm());
}

}  // namespace

TEST_CASE("constraint and target interpolation sanity") {
    const Dataset data = moons(60, 5, 1);
    const KernelMatrix k = gaussianKernel(data.x, 5.0);
    LsConfig cfg;
    cfg.c = 10.0;
    cfg.s2 = 60.0;
    const LsSolution sol = lskpcaFit(k, data, cfg);
    CHECK(sol.cqp.residual <= 1e-8);
    // constraint uses the centered variance of f
    const Vector f = sol.fn.trainingValues;
    const double variance = (f.array() - f.mean()).square().sum();
    CHECK(variance == doctest::Approx(cfg.s2).epsilon(1e-6));
    // labeled values carry the sign of their targets for a generous c
    for (Index i = 0; i < data.m(); ++i)
        if (data.y(i) != 0) CHECK(f(i) * data.y(i) > 0);
}

TEST_CASE("c -> 0 recovers the leading variance direction") {
    const Dataset data = moons(50, 4, 2);
    const KernelMatrix k = gaussianKernel(data.x, 2.0);
    const EigenfunctionBasis kpca = kpcaFit(k, true, 1);
    LsConfig cfg;
    cfg.c = 1e-10;
    cfg.s2 = 1.0;
    const LsSolution sol = lskpcaFit(k, data, cfg);
    CHECK(cosineSimilarity(sol.fn.alpha, kpca.functions[0].alpha) > 0.999);

    // exactly zero also works through the pure-eigenvector branch
    cfg.c = 0.0;
    const LsSolution sol0 = lskpcaFit(k, data, cfg);
    CHECK(sol0.cqp.hardCase);
    CHECK(cosineSimilarity(sol0.fn.alpha, kpca.functions[0].alpha) > 0.999);
}

TEST_CASE("labeled squared error is nonincreasing in c") {
    const Dataset data = moons(40, 4, 3);
    const KernelMatrix k = gaussianKernel(data.x, 3.0);
    const auto labeled = labeledIndices(data.y);
    double prev = std::numeric_limits<double>::infinity();
    for (const double c : {0.01, 0.1, 1.0, 10.0, 100.0, 1000.0}) {
        LsConfig cfg;
        cfg.c = c;
        cfg.s2 = 40.0;
        const LsSolution sol = lskpcaFit(k, data, cfg);
        double loss = 0.0;
        for (const Index i : labeled) {
            const double d = sol.fn.trainingValues(i) - data.y(i);
            loss += d * d;
        }
        CHECK(loss <= prev * (1 + 1e-10));
        prev = loss;
    }
}

TEST_CASE("flipping every label negates the solution") {
    const Dataset data = moons(40, 4, 4);
    Dataset flipped = data;
    flipped.y = -data.y;
    const KernelMatrix k = gaussianKernel(data.x, 3.0);
    LsConfig cfg;
    cfg.c = 5.0;
    cfg.s2 = 10.0;
    const LsSolution a = lskpcaFit(k, data, cfg);
    const LsSolution b = lskpcaFit(k, flipped, cfg);
    CHECK((a.fn.alpha + b.fn.alpha).norm() <= 1e-9 * a.fn.alpha.norm());
    CHECK(a.cqp.zeta == doctest::Approx(b.cqp.zeta).epsilon(1e-12));
}

TEST_CASE("uncentered configuration uses the plain variance") {
    const Dataset data = moons(30, 3, 5);
    const KernelMatrix k = gaussianKernel(data.x, 2.0);
    LsConfig cfg;
    cfg.c = 2.0;
    cfg.s2 = 12.0;
    cfg.centered = false;
    const LsSolution sol = lskpcaFit(k, data, cfg);
    CHECK(sol.fn.trainingValues.squaredNorm() == doctest::Approx(cfg.s2).epsilon(1e-6));
}

TEST_CASE("graph-kernel special case balances the prediction") {
    Rng rng(11);
    Matrix x(40, 2);
    for (Index i = 0; i < 40; ++i)
        for (Index j = 0; j < 2; ++j) x(i, j) = rng.normal();
    Dataset data;
    data.x = x;
    data.y = IntVector::Zero(40);
    data.y(0) = 1;
    data.y(1) = 1;
    data.y(2) = -1;
    data.y(3) = -1;
    const Graph g = buildGraph(x, 6);
    LsConfig cfg;
    cfg.c = 4.0;
    cfg.s2 = 40.0;
    cfg.centered = false;
    const LsSolution sol = sgtSpecialCase(g, data, cfg);
    const Vector& f = sol.fn.trainingValues;
    CHECK(std::abs(f.sum()) <= 1e-8 * f.norm());
    CHECK(sol.cqp.residual <= 1e-8);

    cfg.centered = true;
    CHECK_THROWS_AS(sgtSpecialCase(g, data, cfg), InvalidArgument);
}

TEST_CASE("input validation") {
    const Dataset data = moons(20, 2, 6);
    const KernelMatrix k = gaussianKernel(data.x, 1.0);
    LsConfig cfg;
    cfg.c = -1.0;
    CHECK_THROWS_AS(lskpcaFit(k, data, cfg), InvalidArgument);
    cfg.c = 1.0;
    cfg.s2 = 0.0;
    CHECK_THROWS_AS(lskpcaFit(k, data, cfg), InvalidArgument);
    cfg.s2 = 1.0;
    Dataset unlabeled = data;
    unlabeled.y.setZero();
    CHECK_THROWS_AS(lskpcaFit(k, unlabeled, cfg), InvalidArgument);
}
