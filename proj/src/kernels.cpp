#include "sskpca/kernels.hpp"

#include "sskpca/eig.hpp"

#include <algorithm>
#include <cmath>
#include <cstring>
#include <fstream>
#include <numeric>
#include <vector>

namespace sskpca {

std::string kindName(KernelKind kind) {
    switch (kind) {
        case KernelKind::Gaussian: return "gaussian";
        case KernelKind::Diffusion: return "diffusion";
        case KernelKind::Mixed: return "mixed";
        case KernelKind::LaplacianPinv: return "lpinv";
    }
    throw InvalidArgument("unknown kernel kind");
}

KernelKind kindFromName(const std::string& name) {
    if (name == "gaussian") return KernelKind::Gaussian;
    if (name == "diffusion") return KernelKind::Diffusion;
    if (name == "mixed") return KernelKind::Mixed;
    if (name == "lpinv") return KernelKind::LaplacianPinv;
    throw InvalidArgument("unknown kernel kind '" + name + "'");
}

KernelMatrix gaussianKernel(const Matrix& points, double gamma) {
    if (!points.allFinite()) throw InvalidArgument("gaussianKernel: non-finite feature values");
    if (gamma < 0) throw InvalidArgument("gaussianKernel: gamma must be >= 0");
    const Index m = points.rows();
    KernelMatrix out;
    out.k.resize(m, m);
    const Vector sq = points.rowwise().squaredNorm();
    parallelFor(m, [&](Index begin, Index end) {
        for (Index i = begin; i < end; ++i) {
            for (Index j = 0; j < m; ++j) {
                const double d2 = sq(i) + sq(j) - 2.0 * points.row(i).dot(points.row(j));
                out.k(i, j) = std::exp(-gamma * std::max(0.0, d2));
            }
            out.k(i, i) = 1.0;
        }
    });
    out.k = symmetrized(out.k);
    out.spec.kind = KernelKind::Gaussian;
    out.spec.gamma = gamma;
    out.points = points;
    return out;
}

Graph buildGraph(const Matrix& points, int knn) {
    const Index m = points.rows();
    if (knn < 1) throw InvalidArgument("buildGraph: knn must be >= 1");
    if (knn >= m) throw InvalidArgument("buildGraph: knn must be < m");

    Matrix d2(m, m);
    const Vector sq = points.rowwise().squaredNorm();
    for (Index i = 0; i < m; ++i)
        for (Index j = 0; j < m; ++j)
            d2(i, j) = std::max(0.0, sq(i) + sq(j) - 2.0 * points.row(i).dot(points.row(j)));

    // adjacency: edge if either endpoint ranks the other among its knn
    Eigen::MatrixXi adj = Eigen::MatrixXi::Zero(m, m);
    std::vector<Index> order(static_cast<std::size_t>(m));
    for (Index i = 0; i < m; ++i) {
        std::iota(order.begin(), order.end(), Index{0});
        std::sort(order.begin(), order.end(), [&](Index a, Index b) {
            if (d2(i, a) != d2(i, b)) return d2(i, a) < d2(i, b);
            return a < b;
        });
        int taken = 0;
        for (const Index j : order) {
            if (j == i) continue;
            adj(i, j) = adj(j, i) = 1;
            if (++taken == knn) break;
        }
    }

    double sum = 0.0;
    Index pairs = 0;
    for (Index i = 0; i < m; ++i)
        for (Index j = i + 1; j < m; ++j)
            if (adj(i, j)) {
                sum += d2(i, j);
                ++pairs;
            }
    const double sigma2 = pairs > 0 ? sum / static_cast<double>(pairs) : 1.0;

    Graph g;
    g.w = Matrix::Zero(m, m);
    for (Index i = 0; i < m; ++i)
        for (Index j = 0; j < m; ++j)
            if (adj(i, j) && i != j)
                g.w(i, j) = sigma2 > 0 ? std::exp(-d2(i, j) / sigma2) : 1.0;

    const Vector deg = g.w.rowwise().sum();
    for (Index i = 0; i < m; ++i)
        if (deg(i) <= 0)
            throw InvalidArgument("buildGraph: vertex " + std::to_string(i) +
                                  " is isolated; increase knn");
    const Vector dinv = deg.array().sqrt().inverse();
    g.s = dinv.asDiagonal() * g.w * dinv.asDiagonal();
    g.s = symmetrized(g.s);
    g.l = Matrix(g.s.rowwise().sum().asDiagonal()) - g.s;
    g.l = symmetrized(g.l);
    return g;
}

KernelMatrix diffusionKernel(const Graph& graph, double tau) {
    if (tau < 0) throw InvalidArgument("diffusionKernel: tau must be >= 0");
    const auto eig = symmetricEig(graph.l);
    KernelMatrix out;
    out.k = eig.vectors * (-tau * eig.values.array()).exp().matrix().asDiagonal() *
            eig.vectors.transpose();
    out.k = symmetrized(out.k);
    out.spec.kind = KernelKind::Diffusion;
    out.spec.tau = tau;
    return out;
}

KernelMatrix mixedKernel(const KernelMatrix& kGamma, const KernelMatrix& kDiff, double w) {
    if (kGamma.k.rows() != kDiff.k.rows())
        throw InvalidArgument("mixedKernel: shape mismatch");
    if (w < 0 || w > 1) throw InvalidArgument("mixedKernel: w must be in [0, 1]");
    KernelMatrix out;
    out.k = w * kGamma.k + (1.0 - w) * kDiff.k;
    out.spec.kind = KernelKind::Mixed;
    out.spec.gamma = kGamma.spec.gamma;
    out.spec.tau = kDiff.spec.tau;
    out.spec.w = w;
    out.points = kGamma.points;
    return out;
}

KernelMatrix laplacianPinv(const Graph& graph) {
    const auto eig = symmetricEig(graph.l);
    const Index m = graph.l.rows();
    const double lmax = eig.values(m - 1);
    const double tol = 1e-9 * std::max(lmax, 1e-300);
    Index zeros = 0;
    for (Index i = 0; i < m; ++i)
        if (eig.values(i) < tol) ++zeros;
    if (zeros != 1)
        throw InvalidArgument("laplacianPinv: graph not connected (" + std::to_string(zeros) +
                              " near-zero Laplacian eigenvalues)");
    KernelMatrix out;
    out.k = Matrix::Zero(m, m);
    for (Index i = 0; i < m; ++i)
        if (eig.values(i) >= tol)
            out.k += (1.0 / eig.values(i)) * eig.vectors.col(i) * eig.vectors.col(i).transpose();
    out.k = symmetrized(out.k);
    out.spec.kind = KernelKind::LaplacianPinv;
    return out;
}

KernelMatrix buildKernel(const Matrix& points, const KernelSpec& spec) {
    switch (spec.kind) {
        case KernelKind::Gaussian: {
            KernelMatrix k = gaussianKernel(points, spec.gamma);
            k.spec = spec;
            return k;
        }
        case KernelKind::Diffusion: {
            KernelMatrix k = diffusionKernel(buildGraph(points, spec.knn), spec.tau);
            k.spec = spec;
            k.points = points;
            return k;
        }
        case KernelKind::Mixed: {
            const Graph g = buildGraph(points, spec.knn);
            KernelMatrix k =
                mixedKernel(gaussianKernel(points, spec.gamma), diffusionKernel(g, spec.tau), spec.w);
            k.spec = spec;
            k.points = points;
            return k;
        }
        case KernelKind::LaplacianPinv: {
            KernelMatrix k = laplacianPinv(buildGraph(points, spec.knn));
            k.spec = spec;
            k.points = points;
            return k;
        }
    }
    throw InvalidArgument("buildKernel: unknown kind");
}

Matrix centeredVarianceOperator(const Matrix& k) {
    Matrix centered = k.rowwise() - k.colwise().mean();
    return symmetrized(centered.transpose() * centered);
}

Matrix uncenteredVarianceOperator(const Matrix& k) { return symmetrized(k.transpose() * k); }

double defaultJitter(const Matrix& k) {
    return 1e-10 * k.trace() / static_cast<double>(std::max<Index>(1, k.rows()));
}

double effectiveJitter(const KernelMatrix& k) {
    return k.spec.jitter >= 0 ? k.spec.jitter : defaultJitter(k.k);
}

namespace {
constexpr char kCacheMagic[8] = {'S', 'S', 'K', 'P', 'C', 'A', 'K', '1'};

struct CacheHeader {
    char magic[8];
    std::uint64_t datasetHash;
    std::int64_t m;
    std::int32_t kind;
    std::int32_t knn;
    double gamma;
    double tau;
    double w;
    double jitter;
};
}  // namespace

void saveCachedKernel(const std::string& path, std::uint64_t datasetHash, const KernelMatrix& k) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw InvalidArgument("cannot write " + path);
    CacheHeader h{};
    std::memcpy(h.magic, kCacheMagic, sizeof kCacheMagic);
    h.datasetHash = datasetHash;
    h.m = k.k.rows();
    h.kind = static_cast<std::int32_t>(k.spec.kind);
    h.knn = k.spec.knn;
    h.gamma = k.spec.gamma;
    h.tau = k.spec.tau;
    h.w = k.spec.w;
    h.jitter = k.spec.jitter;
    out.write(reinterpret_cast<const char*>(&h), sizeof h);
    // row-major payload
    const Matrix rm = k.k.transpose();
    out.write(reinterpret_cast<const char*>(rm.data()),
              static_cast<std::streamsize>(sizeof(double)) * rm.size());
    if (!out) throw InvalidArgument("write failure on " + path);
}

bool loadCachedKernel(const std::string& path, std::uint64_t datasetHash, const KernelSpec& spec,
                      Matrix& k) {
    std::ifstream in(path, std::ios::binary);
    if (!in) return false;
    CacheHeader h{};
    in.read(reinterpret_cast<char*>(&h), sizeof h);
    if (!in || std::memcmp(h.magic, kCacheMagic, sizeof kCacheMagic) != 0) return false;
    if (h.datasetHash != datasetHash || h.kind != static_cast<std::int32_t>(spec.kind) ||
        h.knn != spec.knn || h.gamma != spec.gamma || h.tau != spec.tau || h.w != spec.w ||
        h.jitter != spec.jitter)
        return false;
    if (h.m < 1) return false;
    Matrix rm(h.m, h.m);
    in.read(reinterpret_cast<char*>(rm.data()),
            static_cast<std::streamsize>(sizeof(double)) * rm.size());
    if (!in) return false;
    k = rm.transpose();
    return true;
}

}  // namespace sskpca
