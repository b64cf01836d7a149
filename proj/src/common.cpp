#include "sskpca/common.hpp"

#include <cmath>
#include <cstdlib>
#include <exception>
#include <mutex>
#include <thread>
#include <vector>

namespace sskpca {

std::uint64_t splitmix64(std::uint64_t& state) {
    std::uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

std::uint64_t fnv1a64(const void* data, std::size_t n) {
    const auto* p = static_cast<const unsigned char*>(data);
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (std::size_t i = 0; i < n; ++i) {
        h ^= p[i];
        h *= 0x100000001b3ULL;
    }
    return h;
}

std::uint64_t fnv1a64(const std::string& s) { return fnv1a64(s.data(), s.size()); }

double Rng::uniform() {
    // 53 random bits -> [0, 1)
    return static_cast<double>(next() >> 11) * 0x1.0p-53;
}

double Rng::uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

double Rng::normal() {
    if (haveSpare_) {
        haveSpare_ = false;
        return spare_;
    }
    double u1 = 0.0;
    do {
        u1 = uniform();
    } while (u1 <= 0.0);
    const double u2 = uniform();
    const double r = std::sqrt(-2.0 * std::log(u1));
    const double a = 2.0 * M_PI * u2;
    spare_ = r * std::sin(a);
    haveSpare_ = true;
    return r * std::cos(a);
}

std::uint64_t Rng::below(std::uint64_t n) {
    if (n == 0) throw InvalidArgument("Rng::below: n must be positive");
    const std::uint64_t limit = UINT64_MAX - UINT64_MAX % n;
    std::uint64_t v = 0;
    do {
        v = next();
    } while (v >= limit);
    return v % n;
}

Rng substream(std::uint64_t seed, const std::string& name, std::uint64_t index) {
    std::uint64_t h = fnv1a64(name);
    h ^= seed + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
    h ^= index + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
    return Rng(h);
}

int threadBudget() {
    if (const char* env = std::getenv("SSKPCA_THREADS")) {
        const long v = std::strtol(env, nullptr, 10);
        if (v >= 1) return static_cast<int>(v);
    }
    const unsigned hw = std::thread::hardware_concurrency();
    return hw > 0 ? static_cast<int>(hw) : 1;
}

void parallelFor(Index n, const std::function<void(Index, Index)>& run) {
    if (n <= 0) return;
    const int workers = std::min<Index>(threadBudget(), n);
    if (workers <= 1) {
        run(0, n);
        return;
    }
    std::vector<std::thread> pool;
    pool.reserve(workers);
    std::exception_ptr firstError;
    std::mutex errMutex;
    const Index chunk = (n + workers - 1) / workers;
    for (int w = 0; w < workers; ++w) {
        const Index begin = w * chunk;
        const Index end = std::min(n, begin + chunk);
        if (begin >= end) break;
        pool.emplace_back([&, begin, end] {
            try {
                run(begin, end);
            } catch (...) {
                std::lock_guard<std::mutex> lock(errMutex);
                if (!firstError) firstError = std::current_exception();
            }
        });
    }
    for (auto& t : pool) t.join();
    if (firstError) std::rethrow_exception(firstError);
}

std::uint64_t hashMatrix(const Matrix& a) {
    std::uint64_t h = 0xcbf29ce484222325ULL;
    const std::uint64_t rows = static_cast<std::uint64_t>(a.rows());
    const std::uint64_t cols = static_cast<std::uint64_t>(a.cols());
    h ^= fnv1a64(&rows, sizeof rows);
    h *= 0x100000001b3ULL;
    h ^= fnv1a64(&cols, sizeof cols);
    h *= 0x100000001b3ULL;
    for (Index j = 0; j < a.cols(); ++j) {
        h ^= fnv1a64(a.col(j).data(), sizeof(double) * static_cast<std::size_t>(a.rows()));
        h *= 0x100000001b3ULL;
    }
    return h;
}

}  // namespace sskpca
