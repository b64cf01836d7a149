#pragma once

#include <Eigen/Dense>

#include <cstdint>
#include <functional>
#include <stdexcept>
#include <string>

namespace sskpca {

using Matrix = Eigen::MatrixXd;
using Vector = Eigen::VectorXd;
using IntVector = Eigen::VectorXi;
using Index = Eigen::Index;

// bad caller input (missing file, inconsistent sizes, unknown enum value)
struct InvalidArgument : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

// a numerical precondition failed at runtime (indefinite matrix, no bracket, ...)
struct NumericalError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

std::uint64_t splitmix64(std::uint64_t& state);
std::uint64_t fnv1a64(const void* data, std::size_t n);
std::uint64_t fnv1a64(const std::string& s);

// Deterministic generator: splitmix64 stream with explicit uniform / Box-Muller
// transforms, so outputs depend only on the seed, not on the standard library.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : state_(seed) {}

    std::uint64_t next() { return splitmix64(state_); }
    double uniform();                   // [0, 1)
    double uniform(double lo, double hi);
    double normal();                    // standard normal, Box-Muller
    std::uint64_t below(std::uint64_t n);  // uniform in [0, n), rejection

private:
    std::uint64_t state_;
    bool haveSpare_ = false;
    double spare_ = 0.0;
};

// Independent substream for ("name", index) derived from one base seed.
Rng substream(std::uint64_t seed, const std::string& name, std::uint64_t index = 0);

// Worker count: SSKPCA_THREADS if set (>=1), else hardware_concurrency.
int threadBudget();

// Runs run(begin, end) over contiguous chunks of [0, n) on threadBudget()
// threads. The first exception thrown by any chunk is rethrown here. Callers
// must make per-index work independent of the partitioning.
void parallelFor(Index n, const std::function<void(Index, Index)>& run);

inline Matrix symmetrized(const Matrix& a) { return 0.5 * (a + a.transpose()); }

std::uint64_t hashMatrix(const Matrix& a);

}  // namespace sskpca
