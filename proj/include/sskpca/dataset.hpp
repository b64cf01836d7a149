#pragma once

#include "sskpca/common.hpp"

#include <string>
#include <vector>

namespace sskpca {

// Labels live in {-1, 0, +1}; 0 marks an unlabeled point.
struct Dataset {
    Matrix x;     // m x d
    IntVector y;  // m

    Index m() const { return x.rows(); }
    Index d() const { return x.cols(); }
};

using GroupSet = std::vector<std::vector<Index>>;

// Comma-separated features plus one label column (default: last). A header
// row is detected by a non-numeric first row. Errors carry 1-based row and
// column positions.
Dataset loadCsv(const std::string& path, Index labelColumn = -1);
void saveCsv(const std::string& path, const Dataset& data);

// Same parser without the label interpretation; any numeric CSV.
Matrix loadCsvRaw(const std::string& path);

// Two interleaved half-circles of unit radius: class +1 on the upper arc
// (cos t, sin t), t in [0, pi]; class -1 on the reflected arc shifted by
// (+0.5, -0.25). Isotropic Gaussian noise with the given standard deviation,
// then exactly labeledPerClass labels of each sign kept (uniform by seed).
Dataset genTwoMoons(Index m, double noise, Index labeledPerClass, std::uint64_t seed);

// Balanced unit-covariance isotropic Gaussians in `dims` dimensions with mean
// distance `separation` along the first axis; class +1 at the positive mean.
Dataset genTwoGaussians(Index m, double separation, Index dims, Index labeledPerClass,
                        std::uint64_t seed);

// Keeps labeledPerClass labels of each sign present in y (uniform without
// replacement from rng), zeroes the rest.
IntVector maskLabels(const IntVector& y, Index labeledPerClass, Rng& rng);

// One group per label value present, +1 before -1; unlabeled points in no
// group. Errors when nothing is labeled.
GroupSet groupsFromLabels(const Dataset& data);

std::vector<Index> labeledIndices(const IntVector& y);

// Partition of `indices` into k folds whose sizes differ by at most one,
// after a Fisher-Yates shuffle driven by rng.
std::vector<std::vector<Index>> makeFolds(const std::vector<Index>& indices, int k, Rng& rng);

}  // namespace sskpca
