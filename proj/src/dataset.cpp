#include "sskpca/dataset.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

namespace sskpca {
namespace {

std::string trimmed(const std::string& s) {
    const auto b = s.find_first_not_of(" \t\r");
    if (b == std::string::npos) return "";
    const auto e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

std::vector<std::string> splitFields(const std::string& line) {
    std::vector<std::string> out;
    std::string cur;
    std::stringstream ss(line);
    while (std::getline(ss, cur, ',')) out.push_back(trimmed(cur));
    if (!line.empty() && line.back() == ',') out.push_back("");
    return out;
}

bool parseNumber(const std::string& s, double& out) {
    if (s.empty()) return false;
    char* end = nullptr;
    out = std::strtod(s.c_str(), &end);
    return end == s.c_str() + s.size() && std::isfinite(out);
}

std::string formatDouble(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

}  // namespace

namespace {

std::vector<std::vector<double>> readNumericRows(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw InvalidArgument("cannot open " + path);

    std::vector<std::vector<double>> rows;
    std::string line;
    std::size_t lineNo = 0;
    bool first = true;
    std::size_t arity = 0;
    while (std::getline(in, line)) {
        ++lineNo;
        if (trimmed(line).empty()) continue;
        const auto fields = splitFields(line);
        if (first) {
            first = false;
            arity = fields.size();
            double v;
            bool numeric = true;
            for (const auto& f : fields)
                if (!parseNumber(f, v)) numeric = false;
            if (!numeric) continue;  // header row
        }
        if (fields.size() != arity)
            throw InvalidArgument(path + ":" + std::to_string(lineNo) + ": expected " +
                                  std::to_string(arity) + " fields, got " +
                                  std::to_string(fields.size()));
        std::vector<double> row(fields.size());
        for (std::size_t j = 0; j < fields.size(); ++j) {
            if (!parseNumber(fields[j], row[j]))
                throw InvalidArgument(path + ":" + std::to_string(lineNo) + ": column " +
                                      std::to_string(j + 1) + ": cannot parse '" + fields[j] +
                                      "'");
        }
        rows.push_back(std::move(row));
    }
    if (rows.empty()) throw InvalidArgument(path + ": no data rows");
    return rows;
}

}  // namespace

Matrix loadCsvRaw(const std::string& path) {
    const auto rows = readNumericRows(path);
    Matrix out(static_cast<Index>(rows.size()), static_cast<Index>(rows[0].size()));
    for (std::size_t i = 0; i < rows.size(); ++i)
        for (std::size_t j = 0; j < rows[i].size(); ++j)
            out(static_cast<Index>(i), static_cast<Index>(j)) = rows[i][j];
    return out;
}

Dataset loadCsv(const std::string& path, Index labelColumn) {
    const auto rows = readNumericRows(path);
    const std::size_t arity = rows[0].size();
    if (arity < 2) throw InvalidArgument(path + ": need at least one feature and a label column");

    const Index cols = static_cast<Index>(arity);
    const Index yCol = labelColumn < 0 ? cols - 1 : labelColumn;
    if (yCol < 0 || yCol >= cols)
        throw InvalidArgument(path + ": label column " + std::to_string(yCol) + " out of range");

    Dataset data;
    data.x.resize(static_cast<Index>(rows.size()), cols - 1);
    data.y.resize(static_cast<Index>(rows.size()));
    for (std::size_t i = 0; i < rows.size(); ++i) {
        Index k = 0;
        for (Index j = 0; j < cols; ++j) {
            if (j == yCol) continue;
            data.x(static_cast<Index>(i), k++) = rows[i][static_cast<std::size_t>(j)];
        }
        const double yv = rows[i][static_cast<std::size_t>(yCol)];
        if (yv != -1.0 && yv != 0.0 && yv != 1.0)
            throw InvalidArgument(path + ": data row " + std::to_string(i + 1) + ": label " +
                                  formatDouble(yv) + " outside {-1, 0, 1}");
        data.y(static_cast<Index>(i)) = static_cast<int>(yv);
    }
    return data;
}

void saveCsv(const std::string& path, const Dataset& data) {
    std::ofstream out(path);
    if (!out) throw InvalidArgument("cannot write " + path);
    for (Index j = 0; j < data.d(); ++j) out << "x" << (j + 1) << ",";
    out << "y\n";
    for (Index i = 0; i < data.m(); ++i) {
        for (Index j = 0; j < data.d(); ++j) out << formatDouble(data.x(i, j)) << ",";
        out << data.y(i) << "\n";
    }
    if (!out) throw InvalidArgument("write failure on " + path);
}

Dataset genTwoMoons(Index m, double noise, Index labeledPerClass, std::uint64_t seed) {
    if (m % 2 != 0) throw InvalidArgument("genTwoMoons: m must be even");
    if (labeledPerClass > m / 2) throw InvalidArgument("genTwoMoons: labeledPerClass > m/2");

    Rng rng = substream(seed, "two-moons");
    Dataset data;
    data.x.resize(m, 2);
    data.y.resize(m);
    const Index half = m / 2;
    for (Index i = 0; i < m; ++i) {
        const double t = rng.uniform(0.0, M_PI);
        double px, py;
        if (i < half) {  // upper moon, class +1
            px = std::cos(t);
            py = std::sin(t);
        } else {  // reflected arc shifted right and down
            px = std::cos(t) + 0.5;
            py = -std::sin(t) - 0.25;
        }
        data.x(i, 0) = px + noise * rng.normal();
        data.x(i, 1) = py + noise * rng.normal();
        data.y(i) = i < half ? 1 : -1;
    }
    Rng mask = substream(seed, "two-moons-labels");
    data.y = maskLabels(data.y, labeledPerClass, mask);
    return data;
}

Dataset genTwoGaussians(Index m, double separation, Index dims, Index labeledPerClass,
                        std::uint64_t seed) {
    if (m % 2 != 0) throw InvalidArgument("genTwoGaussians: m must be even");
    if (dims < 1) throw InvalidArgument("genTwoGaussians: dims must be >= 1");
    if (labeledPerClass > m / 2) throw InvalidArgument("genTwoGaussians: labeledPerClass > m/2");

    Rng rng = substream(seed, "two-gaussians");
    Dataset data;
    data.x.resize(m, dims);
    data.y.resize(m);
    const Index half = m / 2;
    for (Index i = 0; i < m; ++i) {
        const double mean = (i < half ? 0.5 : -0.5) * separation;
        for (Index j = 0; j < dims; ++j)
            data.x(i, j) = (j == 0 ? mean : 0.0) + rng.normal();
        data.y(i) = i < half ? 1 : -1;
    }
    Rng mask = substream(seed, "two-gaussians-labels");
    data.y = maskLabels(data.y, labeledPerClass, mask);
    return data;
}

IntVector maskLabels(const IntVector& y, Index labeledPerClass, Rng& rng) {
    IntVector out = IntVector::Zero(y.size());
    for (const int cls : {+1, -1}) {
        std::vector<Index> members;
        for (Index i = 0; i < y.size(); ++i)
            if (y(i) == cls) members.push_back(i);
        if (static_cast<Index>(members.size()) < labeledPerClass)
            throw InvalidArgument("maskLabels: class " + std::to_string(cls) + " has only " +
                                  std::to_string(members.size()) + " points");
        // Fisher-Yates prefix of length labeledPerClass
        for (Index k = 0; k < labeledPerClass; ++k) {
            const auto j = k + static_cast<Index>(rng.below(members.size() - k));
            std::swap(members[k], members[j]);
            out(members[k]) = cls;
        }
    }
    return out;
}

GroupSet groupsFromLabels(const Dataset& data) {
    GroupSet groups;
    for (const int cls : {+1, -1}) {
        std::vector<Index> g;
        for (Index i = 0; i < data.y.size(); ++i)
            if (data.y(i) == cls) g.push_back(i);
        if (!g.empty()) groups.push_back(std::move(g));
    }
    if (groups.empty()) throw InvalidArgument("groupsFromLabels: no labeled points");
    return groups;
}

std::vector<Index> labeledIndices(const IntVector& y) {
    std::vector<Index> out;
    for (Index i = 0; i < y.size(); ++i)
        if (y(i) != 0) out.push_back(i);
    return out;
}

std::vector<std::vector<Index>> makeFolds(const std::vector<Index>& indices, int k, Rng& rng) {
    if (k < 1) throw InvalidArgument("makeFolds: k must be >= 1");
    if (static_cast<std::size_t>(k) > indices.size())
        throw InvalidArgument("makeFolds: more folds than indices");
    std::vector<Index> order = indices;
    for (std::size_t i = order.size(); i > 1; --i)
        std::swap(order[i - 1], order[rng.below(i)]);
    std::vector<std::vector<Index>> folds(static_cast<std::size_t>(k));
    for (std::size_t i = 0; i < order.size(); ++i)
        folds[i % static_cast<std::size_t>(k)].push_back(order[i]);
    return folds;
}

}  // namespace sskpca
