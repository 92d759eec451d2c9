#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <optional>
#include <vector>

#include "ttlab/core.hpp"

namespace ttlab {

constexpr std::size_t kDefaultGrowthCap = 1'000'000;

using IntMatrix = Eigen::Matrix<std::int64_t, Eigen::Dynamic, Eigen::Dynamic>;

class GraphMap {
public:
    GraphMap() = default;
    // images[i] is the image of edge i; throws MalformedMap/StructureError.
    GraphMap(MarkedGraph graph, std::vector<Path> images);

    static GraphMap from_images(std::vector<Path> images, int declared_rank, bool strict = false);
    static GraphMap from_images(std::vector<Path> images, int declared_rank,
                                const std::vector<std::vector<Dir>>& vertices, bool strict = false);
    static GraphMap identity(const MarkedGraph& graph);

    const MarkedGraph& graph() const { return graph_; }
    int n_edges() const { return graph_.n_edges; }
    int n_dirs() const { return graph_.n_dirs(); }
    int rank() const { return graph_.rank; }
    const std::vector<Path>& images() const { return images_; }
    // image of a direction read as an oriented edge
    const Path& image(Dir d) const { return dir_images_[d]; }

private:
    MarkedGraph graph_;
    std::vector<Path> images_;
    std::vector<Path> dir_images_;
};

Path apply_to_path(const GraphMap& g, const Path& p, bool reduce);
GraphMap iterate(const GraphMap& g, int k, std::size_t cap = kDefaultGrowthCap);

// Dg: d = D0(e) goes to D0(g(e)).
std::vector<Dir> direction_map(const GraphMap& g);
std::vector<int> vertex_map(const GraphMap& g);

IntMatrix transition_matrix(const GraphMap& g);

struct Primitivity {
    bool primitive = false;
    int exponent = 0;  // least k with M^k > 0, when primitive
};
Primitivity is_primitive(const IntMatrix& m);
inline int wielandt_bound(int n) { return n * n - 2 * n + 2; }

struct PfEstimate {
    double lambda = 0;
    double lower = 0;  // Collatz-Wielandt bounds at termination
    double upper = 0;
    Eigen::VectorXd lengths;  // left eigenvector, min entry 1
};
// Throws PreconditionError for non-primitive input.
PfEstimate pf_estimate(const IntMatrix& m);
double pf_eigenvalue(const IntMatrix& m);

// |g^j(d)| for every direction, saturating at UINT64_MAX.
class LengthTable {
public:
    explicit LengthTable(const GraphMap& g) : g_(&g) {}
    std::uint64_t operator()(Dir d, int j);
    std::uint64_t word(const Path& p, int j);

private:
    const GraphMap* g_;
    std::vector<std::vector<std::uint64_t>> rows_;
};

std::uint64_t sat_add(std::uint64_t a, std::uint64_t b);

// Letter-by-letter generator of g^j(w), never materializing it.  w must
// outlive the expander.
class Expander {
public:
    Expander(const GraphMap& g, const Path& w, int j);
    // Starts at letter `start` of g^j(w).
    Expander(const GraphMap& g, const Path& w, int j, std::uint64_t start, LengthTable& len);
    bool next(Dir& out);
    // The pending letter and the number of images still to apply to it.
    bool pending(Dir& x, int& depth);
    // Drops the pending block g^depth(x).
    void skip() { ++stack_.back().pos; }
    // Replaces the pending letter by its image, one level down.
    void descend();

private:
    struct Frame {
        const Path* word;
        std::size_t pos;
        int depth;
    };
    const GraphMap* g_;
    std::vector<Frame> stack_;
};

}  // namespace ttlab
