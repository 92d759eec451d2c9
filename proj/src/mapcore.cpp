#include "ttlab/mapcore.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace ttlab {

GraphMap::GraphMap(MarkedGraph graph, std::vector<Path> images)
    : graph_(std::move(graph)), images_(std::move(images)) {
    if (static_cast<int>(images_.size()) != graph_.n_edges)
        throw MalformedMap("image count differs from edge count");
    dir_images_.resize(graph_.n_dirs());
    for (int e = 0; e < graph_.n_edges; ++e) {
        const Path& w = images_[e];
        if (w.empty()) throw MalformedMap(std::string("empty image for edge ") + letter(positive_dir(e)));
        if (!graph_.composable(w))
            throw MalformedMap("image " + format_word(w) + " is not composable");
        if (!is_reduced(w)) throw MalformedMap("image " + format_word(w) + " is not reduced");
        dir_images_[positive_dir(e)] = w;
        dir_images_[inv(positive_dir(e))] = inverse_path(w);
    }
    // endpoint coherence: directions at one vertex go to one vertex
    std::vector<int> target(graph_.n_vertices, -1);
    for (Dir d = 0; d < graph_.n_dirs(); ++d) {
        int v = graph_.initial_vertex(d);
        int w = graph_.initial_vertex(dir_images_[d].front());
        if (target[v] < 0)
            target[v] = w;
        else if (target[v] != w)
            throw MalformedMap("map does not send vertices to vertices");
    }
}

GraphMap GraphMap::from_images(std::vector<Path> images, int declared_rank, bool strict) {
    MarkedGraph g = infer_graph_structure(images, declared_rank, strict);
    return GraphMap(std::move(g), std::move(images));
}

GraphMap GraphMap::from_images(std::vector<Path> images, int declared_rank,
                               const std::vector<std::vector<Dir>>& vertices, bool strict) {
    MarkedGraph g = graph_from_vertices(images, vertices, declared_rank, strict);
    return GraphMap(std::move(g), std::move(images));
}

GraphMap GraphMap::identity(const MarkedGraph& graph) {
    std::vector<Path> images;
    for (int e = 0; e < graph.n_edges; ++e) images.push_back({positive_dir(e)});
    return GraphMap(graph, std::move(images));
}

Path apply_to_path(const GraphMap& g, const Path& p, bool reduce) {
    if (!g.graph().composable(p)) throw MalformedPath("path is not composable: " + format_word(p));
    Path out;
    for (Dir d : p) {
        const Path& w = g.image(d);
        out.insert(out.end(), w.begin(), w.end());
    }
    return reduce ? free_reduce(out) : out;
}

GraphMap iterate(const GraphMap& g, int k, std::size_t cap) {
    if (k < 1) throw PreconditionError("iterate needs k >= 1");
    std::vector<Path> cur = g.images();
    for (int step = 1; step < k; ++step) {
        for (Path& w : cur) {
            Path next;
            for (Dir d : w) {
                const Path& im = g.image(d);
                next.insert(next.end(), im.begin(), im.end());
                if (next.size() > cap) throw GrowthCapError("image length exceeds growth cap");
            }
            w = free_reduce(next);
        }
    }
    return GraphMap(g.graph(), std::move(cur));
}

std::vector<Dir> direction_map(const GraphMap& g) {
    std::vector<Dir> dg(g.n_dirs());
    for (Dir d = 0; d < g.n_dirs(); ++d) dg[d] = g.image(d).front();
    return dg;
}

std::vector<int> vertex_map(const GraphMap& g) {
    const MarkedGraph& gr = g.graph();
    std::vector<int> f(gr.n_vertices, -1);
    for (Dir d = 0; d < g.n_dirs(); ++d) f[gr.initial_vertex(d)] = gr.initial_vertex(g.image(d).front());
    return f;
}

IntMatrix transition_matrix(const GraphMap& g) {
    int n = g.n_edges();
    IntMatrix m = IntMatrix::Zero(n, n);
    for (int j = 0; j < n; ++j)
        for (Dir d : g.images()[j]) ++m(edge_of(d), j);
    return m;
}

Primitivity is_primitive(const IntMatrix& m) {
    int n = static_cast<int>(m.rows());
    using BoolMatrix = Eigen::Matrix<int, Eigen::Dynamic, Eigen::Dynamic>;
    BoolMatrix a = (m.array() > 0).cast<int>();
    BoolMatrix p = a;
    for (int k = 1; k <= wielandt_bound(n); ++k) {
        if ((p.array() > 0).all()) return {true, k};
        p = ((p * a).array() > 0).cast<int>();
    }
    return {false, 0};
}

PfEstimate pf_estimate(const IntMatrix& m) {
    if (!is_primitive(m).primitive) throw PreconditionError("PF eigenvalue needs a primitive matrix");
    Eigen::MatrixXd a = m.cast<double>();
    auto run = [](const Eigen::MatrixXd& mat, double& lo, double& hi) {
        Eigen::VectorXd x = Eigen::VectorXd::Ones(mat.rows());
        for (int it = 0; it < 1'000'000; ++it) {
            Eigen::VectorXd y = mat * x;
            Eigen::ArrayXd ratio = y.array() / x.array();
            lo = ratio.minCoeff();
            hi = ratio.maxCoeff();
            x = y / y.maxCoeff();
            if (hi - lo <= 1e-12 * hi) break;
        }
        return x;
    };
    PfEstimate est;
    run(a, est.lower, est.upper);
    est.lambda = 0.5 * (est.lower + est.upper);
    double lo2, hi2;
    Eigen::VectorXd v = run(a.transpose(), lo2, hi2);
    est.lengths = v / v.minCoeff();
    return est;
}

double pf_eigenvalue(const IntMatrix& m) { return pf_estimate(m).lambda; }

std::uint64_t sat_add(std::uint64_t a, std::uint64_t b) {
    std::uint64_t s = a + b;
    return s < a ? std::numeric_limits<std::uint64_t>::max() : s;
}

std::uint64_t LengthTable::operator()(Dir d, int j) {
    while (static_cast<int>(rows_.size()) <= j) {
        int n = g_->n_dirs();
        std::vector<std::uint64_t> row(n, 1);
        if (!rows_.empty()) {
            const auto& prev = rows_.back();
            for (Dir x = 0; x < n; ++x) {
                std::uint64_t s = 0;
                for (Dir c : g_->image(x)) s = sat_add(s, prev[c]);
                row[x] = s;
            }
        }
        rows_.push_back(std::move(row));
    }
    return rows_[j][d];
}

std::uint64_t LengthTable::word(const Path& p, int j) {
    std::uint64_t s = 0;
    for (Dir d : p) s = sat_add(s, (*this)(d, j));
    return s;
}

Expander::Expander(const GraphMap& g, const Path& w, int j) : g_(&g) { stack_.push_back({&w, 0, j}); }

Expander::Expander(const GraphMap& g, const Path& w, int j, std::uint64_t start, LengthTable& len)
    : g_(&g) {
    const Path* word = &w;
    int depth = j;
    while (true) {
        std::size_t i = 0;
        for (; i < word->size(); ++i) {
            std::uint64_t l = len((*word)[i], depth);
            if (start < l) break;
            start -= l;
        }
        if (i == word->size()) {
            stack_.push_back({word, i, depth});
            return;
        }
        if (depth == 0) {
            stack_.push_back({word, i, depth});
            return;
        }
        stack_.push_back({word, i + 1, depth});
        word = &g.image((*word)[i]);
        --depth;
    }
}

bool Expander::next(Dir& out) {
    while (!stack_.empty()) {
        Frame& f = stack_.back();
        if (f.pos == f.word->size()) {
            stack_.pop_back();
            continue;
        }
        Dir c = (*f.word)[f.pos++];
        if (f.depth == 0) {
            out = c;
            return true;
        }
        int depth = f.depth - 1;
        stack_.push_back({&g_->image(c), 0, depth});
    }
    return false;
}

bool Expander::pending(Dir& x, int& depth) {
    while (!stack_.empty() && stack_.back().pos == stack_.back().word->size()) stack_.pop_back();
    if (stack_.empty()) return false;
    const Frame& f = stack_.back();
    x = (*f.word)[f.pos];
    depth = f.depth;
    return true;
}

void Expander::descend() {
    Frame& f = stack_.back();
    Dir c = (*f.word)[f.pos++];
    int depth = f.depth - 1;
    stack_.push_back({&g_->image(c), 0, depth});
}

}  // namespace ttlab
