#include "ttlab/core.hpp"

#include <algorithm>
#include <cctype>
#include <numeric>

namespace ttlab {

char letter(Dir d) {
    char base = is_positive(d) ? 'a' : 'A';
    return static_cast<char>(base + edge_of(d));
}

Dir dir_from_letter(char c) {
    if (c >= 'a' && c <= 'z') return positive_dir(c - 'a');
    if (c >= 'A' && c <= 'Z') return inv(positive_dir(c - 'A'));
    throw MalformedPath(std::string("not an edge letter: '") + c + "'");
}

std::string format_word(const Path& p) {
    std::string s;
    s.reserve(p.size());
    for (Dir d : p) s.push_back(letter(d));
    return s;
}

Path parse_word(std::string_view s) {
    Path p;
    for (char c : s) {
        if (std::isspace(static_cast<unsigned char>(c))) continue;
        p.push_back(dir_from_letter(c));
    }
    return p;
}

Path inverse_path(const Path& p) {
    Path out(p.rbegin(), p.rend());
    for (Dir& d : out) d = inv(d);
    return out;
}

Path free_reduce(const Path& p) {
    Path st;
    st.reserve(p.size());
    for (Dir d : p) {
        if (!st.empty() && st.back() == inv(d))
            st.pop_back();
        else
            st.push_back(d);
    }
    return st;
}

bool is_reduced(const Path& p) {
    for (std::size_t i = 1; i < p.size(); ++i)
        if (p[i] == inv(p[i - 1])) return false;
    return true;
}

std::vector<Dir> MarkedGraph::directions_at(int v) const {
    std::vector<Dir> out;
    for (Dir d = 0; d < n_dirs(); ++d)
        if (vertex_of[d] == v) out.push_back(d);
    return out;
}

bool MarkedGraph::composable(const Path& p) const {
    for (Dir d : p)
        if (d < 0 || d >= n_dirs()) return false;
    for (std::size_t i = 1; i < p.size(); ++i)
        if (terminal_vertex(p[i - 1]) != initial_vertex(p[i])) return false;
    return true;
}

std::vector<int> MarkedGraph::low_valence_vertices() const {
    std::vector<int> valence(n_vertices, 0), out;
    for (int v : vertex_of) ++valence[v];
    for (int v = 0; v < n_vertices; ++v)
        if (valence[v] < 3) out.push_back(v);
    return out;
}

Path reduce_path(const MarkedGraph& g, const Path& p) {
    if (!g.composable(p)) throw MalformedPath("path is not composable: " + format_word(p));
    return free_reduce(p);
}

namespace {

struct UnionFind {
    std::vector<int> parent;
    explicit UnionFind(int n) : parent(n) { std::iota(parent.begin(), parent.end(), 0); }
    int find(int x) {
        while (parent[x] != x) x = parent[x] = parent[parent[x]];
        return x;
    }
    bool unite(int a, int b) {
        a = find(a);
        b = find(b);
        if (a == b) return false;
        parent[std::max(a, b)] = std::min(a, b);
        return true;
    }
};

void check_images(const std::vector<Path>& images) {
    int n = static_cast<int>(images.size());
    if (n == 0) throw MalformedMap("map has no edges");
    if (n > kMaxEdges) throw MalformedMap("too many edges");
    for (int e = 0; e < n; ++e) {
        if (images[e].empty())
            throw MalformedMap(std::string("empty image for edge ") + letter(positive_dir(e)));
        for (Dir d : images[e])
            if (edge_of(d) >= n)
                throw MalformedMap(std::string("image uses unknown edge ") + letter(d));
    }
}

Dir first_dir(const std::vector<Path>& images, Dir d) {
    const Path& w = images[edge_of(d)];
    return is_positive(d) ? w.front() : inv(w.back());
}

MarkedGraph finish(int n_edges, UnionFind& uf, int declared_rank, bool strict) {
    MarkedGraph g;
    g.n_edges = n_edges;
    g.vertex_of.assign(2 * n_edges, -1);
    std::vector<int> label(2 * n_edges, -1);
    int next = 0;
    for (Dir d = 0; d < 2 * n_edges; ++d) {
        int r = uf.find(d);
        if (label[r] < 0) label[r] = next++;
        g.vertex_of[d] = label[r];
    }
    g.n_vertices = next;
    g.rank = n_edges - next + 1;
    if (g.rank != declared_rank)
        throw StructureError("inferred rank " + std::to_string(g.rank) + " differs from declared rank " +
                             std::to_string(declared_rank));
    if (strict && !g.low_valence_vertices().empty())
        throw StructureError("vertex of valence less than 3");
    return g;
}

}  // namespace

MarkedGraph infer_graph_structure(const std::vector<Path>& images, int declared_rank, bool strict) {
    check_images(images);
    int n = static_cast<int>(images.size());
    UnionFind uf(2 * n);
    for (const Path& w : images)
        for (std::size_t i = 1; i < w.size(); ++i) uf.unite(inv(w[i - 1]), w[i]);
    // the map has to send vertices to vertices
    bool changed = true;
    while (changed) {
        changed = false;
        std::vector<int> witness(2 * n, -1);
        for (Dir d = 0; d < 2 * n; ++d) {
            int r = uf.find(d);
            if (witness[r] < 0)
                witness[r] = d;
            else if (uf.unite(first_dir(images, witness[r]), first_dir(images, d)))
                changed = true;
        }
    }
    // A finest partition of the wrong rank falls back to the rose when the
    // declared rank allows it.
    std::vector<char> root(2 * n, 0);
    int classes = 0;
    for (Dir d = 0; d < 2 * n; ++d)
        if (!root[uf.find(d)]++) ++classes;
    if (n - classes + 1 != declared_rank && declared_rank == n)
        for (Dir d = 1; d < 2 * n; ++d) uf.unite(0, d);
    return finish(n, uf, declared_rank, strict);
}

MarkedGraph graph_from_vertices(const std::vector<Path>& images,
                                const std::vector<std::vector<Dir>>& vertices, int declared_rank,
                                bool strict) {
    check_images(images);
    int n = static_cast<int>(images.size());
    UnionFind uf(2 * n);
    std::vector<int> seen(2 * n, 0);
    for (const auto& cls : vertices) {
        if (cls.empty()) throw MalformedMap("empty vertex class");
        for (Dir d : cls) {
            if (d >= 2 * n) throw MalformedMap(std::string("vertex lists unknown direction ") + letter(d));
            if (seen[d]++) throw MalformedMap(std::string("direction listed twice: ") + letter(d));
            uf.unite(cls.front(), d);
        }
    }
    for (Dir d = 0; d < 2 * n; ++d)
        if (!seen[d]) throw MalformedMap(std::string("direction missing from vertices: ") + letter(d));
    for (const Path& w : images)
        for (std::size_t i = 1; i < w.size(); ++i)
            if (uf.find(inv(w[i - 1])) != uf.find(w[i]))
                throw MalformedMap("image " + format_word(w) + " is not composable for the declared vertices");
    for (Dir a = 0; a < 2 * n; ++a)
        for (Dir b = a + 1; b < 2 * n; ++b)
            if (uf.find(a) == uf.find(b) &&
                uf.find(first_dir(images, a)) != uf.find(first_dir(images, b)))
                throw MalformedMap("map does not send vertices to vertices");
    return finish(n, uf, declared_rank, strict);
}

}  // namespace ttlab
