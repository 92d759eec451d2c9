#include "ttlab/whitehead.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <numeric>
#include <set>

namespace ttlab {

std::vector<Turn> seed_turns(const GraphMap& g) {
    std::set<Turn> out;
    for (const Path& w : g.images())
        for (std::size_t i = 1; i < w.size(); ++i) out.emplace(inv(w[i - 1]), w[i]);
    return {out.begin(), out.end()};
}

std::vector<Turn> taken_turns(const GraphMap& g) {
    if (!is_train_track(g).train_track) throw PreconditionError("taken_turns needs a train track map");
    std::vector<Dir> dmap = direction_map(g);
    std::set<Turn> closure;
    for (Turn t : seed_turns(g)) {
        while (closure.insert(t).second) t = Turn(dmap[t.a], dmap[t.b]);
    }
    return {closure.begin(), closure.end()};
}

std::vector<Turn> brute_force_taken_turns(const GraphMap& g, int kmax, std::uint64_t letter_budget) {
    std::set<Turn> out;
    std::uint64_t scanned = 0;
    for (int k = 1; k <= kmax; ++k)
        for (int e = 0; e < g.n_edges(); ++e) {
            Path w{positive_dir(e)};
            Expander ex(g, w, k);
            Dir prev = -1, cur;
            while (ex.next(cur)) {
                if (++scanned > letter_budget) throw GrowthCapError("letter budget exhausted");
                if (prev >= 0) out.emplace(inv(prev), cur);
                prev = cur;
            }
        }
    return {out.begin(), out.end()};
}

std::vector<std::vector<Dir>> WhiteheadGraph::components() const {
    std::map<Dir, Dir> parent;
    for (Dir d : nodes) parent[d] = d;
    std::function<Dir(Dir)> find = [&](Dir x) { return parent[x] == x ? x : parent[x] = find(parent[x]); };
    for (const Turn& t : edges) {
        Dir a = find(t.a), b = find(t.b);
        if (a != b) parent[std::max(a, b)] = std::min(a, b);
    }
    std::map<Dir, std::vector<Dir>> groups;
    for (Dir d : nodes) groups[find(d)].push_back(d);
    std::vector<std::vector<Dir>> out;
    for (auto& [root, members] : groups) out.push_back(std::move(members));
    return out;
}

WhiteheadGraph local_whitehead_graph(const GraphMap& g, int v, const std::vector<Turn>& taken) {
    WhiteheadGraph w;
    w.kind = WhiteheadGraph::Kind::Local;
    w.vertex = v;
    w.nodes = g.graph().directions_at(v);
    for (const Turn& t : taken)
        if (g.graph().initial_vertex(t.a) == v) w.edges.push_back(t);
    return w;
}

WhiteheadGraph local_whitehead_graph(const GraphMap& g, int v) {
    return local_whitehead_graph(g, v, taken_turns(g));
}

WhiteheadGraph stable_whitehead_graph(const GraphMap& g, int v, const std::vector<Turn>& taken) {
    WhiteheadGraph local = local_whitehead_graph(g, v, taken);
    std::vector<char> periodic(g.n_dirs(), 0);
    for (const auto& pd : periodic_directions(direction_map(g))) periodic[pd.dir] = 1;
    WhiteheadGraph w;
    w.kind = WhiteheadGraph::Kind::Stable;
    w.vertex = v;
    for (Dir d : local.nodes)
        if (periodic[d]) w.nodes.push_back(d);
    for (const Turn& t : local.edges)
        if (periodic[t.a] && periodic[t.b]) w.edges.push_back(t);
    return w;
}

WhiteheadGraph stable_whitehead_graph(const GraphMap& g, int v) {
    return stable_whitehead_graph(g, v, taken_turns(g));
}

std::vector<WhiteheadGraph> ideal_whitehead_graph(const GraphMap& g, const PnpCertificate& cert) {
    if (cert.verdict != PnpVerdict::PnpFree) throw PnpNotVerified("ideal Whitehead graph needs a pNp-free certificate");
    std::vector<Turn> taken = taken_turns(g);
    std::vector<WhiteheadGraph> out;
    for (int v = 0; v < g.graph().n_vertices; ++v) {
        WhiteheadGraph s = stable_whitehead_graph(g, v, taken);
        if (s.nodes.size() < 3) continue;
        for (auto& comp : s.components()) {
            WhiteheadGraph c;
            c.kind = WhiteheadGraph::Kind::IdealComponent;
            c.nodes = comp;
            for (const Turn& t : s.edges)
                if (std::binary_search(comp.begin(), comp.end(), t.a)) c.edges.push_back(t);
            out.push_back(std::move(c));
        }
    }
    return out;
}

int IndexList::twice_sum() const { return std::accumulate(twice.begin(), twice.end(), 0); }

IndexList::Window IndexList::window(int rank) const {
    int s = twice_sum();
    int floor = 2 - 2 * rank;
    if (s < 0 && s > floor) return Window::Strict;
    if (s == floor && s < 0) return Window::Boundary;
    return Window::Violated;
}

std::string format_half(int twice) {
    if (twice % 2 == 0) return std::to_string(twice / 2);
    return std::to_string(twice) + "/2";
}

std::string IndexList::format() const {
    std::string s = "(";
    for (std::size_t i = 0; i < twice.size(); ++i) {
        if (i) s += ", ";
        s += format_half(twice[i]);
    }
    return s + ")";
}

std::string to_string(IndexList::Window w) {
    switch (w) {
        case IndexList::Window::Strict: return "strict";
        case IndexList::Window::Boundary: return "boundary";
        case IndexList::Window::Violated: return "violated";
    }
    return "violated";
}

namespace {
void finish(IndexList& l) { std::sort(l.twice.begin(), l.twice.end(), std::greater<>()); }
}  // namespace

IndexList index_list_pnp_free(const GraphMap& g, const PnpCertificate& cert) {
    IndexList l;
    for (const auto& c : ideal_whitehead_graph(g, cert)) {
        int k = static_cast<int>(c.nodes.size());
        if (k >= 3) l.twice.push_back(2 - k);
    }
    finish(l);
    return l;
}

IndexList index_list_from_records(const GraphMap& g, const std::vector<NielsenPathRecord>& records) {
    NielsenClasses nc = nielsen_classes(g, records);
    GateStructure gs = gates(g);
    std::vector<int> n(nc.n_classes, 0);
    for (std::size_t i = 0; i < nc.points.size(); ++i) {
        const PeriodicPoint& p = nc.points[i];
        n[nc.class_of[i]] += p.kind == PeriodicPoint::Kind::Vertex ? gs.gates_at(g.graph(), p.vertex) : 2;
    }
    for (const auto& r : records) {
        auto it = std::lower_bound(nc.points.begin(), nc.points.end(), r.end1);
        --n[nc.class_of[it - nc.points.begin()]];
    }
    IndexList l;
    for (int x : n)
        if (x >= 3) l.twice.push_back(2 - x);
    finish(l);
    return l;
}

IndexList index_list_general(const GraphMap& g, const PnpCertificate& cert) {
    if (cert.verdict == PnpVerdict::Inconclusive) throw PnpNotVerified("index list needs a conclusive pNp search");
    return index_list_from_records(g, cert.records);
}

}  // namespace ttlab
