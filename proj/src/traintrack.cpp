#include "ttlab/traintrack.hpp"

#include <algorithm>
#include <map>
#include <numeric>

namespace ttlab {

std::string format_turn(const Turn& t) {
    return std::string("{") + letter(t.a) + "," + letter(t.b) + "}";
}

Dir iterate_dir(const std::vector<Dir>& dmap, Dir d, int k) {
    for (int i = 0; i < k; ++i) d = dmap[d];
    return d;
}

std::vector<PeriodicDirection> periodic_directions(const std::vector<Dir>& dmap) {
    int n = static_cast<int>(dmap.size());
    std::vector<PeriodicDirection> out;
    for (Dir d = 0; d < n; ++d) {
        Dir x = d;
        for (int p = 1; p <= n; ++p) {
            x = dmap[x];
            if (x == d) {
                out.push_back({d, p});
                break;
            }
        }
    }
    return out;
}

int preperiod(const std::vector<Dir>& dmap) {
    int n = static_cast<int>(dmap.size());
    std::vector<char> periodic(n, 0);
    for (const auto& pd : periodic_directions(dmap)) periodic[pd.dir] = 1;
    int tail = 0;
    for (Dir d = 0; d < n; ++d) {
        int steps = 0;
        for (Dir x = d; !periodic[x]; x = dmap[x]) ++steps;
        tail = std::max(tail, steps);
    }
    return tail;
}

int direction_period(const GraphMap& g) {
    int p = 1;
    for (const auto& pd : periodic_directions(direction_map(g))) p = std::lcm(p, pd.period);
    for (const auto& pv : periodic_directions(vertex_map(g))) p = std::lcm(p, pv.period);
    return p;
}

GateStructure gates(const GraphMap& g) {
    const MarkedGraph& gr = g.graph();
    std::vector<Dir> dmap = direction_map(g);
    int n = g.n_dirs();
    GateStructure gs;
    gs.gate_of.assign(n, -1);
    std::map<std::pair<int, Dir>, int> ids;
    for (Dir d = 0; d < n; ++d) {
        auto key = std::make_pair(gr.initial_vertex(d), iterate_dir(dmap, d, n));
        auto [it, fresh] = ids.emplace(key, static_cast<int>(gs.gates.size()));
        if (fresh) gs.gates.emplace_back();
        gs.gate_of[d] = it->second;
        gs.gates[it->second].push_back(d);
    }
    for (Dir x = 0; x < n; ++x)
        for (Dir y = x + 1; y < n; ++y)
            if (gs.gate_of[x] == gs.gate_of[y]) gs.illegal.emplace_back(x, y);
    gs.periodic = periodic_directions(dmap);
    return gs;
}

int GateStructure::gates_at(const MarkedGraph& gr, int v) const {
    std::vector<int> ids;
    for (Dir d : gr.directions_at(v)) ids.push_back(gate_of[d]);
    std::sort(ids.begin(), ids.end());
    return static_cast<int>(std::unique(ids.begin(), ids.end()) - ids.begin());
}

std::vector<Turn> illegal_turns(const GraphMap& g) { return gates(g).illegal; }

TrainTrackCertificate is_train_track(const GraphMap& g) {
    GateStructure gs = gates(g);
    TrainTrackCertificate cert;
    for (int e = 0; e < g.n_edges(); ++e) {
        const Path& w = g.images()[e];
        for (std::size_t i = 1; i < w.size(); ++i) {
            Dir x = inv(w[i - 1]), y = w[i];
            if (x == y || gs.same_gate(x, y)) {
                cert.train_track = false;
                cert.edge = e;
                cert.position = static_cast<int>(i);
                cert.turn = Turn(x, y);
                cert.reason = x == y ? "image not reduced" : "image takes an illegal turn";
                return cert;
            }
        }
    }
    return cert;
}

bool brute_force_local_injectivity(const GraphMap& g, int kmax, std::uint64_t letter_budget) {
    std::uint64_t scanned = 0;
    for (int k = 1; k <= kmax; ++k) {
        for (int e = 0; e < g.n_edges(); ++e) {
            Path w{positive_dir(e)};
            Expander ex(g, w, k);
            Dir prev = -1, cur;
            while (ex.next(cur)) {
                if (++scanned > letter_budget) throw GrowthCapError("letter budget exhausted");
                if (prev >= 0 && cur == inv(prev)) return false;
                prev = cur;
            }
        }
    }
    return true;
}

}  // namespace ttlab
