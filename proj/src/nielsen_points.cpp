#include <algorithm>
#include <map>
#include <numeric>

#include "ttlab/nielsen.hpp"

namespace ttlab {

std::string format_point(const PeriodicPoint& p) {
    if (p.kind == PeriodicPoint::Kind::Vertex) return "v" + std::to_string(p.vertex);
    return std::string(1, letter(positive_dir(p.edge))) + "@" + std::to_string(p.position) + "/g^" +
           std::to_string(p.power);
}

std::string to_string(PnpVerdict v) {
    switch (v) {
        case PnpVerdict::PnpFree: return "pnp_free";
        case PnpVerdict::PnpsFound: return "pnps_found";
        case PnpVerdict::Inconclusive: return "inconclusive";
    }
    return "inconclusive";
}

Dir PointCalculus::letter_at(Dir x, int j, std::uint64_t pos) {
    while (j > 0) {
        for (Dir c : g_->image(x)) {
            std::uint64_t l = len_(c, j - 1);
            if (pos < l) {
                x = c;
                break;
            }
            pos -= l;
        }
        --j;
    }
    return x;
}

std::uint64_t PointCalculus::image_prefix_length(Dir x, int j, std::uint64_t n, int k) {
    std::uint64_t acc = 0;
    while (n > 0) {
        if (j == 0) return sat_add(acc, len_(x, k));
        Dir next = -1;
        for (Dir c : g_->image(x)) {
            std::uint64_t l = len_(c, j - 1);
            if (l <= n) {
                acc = sat_add(acc, len_(c, j - 1 + k));
                n -= l;
                if (n == 0) break;
            } else {
                next = c;
                break;
            }
        }
        if (next < 0) break;
        x = next;
        --j;
    }
    return acc;
}

std::uint64_t PointCalculus::expand(int edge, int k, std::uint64_t q, int m) {
    Dir x = positive_dir(edge);
    std::uint64_t cur = q;
    for (int i = 1; i < m; ++i) cur = sat_add(image_prefix_length(x, i * k, cur, k), q);
    return cur;
}

std::pair<std::uint64_t, std::uint64_t> PointCalculus::locate(Dir x, int j, int k, std::uint64_t q,
                                                              Dir& at) {
    std::uint64_t base = 0;
    while (j > 0) {
        bool found = false;
        for (Dir c : g_->image(x)) {
            std::uint64_t blk = len_(c, j - 1 + k);
            if (q < blk) {
                x = c;
                found = true;
                break;
            }
            q -= blk;
            base = sat_add(base, len_(c, j - 1));
        }
        if (!found) break;
        --j;
    }
    at = x;
    return {base, q};
}

std::optional<PeriodicPoint> PointCalculus::canonical(Dir x, int p, std::uint64_t q) {
    int e = edge_of(x);
    Dir pe = positive_dir(e);
    std::uint64_t total = len_(pe, p);
    if (q >= total) return std::nullopt;
    std::uint64_t qq = is_positive(x) ? q : total - 1 - q;
    if (letter_at(pe, p, qq) != pe) return std::nullopt;
    const MarkedGraph& gr = g_->graph();
    if (qq == 0) return PeriodicPoint{PeriodicPoint::Kind::Vertex, gr.initial_vertex(pe)};
    if (qq == total - 1) return PeriodicPoint{PeriodicPoint::Kind::Vertex, gr.terminal_vertex(pe)};
    for (int k = 1; k < p; ++k) {
        if (p % k) continue;
        Dir at;
        auto [r, off] = locate(pe, p - k, k, qq, at);
        (void)r;
        if (at != pe) continue;
        if (expand(e, k, off, p / k) == qq)
            return PeriodicPoint{PeriodicPoint::Kind::Interior, -1, e, k, off};
    }
    return PeriodicPoint{PeriodicPoint::Kind::Interior, -1, e, p, qq};
}

std::uint64_t PointCalculus::position_in(const PeriodicPoint& pt, Dir x, int p) {
    std::uint64_t qq = expand(pt.edge, pt.power, pt.position, p / pt.power);
    return is_positive(x) ? qq : len_(x, p) - 1 - qq;
}

namespace {

// g^p applied to a leg ending at pt: full images of all but the last edge,
// then the image of the last edge up to the letter holding pt.
bool leg_image(const GraphMap& g, PointCalculus& pc, const Path& leg, const PeriodicPoint& pt, int p,
               std::size_t cap, Path& out) {
    Dir last = leg.back();
    std::uint64_t keep;
    if (pt.kind == PeriodicPoint::Kind::Vertex) {
        if (g.graph().terminal_vertex(last) != pt.vertex) return false;
        keep = pc.lengths()(last, p);
    } else {
        if (pt.edge != edge_of(last) || p % pt.power != 0) return false;
        std::uint64_t q = pc.position_in(pt, last, p);
        if (pc.letter_at(last, p, q) != last) return false;
        keep = q + 1;
    }
    Path head(leg.begin(), leg.end() - 1);
    if (sat_add(pc.lengths().word(head, p), keep) > cap) throw GrowthCapError("leg image exceeds cap");
    out.clear();
    Expander ex(g, head, p);
    Dir d;
    while (ex.next(d)) out.push_back(d);
    Path tail{last};
    Expander et(g, tail, p);
    for (std::uint64_t i = 0; i < keep && et.next(d); ++i) out.push_back(d);
    return true;
}

}  // namespace

bool verify_record(const GraphMap& g, const NielsenPathRecord& r, std::size_t cap) {
    const MarkedGraph& gr = g.graph();
    if (r.rho1.empty() || r.rho2.empty() || r.period < 1) return false;
    if (r.rho1.front() == r.rho2.front()) return false;
    if (gr.initial_vertex(r.rho1.front()) != gr.initial_vertex(r.rho2.front())) return false;
    if (!gr.composable(r.rho1) || !gr.composable(r.rho2)) return false;
    if (!is_reduced(r.rho1) || !is_reduced(r.rho2)) return false;
    PointCalculus pc(g);
    Path f1, f2;
    if (!leg_image(g, pc, r.rho1, r.end1, r.period, cap, f1)) return false;
    if (!leg_image(g, pc, r.rho2, r.end2, r.period, cap, f2)) return false;
    if (f1.size() < r.rho1.size() || f2.size() < r.rho2.size()) return false;
    std::size_t c1 = f1.size() - r.rho1.size(), c2 = f2.size() - r.rho2.size();
    if (c1 != c2) return false;
    if (!std::equal(r.rho1.begin(), r.rho1.end(), f1.begin() + c1)) return false;
    if (!std::equal(r.rho2.begin(), r.rho2.end(), f2.begin() + c2)) return false;
    return std::equal(f1.begin(), f1.begin() + c1, f2.begin());
}

std::optional<NielsenPathRecord> minimal_record(const GraphMap& g, NielsenPathRecord r, std::size_t cap) {
    if (std::tie(r.rho2, r.end2) < std::tie(r.rho1, r.end1)) {
        std::swap(r.rho1, r.rho2);
        std::swap(r.end1, r.end2);
    }
    r.base_turn = Turn(r.rho1.front(), r.rho2.front());
    int base = 1;
    for (const PeriodicPoint* pt : {&r.end1, &r.end2})
        if (pt->kind == PeriodicPoint::Kind::Interior) base = std::lcm(base, pt->power);
    int p = r.period;
    for (int k = base; k <= p; k += base) {
        if (p % k) continue;
        NielsenPathRecord t = r;
        t.period = k;
        if (verify_record(g, t, cap)) return t;
    }
    return std::nullopt;
}

bool is_pnp_free(const GraphMap& g, const SearchOptions& opt) {
    PnpCertificate cert = find_ipnps(g, opt);
    if (cert.verdict == PnpVerdict::Inconclusive)
        throw PreconditionError("Nielsen path search inconclusive: " + cert.reason);
    return cert.verdict == PnpVerdict::PnpFree;
}

NielsenClasses nielsen_classes(const GraphMap& g, const std::vector<NielsenPathRecord>& records) {
    NielsenClasses nc;
    for (const auto& pv : periodic_directions(vertex_map(g)))
        nc.points.push_back({PeriodicPoint::Kind::Vertex, pv.dir});
    for (const auto& r : records)
        for (const PeriodicPoint* pt : {&r.end1, &r.end2})
            if (std::find(nc.points.begin(), nc.points.end(), *pt) == nc.points.end()) nc.points.push_back(*pt);
    std::sort(nc.points.begin(), nc.points.end());
    auto index = [&](const PeriodicPoint& p) {
        return static_cast<int>(std::lower_bound(nc.points.begin(), nc.points.end(), p) - nc.points.begin());
    };
    std::vector<int> parent(nc.points.size());
    std::iota(parent.begin(), parent.end(), 0);
    auto find = [&](int x) {
        while (parent[x] != x) x = parent[x] = parent[parent[x]];
        return x;
    };
    for (const auto& r : records) {
        int a = find(index(r.end1)), b = find(index(r.end2));
        if (a != b) parent[std::max(a, b)] = std::min(a, b);
    }
    std::map<int, int> ids;
    nc.class_of.resize(nc.points.size());
    for (std::size_t i = 0; i < nc.points.size(); ++i) {
        auto [it, fresh] = ids.emplace(find(static_cast<int>(i)), static_cast<int>(ids.size()));
        nc.class_of[i] = it->second;
    }
    nc.n_classes = static_cast<int>(ids.size());
    return nc;
}

}  // namespace ttlab
