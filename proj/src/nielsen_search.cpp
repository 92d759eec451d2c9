#include <algorithm>
#include <cmath>
#include <set>
#include <tuple>

#include "ttlab/nielsen.hpp"

namespace ttlab {

int default_power_bound(const GraphMap& g) {
    int p = direction_period(g);
    int target = std::max(2 * p, 2 * g.rank() - 2);
    return (target + p - 1) / p * p;
}

int default_length_bound(const GraphMap& g) {
    PfEstimate pf = pf_estimate(transition_matrix(g));
    double lam = pf.lower * (1.0 - 1e-6);
    if (lam <= 1.0) throw PreconditionError("PF eigenvalue too close to 1 for a length bound");
    std::uint64_t c = 0;
    for (const Path& w : g.images()) c += w.size();
    double l = std::ceil(2.0 * static_cast<double>(c) / (lam - 1.0));
    if (l > 1e6) throw PreconditionError("length bound too large");
    return static_cast<int>(l);
}

namespace {

struct Node {
    Path r1;
    Path r2;
    int j;
    bool root;
};

class TurnSearch {
public:
    TurnSearch(const GraphMap& g, const GateStructure& gs, PointCalculus& pc, const PfEstimate& pf,
               const SearchOptions& opt, int pb, int lcap, std::uint64_t& nodes)
        : g_(g), gs_(gs), pc_(pc), pf_(pf), opt_(opt), pb_(pb), lcap_(lcap), nodes_(nodes),
          dmap_(direction_map(g)) {}

    bool inconclusive = false;
    std::string reason;
    std::vector<NielsenPathRecord> found;

    void run(Dir d, Dir dp, TurnTrace& trace) {
        d_ = d;
        dp_ = dp;
        trace_ = &trace;
        int j0 = 0;
        for (int j = 1; j <= g_.n_dirs(); ++j)
            if (iterate_dir(dmap_, d, j) == iterate_dir(dmap_, dp, j)) {
                j0 = j;
                break;
            }
        if (j0 == 0 || j0 > pb_) {
            TraceStep s;
            s.label = "bound-stop";
            s.rho1 = {d};
            s.rho2 = {dp};
            s.power = j0;
            push(std::move(s));
            return;
        }
        std::vector<Node> stack{{{d}, {dp}, j0, true}};
        std::set<std::tuple<Path, Path, int>> seen;
        while (!stack.empty()) {
            Node n = std::move(stack.back());
            stack.pop_back();
            if (!seen.emplace(n.r1, n.r2, n.j).second) continue;
            if (++nodes_ > opt_.node_budget) {
                inconclusive = true;
                reason = "node budget exhausted";
                return;
            }
            visit(n, stack);
        }
    }

private:
    const GraphMap& g_;
    const GateStructure& gs_;
    PointCalculus& pc_;
    const PfEstimate& pf_;
    std::vector<double> lambda_pows_;
    const SearchOptions& opt_;
    int pb_;
    int lcap_;
    std::uint64_t& nodes_;
    std::vector<Dir> dmap_;
    Dir d_ = 0, dp_ = 0;
    TurnTrace* trace_ = nullptr;

    void push(TraceStep s) {
        if (trace_->steps.size() >= opt_.trace_limit) {
            trace_->truncated = true;
            return;
        }
        trace_->steps.push_back(std::move(s));
    }

    std::vector<Dir> continuations(Dir last) const {
        std::vector<Dir> out;
        Dir back = inv(last);
        for (Dir e : g_.graph().directions_at(g_.graph().terminal_vertex(last)))
            if (gs_.legal_turn(back, e)) out.push_back(e);
        return out;
    }

    double lambda_pow(int d) {
        while (static_cast<int>(lambda_pows_.size()) <= d)
            lambda_pows_.push_back(lambda_pows_.empty() ? 1.0 : lambda_pows_.back() * pf_.lambda);
        return lambda_pows_[d];
    }

    bool gate_match(Dir x, Dir y) const { return x == y || gs_.same_gate(x, y); }

    void too_long(const char* what) {
        inconclusive = true;
        reason = std::string("length bound reached in ") + what;
    }

    void visit(const Node& n, std::vector<Node>& stack) {
        LengthTable& len = pc_.lengths();
        const int j = n.j;
        const std::uint64_t n1 = len.word(n.r1, j), n2 = len.word(n.r2, j);
        Expander s1(g_, n.r1, j), s2(g_, n.r2, j);
        std::uint64_t c = 0;
        double pf_gamma = 0;
        Path a1, a2;  // letters after the common prefix
        // Walk both expansion trees together, skipping identical blocks.
        while (c < n1 && c < n2) {
            Dir x, y;
            int dx, dy;
            s1.pending(x, dx);
            s2.pending(y, dy);
            if (dx == 0 && dy == 0) {
                s1.skip();
                s2.skip();
                if (x != y) {
                    a1.push_back(x);
                    a2.push_back(y);
                    break;
                }
                pf_gamma += pf_.lengths[edge_of(x)];
                ++c;
            } else if (dx == dy && x == y) {
                s1.skip();
                s2.skip();
                c += len(x, dx);
                pf_gamma += lambda_pow(dx) * pf_.lengths[edge_of(x)];
            } else {
                if (dx >= dy) s1.descend();
                if (dy >= dx) s2.descend();
            }
        }
        const std::string prime = n.root ? "" : "'";

        if (c == n1 || c == n2) {
            TraceStep s;
            s.label = "A" + prime;
            s.rho1 = n.r1;
            s.rho2 = n.r2;
            s.power = j;
            if (c == n1 && c == n2) {
                s.extended_side = 2;
                for (Dir e : continuations(n.r1.back()))
                    for (Dir f : continuations(n.r2.back()))
                        if (gate_match(iterate_dir(dmap_, e, j), iterate_dir(dmap_, f, j)))
                            s.pair_branches.emplace_back(e, f);
                if (!s.pair_branches.empty() &&
                    (static_cast<int>(n.r1.size()) + 1 > lcap_ || static_cast<int>(n.r2.size()) + 1 > lcap_)) {
                    too_long("edge addition");
                    s.pair_branches.clear();
                }
                for (auto [e, f] : s.pair_branches) {
                    Node ch{n.r1, n.r2, j, false};
                    ch.r1.push_back(e);
                    ch.r2.push_back(f);
                    stack.push_back(std::move(ch));
                }
            } else {
                int side = c == n1 ? 0 : 1;
                Expander& longer = side == 0 ? s2 : s1;
                Dir sigma0;
                longer.next(sigma0);
                const Path& rs = side == 0 ? n.r1 : n.r2;
                s.extended_side = side;
                for (Dir e : continuations(rs.back()))
                    if (gate_match(iterate_dir(dmap_, e, j), sigma0)) s.branches.push_back(e);
                if (!s.branches.empty() && static_cast<int>(rs.size()) + 1 > lcap_) {
                    too_long("edge addition");
                    s.branches.clear();
                }
                for (Dir e : s.branches) {
                    Node ch{n.r1, n.r2, j, false};
                    (side == 0 ? ch.r1 : ch.r2).push_back(e);
                    stack.push_back(std::move(ch));
                }
            }
            push(std::move(s));
            return;
        }

        Dir x1 = a1[0], x2 = a2[0];
        if (gs_.legal_turn(x1, x2)) {
            TraceStep s;
            s.label = "B" + prime;
            s.rho1 = n.r1;
            s.rho2 = n.r2;
            s.power = j;
            s.divergence = std::make_pair(x1, x2);
            push(std::move(s));
            return;
        }

        TraceStep s;
        s.rho1 = n.r1;
        s.rho2 = n.r2;
        s.power = j;
        s.divergence = std::make_pair(x1, x2);
        bool closes = false;
        if (x1 == d_ && x2 == dp_) {
            double lam_j = std::pow(pf_.lambda, j);
            double limit = pf_gamma / (lam_j - 1.0) * (1.0 + 1e-6);
            struct Side {
                bool dead = false;
                std::optional<PeriodicPoint> end;
                std::vector<Dir> cands;
            } side[2];
            for (int i = 0; i < 2; ++i) {
                const Path& r = i == 0 ? n.r1 : n.r2;
                Expander& st = i == 0 ? s1 : s2;
                Path& buf = i == 0 ? a1 : a2;
                const std::uint64_t total = i == 0 ? n1 : n2;
                const std::uint64_t k = r.size();
                double pf_head = 0;
                for (std::size_t t = 0; t + 1 < r.size(); ++t) pf_head += pf_.lengths[edge_of(r[t])];
                if (pf_head > limit) {
                    side[i].dead = true;
                    continue;
                }
                const std::uint64_t la = total - c;  // |alpha_i|
                while (buf.size() < k + 1 && buf.size() < la) {
                    Dir x;
                    st.next(x);
                    buf.push_back(x);
                }
                for (std::uint64_t t = 0; t < std::min<std::uint64_t>(k, la); ++t)
                    if (buf[t] != r[t]) side[i].dead = true;
                if (side[i].dead) continue;
                const std::uint64_t blen = len(r.back(), j);
                const std::uint64_t off = total - blen;
                if (la >= k) {
                    std::uint64_t pos = c + k - 1;
                    if (pos > off) {
                        std::uint64_t q = pos - off;
                        if (q == blen - 1) {
                            PeriodicPoint v;
                            v.vertex = g_.graph().terminal_vertex(r.back());
                            side[i].end = v;
                        } else {
                            side[i].end = pc_.canonical(r.back(), j, q);
                        }
                    }
                }
                if (la > k) {
                    side[i].cands.push_back(buf[k]);
                } else {
                    const std::uint64_t u = k - la;
                    for (Dir e : continuations(r.back())) {
                        Path one{e};
                        Expander he(g_, one, j);
                        bool ok = true;
                        Dir y;
                        std::uint64_t t = 0;
                        for (; t < u; ++t) {
                            if (!he.next(y)) break;
                            if (y != r[la + t]) {
                                ok = false;
                                break;
                            }
                        }
                        if (ok && t == u && he.next(y) && y != e) ok = false;
                        if (ok) side[i].cands.push_back(e);
                    }
                }
            }
            if (side[0].end && side[1].end) {
                closes = true;
                NielsenPathRecord rec;
                rec.rho1 = n.r1;
                rec.rho2 = n.r2;
                rec.base_turn = Turn(d_, dp_);
                rec.period = j;
                rec.end1 = *side[0].end;
                rec.end2 = *side[1].end;
                found.push_back(std::move(rec));
            }
            for (int i = 0; i < 2; ++i) {
                const Path& r = i == 0 ? n.r1 : n.r2;
                for (Dir e : side[i].cands) {
                    if (static_cast<int>(r.size()) + 1 > lcap_) {
                        too_long("period analysis");
                        continue;
                    }
                    Node ch{n.r1, n.r2, j, false};
                    (i == 0 ? ch.r1 : ch.r2).push_back(e);
                    stack.push_back(std::move(ch));
                    s.extensions.emplace_back(i, e);
                }
            }
        }
        s.label = "C" + prime + (closes ? "(i)" : "(ii)");
        push(std::move(s));
        if (j + 1 <= pb_) {
            stack.push_back({n.r1, n.r2, j + 1, false});
        } else {
            TraceStep b;
            b.label = "bound-stop";
            b.rho1 = n.r1;
            b.rho2 = n.r2;
            b.power = j;
            push(std::move(b));
        }
    }
};

}  // namespace

PnpCertificate find_ipnps(const GraphMap& g, const SearchOptions& opt) {
    TrainTrackCertificate tt = is_train_track(g);
    if (!tt.train_track) throw PreconditionError("find_ipnps needs a train track map");
    PnpCertificate cert;
    cert.power_bound = opt.power_bound > 0 ? opt.power_bound : default_power_bound(g);
    cert.length_bound = opt.length_bound > 0 ? opt.length_bound : default_length_bound(g);
    PfEstimate pf = pf_estimate(transition_matrix(g));
    GateStructure gs = gates(g);
    PointCalculus pc(g);
    bool inconclusive = false;
    std::vector<NielsenPathRecord> raw;
    for (const Turn& t : gs.illegal) {
        TurnTrace trace;
        trace.turn = t;
        trace.d1 = t.a;
        trace.d2 = t.b;
        TurnSearch search(g, gs, pc, pf, opt, cert.power_bound, cert.length_bound, cert.nodes);
        search.run(t.a, t.b, trace);
        cert.traces.push_back(std::move(trace));
        raw.insert(raw.end(), search.found.begin(), search.found.end());
        if (search.inconclusive) {
            inconclusive = true;
            if (cert.reason.empty()) cert.reason = search.reason + " at turn " + format_turn(t);
            if (search.reason == "node budget exhausted") break;
        }
    }
    std::set<NielsenPathRecord> uniq;
    for (auto& r : raw) {
        auto m = minimal_record(g, r, opt.verify_cap);
        if (!m) {
            inconclusive = true;
            cert.reason = "record failed literal verification";
            continue;
        }
        uniq.insert(*m);
    }
    cert.records.assign(uniq.begin(), uniq.end());
    if (inconclusive)
        cert.verdict = PnpVerdict::Inconclusive;
    else
        cert.verdict = cert.records.empty() ? PnpVerdict::PnpFree : PnpVerdict::PnpsFound;
    return cert;
}

}  // namespace ttlab
