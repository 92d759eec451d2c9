#include "ttlab/report.hpp"

#include <algorithm>
#include <chrono>
#include <filesystem>
#include <future>
#include <sstream>

namespace ttlab {

using nlohmann::json;

bool FicReport::inconclusive() const { return pnp && pnp->verdict == PnpVerdict::Inconclusive; }

FicReport fic_verdict(const GraphMap& g, const AnalysisOptions& opt, const std::string& source) {
    FicReport r;
    r.source = source;
    r.hash = fnv1a_hex(print_map(spec_of(g, false)));
    r.rank = g.rank();
    r.images = g.images();

    TrainTrackCertificate tt = is_train_track(g);
    r.train_track = tt.train_track;
    if (!tt.train_track)
        r.train_track_reason = tt.reason + ": edge " + letter(positive_dir(tt.edge)) + " turn " + format_turn(tt.turn);

    IntMatrix m = transition_matrix(g);
    for (int i = 0; i < m.rows(); ++i) {
        r.transition_matrix.emplace_back();
        for (int j = 0; j < m.cols(); ++j) r.transition_matrix.back().push_back(m(i, j));
    }
    Primitivity prim = is_primitive(m);
    r.primitive = prim.primitive;
    r.primitive_exponent = prim.exponent;
    if (prim.primitive) r.lambda = pf_eigenvalue(m);

    r.direction_map = direction_map(g);
    GateStructure gs = gates(g);
    r.periodic = gs.periodic;
    r.direction_period = direction_period(g);
    r.gates = gs.gates;
    r.illegal_turns = gs.illegal;

    bool lwg_ok = true;
    if (tt.train_track) {
        r.taken_turns = taken_turns(g);
        for (int v = 0; v < g.graph().n_vertices; ++v) {
            VertexReport vr;
            vr.id = v;
            vr.directions = g.graph().directions_at(v);
            vr.gates = gs.gates_at(g.graph(), v);
            for (const auto& pd : gs.periodic)
                if (g.graph().initial_vertex(pd.dir) == v) ++vr.periodic;
            vr.lwg_connected = local_whitehead_graph(g, v, r.taken_turns).connected();
            lwg_ok = lwg_ok && vr.lwg_connected;
            r.vertices.push_back(std::move(vr));
        }
    }

    if (!tt.train_track) r.reasons.push_back("not a train track map");
    if (!prim.primitive) r.reasons.push_back("transition matrix is not primitive");
    if (tt.train_track && !lwg_ok) r.reasons.push_back("a local Whitehead graph is disconnected");

    if (tt.train_track && prim.primitive) {
        try {
            r.pnp = find_ipnps(g, opt.search);
        } catch (const PreconditionError& e) {
            PnpCertificate c;
            c.verdict = PnpVerdict::Inconclusive;
            c.reason = e.what();
            r.pnp = c;
        }
        if (!opt.keep_trace) r.pnp->traces.clear();
        switch (r.pnp->verdict) {
            case PnpVerdict::PnpFree: break;
            case PnpVerdict::PnpsFound: r.reasons.push_back("periodic Nielsen paths found"); break;
            case PnpVerdict::Inconclusive: r.reasons.push_back("Nielsen path search inconclusive: " + r.pnp->reason); break;
        }
        if (r.pnp->verdict == PnpVerdict::PnpFree) r.index_list = index_list_pnp_free(g, *r.pnp);
        if (r.pnp->verdict != PnpVerdict::Inconclusive) r.index_list_general = index_list_general(g, *r.pnp);
    }
    r.verdict = r.reasons.empty() ? "fully_irreducible" : "not_certified";
    const std::optional<IndexList>& il = r.index_list ? r.index_list : r.index_list_general;
    r.inequality = il ? to_string(il->window(r.rank)) : "n/a";
    return r;
}

namespace {

std::string turn_str(const Turn& t) { return format_word({t.a, t.b}); }
Turn turn_of(const std::string& s) {
    Path p = parse_word(s);
    if (p.size() != 2) throw MalformedPath("turn needs two letters: " + s);
    return Turn(p[0], p[1]);
}
std::string dir_str(Dir d) { return std::string(1, letter(d)); }
Dir dir_of(const std::string& s) {
    if (s.size() != 1) throw MalformedPath("direction needs one letter: " + s);
    return dir_from_letter(s[0]);
}

json point_json(const PeriodicPoint& p) {
    if (p.kind == PeriodicPoint::Kind::Vertex) return {{"kind", "vertex"}, {"vertex", p.vertex}};
    return {{"kind", "interior"}, {"edge", dir_str(positive_dir(p.edge))}, {"power", p.power}, {"position", p.position}};
}
PeriodicPoint point_of(const json& j) {
    PeriodicPoint p;
    if (j.at("kind") == "vertex") {
        p.vertex = j.at("vertex");
        return p;
    }
    p.kind = PeriodicPoint::Kind::Interior;
    p.edge = edge_of(dir_of(j.at("edge")));
    p.power = j.at("power");
    p.position = j.at("position");
    return p;
}

json record_json(const NielsenPathRecord& r) {
    return {{"rho1", format_word(r.rho1)}, {"rho2", format_word(r.rho2)}, {"base_turn", turn_str(r.base_turn)},
            {"period", r.period}, {"end1", point_json(r.end1)}, {"end2", point_json(r.end2)}};
}
NielsenPathRecord record_of(const json& j) {
    NielsenPathRecord r;
    r.rho1 = parse_word(j.at("rho1").get<std::string>());
    r.rho2 = parse_word(j.at("rho2").get<std::string>());
    r.base_turn = turn_of(j.at("base_turn"));
    r.period = j.at("period");
    r.end1 = point_of(j.at("end1"));
    r.end2 = point_of(j.at("end2"));
    return r;
}

json step_json(const TraceStep& s) {
    json j{{"label", s.label}, {"rho1", format_word(s.rho1)}, {"rho2", format_word(s.rho2)}, {"power", s.power}};
    if (s.extended_side >= 0) j["extended_side"] = s.extended_side;
    if (!s.branches.empty()) j["branches"] = format_word(s.branches);
    if (!s.pair_branches.empty()) {
        json pb = json::array();
        for (auto [a, b] : s.pair_branches) pb.push_back(format_word({a, b}));
        j["pair_branches"] = pb;
    }
    if (s.divergence) j["divergence"] = format_word({s.divergence->first, s.divergence->second});
    if (!s.extensions.empty()) {
        json ex = json::array();
        for (auto [side, e] : s.extensions) ex.push_back({side, dir_str(e)});
        j["extensions"] = ex;
    }
    return j;
}
TraceStep step_of(const json& j) {
    TraceStep s;
    s.label = j.at("label");
    s.rho1 = parse_word(j.at("rho1").get<std::string>());
    s.rho2 = parse_word(j.at("rho2").get<std::string>());
    s.power = j.at("power");
    s.extended_side = j.value("extended_side", -1);
    if (j.contains("branches")) s.branches = parse_word(j.at("branches").get<std::string>());
    if (j.contains("pair_branches"))
        for (const auto& p : j.at("pair_branches")) {
            Path w = parse_word(p.get<std::string>());
            s.pair_branches.emplace_back(w.at(0), w.at(1));
        }
    if (j.contains("divergence")) {
        Path w = parse_word(j.at("divergence").get<std::string>());
        s.divergence = std::make_pair(w.at(0), w.at(1));
    }
    if (j.contains("extensions"))
        for (const auto& e : j.at("extensions")) s.extensions.emplace_back(e.at(0).get<int>(), dir_of(e.at(1)));
    return s;
}

json cert_json(const PnpCertificate& c) {
    json j{{"verdict", to_string(c.verdict)},
           {"power_bound", c.power_bound},
           {"length_bound", c.length_bound},
           {"nodes", c.nodes},
           {"reason", c.reason}};
    j["records"] = json::array();
    for (const auto& r : c.records) j["records"].push_back(record_json(r));
    j["traces"] = json::array();
    for (const auto& t : c.traces) {
        json tj{{"turn", turn_str(t.turn)}, {"d1", dir_str(t.d1)}, {"d2", dir_str(t.d2)}, {"truncated", t.truncated}};
        tj["steps"] = json::array();
        for (const auto& s : t.steps) tj["steps"].push_back(step_json(s));
        j["traces"].push_back(tj);
    }
    return j;
}
PnpCertificate cert_of(const json& j) {
    PnpCertificate c;
    std::string v = j.at("verdict");
    c.verdict = v == "pnp_free" ? PnpVerdict::PnpFree : v == "pnps_found" ? PnpVerdict::PnpsFound : PnpVerdict::Inconclusive;
    c.power_bound = j.at("power_bound");
    c.length_bound = j.at("length_bound");
    c.nodes = j.at("nodes");
    c.reason = j.at("reason");
    for (const auto& r : j.at("records")) c.records.push_back(record_of(r));
    for (const auto& tj : j.at("traces")) {
        TurnTrace t;
        t.turn = turn_of(tj.at("turn"));
        t.d1 = dir_of(tj.at("d1"));
        t.d2 = dir_of(tj.at("d2"));
        t.truncated = tj.at("truncated");
        for (const auto& s : tj.at("steps")) t.steps.push_back(step_of(s));
        c.traces.push_back(std::move(t));
    }
    return c;
}

json index_json(const IndexList& l) {
    json entries = json::array();
    for (int t : l.twice) entries.push_back(format_half(t));
    return {{"entries", entries}, {"twice", l.twice}, {"sum", format_half(l.twice_sum())}, {"text", l.format()}};
}
IndexList index_of(const json& j) {
    IndexList l;
    l.twice = j.at("twice").get<std::vector<int>>();
    return l;
}

}  // namespace

json to_json(const FicReport& r) {
    json j;
    j["schema"] = r.schema;
    j["source"] = r.source;
    j["hash"] = r.hash;
    j["rank"] = r.rank;
    j["images"] = json::array();
    for (const Path& w : r.images) j["images"].push_back(format_word(w));
    j["train_track"] = r.train_track;
    j["train_track_reason"] = r.train_track_reason;
    j["transition_matrix"] = r.transition_matrix;
    j["primitive"] = r.primitive;
    j["primitive_exponent"] = r.primitive_exponent;
    j["lambda"] = r.lambda;
    json dm = json::object();
    for (Dir d = 0; d < static_cast<Dir>(r.direction_map.size()); ++d) dm[dir_str(d)] = dir_str(r.direction_map[d]);
    j["direction_map"] = dm;
    json per = json::array();
    for (const auto& p : r.periodic) per.push_back({dir_str(p.dir), p.period});
    j["periodic_directions"] = per;
    j["direction_period"] = r.direction_period;
    json gj = json::array();
    for (const auto& gt : r.gates) gj.push_back(format_word(gt));
    j["gates"] = gj;
    json il = json::array(), tk = json::array();
    for (const Turn& t : r.illegal_turns) il.push_back(turn_str(t));
    for (const Turn& t : r.taken_turns) tk.push_back(turn_str(t));
    j["illegal_turns"] = il;
    j["taken_turns"] = tk;
    j["vertices"] = json::array();
    for (const auto& v : r.vertices)
        j["vertices"].push_back({{"id", v.id},
                                 {"directions", format_word(v.directions)},
                                 {"gates", v.gates},
                                 {"periodic", v.periodic},
                                 {"lwg_connected", v.lwg_connected}});
    j["pnp"] = r.pnp ? cert_json(*r.pnp) : json(nullptr);
    j["verdict"] = r.verdict;
    j["reasons"] = r.reasons;
    j["index_list"] = r.index_list ? index_json(*r.index_list) : json(nullptr);
    j["index_list_general"] = r.index_list_general ? index_json(*r.index_list_general) : json(nullptr);
    j["inequality"] = r.inequality;
    return j;
}

FicReport report_from_json(const json& j) {
    FicReport r;
    r.schema = j.at("schema");
    if (r.schema != 1) throw MalformedMap("unsupported report schema");
    r.source = j.at("source");
    r.hash = j.at("hash");
    r.rank = j.at("rank");
    for (const auto& w : j.at("images")) r.images.push_back(parse_word(w.get<std::string>()));
    r.train_track = j.at("train_track");
    r.train_track_reason = j.at("train_track_reason");
    r.transition_matrix = j.at("transition_matrix").get<std::vector<std::vector<std::int64_t>>>();
    r.primitive = j.at("primitive");
    r.primitive_exponent = j.at("primitive_exponent");
    r.lambda = j.at("lambda");
    const json& dm = j.at("direction_map");
    r.direction_map.resize(dm.size());
    for (auto it = dm.begin(); it != dm.end(); ++it) r.direction_map.at(dir_of(it.key())) = dir_of(it.value());
    for (const auto& p : j.at("periodic_directions")) r.periodic.push_back({dir_of(p.at(0)), p.at(1).get<int>()});
    r.direction_period = j.at("direction_period");
    for (const auto& gt : j.at("gates")) r.gates.push_back(parse_word(gt.get<std::string>()));
    for (const auto& t : j.at("illegal_turns")) r.illegal_turns.push_back(turn_of(t));
    for (const auto& t : j.at("taken_turns")) r.taken_turns.push_back(turn_of(t));
    for (const auto& vj : j.at("vertices")) {
        VertexReport v;
        v.id = vj.at("id");
        v.directions = parse_word(vj.at("directions").get<std::string>());
        v.gates = vj.at("gates");
        v.periodic = vj.at("periodic");
        v.lwg_connected = vj.at("lwg_connected");
        r.vertices.push_back(std::move(v));
    }
    if (!j.at("pnp").is_null()) r.pnp = cert_of(j.at("pnp"));
    r.verdict = j.at("verdict");
    r.reasons = j.at("reasons").get<std::vector<std::string>>();
    if (!j.at("index_list").is_null()) r.index_list = index_of(j.at("index_list"));
    if (!j.at("index_list_general").is_null()) r.index_list_general = index_of(j.at("index_list_general"));
    r.inequality = j.at("inequality");
    return r;
}

std::string emit_dot(const WhiteheadGraph& w, const std::string& name) {
    std::vector<std::string> nodes;
    for (Dir d : w.nodes) nodes.push_back(dir_str(d));
    std::sort(nodes.begin(), nodes.end());
    std::vector<std::pair<std::string, std::string>> edges;
    for (const Turn& t : w.edges) {
        std::string a = dir_str(t.a), b = dir_str(t.b);
        if (b < a) std::swap(a, b);
        edges.emplace_back(a, b);
    }
    std::sort(edges.begin(), edges.end());
    std::ostringstream out;
    out << "graph \"" << name << "\" {\n";
    for (const auto& n : nodes) out << "  \"" << n << "\";\n";
    for (const auto& [a, b] : edges) out << "  \"" << a << "\" -- \"" << b << "\";\n";
    out << "}\n";
    return out.str();
}

const std::vector<CorpusEntry>& corpus_entries() {
    static const std::vector<CorpusEntry> entries{
        {"rose.tt", "rose example", "(-1)"},
        {"index_mh_m1.tt", "index (-1/2, -1)", "(-1/2, -1)"},
        {"index_mh_mh_mh.tt", "index (-1/2, -1/2, -1/2)", "(-1/2, -1/2, -1/2)"},
        {"index_mh_mh.tt", "index (-1/2, -1/2)", "(-1/2, -1/2)"},
        {"index_mh.tt", "index (-1/2)", "(-1/2)"},
    };
    return entries;
}

std::string default_corpus_dir() {
#ifdef TTLAB_CORPUS_DIR
    return TTLAB_CORPUS_DIR;
#else
    return "corpus";
#endif
}

namespace {

CorpusRow analyze_entry(const std::string& dir, const CorpusEntry& e, bool oracle, const AnalysisOptions& opt) {
    auto t0 = std::chrono::steady_clock::now();
    CorpusRow row;
    row.entry = e;
    std::string path = (std::filesystem::path(dir) / e.file).string();
    GraphMap g = build_map(read_map_file(path));
    row.report = fic_verdict(g, opt, e.file);
    row.match = row.report.verdict == "fully_irreducible" && row.report.index_list &&
                row.report.index_list->format() == e.expected;
    row.taken_turns_check = row.pnp_check = "skipped";
    if (oracle && row.report.train_track) {
        int kmax = 2 * direction_period(g);
        try {
            row.taken_turns_check = brute_force_taken_turns(g, kmax) == row.report.taken_turns ? "agree" : "disagree";
        } catch (const GrowthCapError&) {
            row.taken_turns_check = "inconclusive";
        }
        if (row.report.pnp && row.report.pnp->verdict != PnpVerdict::Inconclusive) {
            OracleResult o = bounded_pnp_oracle(g, row.report.pnp->length_bound, row.report.pnp->power_bound);
            if (!o.conclusive)
                row.pnp_check = "inconclusive";
            else
                row.pnp_check = o.records == row.report.pnp->records ? "agree" : "disagree";
        }
    }
    row.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    return row;
}

}  // namespace

CorpusSummary run_corpus(const std::string& dir, bool oracle, const AnalysisOptions& opt) {
    std::vector<std::future<CorpusRow>> jobs;
    for (const auto& e : corpus_entries())
        jobs.push_back(std::async(std::launch::async, analyze_entry, dir, e, oracle, opt));
    CorpusSummary s;
    s.all_match = true;
    for (auto& j : jobs) {
        CorpusRow row = j.get();
        s.all_match = s.all_match && row.match;
        s.oracle_agree = s.oracle_agree && row.taken_turns_check != "disagree" && row.pnp_check != "disagree";
        s.any_inconclusive = s.any_inconclusive || row.report.inconclusive();
        s.rows.push_back(std::move(row));
    }
    return s;
}

std::string format_corpus_table(const CorpusSummary& s) {
    std::ostringstream out;
    char buf[512];
    std::snprintf(buf, sizeof buf, "%-22s %-18s %-28s %-24s %-6s %-13s %s\n", "file", "verdict", "index list",
                  "expected", "match", "turn oracle", "pnp oracle");
    out << buf;
    for (const auto& r : s.rows) {
        std::string il = r.report.index_list ? r.report.index_list->format()
                         : r.report.index_list_general ? r.report.index_list_general->format() + "*"
                                                       : "-";
        std::snprintf(buf, sizeof buf, "%-22s %-18s %-28s %-24s %-6s %-13s %s\n", r.entry.file.c_str(),
                      r.report.verdict.c_str(), il.c_str(), r.entry.expected.c_str(), r.match ? "yes" : "no",
                      r.taken_turns_check.c_str(), r.pnp_check.c_str());
        out << buf;
    }
    out << "(-3/2): no bundled map\n";
    out << "* index list from Nielsen classes (pNps present)\n";
    return out.str();
}

}  // namespace ttlab
