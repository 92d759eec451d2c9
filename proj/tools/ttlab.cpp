#include <CLI11.hpp>
#include <filesystem>
#include <fstream>
#include <iostream>

#include "ttlab/report.hpp"

using namespace ttlab;

namespace {

enum Exit { kPass = 0, kFail = 1, kMalformed = 2, kInconclusive = 3 };

struct Caps {
    std::size_t max_image_len = kDefaultGrowthCap;
    int power_cap = 0;
    int length_cap = 0;

    AnalysisOptions analysis() const {
        AnalysisOptions o;
        o.growth_cap = max_image_len;
        o.search.power_bound = power_cap;
        o.search.length_bound = length_cap;
        o.search.verify_cap = max_image_len * 20;
        return o;
    }
};

void add_caps(CLI::App* app, Caps& caps) {
    app->add_option("--max-image-len", caps.max_image_len, "letter cap for iterated images");
    app->add_option("--power-cap", caps.power_cap, "power bound for the Nielsen path search (0: default)");
    app->add_option("--length-cap", caps.length_cap, "length bound for the Nielsen path search (0: default)");
}

int verdict_code(const FicReport& r) {
    if (r.verdict == "fully_irreducible") return kPass;
    return r.inconclusive() ? kInconclusive : kFail;
}

void print_summary(const FicReport& r, std::ostream& out) {
    out << "map        " << r.source << " (" << r.hash << ")\n";
    out << "rank       " << r.rank << "\n";
    out << "train track " << (r.train_track ? "yes" : "no " + r.train_track_reason) << "\n";
    out << "primitive  " << (r.primitive ? "yes, exponent " + std::to_string(r.primitive_exponent) : "no") << "\n";
    if (r.primitive) out << "lambda     " << r.lambda << "\n";
    out << "illegal    ";
    for (const auto& t : r.illegal_turns) out << format_turn(t) << " ";
    out << "\n";
    for (const auto& v : r.vertices)
        out << "vertex " << v.id << "   " << format_word(v.directions) << ", " << v.gates << " gates, LW "
            << (v.lwg_connected ? "connected" : "disconnected") << "\n";
    if (r.pnp) {
        out << "pnp        " << to_string(r.pnp->verdict) << " (power " << r.pnp->power_bound << ", length "
            << r.pnp->length_bound << ", " << r.pnp->nodes << " nodes)";
        if (!r.pnp->reason.empty()) out << " " << r.pnp->reason;
        out << "\n";
    }
    out << "verdict    " << r.verdict << "\n";
    for (const auto& s : r.reasons) out << "  " << s << "\n";
    if (r.index_list) out << "index list " << r.index_list->format() << "\n";
    if (r.index_list_general) out << "index list " << r.index_list_general->format() << " (Nielsen classes)\n";
    out << "inequality " << r.inequality << "\n";
}

void print_record(const NielsenPathRecord& rec, std::ostream& out) {
    out << "  period " << rec.period << " turn " << format_turn(rec.base_turn) << " rho1=" << format_word(rec.rho1)
        << " rho2=" << format_word(rec.rho2) << " ends " << format_point(rec.end1) << " / "
        << format_point(rec.end2) << "\n";
}

void write_file(const std::filesystem::path& p, const std::string& text) {
    std::ofstream f(p);
    if (!f) throw std::runtime_error("cannot write " + p.string());
    f << text;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"train track analysis of free group automorphisms"};
    app.require_subcommand(1);
    Caps caps;
    std::string file, json_out, dot_dir, corpus_dir = default_corpus_dir();
    bool oracle = false;

    auto* check = app.add_subcommand("check", "full irreducibility verdict");
    check->add_option("FILE", file)->required();
    add_caps(check, caps);

    auto* report = app.add_subcommand("report", "write the JSON report");
    report->add_option("FILE", file)->required();
    report->add_option("--json", json_out, "output path")->required();
    add_caps(report, caps);

    auto* wh = app.add_subcommand("whitehead", "write Whitehead graphs as DOT");
    wh->add_option("FILE", file)->required();
    wh->add_option("--dot", dot_dir, "output directory")->required();
    add_caps(wh, caps);

    auto* pnp = app.add_subcommand("pnp", "search for periodic Nielsen paths");
    pnp->add_option("FILE", file)->required();
    pnp->add_flag("--oracle", oracle, "cross-check against the bounded oracle");
    add_caps(pnp, caps);

    auto* corpus = app.add_subcommand("corpus", "run the bundled corpus");
    corpus->add_flag("--oracle", oracle, "cross-check against brute-force oracles");
    corpus->add_option("--corpus", corpus_dir, "corpus directory");
    add_caps(corpus, caps);

    CLI11_PARSE(app, argc, argv);

    try {
        if (*corpus) {
            CorpusSummary s = run_corpus(corpus_dir, oracle, caps.analysis());
            std::cout << format_corpus_table(s);
            double total = 0;
            for (const auto& row : s.rows) total += row.seconds;
            std::cerr << "analysis time " << total << " s\n";
            if (s.all_match && s.oracle_agree) return kPass;
            return s.any_inconclusive ? kInconclusive : kFail;
        }

        GraphMap g = build_map(read_map_file(file));
        std::string source = std::filesystem::path(file).filename().string();

        if (*check || *report) {
            FicReport r = fic_verdict(g, caps.analysis(), source);
            print_summary(r, std::cout);
            if (*report) write_file(json_out, to_json(r).dump(2) + "\n");
            return verdict_code(r);
        }

        if (*wh) {
            std::filesystem::create_directories(dot_dir);
            auto taken = taken_turns(g);
            for (int v = 0; v < g.graph().n_vertices; ++v) {
                std::string lw = "local_v" + std::to_string(v), sw = "stable_v" + std::to_string(v);
                write_file(std::filesystem::path(dot_dir) / (lw + ".dot"),
                           emit_dot(local_whitehead_graph(g, v, taken), lw));
                write_file(std::filesystem::path(dot_dir) / (sw + ".dot"),
                           emit_dot(stable_whitehead_graph(g, v, taken), sw));
            }
            PnpCertificate c = find_ipnps(g, caps.analysis().search);
            if (c.verdict == PnpVerdict::PnpFree) {
                auto comps = ideal_whitehead_graph(g, c);
                for (std::size_t i = 0; i < comps.size(); ++i) {
                    std::string name = "ideal_" + std::to_string(i);
                    write_file(std::filesystem::path(dot_dir) / (name + ".dot"), emit_dot(comps[i], name));
                }
            } else {
                std::cerr << "ideal Whitehead graph skipped: " << to_string(c.verdict) << "\n";
            }
            return kPass;
        }

        if (*pnp) {
            PnpCertificate c = find_ipnps(g, caps.analysis().search);
            std::cout << to_string(c.verdict) << " (power " << c.power_bound << ", length " << c.length_bound
                      << ", " << c.nodes << " nodes)\n";
            if (!c.reason.empty()) std::cout << "  " << c.reason << "\n";
            for (const auto& rec : c.records) print_record(rec, std::cout);
            if (c.verdict == PnpVerdict::Inconclusive) return kInconclusive;
            if (oracle) {
                OracleResult o = bounded_pnp_oracle(g, c.length_bound, c.power_bound);
                if (!o.conclusive) {
                    std::cout << "oracle inconclusive: " << o.reason << "\n";
                    return kInconclusive;
                }
                bool agree = o.records == c.records;
                std::cout << "oracle " << (agree ? "agrees" : "disagrees") << " (" << o.records.size()
                          << " records)\n";
                if (!agree) {
                    for (const auto& rec : o.records) print_record(rec, std::cout);
                    return kFail;
                }
            }
            return kPass;
        }
    } catch (const MalformedMap& e) {
        std::cerr << "malformed map: " << e.what() << "\n";
        return kMalformed;
    } catch (const MalformedPath& e) {
        std::cerr << "malformed path: " << e.what() << "\n";
        return kMalformed;
    } catch (const StructureError& e) {
        std::cerr << "malformed map: " << e.what() << "\n";
        return kMalformed;
    } catch (const GrowthCapError& e) {
        std::cerr << "inconclusive: " << e.what() << "\n";
        return kInconclusive;
    } catch (const PreconditionError& e) {
        std::cerr << "precondition: " << e.what() << "\n";
        return kFail;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kMalformed;
    }
    return kPass;
}
