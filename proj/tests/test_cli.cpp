#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <sys/wait.h>

#include "corpus_maps.hpp"

using namespace ttlab;
using namespace ttlab::testing;
namespace fs = std::filesystem;

namespace {

std::string slurp(const fs::path& p) {
    std::ifstream f(p);
    std::stringstream ss;
    ss << f.rdbuf();
    return ss.str();
}

fs::path scratch_dir(const std::string& name) {
    fs::path d = fs::temp_directory_path() / ("ttlab_test_" + name);
    fs::remove_all(d);
    fs::create_directories(d);
    return d;
}

int run_cli(const std::string& args) {
    std::string cmd = std::string(TTLAB_BIN) + " " + args + " >/dev/null 2>&1";
    int status = std::system(cmd.c_str());
    return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

}  // namespace

TEST_CASE("parse_map") {
    MapSpec s = parse_map("# comment\nrank = 3\na -> c a b   # trailing\nb -> c a\nc -> a c a b\n");
    CHECK(s.rank == 3);
    CHECK(s.images.size() == 3);
    CHECK(format_word(s.images[2]) == "acab");
    CHECK_FALSE(s.vertices);

    MapSpec v = parse_map("rank = 2\nvertices = {a, b, A, B}\na -> a b\nb -> a\n");
    REQUIRE(v.vertices);
    CHECK(v.vertices->size() == 1);

    CHECK_THROWS_AS(parse_map("a -> b\nb -> a\n"), MalformedMap);
    CHECK_THROWS_AS(parse_map("rank = x\na -> a\n"), MalformedMap);
    CHECK_THROWS_AS(parse_map("rank = 1\nA -> a\n"), MalformedMap);
    CHECK_THROWS_AS(build_map(parse_map("rank = 2\na -> b\n")), MalformedMap);
    CHECK_THROWS_AS(parse_map("rank = 2\nb -> b\n"), MalformedMap);
    CHECK_THROWS_AS(parse_map("rank = 1\na -> a\na -> a\n"), MalformedMap);
    CHECK_THROWS_AS(parse_map("rank = 1\na -> a 7\n"), MalformedMap);
    CHECK_THROWS_AS(parse_map("rank = 1\nfoo = 2\na -> a\n"), MalformedMap);
}

TEST_CASE("print_map round trip") {
    for (const auto& f : corpus_files()) {
        MapSpec s = read_map_file(default_corpus_dir() + "/" + f);
        std::string text = print_map(s);
        CHECK(parse_map(text) == s);
        CHECK(print_map(parse_map(text)) == text);
        MapSpec with_vertices = spec_of(build_map(s), true);
        CHECK(parse_map(print_map(with_vertices)) == with_vertices);
        CHECK(build_map(with_vertices).graph().vertex_of == build_map(s).graph().vertex_of);
    }
}

TEST_CASE("corpus transcription checksums") {
    // canonical printed form of each map
    const std::map<std::string, std::string> pinned{
        {"rose.tt", "d0ebf4ea833743a5"},
        {"index_mh_m1.tt", "a597059ab0f6ae87"},
        {"index_mh_mh_mh.tt", "4f088ee501af7512"},
        {"index_mh_mh.tt", "99b2d91ba94a0504"},
        {"index_mh.tt", "70ed8464a4dd0d47"},
    };
    for (const auto& [f, hash] : pinned)
        CHECK_MESSAGE(fnv1a_hex(print_map(spec_of(corpus_map(f), false))) == hash, f);
    CHECK(fnv1a_hex("") == "cbf29ce484222325");
    CHECK(corpus_map("index_mh.tt").images()[2].size() == 220);
}

TEST_CASE("fic_verdict") {
    FicReport rose = fic_verdict(corpus_map("rose.tt"), {}, "rose.tt");
    CHECK(rose.verdict == "fully_irreducible");
    CHECK(rose.reasons.empty());
    REQUIRE(rose.index_list);
    CHECK(rose.index_list->format() == "(-1)");
    CHECK(rose.inequality == "strict");
    CHECK(rose.primitive_exponent == 2);
    CHECK(rose.vertices.size() == 1);
    CHECK(rose.vertices[0].lwg_connected);

    GraphMap g = corpus_map("rose.tt");
    FicReport id = fic_verdict(GraphMap::identity(g.graph()));
    CHECK(id.verdict == "not_certified");
    CHECK_FALSE(id.primitive);
    CHECK_FALSE(id.index_list);
    CHECK_FALSE(id.pnp);

    FicReport bad = fic_verdict(build_map(parse_map("rank = 2\na -> a b\nb -> A\n")));
    CHECK_FALSE(bad.train_track);
    CHECK(bad.verdict == "not_certified");
    CHECK_FALSE(bad.train_track_reason.empty());

    FicReport five = fic_verdict(corpus_map("index_mh_mh.tt"));
    CHECK(five.verdict == "not_certified");
    REQUIRE(five.pnp);
    CHECK(five.pnp->verdict == PnpVerdict::PnpsFound);
    CHECK_FALSE(five.index_list);
    REQUIRE(five.index_list_general);
    CHECK(five.index_list_general->format() == "(-1/2, -1/2, -1/2, -1/2)");
    CHECK(five.inequality == "boundary");
}

TEST_CASE("fic_verdict never certifies through an inconclusive search") {
    AnalysisOptions opt;
    opt.search.node_budget = 2;
    FicReport r = fic_verdict(corpus_map("index_mh_m1.tt"), opt);
    CHECK(r.inconclusive());
    CHECK(r.verdict == "not_certified");
    CHECK_FALSE(r.index_list);
    CHECK_FALSE(r.index_list_general);
}

TEST_CASE("report JSON round trip") {
    for (const auto& f : corpus_files()) {
        FicReport r = fic_verdict(corpus_map(f), {}, f);
        nlohmann::json j = to_json(r);
        CHECK(j["schema"] == 1);
        CHECK(j.contains("transition_matrix"));
        FicReport back = report_from_json(nlohmann::json::parse(j.dump()));
        CHECK(back == r);
        CHECK(to_json(back).dump() == j.dump());
    }
    nlohmann::json j = to_json(fic_verdict(corpus_map("rose.tt")));
    j["schema"] = 2;
    CHECK_THROWS(report_from_json(j));
}

TEST_CASE("emit_dot") {
    GraphMap g = corpus_map("rose.tt");
    std::string local = emit_dot(local_whitehead_graph(g, 0), "lw");
    CHECK(std::count(local.begin(), local.end(), ';') == 12);
    CHECK(local.find("\"A\";") != std::string::npos);
    CHECK(local == emit_dot(local_whitehead_graph(g, 0), "lw"));
    std::string stable = emit_dot(stable_whitehead_graph(g, 0), "sw");
    CHECK(stable ==
          "graph \"sw\" {\n  \"A\";\n  \"B\";\n  \"a\";\n  \"c\";\n"
          "  \"A\" -- \"a\";\n  \"A\" -- \"c\";\n  \"B\" -- \"a\";\n  \"B\" -- \"c\";\n}\n");
    CHECK(emit_dot(WhiteheadGraph{}, "empty") == "graph \"empty\" {\n}\n");
}

TEST_CASE("run_corpus") {
    CorpusSummary s = run_corpus(default_corpus_dir(), false);
    REQUIRE(s.rows.size() == 5);
    std::vector<std::string> files;
    for (const auto& r : s.rows) files.push_back(r.entry.file);
    CHECK(files == corpus_files());
    std::string table = format_corpus_table(s);
    CHECK(table == format_corpus_table(run_corpus(default_corpus_dir(), false)));
    CHECK(table.find("(-3/2)") != std::string::npos);
    for (const auto& r : s.rows)
        if (r.entry.file != "index_mh_mh.tt") CHECK_MESSAGE(r.match, r.entry.file);
}

TEST_CASE("run_corpus reports a mutated map") {
    fs::path dir = scratch_dir("mutated");
    for (const auto& f : corpus_files()) fs::copy_file(fs::path(default_corpus_dir()) / f, dir / f);
    std::ofstream(dir / "rose.tt") << "rank = 3\na -> c a b\nb -> c a c\nc -> a c a b\n";
    CorpusSummary s = run_corpus(dir.string(), false);
    CHECK_FALSE(s.all_match);
    CHECK_FALSE(s.rows[0].match);
    CHECK(s.rows[1].match);
}

TEST_CASE("command line") {
    std::string corpus = default_corpus_dir();
    CHECK(run_cli("check " + corpus + "/rose.tt") == 0);
    CHECK(run_cli("check " + corpus + "/index_mh_mh.tt") == 1);
    fs::path dir = scratch_dir("cli");
    std::ofstream(dir / "bad.tt") << "rank = 3\na -> c a b\nb -> c a\n";
    CHECK(run_cli("check " + (dir / "bad.tt").string()) == 2);
    CHECK(run_cli("check " + (dir / "missing.tt").string()) == 2);

    fs::path out = dir / "rose.json";
    CHECK(run_cli("report " + corpus + "/rose.tt --json " + out.string()) == 0);
    auto j = nlohmann::json::parse(slurp(out));
    CHECK(j["verdict"] == "fully_irreducible");
    CHECK(report_from_json(j).index_list->format() == "(-1)");

    CHECK(run_cli("whitehead " + corpus + "/rose.tt --dot " + (dir / "dot").string()) == 0);
    CHECK(fs::exists(dir / "dot" / "local_v0.dot"));
    CHECK(fs::exists(dir / "dot" / "stable_v0.dot"));
    CHECK(fs::exists(dir / "dot" / "ideal_0.dot"));

    CHECK(run_cli("pnp " + corpus + "/rose.tt --oracle") == 0);
    CHECK(run_cli("pnp " + corpus + "/index_mh_m1.tt --length-cap 1") == 3);
    CHECK(run_cli("check " + corpus + "/index_mh_m1.tt --power-cap 1 --length-cap 1") == 3);
    CHECK(run_cli("corpus") == 1);
    CHECK(run_cli("frobnicate") != 0);
}
