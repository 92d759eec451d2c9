#pragma once

#include <json.hpp>
#include <optional>
#include <string>
#include <vector>

#include "ttlab/io.hpp"
#include "ttlab/whitehead.hpp"

namespace ttlab {

struct AnalysisOptions {
    SearchOptions search;
    std::size_t growth_cap = kDefaultGrowthCap;
    bool keep_trace = true;
};

struct VertexReport {
    int id = 0;
    std::vector<Dir> directions;
    int gates = 0;
    int periodic = 0;
    bool lwg_connected = false;
    bool operator==(const VertexReport&) const = default;
};

struct FicReport {
    int schema = 1;
    std::string source;
    std::string hash;
    int rank = 0;
    std::vector<Path> images;
    bool train_track = false;
    std::string train_track_reason;
    std::vector<std::vector<std::int64_t>> transition_matrix;
    bool primitive = false;
    int primitive_exponent = 0;
    double lambda = 0;
    std::vector<Dir> direction_map;
    std::vector<PeriodicDirection> periodic;
    int direction_period = 0;
    std::vector<std::vector<Dir>> gates;
    std::vector<Turn> illegal_turns;
    std::vector<Turn> taken_turns;
    std::vector<VertexReport> vertices;
    std::optional<PnpCertificate> pnp;
    std::string verdict;  // fully_irreducible or not_certified
    std::vector<std::string> reasons;
    std::optional<IndexList> index_list;          // pNp-free case only
    std::optional<IndexList> index_list_general;  // Nielsen class formula
    std::string inequality;
    bool operator==(const FicReport&) const = default;

    bool inconclusive() const;
};

FicReport fic_verdict(const GraphMap& g, const AnalysisOptions& opt = {}, const std::string& source = "");

nlohmann::json to_json(const FicReport& r);
FicReport report_from_json(const nlohmann::json& j);

std::string emit_dot(const WhiteheadGraph& w, const std::string& name);

struct CorpusEntry {
    std::string file;
    std::string name;
    std::string expected;  // formatted index list
};
const std::vector<CorpusEntry>& corpus_entries();
std::string default_corpus_dir();

struct CorpusRow {
    CorpusEntry entry;
    FicReport report;
    bool match = false;
    std::string taken_turns_check;  // agree / disagree / inconclusive / skipped
    std::string pnp_check;
    double seconds = 0;
};

struct CorpusSummary {
    std::vector<CorpusRow> rows;
    bool all_match = false;
    bool oracle_agree = true;
    bool any_inconclusive = false;
};

CorpusSummary run_corpus(const std::string& dir, bool oracle, const AnalysisOptions& opt = {});
std::string format_corpus_table(const CorpusSummary& s);

}  // namespace ttlab
