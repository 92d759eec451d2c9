#pragma once

#include <string>
#include <vector>

#include "ttlab/nielsen.hpp"

namespace ttlab {

struct PnpNotVerified : PreconditionError {
    using PreconditionError::PreconditionError;
};

// Turns {inverse(x_i), x_{i+1}} taken by single edge images.
std::vector<Turn> seed_turns(const GraphMap& g);
// Seed turns closed under Dg.  Throws PreconditionError if g is not train track.
std::vector<Turn> taken_turns(const GraphMap& g);
// Turns literally present in some g^k(e), k <= kmax.
std::vector<Turn> brute_force_taken_turns(const GraphMap& g, int kmax,
                                          std::uint64_t letter_budget = 1'000'000'000ULL);

struct WhiteheadGraph {
    enum class Kind { Local, Stable, IdealComponent };
    Kind kind = Kind::Local;
    int vertex = -1;  // graph vertex; -1 for ideal components
    std::vector<Dir> nodes;
    std::vector<Turn> edges;

    std::vector<std::vector<Dir>> components() const;
    bool connected() const { return components().size() <= 1; }
};

WhiteheadGraph local_whitehead_graph(const GraphMap& g, int v, const std::vector<Turn>& taken);
WhiteheadGraph local_whitehead_graph(const GraphMap& g, int v);
WhiteheadGraph stable_whitehead_graph(const GraphMap& g, int v, const std::vector<Turn>& taken);
WhiteheadGraph stable_whitehead_graph(const GraphMap& g, int v);

// Requires a pnp_free certificate; throws PnpNotVerified otherwise.
std::vector<WhiteheadGraph> ideal_whitehead_graph(const GraphMap& g, const PnpCertificate& cert);

struct IndexList {
    std::vector<int> twice;  // each entry times two, largest first
    enum class Window { Strict, Boundary, Violated };

    int twice_sum() const;
    Window window(int rank) const;
    std::string format() const;  // "(-1/2, -1)"
    bool operator==(const IndexList&) const = default;
};

std::string format_half(int twice);
std::string to_string(IndexList::Window w);

IndexList index_list_pnp_free(const GraphMap& g, const PnpCertificate& cert);
// Needs a conclusive certificate (pnp_free or pnps_found).
IndexList index_list_general(const GraphMap& g, const PnpCertificate& cert);
IndexList index_list_from_records(const GraphMap& g, const std::vector<NielsenPathRecord>& records);

}  // namespace ttlab
