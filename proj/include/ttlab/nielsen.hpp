#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "ttlab/traintrack.hpp"

namespace ttlab {

// A periodic point: a vertex, or a fixed point of g^power inside a positive
// edge, located at letter `position` of g^power(edge) (that letter is the
// edge itself).  Interior points are kept at their least power.
struct PeriodicPoint {
    enum class Kind { Vertex, Interior };
    Kind kind = Kind::Vertex;
    int vertex = -1;
    int edge = -1;
    int power = 0;
    std::uint64_t position = 0;
    auto operator<=>(const PeriodicPoint&) const = default;
};

std::string format_point(const PeriodicPoint& p);

// rho = inverse(rho1) rho2.  Both legs start at the illegal turn and end with
// the (possibly partial) edge containing their endpoint.
struct NielsenPathRecord {
    Path rho1;
    Path rho2;
    Turn base_turn;
    int period = 0;
    PeriodicPoint end1;
    PeriodicPoint end2;
    auto operator<=>(const NielsenPathRecord&) const = default;
};

enum class PnpVerdict { PnpFree, PnpsFound, Inconclusive };
std::string to_string(PnpVerdict v);

struct TraceStep {
    std::string label;  // A, B, C(i), C(ii) with primes, or bound-stop
    Path rho1;
    Path rho2;
    int power = 0;
    int extended_side = -1;                 // A: 0, 1, or 2 for both
    std::vector<Dir> branches;              // A with one side
    std::vector<std::pair<Dir, Dir>> pair_branches;  // A with both sides
    std::optional<std::pair<Dir, Dir>> divergence;   // B and C
    std::vector<std::pair<int, Dir>> extensions;     // C: (side, edge)
    bool operator==(const TraceStep&) const = default;
};

struct TurnTrace {
    Turn turn;
    Dir d1 = 0;  // orientation used for rho1 / rho2
    Dir d2 = 0;
    std::vector<TraceStep> steps;
    bool truncated = false;
    bool operator==(const TurnTrace&) const = default;
};

struct PnpCertificate {
    PnpVerdict verdict = PnpVerdict::Inconclusive;
    std::vector<NielsenPathRecord> records;
    int power_bound = 0;
    int length_bound = 0;
    std::uint64_t nodes = 0;
    std::vector<TurnTrace> traces;
    std::string reason;
    bool operator==(const PnpCertificate&) const = default;
};

struct SearchOptions {
    int power_bound = 0;   // 0: default_power_bound
    int length_bound = 0;  // 0: default_length_bound
    std::uint64_t node_budget = 2'000'000;
    std::size_t trace_limit = 20'000;  // steps kept per turn
    std::size_t verify_cap = 20'000'000;
};

// Least multiple of P that is at least max(2P, 2r - 2).
int default_power_bound(const GraphMap& g);
// ceil(2C / (lambda - 1)) with C the sum of image lengths.
int default_length_bound(const GraphMap& g);

PnpCertificate find_ipnps(const GraphMap& g, const SearchOptions& opt = {});

// Throws PreconditionError when the search is inconclusive.
bool is_pnp_free(const GraphMap& g, const SearchOptions& opt = {});

struct OracleOptions {
    std::uint64_t occurrence_budget = 2'000'000;  // fixed points examined per power
    std::size_t verify_cap = 20'000'000;
};

struct OracleResult {
    bool conclusive = true;
    int powers_done = 0;
    std::vector<NielsenPathRecord> records;
    std::string reason;
};

OracleResult bounded_pnp_oracle(const GraphMap& g, int length_cap, int power_cap,
                                const OracleOptions& opt = {});

// Literal check that g^period(rho) equals rho rel endpoints.  Throws
// GrowthCapError when a word would exceed cap letters.
bool verify_record(const GraphMap& g, const NielsenPathRecord& r,
                   std::size_t cap = 20'000'000);

// Shared helpers on symbolic periodic points.
class PointCalculus {
public:
    explicit PointCalculus(const GraphMap& g) : g_(&g), len_(g) {}
    // position of the point (edge, k, q) inside g^(m k)(edge)
    std::uint64_t expand(int edge, int k, std::uint64_t q, int m);
    // the point at letter q of g^p(x) (x any direction) at its least power
    std::optional<PeriodicPoint> canonical(Dir x, int p, std::uint64_t q);
    // position of point in g^p of the direction x (orientation aware)
    std::uint64_t position_in(const PeriodicPoint& pt, Dir x, int p);
    Dir letter_at(Dir x, int j, std::uint64_t pos);
    LengthTable& lengths() { return len_; }

private:
    // |g^k(g^j(x)[0, n))|
    std::uint64_t image_prefix_length(Dir x, int j, std::uint64_t n, int k);
    // index r in g^j(x) whose g^k block holds position q, and the offset
    std::pair<std::uint64_t, std::uint64_t> locate(Dir x, int j, int k, std::uint64_t q, Dir& at);
    const GraphMap* g_;
    LengthTable len_;
};

// Reduces a record found at some period to its least period, with canonical
// endpoints and legs ordered (smaller leg first).  Returns nullopt if no
// divisor of the period verifies (should not happen for verified input).
std::optional<NielsenPathRecord> minimal_record(const GraphMap& g, NielsenPathRecord r,
                                                std::size_t cap = 20'000'000);

struct NielsenClasses {
    std::vector<PeriodicPoint> points;
    std::vector<int> class_of;
    int n_classes = 0;
};

NielsenClasses nielsen_classes(const GraphMap& g, const std::vector<NielsenPathRecord>& records);

}  // namespace ttlab
