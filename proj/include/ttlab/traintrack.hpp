#pragma once

#include <compare>
#include <string>
#include <vector>

#include "ttlab/mapcore.hpp"

namespace ttlab {

struct Turn {
    Dir a = 0;
    Dir b = 0;  // a <= b after normalization
    Turn() = default;
    Turn(Dir x, Dir y) : a(std::min(x, y)), b(std::max(x, y)) {}
    bool degenerate() const { return a == b; }
    auto operator<=>(const Turn&) const = default;
};

std::string format_turn(const Turn& t);  // "{a,B}"

struct PeriodicDirection {
    Dir dir;
    int period;
    auto operator<=>(const PeriodicDirection&) const = default;
};

// Directions on cycles of the (finite) function dmap, with minimal periods.
std::vector<PeriodicDirection> periodic_directions(const std::vector<Dir>& dmap);
// Longest number of steps before a direction enters its cycle.
int preperiod(const std::vector<Dir>& dmap);
// lcm of Dg-cycle lengths and vertex-cycle lengths.
int direction_period(const GraphMap& g);

// Dg^k(d), iterated on a direction map.
Dir iterate_dir(const std::vector<Dir>& dmap, Dir d, int k);

std::vector<Turn> illegal_turns(const GraphMap& g);

struct GateStructure {
    std::vector<int> gate_of;                // per direction
    std::vector<std::vector<Dir>> gates;     // sorted, ordered by first member
    std::vector<Turn> illegal;
    std::vector<PeriodicDirection> periodic;
    bool same_gate(Dir x, Dir y) const { return gate_of[x] == gate_of[y]; }
    bool illegal_turn(Dir x, Dir y) const { return x != y && same_gate(x, y); }
    bool legal_turn(Dir x, Dir y) const { return x != y && !same_gate(x, y); }
    int gates_at(const MarkedGraph& gr, int v) const;
};

GateStructure gates(const GraphMap& g);

struct TrainTrackCertificate {
    bool train_track = true;
    int edge = -1;      // offending edge
    int position = -1;  // index in its image of the second letter of the bad turn
    Turn turn;
    std::string reason;
};

TrainTrackCertificate is_train_track(const GraphMap& g);

// Streams every g^k(e), k <= kmax, and checks it is reduced.  Throws
// GrowthCapError when more than letter_budget letters would be scanned.
bool brute_force_local_injectivity(const GraphMap& g, int kmax,
                                   std::uint64_t letter_budget = 1'000'000'000ULL);

}  // namespace ttlab
