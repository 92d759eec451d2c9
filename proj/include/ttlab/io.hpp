#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "ttlab/mapcore.hpp"

namespace ttlab {

// One map per file:
//   rank = 3
//   vertices = {a, B, c | A, b, C}     (optional)
//   a -> c a b
// '#' starts a comment.
struct MapSpec {
    int rank = 0;
    std::optional<std::vector<std::vector<Dir>>> vertices;
    std::vector<Path> images;
    bool operator==(const MapSpec&) const = default;
};

MapSpec parse_map(std::string_view text);  // throws MalformedMap
std::string print_map(const MapSpec& spec);
GraphMap build_map(const MapSpec& spec, bool strict = false);
MapSpec read_map_file(const std::string& path);
MapSpec spec_of(const GraphMap& g, bool with_vertices);

std::string fnv1a_hex(std::string_view text);

}  // namespace ttlab
