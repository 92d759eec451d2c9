#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace ttlab {

// Edge i has directions 2i (positive orientation) and 2i+1 (its inverse).
// A direction is the germ of that oriented edge at its initial vertex.
using Dir = int;
using Path = std::vector<Dir>;

inline Dir inv(Dir d) { return d ^ 1; }
inline int edge_of(Dir d) { return d >> 1; }
inline bool is_positive(Dir d) { return (d & 1) == 0; }
inline Dir positive_dir(int edge) { return edge << 1; }

constexpr int kMaxEdges = 26;

struct MalformedPath : std::runtime_error { using std::runtime_error::runtime_error; };
struct MalformedMap : std::runtime_error { using std::runtime_error::runtime_error; };
struct StructureError : std::runtime_error { using std::runtime_error::runtime_error; };
struct GrowthCapError : std::runtime_error { using std::runtime_error::runtime_error; };
struct PreconditionError : std::runtime_error { using std::runtime_error::runtime_error; };

// 'a' is edge 0, 'A' its inverse.
char letter(Dir d);
Dir dir_from_letter(char c);

// Compact form "cAb"; parse_word also accepts whitespace between letters.
std::string format_word(const Path& p);
Path parse_word(std::string_view s);

Path inverse_path(const Path& p);
// Free reduction without any graph context.
Path free_reduce(const Path& p);
bool is_reduced(const Path& p);

struct MarkedGraph {
    int n_edges = 0;
    int n_vertices = 0;
    int rank = 0;
    std::vector<int> vertex_of;  // indexed by direction

    int n_dirs() const { return 2 * n_edges; }
    int initial_vertex(Dir d) const { return vertex_of[d]; }
    int terminal_vertex(Dir d) const { return vertex_of[inv(d)]; }
    std::vector<Dir> directions_at(int v) const;
    bool composable(const Path& p) const;
    // Vertices of valence < 3, violating the marked-graph convention.
    std::vector<int> low_valence_vertices() const;
};

// Reduction rel endpoints; throws MalformedPath on a non-composable input.
Path reduce_path(const MarkedGraph& g, const Path& p);

// Finest vertex partition making all images composable and the map
// vertex-preserving.  images[i] is the image of edge i.
MarkedGraph infer_graph_structure(const std::vector<Path>& images, int declared_rank,
                                  bool strict = false);

// Same checks with a user-declared partition of the directions.
MarkedGraph graph_from_vertices(const std::vector<Path>& images,
                                const std::vector<std::vector<Dir>>& vertices,
                                int declared_rank, bool strict = false);

}  // namespace ttlab
