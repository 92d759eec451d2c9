#include "ttlab/io.hpp"

#include <cctype>
#include <cstdio>
#include <fstream>
#include <sstream>

namespace ttlab {

namespace {

std::string trim(std::string_view s) {
    std::size_t b = 0, e = s.size();
    while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
    while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
    return std::string(s.substr(b, e - b));
}

std::vector<std::vector<Dir>> parse_vertices(const std::string& body, int line_no) {
    std::string s = trim(body);
    if (s.size() < 2 || s.front() != '{' || s.back() != '}')
        throw MalformedMap("line " + std::to_string(line_no) + ": vertices must be enclosed in braces");
    std::vector<std::vector<Dir>> out(1);
    for (char c : s.substr(1, s.size() - 2)) {
        if (c == '|')
            out.emplace_back();
        else if (c == ',' || std::isspace(static_cast<unsigned char>(c)))
            continue;
        else if (std::isalpha(static_cast<unsigned char>(c)))
            out.back().push_back(dir_from_letter(c));
        else
            throw MalformedMap("line " + std::to_string(line_no) + ": bad character in vertices");
    }
    return out;
}

}  // namespace

MapSpec parse_map(std::string_view text) {
    MapSpec spec;
    bool have_rank = false;
    std::vector<std::optional<Path>> images;
    std::istringstream in{std::string(text)};
    std::string raw;
    int line_no = 0;
    while (std::getline(in, raw)) {
        ++line_no;
        std::string line = trim(raw.substr(0, raw.find('#')));
        if (line.empty()) continue;
        auto where = [&] { return "line " + std::to_string(line_no) + ": "; };
        if (auto arrow = line.find("->"); arrow != std::string::npos) {
            std::string lhs = trim(line.substr(0, arrow));
            if (lhs.size() != 1 || !std::islower(static_cast<unsigned char>(lhs[0])))
                throw MalformedMap(where() + "left side must be one lowercase edge letter");
            int e = lhs[0] - 'a';
            if (static_cast<int>(images.size()) <= e) images.resize(e + 1);
            if (images[e]) throw MalformedMap(where() + "edge defined twice");
            try {
                images[e] = parse_word(line.substr(arrow + 2));
            } catch (const MalformedPath& err) {
                throw MalformedMap(where() + err.what());
            }
            continue;
        }
        auto eq = line.find('=');
        if (eq == std::string::npos) throw MalformedMap(where() + "unrecognized line");
        std::string key = trim(line.substr(0, eq)), value = trim(line.substr(eq + 1));
        if (key == "rank") {
            try {
                std::size_t used = 0;
                spec.rank = std::stoi(value, &used);
                if (used != value.size()) throw std::invalid_argument("rank");
            } catch (const std::exception&) {
                throw MalformedMap(where() + "rank must be an integer");
            }
            if (spec.rank < 1) throw MalformedMap(where() + "rank must be positive");
            have_rank = true;
        } else if (key == "vertices") {
            try {
                spec.vertices = parse_vertices(value, line_no);
            } catch (const MalformedPath& err) {
                throw MalformedMap(where() + err.what());
            }
        } else {
            throw MalformedMap(where() + "unknown key '" + key + "'");
        }
    }
    if (!have_rank) throw MalformedMap("missing rank line");
    if (images.empty()) throw MalformedMap("no edge images");
    for (std::size_t e = 0; e < images.size(); ++e) {
        if (!images[e]) throw MalformedMap(std::string("missing image for edge ") + char('a' + e));
        spec.images.push_back(*images[e]);
    }
    return spec;
}

std::string print_map(const MapSpec& spec) {
    std::string out = "rank = " + std::to_string(spec.rank) + "\n";
    if (spec.vertices) {
        out += "vertices = {";
        for (std::size_t v = 0; v < spec.vertices->size(); ++v) {
            out += v ? " | " : "";
            const auto& cls = (*spec.vertices)[v];
            for (std::size_t i = 0; i < cls.size(); ++i) {
                if (i) out += ", ";
                out += letter(cls[i]);
            }
        }
        out += "}\n";
    }
    for (std::size_t e = 0; e < spec.images.size(); ++e) {
        out += static_cast<char>('a' + e);
        out += " ->";
        for (Dir d : spec.images[e]) {
            out += ' ';
            out += letter(d);
        }
        out += '\n';
    }
    return out;
}

GraphMap build_map(const MapSpec& spec, bool strict) {
    if (spec.vertices) return GraphMap::from_images(spec.images, spec.rank, *spec.vertices, strict);
    return GraphMap::from_images(spec.images, spec.rank, strict);
}

MapSpec read_map_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw MalformedMap("cannot read " + path);
    std::stringstream ss;
    ss << in.rdbuf();
    return parse_map(ss.str());
}

MapSpec spec_of(const GraphMap& g, bool with_vertices) {
    MapSpec spec;
    spec.rank = g.rank();
    spec.images = g.images();
    if (with_vertices) {
        std::vector<std::vector<Dir>> v;
        for (int i = 0; i < g.graph().n_vertices; ++i) v.push_back(g.graph().directions_at(i));
        spec.vertices = v;
    }
    return spec;
}

std::string fnv1a_hex(std::string_view text) {
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (unsigned char c : text) {
        h ^= c;
        h *= 0x100000001b3ULL;
    }
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
    return buf;
}

}  // namespace ttlab
