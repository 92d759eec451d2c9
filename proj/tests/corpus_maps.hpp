#pragma once

#include <string>
#include <vector>

#include "ttlab/io.hpp"
#include "ttlab/report.hpp"

namespace ttlab::testing {

inline GraphMap corpus_map(const std::string& file) {
    return build_map(read_map_file(default_corpus_dir() + "/" + file));
}

inline std::vector<std::string> corpus_files() {
    std::vector<std::string> out;
    for (const auto& e : corpus_entries()) out.push_back(e.file);
    return out;
}

// Plain string substitution on letters; uppercase images are reversed and
// case-swapped.  Independent of Path and GraphMap.
inline std::string substitute(const std::vector<std::string>& images, const std::string& w) {
    std::string out;
    for (char c : w) {
        if (c >= 'a' && c <= 'z') {
            out += images[c - 'a'];
        } else {
            const std::string& s = images[c - 'A'];
            for (auto it = s.rbegin(); it != s.rend(); ++it)
                out += static_cast<char>(*it >= 'a' ? *it - 32 : *it + 32);
        }
    }
    return out;
}

inline std::string substitute(const std::vector<std::string>& images, std::string w, int k) {
    for (int i = 0; i < k; ++i) w = substitute(images, w);
    return w;
}

inline std::vector<std::string> image_strings(const GraphMap& g) {
    std::vector<std::string> out;
    for (const Path& w : g.images()) out.push_back(format_word(w));
    return out;
}

}  // namespace ttlab::testing
