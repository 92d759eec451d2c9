#include <algorithm>
#include <limits>
#include <map>
#include <set>
#include <unordered_map>

#include "ttlab/nielsen.hpp"

namespace ttlab {

namespace {

// Polynomial hashing mod 2^61 - 1.
constexpr std::uint64_t kMod = (1ULL << 61) - 1;
constexpr std::uint64_t kBase = 0x1d8e4e27c47d124fULL % kMod;

std::uint64_t mulmod(std::uint64_t a, std::uint64_t b) {
    unsigned __int128 p = static_cast<unsigned __int128>(a) * b;
    std::uint64_t r = static_cast<std::uint64_t>(p & kMod) + static_cast<std::uint64_t>(p >> 61);
    return r >= kMod ? r - kMod : r;
}
std::uint64_t addmod(std::uint64_t a, std::uint64_t b) {
    std::uint64_t r = a + b;
    return r >= kMod ? r - kMod : r;
}
std::uint64_t submod(std::uint64_t a, std::uint64_t b) { return a >= b ? a - b : a + kMod - b; }
std::uint64_t powmod(std::uint64_t b, std::uint64_t e) {
    std::uint64_t r = 1;
    while (e) {
        if (e & 1) r = mulmod(r, b);
        b = mulmod(b, b);
        e >>= 1;
    }
    return r;
}

struct Hash {
    std::uint64_t h = 0;
    std::uint64_t pw = 1;  // kBase^length
};
Hash combine(Hash a, Hash b) { return {addmod(mulmod(a.h, b.pw), b.h), mulmod(a.pw, b.pw)}; }

class WordHashes {
public:
    WordHashes(const GraphMap& g, LengthTable& len) : g_(g), len_(len) {}

    Hash full(Dir x, int j) {
        while (static_cast<int>(rows_.size()) <= j) {
            int n = g_.n_dirs();
            std::vector<Hash> row(n);
            if (rows_.empty()) {
                for (Dir d = 0; d < n; ++d) row[d] = {static_cast<std::uint64_t>(d + 1), kBase};
            } else {
                for (Dir d = 0; d < n; ++d) {
                    Hash acc;
                    for (Dir c : g_.image(d)) acc = combine(acc, rows_.back()[c]);
                    row[d] = acc;
                }
            }
            rows_.push_back(std::move(row));
        }
        return rows_[j][x];
    }

    // hash of the first n letters of g^j(x)
    Hash prefix(Dir x, int j, std::uint64_t n) {
        Hash acc;
        while (n > 0) {
            if (j == 0) return combine(acc, full(x, 0));
            Dir next = -1;
            for (Dir c : g_.image(x)) {
                std::uint64_t l = len_(c, j - 1);
                if (l <= n) {
                    acc = combine(acc, full(c, j - 1));
                    n -= l;
                    if (n == 0) break;
                } else {
                    next = c;
                    break;
                }
            }
            if (next < 0) break;
            x = next;
            --j;
        }
        return acc;
    }

private:
    const GraphMap& g_;
    LengthTable& len_;
    std::vector<std::vector<Hash>> rows_;
};

struct Half {
    int gate;
    std::uint64_t glen;
    std::uint64_t ghash;
    Path sigma;
    PeriodicPoint end;
};

std::uint64_t fingerprint(int gate, std::uint64_t glen, std::uint64_t ghash) {
    std::uint64_t h = ghash ^ (glen * 0x9e3779b97f4a7c15ULL);
    h ^= static_cast<std::uint64_t>(gate + 1) * 0xc2b2ae3d27d4eb4fULL;
    return h ^ (h >> 29);
}

}  // namespace

OracleResult bounded_pnp_oracle(const GraphMap& g, int length_cap, int power_cap, const OracleOptions& opt) {
    OracleResult res;
    GateStructure gs = gates(g);
    std::vector<int> gate_size(gs.gates.size());
    for (std::size_t i = 0; i < gs.gates.size(); ++i) gate_size[i] = static_cast<int>(gs.gates[i].size());
    PointCalculus pc(g);
    LengthTable& len = pc.lengths();
    WordHashes wh(g, len);
    const std::uint64_t kSat = std::numeric_limits<std::uint64_t>::max() / 4;
    std::set<NielsenPathRecord> found;
    const int n = g.n_dirs();

    for (int k = 1; k <= power_cap; ++k) {
        for (Dir x = 0; x < n; ++x)
            if (len(x, k) >= kSat) {
                res.conclusive = false;
                res.reason = "word lengths overflow at power " + std::to_string(k);
            }
        if (!res.conclusive) break;

        // occurrence counts of each target direction
        std::uint64_t occ_total = 0;
        std::vector<std::vector<std::vector<std::uint64_t>>> counts(n);
        for (Dir x = 0; x < n; ++x) {
            auto& cnt = counts[x];
            cnt.assign(k + 1, std::vector<std::uint64_t>(n, 0));
            cnt[0][x] = 1;
            for (int j = 1; j <= k; ++j)
                for (Dir c = 0; c < n; ++c)
                    for (Dir ch : g.image(c)) cnt[j][c] = sat_add(cnt[j][c], cnt[j - 1][ch]);
            occ_total = sat_add(occ_total, cnt[k][x]);
        }
        if (occ_total > opt.occurrence_budget) {
            res.conclusive = false;
            res.reason = "fixed point budget exceeded at power " + std::to_string(k);
            break;
        }

        auto for_each_occurrence = [&](Dir x, auto&& fn) {
            const auto& cnt = counts[x];
            auto rec = [&](auto&& self, Dir c, int j, std::uint64_t base) -> void {
                if (cnt[j][c] == 0) return;
                if (j == 0) {
                    fn(base);
                    return;
                }
                for (Dir ch : g.image(c)) {
                    self(self, ch, j - 1, base);
                    base += len(ch, j - 1);
                }
            };
            rec(rec, x, k, 0);
        };

        // Walks the ray from the fixed point at letter q of g^k(x); calls
        // emit(t, gate, glen, ghash, ray) for every half with t full letters.
        auto walk = [&](Dir x, std::uint64_t q, auto&& emit) {
            const std::uint64_t lx = len(x, k);
            const std::uint64_t slen = lx - q - 1;
            Hash pre = wh.prefix(x, k, q + 1);
            std::uint64_t hs = submod(wh.full(x, k).h, mulmod(pre.h, powmod(kBase, slen)));
            Path ray;
            Path src{x};
            Expander ex(g, src, k, q + 1, len);
            auto ray_letter = [&](std::size_t i) {
                while (ray.size() <= i) {
                    if (ray.size() < slen) {
                        Dir d;
                        ex.next(d);
                        ray.push_back(d);
                    } else {
                        std::uint64_t p = ray.size() - slen;
                        std::size_t m = 0;
                        while (len(ray[m], k) <= p) p -= len(ray[m++], k);
                        ray.push_back(pc.letter_at(ray[m], k, p));
                    }
                }
                return ray[i];
            };
            std::uint64_t hw = 0;  // hash of ray[0, t)
            Hash hg;               // hash of g^k(ray[0, t))
            std::uint64_t end = slen;
            for (int t = 0; t < length_cap; ++t) {
                if (t > 0) {
                    Dir d = ray_letter(t - 1);
                    hw = addmod(mulmod(hw, kBase), static_cast<std::uint64_t>(d + 1));
                    hg = combine(hg, wh.full(d, k));
                    end = sat_add(end, len(d, k));
                }
                Dir s0 = t > 0 ? inv(ray[t - 1]) : inv(x);
                int gate = gs.gate_of[s0];
                if (gate_size[gate] < 2) continue;
                std::uint64_t htot = addmod(mulmod(hs, hg.pw), hg.h);
                std::uint64_t glen = end - t;
                std::uint64_t gh = submod(htot, mulmod(hw, powmod(kBase, glen)));
                emit(t, gate, glen, gh, ray);
            }
        };

        std::vector<std::uint64_t> prints;
        for (Dir x = 0; x < n; ++x) {
            std::uint64_t lx = len(x, k);
            for_each_occurrence(x, [&](std::uint64_t q) {
                if (q + 1 >= lx) return;
                walk(x, q, [&](int, int gate, std::uint64_t glen, std::uint64_t gh, const Path&) {
                    prints.push_back(fingerprint(gate, glen, gh));
                });
            });
        }
        std::sort(prints.begin(), prints.end());
        std::vector<std::uint64_t> dup;
        for (std::size_t i = 1; i < prints.size(); ++i)
            if (prints[i] == prints[i - 1] && (dup.empty() || dup.back() != prints[i])) dup.push_back(prints[i]);
        prints.clear();
        prints.shrink_to_fit();

        std::map<std::tuple<int, std::uint64_t, std::uint64_t>, std::vector<Half>> groups;
        if (!dup.empty()) {
            for (Dir x = 0; x < n; ++x) {
                std::uint64_t lx = len(x, k);
                for_each_occurrence(x, [&](std::uint64_t q) {
                    if (q + 1 >= lx) return;
                    walk(x, q, [&](int t, int gate, std::uint64_t glen, std::uint64_t gh, const Path& ray) {
                        if (!std::binary_search(dup.begin(), dup.end(), fingerprint(gate, glen, gh))) return;
                        Half h;
                        h.gate = gate;
                        h.glen = glen;
                        h.ghash = gh;
                        h.sigma = inverse_path(Path(ray.begin(), ray.begin() + t));
                        h.sigma.push_back(inv(x));
                        if (q == 0) {
                            h.end.vertex = g.graph().initial_vertex(x);
                        } else {
                            auto pt = pc.canonical(x, k, q);
                            if (!pt) return;
                            h.end = *pt;
                        }
                        groups[{gate, glen, gh}].push_back(std::move(h));
                    });
                });
            }
        }
        for (auto& [key, halves] : groups) {
            for (std::size_t a = 0; a < halves.size(); ++a)
                for (std::size_t b = a + 1; b < halves.size(); ++b) {
                    const Half& h1 = halves[a];
                    const Half& h2 = halves[b];
                    if (h1.sigma.front() == h2.sigma.front()) continue;
                    NielsenPathRecord r;
                    r.rho1 = h1.sigma;
                    r.rho2 = h2.sigma;
                    r.end1 = h1.end;
                    r.end2 = h2.end;
                    r.period = k;
                    try {
                        if (!verify_record(g, r, opt.verify_cap)) continue;
                        auto m = minimal_record(g, r, opt.verify_cap);
                        if (m) found.insert(*m);
                    } catch (const GrowthCapError&) {
                        res.conclusive = false;
                        res.reason = "verification exceeded cap at power " + std::to_string(k);
                    }
                }
        }
        if (!res.conclusive) break;
        res.powers_done = k;
    }
    res.records.assign(found.begin(), found.end());
    return res;
}

}  // namespace ttlab
