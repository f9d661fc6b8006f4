#pragma once

#include <string>

#include "ted/tree.hpp"

namespace ted {

// SplitMix64: deterministic across platforms, which the generators rely on
// (std:: distributions are not portable).
struct Rng {
    uint64_t state;
    explicit Rng(uint64_t seed) : state(seed) {}
    uint64_t next() {
        state += 0x9E3779B97f4A7C15ULL;
        uint64_t z = state;
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
        z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
        return z ^ (z >> 31);
    }
    uint32_t below(uint32_t n) { return n ? static_cast<uint32_t>(next() % n) : 0; }
};

enum class TreeShape { uniform, caterpillar, full_binary, path, star };

inline TreeShape shape_from_name(const std::string& s) {
    if (s == "uniform") return TreeShape::uniform;
    if (s == "caterpillar") return TreeShape::caterpillar;
    if (s == "full-binary" || s == "full_binary") return TreeShape::full_binary;
    if (s == "path") return TreeShape::path;
    if (s == "star") return TreeShape::star;
    throw InputError("unknown shape '" + s + "'");
}

inline const char* shape_name(TreeShape s) {
    switch (s) {
        case TreeShape::uniform: return "uniform";
        case TreeShape::caterpillar: return "caterpillar";
        case TreeShape::full_binary: return "full-binary";
        case TreeShape::path: return "path";
        case TreeShape::star: return "star";
    }
    return "?";
}

// Deterministic random plane tree with n nodes. Labels are drawn from
// single-letter alphabet a.. (alphabet size capped at 26).
inline UnrootedTree random_tree(int32_t n, TreeShape shape, uint64_t seed,
                                int32_t alphabet = 5) {
    if (n < 1) throw InputError("random_tree: n must be >= 1");
    if (alphabet < 1) alphabet = 1;
    if (alphabet > 26) alphabet = 26;
    Rng rng(seed * 0x51caf00dULL + 17 * static_cast<uint64_t>(shape));
    UnrootedTree t;
    t.node_count = n;
    t.rot.resize(n);
    auto lab = [&] {
        char c = static_cast<char>('a' + rng.below(static_cast<uint32_t>(alphabet)));
        return LabelTable::instance().user(std::string(1, c));
    };
    auto add_edge = [&](int32_t u, int32_t v) {
        int32_t e = t.edge_count();
        t.edges.push_back({u, v, lab()});
        // u: insert at a random rotation slot; v is always new (leaf append)
        size_t slot = t.rot[u].empty() ? 0 : rng.below(static_cast<uint32_t>(t.rot[u].size()) + 1);
        t.rot[u].insert(t.rot[u].begin() + static_cast<long>(slot), e);
        t.rot[v].push_back(e);
    };
    switch (shape) {
        case TreeShape::path:
            for (int32_t i = 1; i < n; ++i) add_edge(i - 1, i);
            break;
        case TreeShape::star:
            for (int32_t i = 1; i < n; ++i) add_edge(0, i);
            break;
        case TreeShape::caterpillar: {
            // spine of ~n/2 nodes, one pendant per spine node while nodes last
            int32_t spine = (n + 1) / 2;
            for (int32_t i = 1; i < spine; ++i) add_edge(i - 1, i);
            for (int32_t i = spine; i < n; ++i) add_edge(i - spine, i);
            break;
        }
        case TreeShape::full_binary:
            // heap shape: node i has children 2i+1, 2i+2
            for (int32_t i = 1; i < n; ++i) add_edge((i - 1) / 2, i);
            break;
        case TreeShape::uniform:
            for (int32_t i = 1; i < n; ++i) add_edge(static_cast<int32_t>(rng.below(static_cast<uint32_t>(i))), i);
            break;
    }
    return t;
}

// Random integer costs in [0, hi] over the single-letter alphabet.
inline CostModel random_cost_model(uint64_t seed, int32_t alphabet = 5, int32_t hi = 10) {
    Rng rng(seed ^ 0xc057c057c057ULL);
    CostModel cm = CostModel::unit();
    for (int32_t i = 0; i < alphabet; ++i) {
        Label a = LabelTable::instance().user(std::string(1, static_cast<char>('a' + i)));
        cm.set_del(a, Cost::units(rng.below(static_cast<uint32_t>(hi) + 1)));
        for (int32_t j = i; j < alphabet; ++j) {
            Label b = LabelTable::instance().user(std::string(1, static_cast<char>('a' + j)));
            // keep match(x,x)=0 half the time so identity stays cheap-ish
            int64_t c = (i == j && (rng.next() & 1)) ? 0 : rng.below(static_cast<uint32_t>(hi) + 1);
            cm.set_match(a, b, Cost::units(c));
        }
    }
    return cm;
}

}  // namespace ted
