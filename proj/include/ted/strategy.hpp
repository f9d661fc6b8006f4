#pragma once

#include "ted/engine.hpp"

namespace ted {

// One uncontraction along the avoid-the-heavy-child strategy.
struct ChainStep {
    PrunedSubtree tree;
    Dir dir;                // side on which the new edge appeared
    int32_t full_node = -1;  // set when tree == T^v for a path node v
};

// The direction the avoid-the-heavy-child strategy picks for a pruned
// subtree: contract the main edge on the side that does not contain the
// heavy edge below the top of the root region.
inline Dir avoid_dir(const RootedTree& rt, PrunedSubtree f) {
    if (f.is_empty() || f.is_single()) return Dir::R;
    int32_t z = rt.lca(rt.dart_tail(f.s), rt.dart_head(f.t));
    int32_t hc = rt.heavy_child[z];
    if (hc < 0) return Dir::R;
    int32_t eh = rt.parent_edge[hc];
    if (dart_edge(f.t) == eh) return Dir::L;
    if (dart_edge(f.s) == eh) return Dir::R;
    if (!rt.edge_in(f, eh)) return Dir::R;
    PrunedSubtree right = rt.take_R(f);
    if (!right.is_empty() && rt.edge_in(right, eh)) return Dir::L;
    return Dir::R;
}

// Uncontraction chain for one heavy path of rt, bottom-up: starting from the
// path leaf (the empty tree) every step adds one edge, visiting T^v for every
// path node v, ending at T^{top}. The contraction order read backwards is
// exactly "avoid the heavy child": light subtrees are eaten edge-by-edge
// (preorder from the root side) before the heavy edge below them.
inline std::vector<ChainStep> avoid_heavy_chain(const RootedTree& rt, int32_t pid) {
    const std::vector<int32_t>& w = rt.paths[pid];
    std::vector<ChainStep> chain;
    int32_t k = static_cast<int32_t>(w.size());
    if (rt.E == 0) return chain;
    int32_t E2 = 2 * rt.E;
    int32_t ps = -1, pt = -1;  // current interval endpoints (tour positions)

    auto target = [&](int32_t v) -> std::pair<int32_t, int32_t> {
        if (v == rt.root) return {0, E2 - 1};
        int32_t d = rt.down_dart(rt.parent_edge[v]);
        return {(rt.pos[d] + 1) % E2, (rt.pos[dart_partner(d)] + E2 - 1) % E2};
    };

    for (int32_t i = k - 2; i >= 0; --i) {
        // heavy edge between w[i] and w[i+1]
        int32_t he = rt.parent_edge[w[i + 1]];
        int32_t dn = rt.down_dart(he);
        ps = rt.pos[dn];
        pt = rt.pos[dart_partner(dn)];
        ChainStep step{{rt.tour[ps], rt.tour[pt]}, Dir::R, -1};
        auto [ts, tt] = target(w[i]);
        if (ps == ts && pt == tt) step.full_node = w[i];
        chain.push_back(step);
        // right-hanging light subtrees of w[i], then left-hanging ones
        while (pt != tt) {
            pt = (pt + 1) % E2;
            int32_t d = rt.tour[pt];
            PrunedSubtree cur{rt.tour[ps], rt.tour[pt]};
            if (rt.dart_in(cur, dart_partner(d)))  // edge completed
                chain.push_back({cur, Dir::R, -1});
        }
        while (ps != ts) {
            ps = (ps + E2 - 1) % E2;
            int32_t d = rt.tour[ps];
            PrunedSubtree cur{rt.tour[ps], rt.tour[pt]};
            if (rt.dart_in(cur, dart_partner(d)))  // partner already inside
                chain.push_back({cur, Dir::L, -1});
        }
        if (chain.back().full_node < 0) chain.back().full_node = w[i];
    }
    return chain;
}

}  // namespace ted
