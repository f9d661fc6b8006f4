#pragma once

// Test-only reference implementations: everything here recomputes interval
// semantics naively from the Euler tour, independent of the O(1) fast paths.

#include <set>
#include <vector>

#include "ted/nav.hpp"

namespace ted::testing {

inline std::vector<int32_t> ref_edge_set(const RootedTree& rt, PrunedSubtree f) {
    std::vector<int32_t> out;
    if (f.is_empty()) return out;
    for (int32_t e = 0; e < rt.E; ++e)
        if (rt.dart_in(f, 2 * e) && rt.dart_in(f, 2 * e + 1)) out.push_back(e);
    return out;
}

// Canonical (s,t) for a nonempty edge subset known to be a pruned subtree:
// trim the old interval to the first/last dart whose edge survives.
inline PrunedSubtree ref_canonical(const RootedTree& rt, PrunedSubtree from,
                                   const std::set<int32_t>& edges) {
    if (edges.empty()) return PrunedSubtree::empty();
    int32_t E2 = 2 * rt.E;
    int32_t s = -1, t = -1;
    for (int32_t k = 0; k < E2; ++k) {
        int32_t d = rt.tour[(rt.pos[from.s] + k) % E2];
        if (edges.count(dart_edge(d))) {
            s = d;
            break;
        }
    }
    for (int32_t k = 0; k < E2; ++k) {
        int32_t d = rt.tour[(rt.pos[from.t] - k + E2) % E2];
        if (edges.count(dart_edge(d))) {
            t = d;
            break;
        }
    }
    return {s, t};
}

inline std::set<int32_t> ref_set(const RootedTree& rt, PrunedSubtree f) {
    auto v = ref_edge_set(rt, f);
    return {v.begin(), v.end()};
}

// Naive navigate: interval arithmetic only.
inline PrunedSubtree ref_navigate(const RootedTree& rt, PrunedSubtree f, NavMove m) {
    auto edges = ref_set(rt, f);
    auto inner = [&](int32_t d) {  // edges strictly below dart d within f
        std::set<int32_t> out;
        PrunedSubtree span{d, dart_partner(d)};
        for (int32_t e : edges)
            if (e != dart_edge(d) && rt.dart_in(span, 2 * e) && rt.dart_in(span, 2 * e + 1) &&
                rt.rel(span, 2 * e) > 0 && rt.rel(span, 2 * e + 1) > 0)
                out.insert(e);
        return out;
    };
    std::set<int32_t> res;
    switch (m) {
        case NavMove::take_L: res = inner(f.s); break;
        case NavMove::take_R: res = inner(dart_partner(f.t)); break;
        case NavMove::drop_l_edge:
            res = edges;
            res.erase(dart_edge(f.s));
            break;
        case NavMove::drop_r_edge:
            res = edges;
            res.erase(dart_edge(f.t));
            break;
        case NavMove::drop_L: {
            res = edges;
            for (int32_t e : inner(f.s)) res.erase(e);
            res.erase(dart_edge(f.s));
            break;
        }
        case NavMove::drop_R: {
            res = edges;
            for (int32_t e : inner(dart_partner(f.t))) res.erase(e);
            res.erase(dart_edge(f.t));
            break;
        }
        default: throw StateError("ref_navigate: dart move");
    }
    if (res.empty()) return PrunedSubtree::empty();
    // take/drop of L keep the interval end, mirror for R
    return ref_canonical(rt, f, res);
}

// Every pruned subtree of the fixed rooting (contractions of l/r main edges
// starting from the whole tree), discovered by BFS.
inline std::vector<PrunedSubtree> all_pruned_rooted(const RootedTree& rt) {
    std::vector<PrunedSubtree> out;
    std::set<std::pair<int32_t, int32_t>> seen;
    std::vector<PrunedSubtree> stack{rt.whole()};
    if (rt.E == 0) return out;
    seen.insert({rt.whole().s, rt.whole().t});
    while (!stack.empty()) {
        PrunedSubtree f = stack.back();
        stack.pop_back();
        out.push_back(f);
        for (NavMove m : {NavMove::drop_l_edge, NavMove::drop_r_edge}) {
            PrunedSubtree g = ref_navigate(rt, f, m);
            if (g.is_empty()) continue;
            if (seen.insert({g.s, g.t}).second) stack.push_back(g);
        }
    }
    return out;
}

// Every pruned subtree of every rooting (the cyclic Euler tour view).
inline std::vector<PrunedSubtree> all_pruned_unrooted(const RootedTree& rt) {
    std::vector<PrunedSubtree> out;
    std::set<std::pair<int32_t, int32_t>> seen;
    std::vector<PrunedSubtree> stack;
    for (int32_t d = 0; d < 2 * rt.E; ++d) {
        // whole tree in the rooting whose tour starts at dart d
        PrunedSubtree f{d, rt.tour[(rt.pos[d] + 2 * rt.E - 1) % (2 * rt.E)]};
        if (seen.insert({f.s, f.t}).second) stack.push_back(f);
    }
    while (!stack.empty()) {
        PrunedSubtree f = stack.back();
        stack.pop_back();
        out.push_back(f);
        for (NavMove m : {NavMove::drop_l_edge, NavMove::drop_r_edge}) {
            PrunedSubtree g = ref_navigate(rt, f, m);
            if (g.is_empty()) continue;
            if (seen.insert({g.s, g.t}).second) stack.push_back(g);
        }
    }
    return out;
}

}  // namespace ted::testing
