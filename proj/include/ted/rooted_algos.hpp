#pragma once

#include "ted/strategy.hpp"

namespace ted {

// Delta[u, d] = delta(T1^u, subtree(d)) for nodes u of T1 and darts d of T2.
// Cells are write-once.
class DeltaTable {
public:
    DeltaTable(int32_t nodes, int32_t darts)
        : darts_(darts), vals_(static_cast<size_t>(nodes) * darts), filled_(vals_.size(), 0) {}

    void set(int32_t u, int32_t d, Cost c) {
        size_t i = idx(u, d);
        TED_CHECK(!filled_[i], "delta cell filled twice");
        vals_[i] = c;
        filled_[i] = 1;
    }
    Cost get(int32_t u, int32_t d) const {
        size_t i = idx(u, d);
        TED_CHECK(filled_[i], "delta cell read before fill");
        return vals_[i];
    }
    bool has(int32_t u, int32_t d) const { return filled_[idx(u, d)] != 0; }
    bool fully_filled() const {
        for (char c : filled_)
            if (!c) return false;
        return true;
    }
    int64_t cells() const { return static_cast<int64_t>(vals_.size()); }

private:
    size_t idx(int32_t u, int32_t d) const {
        return static_cast<size_t>(u) * static_cast<size_t>(darts_) + static_cast<size_t>(d);
    }
    int32_t darts_;
    std::vector<Cost> vals_;
    std::vector<char> filled_;
};

// ---------------------------------------------------------------------------
// Zhang-Shasha: Lemma 1 with the direction fixed to the right, full memo.
// Deliberately the most naive faithful rendering; it anchors the oracle.
// ---------------------------------------------------------------------------

namespace detail {

struct ZsSolver {
    const NavIndex& A;
    const NavIndex& B;
    MemoEngine& eng;

    Cost solve(PrunedSubtree f, PrunedSubtree g) {
        if (f.is_empty() || g.is_empty())
            return dp_step(A, B, f, g, Dir::R, [](PrunedSubtree, PrunedSubtree) -> Cost {
                throw EngineError("unreachable");
            });
        if (auto hit = eng.find(f, g)) return *hit;
        Cost v = dp_step(A, B, f, g, Dir::R,
                         [&](PrunedSubtree a, PrunedSubtree b) { return solve(a, b); });
        eng.store(f, g, v, Phase::rooted);
        return v;
    }
};

}  // namespace detail

inline Cost ted_zhang_shasha(const RootedTree& t1, const RootedTree& t2, const CostModel& cm,
                             SubproblemCounter* ctr = nullptr) {
    SubproblemCounter local;
    NavIndex a(t1, cm), b(t2, cm);
    MemoEngine eng(a, b, ctr ? *ctr : local);
    detail::ZsSolver zs{a, b, eng};
    return zs.solve(t1.whole(), t2.whole());
}

// ---------------------------------------------------------------------------
// Klein: bottom-up over heavy paths of T1, strategy avoiding the heavy child
// of T1, against every pruned subtree of (rooted) T2.
// ---------------------------------------------------------------------------

// All pruned subtrees of the fixed rooting, sorted by size (stable).
inline std::vector<PrunedSubtree> rooted_family(const RootedTree& rt) {
    std::vector<PrunedSubtree> fam;
    int32_t E2 = 2 * rt.E;
    for (int32_t ps = 0; ps < E2; ++ps)
        for (int32_t pt = ps; pt < E2; ++pt) {
            PrunedSubtree f{rt.tour[ps], rt.tour[pt]};
            if (dart_edge(f.s) == dart_edge(f.t) && f.t != dart_partner(f.s)) continue;
            if (!rt.dart_in(f, dart_partner(f.s)) || !rt.dart_in(f, dart_partner(f.t))) continue;
            fam.push_back(f);
        }
    std::stable_sort(fam.begin(), fam.end(), [&](PrunedSubtree x, PrunedSubtree y) {
        return rt.size_edges(x) < rt.size_edges(y);
    });
    return fam;
}

inline Cost ted_klein(const RootedTree& t1, const RootedTree& t2, const CostModel& cm,
                      SubproblemCounter* ctr = nullptr) {
    SubproblemCounter local;
    NavIndex a(t1, cm), b(t2, cm);
    MemoEngine eng(a, b, ctr ? *ctr : local);
    if (t1.E == 0 || t2.E == 0) return dp_step(a, b, t1.whole(), t2.whole(), Dir::R,
                                               [](PrunedSubtree, PrunedSubtree) -> Cost {
                                                   throw EngineError("unreachable");
                                               });
    std::vector<PrunedSubtree> fam = rooted_family(t2);
    auto look = [&](PrunedSubtree x, PrunedSubtree y) { return eng.resolve(x, y); };
    for (int32_t pid : t1.paths_bottom_up) {
        for (const ChainStep& step : avoid_heavy_chain(t1, pid)) {
            for (PrunedSubtree g : fam)
                eng.store(step.tree, g, dp_step(a, b, step.tree, g, step.dir, look),
                          Phase::rooted);
        }
    }
    return eng.resolve(t1.whole(), t2.whole());
}

// ---------------------------------------------------------------------------
// Demaine et al.: avoid the heavy child in the tree whose apex subtree is
// currently larger (ties go to T2's side); switching only happens inside the
// (L,L)/(R,R) branch. Memoized top-down, in the appendix's presentation.
// ---------------------------------------------------------------------------

namespace detail {

struct DemaineSolver {
    const NavIndex& A;
    const NavIndex& B;
    MemoEngine& eng;

    Cost solve(PrunedSubtree f, PrunedSubtree g) {
        if (f.is_empty() || g.is_empty())
            return dp_step(A, B, f, g, Dir::R, [](PrunedSubtree, PrunedSubtree) -> Cost {
                throw EngineError("unreachable");
            });
        if (auto hit = eng.find(f, g)) return *hit;
        const RootedTree& ta = A.tree();
        const RootedTree& tb = B.tree();
        bool x_is_f = ta.sz[ta.apex(f)] > tb.sz[tb.apex(g)];
        Dir dir = x_is_f ? avoid_dir(ta, f) : avoid_dir(tb, g);
        Cost v = dp_step(A, B, f, g, dir,
                         [&](PrunedSubtree x, PrunedSubtree y) { return solve(x, y); });
        eng.store(f, g, v, Phase::rooted);
        return v;
    }
};

}  // namespace detail

inline Cost ted_demaine(const RootedTree& t1, const RootedTree& t2, const CostModel& cm,
                        SubproblemCounter* ctr = nullptr) {
    SubproblemCounter local;
    NavIndex a(t1, cm), b(t2, cm);
    MemoEngine eng(a, b, ctr ? *ctr : local);
    detail::DemaineSolver dem{a, b, eng};
    return dem.solve(t1.whole(), t2.whole());
}

// Runs Demaine et al. from every (T1^u, T2^v) pair and stores the results in
// Delta[u, e_v down] (the prefill consumed by the unrooted algorithms).
inline void demaine_fill_down(const NavIndex& a, const NavIndex& b, MemoEngine& eng,
                              DeltaTable& delta) {
    const RootedTree& ta = a.tree();
    const RootedTree& tb = b.tree();
    detail::DemaineSolver dem{a, b, eng};
    for (int32_t u = 0; u < ta.base.node_count; ++u) {
        PrunedSubtree fu = (u == ta.root) ? ta.whole()
                                          : ta.subtree(ta.down_dart(ta.parent_edge[u]));
        for (int32_t d = 0; d < 2 * tb.E; ++d) {
            if (!tb.is_down(d)) continue;
            delta.set(u, d, dem.solve(fu, tb.subtree(d)));
        }
    }
}

}  // namespace ted
