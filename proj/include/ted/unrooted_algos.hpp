#pragma once

#include <cmath>

#include "ted/rooted_algos.hpp"

namespace ted {

enum class Variant : uint8_t { loglog, optimal };

// ---------------------------------------------------------------------------
// Transform pipeline. The rooting-searched tree (the larger one, T2) gets the
// rooting-marker leaves; both get binarized. T2 is rooted at the marker leaf
// sitting after the canonical anchor edge, so the root has degree 1 and the
// root heavy path has a clean h_0 with subtree(h_0 up) empty.
// ---------------------------------------------------------------------------

struct WorkingPair {
    RootedTree t1, t2;
    std::vector<int32_t> rooting_darts;  // darts d of t2 with subtree(d) = one rooting
};

inline WorkingPair make_working_pair(const UnrootedTree& small, const UnrootedTree& big) {
    WorkingPair wp;
    wp.t1 = root_canonical(binarize(small));

    UnrootedTree aug = augment_rootings(big);
    int32_t root_leaf = big.node_count;  // first marker leaf = after rot[0][0]
    UnrootedTree t2u = binarize(aug);
    wp.t2 = root_at(t2u, root_leaf, t2u.rot[root_leaf][0]);

    for (int32_t e = 0; e < wp.t2.E; ++e) {
        if (wp.t2.base.edges[e].label.kind != LabelKind::rooting_marker) continue;
        int32_t u = wp.t2.base.edges[e].u, v = wp.t2.base.edges[e].v;
        int32_t leaf = wp.t2.base.degree(u) == 1 ? u : v;
        wp.rooting_darts.push_back(wp.t2.dart_from(leaf, e));
    }
    return wp;
}

// ---------------------------------------------------------------------------
// Phase context shared by ProcessHeavyPath / Group / InsideGroup.
// ---------------------------------------------------------------------------

struct GroupStats {
    int32_t max_depth = 0;
    std::vector<int32_t> edge_calls;  // per T2 edge: Group calls whose I contains it
};

struct UnrootedCtx {
    const NavIndex& A;  // T1
    const NavIndex& B;  // T2
    MemoEngine& eng;
    DeltaTable& delta;
    Variant variant;

    const Family* fam = nullptr;  // T1-side family backing every table
    std::vector<int32_t> fill_nodes;  // T1 nodes whose delta rows this phase owns
    int32_t m_p = 0;                       // optimal: |T1^u| in edges
    const SpecialPrep* special = nullptr;  // optimal
    const std::vector<ChainStep>* u_chain = nullptr;  // optimal: avoid-heavy chain of T1^u
    int32_t phase_path = -1;                          // optimal: heavy path id of T1^u

    GroupStats* stats = nullptr;
    int32_t depth = 0;

    // Pairs (full subtree of T1, dart subtree of T2) live in Delta once
    // filled; everything else must already be memoized.
    Cost resolve(PrunedSubtree f, PrunedSubtree g) const {
        if (f.is_empty() && g.is_empty()) return Cost::zero();
        if (f.is_empty()) return B.contraction_cost(g);
        if (g.is_empty()) return A.contraction_cost(f);
        const RootedTree& ta = A.tree();
        const RootedTree& tb = B.tree();
        int32_t da = ta.prev_dart(f.s);
        if (dart_partner(da) == ta.next_dart(f.t) && ta.is_down(da)) {
            int32_t db = tb.prev_dart(g.s);
            if (dart_partner(db) == tb.next_dart(g.t)) {
                int32_t u = ta.dart_head(da);
                if (delta.has(u, db)) return delta.get(u, db);
            }
        }
        return eng.resolve(f, g);
    }
};

namespace detail {

// Chain of uncontractions of the dir-side main edge from `from` (exclusive)
// to `target` (inclusive); derived by contracting backwards, which also
// validates reachability.
inline std::vector<PrunedSubtree> uncontraction_chain(const RootedTree& rt, PrunedSubtree from,
                                                      PrunedSubtree target, Dir dir) {
    std::vector<PrunedSubtree> chain;
    PrunedSubtree cur = target;
    while (cur != from) {
        if (cur.is_empty()) throw EngineError("compute_from: target unreachable from source");
        chain.push_back(cur);
        cur = dir == Dir::R ? rt.drop_r_edge(cur) : rt.drop_l_edge(cur);
    }
    std::reverse(chain.begin(), chain.end());
    return chain;
}

}  // namespace detail

// ComputeFrom: builds the table of `target` (against ctx.fam of T1) from the
// table of sources[0].fixed by uncontracting the dir-side main edge of the
// T2-side tree; every intermediate tree is evaluated against the whole family
// in increasing size order. Additional sources only assert availability (their
// rows are consulted through the engine).
inline DistTable compute_from(UnrootedCtx& cx, Phase phase, PrunedSubtree target,
                              std::vector<const DistTable*> sources, Dir dir) {
    TED_CHECK(!sources.empty(), "compute_from: missing source");
    const RootedTree& tb = cx.B.tree();
    PrunedSubtree from = sources[0]->fixed;
    auto look = [&](PrunedSubtree f, PrunedSubtree g) { return cx.resolve(f, g); };
    if (!(target == from)) {
        for (PrunedSubtree g : detail::uncontraction_chain(tb, from, target, dir)) {
            for (PrunedSubtree f : cx.fam->members)
                cx.eng.store(f, g, dp_step(cx.A, cx.B, f, g, dir, look), phase);
        }
    }
    DistTable out{target, cx.fam, {}};
    out.vals.reserve(cx.fam->size());
    for (PrunedSubtree f : cx.fam->members) out.vals.push_back(cx.resolve(f, target));
    return out;
}

// Table handle for a tree whose rows already exist (or are empty-trivial).
inline DistTable table_of(UnrootedCtx& cx, PrunedSubtree fixed) {
    DistTable out{fixed, cx.fam, {}};
    out.vals.reserve(cx.fam->size());
    for (PrunedSubtree f : cx.fam->members) out.vals.push_back(cx.resolve(f, fixed));
    return out;
}

inline DistTable empty_table(UnrootedCtx& cx) {
    DistTable out{PrunedSubtree::empty(), cx.fam, {}};
    out.vals.reserve(cx.fam->size());
    for (PrunedSubtree f : cx.fam->members) out.vals.push_back(cx.A.contraction_cost(f));
    return out;
}

// ---------------------------------------------------------------------------
// The Group recursion and its helpers.
// ---------------------------------------------------------------------------

struct GroupData {
    DistTable up;    // ALL(subtree(h_{A-1} up))
    DistTable down;  // ALL(subtree(h_B down))
    DistTable mr;    // ALL(merged^R(A,B))
    DistTable ml;    // ALL(merged^L(A,B))
};

namespace detail {

inline void fill_delta_row(UnrootedCtx& cx, int32_t dart, const char* what) {
    (void)what;
    PrunedSubtree g = cx.B.tree().subtree(dart);
    for (int32_t u : cx.fill_nodes) {
        const RootedTree& ta = cx.A.tree();
        PrunedSubtree fu = (u == ta.root) ? ta.whole()
                                          : ta.subtree(ta.down_dart(ta.parent_edge[u]));
        cx.delta.set(u, dart, cx.resolve(fu, g));
    }
}

// Single(d) table: one uncontraction on top of subtree(d)'s table.
inline DistTable single_table(UnrootedCtx& cx, Phase phase, int32_t dart,
                              const DistTable& sub_table) {
    return compute_from(cx, phase, PrunedSubtree::single(dart), {&sub_table}, Dir::R);
}

void process_heavy_path(UnrootedCtx& cx, const HeavyPath& h, const DistTable& seed);

// The light child edge side at position j: true if the light subtree hangs
// left of the heavy edge in subtree(h_j up)'s rooted order.
inline Dir climb_dir(const RootedTree& rt, const HeavyPath& h, int32_t j) {
    int32_t le = h.light_edge(j);
    if (le < 0) return Dir::R;
    PrunedSubtree s = rt.subtree(rt.up_dart(h.h_edge(j)));
    return dart_edge(s.s) == h.h_edge(j - 1) ? Dir::R : Dir::L;
}

inline Dir descend_dir(const RootedTree& rt, const HeavyPath& h, int32_t j) {
    // direction eating the light block of w_{j+1} inside subtree(h_j down)
    int32_t v = rt.base.other_end(h.h_edge(j), h.node(j));  // w_{j+1}
    int32_t le = -1;
    for (int32_t e : rt.child_edges[v])
        if (rt.base.other_end(e, v) != rt.heavy_child[v]) le = e;
    if (le < 0) return Dir::R;
    PrunedSubtree s = rt.subtree(rt.down_dart(h.h_edge(j)));
    return dart_edge(s.s) == le ? Dir::L : Dir::R;
}

// Data(a2,b2) from Data(a,b). Every table is produced by single-direction
// ComputeFrom chains; the merged tables need the auxiliary one-side-fixed
// chains (the second inputs of the two-source calls) built first so that
// cross-referenced subproblems are available.
inline GroupData make_data(UnrootedCtx& cx, const HeavyPath& h, int32_t a, int32_t b,
                           int32_t a2, int32_t b2, const GroupData& data) {
    const RootedTree& tb = cx.B.tree();
    GroupData out;

    // up: climb subtree(h_{a-1} up) -> subtree(h_{a2-1} up)
    if (a2 == a) {
        out.up = data.up;
    } else {
        DistTable cur = data.up;
        for (int32_t j = a; j <= a2 - 1; ++j)
            cur = compute_from(cx, Phase::group, tb.subtree(tb.up_dart(h.h_edge(j))), {&cur},
                               climb_dir(tb, h, j));
        out.up = std::move(cur);
    }
    // down: descend subtree(h_b down) -> subtree(h_{b2} down)
    if (b2 == b) {
        out.down = data.down;
    } else {
        DistTable cur = data.down;
        for (int32_t i = b - 1; i >= b2; --i)
            cur = compute_from(cx, Phase::group, tb.subtree(tb.down_dart(h.h_edge(i))), {&cur},
                               descend_dir(tb, h, i));
        out.down = std::move(cur);
    }

    // merged^R/merged^L for [a2,b2]
    auto right_shrink = [&](const DistTable& mr_ab, int32_t aa, int32_t bb,
                            const DistTable& up_aa) {
        // merged^R(aa,b2') for b2' < bb by right uncontractions; needs the
        // [l = h_{aa-1}] prefix chain up to ll(..bb-1) as cross input.
        if (b2 == bb) return mr_ab;
        DistTable single = single_table(cx, Phase::group, tb.up_dart(h.h_edge(aa - 1)), up_aa);
        if (bb - 1 >= aa) {
            PrunedSubtree aux = tb.drop_R(merged(tb, h, aa, bb - 1, MergeSide::R));
            compute_from(cx, Phase::group, aux, {&single}, Dir::R);
        }
        return compute_from(cx, Phase::group, merged(tb, h, aa, b2, MergeSide::R),
                            {&mr_ab, &up_aa}, Dir::R);
    };
    auto left_shrink_r = [&](const DistTable& mr_ab, int32_t aa, int32_t bb,
                             const DistTable& down_bb) {
        // merged^R(a2,bb) for a2 > aa by left uncontractions; needs the
        // [r = h_bb] suffix chain as cross input.
        if (a2 == aa) return mr_ab;
        DistTable single = single_table(cx, Phase::group, tb.down_dart(h.h_edge(bb)), down_bb);
        if (aa + 1 <= bb) {
            PrunedSubtree aux = tb.drop_L(merged(tb, h, aa + 1, bb, MergeSide::R));
            compute_from(cx, Phase::group, aux, {&single}, Dir::L);
        }
        return compute_from(cx, Phase::group, merged(tb, h, a2, bb, MergeSide::R),
                            {&mr_ab, &down_bb}, Dir::L);
    };
    {
        DistTable mid = right_shrink(data.mr, a, b, data.up);
        out.mr = left_shrink_r(mid, a, b2, out.down);
    }

    auto left_shrink = [&](const DistTable& ml_ab, int32_t aa, int32_t bb,
                           const DistTable& up_aa) {
        // merged^L(aa,b2') for b2' < bb by left uncontractions
        if (b2 == bb) return ml_ab;
        DistTable single = single_table(cx, Phase::group, tb.up_dart(h.h_edge(aa - 1)), up_aa);
        if (bb - 1 >= aa) {
            PrunedSubtree aux = tb.drop_L(merged(tb, h, aa, bb - 1, MergeSide::L));
            compute_from(cx, Phase::group, aux, {&single}, Dir::L);
        }
        return compute_from(cx, Phase::group, merged(tb, h, aa, b2, MergeSide::L),
                            {&ml_ab, &up_aa}, Dir::L);
    };
    auto right_shrink_l = [&](const DistTable& ml_ab, int32_t aa, int32_t bb,
                              const DistTable& down_bb) {
        if (a2 == aa) return ml_ab;
        DistTable single = single_table(cx, Phase::group, tb.down_dart(h.h_edge(bb)), down_bb);
        if (aa + 1 <= bb) {
            PrunedSubtree aux = tb.drop_R(merged(tb, h, aa + 1, bb, MergeSide::L));
            compute_from(cx, Phase::group, aux, {&single}, Dir::R);
        }
        return compute_from(cx, Phase::group, merged(tb, h, a2, bb, MergeSide::L),
                            {&ml_ab, &down_bb}, Dir::R);
    };
    {
        DistTable mid = left_shrink(data.ml, a, b, data.up);
        out.ml = right_shrink_l(mid, a, b2, out.down);
    }
    return out;
}

// Edges of I(a,b): the heavy spine h_a..h_{b-1} plus the complete light
// subtrees hanging off w_a..w_b.
inline std::vector<int32_t> interval_edges(const RootedTree& rt, const HeavyPath& h, int32_t a,
                                           int32_t b) {
    std::vector<int32_t> out;
    for (int32_t j = a; j <= b; ++j) {
        if (j < b) out.push_back(h.h_edge(j));
        int32_t le = h.light_edge(j);
        if (le < 0) continue;
        out.push_back(le);
        PrunedSubtree block = rt.subtree(rt.down_dart(le));
        if (!block.is_empty()) {
            int32_t lo = rt.pos[block.s], len = rt.interval_len(block);
            for (int32_t k = 0; k < len; ++k) {
                int32_t d = rt.tour[(lo + k) % (2 * rt.E)];
                if ((d & 1) == 0) out.push_back(dart_edge(d));
            }
        }
    }
    return out;
}

void inside_group(UnrootedCtx& cx, const HeavyPath& h, int32_t a, int32_t b,
                  const GroupData& data);

inline void group(UnrootedCtx& cx, const HeavyPath& h, int32_t a, int32_t b,
                  const GroupData& data) {
    if (a > b) return;
    cx.depth++;
    if (cx.stats) {
        cx.stats->max_depth = std::max(cx.stats->max_depth, cx.depth);
        for (int32_t e : interval_edges(cx.B.tree(), h, a, b)) cx.stats->edge_calls[e]++;
    }
    const RootedTree& tb = cx.B.tree();

    auto base_fill_and_recurse = [&](int32_t j, const GroupData& d) {
        // fill Delta[., l_j up] and recurse into the attached heavy path
        int32_t le = h.light_edge(j);
        if (le < 0) return;
        int32_t dart = tb.up_dart(le);
        PrunedSubtree sub = tb.subtree(dart);
        const DistTable& src = (sub == merged(tb, h, j, j, MergeSide::R)) ? d.mr : d.ml;
        TED_CHECK(sub == src.fixed, "group base: merged table mismatch");
        fill_delta_row(cx, dart, "group base");
        int32_t child = tb.base.other_end(le, h.node(j));
        HeavyPath hp(tb, tb.path_id[child]);
        process_heavy_path(cx, hp, src);
    };

    if (cx.variant == Variant::loglog) {
        if (a == b) {
            base_fill_and_recurse(a, data);
        } else {
            int32_t m = (a + b) / 2;
            GroupData left = make_data(cx, h, a, b, a, m, data);
            group(cx, h, a, m, left);
            GroupData right = make_data(cx, h, a, b, m + 1, b, data);
            group(cx, h, m + 1, b, right);
        }
        cx.depth--;
        return;
    }

    // optimal variant
    int32_t s_ab = cx.special->special_count(h, a, b);
    if (s_ab > 0 && a == b) {
        base_fill_and_recurse(a, data);
        cx.depth--;
        return;
    }
    if (s_ab == 0 && (a == b || interval_edge_count(tb, h, a, b) < cx.m_p)) {
        inside_group(cx, h, a, b, data);
        cx.depth--;
        return;
    }
    int32_t m;
    if (s_ab > 0) {
        m = a;
        while (2 * cx.special->special_count(h, a, m) < s_ab) ++m;
    } else {
        m = (a + b) / 2;
    }
    if (a <= m - 1) {
        GroupData d = make_data(cx, h, a, b, a, m - 1, data);
        group(cx, h, a, m - 1, d);
    }
    {
        GroupData d = make_data(cx, h, a, b, m, m, data);
        group(cx, h, m, m, d);
    }
    if (m + 1 <= b) {
        GroupData d = make_data(cx, h, a, b, m + 1, b, data);
        group(cx, h, m + 1, b, d);
    }
    cx.depth--;
}

// InsideGroup: |I(a,b)| < m_P (or a == b). Stage 1 completes the two missing
// members of T2D, stage 2 the four one-main-edge-in-D families, stage 3 walks
// the avoid-heavy chain of T1^u against every tree with both main edges in I,
// filling Delta rows at full-subtree moments.
inline void inside_group(UnrootedCtx& cx, const HeavyPath& h, int32_t a, int32_t b,
                         const GroupData& data) {
    const RootedTree& tb = cx.B.tree();
    const RootedTree& ta = cx.A.tree();
    std::vector<int32_t> I = interval_edges(tb, h, a, b);
    if (cx.stats)
        for (int32_t e : I) cx.stats->edge_calls[e]++;

    // stage 1: Single(h_B down) and Single(h_{A-1} up)
    DistTable bdown =
        single_table(cx, Phase::inside_group, tb.down_dart(h.h_edge(b)), data.down);
    DistTable aup = single_table(cx, Phase::inside_group, tb.up_dart(h.h_edge(a - 1)), data.up);

    // stage 2: exactly one main edge in D = {h_{A-1}, h_B}
    if (!I.empty()) {
        compute_from(cx, Phase::inside_group, tb.drop_L(merged(tb, h, a, b, MergeSide::L)),
                     {&aup, &data.ml}, Dir::L);  // [r = h_{A-1}]
        compute_from(cx, Phase::inside_group, tb.drop_R(merged(tb, h, a, b, MergeSide::R)),
                     {&aup, &data.mr}, Dir::R);  // [l = h_{A-1}]
        compute_from(cx, Phase::inside_group, tb.drop_L(merged(tb, h, a, b, MergeSide::R)),
                     {&bdown, &data.mr}, Dir::L);  // [r = h_B]
        compute_from(cx, Phase::inside_group, tb.drop_R(merged(tb, h, a, b, MergeSide::L)),
                     {&bdown, &data.ml}, Dir::R);  // [l = h_B]
    }

    // stage 3: both main edges in I
    Family famI;
    for (int32_t ea : I)
        for (int32_t da = 2 * ea; da <= 2 * ea + 1; ++da)
            for (int32_t eb : I)
                for (int32_t db = 2 * eb; db <= 2 * eb + 1; ++db)
                    if (valid_pruned_pair(tb, da, db)) famI.members.push_back({da, db});
    famI.finish(tb);

    std::vector<char> spine(static_cast<size_t>(tb.E), 0);
    for (int32_t j = a; j < b; ++j) spine[static_cast<size_t>(h.h_edge(j))] = 1;
    std::vector<char> owned(static_cast<size_t>(ta.base.node_count), 0);
    for (int32_t v : cx.fill_nodes) owned[static_cast<size_t>(v)] = 1;

    auto fill_node_rows = [&](int32_t v, PrunedSubtree fv) {
        if (!owned[static_cast<size_t>(v)]) return;
        for (int32_t e : I) {
            if (spine[static_cast<size_t>(e)]) continue;  // climb already filled these
            int32_t dart = tb.up_dart(e);
            cx.delta.set(v, dart, cx.resolve(fv, tb.subtree(dart)));
        }
    };

    auto look = [&](PrunedSubtree f, PrunedSubtree g) { return cx.resolve(f, g); };
    const std::vector<ChainStep>& chain = *cx.u_chain;
    fill_node_rows(ta.paths[cx.phase_path].back(), PrunedSubtree::empty());
    for (const ChainStep& step : chain) {
        for (PrunedSubtree g : famI.members)
            cx.eng.store(step.tree, g, dp_step(cx.A, cx.B, step.tree, g, step.dir, look),
                         Phase::inside_group);
        if (step.full_node >= 0) fill_node_rows(step.full_node, step.tree);
    }
}

// ProcessHeavyPath: climb the path filling Delta[., h_i up], build the two
// whole-path merged tables, then hand over to Group.
inline void process_heavy_path(UnrootedCtx& cx, const HeavyPath& h, const DistTable& seed) {
    int32_t p = h.positions();
    if (p < 1) return;
    const RootedTree& tb = cx.B.tree();
    DistTable cur = seed;
    for (int32_t i = 1; i <= p; ++i) {
        cur = compute_from(cx, Phase::heavy_path, tb.subtree(tb.up_dart(h.h_edge(i))), {&cur},
                           climb_dir(tb, h, i));
        fill_delta_row(cx, tb.up_dart(h.h_edge(i)), "climb");
    }
    GroupData data;
    data.up = seed;
    data.down = empty_table(cx);
    data.mr = compute_from(cx, Phase::heavy_path, merged(tb, h, 1, p, MergeSide::R), {&seed},
                           Dir::R);
    data.ml = compute_from(cx, Phase::heavy_path, merged(tb, h, 1, p, MergeSide::L), {&seed},
                           Dir::L);
    group(cx, h, 1, p, data);
}

}  // namespace detail

namespace detail {

inline void leaf_phase(UnrootedCtx& cx, int32_t leaf) {
    const RootedTree& tb = cx.B.tree();
    for (int32_t d = 0; d < 2 * tb.E; ++d)
        if (!tb.is_down(d) && !tb.subtree(d).is_empty())
            cx.delta.set(leaf, d, cx.B.contraction_cost(tb.subtree(d)));
}

inline DistTable empty_seed(UnrootedCtx& cx) {
    DistTable out{PrunedSubtree::empty(), cx.fam, {}};
    out.vals.reserve(cx.fam->size());
    for (PrunedSubtree f : cx.fam->members) out.vals.push_back(cx.A.contraction_cost(f));
    return out;
}

inline PrunedSubtree node_subtree(const RootedTree& rt, int32_t u) {
    return u == rt.root ? rt.whole() : rt.subtree(rt.down_dart(rt.parent_edge[u]));
}

// Rows for up darts with an empty subtree (the parent edge of the degree-1
// root): delta is just the contraction cost of the T1 side.
inline void fill_empty_updarts(const NavIndex& A, const RootedTree& t2, DeltaTable& delta) {
    const RootedTree& t1 = A.tree();
    for (int32_t d = 0; d < 2 * t2.E; ++d) {
        if (t2.is_down(d) || !t2.subtree(d).is_empty()) continue;
        for (int32_t u = 0; u < t1.base.node_count; ++u)
            delta.set(u, d, A.contraction_cost(node_subtree(t1, u)));
    }
}

}  // namespace detail

// Every pruned subtree of every rooting (cyclic intervals of the tour).
inline Family family_all_rotations(const RootedTree& rt) {
    Family fam;
    int32_t E2 = 2 * rt.E;
    for (int32_t s = 0; s < E2; ++s)
        for (int32_t t = 0; t < E2; ++t)
            if (valid_pruned_pair(rt, s, t)) fam.members.push_back({s, t});
    fam.finish(rt);
    return fam;
}

struct UnrootedResult {
    Cost distance;
    int32_t n = 0, m = 0;  // transformed edge counts (T2, T1)
};

// ---------------------------------------------------------------------------
// Optimal algorithm: Demaine prefill for every down dart, then bottom-up
// phases over T1's heavy paths; each phase re-walks T2's heavy paths with the
// special-node divide and conquer and fills the up darts for its path nodes.
// ---------------------------------------------------------------------------

inline UnrootedResult ted_unrooted_optimal_run(const UnrootedTree& a_in, const UnrootedTree& b_in,
                                               const CostModel& cm, SubproblemCounter* ctr,
                                               GroupStats* stats = nullptr) {
    a_in.validate();
    b_in.validate();
    if (a_in.has_reserved_labels() || b_in.has_reserved_labels())
        throw InputError("input uses reserved labels");
    if (a_in.edge_count() == 0 || b_in.edge_count() == 0) {
        const UnrootedTree& other = a_in.edge_count() == 0 ? b_in : a_in;
        Cost c = Cost::zero();
        for (const auto& e : other.edges) c += cm.del(e.label);
        return {c, b_in.edge_count(), a_in.edge_count()};
    }
    bool swap = a_in.edge_count() > b_in.edge_count();
    WorkingPair wp = make_working_pair(swap ? b_in : a_in, swap ? a_in : b_in);

    SubproblemCounter local;
    SubproblemCounter& counter = ctr ? *ctr : local;
    NavIndex A(wp.t1, cm), B(wp.t2, cm);
    MemoEngine eng(A, B, counter);
    DeltaTable delta(wp.t1.base.node_count, 2 * wp.t2.E);
    counter.cells_add(delta.cells());
    demaine_fill_down(A, B, eng, delta);
    detail::fill_empty_updarts(A, wp.t2, delta);
    if (stats) stats->edge_calls.assign(static_cast<size_t>(wp.t2.E), 0);

    HeavyPath h0(wp.t2, wp.t2.path_id[wp.t2.root]);
    for (int32_t pid : wp.t1.paths_bottom_up) {
        int32_t u = wp.t1.paths[pid].front();
        int32_t m_p = wp.t1.sz[u];
        UnrootedCtx cx{A, B, eng, delta, Variant::optimal};
        cx.stats = stats;
        if (m_p == 0) {
            detail::leaf_phase(cx, u);
            continue;
        }
        Family fam = family_within(wp.t1, detail::node_subtree(wp.t1, u));
        counter.cells_add(static_cast<int64_t>(fam.size()));
        SpecialPrep sp(wp.t2, m_p);
        std::vector<ChainStep> chain = avoid_heavy_chain(wp.t1, pid);
        cx.fam = &fam;
        cx.m_p = m_p;
        cx.special = &sp;
        cx.u_chain = &chain;
        cx.phase_path = pid;
        cx.fill_nodes = wp.t1.paths[pid];
        DistTable seed = detail::empty_seed(cx);
        detail::process_heavy_path(cx, h0, seed);
        counter.cells_sub(static_cast<int64_t>(fam.size()));
    }
    TED_CHECK(delta.fully_filled(), "optimal: delta incomplete after all phases");

    Cost best = Cost::inf();
    for (int32_t d : wp.rooting_darts) {
        Cost c = delta.get(wp.t1.root, d);
        if (c < best) best = c;
    }
    return {best, wp.t2.E, wp.t1.E};
}

inline Cost ted_unrooted_optimal(const UnrootedTree& a, const UnrootedTree& b,
                                 const CostModel& cm, SubproblemCounter* ctr = nullptr) {
    return ted_unrooted_optimal_run(a, b, cm, ctr).distance;
}

// ---------------------------------------------------------------------------
// O(n^3 log log n) algorithm: phase 1 handles every node u of T1 with
// |T1^u| <= n/b through the heavy paths of T2 (size-capped tables); phase 2
// sweeps the remaining rows avoiding the heavy child in T1.
// ---------------------------------------------------------------------------

inline UnrootedResult ted_unrooted_loglog_run(const UnrootedTree& a_in, const UnrootedTree& b_in,
                                              const CostModel& cm, SubproblemCounter* ctr) {
    a_in.validate();
    b_in.validate();
    if (a_in.has_reserved_labels() || b_in.has_reserved_labels())
        throw InputError("input uses reserved labels");
    if (a_in.edge_count() == 0 || b_in.edge_count() == 0) {
        const UnrootedTree& other = a_in.edge_count() == 0 ? b_in : a_in;
        Cost c = Cost::zero();
        for (const auto& e : other.edges) c += cm.del(e.label);
        return {c, b_in.edge_count(), a_in.edge_count()};
    }
    bool swap = a_in.edge_count() > b_in.edge_count();
    WorkingPair wp = make_working_pair(swap ? b_in : a_in, swap ? a_in : b_in);

    SubproblemCounter local;
    SubproblemCounter& counter = ctr ? *ctr : local;
    NavIndex A(wp.t1, cm), B(wp.t2, cm);
    MemoEngine eng(A, B, counter);
    DeltaTable delta(wp.t1.base.node_count, 2 * wp.t2.E);
    counter.cells_add(delta.cells());
    demaine_fill_down(A, B, eng, delta);
    detail::fill_empty_updarts(A, wp.t2, delta);

    int32_t n2 = wp.t2.E;
    double lg = std::log2(std::max<double>(2.0, n2));
    int32_t bparam = std::max<int32_t>(1, static_cast<int32_t>(std::ceil(lg * lg)));
    int32_t cap = n2 / bparam;

    // phase 1: interesting rows via T2's heavy paths
    Family fam_star;
    if (cap >= 1) {
        fam_star = family_within(wp.t1, wp.t1.whole(), cap);
        counter.cells_add(static_cast<int64_t>(fam_star.size()));
        UnrootedCtx cx{A, B, eng, delta, Variant::loglog};
        cx.fam = &fam_star;
        for (int32_t u = 0; u < wp.t1.base.node_count; ++u)
            if (wp.t1.sz[u] <= cap) cx.fill_nodes.push_back(u);
        HeavyPath h0(wp.t2, wp.t2.path_id[wp.t2.root]);
        DistTable seed = detail::empty_seed(cx);
        detail::process_heavy_path(cx, h0, seed);
        counter.cells_sub(static_cast<int64_t>(fam_star.size()));
    }

    // phase 2: remaining rows, avoiding the heavy child in T1
    Family all2 = family_all_rotations(wp.t2);
    counter.cells_add(static_cast<int64_t>(all2.size()));
    UnrootedCtx cx2{A, B, eng, delta, Variant::loglog};
    auto look = [&](PrunedSubtree f, PrunedSubtree g) { return cx2.resolve(f, g); };
    for (int32_t pid : wp.t1.paths_bottom_up) {
        int32_t top = wp.t1.paths[pid].front();
        if (wp.t1.sz[top] <= cap) continue;  // whole path is interesting
        int32_t leaf = wp.t1.paths[pid].back();
        if (wp.t1.sz[leaf] > cap) {
            for (int32_t d = 0; d < 2 * wp.t2.E; ++d)
                if (!wp.t2.is_down(d) && !wp.t2.subtree(d).is_empty())
                    delta.set(leaf, d, B.contraction_cost(wp.t2.subtree(d)));
        }
        for (const ChainStep& step : avoid_heavy_chain(wp.t1, pid)) {
            for (PrunedSubtree g : all2.members)
                eng.store(step.tree, g, dp_step(A, B, step.tree, g, step.dir, look),
                          Phase::rooted);
            int32_t v = step.full_node;
            if (v >= 0 && wp.t1.sz[v] > cap) {
                for (int32_t d = 0; d < 2 * wp.t2.E; ++d)
                    if (!wp.t2.is_down(d) && !wp.t2.subtree(d).is_empty())
                        delta.set(v, d, cx2.resolve(step.tree, wp.t2.subtree(d)));
            }
        }
    }
    counter.cells_sub(static_cast<int64_t>(all2.size()));
    TED_CHECK(delta.fully_filled(), "loglog: delta incomplete after both phases");

    Cost best = Cost::inf();
    for (int32_t d : wp.rooting_darts) {
        Cost c = delta.get(wp.t1.root, d);
        if (c < best) best = c;
    }
    return {best, wp.t2.E, wp.t1.E};
}

inline Cost ted_unrooted_loglog(const UnrootedTree& a, const UnrootedTree& b,
                                const CostModel& cm, SubproblemCounter* ctr = nullptr) {
    return ted_unrooted_loglog_run(a, b, cm, ctr).distance;
}

}  // namespace ted
