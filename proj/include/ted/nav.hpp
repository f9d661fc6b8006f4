#pragma once

#include "ted/rooted.hpp"

namespace ted {

// Cost-dependent companion of a RootedTree: prefix sums of contraction costs
// over the Euler tour and along root paths, giving O(1) contraction cost of
// any pruned subtree. Infinite deletion costs are tracked as separate counts
// so the sums stay exact.
class NavIndex {
public:
    NavIndex(const RootedTree& rt, const CostModel& cm) : rt_(&rt), cm_(&cm) {
        int32_t E = rt.E;
        dart_del_.assign(static_cast<size_t>(2 * E) + 1, 0);
        dart_inf_.assign(static_cast<size_t>(2 * E) + 1, 0);
        for (int32_t p = 0; p < 2 * E; ++p) {
            Cost c = cm.del(rt.dart_label(rt.tour[p]));
            dart_del_[p + 1] = dart_del_[p] + (c.is_inf() ? 0 : c.v);
            dart_inf_[p + 1] = dart_inf_[p] + (c.is_inf() ? 1 : 0);
        }
        del_root_.assign(rt.base.node_count, 0);
        inf_root_.assign(rt.base.node_count, 0);
        for (int32_t p = 0; p < 2 * E; ++p) {
            int32_t d = rt.tour[p];
            if (!rt.is_down(d)) continue;
            int32_t v = rt.dart_head(d);
            Cost c = cm.del(rt.dart_label(d));
            del_root_[v] = del_root_[rt.parent[v]] + (c.is_inf() ? 0 : c.v);
            inf_root_[v] = inf_root_[rt.parent[v]] + (c.is_inf() ? 1 : 0);
        }
    }

    const RootedTree& tree() const { return *rt_; }
    const CostModel& model() const { return *cm_; }

    Cost del(int32_t dart) const { return cm_->del(rt_->dart_label(dart)); }
    Cost match(int32_t dart_a, const NavIndex& other, int32_t dart_b) const {
        return cm_->match(rt_->dart_label(dart_a), other.rt_->dart_label(dart_b));
    }

    // delta(empty, F): total deletion cost of all edges of F, in O(1).
    Cost contraction_cost(PrunedSubtree f) const {
        if (f.is_empty()) return Cost::zero();
        const RootedTree& rt = *rt_;
        int32_t lo = rt.pos[f.s], hi = rt.pos[f.t];
        int64_t dsum;
        int32_t dinf;
        if (lo <= hi) {
            dsum = dart_del_[hi + 1] - dart_del_[lo];
            dinf = dart_inf_[hi + 1] - dart_inf_[lo];
        } else {  // wraps past the root
            int32_t E2 = 2 * rt.E;
            dsum = (dart_del_[E2] - dart_del_[lo]) + dart_del_[hi + 1];
            dinf = (dart_inf_[E2] - dart_inf_[lo]) + dart_inf_[hi + 1];
        }
        int32_t a = rt.dart_tail(f.s), b = rt.dart_head(f.t);
        int32_t z = rt.lca(a, b);
        int64_t spine = del_root_[a] + del_root_[b] - 2 * del_root_[z];
        int32_t spine_inf = inf_root_[a] + inf_root_[b] - 2 * inf_root_[z];
        if (dinf - spine_inf > 0) return Cost::inf();
        return Cost((dsum - spine) / 2);
    }

private:
    const RootedTree* rt_;
    const CostModel* cm_;
    std::vector<int64_t> dart_del_;  // finite deletion cost by tour prefix
    std::vector<int32_t> dart_inf_;  // count of infinite-cost darts by prefix
    std::vector<int64_t> del_root_;  // finite deletion cost root -> node
    std::vector<int32_t> inf_root_;
};

// ---------------------------------------------------------------------------
// Heavy path positions, merged subtrees and interval/special counting.
//
// A heavy path with node list w_1..w_K (top-down) has positions 1..K-1; the
// edge below position j is h_j = (w_j, w_{j+1}), and h_0 is the edge from w_1
// to its parent. When the tree root lies on the path and has degree 1 (the
// rooting-marker leaf of the transformed tree) the root is skipped, so h_0 is
// the root's single edge.
// ---------------------------------------------------------------------------

class HeavyPath {
public:
    HeavyPath(const RootedTree& rt, int32_t path_id) : rt_(&rt) {
        const auto& nodes = rt.paths[path_id];
        size_t skip = 0;
        if (nodes.front() == rt.root && rt.child_edges[rt.root].size() == 1 &&
            nodes.size() > 1)
            skip = 1;  // degree-1 root: its single edge acts as h_0
        w_.assign(nodes.begin() + skip, nodes.end());
    }
    // Wraps an explicit node list (top-down chain).
    HeavyPath(const RootedTree& rt, std::vector<int32_t> nodes)
        : rt_(&rt), w_(std::move(nodes)) {}

    int32_t node_count() const { return static_cast<int32_t>(w_.size()); }
    // positions 1..P carry a following heavy edge
    int32_t positions() const { return static_cast<int32_t>(w_.size()) - 1; }
    int32_t node(int32_t j) const { return w_[static_cast<size_t>(j) - 1]; }  // w_j, 1-based

    // h_i for 0 <= i <= positions(); h_0 is the parent edge of the top node.
    int32_t h_edge(int32_t i) const {
        int32_t v = w_[static_cast<size_t>(i)];
        int32_t e = rt_->parent_edge[v];
        TED_CHECK(e >= 0, "heavy path top has no parent edge");
        return e;
    }
    bool has_h0() const { return rt_->parent_edge[w_[0]] >= 0; }

    // light child edge at position j, or -1 (binarized trees have at most one)
    int32_t light_edge(int32_t j) const {
        int32_t v = node(j);
        for (int32_t e : rt_->child_edges[v])
            if (rt_->base.other_end(e, v) != rt_->heavy_child[v]) return e;
        return -1;
    }

private:
    const RootedTree* rt_;
    std::vector<int32_t> w_;
};

enum class MergeSide { L, R };

// merged^R(A,B): left main edge h_{A-1}, right main edge h_B.
// merged^L(A,B): left main edge h_B, right main edge h_{A-1}.
inline PrunedSubtree merged(const RootedTree& rt, const HeavyPath& h, int32_t a, int32_t b,
                            MergeSide side) {
    if (a < 1 || b < a || b > h.positions()) throw InputError("merged: bad interval");
    int32_t ha1 = h.h_edge(a - 1);
    int32_t hb = h.h_edge(b);
    int32_t wa = h.node(a);
    int32_t wb1 = rt.base.other_end(hb, h.node(b));  // w_{b+1}
    if (side == MergeSide::R)
        return {rt.dart_from(wa, ha1), rt.dart_from(wb1, hb)};
    return {rt.dart_from(h.node(b), hb), rt.dart_from(rt.parent[wa], ha1)};
}

// |I(A,B)|: edges strictly between h_{A-1} and h_B (heavy spine edges plus the
// complete light subtrees hanging off w_A..w_B).
inline int32_t interval_edge_count(const RootedTree& rt, const HeavyPath& h, int32_t a,
                                   int32_t b) {
    if (a < 1 || b < a || b > h.positions()) throw InputError("interval: bad indices");
    return rt.sz[h.node(a)] - rt.sz[rt.base.other_end(h.h_edge(b), h.node(b))] - 1;
}

// Per-phase classification of big / special nodes for one value of m_P:
// big = subtree has >= m_P edges, special = big and light with no big light
// strict descendant. Exposes O(1) special(A,B) per heavy path via prefix sums.
class SpecialPrep {
public:
    SpecialPrep(const RootedTree& rt, int32_t m_p) : rt_(&rt), m_p_(m_p) {
        int32_t n = rt.base.node_count;
        big_.assign(n, 0);
        special_.assign(n, 0);
        std::vector<int32_t> special_below(n, 0);    // incl. the node itself
        std::vector<int32_t> big_light_below(n, 0);  // incl. the node itself
        std::vector<int32_t> order;
        order.push_back(rt.root);
        for (int32_t d : rt.tour)
            if (rt.is_down(d)) order.push_back(rt.dart_head(d));
        for (auto it = order.rbegin(); it != order.rend(); ++it) {
            int32_t v = *it;
            big_[v] = rt.sz[v] >= m_p ? 1 : 0;
            int32_t below_bl = 0, below_sp = 0;
            for (int32_t e : rt.child_edges[v]) {
                int32_t c = rt.base.other_end(e, v);
                below_bl += big_light_below[c];
                below_sp += special_below[c];
            }
            bool bl = big_[v] && rt.light[v];
            special_[v] = (bl && below_bl == 0) ? 1 : 0;
            big_light_below[v] = below_bl + (bl ? 1 : 0);
            special_below[v] = below_sp + special_[v];
        }
        // hanging[v]: special nodes inside the light subtrees of v,
        // prefix[v]: cumulative hanging along v's heavy path from its top.
        hanging_.assign(n, 0);
        prefix_.assign(n, 0);
        for (int32_t v : order) {
            for (int32_t e : rt.child_edges[v]) {
                int32_t c = rt.base.other_end(e, v);
                if (c != rt.heavy_child[v]) hanging_[v] += special_below[c];
            }
            prefix_[v] = hanging_[v] + (rt.light[v] ? 0 : prefix_[rt.parent[v]]);
        }
    }

    bool big(int32_t node) const { return big_[node] != 0; }
    bool special(int32_t node) const { return special_[node] != 0; }
    int32_t m_p() const { return m_p_; }

    // number of special nodes inside subtrees hanging off positions a..b; O(1)
    int32_t special_count(const HeavyPath& h, int32_t a, int32_t b) const {
        int32_t va = h.node(a), vb = h.node(b);
        return prefix_[vb] - prefix_[va] + hanging_[va];
    }

private:
    const RootedTree* rt_;
    int32_t m_p_;
    std::vector<char> big_, special_;
    std::vector<int32_t> hanging_, prefix_;
};

}  // namespace ted
