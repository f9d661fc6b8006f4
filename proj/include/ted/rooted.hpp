#pragma once

#include <algorithm>
#include <vector>

#include "ted/tree.hpp"

namespace ted {

// A dart is a directed view of an edge: dart 2e runs edges[e].u -> edges[e].v,
// dart 2e+1 the other way. partner(d) is the same edge traversed backwards.
inline int32_t dart_partner(int32_t d) { return d ^ 1; }
inline int32_t dart_edge(int32_t d) { return d >> 1; }

// A pruned subtree: what remains of some rooting of the tree after a sequence
// of leftmost/rightmost root-edge contractions. Equivalently a cyclic interval
// of the Euler tour. s is the first dart of the interval (the left main edge
// pointing away from the root region), t the last (the right main edge
// pointing into it). Empty is the explicit {-1,-1} state.
struct PrunedSubtree {
    int32_t s = -1;
    int32_t t = -1;

    static PrunedSubtree empty() { return {}; }
    static PrunedSubtree single(int32_t dart) { return {dart, dart_partner(dart)}; }

    bool is_empty() const { return s < 0; }
    bool is_single() const { return !is_empty() && t == dart_partner(s); }
    bool is_pair() const { return !is_empty() && t != dart_partner(s); }

    friend bool operator==(PrunedSubtree a, PrunedSubtree b) {
        return a.s == b.s && a.t == b.t;
    }
    friend bool operator!=(PrunedSubtree a, PrunedSubtree b) { return !(a == b); }

    uint32_t key() const {
        return (static_cast<uint32_t>(static_cast<uint16_t>(s)) << 16) |
               static_cast<uint16_t>(t);
    }
};

enum class NavMove {
    l,
    r,
    drop_l_edge,
    drop_r_edge,
    drop_L,
    drop_R,
    take_L,
    take_R,
};

// A rooted, plane-embedded view of an UnrootedTree: parent/child arrays,
// the full Euler tour of darts, heavy path decomposition and the per-node
// pointers needed for constant-time pruned-subtree navigation.
class RootedTree {
public:
    UnrootedTree base;
    int32_t root = 0;
    int32_t E = 0;  // edge count

    std::vector<int32_t> parent;       // node -> parent node, -1 at root
    std::vector<int32_t> parent_edge;  // node -> edge id to parent, -1 at root
    std::vector<int32_t> depth;        // edge depth, 0 at root
    std::vector<std::vector<int32_t>> child_edges;  // left-to-right
    std::vector<int32_t> sz;           // subtree size in edges (= #descendants)

    std::vector<int32_t> tour;  // 2E darts, face traversal from the root dart
    std::vector<int32_t> pos;   // dart -> tour position

    std::vector<int32_t> heavy_child;  // node -> node, -1 at leaves
    std::vector<char> light;
    std::vector<int32_t> path_id;
    std::vector<int32_t> path_index;               // 0-based index within path node list
    std::vector<std::vector<int32_t>> paths;       // nodes top-down
    std::vector<int32_t> paths_bottom_up;          // path ids, every path after all paths below it
    std::vector<int32_t> apex_of;                  // node -> top node of its heavy path
    std::vector<int32_t> ldepth;

    // Navigation pointers (the LCA-based drop_L/drop_R machinery).
    std::vector<int32_t> up_right;        // node -> down-dart of first edge right of its root path, -1 if none
    std::vector<int32_t> up_left;         // symmetric
    std::vector<int32_t> leftmost_leaf;   // node -> node
    std::vector<int32_t> rightmost_leaf;  // node -> node

    RootedTree() = default;

    // --- darts ------------------------------------------------------------

    int32_t dart_tail(int32_t d) const {
        const auto& e = base.edges[dart_edge(d)];
        return (d & 1) ? e.v : e.u;
    }
    int32_t dart_head(int32_t d) const {
        const auto& e = base.edges[dart_edge(d)];
        return (d & 1) ? e.u : e.v;
    }
    int32_t dart_from(int32_t node, int32_t e) const {
        return base.edges[e].u == node ? 2 * e : 2 * e + 1;
    }
    // dart running parent -> child along the rooting
    int32_t down_dart(int32_t e) const {
        int32_t u = base.edges[e].u, v = base.edges[e].v;
        return parent[v] == u ? dart_from(u, e) : dart_from(v, e);
    }
    int32_t up_dart(int32_t e) const { return dart_partner(down_dart(e)); }
    bool is_down(int32_t d) const { return parent[dart_head(d)] == dart_tail(d); }

    int32_t next_dart(int32_t d) const { return tour[(pos[d] + 1) % (2 * E)]; }
    int32_t prev_dart(int32_t d) const { return tour[(pos[d] + 2 * E - 1) % (2 * E)]; }

    Label dart_label(int32_t d) const { return base.edges[dart_edge(d)].label; }

    // --- intervals ----------------------------------------------------------

    int32_t rel(PrunedSubtree f, int32_t d) const {
        return static_cast<int32_t>((pos[d] - pos[f.s] + 2 * E) % (2 * E));
    }
    bool dart_in(PrunedSubtree f, int32_t d) const { return rel(f, d) <= rel(f, f.t); }
    bool edge_in(PrunedSubtree f, int32_t e) const {
        return !f.is_empty() && dart_in(f, 2 * e) && dart_in(f, 2 * e + 1);
    }
    int32_t interval_len(PrunedSubtree f) const { return rel(f, f.t) + 1; }

    int32_t lca(int32_t a, int32_t b) const {
        if (first_occ_[a] > first_occ_[b]) std::swap(a, b);
        return rmq(first_occ_[a], first_occ_[b]);
    }
    int32_t node_dist(int32_t a, int32_t b) const {
        return depth[a] + depth[b] - 2 * depth[lca(a, b)];
    }

    int32_t size_edges(PrunedSubtree f) const {
        if (f.is_empty()) return 0;
        return (interval_len(f) - node_dist(dart_tail(f.s), dart_head(f.t))) / 2;
    }

    // Top node of the heavy path containing the lowest common ancestor of all
    // edges of f (the lowest light ancestor).
    int32_t apex(PrunedSubtree f) const {
        return apex_of[lca(dart_tail(f.s), dart_head(f.t))];
    }

    // --- pruned subtree construction ---------------------------------------

    // The whole tree below the rooting dart.
    PrunedSubtree whole() const {
        if (E == 0) return PrunedSubtree::empty();
        return {tour[0], tour[2 * E - 1]};
    }
    // subtree(d): everything strictly below the head of d (excluding edge d).
    PrunedSubtree subtree(int32_t d) const {
        int32_t n = next_dart(d);
        if (n == dart_partner(d)) return PrunedSubtree::empty();
        return {n, prev_dart(dart_partner(d))};
    }

    // --- navigation ---------------------------------------------------------

    int32_t l_dart(PrunedSubtree f) const {
        if (f.is_empty()) throw StateError("l of empty pruned subtree");
        return f.s;
    }
    int32_t r_dart(PrunedSubtree f) const {
        if (f.is_empty()) throw StateError("r of empty pruned subtree");
        return f.t;
    }

    PrunedSubtree take_L(PrunedSubtree f) const {
        if (f.is_empty()) throw StateError("take_L of empty pruned subtree");
        return subtree(f.s);
    }
    PrunedSubtree take_R(PrunedSubtree f) const {
        if (f.is_empty()) throw StateError("take_R of empty pruned subtree");
        return subtree(dart_partner(f.t));
    }

    PrunedSubtree drop_l_edge(PrunedSubtree f) const {
        if (f.is_empty()) throw StateError("drop_l_edge of empty pruned subtree");
        if (f.is_single()) return subtree(f.s);
        int32_t n = next_dart(f.s);
        if (n != dart_partner(f.s)) return {n, f.t};  // L_F nonempty
        return drop_L(f);
    }
    PrunedSubtree drop_r_edge(PrunedSubtree f) const {
        if (f.is_empty()) throw StateError("drop_r_edge of empty pruned subtree");
        if (f.is_single()) return subtree(f.s);
        int32_t p = prev_dart(f.t);
        if (p != dart_partner(f.t)) return {f.s, p};  // R_F nonempty
        return drop_R(f);
    }

    // F - L_F: drops the left main edge together with its subtree. The new
    // left main edge is found in O(1). Writing x = tail(l_F), y = head(r_F)
    // and z = lca(x,y) (the top of F's contracted root path): the next edge
    // of F after the dropped block either hangs right of the path x..z
    // (first-edge-beside-the-path pointers, valid strictly below z), sits at
    // the z boundary itself, or hangs left of the path z..y, reached with a
    // leftmost-leaf + LCA jump. If nothing is left before r_F the result is
    // the Single form of r_F.
    PrunedSubtree drop_L(PrunedSubtree f) const {
        if (f.is_empty()) throw StateError("drop_L of empty pruned subtree");
        if (f.is_single()) return PrunedSubtree::empty();
        int32_t cand = next_dart(dart_partner(f.s));
        if (edge_in(f, dart_edge(cand))) return {cand, f.t};
        int32_t x = dart_tail(f.s), y = dart_head(f.t);
        int32_t z = lca(x, y);
        int32_t q1;
        if (dart_head(cand) != parent[x]) {
            q1 = dart_head(cand);  // spine dives at x itself (z == x)
        } else {
            int32_t f1 = up_right[x];
            // strictly below z: always an edge of F
            if (f1 >= 0 && depth[dart_tail(f1)] > depth[z]) return {f1, f.t};
            // at z: the cyclic successor of the x-side attachment is the next
            // child edge, then the parent edge of z (wrapped shapes), then the
            // first child edge; the first of these in F wins, otherwise we hit
            // the spine child toward y and descend.
            int32_t g = (f1 >= 0 && dart_tail(f1) == z) ? f1 : -1;
            if (g < 0) {
                if (parent[z] >= 0 && edge_in(f, parent_edge[z]))
                    return {dart_from(z, parent_edge[z]), f.t};
                g = down_dart(child_edges[z].front());
            }
            if (edge_in(f, dart_edge(g))) return {g, f.t};
            q1 = dart_head(g);
        }
        int32_t w = lca(leftmost_leaf[q1], y);
        return {down_dart(child_edges[w].front()), f.t};
    }

    PrunedSubtree drop_R(PrunedSubtree f) const {
        if (f.is_empty()) throw StateError("drop_R of empty pruned subtree");
        if (f.is_single()) return PrunedSubtree::empty();
        int32_t cand = prev_dart(dart_partner(f.t));
        if (edge_in(f, dart_edge(cand))) return {f.s, cand};
        int32_t x = dart_tail(f.s), y = dart_head(f.t);
        int32_t z = lca(x, y);
        int32_t q1;
        if (dart_tail(cand) != parent[y]) {
            q1 = dart_tail(cand);  // walk entered y from below (z == y)
        } else {
            int32_t f1 = up_left[y];
            if (f1 >= 0 && depth[dart_tail(f1)] > depth[z]) return {f.s, dart_partner(f1)};
            int32_t g = (f1 >= 0 && dart_tail(f1) == z) ? f1 : -1;
            if (g < 0) {
                if (parent[z] >= 0 && edge_in(f, parent_edge[z]))
                    return {f.s, dart_from(parent[z], parent_edge[z])};
                g = down_dart(child_edges[z].back());
            }
            if (edge_in(f, dart_edge(g))) return {f.s, dart_partner(g)};
            q1 = dart_head(g);
        }
        int32_t w = lca(rightmost_leaf[q1], x);
        return {f.s, dart_partner(down_dart(child_edges[w].back()))};
    }

    // Uniform dispatch. `l`/`r` yield a dart (reported in NavResult::dart),
    // everything else a pruned subtree.
    struct NavResult {
        bool is_dart = false;
        int32_t dart = -1;
        PrunedSubtree tree;
    };
    NavResult navigate(PrunedSubtree f, NavMove m) const {
        switch (m) {
            case NavMove::l: return {true, l_dart(f), {}};
            case NavMove::r: return {true, r_dart(f), {}};
            case NavMove::drop_l_edge: return {false, -1, drop_l_edge(f)};
            case NavMove::drop_r_edge: return {false, -1, drop_r_edge(f)};
            case NavMove::drop_L: return {false, -1, drop_L(f)};
            case NavMove::drop_R: return {false, -1, drop_R(f)};
            case NavMove::take_L: return {false, -1, take_L(f)};
            case NavMove::take_R: return {false, -1, take_R(f)};
        }
        throw StateError("bad move");
    }

private:
    // LCA: Euler tour of nodes + sparse table (O(n log n) space, O(1) query).
    std::vector<int32_t> euler_nodes_;
    std::vector<int32_t> first_occ_;
    std::vector<std::vector<int32_t>> sparse_;  // positions of min depth
    std::vector<int32_t> log2_;

    int32_t rmq(int32_t lo, int32_t hi) const {
        int32_t k = log2_[hi - lo + 1];
        int32_t a = sparse_[static_cast<size_t>(k)][static_cast<size_t>(lo)];
        int32_t b = sparse_[static_cast<size_t>(k)][static_cast<size_t>(hi - (1 << k) + 1)];
        return depth[euler_nodes_[a]] <= depth[euler_nodes_[b]] ? euler_nodes_[a]
                                                                : euler_nodes_[b];
    }

    friend RootedTree root_at(const UnrootedTree& t, int32_t root_node, int32_t first_edge);

    void build(int32_t first_edge);
};

inline void RootedTree::build(int32_t first_edge) {
    int32_t n = base.node_count;
    E = base.edge_count();
    parent.assign(n, -1);
    parent_edge.assign(n, -1);
    depth.assign(n, 0);
    child_edges.assign(n, {});
    sz.assign(n, 0);

    // rotation index of an edge at each endpoint
    std::vector<int32_t> idx_u(E), idx_v(E);
    for (int32_t v = 0; v < n; ++v)
        for (size_t k = 0; k < base.rot[v].size(); ++k) {
            int32_t e = base.rot[v][k];
            (base.edges[e].u == v ? idx_u[e] : idx_v[e]) = static_cast<int32_t>(k);
        }
    auto rot_index = [&](int32_t node, int32_t e) {
        return base.edges[e].u == node ? idx_u[e] : idx_v[e];
    };

    tour.clear();
    pos.assign(2 * E, -1);
    if (E > 0) {
        int32_t d0 = dart_from(root, first_edge);
        int32_t d = d0;
        do {
            pos[d] = static_cast<int32_t>(tour.size());
            tour.push_back(d);
            int32_t v = dart_head(d);
            int32_t i = rot_index(v, dart_edge(d));
            int32_t f = base.rot[v][(static_cast<size_t>(i) + 1) % base.rot[v].size()];
            d = dart_from(v, f);
        } while (d != d0);
        TED_CHECK(static_cast<int32_t>(tour.size()) == 2 * E, "tour must visit every dart");
    }

    // first arrival at a node is via its parent (face walk is depth-first)
    for (int32_t d : tour) {
        int32_t v = dart_head(d);
        if (v != root && parent[v] == -1) {
            int32_t u = dart_tail(d);
            parent[v] = u;
            parent_edge[v] = dart_edge(d);
            depth[v] = depth[u] + 1;
            child_edges[u].push_back(dart_edge(d));
        }
    }
    for (int32_t p = 2 * E - 1; p >= 0; --p) {
        int32_t d = tour[p];
        if (is_down(d)) sz[dart_tail(d)] += sz[dart_head(d)] + 1;
    }

    // heavy paths
    heavy_child.assign(n, -1);
    light.assign(n, 0);
    for (int32_t v = 0; v < n; ++v) {
        int32_t best = -1, best_sz = -1;
        for (int32_t e : child_edges[v]) {
            int32_t c = base.other_end(e, v);
            if (sz[c] + 1 > best_sz) {
                best_sz = sz[c] + 1;
                best = c;
            }
        }
        heavy_child[v] = best;
    }
    light[root] = 1;
    for (int32_t v = 0; v < n; ++v)
        for (int32_t e : child_edges[v]) {
            int32_t c = base.other_end(e, v);
            if (c != heavy_child[v]) light[c] = 1;
        }

    path_id.assign(n, -1);
    path_index.assign(n, -1);
    apex_of.assign(n, -1);
    ldepth.assign(n, 0);
    paths.clear();
    // nodes in tour order => parents before children
    std::vector<int32_t> order;
    order.reserve(static_cast<size_t>(n));
    order.push_back(root);
    for (int32_t d : tour)
        if (is_down(d)) order.push_back(dart_head(d));
    for (int32_t v : order) {
        ldepth[v] = (parent[v] >= 0 ? ldepth[parent[v]] : 0) + (light[v] ? 1 : 0);
        if (light[v]) {
            path_id[v] = static_cast<int32_t>(paths.size());
            paths.emplace_back();
        } else {
            path_id[v] = path_id[parent[v]];
        }
        path_index[v] = static_cast<int32_t>(paths[path_id[v]].size());
        paths[path_id[v]].push_back(v);
        apex_of[v] = paths[path_id[v]].front();
    }
    paths_bottom_up.resize(paths.size());
    for (size_t i = 0; i < paths.size(); ++i) paths_bottom_up[i] = static_cast<int32_t>(i);
    std::sort(paths_bottom_up.begin(), paths_bottom_up.end(), [&](int32_t a, int32_t b) {
        return depth[paths[a].front()] > depth[paths[b].front()];
    });

    // navigation pointers
    up_right.assign(n, -1);
    up_left.assign(n, -1);
    leftmost_leaf.assign(n, -1);
    rightmost_leaf.assign(n, -1);
    for (int32_t v : order) {
        if (v == root) continue;
        int32_t p = parent[v];
        const auto& ce = child_edges[p];
        size_t i = 0;
        while (base.other_end(ce[i], p) != v) ++i;
        up_right[v] = i + 1 < ce.size() ? down_dart(ce[i + 1]) : up_right[p];
        up_left[v] = i > 0 ? down_dart(ce[i - 1]) : up_left[p];
    }
    for (auto it = order.rbegin(); it != order.rend(); ++it) {
        int32_t v = *it;
        if (child_edges[v].empty()) {
            leftmost_leaf[v] = rightmost_leaf[v] = v;
        } else {
            leftmost_leaf[v] = leftmost_leaf[base.other_end(child_edges[v].front(), v)];
            rightmost_leaf[v] = rightmost_leaf[base.other_end(child_edges[v].back(), v)];
        }
    }

    // LCA structure
    euler_nodes_.clear();
    first_occ_.assign(n, -1);
    euler_nodes_.push_back(root);
    first_occ_[root] = 0;
    for (int32_t d : tour) {
        int32_t v = dart_head(d);
        if (first_occ_[v] < 0) first_occ_[v] = static_cast<int32_t>(euler_nodes_.size());
        euler_nodes_.push_back(v);
    }
    int32_t m = static_cast<int32_t>(euler_nodes_.size());
    log2_.assign(static_cast<size_t>(m) + 1, 0);
    for (int32_t i = 2; i <= m; ++i) log2_[static_cast<size_t>(i)] = log2_[static_cast<size_t>(i) / 2] + 1;
    int32_t levels = log2_[static_cast<size_t>(m)] + 1;
    sparse_.assign(static_cast<size_t>(levels), std::vector<int32_t>(static_cast<size_t>(m)));
    for (int32_t i = 0; i < m; ++i) sparse_[0][static_cast<size_t>(i)] = i;
    for (int32_t k = 1; k < levels; ++k)
        for (int32_t i = 0; i + (1 << k) <= m; ++i) {
            int32_t a = sparse_[static_cast<size_t>(k) - 1][static_cast<size_t>(i)];
            int32_t b = sparse_[static_cast<size_t>(k) - 1][static_cast<size_t>(i + (1 << (k - 1)))];
            sparse_[static_cast<size_t>(k)][static_cast<size_t>(i)] =
                depth[euler_nodes_[a]] <= depth[euler_nodes_[b]] ? a : b;
        }
}

// Roots t at `root_node` with `first_edge` as the leftmost root edge.
inline RootedTree root_at(const UnrootedTree& t, int32_t root_node, int32_t first_edge) {
    t.validate();
    if (root_node < 0 || root_node >= t.node_count)
        throw InputError("rooting node out of range");
    if (t.edge_count() > 0) {
        if (first_edge < 0 || first_edge >= t.edge_count())
            throw InputError("rooting edge out of range");
        if (t.edges[first_edge].u != root_node && t.edges[first_edge].v != root_node)
            throw InputError("rooting edge not incident to rooting node");
    }
    RootedTree rt;
    rt.base = t;
    rt.root = root_node;
    rt.build(first_edge);
    return rt;
}

// Canonical rooting: node 0 with its first rotation edge as leftmost.
inline RootedTree root_canonical(const UnrootedTree& t) {
    return root_at(t, 0, t.node_count > 1 ? t.rot[0][0] : -1);
}

}  // namespace ted
