#pragma once

#include <algorithm>
#include <vector>

#include "ted/base.hpp"

namespace ted {

// A plane-embedded edge-labeled unrooted tree. The embedding is a rotation
// system: at every node the incident edges appear in a fixed cyclic order.
// Node 0 with its first rotation edge is the canonical anchor used whenever
// a default rooting is needed.
struct UnrootedTree {
    struct Edge {
        int32_t u = -1, v = -1;
        Label label;
    };

    int32_t node_count = 0;
    std::vector<Edge> edges;
    std::vector<std::vector<int32_t>> rot;  // per node: incident edge ids, cyclic
    // For transformed trees: edge id in the tree this one was derived from,
    // -1 for edges added by a transform. Empty for original trees.
    std::vector<int32_t> origin;

    int32_t edge_count() const { return static_cast<int32_t>(edges.size()); }

    int32_t other_end(int32_t e, int32_t at) const {
        return edges[e].u == at ? edges[e].v : edges[e].u;
    }

    int32_t degree(int32_t node) const { return static_cast<int32_t>(rot[node].size()); }

    bool has_reserved_labels() const {
        for (const Edge& e : edges)
            if (e.label.kind != LabelKind::user) return true;
        return false;
    }

    // Connectivity + acyclicity + rotation consistency.
    void validate() const {
        if (node_count <= 0) throw InputError("tree must have at least one node");
        if (edge_count() != node_count - 1)
            throw InputError("edge count must equal node count - 1");
        std::vector<int32_t> deg(node_count, 0);
        for (int32_t e = 0; e < edge_count(); ++e) {
            const Edge& ed = edges[e];
            if (ed.u < 0 || ed.u >= node_count || ed.v < 0 || ed.v >= node_count ||
                ed.u == ed.v)
                throw InputError("edge endpoints out of range");
            deg[ed.u]++;
            deg[ed.v]++;
        }
        std::vector<char> seen(edge_count(), 0);
        for (int32_t n = 0; n < node_count; ++n) {
            if (static_cast<int32_t>(rot[n].size()) != deg[n])
                throw InputError("rotation size does not match degree");
            for (int32_t e : rot[n]) {
                if (e < 0 || e >= edge_count() || (edges[e].u != n && edges[e].v != n))
                    throw InputError("rotation lists a non-incident edge");
            }
        }
        // connectivity via BFS over rotations
        if (node_count == 1) return;
        std::vector<char> vis(node_count, 0);
        std::vector<int32_t> stack = {0};
        vis[0] = 1;
        int32_t cnt = 1;
        while (!stack.empty()) {
            int32_t n = stack.back();
            stack.pop_back();
            for (int32_t e : rot[n]) {
                (void)seen;
                int32_t w = other_end(e, n);
                if (!vis[w]) {
                    vis[w] = 1;
                    cnt++;
                    stack.push_back(w);
                }
            }
        }
        if (cnt != node_count) throw InputError("tree is not connected");
    }
};

// Inserts one rooting-marker leaf after every edge in every rotation, so each
// (node, leftmost-edge) rooting of the original tree becomes the subtree of a
// single marker dart. Adds exactly 2(n-1) edges.
inline UnrootedTree augment_rootings(const UnrootedTree& t) {
    if (t.has_reserved_labels())
        throw InputError("input already contains reserved labels");
    UnrootedTree out;
    out.node_count = t.node_count;
    out.edges = t.edges;
    out.rot.resize(t.node_count);
    out.origin.resize(t.edges.size());
    for (int32_t e = 0; e < t.edge_count(); ++e)
        out.origin[e] = t.origin.empty() ? e : t.origin[e];

    Label hash = LabelTable::instance().rooting_marker();
    for (int32_t n = 0; n < t.node_count; ++n) {
        for (int32_t e : t.rot[n]) {
            out.rot[n].push_back(e);
            int32_t leaf = out.node_count++;
            int32_t ne = out.edge_count();
            out.edges.push_back({n, leaf, hash});
            out.origin.push_back(-1);
            out.rot[n].push_back(ne);
            out.rot.push_back({ne});  // the new leaf
        }
    }
    return out;
}

// Expands every node of degree d > 3 into a left-leaning chain of d-2 nodes
// joined by filler edges; the cyclic order of the original edges around the
// expanded blob is preserved. Filler edges cost 0 to contract and only match
// each other, so the optimal edit cost is unchanged.
inline UnrootedTree binarize(const UnrootedTree& t) {
    UnrootedTree out;
    out.node_count = t.node_count;
    out.rot.resize(t.node_count);
    out.edges = t.edges;
    out.origin.resize(t.edges.size());
    for (int32_t e = 0; e < t.edge_count(); ++e)
        out.origin[e] = t.origin.empty() ? e : t.origin[e];

    Label filler = LabelTable::instance().filler();
    // Edge endpoints are rewritten in place as chains are created.
    auto attach = [&](int32_t e, int32_t from, int32_t to) {
        if (out.edges[e].u == from)
            out.edges[e].u = to;
        else
            out.edges[e].v = to;
    };

    for (int32_t n = 0; n < t.node_count; ++n) {
        int32_t d = t.degree(n);
        if (d <= 3) {
            out.rot[n] = t.rot[n];
            continue;
        }
        // Chain c_0 .. c_{d-3}; c_0 is the original node id (keeps node 0 as
        // the canonical anchor). c_0 carries rotation edges (e_0, e_1),
        // middle nodes carry one edge each, the last carries (e_{d-2}, e_{d-1}).
        std::vector<int32_t> chain(static_cast<size_t>(d - 2));
        chain[0] = n;
        for (int32_t i = 1; i < d - 2; ++i) chain[static_cast<size_t>(i)] = out.node_count++;
        out.rot.resize(out.node_count);

        std::vector<int32_t> link(static_cast<size_t>(d - 3));
        for (int32_t i = 0; i < d - 3; ++i) {
            link[static_cast<size_t>(i)] = out.edge_count();
            out.edges.push_back({chain[static_cast<size_t>(i)], chain[static_cast<size_t>(i) + 1], filler});
            out.origin.push_back(-1);
        }

        const std::vector<int32_t>& r = t.rot[n];
        out.rot[n] = {r[0], r[1], link[0]};
        attach(r[0], n, n);
        attach(r[1], n, n);
        for (int32_t i = 1; i < d - 3; ++i) {
            int32_t c = chain[static_cast<size_t>(i)];
            out.rot[c] = {link[static_cast<size_t>(i) - 1], r[static_cast<size_t>(i) + 1], link[static_cast<size_t>(i)]};
            attach(r[static_cast<size_t>(i) + 1], n, c);
        }
        int32_t last = chain[static_cast<size_t>(d - 3)];
        out.rot[last] = {link[static_cast<size_t>(d - 4)], r[static_cast<size_t>(d) - 2], r[static_cast<size_t>(d) - 1]};
        attach(r[static_cast<size_t>(d) - 2], n, last);
        attach(r[static_cast<size_t>(d) - 1], n, last);
    }
    return out;
}

}  // namespace ted
