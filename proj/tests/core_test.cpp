#include <catch2/catch_amalgamated.hpp>

#include "helpers.hpp"
#include "ted/gen.hpp"
#include "ted/text.hpp"

using namespace ted;
using namespace ted::testing;

TEST_CASE("cost arithmetic saturates and compares totally") {
    Cost a = Cost::units(3), b = Cost::units(4);
    CHECK((a + b).v == 7 * Cost::kScale);
    CHECK((a + Cost::inf()).is_inf());
    CHECK((Cost::inf() + Cost::inf()).is_inf());
    CHECK(a < b);
    CHECK(a < Cost::inf());
    CHECK_FALSE(Cost::inf() < Cost::inf());
    CHECK(Cost::inf() == Cost::inf());
    CHECK(Cost::units(1).str() == "1.000000");
    CHECK(Cost(1500000).str() == "1.500000");
    CHECK(Cost::inf().str() == "inf");
}

TEST_CASE("tree text parses and round-trips") {
    CHECK(parse_tree("()").node_count == 1);
    UnrootedTree t = parse_tree("(a:(),b:(c:()))");
    CHECK(t.node_count == 4);
    CHECK(t.edge_count() == 3);
    std::string s = serialize_tree(t);
    UnrootedTree t2 = parse_tree(s);
    CHECK(t2.node_count == t.node_count);
    CHECK(serialize_tree(t2) == s);

    CHECK_THROWS_AS(parse_tree("(a:()"), InputError);
    CHECK_THROWS_AS(parse_tree("(a())"), InputError);
    CHECK_THROWS_AS(parse_tree("(a:()) x"), InputError);
    CHECK_THROWS_AS(parse_tree(""), InputError);
}

TEST_CASE("random trees round-trip through text") {
    for (uint64_t seed = 0; seed < 30; ++seed) {
        UnrootedTree t = random_tree(1 + static_cast<int32_t>(seed % 17), TreeShape::uniform, seed);
        std::string s = serialize_tree(t);
        CHECK(serialize_tree(parse_tree(s)) == s);
    }
}

TEST_CASE("cost files") {
    CostModel cm = parse_costs("");
    Label a = LabelTable::instance().user("a"), b = LabelTable::instance().user("b");
    CHECK(cm.del(a) == Cost::units(1));
    CHECK(cm.match(a, a) == Cost::zero());
    CHECK(cm.match(a, b) == Cost::units(1));

    cm = parse_costs("match a b 0.5\ndel x inf\ndefault match_ne 2\n");
    Label x = LabelTable::instance().user("x");
    CHECK(cm.match(a, b).v == 500000);
    CHECK(cm.match(b, a).v == 500000);
    CHECK(cm.del(x).is_inf());
    CHECK(cm.match(a, x) == Cost::units(2));

    CHECK_THROWS_AS(parse_costs("del a -1"), InputError);
    CHECK_THROWS_AS(parse_costs("bogus a 1"), InputError);
    CHECK_THROWS_AS(parse_costs("del a 1.1234567"), InputError);

    // reserved rules are fixed
    Label hash = LabelTable::instance().rooting_marker();
    Label fill = LabelTable::instance().filler();
    Label dollar = LabelTable::instance().gadget_anchor();
    CHECK(cm.del(hash) == Cost::zero());
    CHECK(cm.match(hash, hash).is_inf());
    CHECK(cm.match(hash, a).is_inf());
    CHECK(cm.del(fill) == Cost::zero());
    CHECK(cm.match(fill, fill) == Cost::zero());
    CHECK(cm.match(fill, a).is_inf());
    CHECK(cm.del(dollar).is_inf());
    CHECK(cm.match(dollar, dollar) == Cost::zero());
    CHECK(cm.match(dollar, b).is_inf());
}

TEST_CASE("augment_rootings adds 2(n-1) marker leaves interleaved") {
    // single edge: 2 markers added, 3 edges total
    UnrootedTree t = parse_tree("(a:())");
    UnrootedTree g = augment_rootings(t);
    CHECK(g.edge_count() == 3);
    CHECK(g.node_count == 4);

    // star with k edges: center gains k markers, each leaf one
    t = random_tree(6, TreeShape::star, 1);
    g = augment_rootings(t);
    CHECK(g.degree(0) == 2 * t.degree(0));
    for (int32_t v = 1; v < t.node_count; ++v) CHECK(g.degree(v) == 2);

    // path of 3 nodes: 4 markers
    t = random_tree(3, TreeShape::path, 2);
    g = augment_rootings(t);
    CHECK(g.edge_count() - t.edge_count() == 4);

    // original rotation order preserved when markers are ignored
    t = random_tree(9, TreeShape::uniform, 3);
    g = augment_rootings(t);
    for (int32_t v = 0; v < t.node_count; ++v) {
        std::vector<int32_t> orig;
        for (int32_t e : g.rot[v])
            if (g.edges[e].label.kind == LabelKind::user) orig.push_back(e);
        CHECK(orig == t.rot[v]);
    }
    CHECK_THROWS_AS(augment_rootings(g), InputError);
}

TEST_CASE("binarize bounds degrees and preserves rotation order") {
    UnrootedTree path = random_tree(5, TreeShape::path, 4);
    UnrootedTree b = binarize(path);
    CHECK(b.node_count == path.node_count);
    CHECK(b.edge_count() == path.edge_count());

    UnrootedTree star = random_tree(6, TreeShape::star, 5);  // center degree 5
    b = binarize(star);
    CHECK(b.node_count == star.node_count + 2);  // chain of 3 = 2 extra nodes
    CHECK(b.edge_count() == star.edge_count() + 2);
    int32_t fillers = 0;
    for (const auto& e : b.edges)
        if (e.label.kind == LabelKind::binarization_filler) fillers++;
    CHECK(fillers == 2);
    for (int32_t v = 0; v < b.node_count; ++v) CHECK(b.degree(v) <= 3);

    for (uint64_t seed = 0; seed < 20; ++seed) {
        UnrootedTree t = random_tree(2 + static_cast<int32_t>(seed), TreeShape::uniform, seed);
        UnrootedTree bt = binarize(augment_rootings(t));
        bt.validate();
        for (int32_t v = 0; v < bt.node_count; ++v) CHECK(bt.degree(v) <= 3);
    }
}

TEST_CASE("root_at basics") {
    UnrootedTree t = parse_tree("(a:(b:()))");  // path of 3 nodes
    RootedTree rt = root_canonical(t);
    CHECK(rt.root == 0);
    CHECK(rt.depth[2] == 2);

    // two darts of the same edge give mirror rooted trees
    UnrootedTree y = parse_tree("(a:(),b:(),c:())");
    RootedTree r1 = root_at(y, 0, y.rot[0][0]);
    RootedTree r2 = root_at(y, 1, 0);
    CHECK(r1.child_edges[0].size() == 3);
    CHECK(r2.child_edges[1].size() == 1);

    CHECK_THROWS_AS(root_at(y, 7, 0), InputError);
    UnrootedTree p3 = parse_tree("(a:(b:()))");
    CHECK_THROWS_AS(root_at(p3, 0, 1), InputError);  // edge b not incident to node 0
}

TEST_CASE("heavy decomposition") {
    // path rooted at an end: one heavy path, root the only light node
    UnrootedTree p = random_tree(8, TreeShape::path, 6);
    RootedTree rt = root_at(p, 0, p.rot[0][0]);
    CHECK(rt.paths.size() == 1);
    int64_t sum_light = 0;
    for (int32_t v = 0; v < rt.base.node_count; ++v)
        if (rt.light[v]) sum_light += rt.sz[v] + 1;
    CHECK(sum_light == 8);  // only the root is light; |T^root| in nodes

    // complete binary tree on 7 nodes: ties break to the leftmost child
    UnrootedTree fb = random_tree(7, TreeShape::full_binary, 7);
    RootedTree rb = root_canonical(fb);
    for (int32_t v = 0; v < 7; ++v) {
        if (rb.child_edges[v].empty()) continue;
        CHECK(rb.heavy_child[v] == rb.base.other_end(rb.child_edges[v].front(), v));
    }
    CHECK(rb.paths.size() == 4);

    // ldepth bound and Eq.(1): sum over light of |T^v| == sum of ldepth
    for (uint64_t seed = 0; seed < 25; ++seed) {
        UnrootedTree t = random_tree(2 + static_cast<int32_t>(seed * 3 % 40), TreeShape::uniform, seed);
        RootedTree r = root_canonical(t);
        int32_t n = r.base.node_count;
        int32_t bound = 1;
        while ((1 << bound) <= n) ++bound;  // floor(log2 n) + 1
        int64_t lhs = 0, rhs = 0;
        for (int32_t v = 0; v < n; ++v) {
            CHECK(r.ldepth[v] <= bound);
            if (r.light[v]) lhs += r.sz[v] + 1;
            rhs += r.ldepth[v];
        }
        CHECK(lhs == rhs);
    }
}

static RootedTree transformed(uint64_t seed, int32_t n, TreeShape shape = TreeShape::uniform) {
    UnrootedTree t = random_tree(n, shape, seed);
    return root_canonical(binarize(augment_rootings(t)));
}

TEST_CASE("valid-pair predicate matches BFS enumeration of pruned subtrees") {
    for (uint64_t seed = 0; seed < 8; ++seed) {
        RootedTree rt = transformed(seed, 2 + static_cast<int32_t>(seed));
        auto all = all_pruned_unrooted(rt);
        std::set<std::pair<int32_t, int32_t>> bfs;
        for (auto f : all) bfs.insert({f.s, f.t});
        // predicate: boundary darts whose edges are fully inside the interval
        std::set<std::pair<int32_t, int32_t>> pred;
        for (int32_t s = 0; s < 2 * rt.E; ++s)
            for (int32_t t2 = 0; t2 < 2 * rt.E; ++t2) {
                if (s == t2) continue;
                PrunedSubtree f{s, t2};
                if (dart_edge(s) == dart_edge(t2) && t2 != dart_partner(s)) continue;
                if (!rt.dart_in(f, dart_partner(s)) || !rt.dart_in(f, dart_partner(t2))) continue;
                pred.insert({s, t2});
            }
        CHECK(bfs == pred);
    }
}

TEST_CASE("navigate agrees with the Euler-interval reference") {
    int64_t checked = 0;
    for (uint64_t seed = 0; seed < 6; ++seed) {
        RootedTree rt = transformed(seed, 3 + static_cast<int32_t>(seed));
        auto all = all_pruned_unrooted(rt);
        for (const auto& f : all) {
            for (NavMove m : {NavMove::drop_l_edge, NavMove::drop_r_edge, NavMove::drop_L,
                              NavMove::drop_R, NavMove::take_L, NavMove::take_R}) {
                PrunedSubtree got = rt.navigate(f, m).tree;
                PrunedSubtree want = ref_navigate(rt, f, m);
                if (got != want) {
                    CAPTURE(seed, f.s, f.t, static_cast<int>(m));
                    REQUIRE(got == want);
                }
                ++checked;
            }
        }
    }
    CHECK(checked >= 10000);
    // moves on Empty throw
    RootedTree rt = transformed(0, 4);
    CHECK_THROWS_AS(rt.drop_L(PrunedSubtree::empty()), StateError);
    CHECK_THROWS_AS(rt.l_dart(PrunedSubtree::empty()), StateError);
}

TEST_CASE("size and contraction cost match naive recomputation") {
    for (uint64_t seed = 0; seed < 6; ++seed) {
        RootedTree rt = transformed(seed, 3 + static_cast<int32_t>(seed), TreeShape::uniform);
        CostModel cm = random_cost_model(seed);
        NavIndex nav(rt, cm);
        for (const auto& f : all_pruned_unrooted(rt)) {
            auto edges = ref_edge_set(rt, f);
            CHECK(rt.size_edges(f) == static_cast<int32_t>(edges.size()));
            Cost want = Cost::zero();
            for (int32_t e : edges) want += cm.del(rt.base.edges[e].label);
            CHECK(nav.contraction_cost(f) == want);
        }
        CHECK(nav.contraction_cost(PrunedSubtree::empty()) == Cost::zero());
        // whole tree, unit costs: edge count
        NavIndex unit(rt, CostModel::unit());
        int32_t user_edges = 0;
        for (const auto& e : rt.base.edges)
            if (e.label.kind == LabelKind::user) user_edges++;
        CHECK(unit.contraction_cost(rt.whole()) == Cost::units(user_edges));
    }
}

TEST_CASE("take_L of a single-root-edge tree is its subtree, drop_L empty") {
    RootedTree rt = transformed(3, 5);
    for (int32_t d = 0; d < 2 * rt.E; ++d) {
        PrunedSubtree f = PrunedSubtree::single(d);
        CHECK(rt.take_L(f) == rt.subtree(d));
        CHECK(rt.drop_L(f).is_empty());
        CHECK(rt.drop_l_edge(f) == rt.subtree(d));
    }
    // whole tree: repeated drop_l_edge reaches empty in exactly |F| steps
    PrunedSubtree f = rt.whole();
    int32_t steps = 0;
    while (!f.is_empty()) {
        f = rt.drop_l_edge(f);
        ++steps;
    }
    CHECK(steps == rt.E);
}

TEST_CASE("merged subtrees match the interval oracle") {
    int64_t cases = 0;
    for (uint64_t seed = 0; seed < 14; ++seed) {
        TreeShape shape = seed % 2 ? TreeShape::caterpillar : TreeShape::uniform;
        RootedTree rt = transformed(seed, 6 + static_cast<int32_t>(seed % 7) * 3, shape);
        for (size_t pid = 0; pid < rt.paths.size(); ++pid) {
            HeavyPath h(rt, static_cast<int32_t>(pid));
            if (!h.has_h0()) continue;
            for (int32_t a = 1; a <= h.positions(); ++a)
                for (int32_t b = a; b <= h.positions(); ++b) {
                    for (MergeSide side : {MergeSide::L, MergeSide::R}) {
                        PrunedSubtree m = merged(rt, h, a, b, side);
                        // reference: edge set = everything except the strict
                        // spine h_A..h_{B-1} and subtrees on the wrong side
                        auto got = ref_set(rt, m);
                        // sanity: main edges as defined
                        if (side == MergeSide::R) {
                            CHECK(dart_edge(m.s) == h.h_edge(a - 1));
                            CHECK(dart_edge(m.t) == h.h_edge(b));
                        } else {
                            CHECK(dart_edge(m.s) == h.h_edge(b));
                            CHECK(dart_edge(m.t) == h.h_edge(a - 1));
                        }
                        CHECK(got.count(h.h_edge(a - 1)) == 1);
                        CHECK(got.count(h.h_edge(b)) == 1);
                        for (int32_t j = a; j < b; ++j) CHECK(got.count(h.h_edge(j)) == 0);
                        ++cases;
                    }
                    // merged^R(A,A)/merged^L(A,A) covers subtree(l_A^up)
                    if (a == b && h.light_edge(a) >= 0) {
                        int32_t le = h.light_edge(a);
                        PrunedSubtree sub = rt.subtree(rt.up_dart(le));
                        PrunedSubtree mr = merged(rt, h, a, a, MergeSide::R);
                        PrunedSubtree ml = merged(rt, h, a, a, MergeSide::L);
                        CHECK((sub == mr || sub == ml));
                    }
                }
        }
        CHECK_THROWS_AS(merged(rt, HeavyPath(rt, 0), 0, 0, MergeSide::R), InputError);
    }
    CHECK(cases >= 1000);
}

TEST_CASE("interval_and_special against DFS recomputation") {
    for (uint64_t seed = 0; seed < 10; ++seed) {
        RootedTree rt = transformed(seed, 5 + static_cast<int32_t>(seed % 7));
        for (int32_t m_p : {1, 2, 3, 5, 8}) {
            SpecialPrep prep(rt, m_p);
            for (size_t pid = 0; pid < rt.paths.size(); ++pid) {
                HeavyPath h(rt, static_cast<int32_t>(pid));
                if (!h.has_h0()) continue;
                for (int32_t a = 1; a <= h.positions(); ++a)
                    for (int32_t b = a; b <= h.positions(); ++b) {
                        // |I(A,B)| reference: subtree(h_{A-1} down) minus
                        // subtree(h_B down) minus h_B itself
                        PrunedSubtree ia = rt.subtree(rt.down_dart(h.h_edge(a - 1)));
                        PrunedSubtree ib = rt.subtree(rt.down_dart(h.h_edge(b)));
                        auto ea = ref_set(rt, ia);
                        auto eb = ref_set(rt, ib);
                        int32_t want = 0;
                        for (int32_t e : ea)
                            if (!eb.count(e) && e != h.h_edge(b)) want++;
                        CHECK(interval_edge_count(rt, h, a, b) == want);
                        // special reference: direct scan
                        int32_t wsp = 0;
                        for (int32_t v = 0; v < rt.base.node_count; ++v) {
                            if (!prep.special(v)) continue;
                            // inside a subtree hanging off w_a..w_b?
                            for (int32_t j = a; j <= b; ++j) {
                                int32_t w = h.node(j);
                                int32_t x = v;
                                while (x >= 0 && x != w && rt.depth[x] > rt.depth[w]) x = rt.parent[x];
                                if (x == w && v != w) {
                                    // must not pass through the heavy child chain
                                    int32_t c = v;
                                    while (rt.parent[c] != w) c = rt.parent[c];
                                    if (c != rt.heavy_child[w]) wsp++;
                                }
                            }
                        }
                        CHECK(prep.special_count(h, a, b) == wsp);
                    }
            }
        }
    }
}
