#pragma once

#include <array>
#include <functional>
#include <optional>
#include <unordered_map>

#include "ted/nav.hpp"

namespace ted {

enum class Dir : uint8_t { L, R };

// Accounting: distinct (F,G) pairs by algorithm phase, plus live table cells.
enum class Phase : uint8_t { rooted = 0, heavy_path = 1, group = 2, inside_group = 3, other = 4 };
constexpr size_t kPhaseCount = 5;

struct CounterReport {
    std::array<int64_t, kPhaseCount> by_phase{};
    int64_t total = 0;
    int64_t peak_cells = 0;
};

class SubproblemCounter {
public:
    void count(Phase p) { by_phase_[static_cast<size_t>(p)]++; }
    void cells_add(int64_t k) {
        current_cells_ += k;
        if (current_cells_ > peak_cells_) peak_cells_ = current_cells_;
    }
    void cells_sub(int64_t k) { current_cells_ -= k; }

    int64_t total() const {
        int64_t t = 0;
        for (int64_t v : by_phase_) t += v;
        return t;
    }
    int64_t peak_cells() const { return peak_cells_; }
    int64_t phase(Phase p) const { return by_phase_[static_cast<size_t>(p)]; }

    CounterReport report() const {
        CounterReport r;
        r.by_phase = by_phase_;
        r.total = total();
        r.peak_cells = peak_cells_;
        return r;
    }

private:
    std::array<int64_t, kPhaseCount> by_phase_{};
    int64_t current_cells_ = 0;
    int64_t peak_cells_ = 0;
};

// Injective key over ((F.s,F.t),(G.s,G.t)); darts fit 16 bits (computations
// are rejected above 16k edges, far beyond cubic-algorithm reach anyway).
inline uint64_t sub_key(PrunedSubtree f, PrunedSubtree g) {
    return (static_cast<uint64_t>(f.key()) << 32) | g.key();
}

// The Lemma-1 step: three-way minimum in the chosen direction. `look` is only
// consulted for pairs with both sides nonempty; empty sides resolve to
// contraction costs.
template <class Lookup>
Cost dp_step(const NavIndex& A, const NavIndex& B, PrunedSubtree f, PrunedSubtree g, Dir dir,
             Lookup&& look) {
    if (f.is_empty() && g.is_empty()) return Cost::zero();
    if (f.is_empty()) return B.contraction_cost(g);
    if (g.is_empty()) return A.contraction_cost(f);
    auto get = [&](PrunedSubtree a, PrunedSubtree b) -> Cost {
        if (a.is_empty() && b.is_empty()) return Cost::zero();
        if (a.is_empty()) return B.contraction_cost(b);
        if (b.is_empty()) return A.contraction_cost(a);
        return look(a, b);
    };
    const RootedTree& ta = A.tree();
    const RootedTree& tb = B.tree();
    if (dir == Dir::R) {
        Cost c1 = get(ta.drop_r_edge(f), g) + A.del(f.t);
        Cost c2 = get(f, tb.drop_r_edge(g)) + B.del(g.t);
        Cost c3 = get(ta.take_R(f), tb.take_R(g)) + get(ta.drop_R(f), tb.drop_R(g)) +
                  A.match(f.t, B, g.t);
        return min3(c1, c2, c3);
    }
    Cost c1 = get(ta.drop_l_edge(f), g) + A.del(f.s);
    Cost c2 = get(f, tb.drop_l_edge(g)) + B.del(g.s);
    Cost c3 = get(ta.take_L(f), tb.take_L(g)) + get(ta.drop_L(f), tb.drop_L(g)) +
              A.match(f.s, B, g.s);
    return min3(c1, c2, c3);
}

// Associative-map backend: every computed value is retained; a lookup miss on
// a nonempty pair is a strategy bug and throws.
class MemoEngine {
public:
    MemoEngine(const NavIndex& a, const NavIndex& b, SubproblemCounter& ctr)
        : a_(&a), b_(&b), ctr_(&ctr) {
        if (2 * a.tree().E >= 0xFFFF || 2 * b.tree().E >= 0xFFFF)
            throw InputError("tree too large for a distance computation");
    }

    const NavIndex& a() const { return *a_; }
    const NavIndex& b() const { return *b_; }
    SubproblemCounter& counter() { return *ctr_; }

    std::optional<Cost> find(PrunedSubtree f, PrunedSubtree g) const {
        auto it = memo_.find(sub_key(f, g));
        if (it == memo_.end()) return std::nullopt;
        return it->second;
    }

    Cost resolve(PrunedSubtree f, PrunedSubtree g) const {
        if (f.is_empty() && g.is_empty()) return Cost::zero();
        if (f.is_empty()) return b_->contraction_cost(g);
        if (g.is_empty()) return a_->contraction_cost(f);
        auto it = memo_.find(sub_key(f, g));
        if (it == memo_.end())
            throw EngineError("missing subproblem (" + std::to_string(f.s) + "," +
                              std::to_string(f.t) + ")x(" + std::to_string(g.s) + "," +
                              std::to_string(g.t) + ")");
        return it->second;
    }

    // Insert-if-absent; counts first insertions only.
    bool store(PrunedSubtree f, PrunedSubtree g, Cost c, Phase phase) {
        auto [it, fresh] = memo_.emplace(sub_key(f, g), c);
        if (fresh) {
            ctr_->count(phase);
            ctr_->cells_add(1);
        } else {
            TED_CHECK(it->second == c, "memo overwrite with a different value");
        }
        return fresh;
    }

    size_t size() const { return memo_.size(); }

private:
    const NavIndex* a_;
    const NavIndex* b_;
    SubproblemCounter* ctr_;
    std::unordered_map<uint64_t, Cost> memo_;
};

// An enumerated family of pruned subtrees (one side of a DistTable), sorted
// by size so bottom-up evaluation can walk it in order.
struct Family {
    std::vector<PrunedSubtree> members;
    std::unordered_map<uint32_t, int32_t> index;

    void finish(const RootedTree& rt) {
        std::stable_sort(members.begin(), members.end(),
                         [&](PrunedSubtree x, PrunedSubtree y) {
                             return rt.size_edges(x) < rt.size_edges(y);
                         });
        index.reserve(members.size());
        for (size_t i = 0; i < members.size(); ++i)
            index.emplace(members[i].key(), static_cast<int32_t>(i));
    }
    int32_t slot(PrunedSubtree f) const {
        auto it = index.find(f.key());
        return it == index.end() ? -1 : it->second;
    }
    size_t size() const { return members.size(); }
};

// Is (s,t) a canonically-represented pruned subtree? Both boundary edges must
// lie fully inside the interval.
inline bool valid_pruned_pair(const RootedTree& rt, int32_t s, int32_t t) {
    if (s == t) return false;
    PrunedSubtree f{s, t};
    if (dart_edge(s) == dart_edge(t) && t != dart_partner(s)) return false;
    return rt.dart_in(f, dart_partner(s)) && rt.dart_in(f, dart_partner(t));
}

// All pruned subtrees whose interval lies inside `span`, with at most
// `size_cap` edges. With span = the full rooted tree this enumerates every
// pruned subtree of the fixed rooting.
inline Family family_within(const RootedTree& rt, PrunedSubtree span,
                            int32_t size_cap = INT32_MAX) {
    Family fam;
    if (span.is_empty()) return fam;
    int32_t E2 = 2 * rt.E;
    int32_t lo = rt.pos[span.s], len = rt.interval_len(span);
    for (int32_t i = 0; i < len; ++i)
        for (int32_t j = i; j < len; ++j) {
            int32_t s = rt.tour[(lo + i) % E2], t = rt.tour[(lo + j) % E2];
            if (!valid_pruned_pair(rt, s, t)) continue;
            PrunedSubtree f{s, t};
            if (rt.size_edges(f) > size_cap) continue;
            fam.members.push_back(f);
        }
    fam.finish(rt);
    return fam;
}

// A table of distances between one fixed pruned subtree of the stepping side
// and every member of a family of the other tree.
struct DistTable {
    PrunedSubtree fixed;
    const Family* family = nullptr;
    std::vector<Cost> vals;
};

}  // namespace ted
