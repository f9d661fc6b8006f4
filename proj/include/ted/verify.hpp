#pragma once

#include <cmath>
#include <map>
#include <tuple>

#include "ted/gen.hpp"
#include "ted/rooted_algos.hpp"

namespace ted {

// Brute-force unrooted distance: fix T1's canonical rooting, try all 2(n-1)
// rootings of T2 with Zhang-Shasha. Slow on purpose.
inline Cost oracle_unrooted(const UnrootedTree& t1, const UnrootedTree& t2,
                            const CostModel& cm) {
    RootedTree r1 = root_canonical(t1);
    if (t2.edge_count() == 0) return ted_zhang_shasha(r1, root_canonical(t2), cm);
    Cost best = Cost::inf();
    for (int32_t e = 0; e < t2.edge_count(); ++e)
        for (int32_t end : {t2.edges[e].u, t2.edges[e].v}) {
            Cost c = ted_zhang_shasha(r1, root_at(t2, end, e), cm);
            if (c < best) best = c;
        }
    return best;
}

// ---------------------------------------------------------------------------
// Second-level oracle for tiny rooted instances: exhaustive enumeration of
// edit scripts. A script keeps a subset of edges on each side; the kept trees
// must be plane-isomorphic, contracted edges pay del, kept pairs pay match
// (Lemma-1 semantics: the match cost is charged even for equal labels).
// ---------------------------------------------------------------------------

namespace detail {

inline void script_encode(const RootedTree& rt, int32_t v, uint32_t keep, std::string& shape,
                          std::vector<Label>& labs) {
    for (int32_t e : rt.child_edges[v]) {
        int32_t c = rt.base.other_end(e, v);
        if (keep & (1u << e)) {
            shape += '(';
            labs.push_back(rt.base.edges[e].label);
            script_encode(rt, c, keep, shape, labs);
            shape += ')';
        } else {
            script_encode(rt, c, keep, shape, labs);  // contracted: splice children
        }
    }
}

struct ScriptForm {
    std::vector<Label> labs;
    Cost del_rest;
};

inline std::map<std::string, std::vector<ScriptForm>> script_forms(const RootedTree& rt,
                                                                   const CostModel& cm) {
    TED_CHECK(rt.E <= 12, "script enumeration is for tiny trees");
    std::map<std::string, std::vector<ScriptForm>> forms;
    for (uint32_t keep = 0; keep < (1u << rt.E); ++keep) {
        std::string shape;
        ScriptForm sf;
        script_encode(rt, rt.root, keep, shape, sf.labs);
        sf.del_rest = Cost::zero();
        for (int32_t e = 0; e < rt.E; ++e)
            if (!(keep & (1u << e))) sf.del_rest += cm.del(rt.base.edges[e].label);
        forms[shape].push_back(std::move(sf));
    }
    return forms;
}

}  // namespace detail

inline Cost script_ted(const RootedTree& t1, const RootedTree& t2, const CostModel& cm) {
    auto fa = detail::script_forms(t1, cm);
    auto fb = detail::script_forms(t2, cm);
    Cost best = Cost::inf();
    for (const auto& [shape, va] : fa) {
        auto it = fb.find(shape);
        if (it == fb.end()) continue;
        for (const auto& a : va)
            for (const auto& b : it->second) {
                Cost c = a.del_rest + b.del_rest;
                for (size_t i = 0; i < a.labs.size(); ++i)
                    c += cm.match(a.labs[i], b.labs[i]);
                if (c < best) best = c;
            }
    }
    return best;
}

// ---------------------------------------------------------------------------
// Rooted -> unrooted reduction gadget: one fresh node tied to the root by a
// gadget-anchor edge placed first in the root's rotation. Anchor edges must
// match each other, pinning the rotation.
// ---------------------------------------------------------------------------

inline UnrootedTree gadget_wrap(const RootedTree& rt) {
    for (const auto& e : rt.base.edges)
        if (e.label.kind == LabelKind::gadget_anchor)
            throw InputError("gadget anchor already present");
    UnrootedTree out = rt.base;
    out.origin.assign(out.edges.size(), -1);
    for (int32_t e = 0; e < out.edge_count(); ++e)
        out.origin[e] = rt.base.origin.empty() ? e : rt.base.origin[e];
    int32_t leaf = out.node_count++;
    int32_t e = out.edge_count();
    out.edges.push_back({rt.root, leaf, LabelTable::instance().gadget_anchor()});
    out.origin.push_back(-1);
    out.rot[rt.root].insert(out.rot[rt.root].begin(), e);
    out.rot.push_back({e});
    return out;
}

// ---------------------------------------------------------------------------
// Empirical bound fitting: C = max over samples of count / model(n, m); the
// non-constant-growth flag raises when the ratio at the largest n exceeds
// twice the ratio at the smallest n.
// ---------------------------------------------------------------------------

enum class BoundModel { n3logn, nm2log, n3, n4 };

inline BoundModel bound_model_from_name(const std::string& s) {
    if (s == "n3logn") return BoundModel::n3logn;
    if (s == "nm2log") return BoundModel::nm2log;
    if (s == "n3") return BoundModel::n3;
    if (s == "n4") return BoundModel::n4;
    throw InputError("unknown bound model '" + s + "'");
}

inline const char* bound_model_name(BoundModel m) {
    switch (m) {
        case BoundModel::n3logn: return "n3logn";
        case BoundModel::nm2log: return "nm2log";
        case BoundModel::n3: return "n3";
        case BoundModel::n4: return "n4";
    }
    return "?";
}

struct BoundSample {
    int64_t n = 0, m = 0;
    int64_t count = 0;
};

struct BoundFit {
    BoundModel model{};
    std::vector<BoundSample> samples;
    double constant = 0;            // max ratio
    double max_residual_ratio = 0;  // <= 1 by construction
    bool growth_flag = false;       // true: count grows faster than the model
};

inline double bound_model_value(BoundModel model, int64_t n, int64_t m) {
    double dn = static_cast<double>(n), dm = static_cast<double>(m);
    double l2n = std::log2(std::max<double>(2.0, dn));
    switch (model) {
        case BoundModel::n3logn: return dn * dn * dn * l2n;
        case BoundModel::nm2log: return dn * dm * dm * (1.0 + std::log2(dn / dm));
        case BoundModel::n3: return dn * dn * dn;
        case BoundModel::n4: return dn * dn * dn * dn;
    }
    return 1;
}

inline BoundFit fit_bound(std::vector<BoundSample> samples, BoundModel model) {
    if (samples.size() < 3) throw InputError("fit_bound needs at least 3 samples");
    BoundFit fit;
    fit.model = model;
    std::sort(samples.begin(), samples.end(),
              [](const BoundSample& a, const BoundSample& b) { return a.n < b.n; });
    fit.samples = samples;
    double first_ratio = 0, last_ratio = 0;
    for (size_t i = 0; i < samples.size(); ++i) {
        double ratio = static_cast<double>(samples[i].count) /
                       bound_model_value(model, samples[i].n, samples[i].m);
        if (ratio > fit.constant) fit.constant = ratio;
        if (i == 0) first_ratio = ratio;
        if (i + 1 == samples.size()) last_ratio = ratio;
    }
    for (const BoundSample& s : samples) {
        double r = static_cast<double>(s.count) /
                   (fit.constant * bound_model_value(model, s.n, s.m));
        if (r > fit.max_residual_ratio) fit.max_residual_ratio = r;
    }
    fit.growth_flag = last_ratio > 2.0 * first_ratio;
    return fit;
}

}  // namespace ted
