#pragma once

#include <cctype>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "ted/tree.hpp"

namespace ted {

// TreeText grammar:
//   tree := node
//   node := '(' [edge (',' edge)*] ')'
//   edge := label ':' node
//   label := [A-Za-z0-9_]+
// The textual root becomes node 0 (the canonical anchor); the rotation at a
// node is (parent edge, then child edges in listed order).
inline UnrootedTree parse_tree(std::string_view src) {
    constexpr int32_t kMaxNodes = 1000000;
    UnrootedTree t;
    size_t i = 0;
    auto fail = [&](const std::string& what) {
        throw InputError("tree parse error at byte " + std::to_string(i) + ": " + what);
    };
    auto skip_ws = [&] {
        while (i < src.size() && std::isspace(static_cast<unsigned char>(src[i]))) ++i;
    };
    auto is_label_char = [](char c) {
        return std::isalnum(static_cast<unsigned char>(c)) || c == '_';
    };

    // Frame: a node whose child list is being read.
    struct Frame {
        int32_t node;
        int32_t pending_edge;  // edge to the child about to be opened
    };
    std::vector<Frame> stack;

    skip_ws();
    if (i >= src.size() || src[i] != '(') fail("expected '('");
    t.node_count = 1;
    t.rot.emplace_back();
    stack.push_back({0, -1});
    ++i;

    while (!stack.empty()) {
        skip_ws();
        if (i >= src.size()) fail("unexpected end of input");
        char c = src[i];
        if (c == ')') {
            ++i;
            stack.pop_back();
            if (!stack.empty()) {
                skip_ws();
                if (i < src.size() && src[i] == ',') {
                    ++i;
                    skip_ws();
                    if (i >= src.size() || !is_label_char(src[i])) fail("expected label after ','");
                } else if (i >= src.size() || src[i] != ')') {
                    fail("expected ',' or ')'");
                }
            }
            continue;
        }
        if (is_label_char(c)) {
            size_t start = i;
            while (i < src.size() && is_label_char(src[i])) ++i;
            std::string name(src.substr(start, i - start));
            skip_ws();
            if (i >= src.size() || src[i] != ':') fail("expected ':' after label");
            ++i;
            skip_ws();
            if (i >= src.size() || src[i] != '(') fail("expected '(' after ':'");
            ++i;
            if (t.node_count >= kMaxNodes) fail("too many nodes");
            int32_t parent = stack.back().node;
            int32_t child = t.node_count++;
            int32_t e = t.edge_count();
            t.edges.push_back({parent, child, LabelTable::instance().user(name)});
            t.rot[parent].push_back(e);
            t.rot.push_back({e});
            stack.push_back({child, e});
            continue;
        }
        fail("unexpected character");
    }
    skip_ws();
    if (i != src.size()) fail("trailing input");
    t.validate();
    return t;
}

// Serializes rooted at the canonical anchor (node 0, first rotation edge as
// the first child). parse(serialize(t)) reproduces the rotation system.
inline std::string serialize_tree(const UnrootedTree& t) {
    std::string out;
    struct Item {
        int32_t node;
        int32_t parent_edge;
        size_t next;  // index into the node's ordered child list
    };
    auto ordered = [&](int32_t node, int32_t parent_edge) {
        const auto& r = t.rot[node];
        if (parent_edge < 0) return r;  // root: children start at rot[node][0]
        std::vector<int32_t> kids;
        size_t base = 0;
        while (r[base] != parent_edge) ++base;
        for (size_t k = 1; k < r.size(); ++k) kids.push_back(r[(base + k) % r.size()]);
        return kids;
    };

    std::vector<Item> stack;
    std::vector<std::vector<int32_t>> kids_stack;
    out += '(';
    stack.push_back({0, -1, 0});
    kids_stack.push_back(ordered(0, -1));
    while (!stack.empty()) {
        Item& it = stack.back();
        auto& kids = kids_stack.back();
        if (it.next == kids.size()) {
            out += ')';
            stack.pop_back();
            kids_stack.pop_back();
            continue;
        }
        if (it.next > 0) out += ',';
        int32_t e = kids[it.next++];
        out += LabelTable::instance().name(t.edges[e].label);
        out += ":(";
        int32_t child = t.other_end(e, it.node);
        stack.push_back({child, e, 0});
        kids_stack.push_back(ordered(child, e));
    }
    return out;
}

// ---------------------------------------------------------------------------
// Cost files. Line oriented:
//   del <label> <cost>
//   match <label> <label> <cost>
//   default del <cost>
//   default match_eq <cost>
//   default match_ne <cost>
// cost := decimal with at most 6 fractional digits, or "inf".
// ---------------------------------------------------------------------------

inline Cost parse_cost_value(const std::string& tok, int line_no) {
    auto fail = [&](const std::string& what) {
        throw InputError("cost file line " + std::to_string(line_no) + ": " + what);
    };
    if (tok == "inf") return Cost::inf();
    if (tok.empty()) fail("empty cost");
    if (tok[0] == '-') fail("negative cost");
    size_t dot = tok.find('.');
    std::string whole = dot == std::string::npos ? tok : tok.substr(0, dot);
    std::string frac = dot == std::string::npos ? "" : tok.substr(dot + 1);
    if (whole.empty() && frac.empty()) fail("malformed cost");
    if (frac.size() > 6) fail("more than 6 fractional digits");
    for (char c : whole + frac)
        if (!std::isdigit(static_cast<unsigned char>(c))) fail("malformed cost");
    frac += std::string(6 - frac.size(), '0');
    int64_t w = whole.empty() ? 0 : std::stoll(whole);
    return Cost(w * Cost::kScale + std::stoll(frac));
}

inline CostModel parse_costs(std::string_view src) {
    CostModel cm = CostModel::unit();
    std::istringstream in{std::string(src)};
    std::string line;
    int line_no = 0;
    auto check_label = [&](const std::string& s) {
        for (char c : s)
            if (!(std::isalnum(static_cast<unsigned char>(c)) || c == '_'))
                throw InputError("cost file line " + std::to_string(line_no) +
                                 ": invalid label '" + s + "'");
        return LabelTable::instance().user(s);
    };
    while (std::getline(in, line)) {
        ++line_no;
        std::istringstream ls(line);
        std::string cmd;
        if (!(ls >> cmd)) continue;  // blank line
        auto fail = [&](const std::string& what) {
            throw InputError("cost file line " + std::to_string(line_no) + ": " + what);
        };
        if (cmd == "del") {
            std::string lab, val;
            if (!(ls >> lab >> val)) fail("expected: del <label> <cost>");
            cm.set_del(check_label(lab), parse_cost_value(val, line_no));
        } else if (cmd == "match") {
            std::string a, b, val;
            if (!(ls >> a >> b >> val)) fail("expected: match <label> <label> <cost>");
            cm.set_match(check_label(a), check_label(b), parse_cost_value(val, line_no));
        } else if (cmd == "default") {
            std::string which, val;
            if (!(ls >> which >> val)) fail("expected: default <kind> <cost>");
            Cost c = parse_cost_value(val, line_no);
            if (which == "del")
                cm.set_default_del(c);
            else if (which == "match_eq")
                cm.set_default_match_eq(c);
            else if (which == "match_ne")
                cm.set_default_match_ne(c);
            else
                fail("unknown default kind '" + which + "'");
        } else {
            fail("unknown directive '" + cmd + "'");
        }
        std::string extra;
        if (ls >> extra) fail("trailing tokens");
    }
    return cm;
}

}  // namespace ted
