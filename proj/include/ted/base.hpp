#pragma once

#include <cstdint>
#include <limits>
#include <mutex>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <vector>

namespace ted {

// Malformed user input (bad syntax, reserved labels, invalid darts...).
struct InputError : std::runtime_error {
    explicit InputError(const std::string& msg) : std::runtime_error(msg) {}
};

// A required subproblem was not available where the evaluation order says it
// must be. Always a bug in a strategy/ordering, never a user error.
struct EngineError : std::logic_error {
    explicit EngineError(const std::string& msg) : std::logic_error(msg) {}
};

// API misuse (e.g. navigating an empty pruned subtree).
struct StateError : std::logic_error {
    explicit StateError(const std::string& msg) : std::logic_error(msg) {}
};

#define TED_CHECK(cond, msg)                 \
    do {                                     \
        if (!(cond)) throw EngineError(msg); \
    } while (0)

// ---------------------------------------------------------------------------
// Cost: non-negative fixed-point value (10^-6 units) with an infinity
// sentinel and saturating addition. Exact equality is meaningful.
// ---------------------------------------------------------------------------

struct Cost {
    static constexpr int64_t kInf = std::numeric_limits<int64_t>::max() / 4;
    static constexpr int64_t kScale = 1000000;

    int64_t v = 0;

    constexpr Cost() = default;
    constexpr explicit Cost(int64_t raw) : v(raw) {}

    static constexpr Cost inf() { return Cost(kInf); }
    static constexpr Cost zero() { return Cost(0); }
    static constexpr Cost units(int64_t whole) { return Cost(whole * kScale); }

    constexpr bool is_inf() const { return v >= kInf; }

    friend constexpr Cost operator+(Cost a, Cost b) {
        if (a.is_inf() || b.is_inf()) return inf();
        return Cost(a.v + b.v);
    }
    Cost& operator+=(Cost o) { return *this = *this + o; }

    friend constexpr bool operator==(Cost a, Cost b) {
        return a.is_inf() ? b.is_inf() : a.v == b.v;
    }
    friend constexpr bool operator!=(Cost a, Cost b) { return !(a == b); }
    friend constexpr bool operator<(Cost a, Cost b) {
        if (a.is_inf()) return false;
        if (b.is_inf()) return true;
        return a.v < b.v;
    }
    friend constexpr bool operator<=(Cost a, Cost b) { return !(b < a); }

    // Decimal rendering with 6 places, or "inf".
    std::string str() const {
        if (is_inf()) return "inf";
        std::string out = std::to_string(v / kScale);
        std::string frac = std::to_string(v % kScale);
        out += '.';
        out += std::string(6 - frac.size(), '0');
        out += frac;
        return out;
    }
};

inline Cost min3(Cost a, Cost b, Cost c) {
    Cost m = a < b ? a : b;
    return m < c ? m : c;
}

// ---------------------------------------------------------------------------
// Labels. Tokens are process-wide interned symbols; the three reserved kinds
// get fixed token ids and can never be produced from user input.
// ---------------------------------------------------------------------------

enum class LabelKind : uint8_t {
    user = 0,
    rooting_marker = 1,   // '#' : free to contract, never matches
    binarization_filler = 2,  // '%' : free to contract, matches itself
    gadget_anchor = 3,    // '$' : must match itself
};

struct Label {
    int32_t token = -1;
    LabelKind kind = LabelKind::user;

    friend bool operator==(Label a, Label b) { return a.token == b.token; }
    friend bool operator!=(Label a, Label b) { return a.token != b.token; }
};

class LabelTable {
public:
    static constexpr int32_t kRooting = 0;
    static constexpr int32_t kGadget = 1;
    static constexpr int32_t kFiller = 2;

    static LabelTable& instance() {
        static LabelTable table;
        return table;
    }

    Label rooting_marker() const { return {kRooting, LabelKind::rooting_marker}; }
    Label gadget_anchor() const { return {kGadget, LabelKind::gadget_anchor}; }
    Label filler() const { return {kFiller, LabelKind::binarization_filler}; }

    Label user(const std::string& name) {
        std::lock_guard<std::mutex> lock(mu_);
        auto it = ids_.find(name);
        if (it != ids_.end()) return {it->second, LabelKind::user};
        int32_t id = static_cast<int32_t>(names_.size());
        names_.push_back(name);
        ids_.emplace(name, id);
        return {id, LabelKind::user};
    }

    std::string name(Label l) const {
        switch (l.kind) {
            case LabelKind::rooting_marker: return "#";
            case LabelKind::gadget_anchor: return "$";
            case LabelKind::binarization_filler: return "%";
            case LabelKind::user: break;
        }
        std::lock_guard<std::mutex> lock(mu_);
        return names_.at(static_cast<size_t>(l.token));
    }

    int32_t token_count() const {
        std::lock_guard<std::mutex> lock(mu_);
        return static_cast<int32_t>(names_.size());
    }

private:
    LabelTable() {
        // Reserve slots so user token ids coincide with vector indices.
        names_ = {"#", "$", "%"};
        ids_ = {{"#", kRooting}, {"$", kGadget}, {"%", kFiller}};
    }
    mutable std::mutex mu_;
    std::vector<std::string> names_;
    std::unordered_map<std::string, int32_t> ids_;
};

// ---------------------------------------------------------------------------
// CostModel: del per label, match per label pair. Reserved-label rules are
// hard-wired and cannot be overridden:
//   del(#)=0,   match(#,x)=inf for every x (including #)
//   del(%)=0,   match(%,%)=0, match(%,x)=inf otherwise
//   del($)=inf, match($,$)=0, match($,x)=inf otherwise
// ---------------------------------------------------------------------------

class CostModel {
public:
    CostModel() = default;

    static CostModel unit() {
        CostModel cm;
        cm.default_del_ = Cost::units(1);
        cm.default_match_eq_ = Cost::zero();
        cm.default_match_ne_ = Cost::units(1);
        return cm;
    }

    void set_default_del(Cost c) { default_del_ = c; }
    void set_default_match_eq(Cost c) { default_match_eq_ = c; }
    void set_default_match_ne(Cost c) { default_match_ne_ = c; }

    void set_del(Label l, Cost c) {
        if (l.kind != LabelKind::user)
            throw InputError("cannot override costs of a reserved label");
        del_over_[l.token] = c;
    }
    void set_match(Label a, Label b, Cost c) {
        if (a.kind != LabelKind::user || b.kind != LabelKind::user)
            throw InputError("cannot override costs of a reserved label");
        match_over_[pair_key(a.token, b.token)] = c;
    }

    Cost del(Label l) const {
        switch (l.kind) {
            case LabelKind::rooting_marker: return Cost::zero();
            case LabelKind::binarization_filler: return Cost::zero();
            case LabelKind::gadget_anchor: return Cost::inf();
            case LabelKind::user: break;
        }
        auto it = del_over_.find(l.token);
        return it != del_over_.end() ? it->second : default_del_;
    }

    Cost match(Label a, Label b) const {
        if (a.kind != LabelKind::user || b.kind != LabelKind::user) {
            if (a.kind == LabelKind::rooting_marker || b.kind == LabelKind::rooting_marker)
                return Cost::inf();
            return a.token == b.token ? Cost::zero() : Cost::inf();
        }
        auto it = match_over_.find(pair_key(a.token, b.token));
        if (it != match_over_.end()) return it->second;
        return a.token == b.token ? default_match_eq_ : default_match_ne_;
    }

private:
    static uint64_t pair_key(int32_t a, int32_t b) {
        if (a > b) std::swap(a, b);
        return (static_cast<uint64_t>(static_cast<uint32_t>(a)) << 32) |
               static_cast<uint32_t>(b);
    }

    Cost default_del_ = Cost::units(1);
    Cost default_match_eq_ = Cost::zero();
    Cost default_match_ne_ = Cost::units(1);
    std::unordered_map<int32_t, Cost> del_over_;
    std::unordered_map<uint64_t, Cost> match_over_;
};

}  // namespace ted
