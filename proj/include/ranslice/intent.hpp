#pragma once

#include <cctype>
#include <cstdlib>
#include <fstream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "ranslice/csv.hpp"
#include "ranslice/errors.hpp"
#include "ranslice/goal.hpp"

namespace ranslice {

// Deterministic front end for operator intents. A small fixed grammar maps
// templated text to GoalVectors:
//   "<SLICE> <KPI> <= <value> <unit>"   (also ">=")
//   "increase <SLICE> <KPI> by <pct>%"
//   "reduce <SLICE> <KPI> by <pct>%"
// Anything outside the registered productions is rejected with the offending
// character offset, never guessed at.

struct IntentToken {
    std::string text;
    std::size_t pos = 0;
};

namespace detail {

inline std::vector<IntentToken> tokenize_intent(const std::string& text) {
    std::vector<IntentToken> tokens;
    std::size_t i = 0;
    while (i < text.size()) {
        while (i < text.size() && std::isspace(static_cast<unsigned char>(text[i]))) ++i;
        if (i >= text.size()) break;
        std::size_t start = i;
        while (i < text.size() && !std::isspace(static_cast<unsigned char>(text[i]))) ++i;
        tokens.push_back({text.substr(start, i - start), start});
    }
    return tokens;
}

inline std::string lower(std::string s) {
    for (char& c : s) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
    return s;
}

inline std::optional<SliceKind> lookup_slice(const std::string& token) {
    std::string t = lower(token);
    if (t == "embb") return SliceKind::embb;
    if (t == "urllc") return SliceKind::urllc;
    if (t == "be") return SliceKind::be;
    return std::nullopt;
}

inline std::optional<IntentKind> lookup_kpi(const std::string& token) {
    std::string t = lower(token);
    if (t == "latency" || t == "delay") return IntentKind::latency;
    if (t == "throughput") return IntentKind::throughput;
    if (t == "loss" || t == "packet-loss") return IntentKind::loss;
    if (t == "long-term-throughput" || t == "longterm-throughput")
        return IntentKind::longterm_throughput;
    if (t == "fifth-percentile" || t == "5th-percentile")
        return IntentKind::fifth_percentile;
    return std::nullopt;
}

inline std::optional<double> parse_number(const std::string& token) {
    if (token.empty()) return std::nullopt;
    char* end = nullptr;
    double v = std::strtod(token.c_str(), &end);
    if (end != token.c_str() + token.size()) return std::nullopt;
    return v;
}

// Unit factor converting the written value to SI for the given KPI.
inline std::optional<double> unit_factor(IntentKind kpi, const std::string& token) {
    std::string u = lower(token);
    switch (kpi) {
        case IntentKind::latency:
            if (u == "s") return 1.0;
            if (u == "ms") return 1e-3;
            if (u == "us") return 1e-6;
            return std::nullopt;
        case IntentKind::throughput:
        case IntentKind::longterm_throughput:
        case IntentKind::fifth_percentile:
            if (u == "bps") return 1.0;
            if (u == "kbps") return 1e3;
            if (u == "mbps") return 1e6;
            if (u == "gbps") return 1e9;
            return std::nullopt;
        case IntentKind::loss:
            if (u == "%") return 1e-2;
            if (u == "ratio") return 1.0;
            return std::nullopt;
    }
    return std::nullopt;
}

}  // namespace detail

inline GoalVector parse_intent(const std::string& text) {
    using namespace detail;
    auto tokens = tokenize_intent(text);
    if (tokens.empty()) throw intent_parse_error("empty intent", 0);

    auto fail = [&](const std::string& msg, std::size_t idx) -> void {
        std::size_t pos = idx < tokens.size() ? tokens[idx].pos : text.size();
        throw intent_parse_error(msg, pos);
    };

    std::string head = lower(tokens[0].text);
    bool is_relative = (head == "increase" || head == "reduce" || head == "decrease");

    if (is_relative) {
        // increase|reduce SLICE KPI by PCT%
        if (tokens.size() < 5) fail("incomplete relative intent", tokens.size());
        auto slice = lookup_slice(tokens[1].text);
        if (!slice) fail("unknown slice \"" + tokens[1].text + "\"", 1);
        auto kpi = lookup_kpi(tokens[2].text);
        if (!kpi) fail("unknown kpi \"" + tokens[2].text + "\"", 2);
        if (lower(tokens[3].text) != "by") fail("expected \"by\"", 3);

        std::string pct = tokens[4].text;
        if (tokens.size() == 6 && tokens[5].text == "%") pct += "%";
        else if (tokens.size() > 5) fail("trailing tokens after percentage", 5);
        if (pct.empty() || pct.back() != '%') fail("expected a percentage", 4);
        auto num = parse_number(pct.substr(0, pct.size() - 1));
        if (!num) fail("malformed percentage \"" + tokens[4].text + "\"", 4);
        if (*num < 0.0) fail("percentage must be nonnegative", 4);

        GoalVector goal;
        goal.kpi = *kpi;
        goal.slice = *slice;
        goal.relative = true;
        goal.value = *num / 100.0;
        goal.direction = (head == "increase") ? +1 : -1;
        return goal;
    }

    // SLICE KPI CMP VALUE UNIT
    auto slice = lookup_slice(tokens[0].text);
    if (!slice) fail("unknown slice \"" + tokens[0].text + "\"", 0);
    if (tokens.size() < 2) fail("missing kpi", 1);
    auto kpi = lookup_kpi(tokens[1].text);
    if (!kpi) fail("unknown kpi \"" + tokens[1].text + "\"", 1);
    if (tokens.size() < 3) fail("missing comparator", 2);
    std::string cmp = tokens[2].text;
    if (cmp != "<=" && cmp != ">=") fail("unknown comparator \"" + cmp + "\"", 2);
    if (tokens.size() < 4) fail("missing value", 3);
    auto num = detail::parse_number(tokens[3].text);
    if (!num) fail("malformed value \"" + tokens[3].text + "\"", 3);

    double factor = 1.0;
    std::size_t consumed = 4;
    if (tokens.size() >= 5) {
        auto f = unit_factor(*kpi, tokens[4].text);
        if (!f) fail("unknown unit \"" + tokens[4].text + "\" for " + to_string(*kpi), 4);
        factor = *f;
        consumed = 5;
    } else if (*kpi != IntentKind::loss) {
        fail("missing unit", 4);
    }
    if (tokens.size() > consumed) fail("trailing tokens", consumed);

    GoalVector goal;
    goal.kpi = *kpi;
    goal.slice = *slice;
    goal.relative = false;
    goal.value = *num * factor;
    goal.direction = (cmp == "<=") ? -1 : +1;
    return goal;
}

inline std::string canonical_slice_name(SliceKind k) {
    switch (k) {
        case SliceKind::embb: return "eMBB";
        case SliceKind::urllc: return "URLLC";
        case SliceKind::be: return "BE";
    }
    return "?";
}

// Canonical text for a goal; parse(render(g)) reproduces g.
inline std::string render_intent(const GoalVector& goal) {
    std::ostringstream os;
    if (goal.relative) {
        os << (goal.direction > 0 ? "increase" : "reduce") << ' '
           << canonical_slice_name(goal.slice) << ' ' << to_string(goal.kpi) << " by "
           << fmt_num(goal.value * 100.0) << '%';
        return os.str();
    }
    os << canonical_slice_name(goal.slice) << ' ' << to_string(goal.kpi) << ' '
       << (goal.direction > 0 ? ">=" : "<=") << ' ';
    switch (goal.kpi) {
        case IntentKind::latency:
            os << fmt_num(goal.value * 1e3) << " ms";
            break;
        case IntentKind::loss:
            os << fmt_num(goal.value * 1e2) << " %";
            break;
        default:
            os << fmt_num(goal.value / 1e6) << " mbps";
            break;
    }
    return os.str();
}

// ---------------------------------------------------------------------------
// Context stores: static rules keyed by (slice, kpi) and dynamic KPI samples
// keyed the same way, stamped with the step of last update.

struct StaticRule {
    int id = 0;
    SliceKind slice = SliceKind::embb;
    IntentKind kpi = IntentKind::throughput;
    double threshold = 0.0;
    std::string text;
};

struct DynamicEntry {
    IntentKind kpi = IntentKind::throughput;
    double value = 0.0;
    int step = -1;
};

struct RetrievedContext {
    std::vector<StaticRule> rules;       // matching (slice, kpi), ordered by id
    std::vector<DynamicEntry> dynamics;  // latest KPIs for the goal slice
    bool stale = false;                  // set when the goal KPI has no fresh sample
};

class ContextStore {
public:
    void add_rule(StaticRule rule) { rules_.push_back(std::move(rule)); }

    // Rule file: one rule per line, "id|slice|kpi|threshold|text", '#' comments.
    void load_rules(const std::string& path) {
        std::ifstream in(path);
        if (!in) throw io_error("cannot open rule file " + path);
        std::string line;
        int lineno = 0;
        while (std::getline(in, line)) {
            ++lineno;
            if (line.empty() || line[0] == '#') continue;
            std::vector<std::string> parts;
            std::stringstream ss(line);
            std::string part;
            while (std::getline(ss, part, '|')) parts.push_back(part);
            if (parts.size() < 5)
                throw config_error("malformed rule at line " + std::to_string(lineno));
            StaticRule rule;
            rule.id = std::stoi(parts[0]);
            rule.slice = slice_kind_from_string(parts[1]);
            auto kpi = detail::lookup_kpi(parts[2]);
            if (!kpi) throw config_error("unknown kpi in rule file: " + parts[2]);
            rule.kpi = *kpi;
            rule.threshold = std::stod(parts[3]);
            rule.text = parts[4];
            rules_.push_back(std::move(rule));
        }
    }

    void ingest(SliceKind slice, IntentKind kpi, double value, int step) {
        dynamic_[{static_cast<int>(slice), static_cast<int>(kpi)}] = {kpi, value, step};
    }

    std::optional<DynamicEntry> latest(SliceKind slice, IntentKind kpi) const {
        auto it = dynamic_.find({static_cast<int>(slice), static_cast<int>(kpi)});
        if (it == dynamic_.end()) return std::nullopt;
        return it->second;
    }

    // Static entries matching the goal's (slice, kpi) plus the latest dynamic
    // KPIs for that slice. A missing goal-KPI sample flags the context stale.
    RetrievedContext retrieve(const GoalVector& goal) const {
        RetrievedContext ctx;
        for (const auto& r : rules_)
            if (r.slice == goal.slice && r.kpi == goal.kpi) ctx.rules.push_back(r);
        std::sort(ctx.rules.begin(), ctx.rules.end(),
                  [](const StaticRule& a, const StaticRule& b) { return a.id < b.id; });
        for (const auto& [key, entry] : dynamic_)
            if (key.first == static_cast<int>(goal.slice)) ctx.dynamics.push_back(entry);
        ctx.stale = !latest(goal.slice, goal.kpi).has_value();
        return ctx;
    }

private:
    std::vector<StaticRule> rules_;
    std::map<std::pair<int, int>, DynamicEntry> dynamic_;
};

// ---------------------------------------------------------------------------
// Goal validation

struct GoalValidation {
    bool accepted = false;
    std::string reason_code = "ok";  // machine-readable rejection reason
    std::string message;
    GoalVector goal;
    TargetRegion region;
};

struct ValidationLimits {
    double max_relative_change = 1.0;  // 100% cap on relative goals
};

inline GoalValidation validate_goal(const GoalVector& goal, std::span<const SliceSla> slas,
                                    const ContextStore* context = nullptr,
                                    const ValidationLimits& limits = {}) {
    GoalValidation res;
    res.goal = goal;

    bool slice_active = false;
    for (const auto& sla : slas)
        if (sla.kind == goal.slice) slice_active = true;
    if (!slice_active) {
        res.reason_code = "unknown-slice";
        res.message = "slice is not active in this run";
        return res;
    }

    if (goal.relative) {
        if (goal.value > limits.max_relative_change) {
            res.reason_code = "cap-exceeded";
            res.message = "relative change above configured cap";
            return res;
        }
        double anchor = 0.0;
        if (context != nullptr) {
            if (auto latest = context->latest(goal.slice, goal.kpi)) anchor = latest->value;
        }
        res.region = resolve_region(goal, anchor);
    } else {
        if (!(goal.value > 0.0) && goal.kpi != IntentKind::loss) {
            res.reason_code = "nonphysical";
            res.message = "target must be positive";
            return res;
        }
        if (goal.kpi == IntentKind::loss && !(goal.value > 0.0 && goal.value < 1.0)) {
            res.reason_code = "nonphysical";
            res.message = "loss target must lie in (0,1)";
            return res;
        }
        res.region = resolve_region(goal);
    }

    res.accepted = true;
    return res;
}

}  // namespace ranslice
