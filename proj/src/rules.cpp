#include "imitation/rules.hpp"

#include <fstream>
#include <stdexcept>

#include <json.hpp>

namespace imitation {

RuleSpec RuleSpec::tit_for_tat() { return RuleSpec{RuleKind::tit_for_tat, TiePolicy::stay, {}, {}}; }

RuleSpec RuleSpec::imitate_if_better() {
    return RuleSpec{RuleKind::imitate_if_better, TiePolicy::stay, {}, {}};
}

RuleSpec RuleSpec::imitate_the_best(TiePolicy policy) {
    return RuleSpec{RuleKind::imitate_the_best, policy, {}, {}};
}

RuleSpec RuleSpec::custom(std::vector<int> table) {
    return RuleSpec{RuleKind::custom, TiePolicy::stay, std::move(table), {}};
}

std::string RuleSpec::label() const {
    switch (kind) {
        case RuleKind::tit_for_tat: return "tft";
        case RuleKind::imitate_if_better: return "iib";
        case RuleKind::imitate_the_best:
            return tie_policy == TiePolicy::stay ? "itb:stay" : "itb:switch";
        case RuleKind::custom: return "custom";
    }
    return "?";
}

RuleSpec parse_rule_spec(const std::string& text) {
    if (text == "tft") return RuleSpec::tit_for_tat();
    if (text == "iib") return RuleSpec::imitate_if_better();
    if (text == "itb" || text == "itb:stay") return RuleSpec::imitate_the_best(TiePolicy::stay);
    if (text == "itb:switch") return RuleSpec::imitate_the_best(TiePolicy::copy);
    if (text.rfind("custom:", 0) == 0) {
        RuleSpec rule;
        rule.kind = RuleKind::custom;
        rule.custom_path = text.substr(7);
        if (rule.custom_path.empty())
            throw std::invalid_argument("custom rule needs a file: custom:<file.json>");
        return rule;
    }
    throw std::invalid_argument("unknown rule '" + text +
                                "' (expected tft, iib, itb:stay, itb:switch, custom:<file.json>)");
}

void load_custom_table(RuleSpec& rule, const SymmetricGame& game, const Tol& tol) {
    if (rule.kind != RuleKind::custom)
        throw std::invalid_argument("load_custom_table called on a non-custom rule");
    std::ifstream in(rule.custom_path);
    if (!in) throw std::invalid_argument("cannot open rule file '" + rule.custom_path + "'");
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(in);
    } catch (const nlohmann::json::parse_error& e) {
        throw std::invalid_argument(rule.custom_path + ": json parse error: " + e.what());
    }
    if (!j.is_object())
        throw std::invalid_argument(rule.custom_path + ": rule table must be a json object");

    const int n = game.num_actions();
    rule.custom_next.assign(static_cast<size_t>(n) * n, -1);
    for (const auto& [key, value] : j.items()) {
        const size_t bar = key.find('|');
        if (bar == std::string::npos)
            throw std::invalid_argument(rule.custom_path + ": key '" + key +
                                        "' is not of the form '<x>|<y>'");
        const int x = game.action_index(key.substr(0, bar));
        const int y = game.action_index(key.substr(bar + 1));
        if (x < 0 || y < 0)
            throw std::invalid_argument(rule.custom_path + ": key '" + key +
                                        "' names an unknown action");
        if (!value.is_string())
            throw std::invalid_argument(rule.custom_path + ": value for '" + key +
                                        "' must be an action label");
        const int next = game.action_index(value.get<std::string>());
        if (next < 0)
            throw std::invalid_argument(rule.custom_path + ": value '" +
                                        value.get<std::string>() + "' is not an action");
        rule.custom_next[static_cast<size_t>(x) * n + y] = next;
    }
    for (int x = 0; x < n; ++x)
        for (int y = 0; y < n; ++y)
            if (rule.custom_next[static_cast<size_t>(x) * n + y] < 0)
                throw std::invalid_argument(rule.custom_path + ": missing entry for (" +
                                            game.actions[x] + "|" + game.actions[y] + ")");

    const RelativePayoffGame rel = build_relative_game(game);
    const ClassCheck check = validate_class_membership(rule, rel, tol);
    if (!check.ok)
        throw std::invalid_argument(
            rule.custom_path + ": table is not an imitation rule: against opponent " +
            game.actions[check.x] + " while playing " + game.actions[check.y] +
            " it neither copies a strictly better action nor stays within {opponent, self}");
}

int step(const RuleSpec& rule, const RelativePayoffGame& rel, int x, int y, const Tol& tol) {
    const int n = rel.num_actions();
    if (x < 0 || x >= n || y < 0 || y >= n)
        throw std::invalid_argument("step: action index out of range");
    switch (rule.kind) {
        case RuleKind::tit_for_tat:
            return x;
        case RuleKind::imitate_if_better:
            return tol.is_pos(rel.delta(x, y), rel.max_abs) ? x : y;
        case RuleKind::imitate_the_best: {
            const Num d = rel.delta(x, y);
            if (tol.is_pos(d, rel.max_abs)) return x;
            if (tol.is_neg(d, rel.max_abs)) return y;
            return rule.tie_policy == TiePolicy::stay ? y : x;
        }
        case RuleKind::custom:
            if (rule.custom_next.size() != static_cast<size_t>(n) * n)
                throw std::invalid_argument("custom rule table does not match the game size");
            return rule.custom_next[static_cast<size_t>(x) * n + y];
    }
    throw std::logic_error("unreachable rule kind");
}

ClassCheck validate_class_membership(const RuleSpec& rule, const RelativePayoffGame& rel,
                                     const Tol& tol) {
    const int n = rel.num_actions();
    for (int x = 0; x < n; ++x)
        for (int y = 0; y < n; ++y) {
            const int next = step(rule, rel, x, y, tol);
            if (tol.is_pos(rel.delta(x, y), rel.max_abs)) {
                if (next != x) return ClassCheck{false, x, y};
            } else {
                if (next != x && next != y) return ClassCheck{false, x, y};
            }
        }
    return ClassCheck{};
}

std::vector<TrajectoryStep> trajectory(const RuleSpec& rule, const RelativePayoffGame& rel,
                                       int y0, const std::vector<int>& opponent_actions,
                                       const Tol& tol) {
    const int n = rel.num_actions();
    if (y0 < 0 || y0 >= n) throw std::invalid_argument("trajectory: y0 out of range");
    std::vector<TrajectoryStep> out;
    out.reserve(opponent_actions.size());
    int y = y0;
    Num sum = 0.0;
    for (int x : opponent_actions) {
        if (x < 0 || x >= n) throw std::invalid_argument("trajectory: opponent action out of range");
        const Num d = rel.delta(x, y);
        sum += d;
        out.push_back(TrajectoryStep{x, y, d, sum});
        y = step(rule, rel, x, y, tol);
    }
    return out;
}

}  // namespace imitation
