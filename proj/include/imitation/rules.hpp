#pragma once

#include <string>
#include <vector>

#include "imitation/game.hpp"

namespace imitation {

enum class RuleKind { tit_for_tat, imitate_if_better, imitate_the_best, custom };
enum class TiePolicy { stay, copy };

// A memory-one imitation rule: the next own action depends only on the
// opponent's last action x and the own last action y. Every rule here obeys
// the containment invariant: if delta(x, y) > 0 the rule copies x, otherwise
// it plays x or y.
struct RuleSpec {
    RuleKind kind = RuleKind::tit_for_tat;
    TiePolicy tie_policy = TiePolicy::stay;  // imitate_the_best only
    std::vector<int> custom_next;            // row-major (x, y) -> next; n*n entries when kind == custom
    std::string custom_path;                 // source file for custom rules, informational

    static RuleSpec tit_for_tat();
    static RuleSpec imitate_if_better();
    static RuleSpec imitate_the_best(TiePolicy policy);
    static RuleSpec custom(std::vector<int> table);

    std::string label() const;  // "tft", "iib", "itb:stay", "itb:switch", "custom"
};

// Parses "tft" | "iib" | "itb" | "itb:stay" | "itb:switch" | "custom:<file.json>".
// For custom rules only custom_path is filled; resolve with load_custom_table.
RuleSpec parse_rule_spec(const std::string& text);

// Reads a {"<x>|<y>": "<next>"} table, requires every pair to be covered, and
// rejects tables outside the imitation class (containment invariant).
void load_custom_table(RuleSpec& rule, const SymmetricGame& game, const Tol& tol);

// Next own action after seeing opponent x while playing y.
int step(const RuleSpec& rule, const RelativePayoffGame& rel, int x, int y, const Tol& tol);

struct ClassCheck {
    bool ok = true;
    int x = -1, y = -1;  // first violating pair in (x, y) lexicographic order
};

ClassCheck validate_class_membership(const RuleSpec& rule, const RelativePayoffGame& rel,
                                     const Tol& tol);

struct TrajectoryStep {
    int opponent = -1;    // x_t
    int imitator = -1;    // y_t
    Num delta = 0.0;      // delta(x_t, y_t)
    Num running_sum = 0.0;
};

// Replays the rule from y0 against a fixed opponent sequence. Throws
// std::invalid_argument on an out-of-range action index.
std::vector<TrajectoryStep> trajectory(const RuleSpec& rule, const RelativePayoffGame& rel,
                                       int y0, const std::vector<int>& opponent_actions,
                                       const Tol& tol);

}  // namespace imitation
