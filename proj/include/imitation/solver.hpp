#pragma once

#include <optional>
#include <vector>

#include "imitation/game.hpp"
#include "imitation/rules.hpp"

namespace imitation {

// Deterministic play graph of one rule: one node per own action, one edge per
// opponent move. Playing x against state y pays delta(x, y) and moves the
// imitator to target(y, x) = step(rule, x, y).
struct TransitionGraph {
    int n = 0;
    SquareMatrix delta;       // copy of the relative payoff table
    std::vector<int> target;  // row-major [y * n + x]

    int target_at(int y, int x) const { return target[static_cast<size_t>(y) * n + x]; }
};

TransitionGraph build_transition_graph(const RuleSpec& rule, const RelativePayoffGame& rel,
                                       const Tol& tol);

enum class ExploitVerdict { essentially_unbeatable, bounded_but_beaten, money_pump };

struct ExploitationCertificate {
    ExploitVerdict verdict = ExploitVerdict::essentially_unbeatable;
    Num bound = 0.0;                 // max relative payoff over all pairs
    std::optional<Num> sup_total;    // finite verdicts only
    std::vector<int> witness_path;   // opponent actions attaining sup_total from y0
    std::vector<int> witness_cycle;  // opponent actions of one positive cycle (money_pump)
    int cycle_entry_state = -1;      // imitator action at the start of the cycle
    Num cycle_sum = 0.0;             // strictly positive for money_pump
    int y0 = -1;
    bool worst_case_y0 = false;
    int iterations = 0;              // value-iteration sweeps executed
};

// Value iteration for the supremum of exploitation totals from y0:
//   V_0 = 0,  V_k(y) = max_x [ delta(x, y) + max(0, V_{k-1}(target(y, x))) ],
// restricted to states reachable from y0. V_k is the best total over opponent
// plays of at most k moves and is pointwise nondecreasing in k, so without a
// reachable positive cycle it stabilizes within n-1 sweeps; a strict increase
// still happening on sweep n+1 certifies a money pump. Argmax ties break
// toward the lowest action index, which makes every witness deterministic.
ExploitationCertificate sup_exploitation(const TransitionGraph& g, int y0, const Tol& tol);

// y0 empty = worst case over all starts: any money pump dominates (lowest y0
// first); otherwise the start with the largest sup_total.
ExploitationCertificate certify_unbeatable(const SymmetricGame& game, const RuleSpec& rule,
                                           std::optional<int> y0, const Tol& tol);

// V_moves(y0) of the recurrence above.
Num best_prefix_value(const TransitionGraph& g, int y0, int moves);

// Exhaustive maximum of the relative-payoff total over all opponent sequences
// x_0..x_T and all their prefixes. Throws std::invalid_argument when n^(T+1)
// exceeds 1e7. Equals best_prefix_value at T+1 moves.
Num brute_force_oracle(const SymmetricGame& game, const RuleSpec& rule, int y0, int horizon,
                       const Tol& tol);

const char* to_string(ExploitVerdict v);

}  // namespace imitation
