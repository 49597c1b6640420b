#include "imitation/game.hpp"

#include <algorithm>
#include <set>
#include <stdexcept>

namespace imitation {

SquareMatrix::SquareMatrix(int n, std::vector<Num> entries) : n_(n), v_(std::move(entries)) {
    if (n < 0 || v_.size() != static_cast<size_t>(n) * static_cast<size_t>(n))
        throw std::invalid_argument("SquareMatrix: entry count does not match size");
}

Num SquareMatrix::max_abs() const {
    Num m = 0.0;
    for (Num x : v_) m = std::max(m, std::fabs(x));
    return m;
}

Num SquareMatrix::max_entry() const {
    Num m = v_.empty() ? 0.0 : v_[0];
    for (Num x : v_) m = std::max(m, x);
    return m;
}

int SymmetricGame::action_index(const std::string& label) const {
    for (size_t i = 0; i < actions.size(); ++i)
        if (actions[i] == label) return static_cast<int>(i);
    return -1;
}

void SymmetricGame::validate() const {
    const int n = payoff.size();
    if (n < 1) throw std::invalid_argument("game must have at least one action");
    if (actions.size() != static_cast<size_t>(n))
        throw std::invalid_argument("action list length does not match payoff table size");
    std::set<std::string> seen;
    for (const auto& a : actions)
        if (!seen.insert(a).second) throw std::invalid_argument("duplicate action label: " + a);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            if (!std::isfinite(payoff(i, j)))
                throw std::invalid_argument("non-finite payoff at (" + actions[i] + ", " +
                                            actions[j] + ")");
}

RelativePayoffGame build_relative_game(const SymmetricGame& game) {
    game.validate();
    const int n = game.num_actions();
    RelativePayoffGame rel;
    rel.actions = game.actions;
    rel.integer_mode = game.integer_mode;
    rel.delta = SquareMatrix(n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) rel.delta(i, j) = game.payoff(i, j) - game.payoff(j, i);
    rel.max_abs = rel.delta.max_abs();
    return rel;
}

Num max_relative_payoff(const RelativePayoffGame& rel) { return rel.delta.max_entry(); }

SymmetricGame relative_game_as_game(const RelativePayoffGame& rel) {
    SymmetricGame g;
    g.name = "relative";
    g.actions = rel.actions;
    g.payoff = rel.delta;
    g.integer_mode = rel.integer_mode;
    return g;
}

}  // namespace imitation
