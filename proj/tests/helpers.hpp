#pragma once

#include <string>
#include <vector>

#include "imitation/game.hpp"

namespace testutil {

inline imitation::SymmetricGame make_game(std::vector<std::string> actions,
                                          std::vector<std::vector<double>> rows,
                                          std::string name = "test") {
    imitation::SymmetricGame g;
    g.name = std::move(name);
    g.actions = std::move(actions);
    const int n = static_cast<int>(g.actions.size());
    g.payoff = imitation::SquareMatrix(n);
    bool integral = true;
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            g.payoff(i, j) = rows[i][j];
            if (rows[i][j] != static_cast<long long>(rows[i][j])) integral = false;
        }
    g.integer_mode = integral;
    return g;
}

// Hawk-dove payoffs: the swerver yields 1 against straight, max advantage 3.
inline imitation::SymmetricGame chicken() {
    return make_game({"swerve", "straight"}, {{3, 1}, {4, 0}}, "chicken");
}

// The 3x3 game whose relative payoffs cycle: tit-for-tat loses 8 per lap.
inline imitation::SymmetricGame counterexample() {
    return make_game({"A", "B", "C"}, {{0, 0, -1}, {-1, 0, 0}, {0, 10, 0}}, "counterexample");
}

// No money pump but the best finite raid (4) beats the single-step bound (3).
inline imitation::SymmetricGame beatable_no_pump() {
    return make_game({"A", "B", "C"}, {{0, 0, 0}, {2, 0, 0}, {3, 2, 0}}, "beatable_no_pump");
}

}  // namespace testutil
