#pragma once

#include <cmath>
#include <string>
#include <vector>

namespace imitation {

// Payoffs are doubles in both numeric modes. Integer mode means every entry
// is integral; sums and differences of integral doubles are exact well below
// 2^53, so integer-mode comparisons use a zero threshold.
using Num = double;

inline constexpr double kDefaultEpsilon = 1e-9;

class SquareMatrix {
public:
    SquareMatrix() = default;
    explicit SquareMatrix(int n, Num fill = 0.0)
        : n_(n), v_(static_cast<size_t>(n) * static_cast<size_t>(n), fill) {}
    SquareMatrix(int n, std::vector<Num> entries);  // row-major, must hold n*n values

    int size() const { return n_; }
    Num operator()(int i, int j) const { return v_[static_cast<size_t>(i) * n_ + j]; }
    Num& operator()(int i, int j) { return v_[static_cast<size_t>(i) * n_ + j]; }
    const std::vector<Num>& entries() const { return v_; }

    Num max_abs() const;
    Num max_entry() const;

    bool operator==(const SquareMatrix&) const = default;

private:
    int n_ = 0;
    std::vector<Num> v_;
};

// Comparison policy: exact in integer mode, eps-scaled in float mode. The
// scale is picked per call site: max |delta| for sign tests and verdicts,
// n * max |delta| for accumulated walk and cycle sums.
struct Tol {
    bool exact = true;
    double eps = kDefaultEpsilon;

    double threshold(double scale) const { return exact ? 0.0 : eps * std::max(1.0, scale); }
    bool is_zero(Num v, double scale) const { return std::fabs(v) <= threshold(scale); }
    bool is_pos(Num v, double scale) const { return v > threshold(scale); }
    bool is_neg(Num v, double scale) const { return v < -threshold(scale); }
};

struct SymmetricGame {
    std::string name;
    std::vector<std::string> actions;
    SquareMatrix payoff;  // payoff(i, j): payoff to the player choosing actions[i] against actions[j]
    bool integer_mode = true;

    int num_actions() const { return payoff.size(); }
    int action_index(const std::string& label) const;  // -1 if unknown
    Tol tol(double eps = kDefaultEpsilon) const { return Tol{integer_mode, eps}; }

    // Throws std::invalid_argument on a violated invariant: empty action set,
    // label/table size mismatch, duplicate labels, non-finite entries.
    void validate() const;
};

struct RelativePayoffGame {
    std::vector<std::string> actions;
    SquareMatrix delta;  // delta(i, j) = payoff(i, j) - payoff(j, i); skew-symmetric, zero diagonal
    bool integer_mode = true;
    Num max_abs = 0.0;   // cached max |delta| entry

    int num_actions() const { return delta.size(); }
    Tol tol(double eps = kDefaultEpsilon) const { return Tol{integer_mode, eps}; }
};

RelativePayoffGame build_relative_game(const SymmetricGame& game);

// Max over all entries of delta. Always >= 0 since the diagonal is zero.
Num max_relative_payoff(const RelativePayoffGame& rel);

// The relative game reinterpreted as a symmetric game in its own right, so
// the potential machinery can be applied to delta itself.
SymmetricGame relative_game_as_game(const RelativePayoffGame& rel);

}  // namespace imitation
