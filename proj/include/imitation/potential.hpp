#pragma once

#include <optional>
#include <vector>

#include "imitation/game.hpp"

namespace imitation {

// Scans below exist in serial and OpenMP variants. Both select the witness by
// the same total order — larger |violation| first, then lexicographically
// smallest index tuple — so their results are bit-identical regardless of
// thread count. Dispatching wrappers pick the parallel kernel for large n.
inline constexpr int kParallelScanThreshold = 24;

struct ValuationScan {
    Num cycle_sum = 0.0;   // signed sum delta(x0,x2) + delta(x1,x0) + delta(x2,x1)
    Num abs_sum = 0.0;     // |cycle_sum|, the ranking key
    int x0 = -1, x1 = -1, x2 = -1;
};

// Max-|sum| 3-cycle over all ordered triples. A zero max is exactly the
// valuation property.
ValuationScan valuation_scan_serial(const RelativePayoffGame& rel);
ValuationScan valuation_scan_parallel(const RelativePayoffGame& rel);

struct TripleWitness {
    int x0 = -1, x1 = -1, x2 = -1;
    Num cycle_sum = 0.0;
};

struct SeparableDecomposition {
    std::vector<Num> f;  // normalized f[0] = 0
    std::vector<Num> g;  // g = -f
};

enum class PotentialVerdict { exact_potential, not_exact_potential };

struct PotentialCertificate {
    PotentialVerdict verdict = PotentialVerdict::not_exact_potential;
    Num max_cycle_violation = 0.0;
    std::optional<SeparableDecomposition> decomposition;  // present on exact_potential
    std::optional<SquareMatrix> potential;                // present on exact_potential
    std::optional<TripleWitness> witness;                 // present on not_exact_potential
};

// Decides the valuation property via the 3-cycle scan and, when it holds,
// fills in the separable decomposition and an exact potential.
PotentialCertificate analyze_potential(const SymmetricGame& game, const Tol& tol);

// Valuation verdict only (no construction).
PotentialCertificate check_valuation(const RelativePayoffGame& rel, const Tol& tol);

// Precondition: check_valuation passed. Verifies delta(x,y) = f(x) - f(y) for
// every pair and throws std::logic_error naming the worst pair otherwise.
SeparableDecomposition separable_decomposition(const RelativePayoffGame& rel, const Tol& tol);

struct PotentialConstruction {
    bool ok = false;
    SquareMatrix P;
    Num max_violation = 0.0;
    int x = -1, x_alt = -1, y = -1;  // worst-violating triple when !ok
    int equation = 0;                // which defining equation failed (1 or 2)
};

// Staircase construction P(x,y) = [pi(x,a0) - pi(a0,a0)] + [pi(y,x) - pi(a0,x)],
// then an exhaustive check of both defining equations.
PotentialConstruction try_construct_potential(const SymmetricGame& game, const Tol& tol);

// As above but throws std::runtime_error("no exact potential: ...") on failure.
SquareMatrix construct_exact_potential(const SymmetricGame& game, const Tol& tol);

struct PotentialVerifyScan {
    Num max_violation = 0.0;
    int x = -1, x_alt = -1, y = -1;
    int equation = 0;
};

PotentialVerifyScan potential_verify_serial(const SquareMatrix& pi, const SquareMatrix& P);
PotentialVerifyScan potential_verify_parallel(const SquareMatrix& pi, const SquareMatrix& P);

enum class DiffDirection { increasing, decreasing };

struct QuadWitness {
    int x_hi = -1, x_lo = -1, y_hi = -1, y_lo = -1;  // action indices, hi/lo in the given order
    Num violation = 0.0;                             // positive amount by which the inequality fails
};

struct DifferencesResult {
    bool holds = false;
    Num max_violation = 0.0;
    std::optional<QuadWitness> witness;  // present when !holds
};

// order[r] is the action index at rank r. Checks the differences inequality of
// delta for all rank pairs x_hi > x_lo, y_hi > y_lo.
DifferencesResult check_differences(const RelativePayoffGame& rel, const std::vector<int>& order,
                                    DiffDirection dir, const Tol& tol);

struct DiffScan {
    Num max_violation = 0.0;  // <= 0 when the property holds everywhere
    int x_hi = -1, x_lo = -1, y_hi = -1, y_lo = -1;
};

DiffScan differences_scan_serial(const RelativePayoffGame& rel, const std::vector<int>& order,
                                 DiffDirection dir);
DiffScan differences_scan_parallel(const RelativePayoffGame& rel, const std::vector<int>& order,
                                   DiffDirection dir);

// Early-exit existence test used by the order search.
bool differences_hold(const RelativePayoffGame& rel, const std::vector<int>& order,
                      DiffDirection dir, const Tol& tol);

enum class OrderSearch { identity, enumeration, skipped };

struct OrderResult {
    bool holds = false;
    OrderSearch how = OrderSearch::identity;
    std::vector<int> order;  // a satisfying order when holds and how != skipped
};

// Identity order first; full permutation enumeration for n <= 8; for larger n
// the search is skipped and the valuation verdict is substituted.
OrderResult search_differences_order(const RelativePayoffGame& rel, DiffDirection dir,
                                     const Tol& tol, bool valuation_verdict);

struct EquivalenceReport {
    bool valuation = false;              // 3-cycle scan
    bool pi_exact_potential = false;     // exact potential of the game itself
    bool delta_exact_potential = false;  // exact potential of the relative game
    bool increasing_differences = false;
    bool decreasing_differences = false;
    bool additively_separable = false;
    OrderSearch order_search_incr = OrderSearch::identity;
    OrderSearch order_search_decr = OrderSearch::identity;
    bool consistent = false;  // all five checks agree (and match the valuation scan)
};

// Runs all five equivalent characterizations independently.
EquivalenceReport check_equivalence(const SymmetricGame& game, const Tol& tol);

// Non-throwing separability check with the worst-violating pair.
struct SeparabilityScan {
    bool ok = false;
    Num max_violation = 0.0;
    int x = -1, y = -1;
};
SeparabilityScan try_separable(const RelativePayoffGame& rel, const Tol& tol);

}  // namespace imitation
