#include "imitation/potential.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>
#include <string>

namespace imitation {

namespace {

// (abs desc, triple asc): the unique best under this order is what the serial
// scan's strict-improvement update keeps, so parallel merges reproduce it.
bool better(const ValuationScan& a, const ValuationScan& b) {
    if (a.abs_sum != b.abs_sum) return a.abs_sum > b.abs_sum;
    if (a.x0 != b.x0) return a.x0 < b.x0;
    if (a.x1 != b.x1) return a.x1 < b.x1;
    return a.x2 < b.x2;
}

}  // namespace

ValuationScan valuation_scan_serial(const RelativePayoffGame& rel) {
    const int n = rel.num_actions();
    const SquareMatrix& d = rel.delta;
    ValuationScan best;
    best.abs_sum = -1.0;
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            for (int k = 0; k < n; ++k) {
                const Num s = d(i, k) + d(j, i) + d(k, j);
                const Num a = std::fabs(s);
                if (a > best.abs_sum) best = ValuationScan{s, a, i, j, k};
            }
    return best;
}

ValuationScan valuation_scan_parallel(const RelativePayoffGame& rel) {
    const int n = rel.num_actions();
    const SquareMatrix& d = rel.delta;
    ValuationScan best;
    best.abs_sum = -1.0;
#pragma omp parallel
    {
        ValuationScan local;
        local.abs_sum = -1.0;
#pragma omp for schedule(static) nowait
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j)
                for (int k = 0; k < n; ++k) {
                    const Num s = d(i, k) + d(j, i) + d(k, j);
                    const Num a = std::fabs(s);
                    ValuationScan cand{s, a, i, j, k};
                    if (better(cand, local)) local = cand;
                }
#pragma omp critical
        {
            if (best.abs_sum < 0.0 || better(local, best)) {
                if (local.abs_sum >= 0.0) best = local;
            }
        }
    }
    return best;
}

PotentialCertificate check_valuation(const RelativePayoffGame& rel, const Tol& tol) {
    const ValuationScan scan = rel.num_actions() >= kParallelScanThreshold
                                   ? valuation_scan_parallel(rel)
                                   : valuation_scan_serial(rel);
    PotentialCertificate cert;
    cert.max_cycle_violation = scan.abs_sum;
    if (scan.abs_sum <= tol.threshold(rel.max_abs)) {
        cert.verdict = PotentialVerdict::exact_potential;
    } else {
        cert.verdict = PotentialVerdict::not_exact_potential;
        cert.witness = TripleWitness{scan.x0, scan.x1, scan.x2, scan.cycle_sum};
    }
    return cert;
}

SeparabilityScan try_separable(const RelativePayoffGame& rel, const Tol& tol) {
    const int n = rel.num_actions();
    const SquareMatrix& d = rel.delta;
    SeparabilityScan out;
    out.max_violation = -1.0;
    for (int x = 0; x < n; ++x)
        for (int y = 0; y < n; ++y) {
            // f(x) = delta(x, a0), so the residual is a pure 3-cycle sum
            const Num err = std::fabs(d(x, y) - (d(x, 0) - d(y, 0)));
            if (err > out.max_violation) {
                out.max_violation = err;
                out.x = x;
                out.y = y;
            }
        }
    out.ok = out.max_violation <= tol.threshold(rel.max_abs);
    return out;
}

SeparableDecomposition separable_decomposition(const RelativePayoffGame& rel, const Tol& tol) {
    const SeparabilityScan scan = try_separable(rel, tol);
    if (!scan.ok)
        throw std::logic_error(
            "separable decomposition verification failed at (" + rel.actions[scan.x] + ", " +
            rel.actions[scan.y] + "), residual " + std::to_string(scan.max_violation));
    const int n = rel.num_actions();
    SeparableDecomposition dec;
    dec.f.resize(n);
    dec.g.resize(n);
    for (int x = 0; x < n; ++x) {
        dec.f[x] = rel.delta(x, 0);
        dec.g[x] = -dec.f[x];
    }
    return dec;
}

namespace {

bool better(const PotentialVerifyScan& a, const PotentialVerifyScan& b) {
    if (a.max_violation != b.max_violation) return a.max_violation > b.max_violation;
    if (a.x != b.x) return a.x < b.x;
    if (a.x_alt != b.x_alt) return a.x_alt < b.x_alt;
    if (a.y != b.y) return a.y < b.y;
    return a.equation < b.equation;
}

inline void scan_potential_triple(const SquareMatrix& pi, const SquareMatrix& P, int x, int x_alt,
                                  int y, PotentialVerifyScan& best) {
    const Num lhs = pi(x, y) - pi(x_alt, y);
    const Num v1 = std::fabs(lhs - (P(x, y) - P(x_alt, y)));
    if (v1 > best.max_violation) best = PotentialVerifyScan{v1, x, x_alt, y, 1};
    const Num v2 = std::fabs(lhs - (P(y, x) - P(y, x_alt)));
    if (v2 > best.max_violation) best = PotentialVerifyScan{v2, x, x_alt, y, 2};
}

}  // namespace

PotentialVerifyScan potential_verify_serial(const SquareMatrix& pi, const SquareMatrix& P) {
    const int n = pi.size();
    PotentialVerifyScan best;
    best.max_violation = -1.0;
    for (int x = 0; x < n; ++x)
        for (int x_alt = 0; x_alt < n; ++x_alt)
            for (int y = 0; y < n; ++y) scan_potential_triple(pi, P, x, x_alt, y, best);
    return best;
}

PotentialVerifyScan potential_verify_parallel(const SquareMatrix& pi, const SquareMatrix& P) {
    const int n = pi.size();
    PotentialVerifyScan best;
    best.max_violation = -1.0;
#pragma omp parallel
    {
        PotentialVerifyScan local;
        local.max_violation = -1.0;
#pragma omp for schedule(static) nowait
        for (int x = 0; x < n; ++x)
            for (int x_alt = 0; x_alt < n; ++x_alt)
                for (int y = 0; y < n; ++y) scan_potential_triple(pi, P, x, x_alt, y, local);
#pragma omp critical
        {
            if (local.max_violation >= 0.0 &&
                (best.max_violation < 0.0 || better(local, best)))
                best = local;
        }
    }
    return best;
}

PotentialConstruction try_construct_potential(const SymmetricGame& game, const Tol& tol) {
    const int n = game.num_actions();
    const SquareMatrix& pi = game.payoff;
    PotentialConstruction out;
    out.P = SquareMatrix(n);
    for (int i = 0; i < n; ++i) {
        const Num row_step = pi(i, 0) - pi(0, 0);
        for (int j = 0; j < n; ++j) out.P(i, j) = row_step + (pi(j, i) - pi(0, i));
    }
    const PotentialVerifyScan scan = n >= kParallelScanThreshold
                                         ? potential_verify_parallel(pi, out.P)
                                         : potential_verify_serial(pi, out.P);
    out.max_violation = scan.max_violation;
    out.x = scan.x;
    out.x_alt = scan.x_alt;
    out.y = scan.y;
    out.equation = scan.equation;
    const double scale = std::max(pi.max_abs(), out.P.max_abs());
    out.ok = scan.max_violation <= tol.threshold(scale);
    return out;
}

SquareMatrix construct_exact_potential(const SymmetricGame& game, const Tol& tol) {
    PotentialConstruction c = try_construct_potential(game, tol);
    if (!c.ok)
        throw std::runtime_error("no exact potential: defining equation " +
                                 std::to_string(c.equation) + " fails at (" +
                                 game.actions[c.x] + " vs " + game.actions[c.x_alt] +
                                 " against " + game.actions[c.y] + "), residual " +
                                 std::to_string(c.max_violation));
    return std::move(c.P);
}

namespace {

struct RankedDiff {
    Num violation = -1.0;
    int r1 = -1, r2 = -1, r3 = -1, r4 = -1;  // ranks: x_lo, x_hi, y_lo, y_hi
};

bool better(const RankedDiff& a, const RankedDiff& b) {
    if (a.violation != b.violation) return a.violation > b.violation;
    if (a.r1 != b.r1) return a.r1 < b.r1;
    if (a.r2 != b.r2) return a.r2 < b.r2;
    if (a.r3 != b.r3) return a.r3 < b.r3;
    return a.r4 < b.r4;
}

inline Num diff_violation(const SquareMatrix& d, const std::vector<int>& order,
                          DiffDirection dir, int r1, int r2, int r3, int r4) {
    const int xl = order[r1], xh = order[r2], yl = order[r3], yh = order[r4];
    const Num at_hi = d(xh, yh) - d(xl, yh);
    const Num at_lo = d(xh, yl) - d(xl, yl);
    return dir == DiffDirection::increasing ? at_lo - at_hi : at_hi - at_lo;
}

DiffScan finish(const RankedDiff& best, const std::vector<int>& order) {
    DiffScan out;
    out.max_violation = best.violation;
    if (best.r1 >= 0) {
        out.x_lo = order[best.r1];
        out.x_hi = order[best.r2];
        out.y_lo = order[best.r3];
        out.y_hi = order[best.r4];
    }
    return out;
}

}  // namespace

DiffScan differences_scan_serial(const RelativePayoffGame& rel, const std::vector<int>& order,
                                 DiffDirection dir) {
    const int n = rel.num_actions();
    RankedDiff best;
    for (int r1 = 0; r1 < n; ++r1)
        for (int r2 = r1 + 1; r2 < n; ++r2)
            for (int r3 = 0; r3 < n; ++r3)
                for (int r4 = r3 + 1; r4 < n; ++r4) {
                    const Num v = diff_violation(rel.delta, order, dir, r1, r2, r3, r4);
                    if (v > best.violation) best = RankedDiff{v, r1, r2, r3, r4};
                }
    return finish(best, order);
}

DiffScan differences_scan_parallel(const RelativePayoffGame& rel, const std::vector<int>& order,
                                   DiffDirection dir) {
    const int n = rel.num_actions();
    RankedDiff best;
#pragma omp parallel
    {
        RankedDiff local;
#pragma omp for schedule(static) nowait
        for (int r1 = 0; r1 < n; ++r1)
            for (int r2 = r1 + 1; r2 < n; ++r2)
                for (int r3 = 0; r3 < n; ++r3)
                    for (int r4 = r3 + 1; r4 < n; ++r4) {
                        const Num v = diff_violation(rel.delta, order, dir, r1, r2, r3, r4);
                        RankedDiff cand{v, r1, r2, r3, r4};
                        if (better(cand, local)) local = cand;
                    }
#pragma omp critical
        {
            if (local.r1 >= 0 && (best.r1 < 0 || better(local, best))) best = local;
        }
    }
    return finish(best, order);
}

DifferencesResult check_differences(const RelativePayoffGame& rel, const std::vector<int>& order,
                                    DiffDirection dir, const Tol& tol) {
    const int n = rel.num_actions();
    if (static_cast<int>(order.size()) != n)
        throw std::invalid_argument("order must rank every action exactly once");
    std::vector<int> sorted = order;
    std::sort(sorted.begin(), sorted.end());
    for (int i = 0; i < n; ++i)
        if (sorted[i] != i)
            throw std::invalid_argument("order must rank every action exactly once");

    const DiffScan scan = n >= kParallelScanThreshold
                              ? differences_scan_parallel(rel, order, dir)
                              : differences_scan_serial(rel, order, dir);
    DifferencesResult res;
    res.max_violation = scan.max_violation;
    res.holds = scan.max_violation <= tol.threshold(rel.max_abs);
    if (!res.holds)
        res.witness = QuadWitness{scan.x_hi, scan.x_lo, scan.y_hi, scan.y_lo, scan.max_violation};
    return res;
}

bool differences_hold(const RelativePayoffGame& rel, const std::vector<int>& order,
                      DiffDirection dir, const Tol& tol) {
    const int n = rel.num_actions();
    const double thr = tol.threshold(rel.max_abs);
    for (int r1 = 0; r1 < n; ++r1)
        for (int r2 = r1 + 1; r2 < n; ++r2)
            for (int r3 = 0; r3 < n; ++r3)
                for (int r4 = r3 + 1; r4 < n; ++r4)
                    if (diff_violation(rel.delta, order, dir, r1, r2, r3, r4) > thr) return false;
    return true;
}

OrderResult search_differences_order(const RelativePayoffGame& rel, DiffDirection dir,
                                     const Tol& tol, bool valuation_verdict) {
    const int n = rel.num_actions();
    std::vector<int> order(n);
    std::iota(order.begin(), order.end(), 0);
    if (differences_hold(rel, order, dir, tol)) return OrderResult{true, OrderSearch::identity, order};
    if (n <= 8) {
        // lexicographic enumeration, first satisfying order wins
        std::vector<int> perm = order;
        while (std::next_permutation(perm.begin(), perm.end()))
            if (differences_hold(rel, perm, dir, tol))
                return OrderResult{true, OrderSearch::enumeration, perm};
        return OrderResult{false, OrderSearch::enumeration, {}};
    }
    return OrderResult{valuation_verdict, OrderSearch::skipped, {}};
}

EquivalenceReport check_equivalence(const SymmetricGame& game, const Tol& tol) {
    const RelativePayoffGame rel = build_relative_game(game);
    EquivalenceReport rep;
    rep.valuation = check_valuation(rel, tol).verdict == PotentialVerdict::exact_potential;
    rep.pi_exact_potential = try_construct_potential(game, tol).ok;
    rep.delta_exact_potential = try_construct_potential(relative_game_as_game(rel), tol).ok;
    rep.additively_separable = try_separable(rel, tol).ok;
    const OrderResult inc =
        search_differences_order(rel, DiffDirection::increasing, tol, rep.valuation);
    const OrderResult dec =
        search_differences_order(rel, DiffDirection::decreasing, tol, rep.valuation);
    rep.increasing_differences = inc.holds;
    rep.decreasing_differences = dec.holds;
    rep.order_search_incr = inc.how;
    rep.order_search_decr = dec.how;
    rep.consistent = rep.pi_exact_potential == rep.valuation &&
                     rep.delta_exact_potential == rep.valuation &&
                     rep.increasing_differences == rep.valuation &&
                     rep.decreasing_differences == rep.valuation &&
                     rep.additively_separable == rep.valuation;
    return rep;
}

PotentialCertificate analyze_potential(const SymmetricGame& game, const Tol& tol) {
    const RelativePayoffGame rel = build_relative_game(game);
    PotentialCertificate cert = check_valuation(rel, tol);
    if (cert.verdict == PotentialVerdict::exact_potential) {
        cert.decomposition = separable_decomposition(rel, tol);
        cert.potential = construct_exact_potential(game, tol);
    }
    return cert;
}

}  // namespace imitation
