// Times the serial and OpenMP scan kernels on random games and checks that
// both flavors pick the identical witness.

#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <numeric>
#include <string>
#include <vector>

#include <omp.h>

#include "imitation/catalog.hpp"
#include "imitation/potential.hpp"

using namespace imitation;

namespace {

using Clock = std::chrono::steady_clock;

template <class F>
double time_ms(int reps, F&& fn) {
    double best = 1e300;
    for (int r = 0; r < reps; ++r) {
        const auto t0 = Clock::now();
        fn();
        const auto t1 = Clock::now();
        best = std::min(best, std::chrono::duration<double, std::milli>(t1 - t0).count());
    }
    return best;
}

void row(const char* kernel, int n, double serial_ms, double parallel_ms, bool identical) {
    std::printf("%-18s %6d %12.2f %12.2f %9.2fx %10s\n", kernel, n, serial_ms, parallel_ms,
                serial_ms / parallel_ms, identical ? "yes" : "NO");
}

}  // namespace

int main(int argc, char** argv) {
    int reps = 3;
    std::vector<int> sizes{48, 96, 144};
    std::vector<int> diff_sizes{24, 48, 64};
    for (int i = 1; i < argc; ++i) {
        const std::string a = argv[i];
        if (a == "--reps" && i + 1 < argc) {
            reps = std::atoi(argv[++i]);
        } else if (a == "--sizes" && i + 1 < argc) {
            sizes.clear();
            std::string list = argv[++i];
            size_t pos = 0;
            while (pos < list.size()) {
                size_t comma = list.find(',', pos);
                sizes.push_back(std::stoi(list.substr(pos, comma - pos)));
                if (comma == std::string::npos) break;
                pos = comma + 1;
            }
            diff_sizes = sizes;
        } else {
            std::fprintf(stderr, "usage: %s [--reps N] [--sizes n1,n2,...]\n", argv[0]);
            return 2;
        }
    }

    std::printf("threads: %d\n", omp_get_max_threads());
    std::printf("%-18s %6s %12s %12s %9s %10s\n", "kernel", "n", "serial ms", "parallel ms",
                "speedup", "identical");

    for (int n : sizes) {
        const SymmetricGame game =
            generate_random_game(n, RandomGameMode::unrestricted, 7u + n);
        const RelativePayoffGame rel = build_relative_game(game);
        ValuationScan s{}, p{};
        const double ts = time_ms(reps, [&] { s = valuation_scan_serial(rel); });
        const double tp = time_ms(reps, [&] { p = valuation_scan_parallel(rel); });
        const bool same = s.cycle_sum == p.cycle_sum && s.x0 == p.x0 && s.x1 == p.x1 &&
                          s.x2 == p.x2;
        row("valuation 3-cycle", n, ts, tp, same);
    }

    for (int n : sizes) {
        const SymmetricGame game =
            generate_random_game(n, RandomGameMode::exact_potential, 11u + n);
        const Tol tol;  // integer mode, exact
        SquareMatrix P = construct_exact_potential(game, tol);
        PotentialVerifyScan s{}, p{};
        const double ts = time_ms(reps, [&] { s = potential_verify_serial(game.payoff, P); });
        const double tp = time_ms(reps, [&] { p = potential_verify_parallel(game.payoff, P); });
        const bool same = s.max_violation == p.max_violation && s.x == p.x &&
                          s.x_alt == p.x_alt && s.y == p.y && s.equation == p.equation;
        row("potential verify", n, ts, tp, same);
    }

    for (int n : diff_sizes) {
        const SymmetricGame game =
            generate_random_game(n, RandomGameMode::unrestricted, 13u + n);
        const RelativePayoffGame rel = build_relative_game(game);
        std::vector<int> order(n);
        std::iota(order.begin(), order.end(), 0);
        DiffScan s{}, p{};
        const double ts = time_ms(
            reps, [&] { s = differences_scan_serial(rel, order, DiffDirection::increasing); });
        const double tp = time_ms(
            reps, [&] { p = differences_scan_parallel(rel, order, DiffDirection::increasing); });
        const bool same = s.max_violation == p.max_violation && s.x_hi == p.x_hi &&
                          s.x_lo == p.x_lo && s.y_hi == p.y_hi && s.y_lo == p.y_lo;
        row("differences scan", n, ts, tp, same);
    }
    return 0;
}
