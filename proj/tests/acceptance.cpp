// Acceptance gate: eight end-to-end criteria, one PASS/FAIL line each.
// Exits nonzero if any criterion fails. Tolerances are pinned below; integer
// payoff games are compared exactly (payoff sums stay far below 2^53).

#include <chrono>
#include <cstdio>
#include <functional>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "imitation/catalog.hpp"
#include "imitation/game.hpp"
#include "imitation/potential.hpp"
#include "imitation/rules.hpp"
#include "imitation/solver.hpp"

using namespace imitation;

namespace {

// Pinned parameters: sweep sizes, seeds, numeric tolerances, time budgets.
constexpr double kEpsilon = kDefaultEpsilon;  // float-mode comparisons (1e-9, eps-scaled)
constexpr int kSweepGames = 500;              // criterion 3 biconditional sweep
constexpr uint64_t kSweepSeed = 3001;
constexpr int kPotentialGames = 100;  // criterion 4 class sweep
constexpr int kCustomRules = 50;
constexpr uint64_t kPotentialSeed = 4001;
constexpr long kMinPrefixChecks = 10000;  // criterion 4 telescoping coverage
constexpr int kPayoffLo = -3, kPayoffHi = 3;  // criterion 5 exhaustive 2x2 box
constexpr int kRandom2x2 = 100000;            // criterion 5 seeded draws
constexpr uint64_t kBoxSeed = 5001;
constexpr int kOracleTrials = 200;  // criterion 7 oracle cross-checks
constexpr uint64_t kOracleSeed = 7001;
constexpr double kBudgetSmallMs = 1000.0;  // criteria 1 and 2
constexpr double kBudgetSweepMs = 60000.0;  // criterion 3

int g_failures = 0;

void criterion(int number, const std::string& title,
               const std::function<std::string()>& body) {
    const auto start = std::chrono::steady_clock::now();
    std::string failure;
    std::string detail;
    try {
        detail = body();
    } catch (const std::exception& e) {
        failure = std::string("exception: ") + e.what();
    }
    const double ms =
        std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start)
            .count();
    const bool ok = failure.empty();
    if (!ok) ++g_failures;
    char timing[32];
    std::snprintf(timing, sizeof timing, "%.1f ms", ms);
    std::cout << (ok ? "PASS" : "FAIL") << "  criterion " << number << ": " << title << " — "
              << (ok ? detail : failure) << " (" << timing << ")\n";
}

struct Check {
    std::string failure;
    void operator()(bool cond, const std::string& msg) {
        if (!cond && failure.empty()) failure = msg;
    }
    void done() const {
        if (!failure.empty()) throw std::runtime_error(failure);
    }
};

std::vector<RuleSpec> named_rules() {
    return {RuleSpec::tit_for_tat(), RuleSpec::imitate_if_better(),
            RuleSpec::imitate_the_best(TiePolicy::stay),
            RuleSpec::imitate_the_best(TiePolicy::copy)};
}

Num replay_cycle(const TransitionGraph& g, int entry, const std::vector<int>& xs) {
    Num sum = 0.0;
    int y = entry;
    for (int x : xs) {
        sum += g.delta(x, y);
        y = g.target_at(y, x);
    }
    if (y != entry) throw std::runtime_error("witness cycle does not close");
    return sum;
}

double elapsed_ms(const std::chrono::steady_clock::time_point& t0) {
    return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0)
        .count();
}

}  // namespace

int main() {
    std::cout << "acceptance: imitation unbeatability engine\n";

    criterion(1, "chicken is exploitable exactly to the single-step bound", [] {
        const auto t0 = std::chrono::steady_clock::now();
        const SymmetricGame g = build_catalog_game(parse_catalog_spec("chicken"));
        const Tol tol = g.tol(kEpsilon);
        Check check;
        const ExploitationCertificate cert =
            certify_unbeatable(g, RuleSpec::tit_for_tat(), std::nullopt, tol);
        check(cert.verdict == ExploitVerdict::essentially_unbeatable,
              "chicken/tft not essentially unbeatable");
        check(cert.bound == 3.0, "bound != 3");
        check(cert.sup_total.has_value() && *cert.sup_total == 3.0, "sup_total != 3");
        check(cert.y0 == 0 && cert.worst_case_y0, "worst start is not swerve");
        check(cert.witness_path == std::vector<int>{1}, "witness path is not [straight]");
        check(elapsed_ms(t0) < kBudgetSmallMs, "exceeded 1s budget");
        check.done();
        return std::string("worst-case sup_total == bound == 3, witness [straight]");
    });

    criterion(2, "the 3x3 counterexample separates tit-for-tat from better-response imitation",
              [] {
        const auto t0 = std::chrono::steady_clock::now();
        const SymmetricGame g = build_catalog_game(parse_catalog_spec("counterexample_3x3"));
        const Tol tol = g.tol(kEpsilon);
        Check check;

        const ExploitationCertificate pump =
            certify_unbeatable(g, RuleSpec::tit_for_tat(), std::nullopt, tol);
        check(pump.verdict == ExploitVerdict::money_pump, "tft is not pumped");
        check(pump.cycle_sum == 8.0, "pump gain != 8");
        const TransitionGraph tft_graph =
            build_transition_graph(RuleSpec::tit_for_tat(), build_relative_game(g), tol);
        check(replay_cycle(tft_graph, pump.cycle_entry_state, pump.witness_cycle) == 8.0,
              "witness cycle does not replay to 8");

        for (const RuleSpec& rule :
             {RuleSpec::imitate_if_better(), RuleSpec::imitate_the_best(TiePolicy::stay),
              RuleSpec::imitate_the_best(TiePolicy::copy)}) {
            const ExploitationCertificate cert = certify_unbeatable(g, rule, std::nullopt, tol);
            check(cert.verdict == ExploitVerdict::essentially_unbeatable,
                  rule.label() + " is not essentially unbeatable");
            check(cert.sup_total.has_value() && *cert.sup_total == 10.0 && cert.bound == 10.0,
                  rule.label() + ": sup_total != bound != 10");
        }
        check(elapsed_ms(t0) < kBudgetSmallMs, "exceeded 1s budget");
        check.done();
        return std::string("tft pumped (cycle gain 8); iib, itb:stay, itb:switch all at bound 10");
    });

    criterion(3, "valuation <=> tit-for-tat essentially unbeatable on 500 random games", [] {
        const auto t0 = std::chrono::steady_clock::now();
        Check check;
        int valuations = 0;
        for (int i = 0; i < kSweepGames; ++i) {
            const uint64_t seed = mix_seed(kSweepSeed, static_cast<uint64_t>(i));
            const int n = 2 + static_cast<int>(seed % 4u);  // 2..5
            const SymmetricGame g =
                generate_random_game(n, RandomGameMode::unrestricted, seed);
            const Tol tol = g.tol(kEpsilon);
            const bool valuation = check_valuation(build_relative_game(g), tol).verdict ==
                                   PotentialVerdict::exact_potential;
            const ExploitationCertificate cert =
                certify_unbeatable(g, RuleSpec::tit_for_tat(), std::nullopt, tol);
            const bool unbeatable = cert.verdict == ExploitVerdict::essentially_unbeatable;
            if (valuation) ++valuations;
            check(valuation == unbeatable,
                  "game " + std::to_string(i) + ": valuation=" +
                      (valuation ? "true" : "false") + " but tft verdict " +
                      to_string(cert.verdict));
        }
        check(elapsed_ms(t0) < kBudgetSweepMs, "exceeded 60s budget");
        check.done();
        std::ostringstream s;
        s << kSweepGames << " games (n in {2..5}, payoffs in [-9,9]), " << valuations
          << " valuations, biconditional holds throughout";
        return s.str();
    });

    criterion(4, "every imitation rule is unbeatable on random exact-potential games", [] {
        Check check;
        long prefix_checks = 0;
        for (int i = 0; i < kPotentialGames; ++i) {
            const uint64_t seed = mix_seed(kPotentialSeed, static_cast<uint64_t>(i));
            const int n = 2 + static_cast<int>(mix_seed(seed, 99) % 4u);
            const SymmetricGame g =
                generate_random_game(n, RandomGameMode::exact_potential, seed);
            const Tol tol = g.tol(kEpsilon);
            const RelativePayoffGame rel = build_relative_game(g);
            const SeparableDecomposition dec = separable_decomposition(rel, tol);

            std::vector<RuleSpec> rules = named_rules();
            for (int r = 0; r < kCustomRules; ++r)
                rules.push_back(RuleSpec::custom(generate_random_class_rule_table(
                    rel, mix_seed(seed, 1000 + static_cast<uint64_t>(r)), tol)));

            for (size_t r = 0; r < rules.size(); ++r) {
                const ExploitationCertificate cert =
                    certify_unbeatable(g, rules[r], std::nullopt, tol);
                check(cert.verdict == ExploitVerdict::essentially_unbeatable,
                      "game " + std::to_string(i) + ", rule #" + std::to_string(r) + ": " +
                          to_string(cert.verdict));
            }

            // Telescoping: along any rule trajectory the running total never
            // exceeds f(x_t) - f(y0).
            SplitMix64 rng{mix_seed(seed, 777)};
            for (int rep = 0; rep < 2; ++rep)
                for (size_t r = 0; r < 5 && r < rules.size(); ++r) {
                    const int y0 = rng.next_int(0, n - 1);
                    std::vector<int> xs(12);
                    for (int& x : xs) x = rng.next_int(0, n - 1);
                    for (const TrajectoryStep& st : trajectory(rules[r], rel, y0, xs, tol)) {
                        check(st.running_sum <= dec.f[st.opponent] - dec.f[y0],
                              "telescoping bound violated on game " + std::to_string(i));
                        ++prefix_checks;
                    }
                }
        }
        check(prefix_checks >= kMinPrefixChecks, "not enough telescoping prefix checks");
        check.done();
        std::ostringstream s;
        s << kPotentialGames << " games x " << (4 + kCustomRules) << " rules all unbeatable; "
          << prefix_checks << " trajectory prefixes obey the potential bound";
        return s.str();
    });

    criterion(5, "all symmetric 2x2 games are safe for the whole imitation class", [] {
        Check check;
        const std::vector<std::string> acts{"a", "b"};
        long cases = 0;
        auto certify_all = [&](const SymmetricGame& g, uint64_t rule_seed) {
            const Tol tol = g.tol(kEpsilon);
            const RelativePayoffGame rel = build_relative_game(g);
            check(check_valuation(rel, tol).verdict == PotentialVerdict::exact_potential,
                  "a 2x2 game failed the valuation check");
            std::vector<RuleSpec> rules = named_rules();
            rules.push_back(
                RuleSpec::custom(generate_random_class_rule_table(rel, rule_seed, tol)));
            for (const RuleSpec& rule : rules) {
                const ExploitationCertificate cert =
                    certify_unbeatable(g, rule, std::nullopt, tol);
                check(cert.verdict == ExploitVerdict::essentially_unbeatable,
                      "2x2 game beaten by " + rule.label());
                ++cases;
            }
        };

        SymmetricGame g;
        g.actions = acts;
        g.payoff = SquareMatrix(2);
        g.integer_mode = true;
        for (int p00 = kPayoffLo; p00 <= kPayoffHi; ++p00)
            for (int p01 = kPayoffLo; p01 <= kPayoffHi; ++p01)
                for (int p10 = kPayoffLo; p10 <= kPayoffHi; ++p10)
                    for (int p11 = kPayoffLo; p11 <= kPayoffHi; ++p11) {
                        g.payoff(0, 0) = p00;
                        g.payoff(0, 1) = p01;
                        g.payoff(1, 0) = p10;
                        g.payoff(1, 1) = p11;
                        certify_all(g, mix_seed(kBoxSeed, static_cast<uint64_t>(
                                                              ((p00 + 4) * 512 + (p01 + 4) * 64 +
                                                               (p10 + 4) * 8 + (p11 + 4)))));
                    }
        const long exhaustive = cases;

        for (int i = 0; i < kRandom2x2; ++i) {
            const uint64_t seed = mix_seed(kBoxSeed + 1, static_cast<uint64_t>(i));
            certify_all(generate_random_game(2, RandomGameMode::unrestricted, seed), seed);
        }
        check.done();
        std::ostringstream s;
        s << "2401 exhaustive tables in [-3,3] plus " << kRandom2x2 << " seeded draws ("
          << exhaustive << " + " << (cases - exhaustive) << " certifications)";
        return s.str();
    });

    criterion(6, "the five exact-potential characterizations agree with explicit order search",
              [] {
        Check check;
        int valuations = 0;
        for (int i = 0; i < kSweepGames; ++i) {
            const uint64_t seed = mix_seed(kSweepSeed, static_cast<uint64_t>(i));
            const int n = 2 + static_cast<int>(seed % 4u);
            const SymmetricGame g =
                generate_random_game(n, RandomGameMode::unrestricted, seed);
            const EquivalenceReport eq = check_equivalence(g, g.tol(kEpsilon));
            check(eq.consistent, "checkers disagree on sweep game " + std::to_string(i));
            check(eq.order_search_incr != OrderSearch::skipped &&
                      eq.order_search_decr != OrderSearch::skipped,
                  "order search unexpectedly skipped at n <= 5");
            check(eq.increasing_differences == eq.valuation &&
                      eq.decreasing_differences == eq.valuation,
                  "order search disagrees with the valuation verdict on game " +
                      std::to_string(i));
            if (eq.valuation) ++valuations;
        }
        check.done();
        std::ostringstream s;
        s << kSweepGames << " games, " << valuations
          << " valuations; all five checkers and both order searches agree";
        return s.str();
    });

    criterion(7, "the exhaustive oracle matches value iteration at every tried horizon", [] {
        Check check;
        for (int i = 0; i < kOracleTrials; ++i) {
            const uint64_t s = mix_seed(kOracleSeed, static_cast<uint64_t>(i));
            SplitMix64 rng{s};
            const int n = 2 + rng.next_int(0, 2);       // 2..4
            const int horizon = rng.next_int(0, 8);     // last time index, n^(T+1) <= 4^9
            const SymmetricGame g = generate_random_game(
                n, (i % 3 == 0) ? RandomGameMode::exact_potential : RandomGameMode::unrestricted,
                s);
            const Tol tol = g.tol(kEpsilon);
            const RelativePayoffGame rel = build_relative_game(g);
            RuleSpec rule = RuleSpec::tit_for_tat();
            switch (rng.next_int(0, 3)) {
                case 0: break;
                case 1: rule = RuleSpec::imitate_if_better(); break;
                case 2: rule = RuleSpec::imitate_the_best(TiePolicy::copy); break;
                case 3:
                    rule = RuleSpec::custom(
                        generate_random_class_rule_table(rel, mix_seed(s, 42), tol));
                    break;
            }
            const int y0 = rng.next_int(0, n - 1);
            const Num oracle = brute_force_oracle(g, rule, y0, horizon, tol);
            const TransitionGraph graph = build_transition_graph(rule, rel, tol);
            const Num vi = best_prefix_value(graph, y0, horizon + 1);
            check(oracle == vi, "trial " + std::to_string(i) + ": oracle " +
                                    std::to_string(oracle) + " != value iteration " +
                                    std::to_string(vi));
        }
        check.done();
        std::ostringstream s;
        s << kOracleTrials << " seeded (game, rule, y0, horizon <= 8) trials match exactly";
        return s.str();
    });

    criterion(8, "catalog families are valuations and safe at two parameter settings each", [] {
        Check check;
        const std::vector<std::string> specs{
            "chicken",
            "prisoners_dilemma",
            "prisoners_dilemma?r=4&s=-1&t=6&p=0",
            "cournot_linear",
            "cournot_linear?b=14&cost=linear&c=2",
            "bertrand_differentiated",
            "bertrand_differentiated?a=6&b=0.4&c=0.5",
            "public_goods",
            "public_goods?benefit=sqrt&cost=quadratic&c=0.1",
            "common_pool",
            "common_pool?e=8&c=2&a=6&b=0.5&hi=8",
            "minimum_effort",
            "minimum_effort?c=0.9",
            "synergistic",
            "synergistic?c=7",
            "diamond_search",
            "diamond_search?alpha=0.8&cost=quadratic&c=0.2",
        };
        int games = 0, certs = 0;
        for (const std::string& text : specs) {
            const CatalogSpec spec = parse_catalog_spec(text);
            const SymmetricGame g = build_catalog_game(spec);
            const Tol tol = g.tol(kEpsilon);
            const PotentialCertificate pot = analyze_potential(g, tol);
            check(pot.verdict == PotentialVerdict::exact_potential,
                  text + ": no exact potential");
            check(check_equivalence(g, tol).consistent, text + ": checkers disagree");

            const RelativePayoffGame rel = build_relative_game(g);
            std::vector<RuleSpec> rules = named_rules();
            rules.push_back(RuleSpec::custom(
                generate_random_class_rule_table(rel, mix_seed(8001, games), tol)));
            for (const RuleSpec& rule : rules) {
                const ExploitationCertificate cert =
                    certify_unbeatable(g, rule, std::nullopt, tol);
                check(cert.verdict == ExploitVerdict::essentially_unbeatable,
                      text + ": beaten by " + rule.label());
                ++certs;
            }
            if (spec.family == CatalogFamily::common_pool) {
                const CprClosedFormCheck cpr = check_cpr_closed_form(spec, g, tol);
                check(cpr.interior_holds, text + ": interior closed form off by " +
                                              std::to_string(cpr.max_err_interior));
                check(cpr.boundary_holds, text + ": boundary closed form off by " +
                                              std::to_string(cpr.max_err_boundary));
            }
            ++games;
        }
        check.done();
        std::ostringstream s;
        s << games << " catalog builds, " << certs
          << " rule certifications, common-pool closed form within tolerance";
        return s.str();
    });

    if (g_failures == 0) {
        std::cout << "SUMMARY: all 8 criteria passed\n";
        return 0;
    }
    std::cout << "SUMMARY: " << g_failures << " of 8 criteria FAILED\n";
    return 1;
}
