#include "imitation/cli.hpp"

#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>

#include <CLI11.hpp>

#include "imitation/catalog.hpp"
#include "imitation/game_io.hpp"
#include "imitation/potential.hpp"
#include "imitation/report.hpp"
#include "imitation/rules.hpp"
#include "imitation/solver.hpp"

namespace imitation {

namespace {

struct CommonOpts {
    std::string game_file;
    std::string catalog;
    std::string rule = "tft";
    std::string y0 = "worst";
    double epsilon = kDefaultEpsilon;
    std::string out_file;
    std::string format = "json";
    int horizon = -1;
};

SymmetricGame load_from_opts(const CommonOpts& o, std::optional<CatalogSpec>& spec_out) {
    if (!o.game_file.empty()) return load_game_file(o.game_file);
    if (!o.catalog.empty()) {
        CatalogSpec spec = parse_catalog_spec(o.catalog);
        spec_out = spec;
        return build_catalog_game(spec);
    }
    throw std::invalid_argument("a game is required: --game <file> or --catalog <spec>");
}

void write_output(const std::string& text, const std::string& out_file, std::ostream& out) {
    if (out_file.empty()) {
        out << text;
        if (!text.empty() && text.back() != '\n') out << '\n';
        return;
    }
    std::ofstream f(out_file);
    if (!f) throw std::runtime_error("cannot open '" + out_file + "' for writing");
    f << text;
    if (!f) throw std::runtime_error("write to '" + out_file + "' failed");
}

void stamp_context(nlohmann::json& report, const SymmetricGame& game, const CommonOpts& o,
                   const std::optional<CatalogSpec>& spec) {
    report["game"] = game_to_json(game);
    report["mode"] = game.integer_mode ? "integer" : "float";
    report["epsilon"] = o.epsilon;
    if (spec) report["catalog"] = catalog_spec_to_json(*spec);
}

int cmd_analyze(const CommonOpts& o, std::ostream& out) {
    std::optional<CatalogSpec> spec;
    const SymmetricGame game = load_from_opts(o, spec);
    const Tol tol = game.tol(o.epsilon);
    const RelativePayoffGame rel = build_relative_game(game);

    nlohmann::json report;
    stamp_context(report, game, o, spec);
    report["max_relative_payoff"] = num_to_json(max_relative_payoff(rel), game.integer_mode);
    report["potential"] = potential_certificate_to_json(analyze_potential(game, tol), game);
    report["equivalence"] = equivalence_to_json(check_equivalence(game, tol));
    if (spec && spec->family == CatalogFamily::common_pool) {
        const CprClosedFormCheck c = check_cpr_closed_form(*spec, game, tol);
        report["cpr_closed_form"] = {{"interior_holds", c.interior_holds},
                                     {"boundary_holds", c.boundary_holds},
                                     {"max_err_interior", c.max_err_interior},
                                     {"max_err_boundary", c.max_err_boundary}};
    }
    write_output(o.format == "json" ? report.dump(2) : render_analyze_table(report), o.out_file,
                 out);
    return 0;
}

int cmd_exploit(const CommonOpts& o, std::ostream& out) {
    std::optional<CatalogSpec> spec;
    const SymmetricGame game = load_from_opts(o, spec);
    const Tol tol = game.tol(o.epsilon);

    RuleSpec rule = parse_rule_spec(o.rule);
    if (rule.kind == RuleKind::custom) load_custom_table(rule, game, tol);

    std::optional<int> y0;
    if (o.y0 != "worst") {
        const int idx = game.action_index(o.y0);
        if (idx < 0)
            throw std::invalid_argument("unknown initial action '" + o.y0 +
                                        "' (use a label or 'worst')");
        y0 = idx;
    }

    const ExploitationCertificate cert = certify_unbeatable(game, rule, y0, tol);
    nlohmann::json report = exploitation_to_json(cert, game.actions, game.integer_mode);
    stamp_context(report, game, o, spec);
    report["rule"] = rule.label();
    if (rule.kind == RuleKind::custom) report["rule_source"] = rule.custom_path;

    if (o.horizon >= 0) {
        // cross-check against the exhaustive search at a finite horizon
        const RelativePayoffGame rel = build_relative_game(game);
        const TransitionGraph g = build_transition_graph(rule, rel, tol);
        const int start = y0.value_or(cert.y0);
        const Num oracle = brute_force_oracle(game, rule, start, o.horizon, tol);
        report["oracle"] = {
            {"horizon", o.horizon},
            {"y0", game.actions[start]},
            {"total", num_to_json(oracle, game.integer_mode)},
            {"matches_value_iteration",
             oracle == best_prefix_value(g, start, o.horizon + 1)},
        };
    }
    write_output(o.format == "json" ? report.dump(2) : render_exploit_table(report), o.out_file,
                 out);
    return 0;
}

struct VerifyOpts {
    int n = 500;
    int potential_games = 100;
    int custom_rules = 50;
    uint64_t seed = 1;
    double epsilon = kDefaultEpsilon;
};

int cmd_verify(const VerifyOpts& vo, std::ostream& out, std::ostream& err) {
    if (vo.n == 0 && vo.potential_games == 0)
        out << "warning: nothing to verify (both sweeps have zero games) - vacuous pass\n";

    const std::vector<RuleSpec> named = {
        RuleSpec::tit_for_tat(),
        RuleSpec::imitate_if_better(),
        RuleSpec::imitate_the_best(TiePolicy::stay),
        RuleSpec::imitate_the_best(TiePolicy::copy),
    };

    // Sweep 1: valuation <=> tit-for-tat is essentially unbeatable, and the
    // five equivalent characterizations agree, on unrestricted random games.
    std::vector<std::string> bad1(static_cast<size_t>(vo.n));
#pragma omp parallel for schedule(dynamic)
    for (int i = 0; i < vo.n; ++i) {
        const int n_actions = 2 + static_cast<int>(mix_seed(vo.seed, i) % 4u);
        const SymmetricGame game =
            generate_random_game(n_actions, RandomGameMode::unrestricted, mix_seed(vo.seed, i));
        const Tol tol = game.tol(vo.epsilon);
        const bool valuation =
            check_valuation(build_relative_game(game), tol).verdict ==
            PotentialVerdict::exact_potential;
        const ExploitationCertificate cert =
            certify_unbeatable(game, RuleSpec::tit_for_tat(), std::nullopt, tol);
        const bool unbeatable = cert.verdict == ExploitVerdict::essentially_unbeatable;
        const EquivalenceReport eq = check_equivalence(game, tol);
        if (valuation != unbeatable)
            bad1[i] = "game " + std::to_string(i) + ": valuation=" +
                      (valuation ? "true" : "false") + " but tft verdict=" +
                      to_string(cert.verdict) + "\n  " + game_to_json(game).dump();
        else if (!eq.consistent)
            bad1[i] = "game " + std::to_string(i) +
                      ": equivalence checkers disagree\n  " + game_to_json(game).dump();
    }

    // Sweep 2: every imitation rule stays essentially unbeatable on random
    // exact-potential games (named rules plus random members of the class).
    std::vector<std::string> bad2(static_cast<size_t>(vo.potential_games));
#pragma omp parallel for schedule(dynamic)
    for (int i = 0; i < vo.potential_games; ++i) {
        const uint64_t game_seed = mix_seed(vo.seed ^ 0x5eedf00dULL, i);
        const int n_actions = 2 + static_cast<int>(mix_seed(game_seed, 99) % 4u);
        const SymmetricGame game =
            generate_random_game(n_actions, RandomGameMode::exact_potential, game_seed);
        const Tol tol = game.tol(vo.epsilon);
        const RelativePayoffGame rel = build_relative_game(game);
        std::string bad;
        auto check_rule = [&](const RuleSpec& rule, const std::string& label) {
            if (!bad.empty()) return;
            const ExploitationCertificate cert =
                certify_unbeatable(game, rule, std::nullopt, tol);
            if (cert.verdict != ExploitVerdict::essentially_unbeatable)
                bad = "game " + std::to_string(i) + ", rule " + label + ": verdict " +
                      to_string(cert.verdict) + "\n  " + game_to_json(game).dump();
        };
        for (const RuleSpec& rule : named) check_rule(rule, rule.label());
        for (int r = 0; r < vo.custom_rules && bad.empty(); ++r) {
            const RuleSpec rule = RuleSpec::custom(
                generate_random_class_rule_table(rel, mix_seed(game_seed, 1000 + r), tol));
            check_rule(rule, "custom#" + std::to_string(r));
        }
        bad2[i] = std::move(bad);
    }

    int violations = 0;
    for (const auto& m : bad1)
        if (!m.empty()) ++violations;
    for (const auto& m : bad2)
        if (!m.empty()) ++violations;

    out << "theorem biconditional: " << vo.n
        << " random games (n in {2..5}, payoffs in [-9,9]), "
        << std::count_if(bad1.begin(), bad1.end(), [](const auto& m) { return !m.empty(); })
        << " violations\n";
    out << "imitation class sweep: " << vo.potential_games << " potential games x "
        << (4 + vo.custom_rules) << " rules, "
        << std::count_if(bad2.begin(), bad2.end(), [](const auto& m) { return !m.empty(); })
        << " violations\n";
    if (violations > 0) {
        int shown = 0;
        for (const auto* v : {&bad1, &bad2})
            for (const auto& m : *v)
                if (!m.empty() && shown++ < 10) err << m << '\n';
        out << "FAILED: " << violations << " violations\n";
        return 1;
    }
    out << "all checks passed\n";
    return 0;
}

int cmd_duel(const CommonOpts& o, std::istream& in, std::ostream& out) {
    std::optional<CatalogSpec> spec;
    const SymmetricGame game = load_from_opts(o, spec);
    const Tol tol = game.tol(o.epsilon);
    const RelativePayoffGame rel = build_relative_game(game);

    RuleSpec rule = parse_rule_spec(o.rule);
    if (rule.kind == RuleKind::custom) load_custom_table(rule, game, tol);

    int y = 0;
    if (o.y0 != "worst") {
        y = game.action_index(o.y0);
        if (y < 0) throw std::invalid_argument("unknown initial action '" + o.y0 + "'");
    }
    const int y0 = y;

    const Num bound = max_relative_payoff(rel);
    const bool potential =
        check_valuation(rel, tol).verdict == PotentialVerdict::exact_potential;

    out << "duel: " << (game.name.empty() ? "game" : game.name) << ", rule " << rule.label()
        << ", imitator starts at " << game.actions[y0] << "\n";
    out << "actions: ";
    for (size_t i = 0; i < game.actions.size(); ++i)
        out << (i ? ", " : "") << game.actions[i];
    out << "\nbound (max relative payoff): " << format_number(bound, game.integer_mode) << "\n";
    if (potential)
        out << "this game has an exact potential: no opponent sequence can beat the rule by more "
               "than the bound\n";
    out << "enter opponent actions, 'quit' to stop\n";

    std::vector<int> opponent_moves;
    Num sum = 0.0, max_prefix = 0.0;
    bool bound_announced = false;
    std::string line;
    int t = 0;
    while (out << "x> " << std::flush, std::getline(in, line)) {
        // trim
        const auto b = line.find_first_not_of(" \t\r");
        const auto e = line.find_last_not_of(" \t\r");
        line = b == std::string::npos ? "" : line.substr(b, e - b + 1);
        if (line.empty()) continue;
        if (line == "quit" || line == "exit" || line == "q") break;
        const int x = game.action_index(line);
        if (x < 0) {
            out << "unknown action '" << line << "'\n";
            continue;
        }
        const Num d = rel.delta(x, y);
        sum += d;
        max_prefix = std::max(max_prefix, sum);
        opponent_moves.push_back(x);
        out << "t=" << t << "  opponent=" << game.actions[x] << "  imitator=" << game.actions[y]
            << "  delta=" << format_number(d, game.integer_mode)
            << "  total=" << format_number(sum, game.integer_mode) << "\n";
        if (potential && !bound_announced && sum >= bound) {
            out << "bound reached: the total relative payoff can never exceed "
                << format_number(bound, game.integer_mode) << "\n";
            bound_announced = true;
        }
        y = step(rule, rel, x, y, tol);
        ++t;
    }

    out << "duel over after " << t << " moves: total "
        << format_number(sum, game.integer_mode) << ", best prefix "
        << format_number(max_prefix, game.integer_mode) << ", bound "
        << format_number(bound, game.integer_mode) << "\n";

    if (!o.out_file.empty()) {
        const auto steps = trajectory(rule, rel, y0, opponent_moves, tol);
        nlohmann::json transcript;
        transcript["game"] = game_to_json(game);
        transcript["rule"] = rule.label();
        transcript["y0"] = game.actions[y0];
        transcript["epsilon"] = o.epsilon;
        transcript["bound"] = num_to_json(bound, game.integer_mode);
        transcript["steps"] = trajectory_to_json(steps, game.actions, game.integer_mode);
        transcript["total"] = num_to_json(sum, game.integer_mode);
        transcript["max_prefix"] = num_to_json(max_prefix, game.integer_mode);
        write_output(transcript.dump(2), o.out_file, out);
    }
    return 0;
}

int cmd_catalog(const CommonOpts& o, std::ostream& out) {
    if (o.catalog.empty())
        throw std::invalid_argument("catalog requires --catalog <spec>");
    const CatalogSpec spec = parse_catalog_spec(o.catalog);
    const SymmetricGame game = build_catalog_game(spec);
    if (!o.out_file.empty()) {
        save_game_file(game, o.out_file);  // extension picks json or csv
        out << "wrote " << game.actions.size() << "-action game '" << game.name << "' to "
            << o.out_file << "\n";
        return 0;
    }
    const GameFormat fmt = o.format == "csv" ? GameFormat::csv : GameFormat::json;
    out << save_game(game, fmt);
    return 0;
}

void add_game_options(CLI::App* sub, CommonOpts& o) {
    auto* g = sub->add_option("--game", o.game_file, "game file (.json or .csv)");
    auto* c = sub->add_option("--catalog", o.catalog,
                              "catalog spec, e.g. catalog:cournot_linear?b=10&points=11");
    g->excludes(c);
    c->excludes(g);
    sub->add_option("--epsilon", o.epsilon, "float-mode comparison tolerance")
        ->envname("IMITATION_EPSILON")
        ->check(CLI::NonNegativeNumber);
    sub->add_option("--out", o.out_file, "write the report to a file instead of stdout");
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::istream& in, std::ostream& out,
            std::ostream& err) {
    CLI::App app{"unbeatability analysis for imitation rules in symmetric two-player games"};
    app.name("imitation");
    app.require_subcommand(1);

    CommonOpts ao;
    auto* analyze = app.add_subcommand(
        "analyze", "decide the exact-potential property and emit a certificate");
    add_game_options(analyze, ao);
    analyze->add_option("--format", ao.format, "json or table")
        ->check(CLI::IsMember({"json", "table"}));

    CommonOpts xo;
    auto* exploit = app.add_subcommand(
        "exploit", "search for the best exploitation of an imitation rule");
    add_game_options(exploit, xo);
    exploit->add_option("--rule", xo.rule, "tft | iib | itb:stay | itb:switch | custom:<file>");
    exploit->add_option("--y0", xo.y0, "imitator's initial action label, or 'worst'");
    exploit->add_option("--horizon", xo.horizon,
                        "also run the exhaustive oracle up to this horizon (last time index)");
    exploit->add_option("--format", xo.format, "json or table")
        ->check(CLI::IsMember({"json", "table"}));

    VerifyOpts vo;
    auto* verify = app.add_subcommand(
        "verify", "sweep random games checking the theory's biconditionals");
    verify->add_option("--n", vo.n, "number of unrestricted random games")
        ->check(CLI::NonNegativeNumber);
    verify->add_option("--potential-games", vo.potential_games,
                       "number of exact-potential random games for the class sweep")
        ->check(CLI::NonNegativeNumber);
    verify->add_option("--custom-rules", vo.custom_rules,
                       "random class rules per potential game")
        ->check(CLI::NonNegativeNumber);
    verify->add_option("--seed", vo.seed, "base seed for all sweeps");
    verify->add_option("--epsilon", vo.epsilon, "float-mode comparison tolerance")
        ->envname("IMITATION_EPSILON")
        ->check(CLI::NonNegativeNumber);

    CommonOpts duo;
    duo.y0 = "worst";  // resolved to the first action in cmd_duel
    auto* duel = app.add_subcommand("duel", "play interactively against an imitation rule");
    add_game_options(duel, duo);
    duel->add_option("--rule", duo.rule, "tft | iib | itb:stay | itb:switch | custom:<file>");
    duel->add_option("--y0", duo.y0, "imitator's initial action (default: first action)");

    CommonOpts co;
    auto* catalog = app.add_subcommand("catalog", "materialize a catalog game as json or csv");
    catalog->add_option("--catalog", co.catalog, "catalog spec")->required();
    catalog->add_option("--out", co.out_file, "output file (.json or .csv)");
    catalog->add_option("--format", co.format, "json or csv (stdout only)")
        ->check(CLI::IsMember({"json", "csv"}));

    std::vector<const char*> argv;
    argv.push_back("imitation");
    for (const auto& a : args) argv.push_back(a.c_str());

    try {
        app.parse(static_cast<int>(argv.size()), argv.data());
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return 0;
    } catch (const CLI::CallForAllHelp&) {
        out << app.help("", CLI::AppFormatMode::All);
        return 0;
    } catch (const CLI::ParseError& e) {
        err << "error: " << e.what() << "\n";
        return 2;
    }

    try {
        if (analyze->parsed()) return cmd_analyze(ao, out);
        if (exploit->parsed()) return cmd_exploit(xo, out);
        if (verify->parsed()) return cmd_verify(vo, out, err);
        if (duel->parsed()) return cmd_duel(duo, in, out);
        if (catalog->parsed()) return cmd_catalog(co, out);
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return 2;
    }
    return 2;
}

}  // namespace imitation
