#include <doctest.h>

#include <cstdio>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "helpers.hpp"
#include "imitation/cli.hpp"
#include "imitation/game_io.hpp"

using namespace imitation;
using nlohmann::json;

namespace {

struct CliResult {
    int code = -1;
    std::string out;
    std::string err;
    json parsed;  // out parsed as json when requested
};

CliResult run(const std::vector<std::string>& args, const std::string& stdin_text = "",
              bool parse_json = false) {
    std::istringstream in(stdin_text);
    std::ostringstream out, err;
    CliResult r;
    r.code = run_cli(args, in, out, err);
    r.out = out.str();
    r.err = err.str();
    if (parse_json) r.parsed = json::parse(r.out);
    return r;
}

bool contains(const std::string& hay, const std::string& needle) {
    return hay.find(needle) != std::string::npos;
}

}  // namespace

TEST_CASE("analyze emits the chicken certificate") {
    const CliResult r = run({"analyze", "--catalog", "chicken"}, "", true);
    REQUIRE(r.code == 0);
    const json& rep = r.parsed;
    CHECK(rep["mode"] == "integer");
    CHECK(rep["max_relative_payoff"] == 3);
    CHECK(rep["potential"]["verdict"] == "exact_potential");
    CHECK(rep["potential"]["max_cycle_violation"] == 0);
    CHECK(rep["potential"]["f"]["swerve"] == 0);
    CHECK(rep["potential"]["f"]["straight"] == 3);
    CHECK(rep["potential"]["g"]["straight"] == -3);
    CHECK(rep["potential"]["P"] == json::parse("[[0,1],[1,0]]"));
    CHECK(!rep["potential"].contains("witness"));
    const json& eq = rep["equivalence"];
    for (const char* key : {"valuation", "pi_exact_potential", "delta_exact_potential",
                            "increasing_differences", "decreasing_differences",
                            "additively_separable", "consistent"})
        CHECK(eq[key] == true);
    CHECK(eq["order_search"]["increasing"] == "identity");
    CHECK(rep["game"]["name"] == "chicken");
}

TEST_CASE("analyze refutes the counterexample with a 3-cycle witness") {
    const CliResult r = run({"analyze", "--catalog", "counterexample_3x3"}, "", true);
    REQUIRE(r.code == 0);
    const json& pot = r.parsed["potential"];
    CHECK(pot["verdict"] == "not_exact_potential");
    CHECK(pot["max_cycle_violation"] == 8);
    CHECK(pot["witness"]["x0"] == "A");
    CHECK(pot["witness"]["x1"] == "B");
    CHECK(pot["witness"]["x2"] == "C");
    CHECK(pot["witness"]["cycle_sum"] == 8);
    CHECK(!pot.contains("f"));
    CHECK(!pot.contains("P"));
    const json& eq = r.parsed["equivalence"];
    CHECK(eq["valuation"] == false);
    CHECK(eq["consistent"] == true);
    CHECK(eq["order_search"]["increasing"] == "enumeration");
}

TEST_CASE("analyze runs the closed-form cross-check for the common pool") {
    const CliResult r = run({"analyze", "--catalog", "common_pool"}, "", true);
    REQUIRE(r.code == 0);
    CHECK(r.parsed["mode"] == "float");
    CHECK(r.parsed["potential"]["verdict"] == "exact_potential");
    REQUIRE(r.parsed.contains("cpr_closed_form"));
    CHECK(r.parsed["cpr_closed_form"]["interior_holds"] == true);
    CHECK(r.parsed["cpr_closed_form"]["boundary_holds"] == true);
    CHECK(r.parsed["catalog"]["family"] == "common_pool");
}

TEST_CASE("exploit certifies chicken against tit-for-tat") {
    const CliResult worst =
        run({"exploit", "--catalog", "chicken", "--rule", "tft"}, "", true);
    REQUIRE(worst.code == 0);
    CHECK(worst.parsed["verdict"] == "essentially_unbeatable");
    CHECK(worst.parsed["bound"] == 3);
    CHECK(worst.parsed["sup_total"] == 3);
    CHECK(worst.parsed["y0"] == "swerve");
    CHECK(worst.parsed["y0_policy"] == "worst_case");
    CHECK(worst.parsed["witness_path"] == json::array({"straight"}));
    CHECK(worst.parsed["rule"] == "tft");

    const CliResult given =
        run({"exploit", "--catalog", "chicken", "--rule", "tft", "--y0", "straight"}, "", true);
    REQUIRE(given.code == 0);
    CHECK(given.parsed["sup_total"] == 0);
    CHECK(given.parsed["y0_policy"] == "given");
}

TEST_CASE("exploit reports the money pump on the counterexample") {
    const CliResult r =
        run({"exploit", "--catalog", "counterexample_3x3", "--rule", "tft"}, "", true);
    REQUIRE(r.code == 0);
    CHECK(r.parsed["verdict"] == "money_pump");
    CHECK(!r.parsed.contains("sup_total"));
    CHECK(r.parsed["witness_cycle"] == json::array({"C", "A", "B"}));
    CHECK(r.parsed["cycle_entry_state"] == "B");
    CHECK(r.parsed["cycle_sum"] == 8);
    CHECK(r.parsed["iterations"] == 4);

    for (const char* rule : {"iib", "itb:stay", "itb:switch"}) {
        const CliResult u =
            run({"exploit", "--catalog", "counterexample_3x3", "--rule", rule}, "", true);
        REQUIRE(u.code == 0);
        CHECK(u.parsed["verdict"] == "essentially_unbeatable");
        CHECK(u.parsed["sup_total"] == 10);
        CHECK(u.parsed["bound"] == 10);
    }
}

TEST_CASE("exploit cross-checks the exhaustive oracle when asked") {
    const CliResult r = run({"exploit", "--catalog", "counterexample_3x3", "--rule", "tft",
                             "--y0", "A", "--horizon", "6"},
                            "", true);
    REQUIRE(r.code == 0);
    REQUIRE(r.parsed.contains("oracle"));
    CHECK(r.parsed["oracle"]["horizon"] == 6);
    CHECK(r.parsed["oracle"]["y0"] == "A");
    CHECK(r.parsed["oracle"]["total"] == 17);
    CHECK(r.parsed["oracle"]["matches_value_iteration"] == true);
}

TEST_CASE("exploit accepts a valid custom rule and rejects a non-member") {
    const std::string good = "/tmp/imitation_cli_rule_good.json";
    const std::string bad = "/tmp/imitation_cli_rule_bad.json";
    std::ofstream(good) << R"({
        "swerve|swerve": "swerve",
        "straight|swerve": "straight",
        "swerve|straight": "straight",
        "straight|straight": "straight"
    })";
    std::ofstream(bad) << R"({
        "swerve|swerve": "swerve",
        "straight|swerve": "swerve",
        "swerve|straight": "straight",
        "straight|straight": "straight"
    })";

    const CliResult ok =
        run({"exploit", "--catalog", "chicken", "--rule", "custom:" + good}, "", true);
    REQUIRE(ok.code == 0);
    CHECK(ok.parsed["rule"] == "custom");
    CHECK(ok.parsed["rule_source"] == good);
    CHECK(ok.parsed["verdict"] == "essentially_unbeatable");

    const CliResult rej = run({"exploit", "--catalog", "chicken", "--rule", "custom:" + bad});
    CHECK(rej.code == 2);
    CHECK(contains(rej.err, "not an imitation rule"));

    std::remove(good.c_str());
    std::remove(bad.c_str());
}

TEST_CASE("usage errors exit with code 2") {
    const CliResult no_game = run({"analyze"});
    CHECK(no_game.code == 2);
    CHECK(contains(no_game.err, "a game is required"));

    const CliResult both =
        run({"analyze", "--game", "x.json", "--catalog", "chicken"});
    CHECK(both.code == 2);
    CHECK(contains(both.err, "error:"));

    const CliResult bad_y0 =
        run({"exploit", "--catalog", "chicken", "--y0", "sideways"});
    CHECK(bad_y0.code == 2);
    CHECK(contains(bad_y0.err, "unknown initial action"));

    const CliResult bad_sub = run({"meditate"});
    CHECK(bad_sub.code == 2);

    const CliResult none = run({});
    CHECK(none.code == 2);

    const CliResult no_spec = run({"catalog"});
    CHECK(no_spec.code == 2);

    const CliResult missing_file = run({"analyze", "--game", "/tmp/no_such_game.json"});
    CHECK(missing_file.code == 2);
    CHECK(contains(missing_file.err, "cannot open"));
}

TEST_CASE("help is served on request") {
    const CliResult top = run({"--help"});
    CHECK(top.code == 0);
    for (const char* sub : {"analyze", "exploit", "verify", "duel", "catalog"})
        CHECK(contains(top.out, sub));
    const CliResult sub = run({"exploit", "--help"});
    CHECK(sub.code == 0);
    CHECK(contains(sub.out, "--rule"));
}

TEST_CASE("verify passes a small random sweep") {
    const CliResult r = run({"verify", "--n", "25", "--potential-games", "5", "--custom-rules",
                             "3", "--seed", "2"});
    REQUIRE(r.code == 0);
    CHECK(contains(r.out, "theorem biconditional: 25 random games"));
    CHECK(contains(r.out, "5 potential games x 7 rules"));
    CHECK(contains(r.out, "0 violations"));
    CHECK(contains(r.out, "all checks passed"));
    CHECK(r.err.empty());
}

TEST_CASE("verify warns when both sweeps are empty") {
    const CliResult r = run({"verify", "--n", "0", "--potential-games", "0"});
    CHECK(r.code == 0);
    CHECK(contains(r.out, "vacuous"));
    CHECK(contains(r.out, "all checks passed"));
}

TEST_CASE("duel plays a scripted match") {
    const std::string transcript_path = "/tmp/imitation_cli_duel.json";
    const CliResult r = run({"duel", "--catalog", "chicken", "--rule", "tft", "--out",
                             transcript_path},
                            "straight\nfly\nswerve\nstraight\nquit\n");
    REQUIRE(r.code == 0);
    CHECK(contains(r.out, "imitator starts at swerve"));
    CHECK(contains(r.out, "bound (max relative payoff): 3"));
    CHECK(contains(r.out, "this game has an exact potential"));
    CHECK(contains(r.out, "unknown action 'fly'"));
    CHECK(contains(r.out, "t=0  opponent=straight  imitator=swerve  delta=3  total=3"));
    CHECK(contains(r.out, "t=1  opponent=swerve  imitator=straight  delta=-3  total=0"));
    CHECK(contains(r.out, "t=2  opponent=straight  imitator=swerve  delta=3  total=3"));
    CHECK(contains(r.out, "bound reached"));
    CHECK(contains(r.out, "duel over after 3 moves: total 3, best prefix 3, bound 3"));

    std::ifstream f(transcript_path);
    REQUIRE(f.good());
    const json transcript = json::parse(f);
    CHECK(transcript["rule"] == "tft");
    CHECK(transcript["y0"] == "swerve");
    CHECK(transcript["bound"] == 3);
    CHECK(transcript["total"] == 3);
    CHECK(transcript["max_prefix"] == 3);
    REQUIRE(transcript["steps"].size() == 3);
    CHECK(transcript["steps"][2]["running_sum"] == 3);
    CHECK(transcript["steps"][1]["imitator"] == "straight");
    std::remove(transcript_path.c_str());
}

TEST_CASE("duel stops on end of input") {
    const CliResult r = run({"duel", "--catalog", "chicken"}, "straight\n");
    REQUIRE(r.code == 0);
    CHECK(contains(r.out, "duel over after 1 moves"));
}

TEST_CASE("catalog materializes games") {
    const std::string path = "/tmp/imitation_cli_catalog.json";
    const CliResult file_run =
        run({"catalog", "--catalog", "cournot_linear?points=5&hi=8", "--out", path});
    REQUIRE(file_run.code == 0);
    CHECK(contains(file_run.out, "wrote 5-action game"));
    const SymmetricGame g = load_game_file(path);
    CHECK(g.num_actions() == 5);
    CHECK(g.actions.back() == "8");
    std::remove(path.c_str());

    const CliResult csv_run =
        run({"catalog", "--catalog", "chicken", "--format", "csv"});
    REQUIRE(csv_run.code == 0);
    const SymmetricGame chick = load_game(csv_run.out, GameFormat::csv);
    CHECK(chick.payoff == testutil::chicken().payoff);

    const CliResult json_run = run({"catalog", "--catalog", "chicken"});
    REQUIRE(json_run.code == 0);
    CHECK(load_game(json_run.out, GameFormat::json).payoff == testutil::chicken().payoff);
}

TEST_CASE("table format renders the key lines") {
    const CliResult a = run({"analyze", "--catalog", "chicken", "--format", "table"});
    REQUIRE(a.code == 0);
    CHECK(contains(a.out, "exact_potential"));
    CHECK(contains(a.out, "f (relative fitness):"));
    CHECK(contains(a.out, "P (exact potential):"));

    const CliResult x = run({"exploit", "--catalog", "counterexample_3x3", "--rule", "tft",
                             "--format", "table"});
    REQUIRE(x.code == 0);
    CHECK(contains(x.out, "money_pump"));
    CHECK(contains(x.out, "C -> A -> B"));
}

TEST_CASE("reports can be written to a file") {
    const std::string path = "/tmp/imitation_cli_report.json";
    const CliResult r = run({"analyze", "--catalog", "chicken", "--out", path});
    REQUIRE(r.code == 0);
    CHECK(r.out.empty());
    std::ifstream f(path);
    REQUIRE(f.good());
    const json rep = json::parse(f);
    CHECK(rep["potential"]["verdict"] == "exact_potential");
    std::remove(path.c_str());
}

TEST_CASE("epsilon widens the float-mode tolerance") {
    // pi(i, j) = i is separable; a 1e-3 dent breaks it at the default epsilon
    SymmetricGame g =
        testutil::make_game({"x0", "x1", "x2"}, {{0, 0, 0}, {1, 1, 1}, {2, 2, 2}}, "noisy");
    g.integer_mode = false;
    g.payoff(0, 1) += 1e-3;
    const std::string path = "/tmp/imitation_cli_noisy.json";
    save_game_file(g, path);

    const CliResult strict = run({"analyze", "--game", path}, "", true);
    REQUIRE(strict.code == 0);
    CHECK(strict.parsed["mode"] == "float");
    CHECK(strict.parsed["potential"]["verdict"] == "not_exact_potential");

    const CliResult loose = run({"analyze", "--game", path, "--epsilon", "0.1"}, "", true);
    REQUIRE(loose.code == 0);
    CHECK(loose.parsed["epsilon"] == 0.1);
    CHECK(loose.parsed["potential"]["verdict"] == "exact_potential");
    std::remove(path.c_str());
}
