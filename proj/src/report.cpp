#include "imitation/report.hpp"

#include <cmath>
#include <iomanip>
#include <sstream>

namespace imitation {

nlohmann::json num_to_json(Num v, bool integer_mode) {
    if (integer_mode) return static_cast<long long>(v);
    return v;
}

const char* to_string(PotentialVerdict v) {
    return v == PotentialVerdict::exact_potential ? "exact_potential" : "not_exact_potential";
}

const char* to_string(OrderSearch s) {
    switch (s) {
        case OrderSearch::identity: return "identity";
        case OrderSearch::enumeration: return "enumeration";
        case OrderSearch::skipped: return "skipped";
    }
    return "?";
}

nlohmann::json potential_certificate_to_json(const PotentialCertificate& cert,
                                             const SymmetricGame& game) {
    nlohmann::json j;
    j["verdict"] = to_string(cert.verdict);
    j["max_cycle_violation"] = num_to_json(cert.max_cycle_violation, game.integer_mode);
    if (cert.decomposition) {
        nlohmann::json f, g;
        for (int i = 0; i < game.num_actions(); ++i) {
            f[game.actions[i]] = num_to_json(cert.decomposition->f[i], game.integer_mode);
            g[game.actions[i]] = num_to_json(cert.decomposition->g[i], game.integer_mode);
        }
        j["f"] = std::move(f);
        j["g"] = std::move(g);
    }
    if (cert.potential) {
        nlohmann::json rows = nlohmann::json::array();
        for (int i = 0; i < cert.potential->size(); ++i) {
            nlohmann::json row = nlohmann::json::array();
            for (int k = 0; k < cert.potential->size(); ++k)
                row.push_back(num_to_json((*cert.potential)(i, k), game.integer_mode));
            rows.push_back(std::move(row));
        }
        j["P"] = std::move(rows);
    }
    if (cert.witness) {
        j["witness"] = {
            {"x0", game.actions[cert.witness->x0]},
            {"x1", game.actions[cert.witness->x1]},
            {"x2", game.actions[cert.witness->x2]},
            {"cycle_sum", num_to_json(cert.witness->cycle_sum, game.integer_mode)},
        };
    }
    return j;
}

nlohmann::json equivalence_to_json(const EquivalenceReport& rep) {
    nlohmann::json j;
    j["valuation"] = rep.valuation;
    j["pi_exact_potential"] = rep.pi_exact_potential;
    j["delta_exact_potential"] = rep.delta_exact_potential;
    j["increasing_differences"] = rep.increasing_differences;
    j["decreasing_differences"] = rep.decreasing_differences;
    j["additively_separable"] = rep.additively_separable;
    j["order_search"] = {{"increasing", to_string(rep.order_search_incr)},
                         {"decreasing", to_string(rep.order_search_decr)}};
    if (rep.order_search_incr == OrderSearch::skipped ||
        rep.order_search_decr == OrderSearch::skipped)
        j["note"] = "order search skipped - using valuation equivalence";
    j["consistent"] = rep.consistent;
    return j;
}

nlohmann::json exploitation_to_json(const ExploitationCertificate& cert,
                                    const std::vector<std::string>& actions, bool integer_mode) {
    nlohmann::json j;
    j["verdict"] = to_string(cert.verdict);
    j["bound"] = num_to_json(cert.bound, integer_mode);
    j["y0"] = actions[cert.y0];
    j["y0_policy"] = cert.worst_case_y0 ? "worst_case" : "given";
    j["iterations"] = cert.iterations;
    if (cert.sup_total) j["sup_total"] = num_to_json(*cert.sup_total, integer_mode);
    if (!cert.witness_path.empty()) {
        nlohmann::json path = nlohmann::json::array();
        for (int x : cert.witness_path) path.push_back(actions[x]);
        j["witness_path"] = std::move(path);
    }
    if (!cert.witness_cycle.empty()) {
        nlohmann::json cyc = nlohmann::json::array();
        for (int x : cert.witness_cycle) cyc.push_back(actions[x]);
        j["witness_cycle"] = std::move(cyc);
        j["cycle_entry_state"] = actions[cert.cycle_entry_state];
        j["cycle_sum"] = num_to_json(cert.cycle_sum, integer_mode);
    }
    return j;
}

nlohmann::json trajectory_to_json(const std::vector<TrajectoryStep>& steps,
                                  const std::vector<std::string>& actions, bool integer_mode) {
    nlohmann::json rows = nlohmann::json::array();
    int t = 0;
    for (const auto& s : steps) {
        rows.push_back({{"t", t++},
                        {"opponent", actions[s.opponent]},
                        {"imitator", actions[s.imitator]},
                        {"delta", num_to_json(s.delta, integer_mode)},
                        {"running_sum", num_to_json(s.running_sum, integer_mode)}});
    }
    return rows;
}

namespace {

std::string scalar_text(const nlohmann::json& v) {
    if (v.is_string()) return v.get<std::string>();
    return v.dump();
}

void emit_kv(std::ostringstream& out, const std::string& key, const nlohmann::json& v) {
    out << std::left << std::setw(22) << key << scalar_text(v) << '\n';
}

}  // namespace

std::string render_analyze_table(const nlohmann::json& report) {
    std::ostringstream out;
    if (report.contains("game") && report["game"].contains("name"))
        emit_kv(out, "game", report["game"]["name"]);
    emit_kv(out, "mode", report["mode"]);
    emit_kv(out, "epsilon", report["epsilon"]);
    const auto& pot = report["potential"];
    emit_kv(out, "verdict", pot["verdict"]);
    emit_kv(out, "max_relative_payoff", report["max_relative_payoff"]);
    if (pot.contains("f")) {
        out << "f (relative fitness):\n";
        for (const auto& [action, value] : pot["f"].items())
            out << "  " << std::left << std::setw(20) << action << scalar_text(value) << '\n';
    }
    if (pot.contains("P")) {
        out << "P (exact potential):\n";
        for (const auto& row : pot["P"]) {
            out << " ";
            for (const auto& v : row) out << ' ' << std::setw(10) << scalar_text(v);
            out << '\n';
        }
    }
    if (pot.contains("witness")) {
        const auto& w = pot["witness"];
        out << "violating 3-cycle: (" << scalar_text(w["x0"]) << ", " << scalar_text(w["x1"])
            << ", " << scalar_text(w["x2"]) << ") with cycle sum " << scalar_text(w["cycle_sum"])
            << '\n';
    }
    const auto& eq = report["equivalence"];
    out << "equivalence: valuation=" << eq["valuation"] << " potential(pi)="
        << eq["pi_exact_potential"] << " potential(delta)=" << eq["delta_exact_potential"]
        << " incr_diff=" << eq["increasing_differences"] << " decr_diff="
        << eq["decreasing_differences"] << " separable=" << eq["additively_separable"]
        << " consistent=" << eq["consistent"] << '\n';
    if (report.contains("cpr_closed_form")) {
        const auto& c = report["cpr_closed_form"];
        out << "cpr closed form: interior=" << c["interior_holds"]
            << " boundary=" << c["boundary_holds"] << '\n';
    }
    return out.str();
}

std::string render_exploit_table(const nlohmann::json& report) {
    std::ostringstream out;
    if (report.contains("game") && report["game"].contains("name"))
        emit_kv(out, "game", report["game"]["name"]);
    emit_kv(out, "rule", report["rule"]);
    emit_kv(out, "y0", report["y0"]);
    emit_kv(out, "y0_policy", report["y0_policy"]);
    emit_kv(out, "verdict", report["verdict"]);
    emit_kv(out, "bound", report["bound"]);
    if (report.contains("sup_total")) emit_kv(out, "sup_total", report["sup_total"]);
    emit_kv(out, "iterations", report["iterations"]);
    auto join = [](const nlohmann::json& arr) {
        std::string s;
        for (const auto& v : arr) {
            if (!s.empty()) s += " -> ";
            s += v.get<std::string>();
        }
        return s;
    };
    if (report.contains("witness_path")) emit_kv(out, "witness_path", join(report["witness_path"]));
    if (report.contains("witness_cycle")) {
        emit_kv(out, "witness_cycle", join(report["witness_cycle"]));
        emit_kv(out, "cycle_entry_state", report["cycle_entry_state"]);
        emit_kv(out, "cycle_sum", report["cycle_sum"]);
    }
    return out.str();
}

}  // namespace imitation
