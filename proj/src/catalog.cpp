#include "imitation/catalog.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <set>
#include <stdexcept>

namespace imitation {

const char* to_string(CatalogFamily f) {
    switch (f) {
        case CatalogFamily::chicken: return "chicken";
        case CatalogFamily::prisoners_dilemma: return "prisoners_dilemma";
        case CatalogFamily::counterexample_3x3: return "counterexample_3x3";
        case CatalogFamily::cournot_linear: return "cournot_linear";
        case CatalogFamily::bertrand_differentiated: return "bertrand_differentiated";
        case CatalogFamily::public_goods: return "public_goods";
        case CatalogFamily::common_pool: return "common_pool";
        case CatalogFamily::minimum_effort: return "minimum_effort";
        case CatalogFamily::synergistic: return "synergistic";
        case CatalogFamily::diamond_search: return "diamond_search";
    }
    return "?";
}

CatalogFamily catalog_family_from_string(const std::string& s) {
    static const std::pair<const char*, CatalogFamily> table[] = {
        {"chicken", CatalogFamily::chicken},
        {"prisoners_dilemma", CatalogFamily::prisoners_dilemma},
        {"counterexample_3x3", CatalogFamily::counterexample_3x3},
        {"cournot_linear", CatalogFamily::cournot_linear},
        {"bertrand_differentiated", CatalogFamily::bertrand_differentiated},
        {"public_goods", CatalogFamily::public_goods},
        {"common_pool", CatalogFamily::common_pool},
        {"minimum_effort", CatalogFamily::minimum_effort},
        {"synergistic", CatalogFamily::synergistic},
        {"diamond_search", CatalogFamily::diamond_search},
    };
    for (const auto& [name, fam] : table)
        if (s == name) return fam;
    throw std::invalid_argument("unknown catalog family '" + s + "'");
}

uint64_t SplitMix64::next() {
    state += 0x9E3779B97F4A7C15ull;
    uint64_t z = state;
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
    return z ^ (z >> 31);
}

int SplitMix64::next_int(int lo, int hi) {
    const uint64_t span =
        static_cast<uint64_t>(static_cast<int64_t>(hi) - static_cast<int64_t>(lo) + 1);
    return lo + static_cast<int>(next() % span);
}

uint64_t mix_seed(uint64_t base, uint64_t stream) {
    SplitMix64 rng{base ^ (0x9E3779B97F4A7C15ull * (stream + 1))};
    return rng.next();
}

std::vector<double> make_grid(const GridSpec& grid) {
    if (grid.points < 1) throw std::invalid_argument("grid needs at least one point");
    if (grid.points == 1) {
        if (grid.hi != grid.lo)
            throw std::invalid_argument("a one-point grid needs lo == hi");
        return {grid.lo};
    }
    if (!(grid.hi > grid.lo)) throw std::invalid_argument("grid needs hi > lo");
    std::vector<double> v(grid.points);
    const double step = (grid.hi - grid.lo) / (grid.points - 1);
    for (int i = 0; i < grid.points; ++i) v[i] = grid.lo + i * step;
    v.back() = grid.hi;
    return v;
}

namespace {

std::string grid_label(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.8g", v);
    return buf;
}

bool all_integral(const SquareMatrix& m) {
    for (Num v : m.entries())
        if (!(std::fabs(v) < 9.0e15 && v == std::floor(v))) return false;
    return true;
}

SymmetricGame make_discrete(std::string name, std::vector<std::string> actions,
                            std::vector<std::vector<Num>> rows) {
    SymmetricGame g;
    g.name = std::move(name);
    g.actions = std::move(actions);
    const int n = static_cast<int>(g.actions.size());
    g.payoff = SquareMatrix(n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) g.payoff(i, j) = rows[i][j];
    g.integer_mode = all_integral(g.payoff);
    g.validate();
    return g;
}

// Tracks which query parameters a family consumed so typos fail loudly.
class Params {
public:
    explicit Params(const CatalogSpec& spec) : spec_(spec), m_(spec.params) {}

    double get(const std::string& key, double def) {
        used_.insert(key);
        auto it = m_.find(key);
        return it == m_.end() ? def : it->second;
    }

    void finish() const {
        for (const auto& [key, value] : m_)
            if (!used_.count(key))
                throw std::invalid_argument(std::string(to_string(spec_.family)) +
                                            ": unknown parameter '" + key + "'");
    }

    void reject_grid() const {
        if (spec_.grid_given)
            throw std::invalid_argument(std::string(to_string(spec_.family)) +
                                        " has a fixed action set; grid parameters do not apply");
    }

    void reject_cost() const {
        if (spec_.cost_given)
            throw std::invalid_argument(std::string(to_string(spec_.family)) +
                                        " has no own-cost term; 'cost' does not apply");
    }

private:
    const CatalogSpec& spec_;
    std::map<std::string, double> m_;
    std::set<std::string> used_;
};

void require(bool ok, const CatalogSpec& spec, const std::string& what) {
    if (!ok)
        throw std::invalid_argument(std::string(to_string(spec.family)) + ": " + what);
}

double apply_cost(CostKind kind, double coeff, double x) {
    switch (kind) {
        case CostKind::zero: return 0.0;
        case CostKind::linear: return coeff * x;
        case CostKind::quadratic: return coeff * x * x;
    }
    return 0.0;
}

GridSpec resolve_grid(const CatalogSpec& spec, double def_lo, double def_hi, int def_points = 11) {
    if (spec.grid_given) return spec.grid;
    return GridSpec{def_lo, def_hi, def_points};
}

template <class Payoff>
SymmetricGame make_continuous(const CatalogSpec& spec, const GridSpec& grid, Payoff&& pi) {
    const std::vector<double> v = make_grid(grid);
    SymmetricGame g;
    g.name = to_string(spec.family);
    for (double x : v) g.actions.push_back(grid_label(x));
    const int n = static_cast<int>(v.size());
    g.payoff = SquareMatrix(n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            const double p = pi(v[i], v[j]);
            if (!std::isfinite(p))
                throw std::invalid_argument(std::string(to_string(spec.family)) +
                                            ": non-finite payoff at (" + g.actions[i] + ", " +
                                            g.actions[j] + ")");
            g.payoff(i, j) = p;
        }
    g.integer_mode = all_integral(g.payoff);
    g.validate();
    return g;
}

struct CprParams {
    double e, c, a, b;
    GridSpec grid;
};

CprParams resolve_cpr(const CatalogSpec& spec) {
    Params p(spec);
    p.reject_cost();
    CprParams out;
    out.e = p.get("e", 10.0);
    out.c = p.get("c", 1.0);
    out.a = p.get("a", 5.0);
    out.b = p.get("b", 0.25);
    p.finish();
    require(out.e > 0.0, spec, "e must be > 0");
    require(out.c > 0.0, spec, "c must be > 0");
    require(out.a > 0.0, spec, "a must be > 0");
    require(out.b > 0.0, spec, "b must be > 0");
    out.grid = resolve_grid(spec, 0.0, out.e);
    require(out.grid.lo >= 0.0 && out.grid.hi <= out.e, spec,
            "effort grid must stay within [0, e]");
    return out;
}

}  // namespace

SymmetricGame build_catalog_game(const CatalogSpec& spec) {
    switch (spec.family) {
        case CatalogFamily::chicken: {
            Params p(spec);
            p.reject_grid();
            p.reject_cost();
            p.finish();
            return make_discrete("chicken", {"swerve", "straight"}, {{3, 1}, {4, 0}});
        }
        case CatalogFamily::prisoners_dilemma: {
            Params p(spec);
            p.reject_grid();
            p.reject_cost();
            const double r = p.get("r", 3), s = p.get("s", 0), t = p.get("t", 5),
                         q = p.get("p", 1);
            p.finish();
            return make_discrete("prisoners_dilemma", {"cooperate", "defect"},
                                 {{r, s}, {t, q}});
        }
        case CatalogFamily::counterexample_3x3: {
            Params p(spec);
            p.reject_grid();
            p.reject_cost();
            p.finish();
            return make_discrete("counterexample_3x3", {"A", "B", "C"},
                                 {{0, 0, -1}, {-1, 0, 0}, {0, 10, 0}});
        }
        case CatalogFamily::cournot_linear: {
            Params p(spec);
            const double b = p.get("b", 10.0);
            const double c = p.get("c", 1.0);
            p.finish();
            require(b > 0.0, spec, "b must be > 0");
            require(c >= 0.0, spec, "c must be >= 0");
            const CostKind cost = spec.cost_given ? spec.cost : CostKind::zero;
            const GridSpec grid = resolve_grid(spec, 0.0, 10.0);
            return make_continuous(spec, grid, [&](double x, double y) {
                return x * (b - x - y) - apply_cost(cost, c, x);
            });
        }
        case CatalogFamily::bertrand_differentiated: {
            Params p(spec);
            p.reject_cost();
            const double a = p.get("a", 5.0);
            const double b = p.get("b", 0.25);
            const double c = p.get("c", 1.0);
            p.finish();
            require(a > 0.0, spec, "a must be > 0");
            require(b >= 0.0 && b < 0.5, spec, "b must lie in [0, 1/2)");
            const GridSpec grid = resolve_grid(spec, 0.0, 10.0);
            return make_continuous(spec, grid, [&](double x, double y) {
                return (x - c) * (a + b * y - 0.5 * x);
            });
        }
        case CatalogFamily::public_goods: {
            Params p(spec);
            const double m = p.get("m", 1.0);
            const double c = p.get("c", 1.0);
            p.finish();
            require(m > 0.0, spec, "m must be > 0");
            require(c >= 0.0, spec, "c must be >= 0");
            const bool sqrt_benefit = spec.benefit == "sqrt";
            if (!sqrt_benefit && spec.benefit != "linear")
                require(false, spec, "benefit must be 'linear' or 'sqrt'");
            const CostKind cost = spec.cost_given ? spec.cost : CostKind::linear;
            const GridSpec grid = resolve_grid(spec, 0.0, 10.0);
            return make_continuous(spec, grid, [&](double x, double y) {
                const double total = x + y;
                const double benefit = sqrt_benefit ? std::sqrt(total) : m * total;
                return benefit - apply_cost(cost, c, x);
            });
        }
        case CatalogFamily::common_pool: {
            const CprParams cp = resolve_cpr(spec);
            return make_continuous(spec, cp.grid, [&](double x, double y) {
                const double total = x + y;
                if (total > 0.0)
                    return cp.c * (cp.e - x) + (x / total) * (cp.a * total - cp.b * total * total);
                return cp.c * cp.e;
            });
        }
        case CatalogFamily::minimum_effort: {
            Params p(spec);
            const double c = p.get("c", 0.5);
            p.finish();
            require(c >= 0.0, spec, "c must be >= 0");
            const CostKind cost = spec.cost_given ? spec.cost : CostKind::linear;
            const GridSpec grid = resolve_grid(spec, 0.0, 10.0);
            return make_continuous(spec, grid, [&](double x, double y) {
                return std::min(x, y) - apply_cost(cost, c, x);
            });
        }
        case CatalogFamily::synergistic: {
            Params p(spec);
            p.reject_cost();
            const double c = p.get("c", 4.0);
            p.finish();
            require(c > 0.0, spec, "c must be > 0");
            const GridSpec grid = resolve_grid(spec, 0.0, 10.0);
            return make_continuous(spec, grid,
                                   [&](double x, double y) { return x * (c + y - x); });
        }
        case CatalogFamily::diamond_search: {
            Params p(spec);
            const double alpha = p.get("alpha", 0.5);
            const double c = p.get("c", 1.0);
            p.finish();
            require(alpha > 0.0, spec, "alpha must be > 0");
            require(c >= 0.0, spec, "c must be >= 0");
            const CostKind cost = spec.cost_given ? spec.cost : CostKind::linear;
            const GridSpec grid = resolve_grid(spec, 0.0, 10.0);
            return make_continuous(spec, grid, [&](double x, double y) {
                return alpha * x * y - apply_cost(cost, c, x);
            });
        }
    }
    throw std::logic_error("unreachable catalog family");
}

namespace {

double parse_double(const std::string& key, const std::string& value) {
    const char* begin = value.c_str();
    char* end = nullptr;
    const double v = std::strtod(begin, &end);
    if (end == begin || *end != '\0' || !std::isfinite(v))
        throw std::invalid_argument("cannot parse catalog parameter " + key + "=" + value);
    return v;
}

CostKind cost_from_string(const std::string& s) {
    if (s == "zero") return CostKind::zero;
    if (s == "linear") return CostKind::linear;
    if (s == "quadratic") return CostKind::quadratic;
    throw std::invalid_argument("unknown cost kind '" + s + "' (zero, linear, quadratic)");
}

const char* to_string(CostKind k) {
    switch (k) {
        case CostKind::zero: return "zero";
        case CostKind::linear: return "linear";
        case CostKind::quadratic: return "quadratic";
    }
    return "?";
}

void assign_query_pair(CatalogSpec& spec, const std::string& key, const std::string& value) {
    if (key == "lo") {
        spec.grid.lo = parse_double(key, value);
        spec.grid_given = true;
    } else if (key == "hi") {
        spec.grid.hi = parse_double(key, value);
        spec.grid_given = true;
    } else if (key == "points") {
        spec.grid.points = static_cast<int>(parse_double(key, value));
        spec.grid_given = true;
    } else if (key == "cost") {
        spec.cost = cost_from_string(value);
        spec.cost_given = true;
    } else if (key == "benefit") {
        spec.benefit = value;
    } else if (key == "seed") {
        spec.seed = static_cast<uint64_t>(std::strtoull(value.c_str(), nullptr, 10));
    } else {
        spec.params[key] = parse_double(key, value);
    }
}

}  // namespace

CatalogSpec parse_catalog_spec(const std::string& text) {
    std::string body = text;
    if (body.rfind("catalog:", 0) == 0) body = body.substr(8);
    CatalogSpec spec;
    const size_t qmark = body.find('?');
    spec.family = catalog_family_from_string(body.substr(0, qmark));
    if (qmark != std::string::npos) {
        std::string query = body.substr(qmark + 1);
        size_t pos = 0;
        while (pos <= query.size()) {
            const size_t amp = query.find('&', pos);
            const std::string pair =
                query.substr(pos, amp == std::string::npos ? std::string::npos : amp - pos);
            if (!pair.empty()) {
                const size_t eq = pair.find('=');
                if (eq == std::string::npos)
                    throw std::invalid_argument("catalog parameter '" + pair +
                                                "' is not of the form key=value");
                assign_query_pair(spec, pair.substr(0, eq), pair.substr(eq + 1));
            }
            if (amp == std::string::npos) break;
            pos = amp + 1;
        }
    }
    return spec;
}

CatalogSpec catalog_spec_from_json(const nlohmann::json& j) {
    if (!j.is_object() || !j.contains("family"))
        throw std::invalid_argument("catalog spec json needs a 'family' field");
    CatalogSpec spec;
    spec.family = catalog_family_from_string(j["family"].get<std::string>());
    if (j.contains("params"))
        for (const auto& [key, value] : j["params"].items())
            spec.params[key] = value.get<double>();
    if (j.contains("cost")) {
        spec.cost = cost_from_string(j["cost"].get<std::string>());
        spec.cost_given = true;
    }
    if (j.contains("benefit")) spec.benefit = j["benefit"].get<std::string>();
    if (j.contains("grid")) {
        const auto& g = j["grid"];
        spec.grid.lo = g.value("lo", 0.0);
        spec.grid.hi = g.value("hi", 10.0);
        spec.grid.points = g.value("points", 11);
        spec.grid_given = true;
    }
    if (j.contains("seed")) spec.seed = j["seed"].get<uint64_t>();
    return spec;
}

nlohmann::json catalog_spec_to_json(const CatalogSpec& spec) {
    nlohmann::json j;
    j["family"] = to_string(spec.family);
    if (!spec.params.empty()) j["params"] = spec.params;
    if (spec.cost_given) j["cost"] = to_string(spec.cost);
    if (spec.benefit != "linear") j["benefit"] = spec.benefit;
    if (spec.grid_given)
        j["grid"] = {{"lo", spec.grid.lo}, {"hi", spec.grid.hi}, {"points", spec.grid.points}};
    if (spec.seed != 0) j["seed"] = spec.seed;
    return j;
}

SymmetricGame generate_random_game(int n, RandomGameMode mode, uint64_t seed, int lo, int hi) {
    if (n < 1) throw std::invalid_argument("generate_random_game: n must be >= 1");
    if (hi < lo) throw std::invalid_argument("generate_random_game: empty payoff range");
    SplitMix64 rng{mix_seed(seed, mode == RandomGameMode::unrestricted ? 1 : 2)};
    SymmetricGame g;
    g.name = (mode == RandomGameMode::unrestricted ? "random_" : "random_potential_") +
             std::to_string(seed);
    for (int i = 0; i < n; ++i) g.actions.push_back("a" + std::to_string(i));
    g.payoff = SquareMatrix(n);
    if (mode == RandomGameMode::unrestricted) {
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j) g.payoff(i, j) = rng.next_int(lo, hi);
    } else {
        // f(x) + g(y) + s(x, y) with s symmetric: the relative game is then
        // (f-g)(x) - (f-g)(y), separable by construction.
        std::vector<double> fx(n), gy(n);
        for (int i = 0; i < n; ++i) fx[i] = rng.next_int(lo, hi);
        for (int i = 0; i < n; ++i) gy[i] = rng.next_int(lo, hi);
        SquareMatrix sym(n);
        for (int i = 0; i < n; ++i)
            for (int j = i; j < n; ++j) sym(i, j) = sym(j, i) = rng.next_int(lo, hi);
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j) g.payoff(i, j) = fx[i] + gy[j] + sym(i, j);
    }
    g.integer_mode = true;
    return g;
}

std::vector<int> generate_random_class_rule_table(const RelativePayoffGame& rel, uint64_t seed,
                                                  const Tol& tol) {
    SplitMix64 rng{mix_seed(seed, 3)};
    const int n = rel.num_actions();
    std::vector<int> table(static_cast<size_t>(n) * n);
    for (int x = 0; x < n; ++x)
        for (int y = 0; y < n; ++y)
            table[static_cast<size_t>(x) * n + y] =
                tol.is_pos(rel.delta(x, y), rel.max_abs) ? x : ((rng.next() & 1) ? x : y);
    return table;
}

CprClosedFormCheck check_cpr_closed_form(const CatalogSpec& spec, const SymmetricGame& game,
                                         const Tol& tol) {
    if (spec.family != CatalogFamily::common_pool)
        throw std::invalid_argument("closed-form check applies to the common_pool family only");
    const CprParams cp = resolve_cpr(spec);
    const std::vector<double> v = make_grid(cp.grid);
    if (static_cast<int>(v.size()) != game.num_actions())
        throw std::invalid_argument("catalog spec does not match the game's grid");
    const RelativePayoffGame rel = build_relative_game(game);
    auto h = [&](double x) { return cp.c * (cp.e - x) + cp.a * x - cp.b * x * x; };
    CprClosedFormCheck out;
    for (int i = 0; i < rel.num_actions(); ++i)
        for (int j = 0; j < rel.num_actions(); ++j) {
            const Num err = std::fabs(rel.delta(i, j) - (h(v[i]) - h(v[j])));
            if (v[i] > 0.0 && v[j] > 0.0)
                out.max_err_interior = std::max(out.max_err_interior, err);
            else
                out.max_err_boundary = std::max(out.max_err_boundary, err);
        }
    const double thr = tol.threshold(rel.max_abs);
    out.interior_holds = out.max_err_interior <= thr;
    out.boundary_holds = out.max_err_boundary <= thr;
    return out;
}

}  // namespace imitation
