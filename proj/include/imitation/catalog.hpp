#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include <json.hpp>

#include "imitation/game.hpp"

namespace imitation {

enum class CatalogFamily {
    chicken,
    prisoners_dilemma,
    counterexample_3x3,
    cournot_linear,
    bertrand_differentiated,
    public_goods,
    common_pool,
    minimum_effort,
    synergistic,
    diamond_search,
};

const char* to_string(CatalogFamily f);
CatalogFamily catalog_family_from_string(const std::string& s);

enum class CostKind { zero, linear, quadratic };

struct GridSpec {
    double lo = 0.0;
    double hi = 10.0;
    int points = 11;
};

struct CatalogSpec {
    CatalogFamily family = CatalogFamily::chicken;
    std::map<std::string, double> params;  // family-specific scalars
    CostKind cost = CostKind::linear;      // continuous families with an own-cost term
    bool cost_given = false;
    std::string benefit = "linear";        // public_goods: linear | sqrt
    GridSpec grid;
    bool grid_given = false;
    uint64_t seed = 0;  // carried through for reproducibility stamping, unused by builders
};

// "catalog:cournot_linear?b=10&points=11" or the same without the prefix.
// Recognized query keys: family parameters, cost, benefit, lo, hi, points, seed.
CatalogSpec parse_catalog_spec(const std::string& text);
CatalogSpec catalog_spec_from_json(const nlohmann::json& j);
nlohmann::json catalog_spec_to_json(const CatalogSpec& spec);

// Throws std::invalid_argument on parameter-domain violations (documented per
// family in the builder) and on malformed grids.
SymmetricGame build_catalog_game(const CatalogSpec& spec);

std::vector<double> make_grid(const GridSpec& grid);

enum class RandomGameMode { unrestricted, exact_potential };

// Deterministic per seed. Integer payoffs in [lo, hi]; exact_potential draws
// pi(x, y) = f(x) + g(y) + s(x, y) with s symmetric, which always passes the
// 3-cycle check.
SymmetricGame generate_random_game(int n, RandomGameMode mode, uint64_t seed, int lo = -9,
                                   int hi = 9);

// A random member of the imitation class for this game: copies when strictly
// better, picks stay/copy by coin flip otherwise.
std::vector<int> generate_random_class_rule_table(const RelativePayoffGame& rel, uint64_t seed,
                                                  const Tol& tol);

// splitmix64; stream fan-out for reproducible per-index seeds in sweeps.
struct SplitMix64 {
    uint64_t state = 0;
    uint64_t next();
    // uniform draw in [lo, hi] via rejection-free modulo (bias < 2^-50 for the
    // tiny ranges used here, and reproducibility matters more than exactness)
    int next_int(int lo, int hi);
};

uint64_t mix_seed(uint64_t base, uint64_t stream);

// Closed-form relative payoff h(x) - h(y), h(x) = c*(e-x) + a*x - b*x^2, for
// the common-pool family, checked against the piecewise table.
struct CprClosedFormCheck {
    bool interior_holds = false;  // both coordinates strictly inside the grid's positive part
    bool boundary_holds = false;  // pairs touching zero effort
    Num max_err_interior = 0.0;
    Num max_err_boundary = 0.0;
};

CprClosedFormCheck check_cpr_closed_form(const CatalogSpec& spec, const SymmetricGame& game,
                                         const Tol& tol);

}  // namespace imitation
