#include "imitation/solver.hpp"

#include <limits>
#include <stdexcept>

namespace imitation {

const char* to_string(ExploitVerdict v) {
    switch (v) {
        case ExploitVerdict::essentially_unbeatable: return "essentially_unbeatable";
        case ExploitVerdict::bounded_but_beaten: return "bounded_but_beaten";
        case ExploitVerdict::money_pump: return "money_pump";
    }
    return "?";
}

TransitionGraph build_transition_graph(const RuleSpec& rule, const RelativePayoffGame& rel,
                                       const Tol& tol) {
    TransitionGraph g;
    g.n = rel.num_actions();
    g.delta = rel.delta;
    g.target.resize(static_cast<size_t>(g.n) * g.n);
    for (int y = 0; y < g.n; ++y)
        for (int x = 0; x < g.n; ++x)
            g.target[static_cast<size_t>(y) * g.n + x] = step(rule, rel, x, y, tol);
    return g;
}

namespace {

std::vector<char> reachable_from(const TransitionGraph& g, int y0) {
    std::vector<char> reach(g.n, 0);
    std::vector<int> stack{y0};
    reach[y0] = 1;
    while (!stack.empty()) {
        const int y = stack.back();
        stack.pop_back();
        for (int x = 0; x < g.n; ++x) {
            const int t = g.target_at(y, x);
            if (!reach[t]) {
                reach[t] = 1;
                stack.push_back(t);
            }
        }
    }
    return reach;
}

}  // namespace

ExploitationCertificate sup_exploitation(const TransitionGraph& g, int y0, const Tol& tol) {
    const int n = g.n;
    if (y0 < 0 || y0 >= n) throw std::invalid_argument("sup_exploitation: y0 out of range");

    ExploitationCertificate cert;
    cert.y0 = y0;
    cert.bound = g.delta.max_entry();

    const std::vector<char> reach = reachable_from(g, y0);
    // One threshold for accumulated sums: stabilization, cycle positivity and
    // the final verdict all compare walk totals.
    const double thr = tol.exact ? 0.0 : tol.eps * n * g.delta.max_abs();

    std::vector<Num> v(n, 0.0);
    std::vector<std::vector<Num>> value_hist;  // value_hist[k-1] = V_k
    std::vector<std::vector<int>> choice;      // choice[k-1][y] = argmax opponent move
    const int max_sweeps = n + 1;
    bool pumped = false;
    int sweeps = 0;
    for (int k = 1; k <= max_sweeps; ++k) {
        std::vector<Num> w(n, 0.0);
        std::vector<int> ch(n, -1);
        bool changed = false;
        for (int y = 0; y < n; ++y) {
            if (!reach[y]) continue;
            Num best = 0.0;
            int bx = -1;
            for (int x = 0; x < n; ++x) {
                const Num cont = v[g.target_at(y, x)];
                const Num cand = g.delta(x, y) + (cont > 0.0 ? cont : 0.0);
                if (bx < 0 || cand > best) {
                    best = cand;
                    bx = x;
                }
            }
            w[y] = best;
            ch[y] = bx;
            if (best - v[y] > thr) changed = true;
        }
        v = std::move(w);
        value_hist.push_back(v);
        choice.push_back(std::move(ch));
        sweeps = k;
        if (!changed) break;
        if (k == max_sweeps) pumped = true;
    }
    cert.iterations = sweeps;

    // Unrolls the optimal walk recorded at sweep k from state `from`. The walk
    // stops once the continuation it used was max(0, V) = 0, so its edge sums
    // realize exactly V_k(from).
    auto unroll = [&](int from, int k, std::vector<int>& xs, std::vector<int>& nodes) {
        int w = from;
        nodes.push_back(w);
        for (int r = k; r >= 1; --r) {
            const int x = choice[r - 1][w];
            xs.push_back(x);
            w = g.target_at(w, x);
            nodes.push_back(w);
            if (r >= 2 && value_hist[r - 2][w] <= 0.0) break;
        }
    };

    if (pumped) {
        cert.verdict = ExploitVerdict::money_pump;
        const std::vector<Num>& prev = value_hist[sweeps - 2];
        int ystar = -1;
        for (int y = 0; y < n && ystar < 0; ++y)
            if (reach[y] && v[y] - prev[y] > thr) ystar = y;
        if (ystar < 0) throw std::logic_error("pump detected without an improving state");

        // The improving walk has n+1 edges, so it repeats a node. Splice out
        // nonpositive cycles; the total strictly exceeds V_n(ystar), which a
        // cycle-free walk of the remaining length cannot, so a strictly
        // positive cycle must surface before the walk runs out of repeats.
        std::vector<int> xs, nodes;
        unroll(ystar, sweeps, xs, nodes);
        while (true) {
            int ci = -1, cj = -1;
            for (size_t i = 0; ci < 0 && i + 1 < nodes.size(); ++i)
                for (size_t j = i + 1; j < nodes.size(); ++j)
                    if (nodes[i] == nodes[j]) {
                        ci = static_cast<int>(i);
                        cj = static_cast<int>(j);
                        break;
                    }
            if (ci < 0) throw std::logic_error("pump walk lost all cycles during splicing");
            Num s = 0.0;
            for (int t = ci; t < cj; ++t) s += g.delta(xs[t], nodes[t]);
            if (s > thr) {
                cert.witness_cycle.assign(xs.begin() + ci, xs.begin() + cj);
                cert.cycle_entry_state = nodes[ci];
                cert.cycle_sum = s;
                break;
            }
            nodes.erase(nodes.begin() + ci + 1, nodes.begin() + cj + 1);
            xs.erase(xs.begin() + ci, xs.begin() + cj);
        }
        return cert;
    }

    const Num sup = v[y0];
    cert.sup_total = sup;
    int kstar = sweeps;
    for (int k = 1; k <= sweeps; ++k)
        if (value_hist[k - 1][y0] == sup) {
            kstar = k;
            break;
        }
    std::vector<int> nodes;
    unroll(y0, kstar, cert.witness_path, nodes);
    cert.verdict = sup <= cert.bound + thr ? ExploitVerdict::essentially_unbeatable
                                           : ExploitVerdict::bounded_but_beaten;
    return cert;
}

ExploitationCertificate certify_unbeatable(const SymmetricGame& game, const RuleSpec& rule,
                                           std::optional<int> y0, const Tol& tol) {
    const RelativePayoffGame rel = build_relative_game(game);
    const TransitionGraph g = build_transition_graph(rule, rel, tol);
    if (y0) return sup_exploitation(g, *y0, tol);

    std::optional<ExploitationCertificate> worst;
    for (int s = 0; s < g.n; ++s) {
        ExploitationCertificate c = sup_exploitation(g, s, tol);
        c.worst_case_y0 = true;
        if (!worst) {
            worst = std::move(c);
            continue;
        }
        if (worst->verdict == ExploitVerdict::money_pump) break;  // lowest pumping y0 wins
        if (c.verdict == ExploitVerdict::money_pump) {
            worst = std::move(c);
            continue;
        }
        if (*c.sup_total > *worst->sup_total) worst = std::move(c);  // ties keep the lowest y0
    }
    return *worst;
}

Num best_prefix_value(const TransitionGraph& g, int y0, int moves) {
    const int n = g.n;
    if (y0 < 0 || y0 >= n) throw std::invalid_argument("best_prefix_value: y0 out of range");
    if (moves < 0) throw std::invalid_argument("best_prefix_value: moves must be >= 0");
    std::vector<Num> v(n, 0.0), w(n, 0.0);
    for (int k = 0; k < moves; ++k) {
        for (int y = 0; y < n; ++y) {
            Num best = 0.0;
            int bx = -1;
            for (int x = 0; x < n; ++x) {
                const Num cont = v[g.target_at(y, x)];
                const Num cand = g.delta(x, y) + (cont > 0.0 ? cont : 0.0);
                if (bx < 0 || cand > best) {
                    best = cand;
                    bx = x;
                }
            }
            w[y] = best;
        }
        std::swap(v, w);
    }
    return v[y0];
}

Num brute_force_oracle(const SymmetricGame& game, const RuleSpec& rule, int y0, int horizon,
                       const Tol& tol) {
    if (horizon < 0) throw std::invalid_argument("brute_force_oracle: horizon must be >= 0");
    const RelativePayoffGame rel = build_relative_game(game);
    const int n = rel.num_actions();
    if (y0 < 0 || y0 >= n) throw std::invalid_argument("brute_force_oracle: y0 out of range");
    double count = 1.0;
    for (int t = 0; t <= horizon; ++t) {
        count *= n;
        if (count > 1e7)
            throw std::invalid_argument("brute_force_oracle: n^(T+1) exceeds 1e7 sequences");
    }
    Num best = std::numeric_limits<Num>::lowest();
    // every DFS node is a prefix, so the max over prefixes comes for free
    auto rec = [&](auto&& self, int y, int depth, Num sum) -> void {
        for (int x = 0; x < n; ++x) {
            const Num s = sum + rel.delta(x, y);
            if (s > best) best = s;
            if (depth < horizon) self(self, step(rule, rel, x, y, tol), depth + 1, s);
        }
    };
    rec(rec, y0, 0, 0.0);
    return best;
}

}  // namespace imitation
