// Branch and bound over LP relaxations: best-bound node selection,
// most-fractional branching with lowest-index tie break, no warm starts.
// Deterministic by construction.

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <queue>
#include <string>
#include <vector>

#include "xorbid/errors.hpp"
#include "xorbid/solver/lp.hpp"

namespace xorbid::solver {

Solution solve_lp_bounded(const LinearProgram& lp,
                          const std::vector<double>& lower,
                          const std::vector<double>& upper,
                          const SolverSettings& settings);

namespace {

struct Node {
    std::vector<double> lower, upper;
    double bound = 0.0;  // parent LP objective, user sense
    long id = 0;
};

struct NodeOrder {
    bool maximize;
    // Best bound first; FIFO among ties.
    bool operator()(const Node& a, const Node& b) const {
        const double ba = maximize ? a.bound : -a.bound;
        const double bb = maximize ? b.bound : -b.bound;
        if (ba != bb) return ba < bb;  // priority_queue: "worse" first
        return a.id > b.id;
    }
};

}  // namespace

Solution solve_milp(const MixedIntegerProgram& mip, double gap_tolerance,
                    const SolverSettings& settings) {
    mip.validate();
    if (std::isnan(gap_tolerance) || gap_tolerance < 0.0) {
        throw ValidationError("solve_milp: gap_tolerance must be >= 0");
    }
    const bool maximize = mip.lp.sense == Sense::maximize;
    const double sign = maximize ? 1.0 : -1.0;  // internally compare sign*obj (larger better)

    std::priority_queue<Node, std::vector<Node>, NodeOrder> open(NodeOrder{maximize});
    long next_id = 0;
    Node root{mip.lp.lower, mip.lp.upper,
              maximize ? kInfinity : -kInfinity, next_id++};
    open.push(std::move(root));

    bool have_incumbent = false;
    Solution incumbent;
    long nodes = 0;
    bool root_unbounded = false;
    double pruned_bound = -kInfinity;  // sign space; tracks what pruning discarded

    while (!open.empty()) {
        Node node = open.top();
        open.pop();
        if (have_incumbent &&
            sign * node.bound <= sign * incumbent.objective + gap_tolerance + 1e-12) {
            pruned_bound = std::max(pruned_bound, sign * node.bound);
            continue;  // cannot beat the incumbent by more than the gap
        }
        if (++nodes > settings.node_limit) {
            const double bound = node.bound;  // best-bound order: this is the tree bound
            throw ResourceLimitError(
                "solve_milp: node limit exceeded (" + std::to_string(settings.node_limit) + ")",
                have_incumbent, have_incumbent ? incumbent.objective : 0.0, bound);
        }

        Solution relax = solve_lp_bounded(mip.lp, node.lower, node.upper, settings);
        if (const char* dbg = getenv("XORBID_BB_STATS")) { static long cum_it = 0; cum_it += relax.iterations; fprintf(stderr, "node %ld: lp_iters=%ld cum=%ld obj=%.3f\n", nodes, relax.iterations, cum_it, relax.objective); (void)dbg; }
        if (relax.status == SolveStatus::infeasible) continue;
        if (relax.status == SolveStatus::unbounded) {
            if (nodes == 1) { root_unbounded = true; break; }
            throw InternalError("solve_milp: child relaxation unbounded under tightened bounds");
        }
        if (have_incumbent &&
            sign * relax.objective <= sign * incumbent.objective + gap_tolerance + 1e-12) {
            pruned_bound = std::max(pruned_bound, sign * relax.objective);
            continue;
        }

        // Most-fractional integer variable, lowest index on ties.
        int branch_col = -1;
        double branch_val = 0.0;
        double best_score = -1.0;
        for (int c : mip.integer_cols) {
            const double v = relax.x[c];
            const double dist = std::min(v - std::floor(v), std::ceil(v) - v);
            if (dist <= settings.integrality_tol) continue;
            const double score = 0.5 - std::abs(dist - 0.5);  // closer to .5 is better
            if (score > best_score + 1e-15) {
                best_score = score;
                branch_col = c;
                branch_val = v;
            }
        }

        if (branch_col < 0) {
            // Integral: snap and accept if better.
            for (int c : mip.integer_cols) relax.x[c] = std::round(relax.x[c]);
            double obj = 0.0;
            for (int j = 0; j < mip.lp.num_cols(); ++j) obj += mip.lp.objective[j] * relax.x[j];
            relax.objective = obj;
            if (!have_incumbent || sign * obj > sign * incumbent.objective + 1e-12) {
                incumbent = relax;
                have_incumbent = true;
            }
            continue;
        }

        Node down{node.lower, node.upper, relax.objective, next_id++};
        down.upper[branch_col] = std::floor(branch_val);
        Node up{node.lower, node.upper, relax.objective, next_id++};
        up.lower[branch_col] = std::ceil(branch_val);
        open.push(std::move(down));
        open.push(std::move(up));
    }

    Solution result;
    if (root_unbounded) {
        result.status = SolveStatus::unbounded;
        result.nodes = nodes;
        return result;
    }
    if (!have_incumbent) {
        result.status = SolveStatus::infeasible;
        result.nodes = nodes;
        return result;
    }
    result = incumbent;
    result.row_duals.clear();  // duals are defined for pure LPs only
    result.status = SolveStatus::optimal;
    result.best_bound = sign * std::max(sign * incumbent.objective, pruned_bound);
    result.nodes = nodes;
    return result;
}

}  // namespace xorbid::solver
