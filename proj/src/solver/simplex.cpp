// Bounded-variable revised simplex, two phases with artificial columns.
// Dantzig pricing, Bland's rule after a stall threshold, dense basis
// inverse with periodic refactorization. Sized for desk-scale programs
// (a few thousand rows); no sparse factorization, no warm starts.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <string>
#include <vector>

#include "xorbid/errors.hpp"
#include "xorbid/solver/lp.hpp"

namespace xorbid::solver {

namespace {

constexpr double kDualTol = 1e-9;

enum class VarState : std::uint8_t { basic, at_lower, at_upper, nonbasic_free };

struct Column {
    std::vector<int> row;
    std::vector<double> val;
};

class Simplex {
public:
    Simplex(const LinearProgram& lp, const SolverSettings& settings,
            const std::vector<double>* lower_override,
            const std::vector<double>* upper_override)
        : lp_(lp), settings_(settings) {
        lb_user_ = lower_override ? *lower_override : lp.lower;
        ub_user_ = upper_override ? *upper_override : lp.upper;
    }

    Solution run();

private:
    void build();
    void init_basis();
    // Returns true if an optimum for the given costs was reached, false if
    // an unbounded improving ray was found.
    bool iterate(const std::vector<double>& cost);
    void compute_y(const std::vector<double>& cost);
    double reduced_cost(int j, const std::vector<double>& cost) const;
    void recompute_reduced_costs(const std::vector<double>& cost);
    void compute_w(int j);
    void refactorize();
    void pivot(int entering, int leaving_pos, double entering_value);
    double basic_objective(const std::vector<double>& cost) const;
    bool drive_out_artificials();
    Solution extract(const std::vector<double>& cost);

    const LinearProgram& lp_;
    SolverSettings settings_;
    std::vector<double> lb_user_, ub_user_;

    int m_ = 0;               // kept rows
    int n_ = 0;               // structural columns
    int num_slack_ = 0;
    int art_start_ = 0;       // first artificial column index
    std::vector<int> kept_rows_;  // kept row -> original row index
    std::vector<Column> cols_;
    std::vector<double> lb_, ub_, value_;
    std::vector<VarState> state_;
    std::vector<double> b_;
    std::vector<double> cost_min_;  // phase-2 cost, minimization form
    double obj_sign_ = 1.0;         // +1 minimize, -1 maximize

    std::vector<int> basis_;
    std::vector<double> binv_;  // m x m, row-major
    std::vector<double> y_, w_, d_;  // d_: reduced costs, updated per pivot
    long iterations_ = 0;
    int pivots_since_refactor_ = 0;
    bool empty_row_infeasible_ = false;
};

void Simplex::build() {
    const int n = lp_.num_cols();
    n_ = n;
    obj_sign_ = (lp_.sense == Sense::maximize) ? -1.0 : 1.0;

    kept_rows_.clear();
    for (int i = 0; i < lp_.num_rows(); ++i) {
        const auto& r = lp_.rows[i];
        if (!r.cols.empty()) {
            kept_rows_.push_back(i);
            continue;
        }
        // Empty row: feasible iff 0 satisfies it against rhs.
        const double tol = settings_.feasibility_tol;
        const bool ok = (r.sense == RowSense::less_equal && 0.0 <= r.rhs + tol) ||
                        (r.sense == RowSense::greater_equal && 0.0 >= r.rhs - tol) ||
                        (r.sense == RowSense::equal && std::abs(r.rhs) <= tol);
        if (!ok) empty_row_infeasible_ = true;
    }
    m_ = static_cast<int>(kept_rows_.size());
    num_slack_ = m_;
    art_start_ = n_ + num_slack_;

    cols_.assign(n_ + num_slack_, {});
    lb_.assign(n_ + num_slack_, 0.0);
    ub_.assign(n_ + num_slack_, 0.0);
    cost_min_.assign(n_ + num_slack_, 0.0);
    b_.assign(m_, 0.0);

    for (int j = 0; j < n_; ++j) {
        lb_[j] = lb_user_[j];
        ub_[j] = ub_user_[j];
        cost_min_[j] = obj_sign_ * lp_.objective[j];
    }
    for (int i = 0; i < m_; ++i) {
        const auto& r = lp_.rows[kept_rows_[i]];
        b_[i] = r.rhs;
        for (size_t k = 0; k < r.cols.size(); ++k) {
            if (r.vals[k] == 0.0) continue;
            cols_[r.cols[k]].row.push_back(i);
            cols_[r.cols[k]].val.push_back(r.vals[k]);
        }
        const int s = n_ + i;
        cols_[s].row.push_back(i);
        cols_[s].val.push_back(1.0);
        switch (r.sense) {
            case RowSense::less_equal:    lb_[s] = 0.0;        ub_[s] = kInfinity; break;
            case RowSense::equal:         lb_[s] = 0.0;        ub_[s] = 0.0;       break;
            case RowSense::greater_equal: lb_[s] = -kInfinity; ub_[s] = 0.0;       break;
        }
    }
}

void Simplex::init_basis() {
    const int n_total = n_ + num_slack_;
    value_.assign(n_total, 0.0);
    state_.assign(n_total, VarState::at_lower);
    for (int j = 0; j < n_total; ++j) {
        const bool lf = std::isfinite(lb_[j]);
        const bool uf = std::isfinite(ub_[j]);
        if (lf && uf) {
            if (std::abs(lb_[j]) <= std::abs(ub_[j])) {
                value_[j] = lb_[j]; state_[j] = VarState::at_lower;
            } else {
                value_[j] = ub_[j]; state_[j] = VarState::at_upper;
            }
        } else if (lf) {
            value_[j] = lb_[j]; state_[j] = VarState::at_lower;
        } else if (uf) {
            value_[j] = ub_[j]; state_[j] = VarState::at_upper;
        } else {
            value_[j] = 0.0; state_[j] = VarState::nonbasic_free;
        }
    }

    std::vector<double> resid = b_;
    for (int j = 0; j < n_total; ++j) {
        if (value_[j] == 0.0) continue;
        const Column& c = cols_[j];
        for (size_t k = 0; k < c.row.size(); ++k) resid[c.row[k]] -= c.val[k] * value_[j];
    }

    basis_.assign(m_, -1);
    binv_.assign(static_cast<size_t>(m_) * m_, 0.0);
    // Slack becomes basic where the residual fits its range; otherwise an
    // artificial column carrying the leftover keeps the start basic-feasible.
    for (int i = 0; i < m_; ++i) {
        const int s = n_ + i;
        const double r = resid[i] + value_[s];  // slack currently at a bound
        if (r >= lb_[s] && r <= ub_[s]) {
            basis_[i] = s;
            state_[s] = VarState::basic;
            value_[s] = r;
            binv_[static_cast<size_t>(i) * m_ + i] = 1.0;
        } else {
            const double clamped = std::clamp(r, lb_[s], ub_[s]);
            value_[s] = clamped;
            state_[s] = (clamped == lb_[s]) ? VarState::at_lower : VarState::at_upper;
            const double leftover = r - clamped;
            const double sign = leftover >= 0.0 ? 1.0 : -1.0;
            Column art;
            art.row.push_back(i);
            art.val.push_back(sign);
            cols_.push_back(std::move(art));
            lb_.push_back(0.0);
            ub_.push_back(kInfinity);
            cost_min_.push_back(0.0);
            value_.push_back(std::abs(leftover));
            state_.push_back(VarState::basic);
            basis_[i] = static_cast<int>(cols_.size()) - 1;
            binv_[static_cast<size_t>(i) * m_ + i] = sign;
        }
    }
}

void Simplex::compute_y(const std::vector<double>& cost) {
    y_.assign(m_, 0.0);
    for (int i = 0; i < m_; ++i) {
        const double cb = cost[basis_[i]];
        if (cb == 0.0) continue;
        const double* row = &binv_[static_cast<size_t>(i) * m_];
        for (int k = 0; k < m_; ++k) y_[k] += cb * row[k];
    }
}

double Simplex::reduced_cost(int j, const std::vector<double>& cost) const {
    double d = cost[j];
    const Column& c = cols_[j];
    for (size_t k = 0; k < c.row.size(); ++k) d -= y_[c.row[k]] * c.val[k];
    return d;
}

void Simplex::recompute_reduced_costs(const std::vector<double>& cost) {
    compute_y(cost);
    d_.assign(cols_.size(), 0.0);
    for (size_t j = 0; j < cols_.size(); ++j) {
        if (state_[j] != VarState::basic) d_[j] = reduced_cost(static_cast<int>(j), cost);
    }
}

void Simplex::compute_w(int j) {
    w_.assign(m_, 0.0);
    const Column& c = cols_[j];
    for (size_t k = 0; k < c.row.size(); ++k) {
        const double v = c.val[k];
        const int r = c.row[k];
        for (int i = 0; i < m_; ++i) w_[i] += binv_[static_cast<size_t>(i) * m_ + r] * v;
    }
}

void Simplex::refactorize() {
    // Gauss-Jordan inversion of the basis matrix, partial pivoting.
    std::vector<double> mat(static_cast<size_t>(m_) * m_, 0.0);
    for (int p = 0; p < m_; ++p) {
        const Column& c = cols_[basis_[p]];
        for (size_t k = 0; k < c.row.size(); ++k) {
            mat[static_cast<size_t>(c.row[k]) * m_ + p] = c.val[k];
        }
    }
    std::vector<double> inv(static_cast<size_t>(m_) * m_, 0.0);
    for (int i = 0; i < m_; ++i) inv[static_cast<size_t>(i) * m_ + i] = 1.0;
    for (int col = 0; col < m_; ++col) {
        int piv = -1;
        double best = 1e-12;
        for (int i = col; i < m_; ++i) {
            const double a = std::abs(mat[static_cast<size_t>(i) * m_ + col]);
            if (a > best) { best = a; piv = i; }
        }
        if (piv < 0) throw SolverError("simplex: singular basis during refactorization");
        if (piv != col) {
            for (int k = 0; k < m_; ++k) {
                std::swap(mat[static_cast<size_t>(piv) * m_ + k], mat[static_cast<size_t>(col) * m_ + k]);
                std::swap(inv[static_cast<size_t>(piv) * m_ + k], inv[static_cast<size_t>(col) * m_ + k]);
            }
        }
        const double d = mat[static_cast<size_t>(col) * m_ + col];
        for (int k = 0; k < m_; ++k) {
            mat[static_cast<size_t>(col) * m_ + k] /= d;
            inv[static_cast<size_t>(col) * m_ + k] /= d;
        }
        for (int i = 0; i < m_; ++i) {
            if (i == col) continue;
            const double f = mat[static_cast<size_t>(i) * m_ + col];
            if (f == 0.0) continue;
            for (int k = 0; k < m_; ++k) {
                mat[static_cast<size_t>(i) * m_ + k] -= f * mat[static_cast<size_t>(col) * m_ + k];
                inv[static_cast<size_t>(i) * m_ + k] -= f * inv[static_cast<size_t>(col) * m_ + k];
            }
        }
    }
    binv_ = std::move(inv);

    // Recompute basic values from the nonbasic point.
    std::vector<double> resid = b_;
    for (size_t j = 0; j < cols_.size(); ++j) {
        if (state_[j] == VarState::basic || value_[j] == 0.0) continue;
        const Column& c = cols_[j];
        for (size_t k = 0; k < c.row.size(); ++k) resid[c.row[k]] -= c.val[k] * value_[j];
    }
    for (int i = 0; i < m_; ++i) {
        double v = 0.0;
        const double* row = &binv_[static_cast<size_t>(i) * m_];
        for (int k = 0; k < m_; ++k) v += row[k] * resid[k];
        value_[basis_[i]] = v;
    }
    pivots_since_refactor_ = 0;
}

double Simplex::basic_objective(const std::vector<double>& cost) const {
    double obj = 0.0;
    for (size_t j = 0; j < cols_.size(); ++j) obj += cost[j] * value_[j];
    return obj;
}

void Simplex::pivot(int entering, int leaving_pos, double entering_value) {
    const double piv = w_[leaving_pos];
    double* prow = &binv_[static_cast<size_t>(leaving_pos) * m_];
    for (int k = 0; k < m_; ++k) prow[k] /= piv;
    for (int i = 0; i < m_; ++i) {
        if (i == leaving_pos || w_[i] == 0.0) continue;
        const double f = w_[i];
        double* row = &binv_[static_cast<size_t>(i) * m_];
        for (int k = 0; k < m_; ++k) row[k] -= f * prow[k];
    }
    basis_[leaving_pos] = entering;
    state_[entering] = VarState::basic;
    value_[entering] = entering_value;
    ++pivots_since_refactor_;
}

bool Simplex::iterate(const std::vector<double>& cost) {
    bool bland = false;
    int stalled = 0;
    const long budget = settings_.iteration_limit;
    recompute_reduced_costs(cost);
    bool fresh_costs = true;  // d_ just recomputed from scratch

    while (true) {
        if (++iterations_ > budget) {
            throw SolverError("simplex: iteration limit exceeded (" +
                              std::to_string(budget) + ")");
        }

        int enter = -1;
        double enter_dir = 0.0;
        double best_score = kDualTol;
        const int n_total = static_cast<int>(cols_.size());
        for (int j = 0; j < n_total; ++j) {
            if (state_[j] == VarState::basic) continue;
            if (lb_[j] == ub_[j]) continue;      // fixed, never moves
            if (j >= art_start_) continue;       // artificials never re-enter
            const double d = d_[j];
            double dir = 0.0;
            if (state_[j] == VarState::at_lower && d < -best_score) dir = 1.0;
            else if (state_[j] == VarState::at_upper && d > best_score) dir = -1.0;
            else if (state_[j] == VarState::nonbasic_free && std::abs(d) > best_score) dir = d > 0 ? -1.0 : 1.0;
            if (dir != 0.0) {
                enter = j;
                enter_dir = dir;
                if (bland) break;              // lowest eligible index
                best_score = std::abs(d);
            }
        }
        if (enter < 0) {
            // Guard against drift in the incrementally updated reduced costs:
            // only accept optimality certified by a fresh recomputation.
            if (fresh_costs) return true;
            recompute_reduced_costs(cost);
            fresh_costs = true;
            continue;
        }

        compute_w(enter);

        // Ratio test: how far can the entering variable move.
        double limit = kInfinity;
        int leave_pos = -1;
        double leave_to = 0.0;  // bound the leaving variable lands on
        for (int i = 0; i < m_; ++i) {
            const double wi = enter_dir * w_[i];
            if (std::abs(wi) <= settings_.pivot_tol) continue;
            const int bj = basis_[i];
            double t;
            double target;
            if (wi > 0.0) {  // basic decreases toward its lower bound
                if (!std::isfinite(lb_[bj])) continue;
                t = (value_[bj] - lb_[bj]) / wi;
                target = lb_[bj];
            } else {         // basic increases toward its upper bound
                if (!std::isfinite(ub_[bj])) continue;
                t = (value_[bj] - ub_[bj]) / wi;
                target = ub_[bj];
            }
            t = std::max(t, 0.0);
            if (t < limit - 1e-12 ||
                (t < limit + 1e-12 && (leave_pos < 0 || basis_[i] < basis_[leave_pos]))) {
                limit = t;
                leave_pos = i;
                leave_to = target;
            }
        }
        const double range = ub_[enter] - lb_[enter];
        const bool flip_blocks = std::isfinite(range) && range <= limit;

        if (!flip_blocks && leave_pos < 0) return false;  // unbounded ray

        const double step = flip_blocks ? range : limit;
        if (step != 0.0) {
            for (int i = 0; i < m_; ++i) {
                if (w_[i] == 0.0) continue;
                value_[basis_[i]] -= enter_dir * step * w_[i];
            }
        }

        const double improvement = -d_[enter] * enter_dir * step;  // >= 0 in min form

        if (flip_blocks) {
            value_[enter] = (state_[enter] == VarState::at_lower) ? ub_[enter] : lb_[enter];
            state_[enter] = (state_[enter] == VarState::at_lower) ? VarState::at_upper
                                                                  : VarState::at_lower;
            // Reduced costs are unchanged by a bound flip.
        } else {
            const int out = basis_[leave_pos];
            value_[out] = leave_to;
            state_[out] = (leave_to == lb_[out]) ? VarState::at_lower : VarState::at_upper;

            // Update reduced costs with the pre-pivot row of the inverse:
            // d_j -= (d_enter / w_r) * (e_r' B^-1 A_j).
            const double ratio = d_[enter] / w_[leave_pos];
            if (ratio != 0.0) {
                const double* alpha = &binv_[static_cast<size_t>(leave_pos) * m_];
                for (int j = 0; j < n_total; ++j) {
                    if (state_[j] == VarState::basic) continue;
                    if (j == out || j == enter) continue;
                    const Column& c = cols_[j];
                    double v = 0.0;
                    for (size_t k = 0; k < c.row.size(); ++k) v += alpha[c.row[k]] * c.val[k];
                    if (v != 0.0) d_[j] -= ratio * v;
                }
            }
            d_[out] = -ratio;
            d_[enter] = 0.0;
            fresh_costs = false;

            pivot(enter, leave_pos, value_[enter] + enter_dir * step);
            if (pivots_since_refactor_ >= settings_.refactor_interval) {
                refactorize();
                recompute_reduced_costs(cost);
                fresh_costs = true;
            }
        }

        if (!bland) {
            if (improvement > 1e-12) {
                stalled = 0;
            } else if (++stalled > settings_.stall_limit) {
                bland = true;  // guarantees termination under degeneracy
            }
        }
    }
}

bool Simplex::drive_out_artificials() {
    for (int i = 0; i < m_; ++i) {
        if (basis_[i] < art_start_) continue;
        // Degenerate swap with any usable nonbasic column.
        int found = -1;
        for (int j = 0; j < art_start_; ++j) {
            if (state_[j] == VarState::basic) continue;
            double wi = 0.0;
            const Column& c = cols_[j];
            for (size_t k = 0; k < c.row.size(); ++k) {
                wi += binv_[static_cast<size_t>(i) * m_ + c.row[k]] * c.val[k];
            }
            if (std::abs(wi) > 1e-7) { found = j; break; }
        }
        if (found >= 0) {
            compute_w(found);
            const int art = basis_[i];
            const double keep = value_[found];
            value_[art] = 0.0;
            state_[art] = VarState::at_lower;
            pivot(found, i, keep);
        }
        // Otherwise the row is redundant; the artificial stays basic at 0,
        // pinned by its [0,0] bounds below.
    }
    for (size_t j = art_start_; j < cols_.size(); ++j) ub_[j] = 0.0;
    return true;
}

Solution Simplex::extract(const std::vector<double>& cost) {
    refactorize();  // tighten basic values before reporting
    Solution sol;
    sol.status = SolveStatus::optimal;
    sol.iterations = iterations_;
    sol.x.assign(n_, 0.0);
    for (int j = 0; j < n_; ++j) sol.x[j] = value_[j];
    double obj = 0.0;
    for (int j = 0; j < n_; ++j) obj += lp_.objective[j] * sol.x[j];
    sol.objective = obj;

    compute_y(cost);
    sol.row_duals.assign(lp_.num_rows(), 0.0);
    for (int i = 0; i < m_; ++i) sol.row_duals[kept_rows_[i]] = obj_sign_ * y_[i];

    // Dual objective with bound terms: y'b + sum over nonbasic j of d_j * x_j.
    double dual = 0.0;
    for (int i = 0; i < m_; ++i) dual += y_[i] * b_[i];
    for (int j = 0; j < n_ + num_slack_; ++j) {
        if (state_[j] == VarState::basic || value_[j] == 0.0) continue;
        dual += reduced_cost(j, cost) * value_[j];
    }
    sol.dual_objective = obj_sign_ * dual;
    return sol;
}

Solution Simplex::run() {
    build();
    if (empty_row_infeasible_) {
        Solution sol;
        sol.status = SolveStatus::infeasible;
        return sol;
    }
    if (m_ == 0) {
        // Pure bound problem.
        Solution sol;
        sol.x.assign(n_, 0.0);
        for (int j = 0; j < n_; ++j) {
            const double c = obj_sign_ * lp_.objective[j];
            double v;
            if (c > 0.0) v = lb_user_[j];
            else if (c < 0.0) v = ub_user_[j];
            else v = std::isfinite(lb_user_[j]) ? (std::isfinite(ub_user_[j]) && std::abs(ub_user_[j]) < std::abs(lb_user_[j]) ? ub_user_[j] : lb_user_[j]) : (std::isfinite(ub_user_[j]) ? ub_user_[j] : 0.0);
            if (!std::isfinite(v)) {
                sol.status = SolveStatus::unbounded;
                return sol;
            }
            sol.x[j] = v;
            sol.objective += lp_.objective[j] * v;
        }
        sol.status = SolveStatus::optimal;
        sol.dual_objective = sol.objective;
        return sol;
    }

    init_basis();

    // Phase 1: minimize the sum of artificials.
    std::vector<double> phase1(cols_.size(), 0.0);
    bool any_artificial = false;
    for (size_t j = art_start_; j < cols_.size(); ++j) { phase1[j] = 1.0; any_artificial = true; }
    if (any_artificial) {
        if (!iterate(phase1)) {
            throw InternalError("simplex: unbounded ray in phase 1");
        }
        const double infeas = basic_objective(phase1);
        if (infeas > settings_.feasibility_tol) {
            Solution sol;
            sol.status = SolveStatus::infeasible;
            sol.iterations = iterations_;
            return sol;
        }
        drive_out_artificials();
    }

    // Phase 2: the real objective.
    if (!iterate(cost_min_)) {
        Solution sol;
        sol.status = SolveStatus::unbounded;
        sol.iterations = iterations_;
        return sol;
    }
    return extract(cost_min_);
}

}  // namespace

Solution solve_lp(const LinearProgram& lp, const SolverSettings& settings) {
    lp.validate();
    Simplex s(lp, settings, nullptr, nullptr);
    return s.run();
}

Solution solve_lp_bounded(const LinearProgram& lp,
                          const std::vector<double>& lower,
                          const std::vector<double>& upper,
                          const SolverSettings& settings) {
    Simplex s(lp, settings, &lower, &upper);
    return s.run();
}

}  // namespace xorbid::solver
