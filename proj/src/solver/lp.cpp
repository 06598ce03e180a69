#include "xorbid/solver/lp.hpp"

#include <cmath>
#include <set>
#include <string>

#include "xorbid/errors.hpp"

namespace xorbid::solver {

int LinearProgram::add_column(double lb, double ub, double obj) {
    lower.push_back(lb);
    upper.push_back(ub);
    objective.push_back(obj);
    return num_cols() - 1;
}

void LinearProgram::add_row(RowSense row_sense, double rhs,
                            std::vector<int> cols, std::vector<double> vals) {
    Row r;
    r.sense = row_sense;
    r.rhs = rhs;
    r.cols = std::move(cols);
    r.vals = std::move(vals);
    rows.push_back(std::move(r));
}

void LinearProgram::validate() const {
    const int n = num_cols();
    if (lower.size() != objective.size() || upper.size() != objective.size()) {
        throw ValidationError("lp: bound vectors and objective differ in length");
    }
    for (int j = 0; j < n; ++j) {
        if (std::isnan(objective[j]) || std::isinf(objective[j])) {
            throw ValidationError("lp: objective coefficient of column " +
                                  std::to_string(j) + " is not finite");
        }
        if (std::isnan(lower[j]) || std::isnan(upper[j])) {
            throw ValidationError("lp: NaN bound on column " + std::to_string(j));
        }
        if (lower[j] == kInfinity || upper[j] == -kInfinity || lower[j] > upper[j]) {
            throw ValidationError("lp: empty bound interval on column " +
                                  std::to_string(j));
        }
    }
    for (size_t i = 0; i < rows.size(); ++i) {
        const Row& r = rows[i];
        if (r.cols.size() != r.vals.size()) {
            throw ValidationError("lp: row " + std::to_string(i) +
                                  " has mismatched index/value lengths");
        }
        if (std::isnan(r.rhs) || std::isinf(r.rhs)) {
            throw ValidationError("lp: rhs of row " + std::to_string(i) +
                                  " is not finite");
        }
        std::set<int> seen;
        for (size_t k = 0; k < r.cols.size(); ++k) {
            const int c = r.cols[k];
            if (c < 0 || c >= n) {
                throw ValidationError("lp: row " + std::to_string(i) +
                                      " references column " + std::to_string(c) +
                                      " out of range [0," + std::to_string(n) + ")");
            }
            if (!seen.insert(c).second) {
                throw ValidationError("lp: row " + std::to_string(i) +
                                      " references column " + std::to_string(c) +
                                      " twice");
            }
            if (std::isnan(r.vals[k]) || std::isinf(r.vals[k])) {
                throw ValidationError("lp: coefficient in row " + std::to_string(i) +
                                      " is not finite");
            }
        }
    }
}

void MixedIntegerProgram::validate() const {
    lp.validate();
    std::set<int> seen;
    for (int c : integer_cols) {
        if (c < 0 || c >= lp.num_cols()) {
            throw ValidationError("mip: integer column " + std::to_string(c) +
                                  " out of range");
        }
        if (!seen.insert(c).second) {
            throw ValidationError("mip: integer column " + std::to_string(c) +
                                  " listed twice");
        }
        if (std::isinf(lp.lower[c]) || std::isinf(lp.upper[c])) {
            throw ValidationError("mip: integer column " + std::to_string(c) +
                                  " must have finite bounds");
        }
    }
}

}  // namespace xorbid::solver
