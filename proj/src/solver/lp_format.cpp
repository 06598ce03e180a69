#include "xorbid/solver/lp_format.hpp"

#include <cmath>
#include <ostream>
#include <set>
#include <sstream>

namespace xorbid::solver {

namespace {

void write_number(std::ostream& out, double v) {
    std::ostringstream ss;
    ss.precision(17);
    ss << v;
    out << ss.str();
}

void write_terms(std::ostream& out, const std::vector<int>& cols,
                 const std::vector<double>& vals) {
    bool first = true;
    for (size_t k = 0; k < cols.size(); ++k) {
        const double v = vals[k];
        if (v == 0.0) continue;
        if (first) {
            if (v < 0) out << "- ";
            first = false;
        } else {
            out << (v < 0 ? " - " : " + ");
        }
        write_number(out, std::abs(v));
        out << " x" << cols[k];
    }
    if (first) out << "0 x0";
}

void write_body(const LinearProgram& lp, const std::set<int>* binaries,
                const std::set<int>* generals, std::ostream& out) {
    out << (lp.sense == Sense::maximize ? "Maximize" : "Minimize") << "\n obj: ";
    std::vector<int> ocols;
    std::vector<double> ovals;
    for (int j = 0; j < lp.num_cols(); ++j) {
        if (lp.objective[j] != 0.0) {
            ocols.push_back(j);
            ovals.push_back(lp.objective[j]);
        }
    }
    write_terms(out, ocols, ovals);
    out << "\nSubject To\n";
    for (int i = 0; i < lp.num_rows(); ++i) {
        const auto& r = lp.rows[i];
        out << " c" << i << ": ";
        write_terms(out, r.cols, r.vals);
        switch (r.sense) {
            case RowSense::less_equal:    out << " <= "; break;
            case RowSense::equal:         out << " = ";  break;
            case RowSense::greater_equal: out << " >= "; break;
        }
        write_number(out, r.rhs);
        out << "\n";
    }
    out << "Bounds\n";
    for (int j = 0; j < lp.num_cols(); ++j) {
        const double lb = lp.lower[j];
        const double ub = lp.upper[j];
        if (binaries && binaries->count(j) && lb == 0.0 && ub == 1.0) continue;
        out << " ";
        if (!std::isfinite(lb) && !std::isfinite(ub)) {
            out << "x" << j << " free\n";
            continue;
        }
        if (std::isfinite(lb)) {
            write_number(out, lb);
            out << " <= ";
        } else {
            out << "-inf <= ";
        }
        out << "x" << j;
        if (std::isfinite(ub)) {
            out << " <= ";
            write_number(out, ub);
        }
        out << "\n";
    }
    if (binaries && !binaries->empty()) {
        out << "Binary\n";
        for (int j : *binaries) out << " x" << j << "\n";
    }
    if (generals && !generals->empty()) {
        out << "General\n";
        for (int j : *generals) out << " x" << j << "\n";
    }
    out << "End\n";
}

}  // namespace

void write_lp_format(const LinearProgram& lp, std::ostream& out) {
    write_body(lp, nullptr, nullptr, out);
}

void write_lp_format(const MixedIntegerProgram& mip, std::ostream& out) {
    std::set<int> binaries, generals;
    for (int c : mip.integer_cols) {
        if (mip.lp.lower[c] == 0.0 && mip.lp.upper[c] == 1.0) binaries.insert(c);
        else generals.insert(c);
    }
    write_body(mip.lp, &binaries, &generals, out);
}

std::string to_lp_format(const LinearProgram& lp) {
    std::ostringstream ss;
    write_lp_format(lp, ss);
    return ss.str();
}

std::string to_lp_format(const MixedIntegerProgram& mip) {
    std::ostringstream ss;
    write_lp_format(mip, ss);
    return ss.str();
}

}  // namespace xorbid::solver
