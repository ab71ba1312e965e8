#pragma once
#include <cstddef>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "dimlab/errors.hpp"
#include "dimlab/rational.hpp"

namespace dimlab {

// Finite real-valued hypothesis class: rows are range points X, columns are
// parameters Y, entries are exact rationals in [0,1]. A concept class is the
// special case where every entry is 0 or 1.
struct HypothesisClass {
    std::vector<std::string> x_labels;
    std::vector<std::string> y_labels;
    std::vector<std::vector<Rat>> values;  // values[i][j] = h_{y_j}(x_i)

    std::size_t num_x() const { return x_labels.size(); }
    std::size_t num_y() const { return y_labels.size(); }

    const Rat& at(std::size_t xi, std::size_t yj) const { return values[xi][yj]; }

    bool is_concept() const {
        for (const auto& row : values)
            for (const auto& v : row)
                if (v != Rat(0) && v != Rat(1)) return false;
        return true;
    }

    std::vector<Rat> column(std::size_t yj) const {
        std::vector<Rat> col;
        col.reserve(num_x());
        for (std::size_t i = 0; i < num_x(); ++i) col.push_back(values[i][yj]);
        return col;
    }

    void validate() const {
        require(!x_labels.empty() && !y_labels.empty(), "DimensionMismatch",
                "label lists must be nonempty");
        check_unique(x_labels, "x");
        check_unique(y_labels, "y");
        require(values.size() == x_labels.size(), "DimensionMismatch",
                "row count does not match x label count");
        for (const auto& row : values) {
            require(row.size() == y_labels.size(), "DimensionMismatch",
                    "column count does not match y label count");
            for (const auto& v : row)
                require(v.in_unit_interval(), "ValueOutOfRange",
                        "class value " + v.str() + " outside [0,1]");
        }
    }

private:
    static void check_unique(const std::vector<std::string>& labels, const char* which) {
        std::set<std::string> seen;
        for (const auto& l : labels)
            require(seen.insert(l).second, "DuplicateLabel",
                    std::string("duplicate ") + which + " label '" + l + "'");
    }
};

// Finite-support distribution over indices into a label list.
struct Distribution {
    std::vector<std::size_t> support;
    std::vector<Rat> weights;

    void validate(std::size_t label_count) const {
        require(support.size() == weights.size(), "DimensionMismatch",
                "support and weight lists differ in length");
        require(!support.empty(), "DimensionMismatch", "empty distribution");
        std::set<std::size_t> seen;
        Rat total(0);
        for (std::size_t k = 0; k < support.size(); ++k) {
            require(support[k] < label_count, "SupportOutOfRange",
                    "support index " + std::to_string(support[k]) + " out of range");
            require(seen.insert(support[k]).second, "SupportOutOfRange",
                    "repeated support index");
            require(weights[k] > Rat(0), "ValueOutOfRange", "weights must be positive");
            total += weights[k];
        }
        require(total == Rat(1), "ValueOutOfRange", "weights must sum to exactly 1");
    }
};

// Weighted finite family of classes sharing X and Y (finite Omega with mu).
struct MeasurableFamily {
    std::vector<Rat> omega_weights;
    std::vector<HypothesisClass> classes;

    void validate() const {
        require(!classes.empty(), "DimensionMismatch", "family must be nonempty");
        require(omega_weights.size() == classes.size(), "DimensionMismatch",
                "weight and class lists differ in length");
        Rat total(0);
        for (const auto& w : omega_weights) {
            require(w > Rat(0), "ValueOutOfRange", "family weights must be positive");
            total += w;
        }
        require(total == Rat(1), "ValueOutOfRange", "family weights must sum to 1");
        const auto& first = classes.front();
        for (const auto& c : classes) {
            c.validate();
            require(c.x_labels == first.x_labels && c.y_labels == first.y_labels,
                    "DimensionMismatch", "family classes must share x and y labels");
        }
    }
};

// Increasing piecewise-linear map on [0,1], given by its breakpoints. Covers
// the paper's continuous bijections at the rational points we ever evaluate.
struct MonotoneMap {
    std::vector<std::pair<Rat, Rat>> breakpoints;  // sorted by input

    static MonotoneMap identity() {
        return MonotoneMap{{{Rat(0), Rat(0)}, {Rat(1), Rat(1)}}};
    }

    void validate() const {
        require(breakpoints.size() >= 2, "DimensionMismatch",
                "monotone map needs at least two breakpoints");
        require(breakpoints.front().first == Rat(0), "ValueOutOfRange",
                "first breakpoint must have input 0");
        require(breakpoints.back().first == Rat(1), "ValueOutOfRange",
                "last breakpoint must have input 1");
        for (std::size_t k = 0; k + 1 < breakpoints.size(); ++k) {
            require(breakpoints[k].first < breakpoints[k + 1].first, "ValueOutOfRange",
                    "breakpoint inputs must be strictly increasing");
            require(breakpoints[k].second < breakpoints[k + 1].second, "ValueOutOfRange",
                    "breakpoint outputs must be strictly increasing");
        }
        for (const auto& [in, out] : breakpoints) {
            require(in.in_unit_interval() && out.in_unit_interval(), "ValueOutOfRange",
                    "breakpoints must lie in [0,1]");
        }
    }

    Rat eval(const Rat& x) const {
        require(x.in_unit_interval(), "ValueOutOfRange", "monotone map input outside [0,1]");
        for (std::size_t k = 0; k + 1 < breakpoints.size(); ++k) {
            const auto& [x0, y0] = breakpoints[k];
            const auto& [x1, y1] = breakpoints[k + 1];
            if (x >= x0 && x <= x1) {
                if (x == x0) return y0;
                if (x == x1) return y1;
                return y0 + (y1 - y0) * (x - x0) / (x1 - x0);
            }
        }
        return breakpoints.back().second;
    }
};

} // namespace dimlab
