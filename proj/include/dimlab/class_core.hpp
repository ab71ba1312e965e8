#pragma once
#include <string>
#include <vector>

#include "dimlab/types.hpp"

namespace dimlab {

inline HypothesisClass make_class(std::vector<std::string> x_labels,
                                  std::vector<std::string> y_labels,
                                  std::vector<std::vector<Rat>> values) {
    HypothesisClass h{std::move(x_labels), std::move(y_labels), std::move(values)};
    h.validate();
    return h;
}

// Swap the roles of range points and parameters (transpose the matrix).
inline HypothesisClass dual(const HypothesisClass& h) {
    HypothesisClass d;
    d.x_labels = h.y_labels;
    d.y_labels = h.x_labels;
    d.values.assign(h.num_y(), std::vector<Rat>(h.num_x()));
    for (std::size_t i = 0; i < h.num_x(); ++i)
        for (std::size_t j = 0; j < h.num_y(); ++j)
            d.values[j][i] = h.values[i][j];
    return d;
}

// Apply an increasing map to every value; shape preserved.
inline HypothesisClass compose_monotone(const HypothesisClass& h, const MonotoneMap& f) {
    f.validate();
    HypothesisClass out = h;
    for (auto& row : out.values)
        for (auto& v : row) v = f.eval(v);
    return out;
}

// Parameters become distributions mu over Y; h_mu(x) = E_mu[h_p(x)], exact.
inline HypothesisClass distribution_class(const HypothesisClass& h,
                                          const std::vector<Distribution>& mus) {
    require(!mus.empty(), "DimensionMismatch", "need at least one distribution");
    HypothesisClass out;
    out.x_labels = h.x_labels;
    for (std::size_t m = 0; m < mus.size(); ++m) {
        mus[m].validate(h.num_y());
        out.y_labels.push_back("mu[" + std::to_string(m) + "]");
    }
    out.values.assign(h.num_x(), std::vector<Rat>(mus.size(), Rat(0)));
    for (std::size_t i = 0; i < h.num_x(); ++i)
        for (std::size_t m = 0; m < mus.size(); ++m) {
            Rat acc(0);
            for (std::size_t k = 0; k < mus[m].support.size(); ++k)
                acc += mus[m].weights[k] * h.values[i][mus[m].support[k]];
            out.values[i][m] = acc;
        }
    return out;
}

// Distribution class of the dual: parameters are distributions nu over X.
inline HypothesisClass dual_distribution_class(const HypothesisClass& h,
                                               const std::vector<Distribution>& nus) {
    return distribution_class(dual(h), nus);
}

// Weighted average of the family: value(x,y) = sum_w mu(w) * H_w(x,y).
inline HypothesisClass expectation_class(const MeasurableFamily& f) {
    f.validate();
    HypothesisClass out = f.classes.front();
    for (std::size_t i = 0; i < out.num_x(); ++i)
        for (std::size_t j = 0; j < out.num_y(); ++j) {
            Rat acc(0);
            for (std::size_t w = 0; w < f.classes.size(); ++w)
                acc += f.omega_weights[w] * f.classes[w].values[i][j];
            out.values[i][j] = acc;
        }
    return out;
}

// Composed averaging class on the dual view: range points are the parameters
// of h, each m-tuple over X indexes a hypothesis c -> (1/m) sum_i h(x_i, c).
inline HypothesisClass avg_class(const HypothesisClass& h,
                                 const std::vector<std::vector<std::size_t>>& tuples) {
    require(!tuples.empty(), "DimensionMismatch", "need at least one tuple");
    HypothesisClass out;
    out.x_labels = h.y_labels;
    for (const auto& t : tuples) {
        require(!t.empty(), "EmptyTuple", "tuples must have length >= 1");
        std::string label = "avg(";
        for (std::size_t k = 0; k < t.size(); ++k) {
            require(t[k] < h.num_x(), "SupportOutOfRange", "tuple entry out of range");
            if (k) label += ",";
            label += h.x_labels[t[k]];
        }
        label += ")";
        out.y_labels.push_back(label);
    }
    out.values.assign(h.num_y(), std::vector<Rat>(tuples.size(), Rat(0)));
    for (std::size_t c = 0; c < h.num_y(); ++c)
        for (std::size_t t = 0; t < tuples.size(); ++t) {
            Rat acc(0);
            for (std::size_t xi : tuples[t]) acc += h.values[xi][c];
            out.values[c][t] = acc / Rat(static_cast<long long>(tuples[t].size()));
        }
    return out;
}

// Two-choice mixtures: parameter (lambda, y, y'), value = lambda*h_y + (1-lambda)*h_y'.
inline HypothesisClass two_choice_class(const HypothesisClass& h,
                                        const std::vector<Rat>& lambdas,
                                        const std::vector<std::pair<std::size_t, std::size_t>>& pairs) {
    require(lambdas.size() == pairs.size() && !pairs.empty(), "DimensionMismatch",
            "lambda and pair lists must align and be nonempty");
    HypothesisClass out;
    out.x_labels = h.x_labels;
    for (std::size_t m = 0; m < pairs.size(); ++m) {
        require(lambdas[m].in_unit_interval(), "LambdaOutOfRange",
                "lambda " + lambdas[m].str() + " outside [0,1]");
        require(pairs[m].first < h.num_y() && pairs[m].second < h.num_y(),
                "SupportOutOfRange", "pair index out of range");
        out.y_labels.push_back("mix(" + lambdas[m].str() + ";" + h.y_labels[pairs[m].first] +
                               ";" + h.y_labels[pairs[m].second] + ")");
    }
    out.values.assign(h.num_x(), std::vector<Rat>(pairs.size(), Rat(0)));
    for (std::size_t i = 0; i < h.num_x(); ++i)
        for (std::size_t m = 0; m < pairs.size(); ++m)
            out.values[i][m] = lambdas[m] * h.values[i][pairs[m].first] +
                               (Rat(1) - lambdas[m]) * h.values[i][pairs[m].second];
    return out;
}

} // namespace dimlab
