#pragma once
#include <string>
#include <vector>

#include "dimlab/class_core.hpp"

namespace dimlab {

// Strictly decreasing positive scale sequence, each entry <= 1.
struct GammaSequence {
    std::vector<Rat> gammas;

    void validate() const {
        require(!gammas.empty(), "DimensionMismatch", "gamma sequence must be nonempty");
        for (std::size_t i = 0; i < gammas.size(); ++i) {
            require(gammas[i] > Rat(0) && gammas[i] <= Rat(1), "ValueOutOfRange",
                    "gamma entries must lie in (0,1]");
            if (i) require(gammas[i] < gammas[i - 1], "ValueOutOfRange",
                           "gamma sequence must be strictly decreasing");
        }
    }
};

// X = {1..n}, Y = all 2^n subsets, bit values. Canonical maximal-shattering fixture.
inline HypothesisClass powerset_class(std::size_t n) {
    require(n >= 1 && n <= 20, "TooLarge", "powerset_class requires 1 <= n <= 20");
    HypothesisClass h;
    for (std::size_t i = 1; i <= n; ++i) h.x_labels.push_back("x" + std::to_string(i));
    std::size_t count = std::size_t(1) << n;
    for (std::size_t s = 0; s < count; ++s) {
        std::string label = "{";
        bool first = true;
        for (std::size_t i = 0; i < n; ++i)
            if (s & (std::size_t(1) << i)) {
                if (!first) label += ",";
                label += std::to_string(i + 1);
                first = false;
            }
        label += "}";
        h.y_labels.push_back(label);
    }
    h.values.assign(n, std::vector<Rat>(count, Rat(0)));
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t s = 0; s < count; ++s)
            if (s & (std::size_t(1) << i)) h.values[i][s] = Rat(1);
    h.validate();
    return h;
}

// X = {1..n}, Y = {1..n+1}, c_j = {i : i < j}.
inline HypothesisClass threshold_class(std::size_t n) {
    require(n >= 1, "ValueOutOfRange", "threshold_class requires n >= 1");
    HypothesisClass h;
    for (std::size_t i = 1; i <= n; ++i) h.x_labels.push_back("x" + std::to_string(i));
    for (std::size_t j = 1; j <= n + 1; ++j) h.y_labels.push_back("c" + std::to_string(j));
    h.values.assign(n, std::vector<Rat>(n + 1, Rat(0)));
    for (std::size_t i = 1; i <= n; ++i)
        for (std::size_t j = 1; j <= n + 1; ++j)
            if (i < j) h.values[i - 1][j - 1] = Rat(1);
    h.validate();
    return h;
}

// All intervals [a,b] within {1..n}.
inline HypothesisClass interval_class(std::size_t n) {
    require(n >= 1, "ValueOutOfRange", "interval_class requires n >= 1");
    require(n * (n + 1) / 2 <= 10000, "TooLarge", "too many intervals");
    HypothesisClass h;
    for (std::size_t i = 1; i <= n; ++i) h.x_labels.push_back("x" + std::to_string(i));
    for (std::size_t a = 1; a <= n; ++a)
        for (std::size_t b = a; b <= n; ++b)
            h.y_labels.push_back("[" + std::to_string(a) + "," + std::to_string(b) + "]");
    h.values.assign(n, std::vector<Rat>(h.y_labels.size(), Rat(0)));
    std::size_t j = 0;
    for (std::size_t a = 1; a <= n; ++a)
        for (std::size_t b = a; b <= n; ++b, ++j)
            for (std::size_t i = a; i <= b; ++i) h.values[i - 1][j] = Rat(1);
    h.validate();
    return h;
}

// All corner 4-tuples on a w x h grid. Tuples with x1 > x2 or y1 > y2 are the
// degenerate empty rectangle.
inline HypothesisClass rectangle_class(std::size_t w, std::size_t hgt) {
    require(w >= 1 && hgt >= 1, "ValueOutOfRange", "grid sizes must be >= 1");
    require(w * w * hgt * hgt <= 10000, "TooLarge", "too many rectangles");
    HypothesisClass h;
    for (std::size_t px = 1; px <= w; ++px)
        for (std::size_t py = 1; py <= hgt; ++py)
            h.x_labels.push_back("(" + std::to_string(px) + "," + std::to_string(py) + ")");
    for (std::size_t x1 = 1; x1 <= w; ++x1)
        for (std::size_t y1 = 1; y1 <= hgt; ++y1)
            for (std::size_t x2 = 1; x2 <= w; ++x2)
                for (std::size_t y2 = 1; y2 <= hgt; ++y2)
                    h.y_labels.push_back("r(" + std::to_string(x1) + "," + std::to_string(y1) +
                                         "," + std::to_string(x2) + "," + std::to_string(y2) + ")");
    h.values.assign(h.x_labels.size(), std::vector<Rat>(h.y_labels.size(), Rat(0)));
    std::size_t j = 0;
    for (std::size_t x1 = 1; x1 <= w; ++x1)
        for (std::size_t y1 = 1; y1 <= hgt; ++y1)
            for (std::size_t x2 = 1; x2 <= w; ++x2)
                for (std::size_t y2 = 1; y2 <= hgt; ++y2, ++j) {
                    std::size_t i = 0;
                    for (std::size_t px = 1; px <= w; ++px)
                        for (std::size_t py = 1; py <= hgt; ++py, ++i)
                            if (x1 <= px && px <= x2 && y1 <= py && py <= y2)
                                h.values[i][j] = Rat(1);
                }
    h.validate();
    return h;
}

// x belongs to c_{(y1,y2)} iff x is even and y1 <= x <= y2.
inline HypothesisClass even_interval_class(std::size_t n) {
    require(n >= 2, "ValueOutOfRange", "even_interval_class requires n >= 2");
    HypothesisClass h;
    for (std::size_t i = 1; i <= n; ++i) h.x_labels.push_back("x" + std::to_string(i));
    for (std::size_t y1 = 1; y1 <= n; ++y1)
        for (std::size_t y2 = y1; y2 <= n; ++y2)
            h.y_labels.push_back("(" + std::to_string(y1) + "," + std::to_string(y2) + ")");
    h.values.assign(n, std::vector<Rat>(h.y_labels.size(), Rat(0)));
    std::size_t j = 0;
    for (std::size_t y1 = 1; y1 <= n; ++y1)
        for (std::size_t y2 = y1; y2 <= n; ++y2, ++j)
            for (std::size_t x = y1; x <= y2; ++x)
                if (x % 2 == 0) h.values[x - 1][j] = Rat(1);
    h.validate();
    return h;
}

// Rational functions P/Q with coefficients from a finite grid, evaluated on a
// finite x grid; tuples where Q vanishes somewhere or P/Q leaves [0,1] are dropped.
inline HypothesisClass rational_fn_class(const std::vector<Rat>& coeff_grid,
                                         const std::vector<Rat>& x_grid,
                                         std::size_t deg_p, std::size_t deg_q) {
    require(deg_p <= 5 && deg_q <= 5, "ValueOutOfRange", "degrees must be <= 5");
    require(!coeff_grid.empty() && !x_grid.empty(), "DimensionMismatch",
            "grids must be nonempty");
    std::size_t n_coeff = deg_p + deg_q + 2;
    double count = 1;
    for (std::size_t k = 0; k < n_coeff; ++k) {
        count *= static_cast<double>(coeff_grid.size());
        require(count <= 10000, "TooLarge", "coefficient tuple count exceeds 10^4");
    }

    auto poly_eval = [](const std::vector<Rat>& coeffs, const Rat& x) {
        Rat acc(0);
        for (std::size_t k = coeffs.size(); k-- > 0;) acc = acc * x + coeffs[k];
        return acc;
    };

    HypothesisClass h;
    for (std::size_t i = 0; i < x_grid.size(); ++i) h.x_labels.push_back("x=" + x_grid[i].str());

    std::vector<std::size_t> idx(n_coeff, 0);
    std::vector<std::vector<Rat>> cols;
    while (true) {
        std::vector<Rat> p_coeffs, q_coeffs;
        for (std::size_t k = 0; k <= deg_p; ++k) p_coeffs.push_back(coeff_grid[idx[k]]);
        for (std::size_t k = 0; k <= deg_q; ++k) q_coeffs.push_back(coeff_grid[idx[deg_p + 1 + k]]);

        bool ok = true;
        std::vector<Rat> col;
        for (const Rat& x : x_grid) {
            Rat q = poly_eval(q_coeffs, x);
            if (q == Rat(0)) { ok = false; break; }
            Rat v = poly_eval(p_coeffs, x) / q;
            if (!v.in_unit_interval()) { ok = false; break; }
            col.push_back(v);
        }
        if (ok) {
            std::string label = "p=[";
            for (std::size_t k = 0; k < p_coeffs.size(); ++k)
                label += (k ? "," : "") + p_coeffs[k].str();
            label += "];q=[";
            for (std::size_t k = 0; k < q_coeffs.size(); ++k)
                label += (k ? "," : "") + q_coeffs[k].str();
            label += "]";
            h.y_labels.push_back(label);
            cols.push_back(std::move(col));
        }

        std::size_t k = 0;
        while (k < n_coeff && ++idx[k] == coeff_grid.size()) idx[k++] = 0;
        if (k == n_coeff) break;
    }
    require(!cols.empty(), "EmptyClass", "no coefficient tuple survives the filters");

    h.values.assign(x_grid.size(), std::vector<Rat>(cols.size(), Rat(0)));
    for (std::size_t j = 0; j < cols.size(); ++j)
        for (std::size_t i = 0; i < x_grid.size(); ++i) h.values[i][j] = cols[j][i];
    h.validate();
    return h;
}

// One representative point per partition piece; value(x_i, b) = (3/4) b_i + c_b
// with the exact tail c_b = (1/8) sum_j b_j 2^{-j}.
inline HypothesisClass h0_class(std::size_t k) {
    require(k >= 1 && k <= 20, "TooLarge", "h0_class requires 1 <= k <= 20");
    HypothesisClass h;
    for (std::size_t i = 0; i < k; ++i) h.x_labels.push_back("x" + std::to_string(i));
    std::size_t count = std::size_t(1) << k;
    for (std::size_t b = 0; b < count; ++b) {
        std::string label = "b";
        for (std::size_t i = 0; i < k; ++i) label += (b & (std::size_t(1) << i)) ? "1" : "0";
        h.y_labels.push_back(label);
    }
    h.values.assign(k, std::vector<Rat>(count, Rat(0)));
    // c_b has exact denominator 2^{k+2}
    BigInt denom = BigInt(1) << (k + 2);
    for (std::size_t b = 0; b < count; ++b) {
        BigInt tail_num = 0;  // c_b = tail_num / 2^{k+2}
        for (std::size_t j = 0; j < k; ++j)
            if (b & (std::size_t(1) << j)) tail_num += BigInt(1) << (k - 1 - j);
        Rat c_b = Rat::from_big(tail_num, denom);
        for (std::size_t i = 0; i < k; ++i) {
            Rat bit = (b & (std::size_t(1) << i)) ? Rat(1) : Rat(0);
            h.values[i][b] = Rat(3, 4) * bit + c_b;
        }
    }
    h.validate();
    return h;
}

// Depth-d truncation of the tree class: X = strings of length < d, parameters
// are strings of length d, value(x,b) = b_{|x|} * gamma_{|x|} when x prefixes b.
inline HypothesisClass tree_class(const GammaSequence& gammas, std::size_t d) {
    gammas.validate();
    require(d >= 1 && d <= gammas.gammas.size(), "ValueOutOfRange",
            "depth must satisfy 1 <= d <= len(gammas)");
    require((std::size_t(1) << d) <= (std::size_t(1) << 12), "TooLarge",
            "2^d exceeds the 2^12 cap");

    auto bits_label = [](std::size_t bits, std::size_t len) {
        std::string s = "s";
        for (std::size_t t = 0; t < len; ++t) s += (bits & (std::size_t(1) << t)) ? "1" : "0";
        return s;
    };

    HypothesisClass h;
    std::vector<std::pair<std::size_t, std::size_t>> xs;  // (len, bits)
    for (std::size_t len = 0; len < d; ++len)
        for (std::size_t bits = 0; bits < (std::size_t(1) << len); ++bits) {
            xs.emplace_back(len, bits);
            h.x_labels.push_back(bits_label(bits, len));
        }
    std::size_t branches = std::size_t(1) << d;
    for (std::size_t b = 0; b < branches; ++b) h.y_labels.push_back(bits_label(b, d));

    h.values.assign(xs.size(), std::vector<Rat>(branches, Rat(0)));
    for (std::size_t i = 0; i < xs.size(); ++i) {
        auto [len, bits] = xs[i];
        std::size_t mask = (len == 0) ? 0 : ((std::size_t(1) << len) - 1);
        for (std::size_t b = 0; b < branches; ++b) {
            if ((b & mask) != bits) continue;  // x not a prefix of b
            bool next_bit = (b >> len) & 1;
            if (next_bit) h.values[i][b] = gammas.gammas[len];
        }
    }
    h.validate();
    return h;
}

} // namespace dimlab
