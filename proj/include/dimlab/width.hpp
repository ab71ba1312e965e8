#pragma once
#include <algorithm>
#include <cmath>
#include <cstdint>
#include <vector>

#include "dimlab/rng.hpp"
#include "dimlab/tree.hpp"
#include "dimlab/types.hpp"

namespace dimlab {

struct PointCloud {
    std::size_t dim = 0;
    std::vector<std::vector<Rat>> points;

    void validate() const {
        require(!points.empty(), "DimMismatch", "point cloud must be nonempty");
        for (const auto& p : points)
            require(p.size() == dim, "DimMismatch", "point dimension mismatch");
    }

    static PointCloud from_class(const HypothesisClass& h, const std::vector<std::size_t>& xbar) {
        PointCloud a;
        a.dim = xbar.size();
        for (std::size_t i : xbar)
            require(i < h.num_x(), "DimMismatch", "tuple index out of range");
        a.points.assign(h.num_y(), std::vector<Rat>(xbar.size()));
        for (std::size_t y = 0; y < h.num_y(); ++y)
            for (std::size_t k = 0; k < xbar.size(); ++k)
                a.points[y][k] = h.values[xbar[k]][y];
        return a;
    }
};

// w(A, b) = max over points of the dot product (sup attained, finite A).
inline Rat width(const PointCloud& a, const std::vector<Rat>& b) {
    a.validate();
    require(b.size() == a.dim, "DimMismatch", "direction dimension mismatch");
    Rat best(0);
    bool first = true;
    for (const auto& p : a.points) {
        Rat dot(0);
        for (std::size_t k = 0; k < a.dim; ++k) dot += p[k] * b[k];
        if (first || dot > best) { best = dot; first = false; }
    }
    return best;
}

// Exact average of width(A, b) over all 2^n sign vectors. Gray-code order so
// each step updates the dot products at a single coordinate.
inline Rat rademacher_mean_width(const PointCloud& a) {
    a.validate();
    require(a.dim <= 20, "TooLarge", "rademacher_mean_width supports n <= 20");
    std::size_t n = a.dim, m = a.points.size();
    std::vector<Rat> dots(m);  // current dot products, start at b = (-1,...,-1)
    for (std::size_t p = 0; p < m; ++p) {
        Rat d(0);
        for (std::size_t k = 0; k < n; ++k) d -= a.points[p][k];
        dots[p] = d;
    }
    std::vector<bool> sign_pos(n, false);
    Rat total(0);
    std::size_t count = std::size_t(1) << n;
    for (std::size_t g = 0;; ++g) {
        Rat best = dots[0];
        for (std::size_t p = 1; p < m; ++p)
            if (dots[p] > best) best = dots[p];
        total += best;
        if (g + 1 == count) break;
        std::size_t bit = static_cast<std::size_t>(__builtin_ctzll(g + 1));  // Gray code flip
        Rat delta = sign_pos[bit] ? Rat(-2) : Rat(2);
        sign_pos[bit] = !sign_pos[bit];
        for (std::size_t p = 0; p < m; ++p) dots[p] += delta * a.points[p][bit];
    }
    return total / Rat(static_cast<long long>(count));
}

struct ClassWidthResult {
    Rat value;
    std::vector<std::size_t> xbar;  // achieving tuple (or best sampled)
    bool exact = true;              // false = certified lower bound from sampling
};

// R_H(n) = sup over n-tuples from X of the Rademacher mean width of H(xbar, Y).
inline ClassWidthResult class_rademacher(const HypothesisClass& h, std::size_t n,
                                         bool exhaustive = true, std::size_t trials = 0,
                                         std::uint64_t seed = 0) {
    require(n >= 1, "BadRange", "need n >= 1");
    std::size_t nx = h.num_x();
    ClassWidthResult res;
    res.exact = exhaustive;
    if (exhaustive) {
        double tuples = std::pow(static_cast<double>(nx), static_cast<double>(n));
        require(tuples <= 1e6, "TooLarge", "exhaustive mode requires |X|^n <= 10^6");
        std::vector<std::size_t> xbar(n, 0);
        bool first = true;
        while (true) {
            Rat v = rademacher_mean_width(PointCloud::from_class(h, xbar));
            if (first || v > res.value) { res.value = v; res.xbar = xbar; first = false; }
            std::size_t k = 0;
            while (k < n && ++xbar[k] == nx) xbar[k++] = 0;
            if (k == n) break;
        }
    } else {
        require(trials >= 1, "BadRange", "sampled mode needs trials >= 1");
        SplitMix64 rng(seed);
        bool first = true;
        for (std::size_t t = 0; t < trials; ++t) {
            std::vector<std::size_t> xbar(n);
            for (auto& x : xbar) x = static_cast<std::size_t>(rng.next_below(nx));
            Rat v = rademacher_mean_width(PointCloud::from_class(h, xbar));
            if (first || v > res.value) { res.value = v; res.xbar = xbar; first = false; }
        }
    }
    return res;
}

// Sequential Rademacher mean width: sup over X-valued trees of the average
// width against the 2^n path vectors. The path vector of a sign sequence s
// places s_t at the coordinate indexed by the prefix (s_1..s_{t-1}).
inline ClassWidthResult seq_class_rademacher(const HypothesisClass& h, std::size_t n,
                                             bool exhaustive = true, std::size_t trials = 0,
                                             std::uint64_t seed = 0) {
    require(n >= 1, "BadRange", "need n >= 1");
    std::size_t nx = h.num_x(), ny = h.num_y();
    std::size_t nodes = tree_node_count(n);
    std::size_t paths = std::size_t(1) << n;

    auto tree_value = [&](const std::vector<std::size_t>& tree) {
        Rat total(0);
        for (std::size_t sbits = 0; sbits < paths; ++sbits) {
            Rat best(0);
            bool first = true;
            for (std::size_t y = 0; y < ny; ++y) {
                Rat dot(0);
                std::size_t node = 0;
                for (std::size_t t = 0; t < n; ++t) {
                    const Rat& v = h.values[tree[node]][y];
                    if ((sbits >> t) & 1u) dot += v; else dot -= v;
                    node = 2 * node + 1 + ((sbits >> t) & 1u);
                }
                if (first || dot > best) { best = dot; first = false; }
            }
            total += best;
        }
        return total / Rat(static_cast<long long>(paths));
    };

    ClassWidthResult res;
    res.exact = exhaustive;
    if (exhaustive) {
        double combos = std::pow(static_cast<double>(nx), static_cast<double>(nodes)) *
                        static_cast<double>(paths);
        require(combos <= 1e6, "TooLarge",
                "exhaustive mode requires |X|^(2^n - 1) * 2^n <= 10^6");
        std::vector<std::size_t> tree(nodes, 0);
        bool first = true;
        while (true) {
            Rat v = tree_value(tree);
            if (first || v > res.value) { res.value = v; res.xbar = tree; first = false; }
            std::size_t k = 0;
            while (k < nodes && ++tree[k] == nx) tree[k++] = 0;
            if (k == nodes) break;
        }
    } else {
        require(trials >= 1, "BadRange", "sampled mode needs trials >= 1");
        SplitMix64 rng(seed);
        bool first = true;
        for (std::size_t t = 0; t < trials; ++t) {
            std::vector<std::size_t> tree(nodes);
            for (auto& x : tree) x = static_cast<std::size_t>(rng.next_below(nx));
            Rat v = tree_value(tree);
            if (first || v > res.value) { res.value = v; res.xbar = tree; first = false; }
        }
    }
    return res;
}

struct GaussianWidthResult {
    double estimate = 0.0;
    double std_error = 0.0;
    std::size_t trials = 0;
    std::uint64_t seed = 0;
};

// Monte-Carlo Gaussian mean width; the one floating-point computation here.
inline GaussianWidthResult gaussian_mean_width(const PointCloud& a, std::size_t trials,
                                               std::uint64_t seed) {
    a.validate();
    require(trials >= 1, "BadRange", "need trials >= 1");
    std::vector<std::vector<double>> pts(a.points.size(), std::vector<double>(a.dim));
    for (std::size_t p = 0; p < a.points.size(); ++p)
        for (std::size_t k = 0; k < a.dim; ++k) pts[p][k] = a.points[p][k].to_double();
    SplitMix64 rng(seed);
    double sum = 0.0, sumsq = 0.0;
    std::vector<double> g(a.dim);
    for (std::size_t t = 0; t < trials; ++t) {
        for (auto& v : g) v = rng.next_gaussian();
        double best = -1e300;
        for (const auto& p : pts) {
            double dot = 0.0;
            for (std::size_t k = 0; k < a.dim; ++k) dot += p[k] * g[k];
            best = std::max(best, dot);
        }
        sum += best;
        sumsq += best * best;
    }
    GaussianWidthResult res;
    res.trials = trials;
    res.seed = seed;
    res.estimate = sum / static_cast<double>(trials);
    double var = std::max(0.0, sumsq / static_cast<double>(trials) - res.estimate * res.estimate);
    res.std_error = std::sqrt(var / static_cast<double>(trials));
    return res;
}

enum class Norm { L2, Linf };

struct CoveringResult {
    std::size_t count = 0;
    bool exact = true;
    std::vector<std::size_t> centers;
};

// Minimal number of closed gamma-balls centered at cloud points covering the
// cloud. Exact branch-and-bound set cover for |A| <= 20, greedy upper bound
// beyond (flagged exact=false).
inline CoveringResult covering_number(const PointCloud& a, const Rat& gamma, Norm norm) {
    a.validate();
    require(gamma > Rat(0), "BadRange", "need gamma > 0");
    std::size_t m = a.points.size();
    Rat g2 = gamma * gamma;
    auto covers = [&](std::size_t c, std::size_t p) {
        if (norm == Norm::Linf) {
            for (std::size_t k = 0; k < a.dim; ++k)
                if ((a.points[c][k] - a.points[p][k]).abs() > gamma) return false;
            return true;
        }
        Rat d2(0);
        for (std::size_t k = 0; k < a.dim; ++k) {
            Rat diff = a.points[c][k] - a.points[p][k];
            d2 += diff * diff;
        }
        return d2 <= g2;
    };

    std::vector<std::uint64_t> ball(m, 0);
    for (std::size_t c = 0; c < m; ++c)
        for (std::size_t p = 0; p < m; ++p)
            if (covers(c, p)) ball[c] |= (std::uint64_t(1) << p);
    std::uint64_t all = (m == 64) ? ~0ULL : ((std::uint64_t(1) << m) - 1);

    // greedy first: upper bound and the answer for oversized inputs
    CoveringResult greedy;
    {
        std::uint64_t uncovered = all;
        while (uncovered) {
            std::size_t best_c = 0, best_gain = 0;
            for (std::size_t c = 0; c < m; ++c) {
                std::size_t gain = static_cast<std::size_t>(__builtin_popcountll(ball[c] & uncovered));
                if (gain > best_gain) { best_gain = gain; best_c = c; }
            }
            greedy.centers.push_back(best_c);
            uncovered &= ~ball[best_c];
        }
        greedy.count = greedy.centers.size();
    }
    if (m > 20) {
        greedy.exact = false;
        return greedy;
    }

    // branch and bound on the lowest uncovered point
    std::vector<std::size_t> chosen, best = greedy.centers;
    auto rec = [&](auto&& self, std::uint64_t uncovered) -> void {
        if (!uncovered) {
            if (chosen.size() < best.size()) best = chosen;
            return;
        }
        if (chosen.size() + 1 >= best.size()) return;  // even one more cannot improve
        std::size_t p = static_cast<std::size_t>(__builtin_ctzll(uncovered));
        for (std::size_t c = 0; c < m; ++c) {
            if (!(ball[c] & (std::uint64_t(1) << p))) continue;
            chosen.push_back(c);
            self(self, uncovered & ~ball[c]);
            chosen.pop_back();
        }
    };
    rec(rec, all);
    CoveringResult res;
    res.count = best.size();
    res.centers = best;
    res.exact = true;
    return res;
}

// sup over n-tuples of the covering number of H(xbar, Y)
inline std::size_t class_covering_number(const HypothesisClass& h, const Rat& gamma,
                                         std::size_t n, Norm norm) {
    double tuples = std::pow(static_cast<double>(h.num_x()), static_cast<double>(n));
    require(tuples <= 1e6, "TooLarge", "class covering requires |X|^n <= 10^6");
    std::vector<std::size_t> xbar(n, 0);
    std::size_t best = 0;
    while (true) {
        best = std::max(best, covering_number(PointCloud::from_class(h, xbar), gamma, norm).count);
        std::size_t k = 0;
        while (k < n && ++xbar[k] == h.num_x()) xbar[k++] = 0;
        if (k == n) break;
    }
    return best;
}

} // namespace dimlab
