#pragma once
#include <cstdint>
#include <vector>

#include "dimlab/class_core.hpp"
#include "dimlab/rng.hpp"
#include "dimlab/types.hpp"

namespace dimlab {

struct SamplePoint {
    std::size_t x = 0;
    Rat y;
};

struct FiniteDistributionP {
    std::vector<std::pair<SamplePoint, Rat>> atoms;

    void validate(std::size_t num_x) const {
        require(!atoms.empty(), "BadRange", "distribution must have atoms");
        Rat total(0);
        for (const auto& [z, w] : atoms) {
            require(z.x < num_x, "IndexError", "atom x index out of range");
            require(z.y.in_unit_interval(), "IndexError", "atom label outside [0,1]");
            require(w > Rat(0), "BadRange", "atom weights must be positive");
            total += w;
        }
        require(total == Rat(1), "BadRange", "atom weights must sum to 1");
    }
};

// squared loss, exact
inline Rat exp_loss(const HypothesisClass& h, std::size_t hypothesis,
                    const FiniteDistributionP& p) {
    require(hypothesis < h.num_y(), "IndexError", "hypothesis index out of range");
    p.validate(h.num_x());
    Rat acc(0);
    for (const auto& [z, w] : p.atoms) {
        Rat diff = h.values[z.x][hypothesis] - z.y;
        acc += w * diff * diff;
    }
    return acc;
}

inline std::pair<Rat, std::size_t> best_exp_loss(const HypothesisClass& h,
                                                 const FiniteDistributionP& p) {
    Rat best(0);
    std::size_t arg = 0;
    bool first = true;
    for (std::size_t c = 0; c < h.num_y(); ++c) {
        Rat v = exp_loss(h, c, p);
        if (first || v < best) { best = v; arg = c; first = false; }
    }
    return {best, arg};
}

// empirical squared-loss minimizer, lowest-index tie-break
inline std::size_t erm(const HypothesisClass& h, const std::vector<SamplePoint>& samples) {
    require(!samples.empty(), "EmptySample", "erm needs at least one sample");
    for (const auto& z : samples)
        require(z.x < h.num_x() && z.y.in_unit_interval(), "IndexError", "bad sample");
    Rat best(0);
    std::size_t arg = 0;
    bool first = true;
    for (std::size_t c = 0; c < h.num_y(); ++c) {
        Rat acc(0);
        for (const auto& z : samples) {
            Rat diff = h.values[z.x][c] - z.y;
            acc += diff * diff;
        }
        if (first || acc < best) { best = acc; arg = c; first = false; }
    }
    return arg;
}

namespace detail {

// cumulative double weights for seeded sampling; exactness is not needed for
// the sampling step, only reproducibility
struct Sampler {
    std::vector<double> cdf;
    explicit Sampler(const std::vector<Rat>& weights) {
        double acc = 0;
        for (const Rat& w : weights) {
            acc += w.to_double();
            cdf.push_back(acc);
        }
        cdf.back() = 1.0;
    }
    std::size_t draw(SplitMix64& rng) const {
        double u = rng.next_double();
        for (std::size_t i = 0; i < cdf.size(); ++i)
            if (u < cdf[i]) return i;
        return cdf.size() - 1;
    }
};

} // namespace detail

// Monte-Carlo fraction of m-samples on which some hypothesis deviates from
// its mean by more than eps; the deviations themselves are exact.
inline double gc_estimate(const HypothesisClass& h, const Distribution& d_over_x, std::size_t m,
                          std::size_t trials, const Rat& eps, std::uint64_t seed) {
    require(m >= 1 && trials >= 1, "BadRange", "need m, trials >= 1");
    require(eps > Rat(0), "BadRange", "need eps > 0");
    d_over_x.validate(h.num_x());

    std::vector<Rat> means(h.num_y(), Rat(0));
    for (std::size_t c = 0; c < h.num_y(); ++c)
        for (std::size_t k = 0; k < d_over_x.support.size(); ++k)
            means[c] += d_over_x.weights[k] * h.values[d_over_x.support[k]][c];

    detail::Sampler sampler(d_over_x.weights);
    std::size_t bad = 0;
    for (std::size_t t = 0; t < trials; ++t) {
        SplitMix64 rng = SplitMix64::for_trial(seed, t);
        std::vector<std::size_t> counts(d_over_x.support.size(), 0);
        for (std::size_t i = 0; i < m; ++i) ++counts[sampler.draw(rng)];
        bool deviates = false;
        for (std::size_t c = 0; c < h.num_y() && !deviates; ++c) {
            Rat emp(0);
            for (std::size_t k = 0; k < d_over_x.support.size(); ++k)
                emp += Rat(static_cast<long long>(counts[k])) *
                       h.values[d_over_x.support[k]][c];
            emp = emp / Rat(static_cast<long long>(m));
            if ((emp - means[c]).abs() > eps) deviates = true;
        }
        if (deviates) ++bad;
    }
    return static_cast<double>(bad) / static_cast<double>(trials);
}

// fraction of trials where ERM on n i.i.d. samples meets the agnostic PAC
// inequality ExpLoss(erm) <= BestExpLoss + eps, expectations exact
inline double pac_trial(const HypothesisClass& h, const FiniteDistributionP& p, std::size_t n,
                        std::size_t trials, const Rat& eps, std::uint64_t seed) {
    require(n >= 1 && trials >= 1, "BadRange", "need n, trials >= 1");
    require(eps > Rat(0), "BadRange", "need eps > 0");
    p.validate(h.num_x());
    std::vector<Rat> weights;
    for (const auto& [z, w] : p.atoms) weights.push_back(w);
    detail::Sampler sampler(weights);
    Rat best = best_exp_loss(h, p).first;

    std::size_t good = 0;
    for (std::size_t t = 0; t < trials; ++t) {
        SplitMix64 rng = SplitMix64::for_trial(seed, t);
        std::vector<SamplePoint> samples;
        samples.reserve(n);
        for (std::size_t i = 0; i < n; ++i) samples.push_back(p.atoms[sampler.draw(rng)].first);
        std::size_t chosen = erm(h, samples);
        if (exp_loss(h, chosen, p) <= best + eps) ++good;
    }
    return static_cast<double>(good) / static_cast<double>(trials);
}

struct SelectivityReport {
    double mean_excess = 0.0;
    std::vector<Rat> excesses;  // per trial, exact
    std::size_t trials = 0;
    std::size_t n = 0;
    std::uint64_t seed = 0;
};

// Selectivity learning: supervision pairs (range, hidden mass of the range),
// ERM over the dual distribution class spanned by the candidate measures.
inline SelectivityReport selectivity_demo(const HypothesisClass& base, const Distribution& hidden,
                                          const std::vector<Distribution>& candidates,
                                          std::size_t n, std::size_t trials, std::uint64_t seed) {
    require(!candidates.empty(), "BadRange", "need at least one candidate");
    require(n >= 1 && trials >= 1, "BadRange", "need n, trials >= 1");
    hidden.validate(base.num_x());
    HypothesisClass ddc = dual_distribution_class(base, candidates);

    // hidden labels per range: mass of the range under the hidden measure
    std::vector<Rat> hidden_label(base.num_y(), Rat(0));
    for (std::size_t c = 0; c < base.num_y(); ++c)
        for (std::size_t k = 0; k < hidden.support.size(); ++k)
            hidden_label[c] += hidden.weights[k] * base.values[hidden.support[k]][c];

    // population distribution: uniform over ranges with the hidden labels
    FiniteDistributionP pop;
    Rat w = Rat(1) / Rat(static_cast<long long>(base.num_y()));
    for (std::size_t c = 0; c < base.num_y(); ++c)
        pop.atoms.push_back({SamplePoint{c, hidden_label[c]}, w});
    Rat best = best_exp_loss(ddc, pop).first;

    SelectivityReport rep;
    rep.trials = trials;
    rep.n = n;
    rep.seed = seed;
    Rat total(0);
    for (std::size_t t = 0; t < trials; ++t) {
        SplitMix64 rng = SplitMix64::for_trial(seed, t);
        std::vector<SamplePoint> samples;
        samples.reserve(n);
        for (std::size_t i = 0; i < n; ++i) {
            std::size_t c = static_cast<std::size_t>(rng.next_below(base.num_y()));
            samples.push_back(SamplePoint{c, hidden_label[c]});
        }
        std::size_t chosen = erm(ddc, samples);
        Rat excess = exp_loss(ddc, chosen, pop) - best;
        rep.excesses.push_back(excess);
        total += excess;
    }
    rep.mean_excess = (total / Rat(static_cast<long long>(trials))).to_double();
    return rep;
}

} // namespace dimlab
