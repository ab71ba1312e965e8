#pragma once
#include <algorithm>
#include <cmath>
#include <map>
#include <string>
#include <vector>

#include "dimlab/errors.hpp"

namespace dimlab {

// All bounds are evaluated in floating point, carry an explicit constant C
// (default 1, the sources never fix one), use natural logs, and refuse
// parameter ranges where a log argument <= 1 would make the bound vacuous.
struct BoundReport {
    std::string name;
    std::map<std::string, double> inputs;
    double value = 0.0;
    std::string formula;
};

namespace detail {
inline void check_eps_delta(double eps, double delta) {
    require(eps > 0 && eps < 1, "BadRange", "need 0 < eps < 1");
    require(delta > 0 && delta <= 1, "BadRange", "need 0 < delta <= 1");
}
} // namespace detail

// C * (1/eps^2) (dim * ln^2(1/eps) + ln(1/delta)); dim is the fat-shattering
// dimension evaluated at eps/9.
inline double fat_pac_bound(double dim_at_eps_over_9, double eps, double delta, double C = 1.0) {
    detail::check_eps_delta(eps, delta);
    require(dim_at_eps_over_9 >= 0, "BadRange", "need dim >= 0");
    require(C > 0, "BadRange", "need C > 0");
    double le = std::log(1.0 / eps);
    return C * (1.0 / (eps * eps)) * (dim_at_eps_over_9 * le * le + std::log(1.0 / delta));
}

// real: C (d/eps^4 ln^2(d/eps) + 1/eps^2 ln(1/delta));
// concept: C (1/eps^2)(d ln(d/eps) + ln(1/delta)).
inline double expectation_pac_bound(double d, double eps, double delta, bool concept_kind,
                                    double C = 1.0) {
    detail::check_eps_delta(eps, delta);
    require(d >= 1, "BadRange", "need d >= 1");
    require(C > 0, "BadRange", "need C > 0");
    require(d / eps > 1, "BadRange", "log argument d/eps must exceed 1");
    double l = std::log(d / eps);
    if (concept_kind)
        return C * (1.0 / (eps * eps)) * (d * l + std::log(1.0 / delta));
    return C * (d / std::pow(eps, 4) * l * l + (1.0 / (eps * eps)) * std::log(1.0 / delta));
}

// (eps_out, conf_out) = (2 R_n / n + delta, exp(-n delta^2 / 2))
inline std::pair<double, double> gc_rademacher_bound(double n, double R_n, double delta) {
    require(n >= 1, "BadRange", "need n >= 1");
    require(R_n >= 0, "BadRange", "need R_n >= 0");
    require(delta > 0, "BadRange", "need delta > 0");
    return {2.0 * R_n / n + delta, std::exp(-n * delta * delta / 2.0)};
}

// N + (8/eps^2) ln(1/delta)
inline double gc_expectation_bound(double N, double eps, double delta) {
    require(N >= 0, "BadRange", "need N >= 0");
    detail::check_eps_delta(eps, delta);
    return N + (8.0 / (eps * eps)) * std::log(1.0 / delta);
}

// 2 sqrt(d n ln(n+1))
inline double vc_rademacher(double d, double n) {
    require(d >= 0 && n >= 0, "BadRange", "need d, n >= 0");
    return 2.0 * std::sqrt(d * n * std::log(n + 1.0));
}

// 2 (4n/gamma^2)^(d ln(2 e n / (d gamma)))
inline double covering_fat_bound(double d, double gamma, double n) {
    require(gamma > 0 && gamma <= 1, "BadRange", "need 0 < gamma <= 1");
    require(d >= 1 && n >= 1, "BadRange", "need d, n >= 1");
    double log_arg = 2.0 * M_E * n / (d * gamma);
    require(log_arg > 1, "BadRange", "log argument 2en/(d*gamma) must exceed 1");
    return 2.0 * std::pow(4.0 * n / (gamma * gamma), d * std::log(log_arg));
}

// Minimax-regret sandwich from a table gamma -> sequential fat dimension.
// lower: (1/(4 sqrt 2)) sup min(sqrt(dT), T)
// upper: min over grid gamma of 4 gamma T + 12 sqrt(T) int_gamma^1
//        sqrt(d(beta) ln(2eT/beta)) dbeta,  d(beta) piecewise constant,
//        trapezoid integration per table segment.
inline std::pair<double, double> regret_bounds(const std::vector<std::pair<double, double>>& table,
                                               double T,
                                               const std::vector<double>& gamma_grid) {
    require(!table.empty(), "BadTable", "table must be nonempty");
    require(T >= 1, "BadRange", "need T >= 1");
    for (auto [g, d] : table) {
        require(g > 0 && g <= 1, "BadTable", "table gammas must lie in (0,1]");
        require(d >= 0, "BadTable", "table dims must be >= 0");
    }
    auto sorted = table;
    std::sort(sorted.begin(), sorted.end());

    double lower = 0.0;
    for (auto [g, d] : sorted)
        lower = std::max(lower, std::min(std::sqrt(d * T), T));
    lower /= 4.0 * std::sqrt(2.0);

    // piecewise-constant dimension at scale beta: the entry at the largest
    // table gamma <= beta (below the smallest entry, that entry's value)
    auto dim_at = [&](double beta) {
        double d = sorted.front().second;
        for (auto [g, dv] : sorted)
            if (g <= beta) d = dv;
        return d;
    };
    auto integrand = [&](double beta) {
        double la = std::log(2.0 * M_E * T / beta);
        return std::sqrt(std::max(0.0, dim_at(beta) * la));
    };
    auto integral_from = [&](double g0) {
        // segment boundaries: g0, table gammas above it, and 1
        std::vector<double> cuts{g0};
        for (auto [g, d] : sorted)
            if (g > g0 && g < 1.0) cuts.push_back(g);
        cuts.push_back(1.0);
        double acc = 0.0;
        for (std::size_t i = 0; i + 1 < cuts.size(); ++i) {
            double a = cuts[i], b = cuts[i + 1];
            if (b <= a) continue;
            // trapezoid on the segment, evaluating just inside the left cut
            double mid = a + 1e-12 * (b - a);
            acc += (b - a) * 0.5 * (integrand(mid) + integrand(b));
        }
        return acc;
    };

    require(!gamma_grid.empty(), "BadTable", "gamma grid must be nonempty");
    double upper = 0.0;
    bool first = true;
    for (double g0 : gamma_grid) {
        require(g0 > 0 && g0 <= 1, "BadRange", "grid gammas must lie in (0,1]");
        double u = 4.0 * g0 * T + 12.0 * std::sqrt(T) * integral_from(g0);
        if (first || u < upper) { upper = u; first = false; }
    }
    return {lower, upper};
}

// 4 gamma n + 12 (1-gamma) sqrt(d n ln(2 e n / gamma))
inline double expectation_regret_bound(double d, double gamma, double n) {
    require(gamma > 0 && gamma <= 1, "BadRange", "need 0 < gamma <= 1");
    require(d >= 0 && n >= 1, "BadRange", "need d >= 0, n >= 1");
    return 4.0 * gamma * n + 12.0 * (1.0 - gamma) * std::sqrt(d * n * std::log(2.0 * M_E * n / gamma));
}

// C sqrt(d T)
inline double littlestone_regret(double d, double T, double C = 1.0) {
    require(d >= 0 && T >= 0, "BadRange", "need d, T >= 0");
    require(C > 0, "BadRange", "need C > 0");
    return C * std::sqrt(d * T);
}

// linear: 25 m d* (ln 90 + ln m + ln d*)^2 ; quadratic variant carries m^2.
// Both forms appear in the source chain; the variant flag exposes the
// discrepancy instead of resolving it.
inline double aggregation_J(double m, double d_star, bool quadratic) {
    require(m >= 1 && d_star >= 1, "BadRange", "need m, d* >= 1");
    double base = std::log(90.0) + std::log(m) + std::log(d_star);
    double lin = 25.0 * m * d_star * base * base;
    return quadratic ? m * lin : lin;
}

// Three-stage chain: measure approximation size n_k = L' d / gamma^2, the
// composed-class dimension J(n_k, d*), and the final sample bound at eps=gamma.
inline BoundReport dual_dist_chain(double d, double d_star, double gamma, double Lprime = 1.0,
                                   double delta = 0.1) {
    require(d >= 1 && d_star >= 1, "BadRange", "need d, d* >= 1");
    require(gamma > 0 && gamma < 1, "BadRange", "need 0 < gamma < 1");
    require(Lprime > 0, "BadRange", "need L' > 0");
    require(delta > 0 && delta < 1, "BadRange", "need 0 < delta < 1");
    double n_k = Lprime * d / (gamma * gamma);
    double J = aggregation_J(n_k, d_star, false);
    double eps = gamma;
    double le = std::log(1.0 / eps);
    double final_bound = (1.0 / (eps * eps)) *
                         (d * d_star / std::pow(eps / 9.0, 2) * le * le + std::log(1.0 / delta));
    BoundReport rep;
    rep.name = "dual_dist_chain";
    rep.inputs = {{"d", d},      {"d_star", d_star}, {"gamma", gamma},
                  {"L_prime", Lprime}, {"delta", delta},   {"n_k", n_k},
                  {"J", J}};
    rep.value = final_bound;
    rep.formula = "n_k = L'*d/gamma^2; J = 25*n_k*d**(ln90+ln n_k+ln d*)^2; "
                  "(1/eps^2)[d*d*/(eps/9)^2*ln^2(1/eps)+ln(1/delta)], eps=gamma "
                  "(up to the undetermined constant)";
    return rep;
}

// eps^{-(lambda+1)}, polylog factors dropped
inline double sigmod_baseline(double lambda, double eps) {
    require(lambda >= 0, "BadRange", "need lambda >= 0");
    require(eps > 0 && eps < 1, "BadRange", "need 0 < eps < 1");
    return std::pow(eps, -(lambda + 1.0));
}

} // namespace dimlab
