#pragma once
#include <algorithm>
#include <cstdint>
#include <map>
#include <optional>
#include <vector>

#include "dimlab/games_loss.hpp"
#include "dimlab/types.hpp"
#include "dimlab/witness.hpp"

namespace dimlab {

namespace detail {

inline int popcount64(std::uint64_t v) { return __builtin_popcountll(v); }

// Candidate thresholds for shattering searches: midpoints (u+v)/2 over values
// occurring in the column, u = v included. Only the position of a threshold
// relative to occurring values at the margin matters, so replacing an
// arbitrary real threshold by the midpoint between the nearest admissible
// values below and above preserves every shattering pattern.
inline std::vector<Rat> midpoint_candidates(const std::vector<Rat>& column) {
    std::vector<Rat> vals = column;
    std::sort(vals.begin(), vals.end());
    vals.erase(std::unique(vals.begin(), vals.end()), vals.end());
    std::vector<Rat> cands;
    for (std::size_t i = 0; i < vals.size(); ++i)
        for (std::size_t j = i; j < vals.size(); ++j)
            cands.push_back((vals[i] + vals[j]) / Rat(2));
    std::sort(cands.begin(), cands.end());
    cands.erase(std::unique(cands.begin(), cands.end()), cands.end());
    return cands;
}

inline std::vector<Rat> distinct_column_values(const std::vector<Rat>& column) {
    std::vector<Rat> vals = column;
    std::sort(vals.begin(), vals.end());
    vals.erase(std::unique(vals.begin(), vals.end()), vals.end());
    return vals;
}

// enumerate all size-m subsets of {0..n-1} as index vectors
template <typename F>
bool for_each_subset(std::size_t n, std::size_t m, F&& fn) {
    std::vector<std::size_t> idx(m);
    for (std::size_t i = 0; i < m; ++i) idx[i] = i;
    if (m > n) return false;
    while (true) {
        if (fn(idx)) return true;
        std::size_t k = m;
        while (k > 0 && idx[k - 1] == n - m + k - 1) --k;
        if (k == 0) return false;
        ++idx[k - 1];
        for (std::size_t i = k; i < m; ++i) idx[i] = idx[i - 1] + 1;
    }
}

} // namespace detail

// ---------------------------------------------------------------------------
// VC dimension (concept classes): subset search ascending by size, early exit.

inline std::pair<std::size_t, SetShatterWitness> vc_dim(const HypothesisClass& c) {
    require(c.is_concept(), "NotConceptClass", "vc_dim requires a {0,1}-valued class");
    std::size_t nx = c.num_x(), ny = c.num_y();
    require(nx <= 24, "ClassTooLarge", "vc_dim supports |X| <= 24");

    // bit i of colbits[y] = membership of x_i in concept y
    std::vector<std::uint32_t> colbits(ny, 0);
    for (std::size_t y = 0; y < ny; ++y)
        for (std::size_t i = 0; i < nx; ++i)
            if (c.values[i][y] == Rat(1)) colbits[y] |= (1u << i);

    SetShatterWitness best;
    best.gamma = Rat(1, 2);
    best.selector = {0};  // empty set is shattered by any hypothesis
    std::size_t best_d = 0;

    for (std::size_t m = 1; m <= nx; ++m) {
        if ((std::size_t(1) << m) > ny) break;
        bool found = detail::for_each_subset(nx, m, [&](const std::vector<std::size_t>& pts) {
            std::vector<std::size_t> selector(std::size_t(1) << m, SIZE_MAX);
            std::size_t covered = 0;
            for (std::size_t y = 0; y < ny && covered < selector.size(); ++y) {
                std::uint32_t pattern = 0;
                for (std::size_t k = 0; k < m; ++k)
                    if (colbits[y] & (1u << pts[k])) pattern |= (1u << k);
                if (selector[pattern] == SIZE_MAX) {
                    selector[pattern] = y;
                    ++covered;
                }
            }
            if (covered < selector.size()) return false;
            best.points = pts;
            best.thresholds.assign(m, Rat(1, 2));
            best.selector = std::move(selector);
            best_d = m;
            return true;
        });
        if (!found) break;  // shattering is downward closed
    }
    return {best_d, best};
}

// ---------------------------------------------------------------------------
// Littlestone dimension: DP over version spaces,
// d(S) = max_x 1 + min(d(S_{x->0}), d(S_{x->1})) over splitting points.

inline std::pair<std::size_t, SeqShatterWitness> littlestone_dim(const HypothesisClass& c) {
    require(c.is_concept(), "NotConceptClass", "littlestone_dim requires a {0,1}-valued class");
    std::size_t nx = c.num_x(), ny = c.num_y();
    require(ny <= 30, "ClassTooLarge", "littlestone_dim supports |Y| <= 30");

    std::vector<std::uint64_t> ones(nx, 0);  // bit y: value(x,y) == 1
    for (std::size_t x = 0; x < nx; ++x)
        for (std::size_t y = 0; y < ny; ++y)
            if (c.values[x][y] == Rat(1)) ones[x] |= (std::uint64_t(1) << y);
    std::uint64_t full = (ny == 64) ? ~0ULL : ((std::uint64_t(1) << ny) - 1);

    std::map<std::uint64_t, std::size_t> memo;
    auto ldim = [&](auto&& self, std::uint64_t S) -> std::size_t {
        if (detail::popcount64(S) <= 1) return 0;
        auto it = memo.find(S);
        if (it != memo.end()) return it->second;
        std::size_t best = 0;
        for (std::size_t x = 0; x < nx; ++x) {
            std::uint64_t s1 = S & ones[x], s0 = S & ~ones[x];
            if (s0 && s1)
                best = std::max(best, 1 + std::min(self(self, s0), self(self, s1)));
        }
        memo[S] = best;
        return best;
    };
    std::size_t d = ldim(ldim, full);

    SeqShatterWitness w;
    w.gamma = Rat(1);
    w.points = BinaryTree<std::size_t>(d, 0);
    w.thresholds = BinaryTree<Rat>(d, Rat(1, 2));
    w.branch_labels.assign(std::size_t(1) << d, 0);
    // rebuild the shattered tree from the DP
    auto build = [&](auto&& self, std::uint64_t S, std::size_t k, std::size_t node,
                     std::uint32_t path_bits, std::size_t level) -> void {
        if (k == 0) {
            std::size_t y = static_cast<std::size_t>(__builtin_ctzll(S));
            // complete every branch through this leaf region with label y
            std::size_t remaining = d - level;
            for (std::uint32_t ext = 0; ext < (1u << remaining); ++ext)
                w.branch_labels[path_bits | (ext << level)] = y;
            return;
        }
        for (std::size_t x = 0; x < nx; ++x) {
            std::uint64_t s1 = S & ones[x], s0 = S & ~ones[x];
            if (s0 && s1 && std::min(ldim(ldim, s0), ldim(ldim, s1)) >= k - 1) {
                w.points.at(node) = x;
                self(self, s0, k - 1, heap_child(node, 0), path_bits, level + 1);
                self(self, s1, k - 1, heap_child(node, 1), path_bits | (1u << level), level + 1);
                return;
            }
        }
        fail("ShapeMismatch", "littlestone witness reconstruction failed");
    };
    if (d > 0) build(build, full, d, 0, 0, 0);
    else w.branch_labels[0] = 0;
    return {d, w};
}

// ---------------------------------------------------------------------------
// Fat-shattering dimension: full-gamma margins around per-point thresholds.

inline std::pair<std::size_t, SetShatterWitness> fat_dim(const HypothesisClass& h, const Rat& gamma) {
    require(gamma > Rat(0) && gamma <= Rat(1), "GammaOutOfRange", "need 0 < gamma <= 1");
    std::size_t nx = h.num_x(), ny = h.num_y();

    std::vector<std::vector<Rat>> cands(nx);
    for (std::size_t x = 0; x < nx; ++x)
        cands[x] = detail::midpoint_candidates(h.values[x]);

    SetShatterWitness best;
    best.gamma = gamma;
    best.selector = {0};
    std::size_t best_d = 0;

    for (std::size_t m = 1; m <= nx; ++m) {
        if ((std::size_t(1) << m) > ny) break;
        bool found = detail::for_each_subset(nx, m, [&](const std::vector<std::size_t>& pts) {
            // DFS over threshold assignments; y status tracked per assignment depth
            std::vector<Rat> thresholds(m);
            std::vector<std::size_t> selector(std::size_t(1) << m, SIZE_MAX);
            auto dfs = [&](auto&& self, std::size_t k, const std::vector<std::pair<std::uint32_t, bool>>& status) -> bool {
                if (k == m) {
                    std::fill(selector.begin(), selector.end(), SIZE_MAX);
                    std::size_t covered = 0;
                    for (std::size_t y = 0; y < ny; ++y) {
                        if (!status[y].second) continue;
                        std::uint32_t p = status[y].first;
                        if (selector[p] == SIZE_MAX) { selector[p] = y; ++covered; }
                    }
                    return covered == selector.size();
                }
                std::size_t x = pts[k];
                for (const Rat& t : cands[x]) {
                    std::vector<std::pair<std::uint32_t, bool>> next = status;
                    std::size_t alive = 0;
                    for (std::size_t y = 0; y < ny; ++y) {
                        if (!next[y].second) continue;
                        const Rat& v = h.values[x][y];
                        if (v >= t + gamma) { next[y].first |= (1u << k); ++alive; }
                        else if (v <= t - gamma) ++alive;
                        else next[y].second = false;
                    }
                    if (alive < (std::size_t(1) << m)) continue;
                    thresholds[k] = t;
                    if (self(self, k + 1, next)) return true;
                }
                return false;
            };
            std::vector<std::pair<std::uint32_t, bool>> init(ny, {0, true});
            if (!dfs(dfs, 0, init)) return false;
            best.points = pts;
            best.thresholds = thresholds;
            best.selector = selector;
            best_d = m;
            return true;
        });
        if (!found) break;
    }
    return {best_d, best};
}

// ---------------------------------------------------------------------------
// Sequential fat-shattering dimension: DP over available-hypothesis sets with
// gamma/2 margins on each side of midpoint-candidate node thresholds.

inline std::pair<std::size_t, SeqShatterWitness> seq_fat_dim(const HypothesisClass& h, const Rat& gamma) {
    require(gamma > Rat(0) && gamma <= Rat(1), "GammaOutOfRange", "need 0 < gamma <= 1");
    std::size_t nx = h.num_x(), ny = h.num_y();
    require(ny <= 20, "ClassTooLarge", "seq_fat_dim supports |Y| <= 20");
    Rat half = gamma / Rat(2);

    std::vector<std::vector<Rat>> cands(nx);
    for (std::size_t x = 0; x < nx; ++x)
        cands[x] = detail::midpoint_candidates(h.values[x]);

    std::uint64_t full = (std::uint64_t(1) << ny) - 1;
    std::map<std::uint64_t, std::size_t> memo;
    auto sdim = [&](auto&& self, std::uint64_t S) -> std::size_t {
        if (detail::popcount64(S) <= 1) return 0;
        auto it = memo.find(S);
        if (it != memo.end()) return it->second;
        std::size_t best = 0;
        for (std::size_t x = 0; x < nx; ++x)
            for (const Rat& t : cands[x]) {
                std::uint64_t lo = 0, hi = 0;
                for (std::size_t y = 0; y < ny; ++y) {
                    if (!(S & (std::uint64_t(1) << y))) continue;
                    const Rat& v = h.values[x][y];
                    if (v >= t + half) hi |= (std::uint64_t(1) << y);
                    else if (v <= t - half) lo |= (std::uint64_t(1) << y);
                }
                if (lo && hi)
                    best = std::max(best, 1 + std::min(self(self, lo), self(self, hi)));
            }
        memo[S] = best;
        return best;
    };
    std::size_t d = sdim(sdim, full);

    SeqShatterWitness w;
    w.gamma = gamma;
    w.points = BinaryTree<std::size_t>(d, 0);
    w.thresholds = BinaryTree<Rat>(d, Rat(1, 2));
    w.branch_labels.assign(std::size_t(1) << d, 0);
    auto build = [&](auto&& self, std::uint64_t S, std::size_t k, std::size_t node,
                     std::uint32_t path_bits, std::size_t level) -> void {
        if (k == 0) {
            std::size_t y = static_cast<std::size_t>(__builtin_ctzll(S));
            std::size_t remaining = d - level;
            for (std::uint32_t ext = 0; ext < (1u << remaining); ++ext)
                w.branch_labels[path_bits | (ext << level)] = y;
            return;
        }
        for (std::size_t x = 0; x < nx; ++x)
            for (const Rat& t : cands[x]) {
                std::uint64_t lo = 0, hi = 0;
                for (std::size_t y = 0; y < ny; ++y) {
                    if (!(S & (std::uint64_t(1) << y))) continue;
                    const Rat& v = h.values[x][y];
                    if (v >= t + half) hi |= (std::uint64_t(1) << y);
                    else if (v <= t - half) lo |= (std::uint64_t(1) << y);
                }
                if (lo && hi && std::min(sdim(sdim, lo), sdim(sdim, hi)) >= k - 1) {
                    w.points.at(node) = x;
                    w.thresholds.at(node) = t;
                    self(self, lo, k - 1, heap_child(node, 0), path_bits, level + 1);
                    self(self, hi, k - 1, heap_child(node, 1), path_bits | (1u << level), level + 1);
                    return;
                }
            }
        fail("ShapeMismatch", "seq-fat witness reconstruction failed");
    };
    if (d > 0) build(build, full, d, 0, 0, 0);
    else w.branch_labels[0] = 0;
    return {d, w};
}

// ---------------------------------------------------------------------------
// Threshold dimensions: longest admissible (x,y) sequence, DFS over the set of
// still-viable pairs with memoization.

namespace detail {

inline std::pair<std::size_t, std::vector<std::size_t>> longest_chain(
    std::size_t n_pairs, const std::vector<std::uint64_t>& follow) {
    std::map<std::uint64_t, std::pair<std::size_t, int>> memo;  // set -> (len, best first pair)
    std::uint64_t all = (n_pairs == 64) ? ~0ULL : ((std::uint64_t(1) << n_pairs) - 1);
    auto rec = [&](auto&& self, std::uint64_t viable) -> std::size_t {
        if (!viable) return 0;
        auto it = memo.find(viable);
        if (it != memo.end()) return it->second.first;
        std::size_t best = 0;
        int best_p = -1;
        for (std::size_t p = 0; p < n_pairs; ++p) {
            if (!(viable & (std::uint64_t(1) << p))) continue;
            std::size_t len = 1 + self(self, viable & follow[p]);
            if (len > best) { best = len; best_p = static_cast<int>(p); }
        }
        memo[viable] = {best, best_p};
        return best;
    };
    std::size_t len = rec(rec, all);
    std::vector<std::size_t> seq;
    std::uint64_t viable = all;
    while (viable) {
        int p = memo[viable].second;
        if (p < 0) break;
        seq.push_back(static_cast<std::size_t>(p));
        viable &= follow[static_cast<std::size_t>(p)];
    }
    return {len, seq};
}

} // namespace detail

// The defining constraint |h_j(a_i) - h_i(a_j)| >= gamma is symmetric in the
// two (point, hypothesis) pairs, so admissible sequences are exactly cliques
// of the undirected compatibility graph and any order of a clique works.
// Branch and bound over ascending indices; first maximum found is kept, which
// makes the witness the lexicographically least one.
inline std::pair<std::size_t, ThresholdWitness> threshold_dim_gamma(const HypothesisClass& h,
                                                                    const Rat& gamma) {
    require(gamma > Rat(0) && gamma <= Rat(1), "GammaOutOfRange", "need 0 < gamma <= 1");
    std::size_t nx = h.num_x(), ny = h.num_y();
    require(nx * ny <= 64, "ClassTooLarge", "threshold search supports |X|*|Y| <= 64");
    std::size_t n_pairs = nx * ny;
    auto px = [&](std::size_t p) { return p / ny; };
    auto py = [&](std::size_t p) { return p % ny; };

    std::vector<std::uint64_t> adj(n_pairs, 0);
    for (std::size_t p = 0; p < n_pairs; ++p)
        for (std::size_t q = p + 1; q < n_pairs; ++q) {
            Rat diff = (h.values[px(p)][py(q)] - h.values[px(q)][py(p)]).abs();
            if (diff >= gamma) {
                adj[p] |= (std::uint64_t(1) << q);
                adj[q] |= (std::uint64_t(1) << p);
            }
        }

    std::vector<std::size_t> best, chosen;
    auto rec = [&](auto&& self, std::uint64_t cands) -> void {
        if (chosen.size() + static_cast<std::size_t>(detail::popcount64(cands)) <= best.size())
            return;
        if (!cands) {
            if (chosen.size() > best.size()) best = chosen;
            return;
        }
        std::size_t p = static_cast<std::size_t>(__builtin_ctzll(cands));
        // include p
        chosen.push_back(p);
        self(self, cands & adj[p]);
        chosen.pop_back();
        // exclude p
        self(self, cands & ~(std::uint64_t(1) << p));
    };
    std::uint64_t all = (n_pairs == 64) ? ~0ULL : ((std::uint64_t(1) << n_pairs) - 1);
    rec(rec, all);

    ThresholdWitness w;
    w.mode = ThresholdWitness::Mode::Gamma;
    w.gamma = gamma;
    for (std::size_t p : best) w.pairs.emplace_back(px(p), py(p));
    return {best.size(), w};
}

inline std::pair<std::size_t, ThresholdWitness> threshold_dim_rs(const HypothesisClass& h,
                                                                 const Rat& r, const Rat& s) {
    require(r < s, "BadInterval", "need r < s");
    require(r >= Rat(0) && s <= Rat(1), "BadInterval", "need 0 <= r < s <= 1");
    std::size_t nx = h.num_x(), ny = h.num_y();
    require(nx * ny <= 64, "ClassTooLarge", "threshold search supports |X|*|Y| <= 64");
    std::size_t n_pairs = nx * ny;
    auto px = [&](std::size_t p) { return p / ny; };
    auto py = [&](std::size_t p) { return p % ny; };

    std::vector<std::uint64_t> follow(n_pairs, 0);
    for (std::size_t p = 0; p < n_pairs; ++p)
        for (std::size_t q = 0; q < n_pairs; ++q) {
            // q after p: h_q(x_p) <= r and h_p(x_q) >= s
            if (h.values[px(p)][py(q)] <= r && h.values[px(q)][py(p)] >= s)
                follow[p] |= (std::uint64_t(1) << q);
        }
    auto [len, seq] = detail::longest_chain(n_pairs, follow);
    ThresholdWitness w;
    w.mode = ThresholdWitness::Mode::RS;
    w.r = r;
    w.s = s;
    for (std::size_t p : seq) w.pairs.emplace_back(px(p), py(p));
    return {len, w};
}

// ---------------------------------------------------------------------------
// Graph dimension: equality on 0-bits, strict gamma-deviation on 1-bits.

inline std::pair<std::size_t, GraphDimWitness> graph_dim(const HypothesisClass& h, const Rat& gamma) {
    require(gamma > Rat(0) && gamma <= Rat(1), "GammaOutOfRange", "need 0 < gamma <= 1");
    std::size_t nx = h.num_x(), ny = h.num_y();

    std::vector<std::vector<Rat>> cands(nx);
    for (std::size_t x = 0; x < nx; ++x)
        cands[x] = detail::distinct_column_values(h.values[x]);

    GraphDimWitness best;
    best.gamma = gamma;
    best.selector = {0};
    std::size_t best_n = 0;

    for (std::size_t n = 1; n <= nx; ++n) {
        if ((std::size_t(1) << n) > ny) break;
        bool found = detail::for_each_subset(nx, n, [&](const std::vector<std::size_t>& pts) {
            std::vector<Rat> targets(n);
            std::vector<std::size_t> selector(std::size_t(1) << n, SIZE_MAX);
            auto dfs = [&](auto&& self, std::size_t k) -> bool {
                if (k == n) {
                    std::fill(selector.begin(), selector.end(), SIZE_MAX);
                    std::size_t covered = 0;
                    for (std::size_t y = 0; y < ny; ++y) {
                        std::uint32_t beta = 0;
                        bool usable = true;
                        for (std::size_t i = 0; i < n && usable; ++i) {
                            const Rat& v = h.values[pts[i]][y];
                            if (v == targets[i]) continue;           // serves beta_i = 0
                            else if ((v - targets[i]).abs() > gamma) beta |= (1u << i);
                            else usable = false;
                        }
                        if (usable && selector[beta] == SIZE_MAX) { selector[beta] = y; ++covered; }
                        if (covered == selector.size()) return true;
                    }
                    return covered == selector.size();
                }
                for (const Rat& f : cands[pts[k]]) {
                    targets[k] = f;
                    if (self(self, k + 1)) return true;
                }
                return false;
            };
            if (!dfs(dfs, 0)) return false;
            best.points = pts;
            best.targets = targets;
            best.selector = selector;
            best_n = n;
            return true;
        });
        if (!found) break;  // downward closed: drop a point, extend beta with 0
    }
    return {best_n, best};
}

// ---------------------------------------------------------------------------
// Online dimension: exact supremum via
// D(S) = max over x and disjoint nonempty A,B of
//        min_{a in A, b in B} loss(|h_a(x)-h_b(x)|) + min(D(A), D(B)).

inline std::pair<Rat, OnlineDimWitness> online_dim(const HypothesisClass& h, const LossFunction& loss) {
    std::size_t nx = h.num_x(), ny = h.num_y();
    require(ny <= 16, "ClassTooLarge", "online_dim supports |Y| <= 16 (exponential DP)");

    // pairwise stage losses per point
    std::vector<std::vector<std::vector<Rat>>> pl(nx,
        std::vector<std::vector<Rat>>(ny, std::vector<Rat>(ny, Rat(0))));
    for (std::size_t x = 0; x < nx; ++x)
        for (std::size_t a = 0; a < ny; ++a)
            for (std::size_t b = 0; b < ny; ++b)
                pl[x][a][b] = loss.eval((h.values[x][a] - h.values[x][b]).abs());

    std::size_t n_states = std::size_t(1) << ny;
    std::vector<Rat> D(n_states, Rat(0));
    struct Choice { std::size_t x; std::uint32_t A, B; Rat stage; bool used = false; };
    std::vector<Choice> choice(n_states);

    std::vector<std::uint32_t> members;
    for (std::uint32_t S = 1; S < n_states; ++S) {
        if (detail::popcount64(S) <= 1) continue;
        members.clear();
        for (std::size_t y = 0; y < ny; ++y)
            if (S & (1u << y)) members.push_back(static_cast<std::uint32_t>(y));
        Rat best(0);
        Choice bc;
        // (A, B) and (B, A) carry the same value; keep the orientation where
        // A holds the smaller lowest index
        for (std::uint32_t A = (S - 1) & S; A; A = (A - 1) & S) {
            std::uint32_t rest = S & ~A;
            for (std::uint32_t B = rest; B; B = (B - 1) & rest) {
                if (__builtin_ctz(B) < __builtin_ctz(A)) continue;
                Rat sub = min(D[A], D[B]);
                for (std::size_t x = 0; x < nx; ++x) {
                    // stage = min cross loss at x
                    bool first = true;
                    Rat stage(0);
                    for (std::uint32_t ya : members) {
                        if (!(A & (1u << ya))) continue;
                        for (std::uint32_t yb : members) {
                            if (!(B & (1u << yb))) continue;
                            const Rat& l = pl[x][ya][yb];
                            if (first || l < stage) { stage = l; first = false; }
                        }
                    }
                    if (stage == Rat(0)) continue;  // dominated by D of a submask
                    Rat val = stage + sub;
                    if (val > best) {
                        best = val;
                        bc = Choice{x, A, B, stage, true};
                    }
                }
            }
        }
        D[S] = best;
        choice[S] = bc;
    }

    std::uint32_t full = static_cast<std::uint32_t>(n_states - 1);

    // Reconstruct a witness tree; subtrees padded with zero-weight nodes so the
    // tree is complete.
    struct Built {
        std::size_t depth = 0;
        std::vector<std::size_t> pts;
        std::vector<Rat> tau;
        std::vector<std::size_t> labels;
    };
    auto pad = [&](Built t, std::size_t target) {
        while (t.depth < target) {
            Built u;
            u.depth = t.depth + 1;
            u.pts.resize(tree_node_count(u.depth), 0);
            u.tau.resize(tree_node_count(u.depth), Rat(0));
            u.pts[0] = t.depth ? t.pts[0] : 0;
            u.tau[0] = Rat(0);
            for (std::size_t level = 0; level < t.depth; ++level) {
                std::size_t count = std::size_t(1) << level;
                for (std::size_t bits = 0; bits < count; ++bits) {
                    std::size_t src = branch_prefix_node(static_cast<std::uint32_t>(bits), level);
                    for (int dir = 0; dir < 2; ++dir) {
                        std::size_t dst = heap_child(0, dir);
                        for (std::size_t k = 0; k < level; ++k)
                            dst = heap_child(dst, (bits >> k) & 1u);
                        u.pts[dst] = t.pts[src];
                        u.tau[dst] = t.tau[src];
                    }
                }
            }
            u.labels.resize(std::size_t(1) << u.depth);
            for (std::size_t b = 0; b < u.labels.size(); ++b)
                u.labels[b] = t.labels[b >> 1];
            t = std::move(u);
        }
        return t;
    };
    auto build = [&](auto&& self, std::uint32_t S) -> Built {
        Built t;
        if (!choice[S].used) {
            t.labels = {static_cast<std::size_t>(__builtin_ctz(S))};
            return t;
        }
        const Choice& ch = choice[S];
        Built left = self(self, ch.A);
        Built right = self(self, ch.B);
        std::size_t target = std::max(left.depth, right.depth);
        left = pad(std::move(left), target);
        right = pad(std::move(right), target);
        t.depth = target + 1;
        t.pts.resize(tree_node_count(t.depth), 0);
        t.tau.resize(tree_node_count(t.depth), Rat(0));
        t.pts[0] = ch.x;
        t.tau[0] = ch.stage;
        for (std::size_t level = 0; level < target; ++level) {
            std::size_t count = std::size_t(1) << level;
            for (std::size_t bits = 0; bits < count; ++bits) {
                std::size_t src = branch_prefix_node(static_cast<std::uint32_t>(bits), level);
                for (int dir = 0; dir < 2; ++dir) {
                    std::size_t dst = heap_child(0, dir);
                    for (std::size_t k = 0; k < level; ++k)
                        dst = heap_child(dst, (bits >> k) & 1u);
                    const Built& side = dir == 0 ? left : right;
                    t.pts[dst] = side.pts[src];
                    t.tau[dst] = side.tau[src];
                }
            }
        }
        t.labels.resize(std::size_t(1) << t.depth);
        for (std::size_t b = 0; b < t.labels.size(); ++b)
            t.labels[b] = ((b & 1u) == 0 ? left : right).labels[b >> 1];
        return t;
    };
    Built bt = build(build, full);

    OnlineDimWitness w;
    w.points.depth = bt.depth;
    w.points.nodes = bt.pts;
    w.tau.depth = bt.depth;
    w.tau.nodes = bt.tau;
    w.branch_labels = bt.labels;
    w.value = D[full];
    return {D[full], w};
}

} // namespace dimlab
