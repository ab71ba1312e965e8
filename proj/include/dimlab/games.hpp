#pragma once
#include <algorithm>
#include <cstdint>
#include <map>
#include <optional>
#include <tuple>
#include <vector>

#include "dimlab/games_loss.hpp"
#include "dimlab/rng.hpp"
#include "dimlab/types.hpp"

namespace dimlab {

struct Transcript {
    // (x index, adversary label y, learner prediction y')
    std::vector<std::tuple<std::size_t, Rat, Rat>> rounds;
};

struct GameValue {
    Rat value;
    bool exact = true;
    std::size_t horizon = 0;
    std::size_t best_first_x = 0;         // adversary's optimal opening point
    Rat best_first_prediction;            // learner's reply there (realizable)
    std::vector<Rat> first_move_mixture;  // learner's opening mixture (agnostic)
};

// cumulative learner loss minus the best comparator loss
inline Rat regret(const Transcript& t, const HypothesisClass& h, const LossFunction& loss) {
    for (const auto& [x, y, yp] : t.rounds) {
        require(x < h.num_x(), "IndexError", "transcript x index out of range");
        require(y.in_unit_interval() && yp.in_unit_interval(), "IndexError",
                "transcript labels must lie in [0,1]");
    }
    if (t.rounds.empty()) return Rat(0);
    Rat learner(0);
    for (const auto& [x, y, yp] : t.rounds) learner += loss.eval((yp - y).abs());
    Rat best(0);
    bool first = true;
    for (std::size_t c = 0; c < h.num_y(); ++c) {
        Rat acc(0);
        for (const auto& [x, y, yp] : t.rounds) acc += loss.eval((h.values[x][c] - y).abs());
        if (first || acc < best) { best = acc; first = false; }
    }
    return learner - best;
}

// all class values plus pairwise midpoints
inline std::vector<Rat> default_prediction_grid(const HypothesisClass& h) {
    std::vector<Rat> vals;
    for (const auto& row : h.values)
        for (const auto& v : row) vals.push_back(v);
    std::sort(vals.begin(), vals.end());
    vals.erase(std::unique(vals.begin(), vals.end()), vals.end());
    std::vector<Rat> grid = vals;
    for (std::size_t i = 0; i < vals.size(); ++i)
        for (std::size_t j = i + 1; j < vals.size(); ++j)
            grid.push_back((vals[i] + vals[j]) / Rat(2));
    std::sort(grid.begin(), grid.end());
    grid.erase(std::unique(grid.begin(), grid.end()), grid.end());
    return grid;
}

// ---------------------------------------------------------------------------
// Realizable game: adversary reveals x, the deterministic learner predicts,
// then the adversary reveals a label consistent with a nonempty version
// space. Backward induction memoized on (version space, rounds left).
//
// Prediction candidates come either from a fixed grid or, in exact-learner
// mode, from the breakpoints and pairwise crossings of the piecewise-linear
// (piecewise-constant for the threshold loss) inner objective, which is where
// a one-dimensional convex / piecewise-constant minimum can occur.

class RealizableGame {
public:
    enum class Mode { Grid, ExactLearner };

    RealizableGame(const HypothesisClass& h, const LossFunction& loss, Mode mode,
                   std::vector<Rat> grid = {})
        : h_(h), loss_(loss), mode_(mode), grid_(std::move(grid)) {
        require(h.num_y() <= 16, "ClassTooLarge", "realizable game supports |Y| <= 16");
        if (mode_ == Mode::Grid && grid_.empty()) grid_ = default_prediction_grid(h);
        for (const Rat& g : grid_)
            require(g.in_unit_interval(), "BadRange", "prediction grid values must lie in [0,1]");
        full_ = static_cast<std::uint32_t>((std::size_t(1) << h.num_y()) - 1);
    }

    std::uint32_t full_version_space() const { return full_; }

    // label -> consistent sub-version-space at point x
    std::vector<std::pair<Rat, std::uint32_t>> label_splits(std::uint32_t vs, std::size_t x) const {
        std::vector<std::pair<Rat, std::uint32_t>> splits;
        for (std::size_t yidx = 0; yidx < h_.num_y(); ++yidx) {
            if (!(vs & (1u << yidx))) continue;
            const Rat& v = h_.values[x][yidx];
            bool found = false;
            for (auto& [lab, mask] : splits)
                if (lab == v) { mask |= (1u << yidx); found = true; break; }
            if (!found) splits.emplace_back(v, 1u << yidx);
        }
        return splits;
    }

    Rat value(std::uint32_t vs, std::size_t t) {
        require(vs != 0, "IndexError", "empty version space");
        if (t == 0) return Rat(0);
        auto key = std::make_pair(vs, t);
        auto it = memo_.find(key);
        if (it != memo_.end()) return it->second;
        Rat best(0);
        for (std::size_t x = 0; x < h_.num_x(); ++x) {
            Rat inner = best_response_value(vs, t, x);
            if (inner > best) best = inner;
        }
        memo_[key] = best;
        return best;
    }

    std::size_t best_x(std::uint32_t vs, std::size_t t) {
        Rat target = value(vs, t);
        for (std::size_t x = 0; x < h_.num_x(); ++x)
            if (best_response_value(vs, t, x) == target) return x;
        return 0;
    }

    // learner's minimizing prediction after seeing x
    Rat best_prediction(std::uint32_t vs, std::size_t t, std::size_t x) {
        auto splits = label_splits(vs, x);
        Rat best_val(0), best_pred = splits.front().first;
        bool first = true;
        for (const Rat& cand : candidates(splits, t)) {
            Rat worst = worst_case(cand, splits, t);
            if (first || worst < best_val) { best_val = worst; best_pred = cand; first = false; }
        }
        return best_pred;
    }

    // adversary's consistent label maximizing loss + continuation
    Rat worst_label(std::uint32_t vs, std::size_t t, std::size_t x, const Rat& prediction) {
        auto splits = label_splits(vs, x);
        Rat best_val(0), best_lab = splits.front().first;
        bool first = true;
        for (const auto& [lab, mask] : splits) {
            Rat v = loss_.eval((prediction - lab).abs()) + (t >= 1 ? value(mask, t - 1) : Rat(0));
            if (first || v > best_val) { best_val = v; best_lab = lab; first = false; }
        }
        return best_lab;
    }

private:
    Rat best_response_value(std::uint32_t vs, std::size_t t, std::size_t x) {
        auto splits = label_splits(vs, x);
        Rat best(0);
        bool first = true;
        for (const Rat& cand : candidates(splits, t)) {
            Rat worst = worst_case(cand, splits, t);
            if (first || worst < best) { best = worst; first = false; }
        }
        return best;
    }

    Rat worst_case(const Rat& prediction, const std::vector<std::pair<Rat, std::uint32_t>>& splits,
                   std::size_t t) {
        Rat worst(0);
        for (const auto& [lab, mask] : splits) {
            Rat v = loss_.eval((prediction - lab).abs()) + value(mask, t - 1);
            if (v > worst) worst = v;
        }
        return worst;
    }

    std::vector<Rat> candidates(const std::vector<std::pair<Rat, std::uint32_t>>& splits,
                                std::size_t t) {
        if (mode_ == Mode::Grid) return grid_;
        std::vector<Rat> cands{Rat(0), Rat(1)};
        std::vector<std::pair<Rat, Rat>> pts;  // (label, continuation)
        for (const auto& [lab, mask] : splits)
            pts.emplace_back(lab, value(mask, t - 1));
        if (loss_.kind == LossFunction::Kind::Threshold) {
            std::vector<Rat> breaks{Rat(0), Rat(1)};
            for (const auto& [y, c] : pts) {
                breaks.push_back(y);
                if (y - loss_.eps >= Rat(0)) breaks.push_back(y - loss_.eps);
                if (y + loss_.eps <= Rat(1)) breaks.push_back(y + loss_.eps);
            }
            std::sort(breaks.begin(), breaks.end());
            breaks.erase(std::unique(breaks.begin(), breaks.end()), breaks.end());
            cands = breaks;
            for (std::size_t i = 0; i + 1 < breaks.size(); ++i)
                cands.push_back((breaks[i] + breaks[i + 1]) / Rat(2));
        } else {
            for (const auto& [y, c] : pts) {
                cands.push_back(y);
                if (loss_.kind == LossFunction::Kind::TruncatedLinear) {
                    if (y - loss_.eps >= Rat(0)) cands.push_back(y - loss_.eps);
                    if (y + loss_.eps <= Rat(1)) cands.push_back(y + loss_.eps);
                }
            }
            for (const auto& [yi, ci] : pts)
                for (const auto& [yj, cj] : pts) {
                    Rat cross = (yi + yj + ci - cj) / Rat(2);
                    if (cross >= Rat(0) && cross <= Rat(1)) cands.push_back(cross);
                }
        }
        std::sort(cands.begin(), cands.end());
        cands.erase(std::unique(cands.begin(), cands.end()), cands.end());
        return cands;
    }

    const HypothesisClass& h_;
    LossFunction loss_;
    Mode mode_;
    std::vector<Rat> grid_;
    std::uint32_t full_;
    std::map<std::pair<std::uint32_t, std::size_t>, Rat> memo_;
};

inline GameValue realizable_value(const HypothesisClass& h, const LossFunction& loss,
                                  std::size_t T,
                                  const std::optional<std::vector<Rat>>& pred_grid = std::nullopt,
                                  bool exact_learner = false) {
    RealizableGame game(h, loss,
                        exact_learner ? RealizableGame::Mode::ExactLearner
                                      : RealizableGame::Mode::Grid,
                        pred_grid.value_or(std::vector<Rat>{}));
    GameValue gv;
    gv.horizon = T;
    gv.exact = true;
    gv.value = game.value(game.full_version_space(), T);
    if (T > 0) {
        gv.best_first_x = game.best_x(game.full_version_space(), T);
        gv.best_first_prediction =
            game.best_prediction(game.full_version_space(), T, gv.best_first_x);
    }
    return gv;
}

// value(T) for growing T until two consecutive horizons agree; the realizable
// value can only grow through version-space splits, so it must stabilize by
// T = |Y| - 1.
inline std::pair<Rat, std::size_t> realizable_plateau(const HypothesisClass& h,
                                                      const LossFunction& loss,
                                                      bool exact_learner = true) {
    RealizableGame game(h, loss,
                        exact_learner ? RealizableGame::Mode::ExactLearner
                                      : RealizableGame::Mode::Grid);
    Rat prev = game.value(game.full_version_space(), 0);
    for (std::size_t t = 1; t <= h.num_y() + 1; ++t) {
        Rat cur = game.value(game.full_version_space(), t);
        if (cur == prev) return {cur, t - 1};
        prev = cur;
    }
    fail("StateExplosion", "realizable value failed to plateau by T = |Y| + 1");
}

// ---------------------------------------------------------------------------
// Exact zero-sum matrix game: value = min_p max_j sum_i p_i M[i][j].
// Rational primal simplex with Bland's rule on the standard transform.

struct MatrixGameSolution {
    Rat value;
    std::vector<Rat> row_mixture;
};

inline MatrixGameSolution solve_matrix_game(const std::vector<std::vector<Rat>>& M) {
    std::size_t m = M.size();
    require(m >= 1 && !M[0].empty(), "ShapeMismatch", "matrix game needs entries");
    std::size_t n = M[0].size();
    require(m <= 32 && n <= 32, "StateExplosion", "stage matrices capped at 32x32");

    // shift so every entry is >= 1
    Rat shift(0);
    bool first = true;
    for (const auto& row : M) {
        require(row.size() == n, "ShapeMismatch", "ragged matrix");
        for (const Rat& v : row)
            if (first || v < shift) { shift = v; first = false; }
    }
    Rat c = Rat(1) - shift;

    // maximize sum u_i  s.t.  (M')^T u <= 1, u >= 0   (n constraints, m vars)
    std::size_t cols = m + n + 1;
    std::vector<std::vector<Rat>> tab(n + 1, std::vector<Rat>(cols, Rat(0)));
    for (std::size_t j = 0; j < n; ++j) {
        for (std::size_t i = 0; i < m; ++i) tab[j][i] = M[i][j] + c;
        tab[j][m + j] = Rat(1);
        tab[j][cols - 1] = Rat(1);
    }
    for (std::size_t i = 0; i < m; ++i) tab[n][i] = Rat(-1);
    std::vector<std::size_t> basis(n);
    for (std::size_t j = 0; j < n; ++j) basis[j] = m + j;

    while (true) {
        std::size_t enter = cols - 1;
        for (std::size_t k = 0; k + 1 < cols; ++k)
            if (tab[n][k] < Rat(0)) { enter = k; break; }  // Bland: lowest index
        if (enter == cols - 1) break;
        std::size_t leave = n;
        Rat best_ratio(0);
        for (std::size_t r = 0; r < n; ++r) {
            if (!(tab[r][enter] > Rat(0))) continue;
            Rat ratio = tab[r][cols - 1] / tab[r][enter];
            if (leave == n || ratio < best_ratio ||
                (ratio == best_ratio && basis[r] < basis[leave]))
                { leave = r; best_ratio = ratio; }
        }
        require(leave != n, "StateExplosion", "unbounded matrix game LP (internal)");
        Rat pivot = tab[leave][enter];
        for (auto& v : tab[leave]) v = v / pivot;
        for (std::size_t r = 0; r <= n; ++r) {
            if (r == leave) continue;
            Rat f = tab[r][enter];
            if (f == Rat(0)) continue;
            for (std::size_t k2 = 0; k2 < cols; ++k2)
                tab[r][k2] -= f * tab[leave][k2];
        }
        basis[leave] = enter;
    }

    Rat theta = tab[n][cols - 1];
    require(theta > Rat(0), "StateExplosion", "degenerate matrix game (internal)");
    MatrixGameSolution sol;
    sol.value = Rat(1) / theta - c;
    sol.row_mixture.assign(m, Rat(0));
    for (std::size_t r = 0; r < n; ++r)
        if (basis[r] < m) sol.row_mixture[basis[r]] = tab[r][cols - 1] / theta;
    return sol;
}

// ---------------------------------------------------------------------------
// Agnostic game: randomized learner, adversary commits the label before the
// prediction is sampled -> per round a zero-sum stage matrix game between the
// prediction mixture and the label choice, with exact continuations indexed
// by the vector of per-hypothesis cumulative losses.

inline GameValue agnostic_minimax(const HypothesisClass& h, const LossFunction& loss,
                                  std::size_t T, const std::vector<Rat>& pred_grid,
                                  const std::vector<Rat>& label_grid,
                                  std::size_t max_states = 1000000) {
    require(h.num_y() <= 12, "ClassTooLarge", "agnostic game supports |Y| <= 12");
    require(!pred_grid.empty() && !label_grid.empty(), "BadRange", "grids must be nonempty");
    for (const Rat& v : pred_grid)
        require(v.in_unit_interval(), "BadRange", "prediction grid values must lie in [0,1]");
    for (const Rat& v : label_grid)
        require(v.in_unit_interval(), "BadRange", "label grid values must lie in [0,1]");

    struct Key {
        std::size_t t;
        std::vector<Rat> losses;
        bool operator<(const Key& o) const {
            if (t != o.t) return t < o.t;
            return std::lexicographical_compare(losses.begin(), losses.end(), o.losses.begin(),
                                                o.losses.end());
        }
    };
    std::map<Key, std::pair<Rat, std::pair<std::size_t, std::vector<Rat>>>> memo;

    auto normalize = [](std::vector<Rat> L) {
        Rat m = L[0];
        for (const Rat& v : L) m = min(m, v);
        for (Rat& v : L) v -= m;
        return std::make_pair(L, m);
    };

    auto rec = [&](auto&& self, std::vector<Rat> L, std::size_t t) -> Rat {
        auto [norm, offset] = normalize(std::move(L));
        if (t == 0) return -offset;  // -min of the original vector
        Key key{t, norm};
        auto it = memo.find(key);
        if (it != memo.end()) return it->second.first - offset;
        require(memo.size() < max_states, "StateExplosion",
                "agnostic game exceeded the state cap");

        Rat best(0);
        bool first = true;
        std::size_t best_x = 0;
        std::vector<Rat> best_mix;
        for (std::size_t x = 0; x < h.num_x(); ++x) {
            // stage matrix over (prediction, label)
            std::vector<std::vector<Rat>> M(pred_grid.size(),
                                            std::vector<Rat>(label_grid.size(), Rat(0)));
            for (std::size_t j = 0; j < label_grid.size(); ++j) {
                std::vector<Rat> next = norm;
                for (std::size_t y = 0; y < h.num_y(); ++y)
                    next[y] += loss.eval((h.values[x][y] - label_grid[j]).abs());
                Rat cont = self(self, std::move(next), t - 1);
                for (std::size_t i = 0; i < pred_grid.size(); ++i)
                    M[i][j] = loss.eval((pred_grid[i] - label_grid[j]).abs()) + cont;
            }
            MatrixGameSolution sol = solve_matrix_game(M);
            if (first || sol.value > best) {
                best = sol.value;
                best_x = x;
                best_mix = sol.row_mixture;
                first = false;
            }
        }
        memo[key] = {best, {best_x, best_mix}};
        return best - offset;
    };

    std::vector<Rat> zero(h.num_y(), Rat(0));
    GameValue gv;
    gv.horizon = T;
    gv.exact = true;
    gv.value = rec(rec, zero, T);
    if (T > 0) {
        Key key{T, zero};
        const auto& stored = memo.at(key).second;
        gv.best_first_x = stored.first;
        gv.first_move_mixture = stored.second;
    }
    return gv;
}

// ---------------------------------------------------------------------------
// Policy simulation.

enum class LearnerPolicy { FollowTheLeader, MinimaxExtract };

struct AdversaryPolicy {
    enum class Kind { Consistent, WorstCaseExtract, Scripted };
    Kind kind = Kind::Consistent;
    std::size_t h0 = 0;                                // Consistent
    std::vector<std::pair<std::size_t, Rat>> script;   // Scripted
};

inline Transcript run_game(const HypothesisClass& h, const LossFunction& loss,
                           LearnerPolicy learner, const AdversaryPolicy& adversary,
                           std::size_t T, std::uint64_t seed) {
    if (adversary.kind == AdversaryPolicy::Kind::Consistent)
        require(adversary.h0 < h.num_y(), "PolicyError", "consistent hypothesis out of range");
    if (adversary.kind == AdversaryPolicy::Kind::Scripted)
        require(adversary.script.size() >= T, "PolicyError", "script shorter than horizon");

    RealizableGame game(h, loss, RealizableGame::Mode::ExactLearner);
    std::uint32_t vs = game.full_version_space();
    SplitMix64 rng(seed);
    Transcript tr;

    for (std::size_t round = 0; round < T; ++round) {
        std::size_t remaining = T - round;
        // adversary picks x
        std::size_t x = 0;
        switch (adversary.kind) {
            case AdversaryPolicy::Kind::Consistent:
                x = static_cast<std::size_t>(rng.next_below(h.num_x()));
                break;
            case AdversaryPolicy::Kind::WorstCaseExtract:
                x = game.best_x(vs, remaining);
                break;
            case AdversaryPolicy::Kind::Scripted:
                x = adversary.script[round].first;
                require(x < h.num_x(), "PolicyError", "scripted x out of range");
                break;
        }
        // learner predicts
        Rat prediction(0);
        if (learner == LearnerPolicy::MinimaxExtract) {
            prediction = game.best_prediction(vs, remaining, x);
        } else {
            // follow the leader: lowest-index minimizer of past cumulative loss
            std::size_t best_h = 0;
            Rat best_loss(0);
            bool first = true;
            for (std::size_t c = 0; c < h.num_y(); ++c) {
                Rat acc(0);
                for (const auto& [px, py, pp] : tr.rounds)
                    acc += loss.eval((h.values[px][c] - py).abs());
                if (first || acc < best_loss) { best_loss = acc; best_h = c; first = false; }
            }
            prediction = h.values[x][best_h];
        }
        // adversary reveals y
        Rat y(0);
        switch (adversary.kind) {
            case AdversaryPolicy::Kind::Consistent:
                y = h.values[x][adversary.h0];
                break;
            case AdversaryPolicy::Kind::WorstCaseExtract:
                y = game.worst_label(vs, remaining, x, prediction);
                break;
            case AdversaryPolicy::Kind::Scripted:
                y = adversary.script[round].second;
                require(y.in_unit_interval(), "PolicyError", "scripted label outside [0,1]");
                break;
        }
        tr.rounds.emplace_back(x, y, prediction);
        // shrink the version space when the label is consistent with part of it
        std::uint32_t nvs = 0;
        for (std::size_t c = 0; c < h.num_y(); ++c)
            if ((vs & (1u << c)) && h.values[x][c] == y) nvs |= (1u << c);
        if (nvs) vs = nvs;
    }
    return tr;
}

} // namespace dimlab
