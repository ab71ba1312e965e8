#include <catch2/catch_amalgamated.hpp>

#include "dimlab/bounds.hpp"
#include "dimlab/class_core.hpp"
#include "dimlab/dimensions.hpp"
#include "dimlab/games.hpp"
#include "dimlab/generators.hpp"
#include "oracles.hpp"

using namespace dimlab;

namespace {
HypothesisClass two_constants() {
    return make_class({"x"}, {"c0", "c1"}, {{Rat(0), Rat(1)}});
}
}

TEST_CASE("loss functions") {
    CHECK(LossFunction::truncated(Rat(1, 10)).eval(Rat(3, 10)) == Rat(1, 5));
    CHECK(LossFunction::threshold(Rat(1, 10)).eval(Rat(1, 20)) == Rat(0));
    CHECK(LossFunction::threshold(Rat(1, 10)).eval(Rat(1, 10)) == Rat(1));  // boundary is >=
    CHECK(LossFunction::identity().eval(Rat(7, 10)) == Rat(7, 10));
    CHECK_THROWS_WITH(LossFunction::identity().eval(Rat(3, 2)),
                      Catch::Matchers::ContainsSubstring("OutOfRange"));
    CHECK_THROWS_WITH(LossFunction::truncated(Rat(0)),
                      Catch::Matchers::ContainsSubstring("BadRange"));
}

TEST_CASE("regret") {
    auto h = two_constants();
    SECTION("empty transcript") {
        CHECK(regret(Transcript{}, h, LossFunction::identity()) == Rat(0));
    }
    SECTION("one round") {
        Transcript t;
        t.rounds.emplace_back(0, Rat(0), Rat(1, 2));
        CHECK(regret(t, h, LossFunction::identity()) == Rat(1, 2));
    }
    SECTION("replaying hypotheses: nonnegative regret, zero for the best one") {
        SplitMix64 rng(5);
        for (int trial = 0; trial < 10; ++trial) {
            auto c = oracles::random_class(rng, 3, 3, false);
            std::vector<std::pair<std::size_t, Rat>> draws;
            for (int r = 0; r < 4; ++r)
                draws.emplace_back(rng.next_below(c.num_x()),
                                   Rat(static_cast<long long>(rng.next_below(9)), 8));
            Rat best_regret(0);
            bool first = true;
            for (std::size_t star = 0; star < c.num_y(); ++star) {
                Transcript t;
                for (const auto& [x, y] : draws)
                    t.rounds.emplace_back(x, y, c.values[x][star]);
                Rat reg = regret(t, c, LossFunction::identity());
                CHECK(reg >= Rat(0));
                if (first || reg < best_regret) { best_regret = reg; first = false; }
            }
            // the best replayer achieves regret <= 0 (exactly 0)
            CHECK(best_regret <= Rat(0));
        }
    }
}

TEST_CASE("matrix game solver") {
    SECTION("matching pennies has value 1/2 with the uniform mixture") {
        auto sol = solve_matrix_game({{Rat(0), Rat(1)}, {Rat(1), Rat(0)}});
        CHECK(sol.value == Rat(1, 2));
        CHECK(sol.row_mixture[0] == Rat(1, 2));
        CHECK(sol.row_mixture[1] == Rat(1, 2));
    }
    SECTION("dominant row") {
        auto sol = solve_matrix_game({{Rat(0), Rat(0)}, {Rat(1), Rat(1)}});
        CHECK(sol.value == Rat(0));
        CHECK(sol.row_mixture[0] == Rat(1));
    }
    SECTION("value is a minimax certificate on random games") {
        SplitMix64 rng(17);
        for (int t = 0; t < 15; ++t) {
            std::size_t m = 2 + rng.next_below(3), n = 2 + rng.next_below(3);
            std::vector<std::vector<Rat>> M(m, std::vector<Rat>(n));
            for (auto& row : M)
                for (auto& v : row) v = Rat(static_cast<long long>(rng.next_below(9)), 8);
            auto sol = solve_matrix_game(M);
            Rat total(0);
            for (const Rat& p : sol.row_mixture) total += p;
            CHECK(total == Rat(1));
            // the mixture guarantees value against every column
            for (std::size_t j = 0; j < n; ++j) {
                Rat payoff(0);
                for (std::size_t i = 0; i < m; ++i) payoff += sol.row_mixture[i] * M[i][j];
                CHECK(payoff <= sol.value);
            }
        }
    }
}

TEST_CASE("realizable_value") {
    SECTION("singleton class is free") {
        auto h = make_class({"a", "b"}, {"y"}, {{Rat(1, 3)}, {Rat(2, 3)}});
        for (std::size_t T : {0, 1, 4})
            CHECK(realizable_value(h, LossFunction::identity(), T).value == Rat(0));
    }
    SECTION("powerset_class(2) with 0/1 predictions realizes the Littlestone dimension") {
        auto p = powerset_class(2);
        std::vector<Rat> grid{Rat(0), Rat(1)};
        CHECK(realizable_value(p, LossFunction::identity(), 2, grid).value == Rat(2));
        CHECK(realizable_value(p, LossFunction::identity(), 3, grid).value == Rat(2));
    }
    SECTION("threshold_class(3) with 0/1 setup plateaus at its Littlestone dimension") {
        auto t3 = threshold_class(3);
        std::vector<Rat> grid{Rat(0), Rat(1)};
        CHECK(littlestone_dim(t3).first == 2);
        CHECK(realizable_value(t3, LossFunction::identity(), 3, grid).value == Rat(2));
    }
    SECTION("exact learner can only improve on any grid") {
        SplitMix64 rng(31);
        for (int t = 0; t < 8; ++t) {
            auto h = oracles::random_class(rng, 3, 4, false);
            Rat grid_value = realizable_value(h, LossFunction::identity(), 3).value;
            Rat exact_value =
                realizable_value(h, LossFunction::identity(), 3, std::nullopt, true).value;
            CHECK(exact_value <= grid_value);
        }
    }
}

TEST_CASE("realizable plateau vs online dimension") {
    SplitMix64 rng(47);
    for (int t = 0; t < 8; ++t) {
        auto h = oracles::random_class(rng, 3, 5, false);
        auto [plateau, at] = realizable_plateau(h, LossFunction::identity());
        Rat onl = online_dim(h, LossFunction::identity()).first;
        CHECK(plateau * Rat(2) >= onl);
        CHECK(plateau <= onl);
    }
}

TEST_CASE("agnostic_minimax") {
    SECTION("two constants, one round") {
        auto gv = agnostic_minimax(two_constants(), LossFunction::identity(), 1,
                                   {Rat(0), Rat(1, 2), Rat(1)}, {Rat(0), Rat(1)});
        CHECK(gv.value == Rat(1, 2));
    }
    SECTION("zero rounds") {
        CHECK(agnostic_minimax(two_constants(), LossFunction::identity(), 0, {Rat(0)},
                               {Rat(0)}).value == Rat(0));
    }
    SECTION("per-round value shrinks and stays under the littlestone form") {
        auto h = two_constants();
        std::vector<Rat> pred{Rat(0), Rat(1, 4), Rat(1, 2), Rat(3, 4), Rat(1)};
        std::vector<Rat> label{Rat(0), Rat(1)};
        Rat prev_avg;
        bool first = true;
        for (std::size_t T = 1; T <= 3; ++T) {
            Rat v = agnostic_minimax(h, LossFunction::identity(), T, pred, label).value;
            Rat avg = v / Rat(static_cast<long long>(T));
            if (!first) CHECK(avg <= prev_avg);
            prev_avg = avg;
            first = false;
            double formula = littlestone_regret(
                static_cast<double>(littlestone_dim(h).first), static_cast<double>(T));
            CHECK(v.to_double() <= formula + 1e-9);
        }
    }
    SECTION("state cap") {
        auto h = powerset_class(2);
        std::vector<Rat> grid{Rat(0), Rat(1, 2), Rat(1)};
        CHECK_THROWS_WITH(agnostic_minimax(h, LossFunction::identity(), 4, grid, grid, 3),
                          Catch::Matchers::ContainsSubstring("StateExplosion"));
    }
}

TEST_CASE("loss-function ladder on realizable values") {
    SplitMix64 rng(61);
    for (int t = 0; t < 8; ++t) {
        auto h = oracles::random_class(rng, 3, 4, false);
        for (const Rat& eps : {Rat(1, 4), Rat(1, 2)}) {
            for (std::size_t T : {1, 3}) {
                Rat v_id =
                    realizable_value(h, LossFunction::identity(), T, std::nullopt, true).value;
                Rat v_L =
                    realizable_value(h, LossFunction::threshold(eps), T, std::nullopt, true).value;
                Rat v_l =
                    realizable_value(h, LossFunction::truncated(eps), T, std::nullopt, true).value;
                CHECK(eps * v_L <= v_id);
                CHECK(v_l <= v_L);
            }
        }
    }
}

// labels enriched with the +-gamma/2 shifts around each grid value, so the
// shattering adversary's strategy is representable
static std::vector<Rat> shifted_label_grid(const HypothesisClass& h, const Rat& gamma) {
    auto grid = default_prediction_grid(h);
    std::vector<Rat> labels = grid;
    for (const Rat& v : grid) {
        Rat half = gamma / Rat(2);
        if ((v + half).in_unit_interval()) labels.push_back(v + half);
        if ((v - half).in_unit_interval()) labels.push_back(v - half);
    }
    std::sort(labels.begin(), labels.end());
    labels.erase(std::unique(labels.begin(), labels.end()), labels.end());
    return labels;
}

TEST_CASE("agnostic lower bound from sequential shattering") {
    SplitMix64 rng(71);
    int tested = 0;
    for (int t = 0; t < 8 && tested < 4; ++t) {
        auto h = oracles::random_class(rng, 3, 4, false);
        Rat gamma(1, 4);
        std::size_t d = seq_fat_dim(h, gamma).first;
        if (d == 0 || d > 2) continue;
        ++tested;
        auto pred = default_prediction_grid(h);
        auto labels = shifted_label_grid(h, gamma);
        Rat v = agnostic_minimax(h, LossFunction::identity(), d, pred, labels).value;
        CHECK(v * Rat(3) >= Rat(static_cast<long long>(d)) * gamma);
    }
    CHECK(tested >= 1);
}

TEST_CASE("threshold-loss values plateau; identity values grow along tree truncations") {
    // L_eps realizable values stop growing in T on any finite class
    SplitMix64 rng(81);
    for (int t = 0; t < 5; ++t) {
        auto h = oracles::random_class(rng, 3, 4, false);
        for (const Rat& eps : {Rat(1, 4), Rat(1, 2)}) {
            auto [plateau, at] = realizable_plateau(h, LossFunction::threshold(eps));
            CHECK(at <= h.num_y());
        }
    }
    // identity-loss plateau grows with the truncation depth when d*gamma_d
    // stays bounded away from zero
    GammaSequence gs{{Rat(1, 2), Rat(1, 3), Rat(1, 4), Rat(1, 5)}};
    Rat prev(0);
    for (std::size_t depth = 2; depth <= 3; ++depth) {
        auto h = tree_class(gs, depth);
        auto [plateau, at] = realizable_plateau(h, LossFunction::identity());
        CHECK(plateau > prev);
        prev = plateau;
    }
}

TEST_CASE("run_game") {
    SECTION("consistent adversary against the minimax learner on a singleton") {
        auto h = make_class({"a", "b"}, {"y"}, {{Rat(1, 3)}, {Rat(2, 3)}});
        auto tr = run_game(h, LossFunction::identity(), LearnerPolicy::MinimaxExtract,
                           AdversaryPolicy{AdversaryPolicy::Kind::Consistent, 0, {}}, 5, 3);
        Rat total(0);
        for (const auto& [x, y, yp] : tr.rounds) total += (yp - y).abs();
        CHECK(total == Rat(0));
    }
    SECTION("worst-case adversary realizes the DP value against the minimax learner") {
        SplitMix64 rng(91);
        for (int t = 0; t < 6; ++t) {
            auto h = oracles::random_class(rng, 3, 4, false);
            std::size_t T = 1 + rng.next_below(3);
            auto tr = run_game(h, LossFunction::identity(), LearnerPolicy::MinimaxExtract,
                               AdversaryPolicy{AdversaryPolicy::Kind::WorstCaseExtract, 0, {}},
                               T, 0);
            Rat total(0);
            for (const auto& [x, y, yp] : tr.rounds)
                total += LossFunction::identity().eval((yp - y).abs());
            Rat dp = realizable_value(h, LossFunction::identity(), T, std::nullopt, true).value;
            CHECK(total == dp);
        }
    }
    SECTION("scripted adversary replays its transcript") {
        auto h = two_constants();
        AdversaryPolicy ap;
        ap.kind = AdversaryPolicy::Kind::Scripted;
        ap.script = {{0, Rat(1)}, {0, Rat(0)}};
        auto tr = run_game(h, LossFunction::identity(), LearnerPolicy::FollowTheLeader, ap, 2, 0);
        REQUIRE(tr.rounds.size() == 2);
        CHECK(std::get<1>(tr.rounds[0]) == Rat(1));
        CHECK(std::get<1>(tr.rounds[1]) == Rat(0));
    }
    SECTION("policy errors") {
        auto h = two_constants();
        AdversaryPolicy ap;
        ap.kind = AdversaryPolicy::Kind::Scripted;
        ap.script = {{0, Rat(1)}};
        CHECK_THROWS_WITH(run_game(h, LossFunction::identity(),
                                   LearnerPolicy::FollowTheLeader, ap, 2, 0),
                          Catch::Matchers::ContainsSubstring("PolicyError"));
        AdversaryPolicy bad;
        bad.kind = AdversaryPolicy::Kind::Consistent;
        bad.h0 = 9;
        CHECK_THROWS_WITH(run_game(h, LossFunction::identity(),
                                   LearnerPolicy::FollowTheLeader, bad, 1, 0),
                          Catch::Matchers::ContainsSubstring("PolicyError"));
    }
}
