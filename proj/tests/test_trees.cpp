#include <catch2/catch_amalgamated.hpp>

#include <iostream>

#include "dimlab/dimensions.hpp"
#include "dimlab/generators.hpp"
#include "dimlab/trees_ops.hpp"
#include "oracles.hpp"

using namespace dimlab;

namespace {

// check an embedding is valid, has the right depth, and is monochromatic
void check_mono_embedding(const BinaryTree<std::size_t>& tree, const SubtreeEmbedding& e,
                          std::size_t color, std::size_t depth) {
    REQUIRE(e.depth == depth);
    e.validate(tree.depth);
    for (std::size_t host : e.host) CHECK(tree.at(host) == color);
}

// synthetic class carrying an (r,s)-threshold witness of length m on its
// diagonal order: value(a_i, h_j) <= r for i < j, >= s for i > j
HypothesisClass synthetic_rs_class(SplitMix64& rng, std::size_t m, const Rat& r, const Rat& s) {
    HypothesisClass h;
    for (std::size_t i = 0; i < m; ++i) h.x_labels.push_back("a" + std::to_string(i));
    for (std::size_t j = 0; j < m; ++j) h.y_labels.push_back("h" + std::to_string(j));
    h.values.assign(m, std::vector<Rat>(m, Rat(0)));
    for (std::size_t i = 0; i < m; ++i)
        for (std::size_t j = 0; j < m; ++j) {
            if (i < j) {
                // anything in [0, r], quantized to eighths of r
                h.values[i][j] = r * Rat(static_cast<long long>(rng.next_below(9)), 8);
            } else if (i > j) {
                h.values[i][j] = s + (Rat(1) - s) * Rat(static_cast<long long>(rng.next_below(9)), 8);
            } else {
                h.values[i][j] = Rat(static_cast<long long>(rng.next_below(9)), 8);
            }
        }
    h.validate();
    return h;
}

ThresholdWitness diagonal_rs_witness(std::size_t m, const Rat& r, const Rat& s) {
    ThresholdWitness w;
    w.mode = ThresholdWitness::Mode::RS;
    w.r = r;
    w.s = s;
    for (std::size_t i = 0; i < m; ++i) w.pairs.emplace_back(i, i);
    return w;
}

// explicit depth-13 shattered witness over powerset_class(13): node at level l
// is x_l, thresholds 1/2, branch bits name the subset
SeqShatterWitness powerset_tree_witness(std::size_t n) {
    SeqShatterWitness w;
    w.gamma = Rat(1);
    w.points = BinaryTree<std::size_t>(n, 0);
    w.thresholds = BinaryTree<Rat>(n, Rat(1, 2));
    for (std::size_t node = 0; node < tree_node_count(n); ++node)
        w.points.at(node) = heap_level(node);
    w.branch_labels.resize(std::size_t(1) << n);
    for (std::size_t b = 0; b < w.branch_labels.size(); ++b) w.branch_labels[b] = b;
    return w;
}

} // namespace

TEST_CASE("monochromatic_subtree") {
    SECTION("single color returns an identity prefix") {
        BinaryTree<std::size_t> t(3, 1);
        auto [color, e] = monochromatic_subtree(t, {2});
        CHECK(color == 1);
        check_mono_embedding(t, e, 1, 2);
        for (std::size_t i = 0; i < e.host.size(); ++i) CHECK(e.host[i] == i);
    }
    SECTION("exhaustive: every 2-coloring of every depth-3 tree has a mono depth-2 subtree") {
        for (std::size_t coloring = 0; coloring < (1u << 7); ++coloring) {
            BinaryTree<std::size_t> t(3, 1);
            for (std::size_t i = 0; i < 7; ++i) t.at(i) = ((coloring >> i) & 1u) + 1;
            auto [color, e] = monochromatic_subtree(t, {2, 2});
            check_mono_embedding(t, e, color, 2);
        }
    }
    SECTION("three colors at the guaranteed depth") {
        SplitMix64 rng(42);
        for (int trial = 0; trial < 30; ++trial) {
            BinaryTree<std::size_t> t(4, 1);  // need 2+2+2-3+1 = 4
            for (auto& c : t.nodes) c = 1 + rng.next_below(3);
            auto [color, e] = monochromatic_subtree(t, {2, 2, 2});
            check_mono_embedding(t, e, color, 2);
        }
    }
    SECTION("depth too small") {
        BinaryTree<std::size_t> t(2, 1);
        CHECK_THROWS_WITH(monochromatic_subtree(t, {2, 2}),
                          Catch::Matchers::ContainsSubstring("DepthTooSmall"));
    }
}

TEST_CASE("tree_from_rs_threshold") {
    SECTION("length-1 witness gives the empty tree") {
        SplitMix64 rng(1);
        auto h = synthetic_rs_class(rng, 1, Rat(1, 4), Rat(3, 4));
        auto w = diagonal_rs_witness(1, Rat(1, 4), Rat(3, 4));
        auto out = tree_from_rs_threshold(h, w);
        CHECK(out.points.depth == 0);
        CHECK(out.branch_labels.size() == 1);
        CHECK(verify_seq_shatter(h, out, Rat(1, 2)));
    }
    SECTION("threshold_class(3) prefix witness of length 3 gives a shattered depth-1 tree") {
        auto t3 = threshold_class(3);
        auto [len, full] = threshold_dim_rs(t3, Rat(0), Rat(1));
        REQUIRE(len >= 3);
        ThresholdWitness w = full;
        w.pairs.resize(3);
        auto out = tree_from_rs_threshold(t3, w);
        CHECK(out.points.depth == 1);
        CHECK(verify_seq_shatter(t3, out, Rat(1)));
        CHECK(oracles::naive_seq_fat(t3, Rat(1)) >= 1);
    }
    SECTION("fuzz: converter output always verifies at gamma = s - r") {
        SplitMix64 rng(77);
        for (int trial = 0; trial < 30; ++trial) {
            std::size_t d = 1 + rng.next_below(2);  // depth 1 or 2
            std::size_t m = (std::size_t(2) << d) - 1;
            Rat r(static_cast<long long>(rng.next_below(3)), 8);       // 0, 1/8, 1/4
            Rat s = r + Rat(1, 2);
            auto h = synthetic_rs_class(rng, m, r, s);
            auto w = diagonal_rs_witness(m, r, s);
            REQUIRE(verify_threshold(h, w));
            auto out = tree_from_rs_threshold(h, w);
            CHECK(out.points.depth == d);
            CHECK(verify_seq_shatter(h, out, s - r));
        }
    }
    SECTION("bad witnesses are rejected") {
        SplitMix64 rng(5);
        auto h = synthetic_rs_class(rng, 3, Rat(0), Rat(1));
        auto w = diagonal_rs_witness(2, Rat(0), Rat(1));  // length not 2^{d+1}-1
        CHECK_THROWS_WITH(tree_from_rs_threshold(h, w),
                          Catch::Matchers::ContainsSubstring("BadWitness"));
    }
}

TEST_CASE("gamma_threshold_from_tree") {
    SECTION("base case d = 1") {
        // k = 3 with delta = 1/20 needs depth (3^2 - 1)/2 = 4
        auto p = powerset_class(4);
        auto [sd, sw] = seq_fat_dim(p, Rat(1, 2));
        REQUIRE(sd == 4);
        auto out = gamma_threshold_from_tree(p, sw, Rat(1, 2), Rat(1, 20), 3, 1);
        CHECK(out.pairs.size() == 1);
        CHECK(verify_threshold(p, out));
    }
    SECTION("depth requirement enforced") {
        auto p = powerset_class(3);
        auto [sd, sw] = seq_fat_dim(p, Rat(1, 2));
        REQUIRE(sd == 3);
        // k = 5, d = 1 needs depth (5^2 - 1)/4 = 6 > 3
        CHECK_THROWS_WITH(gamma_threshold_from_tree(p, sw, Rat(1, 2), Rat(1, 8), 5, 1),
                          Catch::Matchers::ContainsSubstring("ParameterConstraintViolated"));
        // parameter constraints: delta < gamma/2, k > 1/(gamma - 2 delta)
        CHECK_THROWS_WITH(gamma_threshold_from_tree(p, sw, Rat(1, 2), Rat(1, 2), 5, 1),
                          Catch::Matchers::ContainsSubstring("ParameterConstraintViolated"));
        CHECK_THROWS_WITH(gamma_threshold_from_tree(p, sw, Rat(1, 2), Rat(1, 5), 5, 1),
                          Catch::Matchers::ContainsSubstring("ParameterConstraintViolated"));
    }
    SECTION("deep synthetic witness: gamma=1/2, delta=1/20, k=3, d=2 needs depth 13") {
        auto p13 = powerset_class(13);
        auto w = powerset_tree_witness(13);
        REQUIRE(verify_seq_shatter(p13, w, Rat(1)));
        REQUIRE(w.gamma >= Rat(1, 2));
        auto out = gamma_threshold_from_tree(p13, w, Rat(1, 2), Rat(1, 20), 3, 2);
        CHECK(out.pairs.size() == 2);
        CHECK(out.gamma == Rat(1, 20));
        CHECK(verify_threshold(p13, out));
    }
}

TEST_CASE("ones_subtree") {
    SECTION("all-ones tree embeds identically") {
        BinaryTree<std::size_t> t(2, 1);
        auto e = ones_subtree(t, 2);
        REQUIRE(e.depth == 2);
        e.validate(t.depth);
        for (std::size_t i = 0; i < e.host.size(); ++i) CHECK(e.host[i] == i);
    }
    SECTION("zero root with one-children embeds at a child") {
        BinaryTree<std::size_t> t(2, 1);
        t.at(0) = 0;
        auto e = ones_subtree(t, 1);
        REQUIRE(e.depth == 1);
        e.validate(t.depth);
        CHECK((e.host[0] == 1 || e.host[0] == 2));
        CHECK(t.at(e.host[0]) == 1);
    }
    SECTION("exhaustive: depth-3 trees with >= 2 ones per branch contain all-ones depth 2") {
        for (std::size_t labeling = 0; labeling < (1u << 7); ++labeling) {
            BinaryTree<std::size_t> t(3, 0);
            for (std::size_t i = 0; i < 7; ++i) t.at(i) = (labeling >> i) & 1u;
            bool ok = true;
            for (std::size_t b = 0; b < 8 && ok; ++b) {
                std::size_t ones = 0;
                for (std::size_t lvl = 0; lvl < 3; ++lvl)
                    ones += t.at(branch_prefix_node(static_cast<std::uint32_t>(b), lvl));
                if (ones < 2) ok = false;
            }
            if (!ok) continue;
            auto e = ones_subtree(t, 2);
            REQUIRE(e.depth == 2);
            e.validate(t.depth);
            for (std::size_t host : e.host) CHECK(t.at(host) == 1);
        }
    }
    SECTION("deficient branches are reported") {
        BinaryTree<std::size_t> t(2, 1);
        t.at(0) = 0;
        t.at(1) = 0;  // branch left-left has 0 ones... left branch has 0+0
        CHECK_THROWS_WITH(ones_subtree(t, 2),
                          Catch::Matchers::ContainsSubstring("BranchDeficient"));
    }
}

TEST_CASE("verifier sensitivity and vacuous acceptance") {
    auto p = powerset_class(2);
    auto [sd, sw] = seq_fat_dim(p, Rat(1, 2));
    REQUIRE(verify_seq_shatter(p, sw, Rat(1, 2)));

    // dropping one used value 1/1000 below its margin flips the verdict
    HypothesisClass corrupted = p;
    std::size_t x = sw.points.at(0);
    std::size_t label = sw.branch_labels[1];  // branch going right at the root
    corrupted.values[x][label] = sw.thresholds.at(0) + Rat(1, 4) - Rat(1, 1000);
    CHECK_FALSE(verify_seq_shatter(corrupted, sw, Rat(1, 2)));

    // empty witnesses verify vacuously
    SeqShatterWitness empty;
    empty.gamma = Rat(1, 2);
    empty.points = BinaryTree<std::size_t>(0, 0);
    empty.thresholds = BinaryTree<Rat>(0, Rat(0));
    empty.branch_labels = {0};
    CHECK(verify_seq_shatter(p, empty, Rat(1, 2)));
}

TEST_CASE("threshold witness of length <= 1 verifies vacuously") {
    auto p = powerset_class(2);
    ThresholdWitness w;
    w.mode = ThresholdWitness::Mode::Gamma;
    w.gamma = Rat(1, 2);
    CHECK(verify_threshold(p, w));
    w.pairs.emplace_back(0, 0);
    CHECK(verify_threshold(p, w));
}

TEST_CASE("spread-shattering verifier") {
    // a sequentially shattered tree also spread-shatters at the same scale
    auto p = powerset_class(2);
    auto [sd, sw] = seq_fat_dim(p, Rat(1, 2));
    REQUIRE(sd == 2);
    CHECK(verify_spread_shatter(p, sw.points, sw.branch_labels, Rat(1, 2)));
    CHECK(verify_spread_shatter(p, sw.points, sw.branch_labels, Rat(1)));

    // shrinking one crossing gap below eps flips the verdict
    HypothesisClass corrupted = p;
    corrupted.values[sw.points.at(0)][sw.branch_labels[1]] -= Rat(1, 1000);
    CHECK_FALSE(verify_spread_shatter(corrupted, sw.points, sw.branch_labels, Rat(1)));
}

TEST_CASE("clique extraction pipeline: gamma witness to (r,s) witness") {
    // from a gamma-threshold witness, the 2n-coloring of index pairs plus a
    // monochromatic clique yields an (r,s) witness with s - r = delta
    SplitMix64 rng(99);
    Rat gamma(1, 2), delta(1, 4);
    long long n = ((Rat(1) / (gamma - delta)).ceil()).convert_to<long long>();
    int built = 0;
    for (int trial = 0; trial < 20; ++trial) {
        auto h = oracles::random_class(rng, 5, 5, false);
        auto [len, w] = threshold_dim_gamma(h, gamma);
        if (len < 2) continue;
        // color every ordered pair i < j
        auto color_of = [&](std::size_t i, std::size_t j) -> std::pair<bool, long long> {
            auto [xi, yi] = w.pairs[i];
            auto [xj, yj] = w.pairs[j];
            const Rat& later_at_earlier = h.values[xi][yj];   // h_j(a_i)
            const Rat& earlier_at_later = h.values[xj][yi];   // h_i(a_j)
            if (earlier_at_later - later_at_earlier >= gamma) {
                // case A: h_j(a_i) <= k/n, h_i(a_j) >= k/n + delta
                long long k = (later_at_earlier * Rat(n)).ceil().convert_to<long long>();
                return {true, k};
            }
            long long k = (earlier_at_later * Rat(n)).ceil().convert_to<long long>();
            return {false, k};
        };
        // largest monochromatic clique by exhaustive subset search
        std::size_t best_size = 0;
        std::vector<std::size_t> best_clique;
        std::pair<bool, long long> best_color{true, 0};
        for (std::size_t mask = 1; mask < (std::size_t(1) << len); ++mask) {
            std::vector<std::size_t> members;
            for (std::size_t i = 0; i < len; ++i)
                if (mask & (std::size_t(1) << i)) members.push_back(i);
            if (members.size() <= best_size) continue;
            bool mono = true;
            std::pair<bool, long long> c{true, -1};
            for (std::size_t a = 0; a < members.size() && mono; ++a)
                for (std::size_t b = a + 1; b < members.size() && mono; ++b) {
                    auto cc = color_of(members[a], members[b]);
                    if (c.second == -1) c = cc;
                    else if (cc != c) mono = false;
                }
            if (mono) {
                best_size = members.size();
                best_clique = members;
                best_color = c;
            }
        }
        REQUIRE(best_size >= 2);  // any single pair of indices is a clique
        Rat r = Rat(best_color.second) / Rat(n);
        Rat s = r + delta;
        ThresholdWitness out;
        out.mode = ThresholdWitness::Mode::RS;
        out.r = r;
        out.s = s;
        if (best_color.first) {
            for (std::size_t i : best_clique) out.pairs.push_back(w.pairs[i]);
        } else {
            for (auto it = best_clique.rbegin(); it != best_clique.rend(); ++it)
                out.pairs.push_back(w.pairs[*it]);
        }
        CHECK(verify_threshold(h, out));
        ++built;
    }
    CHECK(built >= 5);  // the corpus produces plenty of length >= 2 witnesses
}
