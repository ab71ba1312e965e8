#include <catch2/catch_amalgamated.hpp>

#include <cmath>

#include "dimlab/class_core.hpp"
#include "dimlab/generators.hpp"
#include "dimlab/width.hpp"
#include "oracles.hpp"

using namespace dimlab;

TEST_CASE("width in a direction") {
    PointCloud a{2, {{Rat(1, 5), Rat(7, 10)}}};
    CHECK(width(a, {Rat(1), Rat(-1)}) == Rat(-1, 2));

    // dominated points do not change the width
    PointCloud b{2, {{Rat(1), Rat(1)}, {Rat(1, 2), Rat(1, 2)}}};
    PointCloud c{2, {{Rat(1), Rat(1)}}};
    CHECK(width(b, {Rat(1), Rat(1)}) == width(c, {Rat(1), Rat(1)}));

    CHECK(width(b, {Rat(0), Rat(0)}) == Rat(0));
    CHECK_THROWS_WITH(width(a, {Rat(1)}), Catch::Matchers::ContainsSubstring("DimMismatch"));
}

TEST_CASE("rademacher_mean_width") {
    SECTION("singleton clouds have width 0 by sign symmetry") {
        PointCloud a{3, {{Rat(1, 3), Rat(1, 2), Rat(1, 7)}}};
        CHECK(rademacher_mean_width(a) == Rat(0));
    }
    SECTION("the unit square corners give n/2 = 1") {
        PointCloud a{2, {{Rat(0), Rat(0)}, {Rat(0), Rat(1)}, {Rat(1), Rat(0)}, {Rat(1), Rat(1)}}};
        CHECK(rademacher_mean_width(a) == Rat(1));
    }
    SECTION("homogeneity under nonnegative scaling") {
        SplitMix64 rng(11);
        for (int t = 0; t < 10; ++t) {
            PointCloud a{2, {}};
            for (int p = 0; p < 3; ++p)
                a.points.push_back({Rat(static_cast<long long>(rng.next_below(9)), 8),
                                    Rat(static_cast<long long>(rng.next_below(9)), 8)});
            Rat c(static_cast<long long>(rng.next_below(5)), 2);
            PointCloud scaled = a;
            for (auto& p : scaled.points)
                for (auto& v : p) v = v * c;
            // scaled coordinates may leave [0,1]; width functions do not care
            CHECK(rademacher_mean_width(scaled) == c * rademacher_mean_width(a));
        }
    }
}

TEST_CASE("class_rademacher") {
    SECTION("constant class has zero width") {
        auto h = make_class({"a", "b"}, {"y"}, {{Rat(1, 3)}, {Rat(1, 3)}});
        CHECK(class_rademacher(h, 2).value == Rat(0));
    }
    SECTION("powerset_class(2) at n = 2 reaches 1") {
        CHECK(class_rademacher(powerset_class(2), 2).value == Rat(1));
    }
    SECTION("sampled mode is a certified lower bound on every seed") {
        auto h = powerset_class(2);
        Rat exact = class_rademacher(h, 2).value;
        for (std::uint64_t seed = 0; seed < 8; ++seed) {
            auto sampled = class_rademacher(h, 2, false, 5, seed);
            CHECK_FALSE(sampled.exact);
            CHECK(sampled.value <= exact);
        }
    }
}

TEST_CASE("seq_class_rademacher") {
    SECTION("constant class gives 0") {
        auto h = make_class({"a"}, {"y"}, {{Rat(1, 2)}});
        CHECK(seq_class_rademacher(h, 2).value == Rat(0));
    }
    SECTION("n = 1 equals class_rademacher at n = 1") {
        SplitMix64 rng(19);
        for (int t = 0; t < 8; ++t) {
            auto h = oracles::random_class(rng, 3, 3, false);
            CHECK(seq_class_rademacher(h, 1).value == class_rademacher(h, 1).value);
        }
    }
    SECTION("powerset_class(2) at n = 2 matches an independent enumerator") {
        auto h = powerset_class(2);
        // independent oracle: iterate trees as (root, left, right) triples
        Rat best(0);
        bool first = true;
        for (std::size_t root = 0; root < 2; ++root)
            for (std::size_t left = 0; left < 2; ++left)
                for (std::size_t right = 0; right < 2; ++right) {
                    Rat total(0);
                    for (int s0 : {-1, 1})
                        for (int s1 : {-1, 1}) {
                            Rat inner(0);
                            bool f2 = true;
                            for (std::size_t y = 0; y < h.num_y(); ++y) {
                                std::size_t second = s0 < 0 ? left : right;
                                Rat dot = Rat(s0) * h.values[root][y] +
                                          Rat(s1) * h.values[second][y];
                                if (f2 || dot > inner) { inner = dot; f2 = false; }
                            }
                            total += inner;
                        }
                    Rat avg = total / Rat(4);
                    if (first || avg > best) { best = avg; first = false; }
                }
        CHECK(seq_class_rademacher(h, 2).value == best);
    }
}

TEST_CASE("gaussian_mean_width") {
    SECTION("singleton estimate is near zero") {
        PointCloud a{2, {{Rat(1, 2), Rat(1, 3)}}};
        auto r = gaussian_mean_width(a, 20000, 1);
        CHECK(std::abs(r.estimate) <= 3 * r.std_error + 1e-9);
    }
    SECTION("{0,1} on the line estimates E[max(0,g)] = 1/sqrt(2 pi)") {
        PointCloud a{1, {{Rat(0)}, {Rat(1)}}};
        auto r = gaussian_mean_width(a, 100000, 7);
        double target = 1.0 / std::sqrt(2.0 * M_PI);
        CHECK(std::abs(r.estimate - target) <= 3 * r.std_error);
    }
    SECTION("rademacher width respects the gaussian sandwich statistically") {
        SplitMix64 rng(23);
        for (int t = 0; t < 6; ++t) {
            PointCloud a{3, {}};
            for (int p = 0; p < 4; ++p)
                a.points.push_back({Rat(static_cast<long long>(rng.next_below(9)), 8),
                                    Rat(static_cast<long long>(rng.next_below(9)), 8),
                                    Rat(static_cast<long long>(rng.next_below(9)), 8)});
            Rat wr = rademacher_mean_width(a);
            auto g = gaussian_mean_width(a, 40000, 1000 + t);
            CHECK(wr.to_double() <=
                  std::sqrt(M_PI / 2.0) * (g.estimate + 3 * g.std_error) + 1e-9);
        }
    }
}

TEST_CASE("covering_number") {
    SECTION("singleton needs one ball") {
        PointCloud a{1, {{Rat(1, 2)}}};
        CHECK(covering_number(a, Rat(1, 10), Norm::Linf).count == 1);
    }
    SECTION("{0, 1/2, 1} at gamma = 1/10 needs three balls") {
        PointCloud a{1, {{Rat(0)}, {Rat(1, 2)}, {Rat(1)}}};
        auto r = covering_number(a, Rat(1, 10), Norm::Linf);
        CHECK(r.count == 3);
        CHECK(r.exact);
    }
    SECTION("one ball suffices when gamma covers the diameter") {
        PointCloud a{1, {{Rat(0)}, {Rat(1, 2)}, {Rat(1)}}};
        CHECK(covering_number(a, Rat(1), Norm::Linf).count == 1);
    }
    SECTION("l2 at gamma sqrt(n) is at most linf at gamma") {
        SplitMix64 rng(31);
        for (int t = 0; t < 10; ++t) {
            std::size_t n = 4;  // gamma*sqrt(4) = 2*gamma stays rational
            PointCloud a{n, {}};
            std::size_t pts = 2 + rng.next_below(5);
            for (std::size_t p = 0; p < pts; ++p) {
                std::vector<Rat> v;
                for (std::size_t k = 0; k < n; ++k)
                    v.push_back(Rat(static_cast<long long>(rng.next_below(9)), 8));
                a.points.push_back(v);
            }
            Rat gamma(1, 6);
            CHECK(covering_number(a, gamma * Rat(2), Norm::L2).count <=
                  covering_number(a, gamma, Norm::Linf).count);
        }
    }
    SECTION("oversized inputs fall back to a flagged greedy bound") {
        PointCloud a{1, {}};
        for (int i = 0; i < 25; ++i) a.points.push_back({Rat(i, 50)});
        auto r = covering_number(a, Rat(1, 100), Norm::Linf);
        CHECK_FALSE(r.exact);
        CHECK(r.count >= 13);  // greedy never beats the optimum
    }
}

TEST_CASE("expectation width inequalities (exact)") {
    SplitMix64 rng(41);
    for (int t = 0; t < 10; ++t) {
        auto f = oracles::random_family(rng, 4, 4, 3);
        auto e = expectation_class(f);
        std::size_t n = 1 + rng.next_below(3);

        // width of the expectation cloud never exceeds the weighted member widths
        for (int rep = 0; rep < 4; ++rep) {
            std::vector<std::size_t> xbar(n);
            for (auto& x : xbar) x = rng.next_below(e.num_x());
            std::vector<Rat> b(n);
            for (auto& v : b)
                v = Rat(static_cast<long long>(rng.next_below(9)) - 4, 4);
            Rat lhs = width(PointCloud::from_class(e, xbar), b);
            Rat rhs(0);
            for (std::size_t w = 0; w < f.classes.size(); ++w)
                rhs += f.omega_weights[w] * width(PointCloud::from_class(f.classes[w], xbar), b);
            CHECK(lhs <= rhs);
        }

        // mean-width push-through: R_EF(n) <= max_w R_Hw(n)
        Rat lhs = class_rademacher(e, n).value;
        Rat rhs(0);
        bool first = true;
        for (const auto& m : f.classes) {
            Rat v = class_rademacher(m, n).value;
            if (first || v > rhs) { rhs = v; first = false; }
        }
        CHECK(lhs <= rhs);

        // sequential version at n <= 2
        std::size_t sn = 1 + rng.next_below(2);
        Rat slhs = seq_class_rademacher(e, sn).value;
        Rat srhs(0);
        first = true;
        for (const auto& m : f.classes) {
            Rat v = seq_class_rademacher(m, sn).value;
            if (first || v > srhs) { srhs = v; first = false; }
        }
        CHECK(slhs <= srhs);
    }
}
