#pragma once
#include <algorithm>
#include <cstdint>
#include <functional>
#include <optional>
#include <vector>

#include "dimlab/games_loss.hpp"
#include "dimlab/types.hpp"
#include "dimlab/witness.hpp"

namespace dimlab {

// ---------------------------------------------------------------------------
// Witness verifiers: pure checks of the defining inequalities.

inline bool verify_set_shatter(const HypothesisClass& h, const SetShatterWitness& w,
                               const Rat& gamma) {
    std::size_t m = w.points.size();
    require(w.thresholds.size() == m, "ShapeMismatch", "thresholds must align with points");
    require(w.selector.size() == (std::size_t(1) << m), "ShapeMismatch",
            "selector must cover all subsets");
    for (std::size_t x : w.points)
        require(x < h.num_x(), "ShapeMismatch", "witness point out of range");
    for (std::size_t e = 0; e < w.selector.size(); ++e) {
        std::size_t y = w.selector[e];
        require(y < h.num_y(), "ShapeMismatch", "witness selector out of range");
        for (std::size_t k = 0; k < m; ++k) {
            const Rat& v = h.values[w.points[k]][y];
            if (e & (std::size_t(1) << k)) {
                if (!(v >= w.thresholds[k] + gamma)) return false;
            } else {
                if (!(v <= w.thresholds[k] - gamma)) return false;
            }
        }
    }
    return true;
}

inline bool verify_seq_shatter(const HypothesisClass& h, const SeqShatterWitness& w,
                               const Rat& gamma) {
    w.points.validate();
    w.thresholds.validate();
    std::size_t d = w.points.depth;
    require(w.thresholds.depth == d, "ShapeMismatch", "point and threshold trees must align");
    require(w.branch_labels.size() == (std::size_t(1) << d), "ShapeMismatch",
            "branch labels must cover all branches");
    for (std::size_t x : w.points.nodes)
        require(x < h.num_x(), "ShapeMismatch", "witness point out of range");
    Rat half = gamma / Rat(2);
    for (std::size_t b = 0; b < w.branch_labels.size(); ++b) {
        std::size_t y = w.branch_labels[b];
        require(y < h.num_y(), "ShapeMismatch", "branch label out of range");
        for (std::size_t t = 0; t < d; ++t) {
            std::size_t node = branch_prefix_node(static_cast<std::uint32_t>(b), t);
            const Rat& v = h.values[w.points.at(node)][y];
            const Rat& s = w.thresholds.at(node);
            if ((b >> t) & 1u) {
                if (!(v >= s + half)) return false;
            } else {
                if (!(v <= s - half)) return false;
            }
        }
    }
    return true;
}

inline bool verify_threshold(const HypothesisClass& h, const ThresholdWitness& w) {
    for (const auto& [x, y] : w.pairs)
        require(x < h.num_x() && y < h.num_y(), "ShapeMismatch", "witness pair out of range");
    std::size_t d = w.pairs.size();
    for (std::size_t i = 0; i < d; ++i)
        for (std::size_t j = i + 1; j < d; ++j) {
            auto [xi, yi] = w.pairs[i];
            auto [xj, yj] = w.pairs[j];
            if (w.mode == ThresholdWitness::Mode::Gamma) {
                if (!((h.values[xi][yj] - h.values[xj][yi]).abs() >= w.gamma)) return false;
            } else {
                if (!(h.values[xi][yj] <= w.r && h.values[xj][yi] >= w.s)) return false;
            }
        }
    return true;
}

inline bool verify_graph_dim(const HypothesisClass& h, const GraphDimWitness& w) {
    std::size_t n = w.points.size();
    require(w.targets.size() == n, "ShapeMismatch", "targets must align with points");
    require(w.selector.size() == (std::size_t(1) << n), "ShapeMismatch",
            "selector must cover all bit vectors");
    for (std::size_t beta = 0; beta < w.selector.size(); ++beta) {
        std::size_t y = w.selector[beta];
        require(y < h.num_y(), "ShapeMismatch", "selector out of range");
        for (std::size_t i = 0; i < n; ++i) {
            require(w.points[i] < h.num_x(), "ShapeMismatch", "point out of range");
            const Rat& v = h.values[w.points[i]][y];
            if (beta & (std::size_t(1) << i)) {
                if (!((v - w.targets[i]).abs() > w.gamma)) return false;  // strict
            } else {
                if (v != w.targets[i]) return false;
            }
        }
    }
    return true;
}

inline bool verify_online_witness(const HypothesisClass& h, const OnlineDimWitness& w,
                                  const LossFunction& loss, const Rat& D) {
    w.points.validate();
    w.tau.validate();
    std::size_t d = w.points.depth;
    require(w.tau.depth == d, "ShapeMismatch", "point and weight trees must align");
    require(w.branch_labels.size() == (std::size_t(1) << d), "ShapeMismatch",
            "branch labels must cover all branches");
    for (std::size_t y : w.branch_labels)
        require(y < h.num_y(), "ShapeMismatch", "branch label out of range");
    // crossing pairs, grouped per node by the distinct labels on each side
    for (std::size_t level = 0; level < d; ++level) {
        std::size_t count = std::size_t(1) << level;
        for (std::size_t bits = 0; bits < count; ++bits) {
            std::size_t node = branch_prefix_node(static_cast<std::uint32_t>(bits), level);
            std::vector<std::size_t> side[2];
            std::size_t ext_count = std::size_t(1) << (d - level - 1);
            for (int dir = 0; dir < 2; ++dir) {
                for (std::size_t ext = 0; ext < ext_count; ++ext) {
                    std::size_t branch = bits | (static_cast<std::size_t>(dir) << level) |
                                         (ext << (level + 1));
                    side[dir].push_back(w.branch_labels[branch]);
                }
                std::sort(side[dir].begin(), side[dir].end());
                side[dir].erase(std::unique(side[dir].begin(), side[dir].end()), side[dir].end());
            }
            for (std::size_t a : side[0])
                for (std::size_t b : side[1]) {
                    Rat l = loss.eval((h.values[w.points.at(node)][a] -
                                       h.values[w.points.at(node)][b]).abs());
                    if (!(l >= w.tau.at(node))) return false;
                }
        }
    }
    for (std::size_t branch = 0; branch < w.branch_labels.size(); ++branch) {
        Rat sum(0);
        for (std::size_t t = 0; t < d; ++t)
            sum += w.tau.at(branch_prefix_node(static_cast<std::uint32_t>(branch), t));
        if (!(sum > D)) return false;
    }
    return true;
}

inline bool verify_spread_shatter(const HypothesisClass& h, const BinaryTree<std::size_t>& tree,
                                  const std::vector<std::size_t>& branch_labels, const Rat& eps) {
    tree.validate();
    std::size_t d = tree.depth;
    require(branch_labels.size() == (std::size_t(1) << d), "ShapeMismatch",
            "branch labels must cover all branches");
    for (std::size_t level = 0; level < d; ++level) {
        std::size_t count = std::size_t(1) << level;
        for (std::size_t bits = 0; bits < count; ++bits) {
            std::size_t node = branch_prefix_node(static_cast<std::uint32_t>(bits), level);
            std::size_t ext_count = std::size_t(1) << (d - level - 1);
            for (std::size_t e0 = 0; e0 < ext_count; ++e0)
                for (std::size_t e1 = 0; e1 < ext_count; ++e1) {
                    std::size_t b0 = bits | (e0 << (level + 1));
                    std::size_t b1 = bits | (std::size_t(1) << level) | (e1 << (level + 1));
                    const Rat& v0 = h.values[tree.at(node)][branch_labels[b0]];
                    const Rat& v1 = h.values[tree.at(node)][branch_labels[b1]];
                    if (!((v0 - v1).abs() >= eps)) return false;
                }
        }
    }
    return true;
}

// ---------------------------------------------------------------------------
// Tree Ramsey: a k-colored tree of depth d_1+...+d_k - k + 1 contains a
// monochromatic subtree of depth d_i for some color i. Recursive blue/red
// split, iterated over colors.

namespace detail {

// two-color step: blue target p, red target q, embedding depth >= p + q - 1
template <typename Pred>
std::pair<bool, SubtreeEmbedding> mono2(const SubtreeEmbedding& e, std::size_t p, std::size_t q,
                                        Pred&& is_blue) {
    std::size_t root = e.host[0];
    bool blue = is_blue(root);
    std::size_t own_target = blue ? p : q;
    if (own_target == 1) {
        SubtreeEmbedding single;
        single.depth = 1;
        single.host = {root};
        return {blue, single};
    }
    SubtreeEmbedding left = e.child(0), right = e.child(1);
    std::size_t np = blue ? p - 1 : p;
    std::size_t nq = blue ? q : q - 1;
    auto [lb, le] = mono2(left, np, nq, is_blue);
    if (lb != blue) return {lb, le};  // found the opposite color at full target
    auto [rb, re] = mono2(right, np, nq, is_blue);
    if (rb != blue) return {rb, re};
    return {blue, SubtreeEmbedding::combine(root, le, re)};
}

} // namespace detail

inline std::pair<std::size_t, SubtreeEmbedding> monochromatic_subtree(
    const BinaryTree<std::size_t>& tree, const std::vector<std::size_t>& depths) {
    tree.validate();
    require(!depths.empty(), "ShapeMismatch", "need at least one color");
    std::size_t k = depths.size();
    std::size_t needed = 1;
    for (std::size_t d : depths) {
        require(d >= 1, "DepthTooSmall", "color target depths must be >= 1");
        needed += d - 1;
    }
    require(tree.depth >= needed, "DepthTooSmall",
            "tree depth " + std::to_string(tree.depth) + " below required " +
                std::to_string(needed));
    for (std::size_t c : tree.nodes)
        require(c >= 1 && c <= k, "ShapeMismatch", "colors must lie in {1..k}");

    // peel off colors one at a time
    std::function<std::pair<std::size_t, SubtreeEmbedding>(const SubtreeEmbedding&, std::size_t)>
        rec = [&](const SubtreeEmbedding& e, std::size_t first) -> std::pair<std::size_t, SubtreeEmbedding> {
        std::size_t remaining = k - first;  // colors first..k-1 live in e
        if (remaining == 1) {
            // all nodes colored `first`; the identity prefix works
            return {first, e.prefix(depths[first])};
        }
        std::size_t red_target = 1;
        for (std::size_t i = first + 1; i < k; ++i) red_target += depths[i] - 1;
        auto [blue, sub] = detail::mono2(e, depths[first], red_target,
                                         [&](std::size_t host) { return tree.at(host) == first + 1; });
        if (blue) return {first, sub};
        return rec(sub, first + 1);
    };
    auto [color0, emb] = rec(SubtreeEmbedding::identity(tree.depth), 0);
    return {color0 + 1, emb};  // 1-based color index
}

// ---------------------------------------------------------------------------
// (r,s)-threshold witness of length 2^{d+1}-1  ->  fat-shattered tree of depth
// d at gamma = s - r. Nodes/branches are placed by the rank of their address
// in the reverse in-order traversal (right subtree, parent, left subtree);
// per-node thresholds are (r+s)/2 with margins (s-r)/2 on each side.

inline SeqShatterWitness tree_from_rs_threshold(const HypothesisClass& h,
                                                const ThresholdWitness& w) {
    require(w.mode == ThresholdWitness::Mode::RS, "BadWitness", "need an (r,s)-mode witness");
    require(verify_threshold(h, w), "BadWitness", "threshold witness does not verify");
    std::size_t m = w.pairs.size();
    require(m >= 1, "BadWitness", "witness must be nonempty");
    std::size_t d = 0;
    while ((std::size_t(2) << (d + 1)) - 1 <= m) ++d;
    require((std::size_t(2) << d) - 1 == m, "BadWitness",
            "witness length must be exactly 2^{d+1}-1");

    Rat gamma = w.s - w.r;
    Rat mid = (w.r + w.s) / Rat(2);

    // rank all strings in {-1,1}^{<=d}: traverse right subtree, node, left subtree
    std::size_t total_depth = d + 1;  // strings of length <= d form a tree of depth d+1
    std::vector<std::size_t> rank(tree_node_count(total_depth), 0);
    std::size_t next = 0;
    std::function<void(std::size_t, std::size_t)> visit = [&](std::size_t node, std::size_t level) {
        if (level < total_depth - 1) visit(heap_child(node, 1), level + 1);
        rank[node] = next++;
        if (level < total_depth - 1) visit(heap_child(node, 0), level + 1);
    };
    visit(0, 0);

    SeqShatterWitness out;
    out.gamma = gamma;
    out.points = BinaryTree<std::size_t>(d, 0);
    out.thresholds = BinaryTree<Rat>(d, mid);
    out.branch_labels.assign(std::size_t(1) << d, 0);
    for (std::size_t node = 0; node < tree_node_count(d); ++node)
        out.points.at(node) = w.pairs[rank[node]].first;
    for (std::size_t b = 0; b < out.branch_labels.size(); ++b) {
        std::size_t node = branch_prefix_node(static_cast<std::uint32_t>(b), d);
        out.branch_labels[b] = w.pairs[rank[node]].second;
    }
    return out;
}

// ---------------------------------------------------------------------------
// Fat-shattered tree of depth (k^{d+1}-1)/(k-1)  ->  gamma-threshold witness
// of length d at scale delta. Constructive induction: pick a reference
// hypothesis, k-color the nodes by its value interval, extract a
// monochromatic subtree, recurse into the side separated from the color
// interval by at least delta.

namespace detail {

struct ShatteredView {
    const HypothesisClass* h;
    const SeqShatterWitness* w;
    SubtreeEmbedding emb;  // absolute addresses into w's tree

    // label of the host completion of the all-left branch of the embedding
    std::size_t leftmost_label() const {
        if (emb.depth == 0) return w->branch_labels[0];
        std::size_t node = emb.host[branch_prefix_node(0, emb.depth - 1)];
        // descend all-left in the host tree from below this node
        std::uint32_t branch = 0;
        std::size_t level = heap_level(node);
        // recover the host path bits of `node`
        std::size_t v = node + 1;
        for (std::size_t t = 0; t < level; ++t)
            branch |= static_cast<std::uint32_t>((v >> (level - 1 - t)) & 1u) << t;
        // extend by -1 (left = bit 0) to full host depth: bits already 0
        return w->branch_labels[branch];
    }

    // label of a host branch through the embedded node, exiting on side dir
    std::size_t completion_label(std::size_t emb_node, int dir) const {
        std::size_t host_node = emb.host[emb_node];
        std::size_t level = heap_level(host_node);
        std::uint32_t branch = 0;
        std::size_t v = host_node + 1;
        for (std::size_t t = 0; t < level; ++t)
            branch |= static_cast<std::uint32_t>((v >> (level - 1 - t)) & 1u) << t;
        branch |= static_cast<std::uint32_t>(dir) << level;
        return w->branch_labels[branch];
    }
};

inline std::size_t geometric_depth(std::size_t k, std::size_t d) {
    // (k^{d+1} - 1)/(k - 1)
    std::size_t acc = 0, pw = 1;
    for (std::size_t i = 0; i <= d; ++i) { acc += pw; pw *= k; }
    return acc;
}

inline void gamma_threshold_rec(const ShatteredView& view, std::size_t k, std::size_t d,
                                const Rat& delta,
                                std::vector<std::pair<std::size_t, std::size_t>>& out) {
    const HypothesisClass& h = *view.h;
    const SeqShatterWitness& w = *view.w;
    if (d == 1) {
        out.emplace_back(w.points.at(view.emb.host[0]), view.leftmost_label());
        return;
    }
    std::size_t q0 = geometric_depth(k, d - 1) + 1;  // per-color target depth
    // reference hypothesis and coloring by value interval [i/k,(i+1)/k), last closed
    std::size_t href = view.leftmost_label();
    auto color_of = [&](std::size_t host_node) -> std::size_t {
        const Rat& v = h.values[w.points.at(host_node)][href];
        BigInt idx = (v * Rat(static_cast<long long>(k))).floor();
        if (idx >= static_cast<long long>(k)) idx = static_cast<long long>(k) - 1;  // v == 1
        return static_cast<std::size_t>(idx.convert_to<long long>());  // 0-based
    };

    // monochromatic subtree over the embedded view, all color targets q0
    std::function<std::pair<std::size_t, SubtreeEmbedding>(const SubtreeEmbedding&, std::size_t)>
        rec = [&](const SubtreeEmbedding& e, std::size_t first) -> std::pair<std::size_t, SubtreeEmbedding> {
        std::size_t remaining = k - first;
        if (remaining == 1) return {first, e.prefix(q0)};
        std::size_t red_target = (remaining - 1) * (q0 - 1) + 1;
        auto [blue, sub] = mono2(e, q0, red_target,
                                 [&](std::size_t host) { return color_of(host) == first; });
        if (blue) return {first, sub};
        return rec(sub, first + 1);
    };
    auto [a, mono] = rec(view.emb, 0);  // 0-based color a, subtree depth q0

    std::size_t root_emb_host = mono.host[0];
    const Rat& s_root = w.thresholds.at(root_emb_host);
    Rat half = w.gamma / Rat(2);
    Rat r_cut = s_root - half, s_cut = s_root + half;
    Rat lo = Rat(static_cast<long long>(a)) / Rat(static_cast<long long>(k));
    Rat hi = Rat(static_cast<long long>(a + 1)) / Rat(static_cast<long long>(k));

    bool left_side = lo - r_cut >= delta;  // dist([0, r], I_a) >= delta
    if (!left_side)
        require(s_cut - hi >= delta, "ParameterConstraintViolated",
                "no side separated by delta (internal invariant)");

    ShatteredView sub{view.h, view.w, mono.child(left_side ? 0 : 1)};
    gamma_threshold_rec(sub, k, d - 1, delta, out);
    out.emplace_back(w.points.at(root_emb_host), href);
}

} // namespace detail

inline ThresholdWitness gamma_threshold_from_tree(const HypothesisClass& h,
                                                  const SeqShatterWitness& w, const Rat& gamma,
                                                  const Rat& delta, std::size_t k,
                                                  std::size_t d) {
    require(delta > Rat(0) && delta * Rat(2) < gamma, "ParameterConstraintViolated",
            "need 0 < delta < gamma/2");
    require(Rat(static_cast<long long>(k)) * (gamma - Rat(2) * delta) > Rat(1),
            "ParameterConstraintViolated", "need k > 1/(gamma - 2*delta)");
    require(d >= 1, "ParameterConstraintViolated", "need d >= 1");
    std::size_t needed = detail::geometric_depth(k, d);
    require(w.points.depth >= needed, "ParameterConstraintViolated",
            "witness depth " + std::to_string(w.points.depth) + " below required " +
                std::to_string(needed));
    require(w.gamma >= gamma, "ParameterConstraintViolated",
            "witness must be shattered at scale >= gamma");
    require(verify_seq_shatter(h, w, w.gamma), "BadWitness",
            "fat-shattering witness does not verify");

    detail::ShatteredView view{&h, &w, SubtreeEmbedding::identity(w.points.depth)};
    std::vector<std::pair<std::size_t, std::size_t>> pairs;
    detail::gamma_threshold_rec(view, k, d, delta, pairs);

    ThresholdWitness out;
    out.mode = ThresholdWitness::Mode::Gamma;
    out.gamma = delta;
    out.pairs = pairs;
    return out;
}

// ---------------------------------------------------------------------------
// All-ones subtree: every branch of the {0,1}-labeled tree carries >= D ones,
// so a depth-D subtree labeled entirely 1 exists. Recursive minimal-level
// construction.

namespace detail {

inline std::optional<SubtreeEmbedding> ones_rec(const BinaryTree<std::size_t>& t,
                                                const SubtreeEmbedding& e, std::size_t D) {
    if (D == 0) {
        SubtreeEmbedding empty;
        empty.depth = 0;
        return empty;
    }
    // first 1-labeled embedded node of minimal level
    std::size_t found = SIZE_MAX;
    for (std::size_t i = 0; i < e.host.size(); ++i)
        if (t.at(e.host[i]) == 1) { found = i; break; }  // level order = minimal level first
    if (found == SIZE_MAX) return std::nullopt;

    // embedded subtree rooted at `found`
    std::size_t flevel = heap_level(found);
    std::uint32_t fbits = 0;
    {
        std::size_t v = found + 1;
        for (std::size_t k = 0; k < flevel; ++k)
            fbits |= static_cast<std::uint32_t>((v >> (flevel - 1 - k)) & 1u) << k;
    }
    SubtreeEmbedding at_v;
    at_v.depth = e.depth - flevel;
    at_v.host.resize(tree_node_count(at_v.depth));
    for (std::size_t level = 0; level < at_v.depth; ++level) {
        std::size_t count = std::size_t(1) << level;
        for (std::size_t bits = 0; bits < count; ++bits) {
            std::size_t src = branch_prefix_node(fbits, flevel);
            for (std::size_t k2 = 0; k2 < level; ++k2)
                src = heap_child(src, (bits >> k2) & 1u);
            at_v.host[branch_prefix_node(static_cast<std::uint32_t>(bits), level)] = e.host[src];
        }
    }

    if (at_v.depth == 1) {
        if (D == 1) return at_v;
        return std::nullopt;
    }
    auto left = ones_rec(t, at_v.child(0), D - 1);
    if (!left) return std::nullopt;
    auto right = ones_rec(t, at_v.child(1), D - 1);
    if (!right) return std::nullopt;
    return SubtreeEmbedding::combine(at_v.host[0], *left, *right);
}

} // namespace detail

inline SubtreeEmbedding ones_subtree(const BinaryTree<std::size_t>& t, std::size_t D) {
    t.validate();
    for (std::size_t v : t.nodes)
        require(v <= 1, "ShapeMismatch", "tree labels must be 0 or 1");
    // precondition check with counterexample branch
    std::size_t branches = std::size_t(1) << t.depth;
    for (std::size_t b = 0; b < branches; ++b) {
        std::size_t ones = 0;
        for (std::size_t lvl = 0; lvl < t.depth; ++lvl)
            ones += t.at(branch_prefix_node(static_cast<std::uint32_t>(b), lvl));
        if (ones < D) {
            std::string bits;
            for (std::size_t lvl = 0; lvl < t.depth; ++lvl)
                bits += ((b >> lvl) & 1u) ? "+" : "-";
            fail("BranchDeficient", "branch " + bits + " has only " + std::to_string(ones) +
                                        " ones, need " + std::to_string(D));
        }
    }
    auto res = detail::ones_rec(t, SubtreeEmbedding::identity(t.depth), D);
    require(res.has_value(), "BranchDeficient", "all-ones subtree construction failed");
    return *res;
}

} // namespace dimlab
