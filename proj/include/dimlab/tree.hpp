#pragma once
#include <cstddef>
#include <cstdint>
#include <vector>

#include "dimlab/errors.hpp"

namespace dimlab {

// Complete binary trees of depth d store their 2^d - 1 node values in
// canonical level order (heap layout): root at 0, children of i at 2i+1
// (direction -1) and 2i+2 (direction +1). Branches are encoded as bit
// vectors: bit t set means direction +1 at level t.

inline std::size_t tree_node_count(std::size_t depth) {
    return (std::size_t(1) << depth) - 1;
}

inline std::size_t heap_child(std::size_t node, int dir01) {
    return 2 * node + 1 + static_cast<std::size_t>(dir01);
}

inline std::size_t heap_level(std::size_t node) {
    std::size_t level = 0, v = node + 1;
    while (v >>= 1) ++level;
    return level;
}

// heap address of the prefix of `branch_bits` of length t
inline std::size_t branch_prefix_node(std::uint32_t branch_bits, std::size_t t) {
    std::size_t node = 0;
    for (std::size_t i = 0; i < t; ++i) node = heap_child(node, (branch_bits >> i) & 1u);
    return node;
}

// is `child` a strict descendant of `parent` entered through side `dir01`?
inline bool is_descendant_on_side(std::size_t parent, std::size_t child, int dir01) {
    std::size_t lp = heap_level(parent), lc = heap_level(child);
    if (lc <= lp) return false;
    std::size_t c1 = child + 1;
    std::size_t ancestor = c1 >> (lc - lp - 1);  // (i+1)-space ancestor at level lp+1
    return ancestor == 2 * (parent + 1) + static_cast<std::size_t>(dir01);
}

template <typename T>
struct BinaryTree {
    std::size_t depth = 0;
    std::vector<T> nodes;  // level order, size 2^depth - 1

    BinaryTree() = default;
    BinaryTree(std::size_t d, const T& fill) : depth(d), nodes(tree_node_count(d), fill) {}

    const T& at(std::size_t node) const { return nodes[node]; }
    T& at(std::size_t node) { return nodes[node]; }

    std::size_t num_branches() const { return std::size_t(1) << depth; }

    void validate() const {
        require(nodes.size() == tree_node_count(depth), "ShapeMismatch",
                "binary tree must have exactly 2^d - 1 nodes");
    }
};

// Order- and side-preserving embedding of a depth-d' complete tree into a
// host tree, stored as absolute host addresses in level order.
struct SubtreeEmbedding {
    std::size_t depth = 0;
    std::vector<std::size_t> host;  // level order, size 2^depth - 1

    void validate(std::size_t host_depth) const {
        require(host.size() == tree_node_count(depth), "ShapeMismatch",
                "embedding must map exactly 2^d - 1 nodes");
        std::size_t host_nodes = tree_node_count(host_depth);
        for (std::size_t a : host) {
            require(a < host_nodes, "ShapeMismatch", "embedding address out of range");
        }
        for (std::size_t level = 0; level + 1 < depth; ++level) {
            std::size_t begin = tree_node_count(level);
            std::size_t end = tree_node_count(level + 1);
            for (std::size_t node = begin; node < end; ++node)
                for (int dir = 0; dir < 2; ++dir) {
                    std::size_t child = heap_child(node, dir);
                    require(is_descendant_on_side(host[node], host[child], dir),
                            "ShapeMismatch",
                            "embedding does not preserve left/right descendants");
                }
        }
        if (depth == 1) { /* single node, nothing to check beyond range */ }
    }

    // identity prefix: node w of the host tree maps to itself
    static SubtreeEmbedding identity(std::size_t depth) {
        SubtreeEmbedding e;
        e.depth = depth;
        e.host.resize(tree_node_count(depth));
        for (std::size_t i = 0; i < e.host.size(); ++i) e.host[i] = i;
        return e;
    }

    // virtual subtree rooted at this embedding's root child on side dir01
    SubtreeEmbedding child(int dir01) const {
        require(depth >= 1, "ShapeMismatch", "cannot take child of an empty embedding");
        SubtreeEmbedding e;
        e.depth = depth - 1;
        e.host.resize(tree_node_count(e.depth));
        for (std::size_t level = 0; level + 1 < depth; ++level) {
            std::size_t count = std::size_t(1) << level;
            for (std::size_t bits = 0; bits < count; ++bits) {
                // node (level, bits) of the child = node (level+1, dir01 then bits) here
                std::size_t src = 0;
                src = heap_child(src, dir01);
                for (std::size_t t = 0; t < level; ++t)
                    src = heap_child(src, (bits >> t) & 1u);
                std::size_t dst = branch_prefix_node(static_cast<std::uint32_t>(bits), level);
                e.host[dst] = host[src];
            }
        }
        return e;
    }

    // truncate to a shallower prefix
    SubtreeEmbedding prefix(std::size_t new_depth) const {
        require(new_depth <= depth, "ShapeMismatch", "prefix deeper than embedding");
        SubtreeEmbedding e;
        e.depth = new_depth;
        e.host.assign(host.begin(), host.begin() + tree_node_count(new_depth));
        return e;
    }

    // root + two child embeddings of equal depth
    static SubtreeEmbedding combine(std::size_t root_host, const SubtreeEmbedding& left,
                                    const SubtreeEmbedding& right) {
        require(left.depth == right.depth, "ShapeMismatch",
                "combined subtrees must have equal depth");
        SubtreeEmbedding e;
        e.depth = left.depth + 1;
        e.host.resize(tree_node_count(e.depth));
        e.host[0] = root_host;
        for (std::size_t level = 0; level < left.depth; ++level) {
            std::size_t count = std::size_t(1) << level;
            for (std::size_t bits = 0; bits < count; ++bits) {
                std::size_t src = branch_prefix_node(static_cast<std::uint32_t>(bits), level);
                for (int dir = 0; dir < 2; ++dir) {
                    std::size_t dst = heap_child(0, dir);
                    for (std::size_t t = 0; t < level; ++t)
                        dst = heap_child(dst, (bits >> t) & 1u);
                    e.host[dst] = (dir == 0 ? left : right).host[src];
                }
            }
        }
        return e;
    }
};

} // namespace dimlab
