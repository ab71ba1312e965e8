#pragma once
#include <cstdint>
#include <vector>

#include "dimlab/rational.hpp"
#include "dimlab/tree.hpp"

namespace dimlab {

// Set fat-shattering witness: for each E subseteq points there is a selector
// hypothesis above s+gamma on E and below s-gamma off E.
struct SetShatterWitness {
    Rat gamma;
    std::vector<std::size_t> points;      // x indices
    std::vector<Rat> thresholds;          // aligned with points
    std::vector<std::size_t> selector;    // size 2^|points|, E bitmask -> y index
};

// Sequentially fat-shattered tree: margins gamma/2 around per-node thresholds.
struct SeqShatterWitness {
    Rat gamma;
    BinaryTree<std::size_t> points;       // x indices
    BinaryTree<Rat> thresholds;
    std::vector<std::size_t> branch_labels;  // size 2^depth, branch bits -> y index
};

struct ThresholdWitness {
    enum class Mode { Gamma, RS };
    Mode mode = Mode::Gamma;
    Rat gamma;              // Gamma mode
    Rat r, s;               // RS mode
    std::vector<std::pair<std::size_t, std::size_t>> pairs;  // (x index, y index)
};

struct GraphDimWitness {
    Rat gamma;
    std::vector<std::size_t> points;
    std::vector<Rat> targets;
    std::vector<std::size_t> selector;    // size 2^n, beta bitmask -> y index
};

struct OnlineDimWitness {
    BinaryTree<std::size_t> points;       // x indices
    BinaryTree<Rat> tau;                  // per-node weights
    std::vector<std::size_t> branch_labels;
    Rat value;                            // min over branches of the tau sum
};

// Spread-shattering witness: any two branches differ by >= eps at their last
// common node.
struct SpreadShatterWitness {
    Rat eps;
    BinaryTree<std::size_t> points;
    std::vector<std::size_t> branch_labels;
};

} // namespace dimlab
