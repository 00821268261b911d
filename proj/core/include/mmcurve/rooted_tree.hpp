#pragma once

#include <string>
#include <vector>

#include <mmcurve/couplings.hpp>

namespace mmcurve {

// Unlabelled rooted tree; children kept sorted by canonical encoding.
struct RootedTree {
    std::vector<RootedTree> children;

    int vertices() const;
    // "(" + children encodings + ")", children in sorted order.
    std::string encode() const;
};

// All unlabelled rooted trees with exactly n vertices, in canonical order.
std::vector<RootedTree> enumerate_rooted_trees(int n);

// |Aut| of the tree with `root_legs` interchangeable marked legs attached at the root.
Rational automorphism_count(const RootedTree& tree, int root_legs = 0);

inline constexpr int kMaxTreeEdges = 8;

// Sum over type-k trees of (prod over vertices of t_{valence-1}) / |Aut|, for trees with at
// most max_edges edges counting the k+1 marked legs at the root. Equals I_k / (k+1)!.
PSeries tree_oracle(int k, int max_edges, const CouplingFrame& frame);

} // namespace mmcurve
