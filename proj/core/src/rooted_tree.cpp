#include <mmcurve/rooted_tree.hpp>

#include <algorithm>
#include <functional>
#include <map>

#include <mmcurve/combinatorics.hpp>
#include <mmcurve/error.hpp>

namespace mmcurve {

int RootedTree::vertices() const
{
    int n = 1;
    for (const auto& c : children) {
        n += c.vertices();
    }
    return n;
}

std::string RootedTree::encode() const
{
    std::string s = "(";
    for (const auto& c : children) {
        s += c.encode();
    }
    return s + ")";
}

std::vector<RootedTree> enumerate_rooted_trees(int n)
{
    if (n < 1) {
        return {};
    }
    // all[i] lists every tree of i vertices.
    std::vector<std::vector<RootedTree>> all(n + 1);
    all[1].push_back(RootedTree{});
    for (int size = 2; size <= n; ++size) {
        // Flat list of smaller trees ordered by (size, position); forests are non-increasing
        // sequences of positions, which makes each multiset appear once.
        std::vector<const RootedTree*> pool;
        for (int s = 1; s < size; ++s) {
            for (const auto& t : all[s]) {
                pool.push_back(&t);
            }
        }
        std::vector<const RootedTree*> forest;
        std::function<void(int, int)> grow = [&](int remaining, int max_pos) {
            if (remaining == 0) {
                RootedTree t;
                for (const RootedTree* c : forest) {
                    t.children.push_back(*c);
                }
                std::sort(t.children.begin(), t.children.end(),
                          [](const RootedTree& a, const RootedTree& b) { return a.encode() < b.encode(); });
                all[size].push_back(std::move(t));
                return;
            }
            for (int p = max_pos; p >= 0; --p) {
                int s = pool[p]->vertices();
                if (s > remaining) {
                    continue;
                }
                forest.push_back(pool[p]);
                grow(remaining - s, p);
                forest.pop_back();
            }
        };
        grow(size - 1, static_cast<int>(pool.size()) - 1);
        std::sort(all[size].begin(), all[size].end(),
                  [](const RootedTree& a, const RootedTree& b) { return a.encode() < b.encode(); });
    }
    return all[n];
}

Rational automorphism_count(const RootedTree& tree, int root_legs)
{
    Rational aut = factorial(root_legs);
    std::map<std::string, int> classes;
    for (const auto& c : tree.children) {
        ++classes[c.encode()];
        aut *= automorphism_count(c, 0);
    }
    for (const auto& [code, mult] : classes) {
        aut *= factorial(mult);
    }
    return aut;
}

namespace {

PSeries tree_weight(const RootedTree& tree, int extra_valence, const CouplingFrame& frame,
                    const TruncationPolicy& pol)
{
    int valence = static_cast<int>(tree.children.size()) + extra_valence;
    PSeries w = frame.t(valence - 1).truncated(pol);
    for (const auto& c : tree.children) {
        if (w.is_zero()) {
            break;
        }
        w = w * tree_weight(c, 1, frame, pol);
    }
    return w;
}

} // namespace

PSeries tree_oracle(int k, int max_edges, const CouplingFrame& frame)
{
    if (k < 0) {
        throw DomainError("tree type must be non-negative");
    }
    if (max_edges > kMaxTreeEdges) {
        throw ResourceError("tree enumeration is limited to " + std::to_string(kMaxTreeEdges) + " edges");
    }
    TruncationPolicy pol = grade_policy(std::max(0, max_edges - k));
    PSeries sum(frame.table(), pol);
    // A tree with n ordinary vertices has n - 1 internal edges plus k + 1 marked legs.
    for (int n = 1; n - 1 + k + 1 <= max_edges; ++n) {
        for (const RootedTree& tree : enumerate_rooted_trees(n)) {
            PSeries w = tree_weight(tree, k + 1, frame, pol);
            if (!w.is_zero()) {
                sum += w / automorphism_count(tree, k + 1);
            }
        }
    }
    return sum;
}

} // namespace mmcurve
