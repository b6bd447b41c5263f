#pragma once

#include "mono/transforms.hpp"

#include <functional>
#include <map>
#include <memory>
#include <mutex>

namespace mono {

struct MonomializeConfig {
    unsigned max_depth = 64;
    unsigned trunc = 16;
    std::vector<Rational> lambda_seed = {rat(1), rat(-1)};
};

// The well-founded measure of the recursion: ambient level, regularity
// order, minimal exponent tuple. Lexicographic, recorded per stage.
struct TerminationMeasure {
    unsigned level;
    std::optional<unsigned> d;
    std::optional<RationalExponent> beta;
    std::string to_string() const;
};

struct TreeNode;
using NodePtr = std::shared_ptr<TreeNode>;

struct LeafChildren {
    std::vector<NormalCertificate> certificates; // one per series_state entry
};

struct ExpandedChildren {
    std::vector<NodePtr> children;
};

// A blow-up branching x_i = x_j'(lambda + x_i'), one branch per lambda in
// R u {inf}; children materialize on demand and are memoized.
struct LambdaFamilyChildren {
    unsigned i, j;
    std::map<Lambda, NodePtr> expanded;
    std::function<NodePtr(const Lambda&)> expander;
    std::shared_ptr<std::mutex> mtx = std::make_shared<std::mutex>();
};

struct TreeNode {
    std::vector<Series> series_state;
    std::optional<ElementaryTransform> edge_in;
    std::optional<TerminationMeasure> measure;
    std::variant<ExpandedChildren, LambdaFamilyChildren, LeafChildren> children;

    bool is_leaf() const { return std::holds_alternative<LeafChildren>(children); }
    bool is_family() const { return std::holds_alternative<LambdaFamilyChildren>(children); }
};

// Runs the normalization recursion on the targets (together with the
// tracked coordinate variables X_1..X_{n-1}), producing a lazy tree whose
// expanded leaves certify every tracked series normal. Blow-up families
// initially expand {0, inf} plus the seed values.
NodePtr monomialize(const std::vector<Series>& targets, const MonomializeConfig& cfg = {});

// Child of a blow-up family for one branch value, memoized.
NodePtr expand_lambda(const NodePtr& node, const Lambda& lambda);

struct StarCheckReport {
    std::vector<std::string> violations;
    bool ok() const { return violations.empty(); }
};

// Verifies, for every blow-up edge, that the critical variable's image is
// normal at every expanded leaf below the edge.
StarCheckReport star_check(const NodePtr& root);

// Prefix of {lambda=0} blow-ups (computed combinatorially on the exponent
// tuples) after which the tuples are pairwise componentwise-comparable.
std::pair<TransformPath, std::vector<RationalExponent>>
linearize_exponents(std::vector<RationalExponent> tuples);

struct ChartAtPoint {
    TransformPath path;
    std::vector<Rational> preimage;
    std::vector<int> quadrant; // signs of the preimage coordinates
    std::vector<NormalCertificate> certificates;
};

// Selects the single branch covering p (choosing lambda = p_i / p_j at
// each blow-up family) and returns it with the preimage of p.
ChartAtPoint chart_at_point(const std::vector<Series>& targets, const std::vector<Rational>& p,
                            const MonomializeConfig& cfg = {});

// Depth-first walk over the expanded part of the tree; calls fn at every
// expanded leaf with the edge path from the root.
void for_each_expanded_leaf(const NodePtr& root,
                            const std::function<void(const TransformPath&, const TreeNode&)>& fn);

} // namespace mono
