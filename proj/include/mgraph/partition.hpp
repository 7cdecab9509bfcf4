#pragma once

#include <memory>

#include "mgraph/functional.hpp"

namespace mgraph {

// Result of iteratively cutting cycle edges at their midpoints until the
// graph becomes a tree. tau maps tree points back onto the original graph;
// it is length-preserving, one-to-one off the split pairs, and glues each
// pair (x1, x2) to the original cut point.
class CutResult {
public:
    struct SplitPair {
        VertexId x1 = -1;  // tree vertex owning the cut point's mass
        VertexId x2 = -1;
        GraphPoint original;  // interior point of the original edge
        EdgeId originalEdge = -1;
    };
    struct EdgeOrigin {
        EdgeId originalEdge = -1;
        double lo = 0.0;  // tree offset t corresponds to original offset lo + t
        double hi = 0.0;
    };

    const MetricGraph& tree() const { return *tree_; }
    const MetricGraph& original() const { return *original_; }
    const std::vector<SplitPair>& splitPairs() const { return splitPairs_; }
    const std::vector<EdgeOrigin>& edgeOrigins() const { return edgeOrigins_; }
    bool isIdentity() const { return splitPairs_.empty(); }

    GraphPoint mapPoint(const GraphPoint& treePoint) const;  // tau
    // sigma: tau(E) with each cut point kept iff its x1 copy lies in E
    Subset mapSubset(const Subset& treeSubset) const;
    // pointwise preimage of a subset of the original graph; mirror copies
    // with no incident coverage are dropped
    Subset liftSubset(const Subset& graphSubset) const;

private:
    std::shared_ptr<const MetricGraph> tree_;
    const MetricGraph* original_ = nullptr;
    std::vector<SplitPair> splitPairs_;
    std::vector<EdgeOrigin> edgeOrigins_;
    friend CutResult cutCycles(const MetricGraph& g);
};

CutResult cutCycles(const MetricGraph& g);

// Functional on the cut tree that evaluates the base functional through
// sigma; equals the base functional when no cuts were needed.
FunctionalPtr liftFunctional(FunctionalPtr base, std::shared_ptr<const CutResult> cut);

// One application of the splitting step on a subtree: walks the greedy path
// from the smallest boundary point, locates the crossing of F(x) = phi(T_x^+)
// with epsilon, and returns the kept side T = T_{x*}^+ (closed at x*), the
// open remainder T' \ {x*}, and x*.
struct LemmaSplitResult {
    Subset kept;
    Subset remainder;
    GraphPoint xStar;
    double fClosedAtStar = 0.0;    // phi(T_{x*}^+)
    double phiCircAtStar = 0.0;    // max punctured branch value on the kept side
    std::vector<std::pair<double, double>> fTrace;  // (path arclength, F) samples

    LemmaSplitResult(Subset k, Subset r) : kept(std::move(k)), remainder(std::move(r)) {}
};

LemmaSplitResult lemmaSplit(const Functional& phi, const Subset& tree, double epsilon, double tol);

struct PartitionPart {
    Subset treeSide;
    Subset graphSide;
    TildeResult tilde;
    PartitionPart(Subset t, Subset g) : treeSide(std::move(t)), graphSide(std::move(g)) {}
};

struct PartitionResult {
    std::shared_ptr<const CutResult> cut;
    FunctionalPtr lifted;
    double phiTotal = 0.0;
    double bound = 0.0;  // (n+1)^{-1} phi(graph)
    int n = 0;
    std::vector<PartitionPart> parts;
    double maxTilde() const;
};

// The constructive partition: cut cycles, lift the functional, recursively
// split with epsilon = phi(current)/(budget+1), map parts back through tau.
PartitionResult partitionGraph(const MetricGraph& g, FunctionalPtr phi, int n, double tol = 1e-10);

// Tree-side recursion on an explicit ground set, exposed for tests.
std::vector<Subset> partitionSubtree(const Functional& phi, const Subset& ground, int budget, double tol);

struct VerifyReport {
    bool pass = true;
    std::vector<std::string> failures;
    double bound = 0.0;
    struct PartInfo {
        double tilde = 0.0;
        GraphPoint minimizer;
        double slack = 0.0;  // bound - tilde
        bool jumpFlag = false;
    };
    std::vector<PartInfo> parts;
    void requirePass() const;
};

// Checks disjointness, exact cover, k <= n, and the per-part tree-side
// tilde-phi bound (n+1)^{-1} phi(graph) within relative tolerance relTol.
VerifyReport verifyPartition(const MetricGraph& g, FunctionalPtr phi, const std::vector<Subset>& graphParts,
                             int n, double tol = 1e-10, double relTol = 1e-8);

}  // namespace mgraph
