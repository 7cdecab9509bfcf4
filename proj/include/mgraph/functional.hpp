#pragma once

#include <memory>
#include <string>

#include "mgraph/measure.hpp"

namespace mgraph {

enum class FunctionalKind { Length, MeasureKind, Product, PhiU, PhiMu, PhiTheta, Lifted, Custom };

// Super-additive set function on subsets of a fixed graph. Evaluation must be
// monotone and vanish on single points (for atoms this is achieved by the
// product structure; plain measures with atoms are accepted but only the
// partition engine's punctured evaluations keep them well behaved).
class Functional {
public:
    virtual ~Functional() = default;
    virtual double eval(const Subset& e) const = 0;
    // offsets strictly inside an edge where E -> eval(E) can jump as an
    // interval endpoint sweeps through (atom locations)
    virtual std::vector<double> jumpOffsets(EdgeId e) const {
        (void)e;
        return {};
    }
    virtual FunctionalKind kind() const { return FunctionalKind::Custom; }
    virtual std::string describe() const = 0;
    virtual const MetricGraph& graph() const = 0;
};

using FunctionalPtr = std::shared_ptr<const Functional>;

FunctionalPtr makeLength(const MetricGraph& g);
FunctionalPtr makeMeasureFunctional(const Measure& mu);
// (2.4)-style product mu1(E)^alpha * mu2(E)^(1-alpha); mu1 must be atom-free
FunctionalPtr makeProduct(const Measure& mu1, const Measure& mu2, double alpha);
// ||w_a||_{p'}(E) * ||u'||_{p,a}(E); p = inf uses ||u'||_{inf,a} * int_E w_a,
// p = 1 uses the absolutely continuous form int_E w_a a |u'| dx
FunctionalPtr makePhiU(const PiecewiseFunction& u, const PiecewiseFunction& a, double p);
// ||w_a||_{p'}(E) * mu(E)^{1/p}; p = 1 uses ||w_a||_{inf,graph} * mu(E)
FunctionalPtr makePhiMu(const PiecewiseFunction& a, double p, const Measure& mu);
// |E|^{1-1/(theta p)} * mu(E)^{1/(theta p)}, theta in (0,1), p > 1/theta
FunctionalPtr makePhiTheta(double theta, double p, const Measure& mu);

// w_a = a^{-1/p} (p < inf) or a^{-1} (p = inf), as a piecewise-constant function
PiecewiseFunction sobolevWeightDual(const PiecewiseFunction& a, double p);

// Canonical split of a punctured subtree {T, x}: the branches rooted at x.
// Branch point sets are closed at x (each contains x when x is in T).
struct PuncturedTreeSplit {
    GraphPoint base;
    std::vector<Subset> branches;
};
PuncturedTreeSplit canonicalSplit(const Subset& tree, const GraphPoint& x);

// max over branches of Phi(branch \ {x}); the base point is removed from
// every branch, so atoms sitting at x count toward no branch.
double phiCirc(const Functional& phi, const Subset& tree, const GraphPoint& x);

struct TildeResult {
    double value = 0.0;
    GraphPoint minimizer;
    bool jumpAtMinimizer = false;  // one-sided limits at the minimizer differ by more than tol
};

// min over x in the closure of T of phiCirc(T, x), with a witnessing
// minimizer; exact at vertices/atom points, bisected on edge interiors.
TildeResult tildePhi(const Functional& phi, const Subset& tree, double tol);

double defaultTildeTol(const Functional& phi);

}  // namespace mgraph
