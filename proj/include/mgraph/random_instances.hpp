#pragma once

#include <memory>
#include <random>

#include "mgraph/functional.hpp"

namespace mgraph {

using Rng = std::mt19937_64;

// Random compact connected multigraph: a spanning tree plus optional extra
// edges (parallel edges and loops allowed), at most maxEdges edges.
MetricGraph randomGraph(Rng& rng, int maxEdges, bool allowCycles);

// Atoms plus piecewise-constant density; either part may be empty unless
// forced. Always has positive total mass.
Measure randomMeasure(Rng& rng, const MetricGraph& g, bool allowAtoms);

PiecewiseFunction randomPiecewiseConstant(Rng& rng, const MetricGraph& g, double lo, double hi, int maxPieces);

// Continuous piecewise-linear function (random vertex values, random
// interior breakpoints).
PiecewiseFunction randomContinuousPiecewiseLinear(Rng& rng, const MetricGraph& g, int maxBreaks);

// Functional drawn from the built-in catalog (length, product, phi_mu,
// phi_theta), with random parameters.
FunctionalPtr randomFunctional(Rng& rng, const MetricGraph& g, bool allowAtoms);

// Random connected subset of a tree graph (a subtree, possibly with open
// endpoints).
Subset randomSubtree(Rng& rng, const MetricGraph& tree);

// Exact partition of a connected subset into connected pieces by repeated
// point splits; works on any graph.
std::vector<Subset> randomPartitionOf(Rng& rng, const Subset& base, int maxPieces);

GraphPoint randomPointIn(Rng& rng, const Subset& s);

}  // namespace mgraph
