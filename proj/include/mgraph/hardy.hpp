#pragma once

#include "mgraph/measure.hpp"
#include "mgraph/svd.hpp"

namespace mgraph {

// Compact metric tree with a selected root and integration weights. The
// operator maps f to v(x) * int_{<o,x>} f(y) w(y) dy.
struct RootedTree {
    const MetricGraph* tree = nullptr;
    GraphPoint root;
    PiecewiseFunction v;
    PiecewiseFunction w;

    RootedTree(const MetricGraph& t, const GraphPoint& o, PiecewiseFunction vv, PiecewiseFunction ww);
};

struct DiscreteOperator {
    Matrix matrix;  // scaled so its singular values approximate the L2 ones
    std::vector<GraphPoint> cellMid;
    std::vector<double> cellWidth;
    std::vector<EdgeId> cellEdge;
    std::vector<double> cellLo;
    int cellCount() const { return static_cast<int>(cellMid.size()); }
};

// Midpoint-rule discretization; every edge gets round(cellsPerUnitLength *
// length) cells and must get at least 4.
DiscreteOperator discretize(const RootedTree& t, int cellsPerUnitLength);

std::vector<double> singularValues(const DiscreteOperator& op, int count);

// Root-to-x path as a subset (closed at both ends).
Subset rootPath(const RootedTree& t, const GraphPoint& x);

struct BoundCheckRow {
    int n = 0;
    double singular = 0.0;       // fine-mesh value
    double bound = 0.0;          // ||v||_2 ||w||_2 / n
    double slack = 0.0;          // estimated discretization slack
    bool pass = false;
};
struct BoundCheckReport {
    std::vector<BoundCheckRow> rows;
    double normProduct = 0.0;
    bool pass = true;
};
BoundCheckReport checkBound(const RootedTree& t, int nMax, int cellsPerUnitLength);

struct AsymptoticsReport {
    double extrapolated = 0.0;  // Richardson limit of n * s_n
    double target = 0.0;        // alpha2 * int |v||w| dx
    double alpha2 = 0.0;
    double relError = 0.0;
    bool pass = false;          // within 5 percent
    std::vector<std::pair<int, double>> samples;  // (n, n * s_n)
};
AsymptoticsReport checkAsymptotics(const RootedTree& t, int cellsPerUnitLength, int nHi, double alpha2);

// lim n * s_n for the unit-weight operator on [0,1], extrapolated from the
// discretized spectrum; used as the asymptotic constant at p = 2.
double alpha2FromUnitInterval(int cellsPerUnitLength = 2000, int nHi = 24);

}  // namespace mgraph
