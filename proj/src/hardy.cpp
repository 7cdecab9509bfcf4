#include "mgraph/hardy.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "mgraph/subset.hpp"

namespace mgraph {

RootedTree::RootedTree(const MetricGraph& t, const GraphPoint& o, PiecewiseFunction vv, PiecewiseFunction ww)
    : tree(&t), root(t.canonical(o)), v(std::move(vv)), w(std::move(ww)) {
    if (!t.isTree()) fail(ErrorCode::NotATree, "Hardy operators live on rooted trees");
    if (!v.coversGraph() || !w.coversGraph()) fail(ErrorCode::BadInput, "weights must cover the tree");
}

Subset rootPath(const RootedTree& t, const GraphPoint& xIn) {
    const MetricGraph& g = *t.tree;
    GraphPoint x = g.canonical(xIn);
    Subset path(g);
    GraphPoint cursor = x;
    // walk upward: at an interior point, step to the edge endpoint closer to
    // the root; at a vertex, step along its unique root-side edge
    for (int guard = 0; guard < 10 * (g.edgeCount() + 2); ++guard) {
        if (cursor == t.root) break;
        if (!cursor.isVertex()) {
            const Edge& ed = g.edge(cursor.edge());
            double rootOff;
            bool rootInside = !t.root.isVertex() && t.root.edge() == cursor.edge();
            if (rootInside) {
                rootOff = t.root.offset();
            } else {
                double dFrom = g.distance(t.root, GraphPoint::atVertex(ed.from));
                double dTo = g.distance(t.root, GraphPoint::atVertex(ed.to));
                rootOff = dFrom <= dTo ? 0.0 : ed.length;
            }
            path.addInterval(cursor.edge(), std::min(cursor.offset(), rootOff), std::max(cursor.offset(), rootOff));
            cursor = g.canonical(cursor.edge(), rootOff);
            if (rootInside) break;
            continue;
        }
        // vertex: find the incident edge leading toward the root
        VertexId vtx = cursor.vertex();
        double dHere = g.distance(t.root, cursor);
        bool stepped = false;
        for (auto [eid, side] : g.incident(vtx)) {
            const Edge& ed = g.edge(eid);
            VertexId other = ed.endpoint(1 - side);
            if (!t.root.isVertex() && t.root.edge() == eid) {
                // root sits on this edge
                double vOff = side == 0 ? 0.0 : ed.length;
                path.addInterval(eid, std::min(vOff, t.root.offset()), std::max(vOff, t.root.offset()));
                cursor = t.root;
                stepped = true;
                break;
            }
            double dOther = g.distance(t.root, GraphPoint::atVertex(other));
            if (dOther < dHere - 1e-15 * (1.0 + dHere)) {
                path.addInterval(eid, 0.0, ed.length);
                cursor = GraphPoint::atVertex(other);
                stepped = true;
                break;
            }
        }
        if (!stepped) fail(ErrorCode::Internal, "root path walk stalled");
    }
    if (x.isVertex())
        path.addVertex(x.vertex());
    else if (path.edgeIntervals(x.edge()).empty())
        path.addInterval(x.edge(), x.offset(), x.offset());
    if (t.root.isVertex()) path.addVertex(t.root.vertex());
    return path;
}

DiscreteOperator discretize(const RootedTree& t, int cellsPerUnitLength) {
    const MetricGraph& g = *t.tree;
    if (cellsPerUnitLength < 1) fail(ErrorCode::BadInput, "mesh must be positive");
    DiscreteOperator op;
    for (EdgeId e = 0; e < g.edgeCount(); ++e) {
        double len = g.edge(e).length;
        int cells = static_cast<int>(std::lround(cellsPerUnitLength * len));
        if (cells < 4) fail(ErrorCode::MeshTooCoarse, "edge '" + g.edgeLabel(e) + "' has fewer than 4 cells");
        double h = len / cells;
        for (int k = 0; k < cells; ++k) {
            op.cellEdge.push_back(e);
            op.cellLo.push_back(k * h);
            op.cellWidth.push_back(h);
            op.cellMid.push_back(GraphPoint::onEdge(e, (k + 0.5) * h));
        }
    }
    int n = op.cellCount();
    op.matrix = Matrix(n, n);

    // midpoint weights
    std::vector<double> vMid(static_cast<size_t>(n)), wMid(static_cast<size_t>(n));
    for (int i = 0; i < n; ++i) {
        vMid[static_cast<size_t>(i)] = t.v.at(op.cellEdge[static_cast<size_t>(i)], op.cellMid[static_cast<size_t>(i)].offset());
        wMid[static_cast<size_t>(i)] = t.w.at(op.cellEdge[static_cast<size_t>(i)], op.cellMid[static_cast<size_t>(i)].offset());
    }

    for (int i = 0; i < n; ++i) {
        Subset path = rootPath(t, op.cellMid[static_cast<size_t>(i)]);
        double hi = op.cellWidth[static_cast<size_t>(i)];
        for (int j = 0; j < n; ++j) {
            EdgeId ej = op.cellEdge[static_cast<size_t>(j)];
            double lo = op.cellLo[static_cast<size_t>(j)];
            double hj = op.cellWidth[static_cast<size_t>(j)];
            // overlap of cell j with the root-to-midpoint path
            double overlap = 0.0;
            for (const Interval& iv : path.edgeIntervals(ej)) {
                double a = std::max(lo, iv.lo), b = std::min(lo + hj, iv.hi);
                if (a < b) overlap += b - a;
            }
            if (overlap > 0.0)
                op.matrix.at(i, j) = vMid[static_cast<size_t>(i)] * wMid[static_cast<size_t>(j)] * overlap *
                                     std::sqrt(hi / hj);
        }
    }
    return op;
}

std::vector<double> singularValues(const DiscreteOperator& op, int count) {
    return topSingularValues(op.matrix, count);
}

BoundCheckReport checkBound(const RootedTree& t, int nMax, int cellsPerUnitLength) {
    BoundCheckReport rep;
    Subset whole = Subset::whole(*t.tree);
    double vNorm = lpNorm(t.v, 2.0, whole);
    double wNorm = lpNorm(t.w, 2.0, whole);
    rep.normProduct = vNorm * wNorm;

    DiscreteOperator coarse = discretize(t, cellsPerUnitLength);
    DiscreteOperator fine = discretize(t, 2 * cellsPerUnitLength);
    std::vector<double> sc = singularValues(coarse, nMax);
    std::vector<double> sf = singularValues(fine, nMax);
    for (int n = 1; n <= nMax && n <= static_cast<int>(sf.size()); ++n) {
        BoundCheckRow row;
        row.n = n;
        row.singular = sf[static_cast<size_t>(n - 1)];
        row.bound = rep.normProduct / n;
        row.slack = 4.0 * std::fabs(sf[static_cast<size_t>(n - 1)] - sc[static_cast<size_t>(n - 1)]) +
                    1e-9 * rep.normProduct;
        row.pass = row.singular <= row.bound + row.slack;
        if (!row.pass) rep.pass = false;
        rep.rows.push_back(row);
    }
    return rep;
}

AsymptoticsReport checkAsymptotics(const RootedTree& t, int cellsPerUnitLength, int nHi, double alpha2) {
    AsymptoticsReport rep;
    rep.alpha2 = alpha2;
    DiscreteOperator op = discretize(t, cellsPerUnitLength);
    std::vector<double> sv = singularValues(op, nHi);
    for (int n = 1; n <= nHi; ++n) rep.samples.emplace_back(n, n * sv[static_cast<size_t>(n - 1)]);
    // Richardson in 1/n: L = 2 (2n s_2n) - (n s_n), averaged over the top pairs
    std::vector<double> extr;
    for (int n = nHi / 2; n >= std::max(4, nHi / 2 - 2); --n) {
        double a = n * sv[static_cast<size_t>(n - 1)];
        double b = 2.0 * n * sv[static_cast<size_t>(2 * n - 1)];
        extr.push_back(2.0 * b - a);
    }
    double sum = 0.0;
    for (double e : extr) sum += e;
    rep.extrapolated = sum / static_cast<double>(extr.size());

    double integral = 0.0;
    const MetricGraph& g = *t.tree;
    for (EdgeId e = 0; e < g.edgeCount(); ++e)
        for (const auto& vp : t.v.edgePieces(e))
            for (const auto& wp : t.w.edgePieces(e)) {
                double a = std::max(vp.from, wp.from), b = std::min(vp.to, wp.to);
                if (a < b) integral += std::fabs(vp.c0) * std::fabs(wp.c0) * (b - a);
            }
    rep.target = alpha2 * integral;
    rep.relError = std::fabs(rep.extrapolated - rep.target) / std::max(rep.target, 1e-300);
    rep.pass = rep.relError <= 0.05;
    return rep;
}

double alpha2FromUnitInterval(int cellsPerUnitLength, int nHi) {
    std::vector<EdgeSpec> edges{{"e0", "a", "b", 1.0}};
    MetricGraph seg({}, edges);
    PiecewiseFunction one = PiecewiseFunction::constant(seg, 1.0);
    RootedTree rt(seg, GraphPoint::atVertex(0), one, one);
    DiscreteOperator op = discretize(rt, cellsPerUnitLength);
    std::vector<double> sv = singularValues(op, nHi);
    int n = nHi / 2;
    double a = n * sv[static_cast<size_t>(n - 1)];
    double b = 2.0 * n * sv[static_cast<size_t>(2 * n - 1)];
    return 2.0 * b - a;
}

}  // namespace mgraph
