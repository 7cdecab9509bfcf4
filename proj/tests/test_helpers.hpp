#pragma once

#include <cmath>
#include <functional>
#include <map>
#include <set>
#include <vector>

#include "mgraph/measure.hpp"
#include "mgraph/subset.hpp"

namespace mgraph::testing {

inline MetricGraph segmentGraph(double length = 1.0) {
    return MetricGraph({}, {{"e0", "a", "b", length}});
}

inline MetricGraph triangleGraph() {
    return MetricGraph({}, {{"ab", "a", "b", 1.0}, {"bc", "b", "c", 1.0}, {"ca", "c", "a", 1.0}});
}

// Brute-force point distance: enumerate all simple vertex paths between the
// anchor vertices of x and y (plus same-edge travel). Independent of the
// Dijkstra implementation.
inline double bruteForceDistance(const MetricGraph& g, const GraphPoint& xIn, const GraphPoint& yIn) {
    GraphPoint x = g.canonical(xIn), y = g.canonical(yIn);
    if (x == y) return 0.0;
    struct Anchor {
        VertexId v;
        double cost;
    };
    auto anchors = [&](const GraphPoint& p) -> std::vector<Anchor> {
        if (p.isVertex()) return {{p.vertex(), 0.0}};
        const Edge& e = g.edge(p.edge());
        return {{e.from, p.offset()}, {e.to, e.length - p.offset()}};
    };
    double best = std::numeric_limits<double>::infinity();
    if (!x.isVertex() && !y.isVertex() && x.edge() == y.edge()) best = std::fabs(x.offset() - y.offset());

    // DFS over simple vertex paths, tracking the cheapest edge between
    // consecutive vertices
    std::function<void(VertexId, VertexId, double, std::set<VertexId>&, double, double&)> dfs =
        [&](VertexId cur, VertexId target, double cost, std::set<VertexId>& seen, double tail, double& out) {
            if (cur == target) {
                out = std::min(out, cost + tail);
                return;
            }
            for (auto [eid, side] : g.incident(cur)) {
                const Edge& e = g.edge(eid);
                VertexId nxt = e.endpoint(1 - side);
                if (e.isLoop() || seen.count(nxt)) continue;
                seen.insert(nxt);
                dfs(nxt, target, cost + e.length, seen, tail, out);
                seen.erase(nxt);
            }
        };
    for (const Anchor& ax : anchors(x)) {
        for (const Anchor& ay : anchors(y)) {
            std::set<VertexId> seen{ax.v};
            double out = std::numeric_limits<double>::infinity();
            dfs(ax.v, ay.v, ax.cost, seen, ay.cost, out);
            best = std::min(best, out);
        }
    }
    return best;
}

// Component count and total length of a subset by flood fill over a fine
// discretization; independent of the interval-based component machinery.
struct DiscretizedComponents {
    int count = 0;
    std::vector<double> lengths;  // descending
};

inline DiscretizedComponents discretizedComponents(const Subset& s, int cellsPerEdge = 2000) {
    const MetricGraph& g = s.graph();
    // sample points: cell midpoints that belong to s, vertices that belong
    struct Node {
        GraphPoint p;
        double weight;
    };
    std::vector<Node> nodes;
    std::map<int, std::vector<int>> edgeCells;  // edge -> node indices in order
    std::map<int, int> vertexNode;
    for (EdgeId e = 0; e < g.edgeCount(); ++e) {
        double len = g.edge(e).length;
        double h = len / cellsPerEdge;
        for (int k = 0; k < cellsPerEdge; ++k) {
            GraphPoint p = GraphPoint::onEdge(e, (k + 0.5) * h);
            if (s.contains(p)) {
                edgeCells[e].push_back(static_cast<int>(nodes.size()));
                nodes.push_back({p, h});
            } else {
                edgeCells[e].push_back(-1);
            }
        }
    }
    for (VertexId v = 0; v < g.vertexCount(); ++v) {
        if (s.contains(GraphPoint::atVertex(v))) {
            vertexNode[v] = static_cast<int>(nodes.size());
            nodes.push_back({GraphPoint::atVertex(v), 0.0});
        }
    }
    std::vector<int> parent(nodes.size());
    for (size_t i = 0; i < nodes.size(); ++i) parent[i] = static_cast<int>(i);
    std::function<int(int)> find = [&](int a) {
        while (parent[static_cast<size_t>(a)] != a) a = parent[static_cast<size_t>(a)] = parent[static_cast<size_t>(parent[static_cast<size_t>(a)])];
        return a;
    };
    auto unite = [&](int a, int b) { parent[static_cast<size_t>(find(a))] = find(b); };
    for (EdgeId e = 0; e < g.edgeCount(); ++e) {
        const auto& cells = edgeCells[e];
        for (size_t k = 0; k + 1 < cells.size(); ++k) {
            // adjacent cells join when every excluded point between their
            // midpoints is absent
            if (cells[k] >= 0 && cells[k + 1] >= 0) {
                double lo = nodes[static_cast<size_t>(cells[k])].p.offset();
                double hi = nodes[static_cast<size_t>(cells[k + 1])].p.offset();
                bool blocked = false;
                for (const GraphPoint& q : s.excludedPoints())
                    if (!q.isVertex() && q.edge() == e && q.offset() > lo && q.offset() < hi) blocked = true;
                if (!blocked) unite(cells[k], cells[k + 1]);
            }
        }
        const Edge& ed = g.edge(e);
        if (!cells.empty() && cells.front() >= 0 && vertexNode.count(ed.from)) unite(cells.front(), vertexNode[ed.from]);
        if (!cells.empty() && cells.back() >= 0 && vertexNode.count(ed.to)) unite(cells.back(), vertexNode[ed.to]);
    }
    std::map<int, double> compLen;
    for (size_t i = 0; i < nodes.size(); ++i) compLen[find(static_cast<int>(i))] += nodes[i].weight;
    DiscretizedComponents out;
    out.count = static_cast<int>(compLen.size());
    for (auto& [root, len] : compLen) out.lengths.push_back(len);
    std::sort(out.lengths.rbegin(), out.lengths.rend());
    return out;
}

// Adaptive-free composite Simpson quadrature oracle on [lo, hi].
inline double simpson(const std::function<double(double)>& f, double lo, double hi, int panels = 4000) {
    double h = (hi - lo) / panels;
    double acc = 0.0;
    for (int k = 0; k < panels; ++k) {
        double a = lo + k * h, b = a + h, m = (a + b) / 2.0;
        acc += (h / 6.0) * (f(a) + 4.0 * f(m) + f(b));
    }
    return acc;
}

}  // namespace mgraph::testing
