#pragma once

#include <functional>
#include <vector>

#include "mgraph/graph.hpp"

namespace mgraph {

// Closed subinterval [lo, hi] of an edge; lo == hi encodes a single point.
struct Interval {
    double lo = 0.0;
    double hi = 0.0;
    double length() const { return hi - lo; }
};

// A finite union of closed edge intervals and vertices, minus a finite set of
// excluded closure points. This realizes the "connected, not necessarily
// closed" sets: the closure is the interval/vertex skeleton, and the excluded
// list is the (finite) part of the closure that the set does not contain.
// Connectivity is a property checked on demand, not an invariant of the type;
// functional evaluation is well defined for disconnected unions too.
class Subset {
public:
    explicit Subset(const MetricGraph& g);
    static Subset whole(const MetricGraph& g);
    static Subset singlePoint(const MetricGraph& g, const GraphPoint& p);

    const MetricGraph& graph() const { return *g_; }

    void addInterval(EdgeId e, double lo, double hi);  // includes touched vertices
    void addVertex(VertexId v);
    void excludePoint(const GraphPoint& p);  // p must lie in the closure
    void includePoint(const GraphPoint& p);

    bool contains(const GraphPoint& p) const;
    bool closureContains(const GraphPoint& p) const;
    bool empty() const;
    double length() const;

    const std::vector<Interval>& edgeIntervals(EdgeId e) const { return intervals_.at(static_cast<size_t>(e)); }
    std::vector<GraphPoint> excludedPoints() const;
    std::vector<VertexId> includedVertices() const;

    // Degree of a closure point with respect to the skeleton.
    int skeletonDegree(const GraphPoint& p) const;
    // Closure points of skeleton degree <= 1, ordered (vertices first by
    // index, then edge points by edge/offset).
    std::vector<GraphPoint> boundaryPoints() const;

    Subset without(const GraphPoint& p) const;  // removes a single point
    std::vector<Subset> components() const;     // connected components of the point set
    bool isConnected() const;

    // Shortest-path distance within the subset's point set (infinity when x
    // and y lie in different components). Exact, no discretization.
    double distanceWithin(const GraphPoint& x, const GraphPoint& y) const;

    void forEachInterval(const std::function<void(EdgeId, double, double)>& fn) const;

    bool sameSet(const Subset& other) const;

private:
    const MetricGraph* g_;
    std::vector<std::vector<Interval>> intervals_;  // per edge, sorted, non-overlapping
    std::vector<char> vertexIn_;                    // membership of each vertex point
    std::vector<char> vertexTouched_;               // vertex lies in the skeleton closure
    std::vector<GraphPoint> excluded_;              // canonical, sorted

    void normalizeEdge(EdgeId e);
    bool isExcluded(const GraphPoint& p) const;
    void noteExcluded(const GraphPoint& p);
    void dropExcluded(const GraphPoint& p);
    friend class SubsetBuilder;
};

// List the maximal connected components of the complement of E.
std::vector<Subset> componentsOfComplement(const MetricGraph& g, const Subset& e);

Subset complementOf(const Subset& e);

}  // namespace mgraph
