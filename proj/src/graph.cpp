#include "mgraph/graph.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <queue>

namespace mgraph {

const char* errorCodeName(ErrorCode code) {
    switch (code) {
        case ErrorCode::DisconnectedGraph: return "DisconnectedGraph";
        case ErrorCode::NonpositiveLength: return "NonpositiveLength";
        case ErrorCode::DuplicateId: return "DuplicateId";
        case ErrorCode::PointNotOnGraph: return "PointNotOnGraph";
        case ErrorCode::UnboundedWeight: return "UnboundedWeight";
        case ErrorCode::DiscontinuousInput: return "DiscontinuousInput";
        case ErrorCode::AtomicFirstMeasure: return "AtomicFirstMeasure";
        case ErrorCode::WeightNotIntegrable: return "WeightNotIntegrable";
        case ErrorCode::NotATree: return "NotATree";
        case ErrorCode::EpsilonOutOfRange: return "EpsilonOutOfRange";
        case ErrorCode::MeshTooCoarse: return "MeshTooCoarse";
        case ErrorCode::NoConvergence: return "NoConvergence";
        case ErrorCode::VerificationFailed: return "VerificationFailed";
        case ErrorCode::BadInput: return "BadInput";
        case ErrorCode::Internal: return "Internal";
    }
    return "Unknown";
}

MetricGraph::MetricGraph(std::vector<std::string> vertexLabels, const std::vector<EdgeSpec>& edgeSpecs) {
    if (edgeSpecs.empty()) fail(ErrorCode::BadInput, "graph needs at least one edge");

    std::map<std::string, VertexId> vertexIndex;
    auto internVertex = [&](const std::string& label) -> VertexId {
        auto it = vertexIndex.find(label);
        if (it != vertexIndex.end()) return it->second;
        VertexId v = static_cast<VertexId>(vertexLabels_.size());
        vertexLabels_.push_back(label);
        vertexIndex.emplace(label, v);
        return v;
    };
    for (const auto& label : vertexLabels) {
        if (vertexIndex.count(label)) fail(ErrorCode::DuplicateId, "duplicate vertex id '" + label + "'");
        internVertex(label);
    }

    std::map<std::string, EdgeId> edgeIndex;
    for (const auto& spec : edgeSpecs) {
        if (!(spec.length > 0.0) || !std::isfinite(spec.length))
            fail(ErrorCode::NonpositiveLength, "edge '" + spec.label + "' has non-positive length");
        std::string label = spec.label.empty() ? "e" + std::to_string(edges_.size()) : spec.label;
        if (edgeIndex.count(label)) fail(ErrorCode::DuplicateId, "duplicate edge id '" + label + "'");
        Edge e;
        e.id = static_cast<EdgeId>(edges_.size());
        e.from = internVertex(spec.from);
        e.to = internVertex(spec.to);
        e.length = spec.length;
        edgeIndex.emplace(label, e.id);
        edgeLabels_.push_back(label);
        edges_.push_back(e);
        totalLength_ += e.length;
    }

    incident_.assign(vertexLabels_.size(), {});
    for (const Edge& e : edges_) {
        incident_[static_cast<size_t>(e.from)].emplace_back(e.id, 0);
        incident_[static_cast<size_t>(e.to)].emplace_back(e.id, 1);
    }

    // connectivity
    std::vector<char> seen(vertexLabels_.size(), 0);
    std::vector<VertexId> stack{0};
    seen[0] = 1;
    while (!stack.empty()) {
        VertexId v = stack.back();
        stack.pop_back();
        for (auto [eid, side] : incident_[static_cast<size_t>(v)]) {
            VertexId w = edges_[static_cast<size_t>(eid)].endpoint(1 - side);
            if (!seen[static_cast<size_t>(w)]) {
                seen[static_cast<size_t>(w)] = 1;
                stack.push_back(w);
            }
        }
    }
    for (size_t v = 0; v < seen.size(); ++v)
        if (!seen[v]) fail(ErrorCode::DisconnectedGraph, "vertex '" + vertexLabels_[v] + "' unreachable");
}

MetricGraph buildGraph(const std::vector<EdgeSpec>& edgeSpecs) { return MetricGraph({}, edgeSpecs); }

std::optional<VertexId> MetricGraph::findVertex(const std::string& label) const {
    for (size_t v = 0; v < vertexLabels_.size(); ++v)
        if (vertexLabels_[v] == label) return static_cast<VertexId>(v);
    return std::nullopt;
}

std::optional<EdgeId> MetricGraph::findEdge(const std::string& label) const {
    for (size_t e = 0; e < edgeLabels_.size(); ++e)
        if (edgeLabels_[e] == label) return static_cast<EdgeId>(e);
    return std::nullopt;
}

std::vector<VertexId> MetricGraph::boundaryVertices() const {
    std::vector<VertexId> out;
    for (VertexId v = 0; v < vertexCount(); ++v)
        if (degree(v) == 1) out.push_back(v);
    return out;
}

GraphPoint MetricGraph::canonical(EdgeId e, double offset) const {
    const Edge& ed = edge(e);
    if (offset < 0.0 || offset > ed.length)
        fail(ErrorCode::PointNotOnGraph, "offset " + std::to_string(offset) + " outside edge");
    if (offset == 0.0) return GraphPoint::atVertex(ed.from);
    if (offset == ed.length) return GraphPoint::atVertex(ed.to);
    return GraphPoint::onEdge(e, offset);
}

GraphPoint MetricGraph::canonical(const GraphPoint& p) const {
    if (p.isVertex()) {
        if (p.vertex() < 0 || p.vertex() >= vertexCount()) fail(ErrorCode::PointNotOnGraph, "bad vertex index");
        return p;
    }
    if (p.edge() < 0 || p.edge() >= edgeCount()) fail(ErrorCode::PointNotOnGraph, "bad edge index");
    return canonical(p.edge(), p.offset());
}

void MetricGraph::checkPoint(const GraphPoint& p) const { (void)canonical(p); }

std::vector<double> MetricGraph::vertexDistances(VertexId source) const {
    constexpr double inf = std::numeric_limits<double>::infinity();
    std::vector<double> dist(static_cast<size_t>(vertexCount()), inf);
    using Item = std::pair<double, VertexId>;
    std::priority_queue<Item, std::vector<Item>, std::greater<>> heap;
    dist[static_cast<size_t>(source)] = 0.0;
    heap.emplace(0.0, source);
    while (!heap.empty()) {
        auto [d, v] = heap.top();
        heap.pop();
        if (d > dist[static_cast<size_t>(v)]) continue;
        for (auto [eid, side] : incident_[static_cast<size_t>(v)]) {
            VertexId w = edges_[static_cast<size_t>(eid)].endpoint(1 - side);
            double nd = d + edges_[static_cast<size_t>(eid)].length;
            if (nd < dist[static_cast<size_t>(w)]) {
                dist[static_cast<size_t>(w)] = nd;
                heap.emplace(nd, w);
            }
        }
    }
    return dist;
}

double MetricGraph::distance(const GraphPoint& xIn, const GraphPoint& yIn) const {
    GraphPoint x = canonical(xIn);
    GraphPoint y = canonical(yIn);
    if (x == y) return 0.0;

    // anchor points to vertices with offsets
    struct Anchor {
        VertexId v;
        double cost;
    };
    auto anchors = [&](const GraphPoint& p) -> std::vector<Anchor> {
        if (p.isVertex()) return {{p.vertex(), 0.0}};
        const Edge& e = edge(p.edge());
        return {{e.from, p.offset()}, {e.to, e.length - p.offset()}};
    };

    double best = std::numeric_limits<double>::infinity();
    // same-edge direct travel (both directions matter for loops)
    if (!x.isVertex() && !y.isVertex() && x.edge() == y.edge())
        best = std::fabs(x.offset() - y.offset());

    for (const Anchor& ax : anchors(x)) {
        std::vector<double> dist = vertexDistances(ax.v);
        for (const Anchor& ay : anchors(y))
            best = std::min(best, ax.cost + dist[static_cast<size_t>(ay.v)] + ay.cost);
    }
    return best;
}

bool MetricGraph::isTree() const {
    if (edgeCount() != vertexCount() - 1) return false;
    for (const Edge& e : edges_)
        if (e.isLoop()) return false;
    return true;
}

std::optional<EdgeId> MetricGraph::findCycleEdge() const {
    // Bridges via DFS low-link; parallel edges are handled by skipping the
    // traversed edge id (not the parent vertex).
    int n = vertexCount();
    std::vector<int> disc(static_cast<size_t>(n), -1), low(static_cast<size_t>(n), 0);
    std::vector<char> isBridge(static_cast<size_t>(edgeCount()), 0);
    int timer = 0;

    struct Frame {
        VertexId v;
        EdgeId viaEdge;
        size_t nextIncident;
    };
    std::vector<Frame> stack;
    for (VertexId root = 0; root < n; ++root) {
        if (disc[static_cast<size_t>(root)] >= 0) continue;
        disc[static_cast<size_t>(root)] = low[static_cast<size_t>(root)] = timer++;
        stack.push_back({root, -1, 0});
        while (!stack.empty()) {
            Frame& f = stack.back();
            const auto& inc = incident_[static_cast<size_t>(f.v)];
            if (f.nextIncident < inc.size()) {
                auto [eid, side] = inc[f.nextIncident++];
                if (eid == f.viaEdge) continue;
                const Edge& e = edges_[static_cast<size_t>(eid)];
                if (e.isLoop()) continue;  // loops are never bridges
                VertexId w = e.endpoint(1 - side);
                if (disc[static_cast<size_t>(w)] < 0) {
                    disc[static_cast<size_t>(w)] = low[static_cast<size_t>(w)] = timer++;
                    stack.push_back({w, eid, 0});
                } else {
                    low[static_cast<size_t>(f.v)] = std::min(low[static_cast<size_t>(f.v)], disc[static_cast<size_t>(w)]);
                }
            } else {
                if (f.viaEdge >= 0) {
                    const Edge& e = edges_[static_cast<size_t>(f.viaEdge)];
                    VertexId child = f.v;
                    VertexId parent = (e.from == child && e.to != child) ? e.to : e.from;
                    // identify the parent as the other endpoint of viaEdge
                    if (stack.size() >= 2) parent = stack[stack.size() - 2].v;
                    if (low[static_cast<size_t>(child)] > disc[static_cast<size_t>(parent)])
                        isBridge[static_cast<size_t>(f.viaEdge)] = 1;
                    low[static_cast<size_t>(parent)] = std::min(low[static_cast<size_t>(parent)], low[static_cast<size_t>(child)]);
                }
                stack.pop_back();
            }
        }
    }

    for (EdgeId e = 0; e < edgeCount(); ++e)
        if (edges_[static_cast<size_t>(e)].isLoop() || !isBridge[static_cast<size_t>(e)]) return e;
    return std::nullopt;
}

}  // namespace mgraph
