#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace mgraph {

// All errors thrown by the library carry one of these codes so the CLI can
// map them to diagnostics and exit codes.
enum class ErrorCode {
    DisconnectedGraph,
    NonpositiveLength,
    DuplicateId,
    PointNotOnGraph,
    UnboundedWeight,
    DiscontinuousInput,
    AtomicFirstMeasure,
    WeightNotIntegrable,
    NotATree,
    EpsilonOutOfRange,
    MeshTooCoarse,
    NoConvergence,
    VerificationFailed,
    BadInput,
    Internal,
};

class Error : public std::runtime_error {
public:
    Error(ErrorCode code, const std::string& what) : std::runtime_error(what), code_(code) {}
    ErrorCode code() const { return code_; }

private:
    ErrorCode code_;
};

[[noreturn]] inline void fail(ErrorCode code, const std::string& msg) { throw Error(code, msg); }

const char* errorCodeName(ErrorCode code);

// Vertices and edges are addressed by dense indices (0-based, in declaration
// order). User-facing labels are kept alongside for reports; all tie-breaking
// rules ("smallest id") refer to the dense index.
using VertexId = int;
using EdgeId = int;

struct Edge {
    EdgeId id = -1;
    VertexId from = -1;
    VertexId to = -1;
    double length = 0.0;
    bool isLoop() const { return from == to; }
    // offset 0 sits at `from`, offset `length` at `to`
    VertexId endpoint(int side) const { return side == 0 ? from : to; }
};

struct EdgeSpec {
    std::string label;
    std::string from;
    std::string to;
    double length = 0.0;
};

// A location on the graph. Vertex locations have a single canonical
// representation (vertex index), independent of incident edges.
class GraphPoint {
public:
    GraphPoint() = default;
    static GraphPoint atVertex(VertexId v) {
        GraphPoint p;
        p.vertex_ = v;
        return p;
    }
    static GraphPoint onEdge(EdgeId e, double offset) {
        GraphPoint p;
        p.edge_ = e;
        p.offset_ = offset;
        return p;
    }
    bool isVertex() const { return vertex_ >= 0; }
    VertexId vertex() const { return vertex_; }
    EdgeId edge() const { return edge_; }
    double offset() const { return offset_; }

    friend bool operator==(const GraphPoint& a, const GraphPoint& b) {
        return a.vertex_ == b.vertex_ && a.edge_ == b.edge_ && a.offset_ == b.offset_;
    }
    friend bool operator!=(const GraphPoint& a, const GraphPoint& b) { return !(a == b); }
    friend bool operator<(const GraphPoint& a, const GraphPoint& b) {
        if (a.isVertex() != b.isVertex()) return a.isVertex();  // vertices order first
        if (a.isVertex()) return a.vertex_ < b.vertex_;
        if (a.edge_ != b.edge_) return a.edge_ < b.edge_;
        return a.offset_ < b.offset_;
    }

private:
    VertexId vertex_ = -1;
    EdgeId edge_ = -1;
    double offset_ = 0.0;
};

// Compact connected metric multigraph. Loops and parallel edges are allowed.
// Immutable after construction.
class MetricGraph {
public:
    MetricGraph(std::vector<std::string> vertexLabels, const std::vector<EdgeSpec>& edgeSpecs);

    int vertexCount() const { return static_cast<int>(vertexLabels_.size()); }
    int edgeCount() const { return static_cast<int>(edges_.size()); }
    const Edge& edge(EdgeId e) const { return edges_.at(static_cast<size_t>(e)); }
    const std::vector<Edge>& edges() const { return edges_; }
    const std::string& vertexLabel(VertexId v) const { return vertexLabels_.at(static_cast<size_t>(v)); }
    const std::string& edgeLabel(EdgeId e) const { return edgeLabels_.at(static_cast<size_t>(e)); }
    std::optional<VertexId> findVertex(const std::string& label) const;
    std::optional<EdgeId> findEdge(const std::string& label) const;

    double totalLength() const { return totalLength_; }
    int degree(VertexId v) const { return static_cast<int>(incident_.at(static_cast<size_t>(v)).size()); }
    // incident edges as (edge, side) pairs; a loop contributes both sides
    const std::vector<std::pair<EdgeId, int>>& incident(VertexId v) const {
        return incident_.at(static_cast<size_t>(v));
    }
    std::vector<VertexId> boundaryVertices() const;  // degree-1 vertices

    // Canonicalizes edge offsets: offset 0 / length becomes the vertex point.
    GraphPoint canonical(EdgeId e, double offset) const;
    GraphPoint canonical(const GraphPoint& p) const;
    void checkPoint(const GraphPoint& p) const;

    double distance(const GraphPoint& x, const GraphPoint& y) const;

    bool isTree() const;
    // smallest-index edge lying on a cycle (loops included); nullopt for trees
    std::optional<EdgeId> findCycleEdge() const;

private:
    std::vector<std::string> vertexLabels_;
    std::vector<std::string> edgeLabels_;
    std::vector<Edge> edges_;
    std::vector<std::vector<std::pair<EdgeId, int>>> incident_;
    double totalLength_ = 0.0;

    std::vector<double> vertexDistances(VertexId source) const;
};

MetricGraph buildGraph(const std::vector<EdgeSpec>& edgeSpecs);

}  // namespace mgraph
