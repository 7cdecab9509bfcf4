#include "mgraph/subset.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <numeric>
#include <queue>

namespace mgraph {

namespace {

// union-find over dense indices
struct UnionFind {
    std::vector<int> parent;
    explicit UnionFind(size_t n) : parent(n) { std::iota(parent.begin(), parent.end(), 0); }
    int find(int a) {
        while (parent[static_cast<size_t>(a)] != a) {
            parent[static_cast<size_t>(a)] = parent[static_cast<size_t>(parent[static_cast<size_t>(a)])];
            a = parent[static_cast<size_t>(a)];
        }
        return a;
    }
    void unite(int a, int b) { parent[static_cast<size_t>(find(a))] = find(b); }
};

}  // namespace

Subset::Subset(const MetricGraph& g)
    : g_(&g),
      intervals_(static_cast<size_t>(g.edgeCount())),
      vertexIn_(static_cast<size_t>(g.vertexCount()), 0),
      vertexTouched_(static_cast<size_t>(g.vertexCount()), 0) {}

Subset Subset::whole(const MetricGraph& g) {
    Subset s(g);
    for (EdgeId e = 0; e < g.edgeCount(); ++e) s.addInterval(e, 0.0, g.edge(e).length);
    for (VertexId v = 0; v < g.vertexCount(); ++v) s.addVertex(v);
    return s;
}

Subset Subset::singlePoint(const MetricGraph& g, const GraphPoint& pIn) {
    GraphPoint p = g.canonical(pIn);
    Subset s(g);
    if (p.isVertex())
        s.addVertex(p.vertex());
    else
        s.addInterval(p.edge(), p.offset(), p.offset());
    return s;
}

void Subset::addInterval(EdgeId e, double lo, double hi) {
    const Edge& ed = g_->edge(e);
    if (lo < 0.0 || hi > ed.length || lo > hi) fail(ErrorCode::BadInput, "interval outside edge");
    intervals_[static_cast<size_t>(e)].push_back({lo, hi});
    normalizeEdge(e);
    if (lo == 0.0) {
        vertexIn_[static_cast<size_t>(ed.from)] = 1;
        vertexTouched_[static_cast<size_t>(ed.from)] = 1;
        dropExcluded(GraphPoint::atVertex(ed.from));
    }
    if (hi == ed.length) {
        vertexIn_[static_cast<size_t>(ed.to)] = 1;
        vertexTouched_[static_cast<size_t>(ed.to)] = 1;
        dropExcluded(GraphPoint::atVertex(ed.to));
    }
    // points strictly inside the new interval are now members
    std::vector<GraphPoint> keep;
    for (const GraphPoint& q : excluded_) {
        bool covered = !q.isVertex() && q.edge() == e && q.offset() > lo && q.offset() < hi;
        if (!covered) keep.push_back(q);
    }
    excluded_ = std::move(keep);
}

void Subset::addVertex(VertexId v) {
    vertexIn_[static_cast<size_t>(v)] = 1;
    vertexTouched_[static_cast<size_t>(v)] = 1;
    dropExcluded(GraphPoint::atVertex(v));
}

void Subset::normalizeEdge(EdgeId e) {
    auto& iv = intervals_[static_cast<size_t>(e)];
    if (iv.size() < 2) return;
    std::sort(iv.begin(), iv.end(), [](const Interval& a, const Interval& b) {
        return a.lo != b.lo ? a.lo < b.lo : a.hi < b.hi;
    });
    std::vector<Interval> merged;
    for (const Interval& cur : iv) {
        if (!merged.empty() && cur.lo <= merged.back().hi)
            merged.back().hi = std::max(merged.back().hi, cur.hi);
        else
            merged.push_back(cur);
    }
    iv = std::move(merged);
}

bool Subset::isExcluded(const GraphPoint& p) const {
    return std::find(excluded_.begin(), excluded_.end(), p) != excluded_.end();
}

void Subset::noteExcluded(const GraphPoint& p) {
    if (!isExcluded(p)) {
        excluded_.push_back(p);
        std::sort(excluded_.begin(), excluded_.end());
    }
}

void Subset::dropExcluded(const GraphPoint& p) {
    excluded_.erase(std::remove(excluded_.begin(), excluded_.end(), p), excluded_.end());
}

void Subset::excludePoint(const GraphPoint& pIn) {
    GraphPoint p = g_->canonical(pIn);
    if (!closureContains(p)) fail(ErrorCode::BadInput, "excluded point outside closure");
    if (p.isVertex()) {
        vertexIn_[static_cast<size_t>(p.vertex())] = 0;
        vertexTouched_[static_cast<size_t>(p.vertex())] = 1;
    }
    noteExcluded(p);
}

void Subset::includePoint(const GraphPoint& pIn) {
    GraphPoint p = g_->canonical(pIn);
    if (p.isVertex()) {
        addVertex(p.vertex());
        return;
    }
    dropExcluded(p);
    bool covered = false;
    for (const Interval& iv : intervals_[static_cast<size_t>(p.edge())])
        if (iv.lo <= p.offset() && p.offset() <= iv.hi) covered = true;
    if (!covered) addInterval(p.edge(), p.offset(), p.offset());
}

bool Subset::contains(const GraphPoint& pIn) const {
    GraphPoint p = g_->canonical(pIn);
    if (p.isVertex()) return vertexIn_[static_cast<size_t>(p.vertex())] != 0;
    if (isExcluded(p)) return false;
    for (const Interval& iv : intervals_[static_cast<size_t>(p.edge())])
        if (iv.lo <= p.offset() && p.offset() <= iv.hi) return true;
    return false;
}

bool Subset::closureContains(const GraphPoint& pIn) const {
    GraphPoint p = g_->canonical(pIn);
    if (p.isVertex()) {
        if (vertexTouched_[static_cast<size_t>(p.vertex())]) return true;
        for (auto [eid, side] : g_->incident(p.vertex())) {
            const Edge& ed = g_->edge(eid);
            double off = side == 0 ? 0.0 : ed.length;
            for (const Interval& iv : intervals_[static_cast<size_t>(eid)])
                if (iv.lo == off || iv.hi == off) return true;
        }
        return false;
    }
    for (const Interval& iv : intervals_[static_cast<size_t>(p.edge())])
        if (iv.lo <= p.offset() && p.offset() <= iv.hi) return true;
    return isExcluded(p);
}

bool Subset::empty() const {
    for (const auto& iv : intervals_)
        if (!iv.empty()) return false;
    for (char c : vertexIn_)
        if (c) return false;
    return true;
}

double Subset::length() const {
    double total = 0.0;
    for (const auto& iv : intervals_)
        for (const Interval& i : iv) total += i.length();
    return total;
}

std::vector<GraphPoint> Subset::excludedPoints() const {
    std::vector<GraphPoint> out;
    for (const GraphPoint& p : excluded_)
        if (!contains(p)) out.push_back(p);
    return out;
}

std::vector<VertexId> Subset::includedVertices() const {
    std::vector<VertexId> out;
    for (VertexId v = 0; v < g_->vertexCount(); ++v)
        if (vertexIn_[static_cast<size_t>(v)]) out.push_back(v);
    return out;
}

int Subset::skeletonDegree(const GraphPoint& pIn) const {
    GraphPoint p = g_->canonical(pIn);
    if (p.isVertex()) {
        int deg = 0;
        for (auto [eid, side] : g_->incident(p.vertex())) {
            const Edge& ed = g_->edge(eid);
            double off = side == 0 ? 0.0 : ed.length;
            for (const Interval& iv : intervals_[static_cast<size_t>(eid)]) {
                if (iv.lo == iv.hi) continue;
                if (iv.lo == off || iv.hi == off) ++deg;
            }
        }
        return deg;
    }
    for (const Interval& iv : intervals_[static_cast<size_t>(p.edge())]) {
        if (iv.lo == iv.hi) continue;
        if (iv.lo < p.offset() && p.offset() < iv.hi) return 2;
        if (iv.lo == p.offset() || iv.hi == p.offset()) return 1;
    }
    return 0;
}

std::vector<GraphPoint> Subset::boundaryPoints() const {
    std::vector<GraphPoint> out;
    for (VertexId v = 0; v < g_->vertexCount(); ++v) {
        GraphPoint p = GraphPoint::atVertex(v);
        if (closureContains(p) && skeletonDegree(p) <= 1) out.push_back(p);
    }
    for (EdgeId e = 0; e < g_->edgeCount(); ++e) {
        const Edge& ed = g_->edge(e);
        for (const Interval& iv : intervals_[static_cast<size_t>(e)]) {
            for (double off : {iv.lo, iv.hi}) {
                if (off == 0.0 || off == ed.length) continue;  // vertex, handled above
                GraphPoint p = GraphPoint::onEdge(e, off);
                if (skeletonDegree(p) <= 1) out.push_back(p);
                if (iv.lo == iv.hi) break;
            }
        }
    }
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

Subset Subset::without(const GraphPoint& pIn) const {
    GraphPoint p = g_->canonical(pIn);
    Subset s = *this;
    if (!s.contains(p)) return s;
    s.excludePoint(p);
    return s;
}

std::vector<Subset> Subset::components() const {
    // pieces: intervals split at excluded interior offsets
    struct Piece {
        EdgeId e;
        double lo, hi;
    };
    std::vector<Piece> pieces;
    for (EdgeId e = 0; e < g_->edgeCount(); ++e) {
        for (const Interval& iv : intervals_[static_cast<size_t>(e)]) {
            std::vector<double> cuts;
            for (const GraphPoint& q : excluded_)
                if (!q.isVertex() && q.edge() == e && q.offset() > iv.lo && q.offset() < iv.hi)
                    cuts.push_back(q.offset());
            std::sort(cuts.begin(), cuts.end());
            double lo = iv.lo;
            for (double c : cuts) {
                pieces.push_back({e, lo, c});
                lo = c;
            }
            pieces.push_back({e, lo, iv.hi});
        }
    }

    std::vector<VertexId> verts = includedVertices();
    std::map<VertexId, int> vertNode;
    UnionFind uf(pieces.size() + verts.size());
    for (size_t i = 0; i < verts.size(); ++i) vertNode[verts[i]] = static_cast<int>(pieces.size() + i);

    auto joinVertex = [&](size_t pieceIdx, VertexId v) {
        auto it = vertNode.find(v);
        if (it != vertNode.end()) uf.unite(static_cast<int>(pieceIdx), it->second);
    };
    for (size_t i = 0; i < pieces.size(); ++i) {
        const Edge& ed = g_->edge(pieces[i].e);
        if (pieces[i].lo == 0.0 && contains(GraphPoint::atVertex(ed.from))) joinVertex(i, ed.from);
        if (pieces[i].hi == ed.length && contains(GraphPoint::atVertex(ed.to))) joinVertex(i, ed.to);
        // touching pieces on the same edge join only through an included point
        for (size_t j = i + 1; j < pieces.size(); ++j) {
            if (pieces[j].e != pieces[i].e) continue;
            double t = -1.0;
            if (pieces[i].hi == pieces[j].lo) t = pieces[i].hi;
            if (pieces[j].hi == pieces[i].lo) t = pieces[j].hi;
            if (t >= 0.0 && t != 0.0 && t != g_->edge(pieces[i].e).length &&
                contains(GraphPoint::onEdge(pieces[i].e, t)))
                uf.unite(static_cast<int>(i), static_cast<int>(j));
        }
    }

    std::map<int, Subset> groups;
    auto groupFor = [&](int root) -> Subset& {
        auto it = groups.find(root);
        if (it == groups.end()) it = groups.emplace(root, Subset(*g_)).first;
        return it->second;
    };
    for (size_t i = 0; i < pieces.size(); ++i)
        groupFor(uf.find(static_cast<int>(i))).addInterval(pieces[i].e, pieces[i].lo, pieces[i].hi);
    for (const auto& [v, node] : vertNode) groupFor(uf.find(node)).addVertex(v);

    std::vector<Subset> out;
    for (auto& [root, comp] : groups) {
        for (const GraphPoint& q : excluded_)
            if (comp.closureContains(q) && !contains(q)) comp.excludePoint(q);
        out.push_back(std::move(comp));
    }
    return out;
}

bool Subset::isConnected() const { return components().size() <= 1; }

double Subset::distanceWithin(const GraphPoint& xIn, const GraphPoint& yIn) const {
    GraphPoint x = g_->canonical(xIn);
    GraphPoint y = g_->canonical(yIn);
    if (!contains(x) || !contains(y)) fail(ErrorCode::PointNotOnGraph, "point not in subset");
    if (x == y) return 0.0;

    // node graph: piece endpoints plus x, y; arcs usable only through
    // included points
    struct Piece {
        EdgeId e;
        double lo, hi;
    };
    std::vector<Piece> pieces;
    for (EdgeId e = 0; e < g_->edgeCount(); ++e) {
        for (const Interval& iv : intervals_[static_cast<size_t>(e)]) {
            std::vector<double> cuts;
            for (const GraphPoint& q : excluded_)
                if (!q.isVertex() && q.edge() == e && q.offset() > iv.lo && q.offset() < iv.hi)
                    cuts.push_back(q.offset());
            for (const GraphPoint& q : {x, y})
                if (!q.isVertex() && q.edge() == e && q.offset() > iv.lo && q.offset() < iv.hi)
                    cuts.push_back(q.offset());
            std::sort(cuts.begin(), cuts.end());
            cuts.erase(std::unique(cuts.begin(), cuts.end()), cuts.end());
            double lo = iv.lo;
            for (double c : cuts) {
                pieces.push_back({e, lo, c});
                lo = c;
            }
            pieces.push_back({e, lo, iv.hi});
        }
    }

    std::map<GraphPoint, int> nodeIndex;
    auto nodeFor = [&](const GraphPoint& p) -> int {
        auto it = nodeIndex.find(p);
        if (it != nodeIndex.end()) return it->second;
        int idx = static_cast<int>(nodeIndex.size());
        nodeIndex.emplace(p, idx);
        return idx;
    };
    std::vector<std::vector<std::pair<int, double>>> adj;
    auto addArc = [&](const GraphPoint& a, const GraphPoint& b, double w) {
        int ia = nodeFor(a), ib = nodeFor(b);
        size_t need = std::max(ia, ib) + 1;
        if (adj.size() < need) adj.resize(need);
        adj[static_cast<size_t>(ia)].emplace_back(ib, w);
        adj[static_cast<size_t>(ib)].emplace_back(ia, w);
    };
    for (const Piece& pc : pieces) {
        GraphPoint a = g_->canonical(pc.e, pc.lo);
        GraphPoint b = g_->canonical(pc.e, pc.hi);
        if (contains(a) && contains(b)) addArc(a, b, pc.hi - pc.lo);
    }
    (void)nodeFor(x);
    (void)nodeFor(y);
    if (adj.size() < nodeIndex.size()) adj.resize(nodeIndex.size());

    constexpr double inf = std::numeric_limits<double>::infinity();
    std::vector<double> dist(adj.size(), inf);
    using Item = std::pair<double, int>;
    std::priority_queue<Item, std::vector<Item>, std::greater<>> heap;
    int src = nodeIndex.at(x), dst = nodeIndex.at(y);
    dist[static_cast<size_t>(src)] = 0.0;
    heap.emplace(0.0, src);
    while (!heap.empty()) {
        auto [d, v] = heap.top();
        heap.pop();
        if (d > dist[static_cast<size_t>(v)]) continue;
        for (auto [w, len] : adj[static_cast<size_t>(v)]) {
            if (d + len < dist[static_cast<size_t>(w)]) {
                dist[static_cast<size_t>(w)] = d + len;
                heap.emplace(d + len, w);
            }
        }
    }
    return dist[static_cast<size_t>(dst)];
}

void Subset::forEachInterval(const std::function<void(EdgeId, double, double)>& fn) const {
    for (EdgeId e = 0; e < g_->edgeCount(); ++e)
        for (const Interval& iv : intervals_[static_cast<size_t>(e)]) fn(e, iv.lo, iv.hi);
}

bool Subset::sameSet(const Subset& other) const {
    for (EdgeId e = 0; e < g_->edgeCount(); ++e) {
        const auto& a = intervals_[static_cast<size_t>(e)];
        const auto& b = other.intervals_[static_cast<size_t>(e)];
        if (a.size() != b.size()) return false;
        for (size_t i = 0; i < a.size(); ++i)
            if (a[i].lo != b[i].lo || a[i].hi != b[i].hi) return false;
    }
    if (vertexIn_ != other.vertexIn_) return false;
    auto activeExcluded = [](const Subset& s) {
        std::vector<GraphPoint> out;
        for (const GraphPoint& q : s.excluded_)
            if (!q.isVertex() && !s.contains(q) && s.closureContains(q)) out.push_back(q);
        std::sort(out.begin(), out.end());
        return out;
    };
    return activeExcluded(*this) == activeExcluded(other);
}

Subset complementOf(const Subset& e) {
    const MetricGraph& g = e.graph();
    Subset c(g);
    for (EdgeId eid = 0; eid < g.edgeCount(); ++eid) {
        const Edge& ed = g.edge(eid);
        double cursor = 0.0;
        for (const Interval& iv : e.edgeIntervals(eid)) {
            if (iv.lo > cursor) c.addInterval(eid, cursor, iv.lo);
            cursor = iv.hi;
        }
        if (cursor < ed.length) c.addInterval(eid, cursor, ed.length);
    }
    // membership fixes at shared closure points
    for (VertexId v = 0; v < g.vertexCount(); ++v) {
        GraphPoint p = GraphPoint::atVertex(v);
        if (e.contains(p)) {
            if (c.closureContains(p)) c.excludePoint(p);
        } else {
            c.addVertex(v);
        }
    }
    for (EdgeId eid = 0; eid < g.edgeCount(); ++eid) {
        const Edge& ed = g.edge(eid);
        for (const Interval& iv : e.edgeIntervals(eid)) {
            for (double off : {iv.lo, iv.hi}) {
                if (off == 0.0 || off == ed.length) continue;
                GraphPoint p = GraphPoint::onEdge(eid, off);
                if (e.contains(p)) {
                    if (c.closureContains(p) && c.contains(p)) c.excludePoint(p);
                }
                if (iv.lo == iv.hi) break;
            }
        }
    }
    // points excluded from e belong to its complement
    for (const GraphPoint& q : e.excludedPoints()) c.includePoint(q);
    return c;
}

std::vector<Subset> componentsOfComplement(const MetricGraph& g, const Subset& e) {
    (void)g;
    return complementOf(e).components();
}

}  // namespace mgraph
