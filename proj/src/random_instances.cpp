#include "mgraph/random_instances.hpp"

#include <algorithm>
#include <cmath>

namespace mgraph {

namespace {

double uniform(Rng& rng, double lo, double hi) {
    std::uniform_real_distribution<double> d(lo, hi);
    return d(rng);
}

int uniformInt(Rng& rng, int lo, int hi) {
    std::uniform_int_distribution<int> d(lo, hi);
    return d(rng);
}

}  // namespace

MetricGraph randomGraph(Rng& rng, int maxEdges, bool allowCycles) {
    int nv = uniformInt(rng, 2, std::min(8, maxEdges + 1));
    std::vector<EdgeSpec> edges;
    auto vlabel = [](int i) { return "v" + std::to_string(i); };
    for (int v = 1; v < nv; ++v) {
        int parent = uniformInt(rng, 0, v - 1);
        edges.push_back({"e" + std::to_string(edges.size()), vlabel(parent), vlabel(v), uniform(rng, 0.3, 2.0)});
    }
    if (allowCycles) {
        int extra = uniformInt(rng, 0, std::max(0, maxEdges - nv + 1));
        for (int k = 0; k < extra; ++k) {
            int a = uniformInt(rng, 0, nv - 1);
            int b = uniformInt(rng, 0, nv - 1);  // a == b makes a loop
            edges.push_back({"e" + std::to_string(edges.size()), vlabel(a), vlabel(b), uniform(rng, 0.3, 2.0)});
        }
    }
    return MetricGraph({}, edges);
}

Measure randomMeasure(Rng& rng, const MetricGraph& g, bool allowAtoms) {
    Measure mu(g);
    bool hasMass = false;
    for (EdgeId e = 0; e < g.edgeCount(); ++e) {
        int pieces = uniformInt(rng, 0, 2);
        double len = g.edge(e).length;
        double cursor = 0.0;
        for (int k = 0; k < pieces && cursor < len; ++k) {
            double to = uniform(rng, cursor, len);
            if (to <= cursor) continue;
            double value = uniform(rng, 0.0, 2.0);
            if (value > 0.0) {
                mu.addDensityPiece(e, cursor, to, value);
                hasMass = true;
            }
            cursor = to;
        }
    }
    if (allowAtoms) {
        int atoms = uniformInt(rng, 0, 3);
        for (int k = 0; k < atoms; ++k) {
            EdgeId e = uniformInt(rng, 0, g.edgeCount() - 1);
            double off = uniform(rng, 0.0, g.edge(e).length);
            if (uniformInt(rng, 0, 3) == 0) off = (uniformInt(rng, 0, 1) == 0) ? 0.0 : g.edge(e).length;
            mu.addAtom(g.canonical(e, off), uniform(rng, 0.1, 1.5));
            hasMass = true;
        }
    }
    if (!hasMass) mu.addDensityPiece(0, 0.0, g.edge(0).length, uniform(rng, 0.2, 1.0));
    return mu;
}

PiecewiseFunction randomPiecewiseConstant(Rng& rng, const MetricGraph& g, double lo, double hi, int maxPieces) {
    PiecewiseFunction f(g);
    for (EdgeId e = 0; e < g.edgeCount(); ++e) {
        double len = g.edge(e).length;
        int pieces = uniformInt(rng, 1, std::max(1, maxPieces));
        std::vector<double> cuts{0.0, len};
        for (int k = 1; k < pieces; ++k) cuts.push_back(uniform(rng, 0.0, len));
        std::sort(cuts.begin(), cuts.end());
        cuts.erase(std::unique(cuts.begin(), cuts.end()), cuts.end());
        for (size_t i = 0; i + 1 < cuts.size(); ++i)
            f.addConstantPiece(e, cuts[i], cuts[i + 1], uniform(rng, lo, hi));
    }
    return f;
}

PiecewiseFunction randomContinuousPiecewiseLinear(Rng& rng, const MetricGraph& g, int maxBreaks) {
    PiecewiseFunction f(g);
    std::vector<double> vertexValue(static_cast<size_t>(g.vertexCount()));
    for (double& v : vertexValue) v = uniform(rng, -2.0, 2.0);
    for (EdgeId e = 0; e < g.edgeCount(); ++e) {
        const Edge& ed = g.edge(e);
        std::vector<double> breaks{0.0, ed.length};
        int extra = uniformInt(rng, 0, std::max(0, maxBreaks));
        for (int k = 0; k < extra; ++k) breaks.push_back(uniform(rng, 0.0, ed.length));
        std::sort(breaks.begin(), breaks.end());
        breaks.erase(std::unique(breaks.begin(), breaks.end()), breaks.end());
        std::vector<double> values(breaks.size());
        values.front() = vertexValue[static_cast<size_t>(ed.from)];
        values.back() = vertexValue[static_cast<size_t>(ed.to)];
        for (size_t i = 1; i + 1 < breaks.size(); ++i) values[i] = uniform(rng, -2.0, 2.0);
        f.setEdgeLinear(e, breaks, values);
    }
    return f;
}

FunctionalPtr randomFunctional(Rng& rng, const MetricGraph& g, bool allowAtoms) {
    int kind = uniformInt(rng, 0, 4);
    switch (kind) {
        case 0:
            return makeLength(g);
        case 1: {
            Measure mu1 = randomMeasure(rng, g, false);
            Measure mu2 = randomMeasure(rng, g, allowAtoms);
            return makeProduct(mu1, mu2, uniform(rng, 0.2, 0.8));
        }
        case 2: {
            PiecewiseFunction a = randomPiecewiseConstant(rng, g, 0.4, 2.5, 2);
            double p = std::vector<double>{1.5, 2.0, 3.0}[static_cast<size_t>(uniformInt(rng, 0, 2))];
            return makePhiMu(a, p, randomMeasure(rng, g, allowAtoms));
        }
        case 3:
            return makePhiTheta(0.6, uniform(rng, 2.0, 4.0), randomMeasure(rng, g, allowAtoms));
        default:
            return makePhiTheta(0.75, uniform(rng, 1.5, 4.0), randomMeasure(rng, g, allowAtoms));
    }
}

GraphPoint randomPointIn(Rng& rng, const Subset& s) {
    struct Span {
        EdgeId e;
        double lo, hi;
    };
    std::vector<Span> spans;
    double total = 0.0;
    s.forEachInterval([&](EdgeId e, double lo, double hi) {
        if (hi > lo) {
            spans.push_back({e, lo, hi});
            total += hi - lo;
        }
    });
    if (spans.empty()) {
        auto verts = s.includedVertices();
        if (verts.empty()) fail(ErrorCode::BadInput, "cannot sample from an empty subset");
        return GraphPoint::atVertex(verts[static_cast<size_t>(uniformInt(rng, 0, static_cast<int>(verts.size()) - 1))]);
    }
    double target = uniform(rng, 0.0, total);
    for (const Span& sp : spans) {
        double len = sp.hi - sp.lo;
        if (target <= len) {
            double off = sp.lo + std::clamp(target, 1e-12 * len, (1.0 - 1e-12) * len);
            GraphPoint p = s.graph().canonical(sp.e, off);
            if (s.contains(p)) return p;
            return GraphPoint::onEdge(sp.e, (sp.lo + sp.hi) / 2.0);
        }
        target -= len;
    }
    return GraphPoint::onEdge(spans.back().e, (spans.back().lo + spans.back().hi) / 2.0);
}

Subset randomSubtree(Rng& rng, const MetricGraph& tree) {
    Subset whole = Subset::whole(tree);
    Subset cur = whole;
    int trims = uniformInt(rng, 0, 2);
    for (int k = 0; k < trims; ++k) {
        GraphPoint x = randomPointIn(rng, cur);
        auto comps = cur.without(x).components();
        if (comps.empty()) break;
        size_t pick = static_cast<size_t>(uniformInt(rng, 0, static_cast<int>(comps.size()) - 1));
        Subset cand = comps[pick];
        cand.includePoint(x);
        if (cand.length() > 0.05 * tree.totalLength()) cur = cand;
    }
    return cur;
}

std::vector<Subset> randomPartitionOf(Rng& rng, const Subset& base, int maxPieces) {
    std::vector<Subset> parts{base};
    for (int round = 0; static_cast<int>(parts.size()) < maxPieces && round < 3 * maxPieces; ++round) {
        size_t pick = static_cast<size_t>(uniformInt(rng, 0, static_cast<int>(parts.size()) - 1));
        Subset part = parts[pick];
        if (part.length() <= 1e-9) continue;
        GraphPoint x = randomPointIn(rng, part);
        if (!part.contains(x)) continue;
        auto comps = part.without(x).components();
        if (comps.size() < 1) continue;
        std::vector<Subset> pieces;
        // x joins the first component; the others stay open at x
        for (size_t i = 0; i < comps.size(); ++i) {
            Subset piece = comps[i];
            if (i == 0) piece.includePoint(x);
            pieces.push_back(std::move(piece));
        }
        if (comps.size() == 1 && pieces[0].sameSet(part)) continue;
        parts.erase(parts.begin() + static_cast<long>(pick));
        for (Subset& piece : pieces) parts.push_back(std::move(piece));
    }
    return parts;
}

}  // namespace mgraph
