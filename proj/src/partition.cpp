#include "mgraph/partition.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <set>

namespace mgraph {

namespace {

Subset unionSubsets(const MetricGraph& g, const std::vector<const Subset*>& parts) {
    Subset u(g);
    for (const Subset* s : parts) {
        s->forEachInterval([&](EdgeId e, double lo, double hi) { u.addInterval(e, lo, hi); });
        for (VertexId v : s->includedVertices()) u.addVertex(v);
    }
    for (const Subset* s : parts) {
        for (const GraphPoint& q : s->excludedPoints()) {
            bool covered = false;
            for (const Subset* t : parts)
                if (t->contains(q)) covered = true;
            if (!covered && u.closureContains(q) && u.contains(q)) u.excludePoint(q);
        }
    }
    return u;
}

}  // namespace

GraphPoint CutResult::mapPoint(const GraphPoint& treePointIn) const {
    GraphPoint p = tree_->canonical(treePointIn);
    if (p.isVertex()) {
        for (const SplitPair& sp : splitPairs_)
            if (sp.x1 == p.vertex() || sp.x2 == p.vertex()) return sp.original;
        // original vertices keep their index in the tree
        return GraphPoint::atVertex(p.vertex());
    }
    const EdgeOrigin& eo = edgeOrigins_.at(static_cast<size_t>(p.edge()));
    return original_->canonical(eo.originalEdge, eo.lo + p.offset());
}

Subset CutResult::mapSubset(const Subset& e) const {
    Subset img(*original_);
    e.forEachInterval([&](EdgeId te, double lo, double hi) {
        const EdgeOrigin& eo = edgeOrigins_.at(static_cast<size_t>(te));
        img.addInterval(eo.originalEdge, eo.lo + lo, eo.lo + hi);
    });
    int nOrigV = original_->vertexCount();
    for (VertexId tv : e.includedVertices())
        if (tv < nOrigV) img.addVertex(tv);
    // touched original vertices that are not members of E must stay out
    for (VertexId ov = 0; ov < nOrigV; ++ov) {
        GraphPoint gp = GraphPoint::atVertex(ov);
        if (img.contains(gp) && !e.contains(GraphPoint::atVertex(ov))) img.excludePoint(gp);
    }
    // each cut point belongs to the image iff its x1 copy belongs to E
    for (const SplitPair& sp : splitPairs_) {
        if (e.contains(GraphPoint::atVertex(sp.x1))) {
            img.includePoint(sp.original);
        } else if (img.closureContains(sp.original)) {
            if (img.contains(sp.original)) img.excludePoint(sp.original);
        }
    }
    // interior removed points map one-to-one
    for (const GraphPoint& q : e.excludedPoints()) {
        if (q.isVertex()) continue;
        GraphPoint gq = mapPoint(q);
        bool isCutPoint = false;
        for (const SplitPair& sp : splitPairs_)
            if (sp.original == gq) isCutPoint = true;
        if (!isCutPoint && img.contains(gq)) img.excludePoint(gq);
    }
    return img;
}

Subset CutResult::liftSubset(const Subset& s) const {
    Subset up(*tree_);
    for (EdgeId te = 0; te < tree_->edgeCount(); ++te) {
        const EdgeOrigin& eo = edgeOrigins_.at(static_cast<size_t>(te));
        for (const Interval& iv : s.edgeIntervals(eo.originalEdge)) {
            double lo = std::max(iv.lo, eo.lo), hi = std::min(iv.hi, eo.hi);
            if (lo > hi) continue;
            if (lo == hi && iv.lo != iv.hi) continue;  // grazing contact at a clip boundary
            up.addInterval(te, lo - eo.lo, hi - eo.lo);
        }
    }
    int nOrigV = original_->vertexCount();
    for (VertexId ov = 0; ov < nOrigV; ++ov) {
        GraphPoint gp = GraphPoint::atVertex(ov);
        if (s.contains(gp))
            up.addVertex(ov);
        else if (up.contains(gp))
            up.excludePoint(gp);
    }
    for (const SplitPair& sp : splitPairs_) {
        for (VertexId copy : {sp.x1, sp.x2}) {
            GraphPoint tp = GraphPoint::atVertex(copy);
            if (s.contains(sp.original) && up.skeletonDegree(tp) >= 1)
                up.includePoint(tp);
            else if (up.contains(tp))
                up.excludePoint(tp);
        }
    }
    for (const GraphPoint& q : s.excludedPoints()) {
        if (q.isVertex()) continue;
        bool isCut = false;
        for (const SplitPair& sp : splitPairs_)
            if (sp.original == q) isCut = true;
        if (isCut) continue;
        // locate the tree edge containing the preimage
        for (EdgeId te = 0; te < tree_->edgeCount(); ++te) {
            const EdgeOrigin& eo = edgeOrigins_.at(static_cast<size_t>(te));
            if (eo.originalEdge != q.edge()) continue;
            if (q.offset() <= eo.lo || q.offset() >= eo.hi) continue;
            GraphPoint tq = GraphPoint::onEdge(te, q.offset() - eo.lo);
            if (up.contains(tq)) up.excludePoint(tq);
        }
    }
    return up;
}

CutResult cutCycles(const MetricGraph& g) {
    struct WorkEdge {
        std::string label, from, to;
        double length;
        EdgeId origEdge;
        double lo, hi;
    };
    std::vector<std::string> vertexLabels;
    for (VertexId v = 0; v < g.vertexCount(); ++v) vertexLabels.push_back(g.vertexLabel(v));
    std::vector<WorkEdge> work;
    for (EdgeId e = 0; e < g.edgeCount(); ++e) {
        const Edge& ed = g.edge(e);
        work.push_back({g.edgeLabel(e), g.vertexLabel(ed.from), g.vertexLabel(ed.to), ed.length, e, 0.0, ed.length});
    }
    std::set<std::string> usedVertexLabels(vertexLabels.begin(), vertexLabels.end());
    std::set<std::string> usedEdgeLabels;
    for (const WorkEdge& we : work) usedEdgeLabels.insert(we.label);
    auto fresh = [](std::set<std::string>& used, std::string base) {
        while (used.count(base)) base += "'";
        used.insert(base);
        return base;
    };

    struct SplitRecord {
        std::string x1, x2;
        EdgeId origEdge;
        double origOffset;
    };
    std::vector<SplitRecord> records;

    auto buildCurrent = [&]() {
        std::vector<EdgeSpec> specs;
        for (const WorkEdge& we : work) specs.push_back({we.label, we.from, we.to, we.length});
        return MetricGraph(vertexLabels, specs);
    };

    for (int guard = 0; guard < 100000; ++guard) {
        MetricGraph cur = buildCurrent();
        std::optional<EdgeId> cyc = cur.findCycleEdge();
        if (!cyc) break;
        WorkEdge we = work[static_cast<size_t>(*cyc)];
        double mid = (we.lo + we.hi) / 2.0;
        int k = static_cast<int>(records.size());
        std::string x1 = fresh(usedVertexLabels, "cut" + std::to_string(k) + "a");
        std::string x2 = fresh(usedVertexLabels, "cut" + std::to_string(k) + "b");
        vertexLabels.push_back(x1);
        vertexLabels.push_back(x2);
        WorkEdge e1{fresh(usedEdgeLabels, we.label + "/a"), we.from, x1, mid - we.lo, we.origEdge, we.lo, mid};
        WorkEdge e2{fresh(usedEdgeLabels, we.label + "/b"), x2, we.to, we.hi - mid, we.origEdge, mid, we.hi};
        work.erase(work.begin() + *cyc);
        work.push_back(e1);
        work.push_back(e2);
        records.push_back({x1, x2, we.origEdge, mid});
    }

    CutResult out;
    out.original_ = &g;
    out.tree_ = std::make_shared<MetricGraph>(buildCurrent());
    if (!out.tree_->isTree()) fail(ErrorCode::Internal, "cycle cutting did not produce a tree");
    for (const WorkEdge& we : work) out.edgeOrigins_.push_back({we.origEdge, we.lo, we.hi});
    for (const SplitRecord& r : records) {
        CutResult::SplitPair sp;
        sp.x1 = *out.tree_->findVertex(r.x1);
        sp.x2 = *out.tree_->findVertex(r.x2);
        sp.originalEdge = r.origEdge;
        sp.original = g.canonical(r.origEdge, r.origOffset);
        out.splitPairs_.push_back(sp);
    }
    return out;
}

namespace {

class LiftedFunctional final : public Functional {
public:
    LiftedFunctional(FunctionalPtr base, std::shared_ptr<const CutResult> cut)
        : base_(std::move(base)), cut_(std::move(cut)) {}
    double eval(const Subset& e) const override { return base_->eval(cut_->mapSubset(e)); }
    std::vector<double> jumpOffsets(EdgeId e) const override {
        const auto& eo = cut_->edgeOrigins().at(static_cast<size_t>(e));
        std::vector<double> out;
        for (double j : base_->jumpOffsets(eo.originalEdge))
            if (j > eo.lo && j < eo.hi) out.push_back(j - eo.lo);
        return out;
    }
    FunctionalKind kind() const override { return FunctionalKind::Lifted; }
    std::string describe() const override { return "lifted(" + base_->describe() + ")"; }
    const MetricGraph& graph() const override { return cut_->tree(); }

private:
    FunctionalPtr base_;
    std::shared_ptr<const CutResult> cut_;
};

}  // namespace

FunctionalPtr liftFunctional(FunctionalPtr base, std::shared_ptr<const CutResult> cut) {
    if (cut->isIdentity()) return base;
    return std::make_shared<LiftedFunctional>(std::move(base), std::move(cut));
}

namespace {

// components of T minus a point, separated into the one holding backProbe
// (if any) and the rest
struct SplitComponents {
    std::vector<Subset> forward;
    std::optional<Subset> backward;
};

SplitComponents splitAt(const Subset& tree, const GraphPoint& x, const std::optional<GraphPoint>& backProbe) {
    SplitComponents out;
    for (Subset& comp : tree.without(x).components()) {
        if (backProbe && comp.contains(*backProbe))
            out.backward = std::move(comp);
        else
            out.forward.push_back(std::move(comp));
    }
    return out;
}

// entry arc of a component at point x: the interval of comp whose endpoint
// sits at x; returns (edge, offset of x on that edge, far offset)
struct EntryArc {
    EdgeId edge = -1;
    double nearOff = 0.0;
    double farOff = 0.0;
    GraphPoint farNode;
};

EntryArc entryArc(const MetricGraph& g, const Subset& comp, const GraphPoint& x) {
    EntryArc best;
    bool found = false;
    auto tryEdgeOffset = [&](EdgeId e, double off) {
        for (const Interval& iv : comp.edgeIntervals(e)) {
            if (iv.lo == iv.hi) continue;
            double far;
            if (iv.lo == off)
                far = iv.hi;
            else if (iv.hi == off)
                far = iv.lo;
            else
                continue;
            EntryArc cand;
            cand.edge = e;
            cand.nearOff = off;
            cand.farOff = far;
            cand.farNode = g.canonical(e, far);
            if (!found || cand.farNode < best.farNode) best = cand;
            found = true;
        }
    };
    if (x.isVertex()) {
        for (auto [eid, side] : g.incident(x.vertex())) tryEdgeOffset(eid, side == 0 ? 0.0 : g.edge(eid).length);
    } else {
        tryEdgeOffset(x.edge(), x.offset());
    }
    if (!found) fail(ErrorCode::Internal, "component has no entry arc at base point");
    return best;
}

double evalUnionPlus(const Functional& phi, const Subset& tree, const std::vector<Subset>& comps,
                     const GraphPoint& x) {
    std::vector<const Subset*> ptrs;
    for (const Subset& c : comps) ptrs.push_back(&c);
    Subset u = unionSubsets(tree.graph(), ptrs);
    if (tree.contains(x)) u.includePoint(x);
    return phi.eval(u);
}

Subset buildKept(const Subset& tree, const std::vector<Subset>& comps, const GraphPoint& x) {
    std::vector<const Subset*> ptrs;
    for (const Subset& c : comps) ptrs.push_back(&c);
    Subset u = unionSubsets(tree.graph(), ptrs);
    if (tree.contains(x)) u.includePoint(x);
    return u;
}

}  // namespace

LemmaSplitResult lemmaSplit(const Functional& phi, const Subset& tree, double epsilon, double tol) {
    const MetricGraph& g = tree.graph();
    if (!g.isTree()) fail(ErrorCode::NotATree, "splitting lemma runs on trees");
    double total = phi.eval(tree);
    if (!(epsilon > 0.0) || !(epsilon < total))
        fail(ErrorCode::EpsilonOutOfRange, "epsilon must lie strictly between 0 and phi(tree)");
    double tolPhi = std::max(tol * total, 0.0);

    std::vector<GraphPoint> bps = tree.boundaryPoints();
    if (bps.empty()) fail(ErrorCode::Internal, "subtree has no boundary point");
    GraphPoint node = bps.front();
    std::optional<GraphPoint> backProbe;
    std::vector<std::pair<double, double>> trace;
    double arcPos = 0.0;

    auto finish = [&](Subset kept, Subset remainder, const GraphPoint& xStar, double fClosed,
                      double circ) -> LemmaSplitResult {
        LemmaSplitResult r(std::move(kept), std::move(remainder));
        r.xStar = xStar;
        r.fClosedAtStar = fClosed;
        r.phiCircAtStar = circ;
        r.fTrace = std::move(trace);
        return r;
    };

    for (int guard = 0; guard < 1000000; ++guard) {
        SplitComponents sc = splitAt(tree, node, backProbe);
        double fClosed = evalUnionPlus(phi, tree, sc.forward, node);
        trace.emplace_back(arcPos, fClosed);

        Subset backSet = sc.backward ? *sc.backward : Subset(g);
        if (sc.forward.empty()) {
            // path endpoint
            if (fClosed >= epsilon)
                return finish(buildKept(tree, sc.forward, node), std::move(backSet), node, fClosed, 0.0);
            fail(ErrorCode::Internal, "crossing not found before path endpoint");
        }

        // greedy choice by punctured branch value
        double bestVal = -1.0;
        EntryArc bestArc;
        std::vector<double> vals(sc.forward.size());
        for (size_t i = 0; i < sc.forward.size(); ++i) {
            vals[i] = phi.eval(sc.forward[i]);
            EntryArc arc = entryArc(g, sc.forward[i], node);
            bool better = vals[i] > bestVal ||
                          (vals[i] == bestVal && arc.farNode < bestArc.farNode);
            if (better) {
                bestVal = vals[i];
                bestArc = arc;
            }
        }
        double phiC = *std::max_element(vals.begin(), vals.end());

        if (fClosed >= epsilon && phiC <= epsilon)
            return finish(buildKept(tree, sc.forward, node), std::move(backSet), node, fClosed, phiC);

        // traverse the arc into the chosen branch
        EdgeId e = bestArc.edge;
        bool ascending = bestArc.farOff > bestArc.nearOff;
        std::vector<double> marks;
        for (double j : phi.jumpOffsets(e)) marks.push_back(j);
        for (const GraphPoint& q : tree.excludedPoints())
            if (!q.isVertex() && q.edge() == e) marks.push_back(q.offset());
        std::sort(marks.begin(), marks.end());
        if (!ascending) std::reverse(marks.begin(), marks.end());
        std::vector<double> stops;
        for (double m : marks) {
            bool inside = ascending ? (m > bestArc.nearOff && m < bestArc.farOff)
                                    : (m < bestArc.nearOff && m > bestArc.farOff);
            if (inside) stops.push_back(m);
        }
        stops.push_back(bestArc.farOff);

        double segStartOff = bestArc.nearOff;
        double segStartVal = bestVal;  // right-limit of F entering the arc
        bool resolved = false;
        for (size_t si = 0; si < stops.size() && !resolved; ++si) {
            double stopOff = stops[si];
            bool isFarNode = (si + 1 == stops.size());
            GraphPoint stopPoint = isFarNode ? bestArc.farNode : GraphPoint::onEdge(e, stopOff);
            auto probeBetween = [&](double a, double b) {
                return GraphPoint::onEdge(e, (a + b) / 2.0);
            };
            GraphPoint back = probeBetween(segStartOff, stopOff);
            auto evalAt = [&](const GraphPoint& x, const GraphPoint& backP, double* circOut,
                              SplitComponents* scOut) {
                SplitComponents s = splitAt(tree, x, backP);
                double fc = evalUnionPlus(phi, tree, s.forward, x);
                if (circOut) {
                    double c = 0.0;
                    for (const Subset& comp : s.forward) c = std::max(c, phi.eval(comp));
                    *circOut = c;
                }
                if (scOut) *scOut = std::move(s);
                return fc;
            };
            double circStop = 0.0;
            SplitComponents scStop;
            double fStop = evalAt(stopPoint, back, &circStop, &scStop);
            double segStartPos = arcPos;
            auto posOf = [&](double off) { return segStartPos + std::fabs(off - segStartOff); };

            if (fStop < epsilon) {
                // continuous crossing inside (segStartOff, stopOff); when a
                // probe hits F = epsilon exactly, both split guarantees hold
                // with zero slack, so accept it immediately
                double aOff = segStartOff, bOff = stopOff;
                double fb = fStop;
                Subset keptB = buildKept(tree, scStop.forward, stopPoint);
                Subset backB = scStop.backward ? *scStop.backward : Subset(g);
                GraphPoint bPoint = stopPoint;
                double circB = circStop;
                double fa = segStartVal;
                for (int iter = 0; iter < 300; ++iter) {
                    if (fa - fb <= tolPhi && std::fabs(bOff - aOff) <= tol * std::max(1.0, g.totalLength()))
                        break;
                    if (std::fabs(bOff - aOff) <= 1e-16 * std::max(1.0, std::fabs(bOff))) break;
                    double midOff = (aOff + bOff) / 2.0;
                    if (fa > fb && (iter % 3) != 2) {
                        double sec = aOff + (fa - epsilon) * (bOff - aOff) / (fa - fb);
                        double lo = std::min(aOff, bOff), hi = std::max(aOff, bOff);
                        double margin = 0.05 * (hi - lo);
                        if (sec > lo + margin && sec < hi - margin) midOff = sec;
                    }
                    GraphPoint midPoint = GraphPoint::onEdge(e, midOff);
                    GraphPoint midBack = probeBetween(segStartOff, midOff);
                    double circMid = 0.0;
                    SplitComponents scMid;
                    double fMid = evalAt(midPoint, midBack, &circMid, &scMid);
                    if (fMid == epsilon) {
                        trace.emplace_back(posOf(midOff), fMid);
                        return finish(buildKept(tree, scMid.forward, midPoint),
                                      scMid.backward ? *scMid.backward : Subset(g), midPoint, fMid, circMid);
                    }
                    if (fMid > epsilon) {
                        aOff = midOff;
                        fa = fMid;
                    } else {
                        bOff = midOff;
                        fb = fMid;
                        bPoint = midPoint;
                        circB = circMid;
                        keptB = buildKept(tree, scMid.forward, midPoint);
                        backB = scMid.backward ? *scMid.backward : Subset(g);
                    }
                }
                trace.emplace_back(posOf(bOff), fb);
                return finish(std::move(keptB), std::move(backB), bPoint, fb, circB);
            }
            arcPos = posOf(stopOff);
            trace.emplace_back(arcPos, fStop);
            if (!isFarNode) {
                // atom checkpoint: F is right-discontinuous here
                if (circStop <= epsilon)
                    return finish(buildKept(tree, scStop.forward, stopPoint),
                                  scStop.backward ? *scStop.backward : Subset(g), stopPoint, fStop, circStop);
                segStartOff = stopOff;
                segStartVal = circStop;
            } else {
                node = bestArc.farNode;
                backProbe = back;
            }
        }
    }
    fail(ErrorCode::Internal, "splitting lemma did not terminate");
}

namespace {

void partitionInto(const Functional& phi, const Subset& ground, int budget, double tol, double globalScale,
                   std::vector<Subset>& out) {
    double total = phi.eval(ground);
    if (budget <= 1 || total <= 1e-14 * globalScale) {
        if (!ground.empty()) out.push_back(ground);
        return;
    }
    double eps = total / (budget + 1);
    LemmaSplitResult ls = lemmaSplit(phi, ground, eps, tol);
    partitionInto(phi, ls.remainder, budget - 1, tol, globalScale, out);
    if (!ls.kept.empty()) out.push_back(std::move(ls.kept));
}

}  // namespace

std::vector<Subset> partitionSubtree(const Functional& phi, const Subset& ground, int budget, double tol) {
    if (budget < 1) fail(ErrorCode::BadInput, "budget must be >= 1");
    std::vector<Subset> parts;
    double scale = std::max(phi.eval(ground), 1e-300);
    partitionInto(phi, ground, budget, tol, scale, parts);
    return parts;
}

double PartitionResult::maxTilde() const {
    double m = 0.0;
    for (const PartitionPart& p : parts) m = std::max(m, p.tilde.value);
    return m;
}

PartitionResult partitionGraph(const MetricGraph& g, FunctionalPtr phi, int n, double tol) {
    if (n < 1) fail(ErrorCode::BadInput, "n must be >= 1");
    PartitionResult res;
    res.cut = std::make_shared<CutResult>(cutCycles(g));
    res.lifted = liftFunctional(std::move(phi), res.cut);
    res.n = n;
    Subset whole = Subset::whole(res.cut->tree());
    res.phiTotal = res.lifted->eval(whole);
    res.bound = res.phiTotal / (n + 1);
    std::vector<Subset> treeParts = partitionSubtree(*res.lifted, whole, n, tol);
    if (static_cast<int>(treeParts.size()) > n) fail(ErrorCode::Internal, "partition exceeded the part budget");
    double tildeTol = tol * std::max(res.phiTotal, 1e-300);
    for (Subset& tp : treeParts) {
        PartitionPart part(tp, res.cut->mapSubset(tp));
        part.tilde = tildePhi(*res.lifted, part.treeSide, tildeTol);
        res.parts.push_back(std::move(part));
    }
    return res;
}

void VerifyReport::requirePass() const {
    if (!pass) {
        std::string msg = "partition verification failed:";
        for (const std::string& f : failures) msg += " [" + f + "]";
        fail(ErrorCode::VerificationFailed, msg);
    }
}

VerifyReport verifyPartition(const MetricGraph& g, FunctionalPtr phi, const std::vector<Subset>& graphParts,
                             int n, double tol, double relTol) {
    VerifyReport rep;
    auto flag = [&](const std::string& msg) {
        rep.pass = false;
        rep.failures.push_back(msg);
    };
    if (static_cast<int>(graphParts.size()) > n) flag("more than n parts");
    for (const Subset& p : graphParts)
        if (p.empty()) flag("empty part");

    // exact cover: every critical point in exactly one part, every open
    // stretch covered exactly once
    auto countContaining = [&](const GraphPoint& q) {
        int c = 0;
        for (const Subset& p : graphParts)
            if (p.contains(q)) ++c;
        return c;
    };
    for (VertexId v = 0; v < g.vertexCount(); ++v)
        if (countContaining(GraphPoint::atVertex(v)) != 1)
            flag("vertex " + g.vertexLabel(v) + " covered " + std::to_string(countContaining(GraphPoint::atVertex(v))) + " times");
    for (EdgeId e = 0; e < g.edgeCount(); ++e) {
        std::vector<double> cuts{0.0, g.edge(e).length};
        for (const Subset& p : graphParts) {
            for (const Interval& iv : p.edgeIntervals(e)) {
                cuts.push_back(iv.lo);
                cuts.push_back(iv.hi);
            }
            for (const GraphPoint& q : p.excludedPoints())
                if (!q.isVertex() && q.edge() == e) cuts.push_back(q.offset());
        }
        std::sort(cuts.begin(), cuts.end());
        cuts.erase(std::unique(cuts.begin(), cuts.end()), cuts.end());
        for (double c : cuts) {
            if (c == 0.0 || c == g.edge(e).length) continue;
            if (countContaining(GraphPoint::onEdge(e, c)) != 1) flag("edge point covered != once");
        }
        for (size_t i = 0; i + 1 < cuts.size(); ++i) {
            GraphPoint mid = GraphPoint::onEdge(e, (cuts[i] + cuts[i + 1]) / 2.0);
            if (countContaining(mid) != 1) flag("edge stretch covered != once");
        }
    }

    auto cut = std::make_shared<CutResult>(cutCycles(g));
    FunctionalPtr lifted = liftFunctional(std::move(phi), cut);
    double phiTotal = lifted->eval(Subset::whole(cut->tree()));
    rep.bound = phiTotal / (n + 1);
    double tildeTol = tol * std::max(phiTotal, 1e-300);
    for (const Subset& p : graphParts) {
        Subset treeSide = cut->liftSubset(p);
        VerifyReport::PartInfo info;
        if (!treeSide.isConnected()) {
            flag("part is not connected on the cut tree");
            rep.parts.push_back(info);
            continue;
        }
        TildeResult tr = tildePhi(*lifted, treeSide, tildeTol);
        info.tilde = tr.value;
        info.minimizer = tr.minimizer;
        info.slack = rep.bound - tr.value;
        info.jumpFlag = tr.jumpAtMinimizer;
        if (tr.value > rep.bound * (1.0 + relTol) + 1e-300) flag("tilde-phi bound violated");
        rep.parts.push_back(info);
    }
    return rep;
}

}  // namespace mgraph
