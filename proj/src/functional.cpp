#include "mgraph/functional.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace mgraph {

namespace {

class LengthFunctional final : public Functional {
public:
    explicit LengthFunctional(const MetricGraph& g) : g_(&g) {}
    double eval(const Subset& e) const override { return e.length(); }
    FunctionalKind kind() const override { return FunctionalKind::Length; }
    std::string describe() const override { return "length"; }
    const MetricGraph& graph() const override { return *g_; }

private:
    const MetricGraph* g_;
};

class MeasureFunctional final : public Functional {
public:
    explicit MeasureFunctional(Measure mu) : mu_(std::move(mu)) {}
    double eval(const Subset& e) const override { return mu_.of(e); }
    std::vector<double> jumpOffsets(EdgeId e) const override {
        std::vector<double> out;
        for (const auto& atom : mu_.atoms())
            if (!atom.point.isVertex() && atom.point.edge() == e) out.push_back(atom.point.offset());
        return out;
    }
    FunctionalKind kind() const override { return FunctionalKind::MeasureKind; }
    std::string describe() const override { return "measure"; }
    const MetricGraph& graph() const override { return mu_.graph(); }

private:
    Measure mu_;
};

std::vector<double> atomOffsets(const Measure& mu, EdgeId e) {
    std::vector<double> out;
    for (const auto& atom : mu.atoms())
        if (!atom.point.isVertex() && atom.point.edge() == e) out.push_back(atom.point.offset());
    return out;
}

class ProductFunctional final : public Functional {
public:
    ProductFunctional(Measure mu1, Measure mu2, double alpha)
        : mu1_(std::move(mu1)), mu2_(std::move(mu2)), alpha_(alpha) {
        if (mu1_.hasAtoms()) fail(ErrorCode::AtomicFirstMeasure, "first factor measure must be atom-free");
        if (!(alpha_ > 0.0 && alpha_ < 1.0)) fail(ErrorCode::BadInput, "alpha must lie in (0,1)");
    }
    double eval(const Subset& e) const override {
        double m1 = mu1_.of(e);
        if (m1 <= 0.0) return 0.0;
        double m2 = mu2_.of(e);
        if (m2 <= 0.0) return 0.0;
        return std::pow(m1, alpha_) * std::pow(m2, 1.0 - alpha_);
    }
    std::vector<double> jumpOffsets(EdgeId e) const override { return atomOffsets(mu2_, e); }
    FunctionalKind kind() const override { return FunctionalKind::Product; }
    std::string describe() const override { return "product:" + std::to_string(alpha_); }
    const MetricGraph& graph() const override { return mu1_.graph(); }

private:
    Measure mu1_, mu2_;
    double alpha_;
};

class PhiUFunctional final : public Functional {
public:
    PhiUFunctional(PiecewiseFunction u, PiecewiseFunction a, double p)
        : u_(std::move(u)), a_(std::move(a)), p_(p), w_(u_.graph()) {
        u_.requireContinuous();
        if (!a_.positive() || !a_.isPiecewiseConstant())
            fail(ErrorCode::WeightNotIntegrable, "weight must be positive piecewise-constant");
        w_ = sobolevWeightDual(a_, p_);
        if (std::isinf(p_))
            uPrimeSup_ = derivativeNorm(u_, p_, a_, Subset::whole(u_.graph()));
    }
    double eval(const Subset& e) const override {
        if (std::isinf(p_)) return uPrimeSup_ * std::pow(lpNorm(w_, 1.0, e), 1.0);
        if (p_ == 1.0) {
            // int_E w_a a |u'| dx: with w_a = 1/a this is the total variation
            // of u over E, an atom-free measure of E
            double total = 0.0;
            e.forEachInterval([&](EdgeId eid, double lo, double hi) {
                for (const auto& pc : u_.edgePieces(eid)) {
                    double x = std::max(lo, pc.from), y = std::min(hi, pc.to);
                    if (x < y) total += std::fabs(pc.c1) * (y - x);
                }
            });
            return total;
        }
        return lpNorm(w_, holderConjugate(p_), e) * derivativeNorm(u_, p_, a_, e);
    }
    FunctionalKind kind() const override { return FunctionalKind::PhiU; }
    std::string describe() const override { return "phi_u"; }
    const MetricGraph& graph() const override { return u_.graph(); }

private:
    PiecewiseFunction u_, a_;
    double p_;
    PiecewiseFunction w_;
    double uPrimeSup_ = 0.0;
};

class PhiMuFunctional final : public Functional {
public:
    PhiMuFunctional(PiecewiseFunction a, double p, Measure mu)
        : a_(std::move(a)), p_(p), mu_(std::move(mu)), w_(a_.graph()) {
        if (std::isinf(p_)) fail(ErrorCode::BadInput, "phi_mu requires p < inf");
        if (!a_.positive() || !a_.isPiecewiseConstant())
            fail(ErrorCode::WeightNotIntegrable, "weight must be positive piecewise-constant");
        w_ = sobolevWeightDual(a_, p_);
        if (p_ == 1.0) wSupGlobal_ = lpNorm(w_, std::numeric_limits<double>::infinity(), Subset::whole(a_.graph()));
    }
    double eval(const Subset& e) const override {
        if (p_ == 1.0) return wSupGlobal_ * mu_.of(e);
        double m = mu_.of(e);
        if (m <= 0.0) return 0.0;
        return lpNorm(w_, holderConjugate(p_), e) * std::pow(m, 1.0 / p_);
    }
    std::vector<double> jumpOffsets(EdgeId e) const override { return atomOffsets(mu_, e); }
    FunctionalKind kind() const override { return FunctionalKind::PhiMu; }
    std::string describe() const override { return "phi_mu"; }
    const MetricGraph& graph() const override { return a_.graph(); }

private:
    PiecewiseFunction a_;
    double p_;
    Measure mu_;
    PiecewiseFunction w_;
    double wSupGlobal_ = 0.0;
};

class PhiThetaFunctional final : public Functional {
public:
    PhiThetaFunctional(double theta, double p, Measure mu) : theta_(theta), p_(p), mu_(std::move(mu)) {
        if (!(theta_ > 0.0 && theta_ < 1.0)) fail(ErrorCode::BadInput, "theta must lie in (0,1)");
        if (!(p_ > 1.0 / theta_) || std::isinf(p_)) fail(ErrorCode::BadInput, "need 1/theta < p < inf");
    }
    double eval(const Subset& e) const override {
        double len = e.length();
        double m = mu_.of(e);
        double ex = 1.0 / (theta_ * p_);
        if (len <= 0.0 || m <= 0.0) return 0.0;
        return std::pow(len, 1.0 - ex) * std::pow(m, ex);
    }
    std::vector<double> jumpOffsets(EdgeId e) const override { return atomOffsets(mu_, e); }
    FunctionalKind kind() const override { return FunctionalKind::PhiTheta; }
    std::string describe() const override { return "phi_theta:" + std::to_string(theta_); }
    const MetricGraph& graph() const override { return mu_.graph(); }

private:
    double theta_, p_;
    Measure mu_;
};

}  // namespace

PiecewiseFunction sobolevWeightDual(const PiecewiseFunction& a, double p) {
    const MetricGraph& g = a.graph();
    PiecewiseFunction w(g);
    double expo = std::isinf(p) ? 1.0 : 1.0 / p;
    for (EdgeId e = 0; e < g.edgeCount(); ++e)
        for (const auto& pc : a.edgePieces(e)) w.addConstantPiece(e, pc.from, pc.to, std::pow(pc.c0, -expo));
    return w;
}

FunctionalPtr makeLength(const MetricGraph& g) { return std::make_shared<LengthFunctional>(g); }
FunctionalPtr makeMeasureFunctional(const Measure& mu) { return std::make_shared<MeasureFunctional>(mu); }
FunctionalPtr makeProduct(const Measure& mu1, const Measure& mu2, double alpha) {
    return std::make_shared<ProductFunctional>(mu1, mu2, alpha);
}
FunctionalPtr makePhiU(const PiecewiseFunction& u, const PiecewiseFunction& a, double p) {
    return std::make_shared<PhiUFunctional>(u, a, p);
}
FunctionalPtr makePhiMu(const PiecewiseFunction& a, double p, const Measure& mu) {
    return std::make_shared<PhiMuFunctional>(a, p, mu);
}
FunctionalPtr makePhiTheta(double theta, double p, const Measure& mu) {
    return std::make_shared<PhiThetaFunctional>(theta, p, mu);
}

PuncturedTreeSplit canonicalSplit(const Subset& tree, const GraphPoint& xIn) {
    const MetricGraph& g = tree.graph();
    if (!g.isTree()) fail(ErrorCode::NotATree, "canonical split requires a tree");
    GraphPoint x = g.canonical(xIn);
    if (!tree.closureContains(x)) fail(ErrorCode::PointNotOnGraph, "base point not in subtree closure");
    PuncturedTreeSplit out;
    out.base = x;
    for (Subset& comp : tree.without(x).components()) {
        comp.includePoint(x);
        out.branches.push_back(std::move(comp));
    }
    return out;
}

double phiCirc(const Functional& phi, const Subset& tree, const GraphPoint& xIn) {
    GraphPoint x = tree.graph().canonical(xIn);
    double best = 0.0;
    for (const Subset& comp : tree.without(x).components()) best = std::max(best, phi.eval(comp));
    return best;
}

double defaultTildeTol(const Functional& phi) {
    return 1e-10 * std::max(phi.eval(Subset::whole(phi.graph())), 1e-300);
}

namespace {

// the two punctured branch values at an interior degree-2 point, split into
// the side containing `towardLo` (offset below x) and the rest
struct SideValues {
    double low;   // branch on the lower-offset side
    double high;  // branch on the higher-offset side
};

SideValues sideValues(const Functional& phi, const Subset& tree, EdgeId e, double x, double loProbe) {
    SideValues sv{0.0, 0.0};
    for (const Subset& comp : tree.without(GraphPoint::onEdge(e, x)).components()) {
        bool isLow = false;
        for (const Interval& iv : comp.edgeIntervals(e))
            if (iv.lo <= loProbe && loProbe <= iv.hi) isLow = true;
        double v = phi.eval(comp);
        if (isLow)
            sv.low = std::max(sv.low, v);
        else
            sv.high = std::max(sv.high, v);
    }
    return sv;
}

}  // namespace

TildeResult tildePhi(const Functional& phi, const Subset& tree, double tol) {
    const MetricGraph& g = tree.graph();
    if (!g.isTree()) fail(ErrorCode::NotATree, "tilde-phi is evaluated on trees");
    if (!tree.isConnected()) fail(ErrorCode::NotATree, "subset must be a connected subtree");

    TildeResult best;
    best.value = std::numeric_limits<double>::infinity();
    auto consider = [&](const GraphPoint& x, double value) {
        if (value < best.value) {
            best.value = value;
            best.minimizer = x;
        }
    };

    if (tree.empty()) {
        best.value = 0.0;
        best.minimizer = tree.boundaryPoints().empty() ? GraphPoint::atVertex(0) : tree.boundaryPoints().front();
        return best;
    }

    // candidate points: vertices, interval endpoints (leaves, prior removed
    // points), and atom offsets where branch values jump
    for (VertexId v = 0; v < g.vertexCount(); ++v) {
        GraphPoint p = GraphPoint::atVertex(v);
        if (tree.closureContains(p)) consider(p, phiCirc(phi, tree, p));
    }
    struct EdgeCandidates {
        EdgeId e;
        std::vector<double> offsets;  // sorted candidate offsets inside intervals
    };
    std::vector<EdgeCandidates> perEdge;
    for (EdgeId e = 0; e < g.edgeCount(); ++e) {
        const auto& ivs = tree.edgeIntervals(e);
        if (ivs.empty()) continue;
        EdgeCandidates ec{e, {}};
        std::vector<double> jumps = phi.jumpOffsets(e);
        for (const GraphPoint& q : tree.excludedPoints())
            if (!q.isVertex() && q.edge() == e) jumps.push_back(q.offset());
        for (const Interval& iv : ivs) {
            ec.offsets.push_back(iv.lo);
            ec.offsets.push_back(iv.hi);
            for (double j : jumps)
                if (iv.lo < j && j < iv.hi) ec.offsets.push_back(j);
        }
        std::sort(ec.offsets.begin(), ec.offsets.end());
        ec.offsets.erase(std::unique(ec.offsets.begin(), ec.offsets.end()), ec.offsets.end());
        const Edge& ed = g.edge(e);
        for (double off : ec.offsets)
            if (off != 0.0 && off != ed.length) consider(GraphPoint::onEdge(e, off), phiCirc(phi, tree, GraphPoint::onEdge(e, off)));
        perEdge.push_back(std::move(ec));
    }

    // continuous crossings inside candidate-free stretches
    for (const EdgeCandidates& ec : perEdge) {
        for (const Interval& iv : tree.edgeIntervals(ec.e)) {
            if (iv.lo == iv.hi) continue;
            std::vector<double> marks;
            for (double off : ec.offsets)
                if (iv.lo <= off && off <= iv.hi) marks.push_back(off);
            for (size_t i = 0; i + 1 < marks.size(); ++i) {
                double lo = marks[i], hi = marks[i + 1];
                if (!(hi > lo)) continue;
                auto at = [&](double x) { return sideValues(phi, tree, ec.e, x, (lo + x) / 2.0); };
                SideValues svLo = at(lo + (hi - lo) * 1e-9);
                SideValues svHi = at(hi - (hi - lo) * 1e-9);
                // A = low side grows with x, B shrinks; crossing only if the
                // order flips across the stretch
                if (svLo.low >= svLo.high || svHi.low <= svHi.high) continue;
                if (std::max(svLo.low, svHi.high) >= best.value) continue;  // cannot beat current best
                // locate the crossing of the two monotone branch values; the
                // overshoot of max(A,B) against the crossing value is bounded
                // by |A - B| at the final probe, which is the stop criterion
                double a = lo + (hi - lo) * 1e-9, b = hi - (hi - lo) * 1e-9;
                SideValues sa = svLo, sb = svHi;
                double bestVal = std::max(svLo.low, svLo.high);
                double bestX = a;
                if (std::max(svHi.low, svHi.high) < bestVal) {
                    bestVal = std::max(svHi.low, svHi.high);
                    bestX = b;
                }
                for (int iter = 0; iter < 200; ++iter) {
                    double ga = sa.high - sa.low;  // positive at a
                    double gb = sb.high - sb.low;  // negative at b
                    double mid = (a + b) / 2.0;
                    if (ga - gb > 0.0 && (iter % 2 == 0)) {
                        double secant = a + ga * (b - a) / (ga - gb);
                        double margin = 0.02 * (b - a);
                        if (secant > a + margin && secant < b - margin) mid = secant;
                    }
                    SideValues sm = at(mid);
                    double vm = std::max(sm.low, sm.high);
                    if (vm < bestVal) {
                        bestVal = vm;
                        bestX = mid;
                    }
                    if (sm.high >= sm.low) {
                        a = mid;
                        sa = sm;
                    } else {
                        b = mid;
                        sb = sm;
                    }
                    if (std::fabs(sm.high - sm.low) <= tol || (b - a) <= 1e-15 * std::max(1.0, hi)) break;
                }
                consider(GraphPoint::onEdge(ec.e, bestX), bestVal);
            }
        }
    }

    // flag when a one-sided limit near the winner dips below the attained
    // value (the infimum may then be unattained)
    if (!best.minimizer.isVertex()) {
        GraphPoint x = best.minimizer;
        double off = x.offset();
        double len = g.edge(x.edge()).length;
        double h = 1e-9 * std::max(1.0, len);
        double lim = best.value;
        for (double probe : {off - h, off + h}) {
            if (probe <= 0.0 || probe >= len) continue;
            if (!tree.contains(GraphPoint::onEdge(x.edge(), probe))) continue;
            lim = std::min(lim, phiCirc(phi, tree, GraphPoint::onEdge(x.edge(), probe)));
        }
        best.jumpAtMinimizer = (best.value - lim) > std::max(tol, 1e-12) * 10.0;
    }
    return best;
}

}  // namespace mgraph
