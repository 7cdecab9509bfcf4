#include "mgraph/measure.hpp"

#include <algorithm>
#include <cmath>

namespace mgraph {

double holderConjugate(double p) {
    if (std::isinf(p)) return 1.0;
    if (p == 1.0) return std::numeric_limits<double>::infinity();
    return p / (p - 1.0);
}

Measure::Measure(const MetricGraph& g) : g_(&g), density_(static_cast<size_t>(g.edgeCount())) {}

Measure Measure::lebesgue(const MetricGraph& g) {
    Measure m(g);
    m.setConstantDensity(1.0);
    return m;
}

void Measure::addAtom(const GraphPoint& pIn, double mass) {
    if (!(mass > 0.0)) fail(ErrorCode::BadInput, "atom mass must be positive");
    GraphPoint p = g_->canonical(pIn);
    for (Atom& a : atoms_) {
        if (a.point == p) {
            a.mass += mass;
            return;
        }
    }
    atoms_.push_back({p, mass});
    std::sort(atoms_.begin(), atoms_.end(), [](const Atom& a, const Atom& b) { return a.point < b.point; });
}

void Measure::addDensityPiece(EdgeId e, double from, double to, double value) {
    const Edge& ed = g_->edge(e);
    if (from < 0.0 || to > ed.length || from >= to) fail(ErrorCode::BadInput, "bad density piece bounds");
    if (value < 0.0) fail(ErrorCode::BadInput, "negative density");
    auto& pieces = density_[static_cast<size_t>(e)];
    for (const DensityPiece& dp : pieces)
        if (from < dp.to && dp.from < to) fail(ErrorCode::BadInput, "overlapping density pieces");
    pieces.push_back({from, to, value});
    std::sort(pieces.begin(), pieces.end(),
              [](const DensityPiece& a, const DensityPiece& b) { return a.from < b.from; });
}

void Measure::setConstantDensity(double value) {
    for (EdgeId e = 0; e < g_->edgeCount(); ++e) {
        density_[static_cast<size_t>(e)].clear();
        addDensityPiece(e, 0.0, g_->edge(e).length, value);
    }
}

double Measure::densityAt(EdgeId e, double offset) const {
    for (const DensityPiece& dp : density_[static_cast<size_t>(e)])
        if (dp.from <= offset && offset <= dp.to) return dp.value;
    return 0.0;
}

double Measure::maxDensity() const {
    double m = 0.0;
    for (const auto& pieces : density_)
        for (const DensityPiece& dp : pieces) m = std::max(m, dp.value);
    return m;
}

double Measure::of(const Subset& e) const {
    double total = 0.0;
    e.forEachInterval([&](EdgeId eid, double lo, double hi) {
        for (const DensityPiece& dp : density_[static_cast<size_t>(eid)]) {
            double a = std::max(lo, dp.from), b = std::min(hi, dp.to);
            if (a < b) total += (b - a) * dp.value;
        }
    });
    for (const Atom& atom : atoms_)
        if (e.contains(atom.point)) total += atom.mass;
    return total;
}

double Measure::total() const { return of(Subset::whole(*g_)); }

PiecewiseFunction::PiecewiseFunction(const MetricGraph& g)
    : g_(&g), pieces_(static_cast<size_t>(g.edgeCount())) {}

PiecewiseFunction PiecewiseFunction::constant(const MetricGraph& g, double value) {
    PiecewiseFunction f(g);
    for (EdgeId e = 0; e < g.edgeCount(); ++e) f.addConstantPiece(e, 0.0, g.edge(e).length, value);
    return f;
}

void PiecewiseFunction::setEdgeLinear(EdgeId e, const std::vector<double>& breakpoints,
                                      const std::vector<double>& values) {
    const Edge& ed = g_->edge(e);
    if (breakpoints.size() < 2 || breakpoints.size() != values.size())
        fail(ErrorCode::BadInput, "need matching breakpoints and values");
    if (breakpoints.front() != 0.0 || breakpoints.back() != ed.length)
        fail(ErrorCode::BadInput, "breakpoints must span the edge");
    for (size_t i = 1; i < breakpoints.size(); ++i)
        if (!(breakpoints[i] > breakpoints[i - 1]))
            fail(ErrorCode::BadInput, "breakpoints must be strictly increasing");
    auto& pieces = pieces_[static_cast<size_t>(e)];
    pieces.clear();
    for (size_t i = 0; i + 1 < breakpoints.size(); ++i) {
        Piece pc;
        pc.from = breakpoints[i];
        pc.to = breakpoints[i + 1];
        pc.c0 = values[i];
        pc.c1 = (values[i + 1] - values[i]) / (pc.to - pc.from);
        pieces.push_back(pc);
    }
}

void PiecewiseFunction::addConstantPiece(EdgeId e, double from, double to, double value) {
    const Edge& ed = g_->edge(e);
    if (from < 0.0 || to > ed.length || from >= to) fail(ErrorCode::BadInput, "bad piece bounds");
    auto& pieces = pieces_[static_cast<size_t>(e)];
    for (const Piece& pc : pieces)
        if (from < pc.to && pc.from < to) fail(ErrorCode::BadInput, "overlapping pieces");
    Piece pc;
    pc.from = from;
    pc.to = to;
    pc.c0 = value;
    pc.c1 = 0.0;
    pieces.push_back(pc);
    std::sort(pieces.begin(), pieces.end(), [](const Piece& a, const Piece& b) { return a.from < b.from; });
}

double PiecewiseFunction::at(EdgeId e, double offset) const {
    const auto& pieces = pieces_[static_cast<size_t>(e)];
    for (const Piece& pc : pieces)
        if (pc.from <= offset && offset <= pc.to) return pc.at(offset);
    fail(ErrorCode::BadInput, "function not defined at offset");
}

double PiecewiseFunction::at(const GraphPoint& pIn) const {
    GraphPoint p = g_->canonical(pIn);
    if (!p.isVertex()) return at(p.edge(), p.offset());
    for (auto [eid, side] : g_->incident(p.vertex())) {
        const Edge& ed = g_->edge(eid);
        double off = side == 0 ? 0.0 : ed.length;
        const auto& pieces = pieces_[static_cast<size_t>(eid)];
        for (const Piece& pc : pieces)
            if (pc.from <= off && off <= pc.to) return pc.at(off);
    }
    fail(ErrorCode::BadInput, "function not defined at vertex");
}

bool PiecewiseFunction::coversGraph() const {
    for (EdgeId e = 0; e < g_->edgeCount(); ++e) {
        const auto& pieces = pieces_[static_cast<size_t>(e)];
        double cursor = 0.0;
        for (const Piece& pc : pieces) {
            if (pc.from > cursor) return false;
            cursor = pc.to;
        }
        if (cursor < g_->edge(e).length) return false;
    }
    return true;
}

bool PiecewiseFunction::isPiecewiseConstant() const {
    for (const auto& pieces : pieces_)
        for (const Piece& pc : pieces)
            if (pc.c1 != 0.0) return false;
    return true;
}

double PiecewiseFunction::continuityDefect() const {
    double defect = 0.0;
    // interior breakpoints
    for (EdgeId e = 0; e < g_->edgeCount(); ++e) {
        const auto& pieces = pieces_[static_cast<size_t>(e)];
        for (size_t i = 0; i + 1 < pieces.size(); ++i)
            if (pieces[i].to == pieces[i + 1].from)
                defect = std::max(defect, std::fabs(pieces[i].at(pieces[i].to) - pieces[i + 1].c0));
    }
    // vertices: all incident edge values must agree
    for (VertexId v = 0; v < g_->vertexCount(); ++v) {
        double lo = 0.0, hi = 0.0;
        bool first = true;
        for (auto [eid, side] : g_->incident(v)) {
            const Edge& ed = g_->edge(eid);
            double off = side == 0 ? 0.0 : ed.length;
            for (const Piece& pc : pieces_[static_cast<size_t>(eid)]) {
                if (pc.from <= off && off <= pc.to) {
                    double val = pc.at(off);
                    if (first) {
                        lo = hi = val;
                        first = false;
                    } else {
                        lo = std::min(lo, val);
                        hi = std::max(hi, val);
                    }
                }
            }
        }
        if (!first) defect = std::max(defect, hi - lo);
    }
    return defect;
}

void PiecewiseFunction::requireContinuous() const {
    if (!coversGraph()) fail(ErrorCode::BadInput, "function does not cover the graph");
    double scale = 1.0;
    for (const auto& pieces : pieces_)
        for (const Piece& pc : pieces) scale = std::max({scale, std::fabs(pc.c0), std::fabs(pc.at(pc.to))});
    if (continuityDefect() > 1e-12 * scale) fail(ErrorCode::DiscontinuousInput, "function is discontinuous");
}

bool PiecewiseFunction::positive() const {
    if (!coversGraph()) return false;
    for (const auto& pieces : pieces_)
        for (const Piece& pc : pieces)
            if (!(pc.c0 > 0.0) || !(pc.at(pc.to) > 0.0)) return false;
    return true;
}

PiecewiseFunction PiecewiseFunction::mapScaled(double scale, double shift) const {
    PiecewiseFunction out(*g_);
    out.pieces_ = pieces_;
    for (auto& pieces : out.pieces_) {
        for (Piece& pc : pieces) {
            pc.c0 = scale * pc.c0 + shift;
            pc.c1 = scale * pc.c1;
        }
    }
    return out;
}

PiecewiseFunction combineLinear(double alpha, const PiecewiseFunction& u1, const PiecewiseFunction& u2) {
    const MetricGraph& g = u1.graph();
    PiecewiseFunction out(g);
    for (EdgeId e = 0; e < g.edgeCount(); ++e) {
        std::vector<double> breaks;
        for (const auto& pc : u1.edgePieces(e)) {
            breaks.push_back(pc.from);
            breaks.push_back(pc.to);
        }
        for (const auto& pc : u2.edgePieces(e)) {
            breaks.push_back(pc.from);
            breaks.push_back(pc.to);
        }
        std::sort(breaks.begin(), breaks.end());
        breaks.erase(std::unique(breaks.begin(), breaks.end()), breaks.end());
        std::vector<double> values;
        for (double b : breaks) values.push_back(alpha * u1.at(e, b) + u2.at(e, b));
        // interior sample fixes slopes when both inputs share a breakpoint
        out.setEdgeLinear(e, breaks, values);
    }
    return out;
}

double affinePowerIntegral(double f_lo, double f_hi, double lo, double hi, double p, double w) {
    if (hi <= lo || w == 0.0) return 0.0;
    double len = hi - lo;
    double slope = (f_hi - f_lo) / len;
    auto anti = [p](double v) {  // antiderivative of |v|^p in v
        return std::pow(std::fabs(v), p + 1.0) * (v < 0.0 ? -1.0 : 1.0) / (p + 1.0);
    };
    if (slope == 0.0) return w * std::pow(std::fabs(f_lo), p) * len;
    if (f_lo == 0.0 && f_hi == 0.0) return 0.0;
    if ((f_lo >= 0.0 && f_hi >= 0.0) || (f_lo <= 0.0 && f_hi <= 0.0))
        return w * (anti(f_hi) - anti(f_lo)) / slope;
    // sign change: split at the root
    double root = lo - f_lo / slope;
    return affinePowerIntegral(f_lo, 0.0, lo, root, p, w) + affinePowerIntegral(0.0, f_hi, root, hi, p, w);
}

namespace {

// visit overlaps of subset intervals with function pieces (and optional
// weight pieces); fn(lo, hi, piece, weightValue)
void forOverlaps(const Subset& e, const PiecewiseFunction& f, const PiecewiseFunction* weight,
                 const std::function<void(double, double, const PiecewiseFunction::Piece&, double)>& fn) {
    e.forEachInterval([&](EdgeId eid, double lo, double hi) {
        for (const auto& pc : f.edgePieces(eid)) {
            double a = std::max(lo, pc.from), b = std::min(hi, pc.to);
            if (a >= b) continue;
            if (!weight) {
                fn(a, b, pc, 1.0);
            } else {
                for (const auto& wp : weight->edgePieces(eid)) {
                    double wa = std::max(a, wp.from), wb = std::min(b, wp.to);
                    if (wa < wb) fn(wa, wb, pc, wp.c0);
                }
            }
        }
    });
}

}  // namespace

double lpNorm(const PiecewiseFunction& f, double p, const Subset& e, const PiecewiseFunction* weight) {
    if (weight && !weight->isPiecewiseConstant()) fail(ErrorCode::BadInput, "weight must be piecewise constant");
    if (std::isinf(p)) {
        double sup = 0.0;
        forOverlaps(e, f, weight, [&](double a, double b, const PiecewiseFunction::Piece& pc, double w) {
            if (w <= 0.0 && weight) return;  // ess sup w.r.t. weight dx ignores null regions
            sup = std::max(sup, std::max(std::fabs(pc.at(a)), std::fabs(pc.at(b))));
        });
        return sup;
    }
    if (p < 1.0) fail(ErrorCode::BadInput, "p must be >= 1");
    double total = 0.0;
    forOverlaps(e, f, weight, [&](double a, double b, const PiecewiseFunction::Piece& pc, double w) {
        total += affinePowerIntegral(pc.at(a), pc.at(b), a, b, p, w);
    });
    return std::pow(total, 1.0 / p);
}

double derivativeNorm(const PiecewiseFunction& u, double p, const PiecewiseFunction& a, const Subset& e) {
    if (!a.isPiecewiseConstant()) fail(ErrorCode::BadInput, "weight must be piecewise constant");
    if (std::isinf(p)) {
        double sup = 0.0;
        e.forEachInterval([&](EdgeId eid, double lo, double hi) {
            for (const auto& pc : u.edgePieces(eid)) {
                double x = std::max(lo, pc.from), y = std::min(hi, pc.to);
                if (x >= y) continue;
                for (const auto& ap : a.edgePieces(eid)) {
                    double wa = std::max(x, ap.from), wb = std::min(y, ap.to);
                    if (wa < wb) sup = std::max(sup, ap.c0 * std::fabs(pc.c1));
                }
            }
        });
        return sup;
    }
    if (p < 1.0) fail(ErrorCode::BadInput, "p must be >= 1");
    double total = 0.0;
    e.forEachInterval([&](EdgeId eid, double lo, double hi) {
        for (const auto& pc : u.edgePieces(eid)) {
            double x = std::max(lo, pc.from), y = std::min(hi, pc.to);
            if (x >= y) continue;
            for (const auto& ap : a.edgePieces(eid)) {
                double wa = std::max(x, ap.from), wb = std::min(y, ap.to);
                if (wa < wb) total += ap.c0 * std::pow(std::fabs(pc.c1), p) * (wb - wa);
            }
        }
    });
    return std::pow(total, 1.0 / p);
}

}  // namespace mgraph
