#include "mgraph/approx.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "mgraph/svd.hpp"

namespace mgraph {

StepFunction::StepFunction(std::vector<Subset> parts, std::vector<double> values)
    : parts_(std::move(parts)), values_(std::move(values)) {
    if (parts_.size() != values_.size()) fail(ErrorCode::BadInput, "one value per part required");
    if (parts_.empty()) fail(ErrorCode::BadInput, "step function needs at least one part");
}

double StepFunction::at(const GraphPoint& p) const {
    for (size_t j = 0; j < parts_.size(); ++j)
        if (parts_[j].contains(p)) return values_[j];
    fail(ErrorCode::PointNotOnGraph, "point not covered by any part");
}

ApproxOperator::ApproxOperator(std::vector<Subset> parts, std::vector<GraphPoint> points)
    : parts_(std::move(parts)), points_(std::move(points)) {
    if (parts_.size() != points_.size()) fail(ErrorCode::BadInput, "one evaluation point per part required");
}

StepFunction ApproxOperator::apply(const PiecewiseFunction& u) const {
    std::vector<double> values;
    values.reserve(points_.size());
    for (const GraphPoint& p : points_) values.push_back(u.at(p));
    return StepFunction(parts_, values);
}

UniformApproxResult approximateUniform(const PiecewiseFunction& u, double p, const PiecewiseFunction& a,
                                       int n, double tol) {
    u.requireContinuous();
    const MetricGraph& g = u.graph();
    FunctionalPtr phi = makePhiU(u, a, p);
    PartitionResult pr = partitionGraph(g, phi, n, tol);

    std::vector<Subset> parts;
    std::vector<double> values;
    std::vector<GraphPoint> points;
    for (const PartitionPart& part : pr.parts) {
        GraphPoint x = pr.cut->mapPoint(part.tilde.minimizer);
        parts.push_back(part.graphSide);
        points.push_back(x);
        values.push_back(u.at(x));
    }
    PiecewiseFunction w = sobolevWeightDual(a, p);
    double bound = lpNorm(w, holderConjugate(p), Subset::whole(g)) * derivativeNorm(u, p, a, Subset::whole(g)) /
                   (n + 1.0);
    UniformApproxResult res{StepFunction(std::move(parts), std::move(values)), std::move(pr), bound, 0.0,
                            std::move(points)};
    res.achieved = supError(u, res.v);
    return res;
}

LpOperatorResult buildLpOperator(const Measure& mu, const PiecewiseFunction& a, double p, int n, double tol) {
    if (std::isinf(p)) fail(ErrorCode::BadInput, "the weighted operator requires p < inf");
    const MetricGraph& g = a.graph();
    FunctionalPtr phi = makePhiMu(a, p, mu);
    PartitionResult pr = partitionGraph(g, phi, n, tol);
    std::vector<Subset> parts;
    std::vector<GraphPoint> points;
    for (const PartitionPart& part : pr.parts) {
        parts.push_back(part.graphSide);
        points.push_back(pr.cut->mapPoint(part.tilde.minimizer));
    }
    PiecewiseFunction w = sobolevWeightDual(a, p);
    double factor = lpNorm(w, holderConjugate(p), Subset::whole(g)) * std::pow(mu.total(), 1.0 / p) / (n + 1.0);
    return LpOperatorResult{ApproxOperator(std::move(parts), std::move(points)), std::move(pr), factor};
}

double supError(const PiecewiseFunction& u, const StepFunction& v) {
    double sup = 0.0;
    for (size_t j = 0; j < v.parts().size(); ++j) {
        const Subset& part = v.parts()[j];
        double c = v.values()[j];
        part.forEachInterval([&](EdgeId e, double lo, double hi) {
            for (const auto& pc : u.edgePieces(e)) {
                double x = std::max(lo, pc.from), y = std::min(hi, pc.to);
                if (x > y) continue;
                sup = std::max(sup, std::fabs(pc.at(x) - c));
                sup = std::max(sup, std::fabs(pc.at(y) - c));
            }
        });
        for (VertexId vert : part.includedVertices())
            sup = std::max(sup, std::fabs(u.at(GraphPoint::atVertex(vert)) - c));
    }
    return sup;
}

double lpError(const PiecewiseFunction& u, const StepFunction& v, const Measure& mu, double p) {
    if (std::isinf(p)) {
        if (mu.hasAtoms()) fail(ErrorCode::UnboundedWeight, "p = inf requires an atom-free weight");
        double sup = 0.0;
        for (size_t j = 0; j < v.parts().size(); ++j) {
            const Subset& part = v.parts()[j];
            double c = v.values()[j];
            part.forEachInterval([&](EdgeId e, double lo, double hi) {
                for (const auto& pc : u.edgePieces(e)) {
                    double x = std::max(lo, pc.from), y = std::min(hi, pc.to);
                    if (x > y) continue;
                    for (const auto& dp : mu.density()[static_cast<size_t>(e)]) {
                        if (dp.value <= 0.0) continue;
                        double wx = std::max(x, dp.from), wy = std::min(y, dp.to);
                        if (wx >= wy) continue;
                        sup = std::max(sup, std::fabs(pc.at(wx) - c));
                        sup = std::max(sup, std::fabs(pc.at(wy) - c));
                    }
                }
            });
        }
        return sup;
    }
    double total = 0.0;
    for (size_t j = 0; j < v.parts().size(); ++j) {
        const Subset& part = v.parts()[j];
        double c = v.values()[j];
        part.forEachInterval([&](EdgeId e, double lo, double hi) {
            for (const auto& pc : u.edgePieces(e)) {
                double x = std::max(lo, pc.from), y = std::min(hi, pc.to);
                if (x >= y) continue;
                for (const auto& dp : mu.density()[static_cast<size_t>(e)]) {
                    double wx = std::max(x, dp.from), wy = std::min(y, dp.to);
                    if (wx < wy) total += affinePowerIntegral(pc.at(wx) - c, pc.at(wy) - c, wx, wy, p, dp.value);
                }
            }
        });
    }
    for (const Measure::Atom& atom : mu.atoms()) {
        double diff = std::fabs(u.at(atom.point) - v.at(atom.point));
        total += atom.mass * std::pow(diff, p);
    }
    return std::pow(total, 1.0 / p);
}

MetricGraph makeStarGraph(int arms, double armLength) {
    if (arms < 1) fail(ErrorCode::BadInput, "star needs at least one arm");
    std::vector<EdgeSpec> edges;
    for (int k = 1; k <= arms; ++k)
        edges.push_back({"e" + std::to_string(k), "o", "v" + std::to_string(k), armLength});
    return MetricGraph({}, edges);
}

namespace {

// residual matrix of the operator on the hat-slope family: row k lists the
// coefficients of (u - Pu)(v_k) in the arm slopes c_1..c_N
Matrix starResidualMatrix(const MetricGraph& star, int arms, const LpOperatorResult& lp) {
    Matrix m(arms, arms);
    GraphPoint o = GraphPoint::atVertex(*star.findVertex("o"));
    for (int k = 1; k <= arms; ++k) {
        VertexId vk = *star.findVertex("v" + std::to_string(k));
        GraphPoint pk = GraphPoint::atVertex(vk);
        int owner = -1;
        for (size_t j = 0; j < lp.op.parts().size(); ++j)
            if (lp.op.parts()[j].contains(pk)) owner = static_cast<int>(j);
        if (owner < 0) fail(ErrorCode::Internal, "partition does not cover a boundary vertex");
        GraphPoint x = lp.op.evaluationPoints()[static_cast<size_t>(owner)];
        // u_c(x) = c_i * rho(o, x) when x lies on arm i
        m.at(k - 1, k - 1) += 1.0;  // u(v_k) = c_k
        if (x.isVertex()) {
            VertexId xv = x.vertex();
            for (int i = 1; i <= arms; ++i)
                if (xv == *star.findVertex("v" + std::to_string(i))) m.at(k - 1, i - 1) -= 1.0;
            // x == o contributes zero
        } else {
            m.at(k - 1, x.edge()) -= star.distance(o, x);
        }
    }
    return m;
}

}  // namespace

SharpnessReport sharpnessStar(int starSize, double p, const std::string& mode, double tol) {
    if (starSize < 2) fail(ErrorCode::BadInput, "star sharpness needs N >= 2");
    SharpnessReport rep;
    rep.starSize = starSize;
    rep.p = p;
    rep.mode = mode;
    MetricGraph star = makeStarGraph(starSize);
    int n = starSize - 1;

    if (mode == "uniform") {
        PartitionResult pr = partitionGraph(star, makeLength(star), n, tol);
        rep.achieved = pr.maxTilde();
        rep.bound = pr.bound;
    } else if (mode == "lp") {
        Measure mu(star);
        for (int k = 1; k <= starSize; ++k)
            mu.addAtom(GraphPoint::atVertex(*star.findVertex("v" + std::to_string(k))), 1.0);
        PiecewiseFunction a = PiecewiseFunction::constant(star, 1.0);
        LpOperatorResult lp = buildLpOperator(mu, a, p, n, tol);
        Matrix residual = starResidualMatrix(star, starSize, lp);
        double worst;
        if (p == 2.0) {
            worst = spectralNorm(residual);
        } else {
            // candidate slopes: coordinate vectors and the symmetric vector
            worst = 0.0;
            auto tryVector = [&](const std::vector<double>& c) {
                double num = 0.0, den = 0.0;
                for (int k = 0; k < starSize; ++k) {
                    double r = 0.0;
                    for (int i = 0; i < starSize; ++i) r += residual.at(k, i) * c[static_cast<size_t>(i)];
                    num += std::pow(std::fabs(r), p);
                    den += std::pow(std::fabs(c[static_cast<size_t>(k)]), p);
                }
                if (den > 0.0) worst = std::max(worst, std::pow(num / den, 1.0 / p));
            };
            for (int k = 0; k < starSize; ++k) {
                std::vector<double> c(static_cast<size_t>(starSize), 0.0);
                c[static_cast<size_t>(k)] = 1.0;
                tryVector(c);
            }
            tryVector(std::vector<double>(static_cast<size_t>(starSize), 1.0));
        }
        rep.achieved = worst;
        rep.bound = std::pow(star.totalLength(), 1.0 / holderConjugate(p)) * std::pow(mu.total(), 1.0 / p) /
                    (n + 1.0);
    } else {
        fail(ErrorCode::BadInput, "mode must be uniform or lp");
    }
    rep.relError = std::fabs(rep.achieved - rep.bound) / std::max(rep.bound, 1e-300);
    rep.pass = rep.relError <= (mode == "uniform" ? 1e-8 : 1e-6);
    return rep;
}

}  // namespace mgraph
