#include <doctest.h>

#include "mgraph/approx.hpp"
#include "mgraph/random_instances.hpp"
#include "test_helpers.hpp"

using namespace mgraph;
using namespace mgraph::testing;

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

PiecewiseFunction identityOnSegment(const MetricGraph& seg) {
    PiecewiseFunction u(seg);
    u.setEdgeLinear(0, {0.0, 1.0}, {0.0, 1.0});
    return u;
}

PiecewiseFunction distanceFromCenter(const MetricGraph& star) {
    PiecewiseFunction u(star);
    for (EdgeId e = 0; e < star.edgeCount(); ++e) u.setEdgeLinear(e, {0.0, 1.0}, {0.0, 1.0});
    return u;
}

}  // namespace

TEST_CASE("uniform approximation of u(x) = x with n = 1 at p = inf") {
    MetricGraph seg = segmentGraph();
    PiecewiseFunction u = identityOnSegment(seg);
    PiecewiseFunction a = PiecewiseFunction::constant(seg, 1.0);
    UniformApproxResult res = approximateUniform(u, kInf, a, 1);
    REQUIRE(res.v.partCount() == 1);
    CHECK(res.v.values()[0] == doctest::Approx(0.5).epsilon(1e-12));
    CHECK(res.achieved == doctest::Approx(0.5).epsilon(1e-12));
    CHECK(res.bound == doctest::Approx(0.5).epsilon(1e-12));
    CHECK(std::fabs(res.achieved - res.bound) <= 1e-12);
}

TEST_CASE("uniform approximation of the distance function on the 3-star") {
    MetricGraph star = makeStarGraph(3);
    PiecewiseFunction u = distanceFromCenter(star);
    PiecewiseFunction a = PiecewiseFunction::constant(star, 1.0);
    UniformApproxResult res = approximateUniform(u, kInf, a, 2);
    CHECK(res.bound == doctest::Approx(1.0));
    CHECK(res.achieved == doctest::Approx(1.0));
    REQUIRE(res.v.partCount() == 2);
    std::vector<double> vals = res.v.values();
    std::sort(vals.begin(), vals.end());
    CHECK(vals[0] == doctest::Approx(0.0));
    CHECK(vals[1] == doctest::Approx(0.5));
}

TEST_CASE("constants are reproduced exactly") {
    Rng rng(7474);
    MetricGraph g = randomGraph(rng, 7, true);
    PiecewiseFunction c = PiecewiseFunction::constant(g, 3.25);
    PiecewiseFunction a = randomPiecewiseConstant(rng, g, 0.5, 2.0, 2);
    for (double p : {1.0, 2.0, kInf}) {
        UniformApproxResult res = approximateUniform(c, p, a, 3);
        CHECK(res.achieved == doctest::Approx(0.0));
        for (double v : res.v.values()) CHECK(v == 3.25);
    }
    Measure mu = randomMeasure(rng, g, true);
    LpOperatorResult op = buildLpOperator(mu, a, 2.0, 3);
    StepFunction pv = op.op.apply(c);
    for (double v : pv.values()) CHECK(v == 3.25);
}

TEST_CASE("sup error and lp error in closed form") {
    MetricGraph seg = segmentGraph();
    PiecewiseFunction u = identityOnSegment(seg);
    StepFunction half({Subset::whole(seg)}, {0.5});
    CHECK(supError(u, half) == doctest::Approx(0.5));
    CHECK(lpError(u, half, Measure::lebesgue(seg), 2.0) == doctest::Approx(std::sqrt(1.0 / 12.0)));

    // atom at the junction: it belongs to the part containing the point 1/2
    Subset left(seg);
    left.addInterval(0, 0.0, 0.5);
    left.excludePoint(GraphPoint::onEdge(0, 0.5));
    Subset right(seg);
    right.addInterval(0, 0.5, 1.0);
    StepFunction v({left, right}, {0.0, 0.75});
    Measure atom(seg);
    atom.addAtom(GraphPoint::onEdge(0, 0.5), 1.0);
    CHECK(lpError(u, v, atom, 1.0) == doctest::Approx(0.25));

    PiecewiseFunction uc = PiecewiseFunction::constant(seg, 0.0);
    StepFunction zero({Subset::whole(seg)}, {0.0});
    CHECK(supError(uc, zero) == doctest::Approx(0.0));
}

TEST_CASE("lp error with p = inf rejects atomic measures") {
    MetricGraph seg = segmentGraph();
    PiecewiseFunction u = identityOnSegment(seg);
    StepFunction v({Subset::whole(seg)}, {0.5});
    Measure atom(seg);
    atom.addAtom(GraphPoint::onEdge(0, 0.5), 1.0);
    try {
        lpError(u, v, atom, kInf);
        CHECK(false);
    } catch (const Error& ex) {
        CHECK(ex.code() == ErrorCode::UnboundedWeight);
    }
}

TEST_CASE("lp operator on the segment matches the length trace") {
    MetricGraph seg = segmentGraph();
    LpOperatorResult res = buildLpOperator(Measure::lebesgue(seg), PiecewiseFunction::constant(seg, 1.0), 2.0, 3);
    REQUIRE(res.op.rank() == 3);
    std::vector<double> mids;
    for (const GraphPoint& p : res.op.evaluationPoints()) mids.push_back(p.offset());
    std::sort(mids.begin(), mids.end());
    CHECK(mids[0] == doctest::Approx(0.25).epsilon(1e-8));
    CHECK(mids[1] == doctest::Approx(0.625).epsilon(1e-8));
    CHECK(mids[2] == doctest::Approx(0.875).epsilon(1e-8));
}

TEST_CASE("operator linearity") {
    Rng rng(8888);
    for (int trial = 0; trial < 10; ++trial) {
        MetricGraph g = randomGraph(rng, 7, true);
        Measure mu = randomMeasure(rng, g, true);
        PiecewiseFunction a = randomPiecewiseConstant(rng, g, 0.5, 2.0, 2);
        LpOperatorResult res = buildLpOperator(mu, a, 2.0, 4);
        PiecewiseFunction u1 = randomContinuousPiecewiseLinear(rng, g, 2);
        PiecewiseFunction u2 = randomContinuousPiecewiseLinear(rng, g, 2);
        double alpha = -1.5 + 3.0 * static_cast<double>(rng() % 100) / 99.0;
        PiecewiseFunction combo = combineLinear(alpha, u1, u2);
        StepFunction lhs = res.op.apply(combo);
        StepFunction r1 = res.op.apply(u1);
        StepFunction r2 = res.op.apply(u2);
        for (size_t j = 0; j < lhs.values().size(); ++j) {
            double rhs = alpha * r1.values()[j] + r2.values()[j];
            CHECK(lhs.values()[j] == doctest::Approx(rhs).epsilon(1e-12));
        }
    }
}

TEST_CASE("uniform bound holds across random instances and exponents") {
    Rng rng(424243);
    for (int trial = 0; trial < 40; ++trial) {
        MetricGraph g = randomGraph(rng, 8, true);
        PiecewiseFunction u = randomContinuousPiecewiseLinear(rng, g, 2);
        PiecewiseFunction a = randomPiecewiseConstant(rng, g, 0.4, 2.5, 2);
        double p = std::vector<double>{1.0, 2.0, 3.0, kInf}[static_cast<size_t>(trial % 4)];
        int n = 1 + trial % 5;
        UniformApproxResult res = approximateUniform(u, p, a, n);
        CHECK(res.v.partCount() <= n);
        CHECK(res.achieved <= res.bound * (1.0 + 1e-8) + 1e-15);
    }
}

TEST_CASE("weighted bound holds across random instances") {
    Rng rng(515151);
    for (int trial = 0; trial < 40; ++trial) {
        MetricGraph g = randomGraph(rng, 8, true);
        PiecewiseFunction u = randomContinuousPiecewiseLinear(rng, g, 2);
        PiecewiseFunction a = randomPiecewiseConstant(rng, g, 0.4, 2.5, 2);
        double p = std::vector<double>{1.0, 2.0, 3.0}[static_cast<size_t>(trial % 3)];
        int n = 1 + trial % 5;
        Measure mu = randomMeasure(rng, g, true);
        LpOperatorResult res = buildLpOperator(mu, a, p, n);
        CHECK(res.op.rank() <= n);
        StepFunction v = res.op.apply(u);
        double err = lpError(u, v, mu, p);
        double bound = res.boundFactor * derivativeNorm(u, p, a, Subset::whole(g));
        CHECK(err <= bound * (1.0 + 1e-8) + 1e-15);
    }
}

TEST_CASE("star sharpness, uniform mode") {
    for (int N = 2; N <= 6; ++N) {
        SharpnessReport rep = sharpnessStar(N, 2.0, "uniform");
        CHECK(rep.pass);
        CHECK(rep.achieved == doctest::Approx(rep.bound).epsilon(1e-10));
        CHECK(rep.bound == doctest::Approx(1.0));
    }
}

TEST_CASE("star sharpness, weighted mode at p = 2") {
    for (int N = 2; N <= 5; ++N) {
        SharpnessReport rep = sharpnessStar(N, 2.0, "lp");
        CHECK(rep.pass);
        CHECK(rep.achieved == doctest::Approx(1.0).epsilon(1e-6));
        CHECK(rep.bound == doctest::Approx(1.0));
    }
}

TEST_CASE("step function membership resolves by part") {
    MetricGraph seg = segmentGraph();
    Subset left(seg);
    left.addInterval(0, 0.0, 0.5);
    Subset right(seg);
    right.addInterval(0, 0.5, 1.0);
    right.excludePoint(GraphPoint::onEdge(0, 0.5));
    StepFunction v({left, right}, {1.0, 2.0});
    CHECK(v.at(GraphPoint::onEdge(0, 0.5)) == 1.0);
    CHECK(v.at(GraphPoint::onEdge(0, 0.51)) == 2.0);
}
