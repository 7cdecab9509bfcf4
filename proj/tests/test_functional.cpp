#include <doctest.h>

#include "mgraph/approx.hpp"
#include "mgraph/random_instances.hpp"
#include "test_helpers.hpp"

using namespace mgraph;
using namespace mgraph::testing;

namespace {

Subset prefix(const MetricGraph& seg, double t) {
    Subset s(seg);
    s.addInterval(0, 0.0, t);
    return s;
}

}  // namespace

TEST_CASE("product functional values") {
    MetricGraph seg = segmentGraph();
    Measure len = Measure::lebesgue(seg);
    FunctionalPtr collapse = makeProduct(len, len, 0.5);
    CHECK(collapse->eval(prefix(seg, 0.4)) == doctest::Approx(0.4));

    MetricGraph star = makeStarGraph(3);
    Measure length3 = Measure::lebesgue(star);
    Measure deltas(star);
    for (int k = 1; k <= 3; ++k) deltas.addAtom(GraphPoint::atVertex(*star.findVertex("v" + std::to_string(k))), 1.0);
    FunctionalPtr phi = makeProduct(length3, deltas, 0.5);
    CHECK(phi->eval(Subset::whole(star)) == doctest::Approx(3.0));

    Measure d1(seg), d4(seg);
    d1.addDensityPiece(0, 0.0, 1.0, 1.0);
    d4.addDensityPiece(0, 0.0, 1.0, 4.0);
    FunctionalPtr mix = makeProduct(d1, d4, 0.5);
    CHECK(mix->eval(prefix(seg, 0.5)) == doctest::Approx(1.0));
}

TEST_CASE("atomic first factor is rejected") {
    MetricGraph seg = segmentGraph();
    Measure atomic(seg);
    atomic.addAtom(GraphPoint::onEdge(0, 0.5), 1.0);
    try {
        makeProduct(atomic, Measure::lebesgue(seg), 0.5);
        CHECK(false);
    } catch (const Error& ex) {
        CHECK(ex.code() == ErrorCode::AtomicFirstMeasure);
    }
}

TEST_CASE("phi_u, phi_mu, phi_theta closed forms on the segment") {
    MetricGraph seg = segmentGraph();
    PiecewiseFunction u(seg);
    u.setEdgeLinear(0, {0.0, 1.0}, {0.0, 1.0});
    PiecewiseFunction a = PiecewiseFunction::constant(seg, 1.0);
    FunctionalPtr phiU = makePhiU(u, a, 2.0);
    for (double t : {0.25, 0.5, 0.9}) CHECK(phiU->eval(prefix(seg, t)) == doctest::Approx(t));

    FunctionalPtr phiMu = makePhiMu(a, 2.0, Measure::lebesgue(seg));
    for (double t : {0.3, 0.8}) CHECK(phiMu->eval(prefix(seg, t)) == doctest::Approx(t));

    FunctionalPtr phiTheta = makePhiTheta(0.75, 2.0, Measure::lebesgue(seg));
    for (double t : {0.2, 0.6}) CHECK(phiTheta->eval(prefix(seg, t)) == doctest::Approx(t));

    // cross-check the generic factors against lp_norm
    PiecewiseFunction w = sobolevWeightDual(a, 2.0);
    CHECK(phiU->eval(prefix(seg, 0.49)) ==
          doctest::Approx(lpNorm(w, 2.0, prefix(seg, 0.49)) * derivativeNorm(u, 2.0, a, prefix(seg, 0.49))));
}

TEST_CASE("canonical split") {
    MetricGraph seg = segmentGraph();
    auto split = canonicalSplit(Subset::whole(seg), GraphPoint::onEdge(0, 0.5));
    REQUIRE(split.branches.size() == 2);
    CHECK(split.branches[0].length() + split.branches[1].length() == doctest::Approx(1.0));
    for (const Subset& b : split.branches) CHECK(b.contains(GraphPoint::onEdge(0, 0.5)));

    MetricGraph star = makeStarGraph(3);
    auto atCenter = canonicalSplit(Subset::whole(star), GraphPoint::atVertex(*star.findVertex("o")));
    REQUIRE(atCenter.branches.size() == 3);
    for (const Subset& b : atCenter.branches) CHECK(b.length() == doctest::Approx(1.0));

    auto midArm = canonicalSplit(Subset::whole(star), GraphPoint::onEdge(0, 0.5));
    REQUIRE(midArm.branches.size() == 2);
    double l0 = midArm.branches[0].length(), l1 = midArm.branches[1].length();
    CHECK(std::min(l0, l1) == doctest::Approx(0.5));
    CHECK(std::max(l0, l1) == doctest::Approx(2.5));
}

TEST_CASE("canonical split requires a tree") {
    MetricGraph tri = triangleGraph();
    CHECK_THROWS_AS(canonicalSplit(Subset::whole(tri), GraphPoint::onEdge(0, 0.5)), Error);
}

TEST_CASE("tilde phi on a segment, a star, and a point") {
    MetricGraph seg = segmentGraph();
    FunctionalPtr len = makeLength(seg);
    TildeResult tr = tildePhi(*len, Subset::whole(seg), 1e-10);
    CHECK(tr.value == doctest::Approx(0.5).epsilon(1e-9));
    CHECK(tr.minimizer.offset() == doctest::Approx(0.5).epsilon(1e-8));

    MetricGraph star = makeStarGraph(3);
    FunctionalPtr len3 = makeLength(star);
    TildeResult trStar = tildePhi(*len3, Subset::whole(star), 1e-10);
    CHECK(trStar.value == doctest::Approx(1.0));
    CHECK(trStar.minimizer.isVertex());
    CHECK(star.vertexLabel(trStar.minimizer.vertex()) == "o");

    Subset point = Subset::singlePoint(star, GraphPoint::onEdge(0, 0.3));
    CHECK(tildePhi(*len3, point, 1e-10).value == doctest::Approx(0.0));
}

TEST_CASE("tilde phi of one closed edge is half its length") {
    MetricGraph g({}, {{"e", "a", "b", 1.7}});
    TildeResult tr = tildePhi(*makeLength(g), Subset::whole(g), 1e-12);
    CHECK(tr.value == doctest::Approx(0.85).epsilon(1e-9));
}

TEST_CASE("tilde phi never exceeds phi and is label-invariant") {
    Rng rng(1234);
    for (int trial = 0; trial < 15; ++trial) {
        MetricGraph g = randomGraph(rng, 7, false);
        FunctionalPtr phi = randomFunctional(rng, g, true);
        Subset whole = Subset::whole(g);
        TildeResult tr = tildePhi(*phi, whole, defaultTildeTol(*phi));
        CHECK(tr.value <= phi->eval(whole) * (1.0 + 1e-12) + 1e-15);
    }

    // relabeling: reverse the declaration order of the star arms
    MetricGraph star = makeStarGraph(3);
    MetricGraph starRev({}, {{"e3", "o", "v3", 1.0}, {"e2", "o", "v2", 1.0}, {"e1", "o", "v1", 1.0}});
    double v1 = tildePhi(*makeLength(star), Subset::whole(star), 1e-12).value;
    double v2 = tildePhi(*makeLength(starRev), Subset::whole(starRev), 1e-12).value;
    CHECK(v1 == doctest::Approx(v2).epsilon(1e-12));
}

TEST_CASE("tilde phi dips at atoms") {
    // product of length and a pure atom at 0.5: puncturing at the atom
    // kills one factor, so the minimum is 0 exactly at the atom
    MetricGraph seg = segmentGraph();
    Measure atom(seg);
    atom.addAtom(GraphPoint::onEdge(0, 0.5), 1.0);
    FunctionalPtr phi = makeProduct(Measure::lebesgue(seg), atom, 0.5);
    TildeResult tr = tildePhi(*phi, Subset::whole(seg), 1e-12);
    CHECK(tr.value == doctest::Approx(0.0));
    CHECK(!tr.minimizer.isVertex());
    CHECK(tr.minimizer.offset() == doctest::Approx(0.5));
}

TEST_CASE("tilde phi matches a brute-force grid search") {
    Rng rng(246810);
    for (int trial = 0; trial < 30; ++trial) {
        MetricGraph g = randomGraph(rng, 8, false);
        FunctionalPtr phi = randomFunctional(rng, g, true);
        Subset tree = randomSubtree(rng, g);
        if (tree.length() <= 0.0) continue;
        double scale = phi->eval(tree);
        TildeResult tr = tildePhi(*phi, tree, 1e-10 * std::max(scale, 1e-300));
        // grid oracle: vertices plus a uniform sample of every interval
        double gridMin = std::numeric_limits<double>::infinity();
        for (VertexId v = 0; v < g.vertexCount(); ++v) {
            GraphPoint x = GraphPoint::atVertex(v);
            if (tree.closureContains(x)) gridMin = std::min(gridMin, phiCirc(*phi, tree, x));
        }
        tree.forEachInterval([&](EdgeId e, double lo, double hi) {
            for (int k = 0; k <= 80; ++k) {
                double off = lo + (hi - lo) * k / 80.0;
                if (off <= 0.0 || off >= g.edge(e).length) continue;
                gridMin = std::min(gridMin, phiCirc(*phi, tree, GraphPoint::onEdge(e, off)));
            }
        });
        // the reported value is attained, so it cannot beat the true minimum,
        // and it must not exceed the (coarser) grid minimum
        CHECK(tr.value <= gridMin * (1.0 + 1e-9) + 1e-12 * scale);
        CHECK(phiCirc(*phi, tree, tr.minimizer) == doctest::Approx(tr.value).epsilon(1e-12));
    }
}

TEST_CASE("random-split super-additivity") {
    Rng rng(987);
    int done = 0;
    for (int trial = 0; trial < 200 && done < 100; ++trial) {
        MetricGraph g = randomGraph(rng, 8, true);
        FunctionalPtr phi = randomFunctional(rng, g, true);
        Subset base = Subset::whole(g);
        auto parts = randomPartitionOf(rng, base, 2 + trial % 5);
        if (parts.size() < 2) continue;
        ++done;
        double sum = 0.0;
        for (const Subset& p : parts) sum += phi->eval(p);
        CHECK(sum <= phi->eval(base) * (1.0 + 1e-12) + 1e-14);
    }
    CHECK(done >= 100);
}

TEST_CASE("monotone continuity onto points") {
    MetricGraph seg = segmentGraph();
    Measure density(seg);
    density.addDensityPiece(0, 0.0, 1.0, 1.3);
    FunctionalPtr phi = makeProduct(Measure::lebesgue(seg), density, 0.4);
    double prev = std::numeric_limits<double>::infinity();
    for (int r = 1; r <= 12; ++r) {
        double h = std::pow(0.5, r);
        Subset e(seg);
        e.addInterval(0, 0.5 - h / 2, 0.5 + h / 2);
        double val = phi->eval(e);
        CHECK(val <= prev + 1e-15);
        prev = val;
    }
    CHECK(prev <= 1e-3);
    CHECK(phi->eval(Subset::singlePoint(seg, GraphPoint::onEdge(0, 0.5))) == doctest::Approx(0.0));
}

TEST_CASE("functional monotonicity under inclusion") {
    Rng rng(5656);
    for (int trial = 0; trial < 25; ++trial) {
        MetricGraph g = randomGraph(rng, 7, false);
        FunctionalPtr phi = randomFunctional(rng, g, true);
        Subset big = randomSubtree(rng, g);
        GraphPoint x = randomPointIn(rng, big);
        auto comps = big.without(x).components();
        if (comps.empty()) continue;
        CHECK(phi->eval(comps[0]) <= phi->eval(big) * (1.0 + 1e-12) + 1e-14);
    }
}
