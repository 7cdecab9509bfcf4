#include <doctest.h>

#include "mgraph/approx.hpp"
#include "mgraph/random_instances.hpp"
#include "test_helpers.hpp"

using namespace mgraph;
using namespace mgraph::testing;

TEST_CASE("single edge graph") {
    MetricGraph g = segmentGraph();
    CHECK(g.totalLength() == doctest::Approx(1.0));
    auto boundary = g.boundaryVertices();
    REQUIRE(boundary.size() == 2);
    CHECK(g.vertexLabel(boundary[0]) == "a");
    CHECK(g.vertexLabel(boundary[1]) == "b");
}

TEST_CASE("star graph basics") {
    MetricGraph g = makeStarGraph(3);
    CHECK(g.totalLength() == doctest::Approx(3.0));
    CHECK(g.degree(*g.findVertex("o")) == 3);
    auto boundary = g.boundaryVertices();
    CHECK(boundary.size() == 3);
    for (VertexId v : boundary) CHECK(g.vertexLabel(v) != "o");
}

TEST_CASE("triangle has no boundary") {
    MetricGraph g = triangleGraph();
    CHECK(g.boundaryVertices().empty());
    for (VertexId v = 0; v < g.vertexCount(); ++v) CHECK(g.degree(v) == 2);
}

TEST_CASE("construction errors") {
    CHECK_THROWS_WITH_AS(MetricGraph({}, {{"e", "a", "b", 0.0}}), doctest::Contains("length"), Error);
    CHECK_THROWS_AS(MetricGraph({}, {{"e", "a", "b", 1.0}, {"e", "b", "c", 1.0}}), Error);
    CHECK_THROWS_AS(MetricGraph({}, {{"e1", "a", "b", 1.0}, {"e2", "c", "d", 1.0}}), Error);
    try {
        MetricGraph({}, {{"e1", "a", "b", 1.0}, {"e2", "c", "d", 1.0}});
    } catch (const Error& ex) {
        CHECK(ex.code() == ErrorCode::DisconnectedGraph);
    }
}

TEST_CASE("distance on a segment") {
    MetricGraph g = segmentGraph();
    CHECK(g.distance(GraphPoint::onEdge(0, 0.2), GraphPoint::onEdge(0, 0.9)) == doctest::Approx(0.7));
}

TEST_CASE("distance across a star") {
    MetricGraph g = makeStarGraph(3);
    double d = g.distance(GraphPoint::onEdge(0, 0.5), GraphPoint::onEdge(1, 0.5));
    CHECK(d == doctest::Approx(1.0));
}

TEST_CASE("triangle distance, brute-force oracle") {
    MetricGraph g = triangleGraph();
    GraphPoint mid = GraphPoint::onEdge(0, 0.5);
    GraphPoint c = GraphPoint::atVertex(*g.findVertex("c"));
    CHECK(g.distance(mid, c) == doctest::Approx(1.5));
    CHECK(bruteForceDistance(g, mid, c) == doctest::Approx(1.5));
}

TEST_CASE("distance is a metric on random graphs") {
    Rng rng(20240811);
    for (int trial = 0; trial < 25; ++trial) {
        MetricGraph g = randomGraph(rng, 10, true);
        Subset whole = Subset::whole(g);
        GraphPoint x = randomPointIn(rng, whole);
        GraphPoint y = randomPointIn(rng, whole);
        GraphPoint z = randomPointIn(rng, whole);
        double xy = g.distance(x, y), yx = g.distance(y, x);
        CHECK(std::fabs(xy - yx) <= 1e-12 * (1.0 + xy));
        CHECK(g.distance(x, z) <= xy + g.distance(y, z) + 1e-12);
        CHECK(std::fabs(xy - bruteForceDistance(g, x, y)) <= 1e-9 * (1.0 + xy));
    }
}

TEST_CASE("loop distances") {
    MetricGraph g({}, {{"loop", "a", "a", 2.0}, {"tail", "a", "b", 1.0}});
    // going around the loop the short way
    CHECK(g.distance(GraphPoint::onEdge(0, 0.2), GraphPoint::onEdge(0, 1.9)) == doctest::Approx(0.3));
    CHECK(g.distance(GraphPoint::onEdge(0, 1.0), GraphPoint::atVertex(*g.findVertex("b"))) == doctest::Approx(2.0));
}

TEST_CASE("tree recognition") {
    CHECK(makeStarGraph(3).isTree());
    CHECK(!triangleGraph().isTree());
    CHECK(!triangleGraph().findCycleEdge() == false);
    CHECK(*triangleGraph().findCycleEdge() == 0);
    CHECK(!makeStarGraph(4).findCycleEdge().has_value());
}

TEST_CASE("cycle edge is never a bridge") {
    // triangle plus pendant edge: the pendant is a bridge, the triangle
    // edges are not
    MetricGraph g({}, {{"p", "d", "a", 1.0},
                       {"ab", "a", "b", 1.0},
                       {"bc", "b", "c", 1.0},
                       {"ca", "c", "a", 1.0}});
    auto cyc = g.findCycleEdge();
    REQUIRE(cyc.has_value());
    CHECK(g.edgeLabel(*cyc) != "p");
    CHECK(*cyc == 1);  // smallest index among the cycle edges

    // edge-removal oracle: removing a non-bridge keeps the graph connected
    std::vector<EdgeSpec> specs;
    for (EdgeId e = 0; e < g.edgeCount(); ++e) {
        if (e == *cyc) continue;
        const Edge& ed = g.edge(e);
        specs.push_back({g.edgeLabel(e), g.vertexLabel(ed.from), g.vertexLabel(ed.to), ed.length});
    }
    CHECK_NOTHROW(MetricGraph({}, specs));
}

TEST_CASE("bridge detection on random graphs vs removal oracle") {
    Rng rng(77);
    for (int trial = 0; trial < 20; ++trial) {
        MetricGraph g = randomGraph(rng, 9, true);
        auto cyc = g.findCycleEdge();
        if (!cyc) {
            CHECK(g.isTree());
            continue;
        }
        if (g.edge(*cyc).isLoop()) continue;
        std::vector<EdgeSpec> specs;
        for (EdgeId e = 0; e < g.edgeCount(); ++e) {
            if (e == *cyc) continue;
            const Edge& ed = g.edge(e);
            specs.push_back({g.edgeLabel(e), g.vertexLabel(ed.from), g.vertexLabel(ed.to), ed.length});
        }
        CHECK_NOTHROW(MetricGraph({}, specs));  // still connected
    }
}

TEST_CASE("canonical points") {
    MetricGraph g = makeStarGraph(2);
    GraphPoint p = g.canonical(0, 0.0);
    CHECK(p.isVertex());
    CHECK(g.vertexLabel(p.vertex()) == "o");
    GraphPoint q = g.canonical(1, 1.0);
    CHECK(q.isVertex());
    CHECK(g.vertexLabel(q.vertex()) == "v2");
    CHECK(g.canonical(g.canonical(0, 1.0)) == g.canonical(0, 1.0));
    CHECK_THROWS_AS(g.canonical(0, 1.5), Error);
}
