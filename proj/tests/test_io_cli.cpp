#include <doctest.h>

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <unistd.h>

#include "mgraph/approx.hpp"
#include "mgraph/io.hpp"
#include "mgraph/partition.hpp"
#include "test_helpers.hpp"

using namespace mgraph;
using namespace mgraph::testing;

namespace {

std::string tempPath(const std::string& suffix) {
    return "/tmp/mgraph_test_" + std::to_string(getpid()) + "_" + suffix;
}

std::string dataPath(const std::string& name) {
    const char* base = std::getenv("MGRAPH_DATA");
    REQUIRE(base != nullptr);
    return std::string(base) + "/" + name;
}

struct CliRun {
    int exitCode = -1;
    std::string output;
};

CliRun runCli(const std::string& args) {
    const char* cli = std::getenv("MGRAPH_CLI");
    REQUIRE(cli != nullptr);
    std::string cmd = std::string(cli) + " " + args + " 2>&1";
    FILE* pipe = popen(cmd.c_str(), "r");
    REQUIRE(pipe != nullptr);
    CliRun run;
    char buf[4096];
    while (fgets(buf, sizeof(buf), pipe)) run.output += buf;
    int status = pclose(pipe);
    run.exitCode = WEXITSTATUS(status);
    return run;
}

}  // namespace

TEST_CASE("problem files load with all sections") {
    ProblemSpec ps = loadProblem(dataPath("segment.json"));
    CHECK(ps.graph->totalLength() == doctest::Approx(1.0));
    REQUIRE(ps.measure.has_value());
    CHECK(ps.measure->total() == doctest::Approx(1.0));
    REQUIRE(ps.u.has_value());
    CHECK(ps.u->at(GraphPoint::onEdge(0, 0.25)) == doctest::Approx(0.25));
    CHECK(ps.p.value_or(0.0) == 2.0);

    ProblemSpec tri = loadProblem(dataPath("triangle.json"));
    CHECK(tri.graph->edgeCount() == 3);
    REQUIRE(tri.measure2.has_value());
    CHECK(tri.measure2->total() == doctest::Approx(2.5));
}

TEST_CASE("functional specs resolve against the file sections") {
    ProblemSpec tri = loadProblem(dataPath("triangle.json"));
    CHECK(makeFunctionalFromSpec(tri, "length")->eval(Subset::whole(*tri.graph)) == doctest::Approx(3.0));
    CHECK(makeFunctionalFromSpec(tri, "measure")->eval(Subset::whole(*tri.graph)) == doctest::Approx(3.0));
    FunctionalPtr prod = makeFunctionalFromSpec(tri, "phi_theta:0.75");
    CHECK(prod->eval(Subset::whole(*tri.graph)) > 0.0);
    CHECK_THROWS_AS(makeFunctionalFromSpec(tri, "phi_u"), Error);
    CHECK_THROWS_AS(makeFunctionalFromSpec(tri, "nonsense"), Error);
    // product requires an atom-free first measure
    CHECK_THROWS_AS(makeFunctionalFromSpec(tri, "product:0.5"), Error);
}

TEST_CASE("subset strings round-trip") {
    MetricGraph star = makeStarGraph(3);
    Subset s(star);
    s.addInterval(0, 0.25, 1.0);
    s.addInterval(1, 0.0, 0.5);
    s.excludePoint(GraphPoint::onEdge(0, 0.25));
    s.excludePoint(GraphPoint::atVertex(*star.findVertex("o")));
    std::string text = subsetToString(s);
    Subset back = subsetFromString(star, text);
    CHECK(back.sameSet(s));
    CHECK(subsetToString(back) == text);
}

TEST_CASE("point strings round-trip") {
    MetricGraph star = makeStarGraph(2);
    for (const GraphPoint& p : {GraphPoint::atVertex(0), GraphPoint::onEdge(1, 0.125)}) {
        GraphPoint q = pointFromString(star, pointToString(star, p));
        CHECK(q == star.canonical(p));
    }
}

TEST_CASE("cli: golden segment partition") {
    CliRun run = runCli("partition --graph " + dataPath("segment.json") + " --functional length --n 3");
    CHECK(run.exitCode == 0);
    CHECK(run.output.find("verdict PASS") != std::string::npos);
    CHECK(run.output.find("k 3") != std::string::npos);
    CHECK(run.output.find("max_tilde 0.25") != std::string::npos);
    // parts in construction order with half-open junctions
    CHECK(run.output.find("set e0:[0,0.5] verts a excl e0@0.5") != std::string::npos);
    CHECK(run.output.find("set e0:[0.5,0.75] verts - excl e0@0.75") != std::string::npos);
    CHECK(run.output.find("set e0:[0.75,1] verts b excl -") != std::string::npos);
}

TEST_CASE("cli: sharpness") {
    CliRun run = runCli("sharpness --mode uniform --N 3");
    CHECK(run.exitCode == 0);
    CHECK(run.output.find("verdict PASS") != std::string::npos);
    CliRun lp = runCli("sharpness --mode lp --N 3 --p 2");
    CHECK(lp.exitCode == 0);
    CHECK(lp.output.find("verdict PASS") != std::string::npos);
}

TEST_CASE("cli: malformed input exits with code 2") {
    CliRun run = runCli("partition --graph " + dataPath("bad.json") + " --functional length --n 2");
    CHECK(run.exitCode == 2);
    CHECK(run.output.find("NonpositiveLength") != std::string::npos);
}

TEST_CASE("cli: verify round-trips a partition report") {
    std::string report = tempPath("report.mgr");
    CliRun part = runCli("--out " + report + " partition --graph " + dataPath("star3.json") +
                         " --functional length --n 2");
    CHECK(part.exitCode == 0);
    CliRun verify = runCli("verify --graph " + dataPath("star3.json") + " --functional length --n 2 --partition " + report);
    CHECK(verify.exitCode == 0);
    CHECK(verify.output.find("verdict PASS") != std::string::npos);
    std::remove(report.c_str());
}

TEST_CASE("cli: bound violation exits with code 1") {
    // a hand-built bad partition: [0,0.9) and [0.9,1] cannot satisfy n = 3
    std::string report = tempPath("report.mgr");
    std::ofstream out(report);
    out << "part 0 set e0:[0,0.9] verts a excl e0@0.9\n";
    out << "part 1 set e0:[0.9,1] verts b excl -\n";
    out.close();
    CliRun run = runCli("verify --graph " + dataPath("segment.json") + " --functional length --n 3 --partition " + report);
    CHECK(run.exitCode == 1);
    CHECK(run.output.find("verdict FAIL") != std::string::npos);
    CHECK(run.output.find("violation") != std::string::npos);
    std::remove(report.c_str());
}

TEST_CASE("cli: reports are byte-identical across runs") {
    std::string args = "partition --graph " + dataPath("triangle.json") + " --functional phi_theta:0.6 --n 4";
    CliRun a = runCli(args);
    CliRun b = runCli(args);
    CHECK(a.exitCode == 0);
    CHECK(a.output == b.output);
    CHECK(a.output.find("cut_pairs 1") != std::string::npos);
    CHECK(a.output.find("tree_edge") != std::string::npos);
}

TEST_CASE("cli: approximate uniform on the segment") {
    CliRun run = runCli("approximate --graph " + dataPath("segment.json") + " --p inf --n 1 --mode uniform");
    CHECK(run.exitCode == 0);
    CHECK(run.output.find("error 0.5") != std::string::npos);
    CHECK(run.output.find("bound 0.5") != std::string::npos);
    CHECK(run.output.find("verdict PASS") != std::string::npos);
}

TEST_CASE("cli: hardy bound on the segment") {
    CliRun run = runCli("hardy --graph " + dataPath("segment.json") + " --root a --mesh 64 --n-max 4 --check bound");
    CHECK(run.exitCode == 0);
    CHECK(run.output.find("verdict PASS") != std::string::npos);
}

TEST_CASE("cli: dot export") {
    std::string dot = tempPath("parts.dot");
    CliRun run = runCli("partition --graph " + dataPath("star3.json") + " --functional length --n 2 --dot " + dot);
    CHECK(run.exitCode == 0);
    std::ifstream in(dot);
    REQUIRE(in.good());
    std::string text((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
    CHECK(text.find("graph partition {") != std::string::npos);
    CHECK(text.find("color=") != std::string::npos);
    std::remove(dot.c_str());
}

TEST_CASE("file digests are stable") {
    std::string d1 = fileDigest(dataPath("segment.json"));
    std::string d2 = fileDigest(dataPath("segment.json"));
    CHECK(d1 == d2);
    CHECK(d1.size() == 16);
}
