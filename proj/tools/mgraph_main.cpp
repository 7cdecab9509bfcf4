#include <atomic>
#include <iostream>
#include <sstream>
#include <thread>

#include <CLI11.hpp>

#include "mgraph/approx.hpp"
#include "mgraph/hardy.hpp"
#include "mgraph/io.hpp"
#include "mgraph/partition.hpp"
#include "mgraph/random_instances.hpp"

using namespace mgraph;

namespace {

constexpr int kExitPass = 0;
constexpr int kExitBoundViolation = 1;
constexpr int kExitInputError = 2;

void emit(const std::string& outPath, const std::string& report) {
    if (outPath.empty())
        std::cout << report;
    else
        writeTextFile(outPath, report);
}

std::string partLine(const MetricGraph& g, size_t idx, const Subset& set, const TildeResult& tilde,
                     const GraphPoint& minimizerOnGraph, double bound) {
    std::ostringstream line;
    line << "part " << idx << " tilde " << formatDouble(tilde.value) << " minimizer "
         << pointToString(g, minimizerOnGraph) << " slack " << formatDouble(bound - tilde.value) << " jump "
         << (tilde.jumpAtMinimizer ? 1 : 0) << " set " << subsetToString(set) << "\n";
    return line.str();
}

int runPartition(const std::string& graphPath, const std::string& functional, int n, double tol,
                 const std::string& outPath, const std::string& dotPath) {
    ProblemSpec ps = loadProblem(graphPath);
    FunctionalPtr phi = makeFunctionalFromSpec(ps, functional);
    PartitionResult pr = partitionGraph(*ps.graph, phi, n, tol);

    std::ostringstream rep;
    rep << "mgraph-report 1\n";
    rep << "command partition\n";
    rep << "input " << graphPath << " digest " << fileDigest(graphPath) << "\n";
    rep << "functional " << functional << "\n";
    rep << "n " << n << "\n";
    rep << "tol " << formatDouble(tol) << "\n";
    rep << "phi_total " << formatDouble(pr.phiTotal) << "\n";
    rep << "bound " << formatDouble(pr.bound) << "\n";
    rep << "cut_pairs " << pr.cut->splitPairs().size() << "\n";
    for (const auto& sp : pr.cut->splitPairs())
        rep << "cut " << pr.cut->tree().vertexLabel(sp.x1) << " " << pr.cut->tree().vertexLabel(sp.x2)
            << " -> " << pointToString(*ps.graph, sp.original) << "\n";
    if (!pr.cut->isIdentity()) {
        const MetricGraph& tree = pr.cut->tree();
        for (EdgeId e = 0; e < tree.edgeCount(); ++e) {
            const Edge& ed = tree.edge(e);
            const auto& eo = pr.cut->edgeOrigins()[static_cast<size_t>(e)];
            rep << "tree_edge " << tree.edgeLabel(e) << " " << tree.vertexLabel(ed.from) << " "
                << tree.vertexLabel(ed.to) << " " << formatDouble(ed.length) << " origin "
                << ps.graph->edgeLabel(eo.originalEdge) << " [" << formatDouble(eo.lo) << ","
                << formatDouble(eo.hi) << "]\n";
        }
    }
    rep << "k " << pr.parts.size() << "\n";
    bool pass = true;
    for (size_t j = 0; j < pr.parts.size(); ++j) {
        const PartitionPart& part = pr.parts[j];
        // graph-side part listing; tilde refers to the cut-tree representative
        rep << partLine(*ps.graph, j, part.graphSide, part.tilde, pr.cut->mapPoint(part.tilde.minimizer),
                        pr.bound);
        if (part.tilde.value > pr.bound * (1.0 + 1e-8)) pass = false;
    }
    rep << "max_tilde " << formatDouble(pr.maxTilde()) << "\n";
    rep << "verdict " << (pass ? "PASS" : "FAIL") << "\n";
    emit(outPath, rep.str());
    if (!dotPath.empty()) {
        std::vector<Subset> parts;
        for (const auto& part : pr.parts) parts.push_back(part.graphSide);
        writeTextFile(dotPath, partitionDot(*ps.graph, parts));
    }
    return pass ? kExitPass : kExitBoundViolation;
}

int runApproximate(const std::string& graphPath, const std::string& uPath, double pIn, bool pGiven,
                   const std::string& aPath, const std::string& muPath, int n, const std::string& mode,
                   double tol, const std::string& outPath) {
    ProblemSpec ps = loadProblem(graphPath);
    const MetricGraph& g = *ps.graph;
    double p = pGiven ? pIn : ps.p.value_or(2.0);
    PiecewiseFunction u = uPath.empty()
                              ? (ps.u ? *ps.u : PiecewiseFunction::constant(g, 0.0))
                              : loadPiecewiseLinear(g, uPath);
    PiecewiseFunction a = aPath.empty() ? (ps.weightA ? *ps.weightA : PiecewiseFunction::constant(g, 1.0))
                                        : loadPiecewiseConstant(g, aPath);

    std::ostringstream rep;
    rep << "mgraph-report 1\n";
    rep << "command approximate\n";
    rep << "input " << graphPath << " digest " << fileDigest(graphPath) << "\n";
    rep << "mode " << mode << "\n";
    rep << "p " << formatDouble(p) << "\n";
    rep << "n " << n << "\n";
    bool pass = true;
    if (mode == "uniform") {
        UniformApproxResult res = approximateUniform(u, p, a, n, tol);
        rep << "k " << res.v.partCount() << "\n";
        for (size_t j = 0; j < res.v.parts().size(); ++j) {
            rep << "part " << j << " value " << formatDouble(res.v.values()[j]) << " point "
                << pointToString(g, res.evaluationPoints[j]) << " set " << subsetToString(res.v.parts()[j])
                << "\n";
        }
        rep << "error " << formatDouble(res.achieved) << "\n";
        rep << "bound " << formatDouble(res.bound) << "\n";
        rep << "slack " << formatDouble(res.bound - res.achieved) << "\n";
        pass = res.achieved <= res.bound * (1.0 + 1e-8);
    } else if (mode == "lp") {
        Measure mu = muPath.empty() ? (ps.measure ? *ps.measure : Measure::lebesgue(g))
                                    : loadMeasure(g, muPath);
        LpOperatorResult res = buildLpOperator(mu, a, p, n, tol);
        StepFunction v = res.op.apply(u);
        double err = lpError(u, v, mu, p);
        double bound = res.boundFactor * derivativeNorm(u, p, a, Subset::whole(g));
        rep << "k " << res.op.rank() << "\n";
        for (size_t j = 0; j < res.op.parts().size(); ++j) {
            rep << "part " << j << " value " << formatDouble(v.values()[j]) << " point "
                << pointToString(g, res.op.evaluationPoints()[j]) << " set "
                << subsetToString(res.op.parts()[j]) << "\n";
        }
        rep << "error " << formatDouble(err) << "\n";
        rep << "bound " << formatDouble(bound) << "\n";
        rep << "slack " << formatDouble(bound - err) << "\n";
        pass = err <= bound * (1.0 + 1e-8);
    } else {
        fail(ErrorCode::BadInput, "mode must be uniform or lp");
    }
    rep << "verdict " << (pass ? "PASS" : "FAIL") << "\n";
    emit(outPath, rep.str());
    return pass ? kExitPass : kExitBoundViolation;
}

int runHardy(const std::string& graphPath, const std::string& rootName, const std::string& vPath,
             const std::string& wPath, int mesh, int nMax, const std::string& check,
             const std::string& outPath) {
    ProblemSpec ps = loadProblem(graphPath);
    const MetricGraph& g = *ps.graph;
    auto rv = g.findVertex(rootName);
    if (!rv) fail(ErrorCode::BadInput, "unknown root vertex '" + rootName + "'");
    PiecewiseFunction v = vPath.empty() ? PiecewiseFunction::constant(g, 1.0) : loadPiecewiseConstant(g, vPath);
    PiecewiseFunction w = wPath.empty() ? PiecewiseFunction::constant(g, 1.0) : loadPiecewiseConstant(g, wPath);
    RootedTree rt(g, GraphPoint::atVertex(*rv), v, w);

    std::ostringstream rep;
    rep << "mgraph-report 1\n";
    rep << "command hardy\n";
    rep << "input " << graphPath << " digest " << fileDigest(graphPath) << "\n";
    rep << "root " << rootName << "\n";
    rep << "mesh " << mesh << "\n";
    rep << "check " << check << "\n";
    bool pass = true;
    if (check == "bound") {
        BoundCheckReport br = checkBound(rt, nMax, mesh);
        rep << "norm_product " << formatDouble(br.normProduct) << "\n";
        for (const BoundCheckRow& row : br.rows)
            rep << "n " << row.n << " s " << formatDouble(row.singular) << " bound " << formatDouble(row.bound)
                << " slack " << formatDouble(row.slack) << " pass " << (row.pass ? 1 : 0) << "\n";
        pass = br.pass;
    } else if (check == "asymptotics") {
        double alpha2 = alpha2FromUnitInterval(std::max(mesh, 800), std::max(16, nMax));
        AsymptoticsReport ar = checkAsymptotics(rt, mesh, std::max(16, nMax), alpha2);
        rep << "alpha2 " << formatDouble(ar.alpha2) << "\n";
        rep << "extrapolated " << formatDouble(ar.extrapolated) << "\n";
        rep << "target " << formatDouble(ar.target) << "\n";
        rep << "rel_error " << formatDouble(ar.relError) << "\n";
        pass = ar.pass;
    } else {
        fail(ErrorCode::BadInput, "check must be bound or asymptotics");
    }
    rep << "verdict " << (pass ? "PASS" : "FAIL") << "\n";
    emit(outPath, rep.str());
    return pass ? kExitPass : kExitBoundViolation;
}

int runSharpness(const std::string& mode, int starSize, double p, const std::string& outPath) {
    SharpnessReport sr = sharpnessStar(starSize, p, mode);
    std::ostringstream rep;
    rep << "mgraph-report 1\n";
    rep << "command sharpness\n";
    rep << "mode " << mode << "\n";
    rep << "N " << starSize << "\n";
    rep << "p " << formatDouble(p) << "\n";
    rep << "achieved " << formatDouble(sr.achieved) << "\n";
    rep << "bound " << formatDouble(sr.bound) << "\n";
    rep << "rel_error " << formatDouble(sr.relError) << "\n";
    rep << "verdict " << (sr.pass ? "PASS" : "FAIL") << "\n";
    emit(outPath, rep.str());
    return sr.pass ? kExitPass : kExitBoundViolation;
}

int runVerify(const std::string& graphPath, const std::string& functional, int n, double tol,
              const std::string& partitionPath, int sweep, unsigned long long seed, int nMax,
              const std::string& outPath) {
    std::ostringstream rep;
    rep << "mgraph-report 1\n";
    rep << "command verify\n";
    bool pass = true;
    if (sweep > 0) {
        rep << "sweep " << sweep << " seed " << seed << "\n";
        std::vector<std::string> rows(static_cast<size_t>(sweep));
        std::vector<char> ok(static_cast<size_t>(sweep), 1);
        int hw = std::max(1u, std::thread::hardware_concurrency());
        std::vector<std::thread> pool;
        std::atomic<int> next{0};
        for (int t = 0; t < hw; ++t) {
            pool.emplace_back([&]() {
                for (int i = next.fetch_add(1); i < sweep; i = next.fetch_add(1)) {
                    Rng rng(seed + static_cast<unsigned long long>(i) * 1000003ULL);
                    MetricGraph g = randomGraph(rng, 12, true);
                    FunctionalPtr phi = randomFunctional(rng, g, true);
                    int nn = 1 + static_cast<int>(rng() % static_cast<unsigned>(nMax));
                    std::ostringstream row;
                    try {
                        PartitionResult pr = partitionGraph(g, phi, nn, tol);
                        std::vector<Subset> parts;
                        for (const auto& part : pr.parts) parts.push_back(part.graphSide);
                        VerifyReport vr = verifyPartition(g, phi, parts, nn, tol);
                        row << "instance " << i << " edges " << g.edgeCount() << " n " << nn << " k "
                            << parts.size() << " max_tilde " << formatDouble(pr.maxTilde()) << " bound "
                            << formatDouble(pr.bound) << " verdict " << (vr.pass ? "PASS" : "FAIL") << "\n";
                        if (!vr.pass) ok[static_cast<size_t>(i)] = 0;
                    } catch (const Error& ex) {
                        row << "instance " << i << " error " << ex.what() << "\n";
                        ok[static_cast<size_t>(i)] = 0;
                    }
                    rows[static_cast<size_t>(i)] = row.str();
                }
            });
        }
        for (auto& th : pool) th.join();
        for (const std::string& row : rows) rep << row;
        for (char c : ok)
            if (!c) pass = false;
    } else {
        ProblemSpec ps = loadProblem(graphPath);
        FunctionalPtr phi = makeFunctionalFromSpec(ps, functional);
        std::vector<Subset> parts;
        if (!partitionPath.empty()) {
            // parse "part ... set <subset>" lines from a partition report
            std::istringstream in(readTextFile(partitionPath));
            std::string line;
            while (std::getline(in, line)) {
                auto setPos = line.find(" set ");
                if (line.rfind("part ", 0) == 0 && setPos != std::string::npos)
                    parts.push_back(subsetFromString(*ps.graph, line.substr(setPos + 5)));
            }
            if (parts.empty()) fail(ErrorCode::BadInput, "no parts found in '" + partitionPath + "'");
        } else {
            PartitionResult pr = partitionGraph(*ps.graph, phi, n, tol);
            for (const auto& part : pr.parts) parts.push_back(part.graphSide);
        }
        VerifyReport vr = verifyPartition(*ps.graph, phi, parts, n, tol);
        rep << "input " << graphPath << " digest " << fileDigest(graphPath) << "\n";
        rep << "functional " << functional << "\n";
        rep << "n " << n << "\n";
        rep << "bound " << formatDouble(vr.bound) << "\n";
        for (size_t j = 0; j < vr.parts.size(); ++j)
            rep << "part " << j << " tilde " << formatDouble(vr.parts[j].tilde) << " slack "
                << formatDouble(vr.parts[j].slack) << "\n";
        for (const std::string& f : vr.failures) rep << "violation " << f << "\n";
        pass = vr.pass;
    }
    rep << "verdict " << (pass ? "PASS" : "FAIL") << "\n";
    emit(outPath, rep.str());
    return pass ? kExitPass : kExitBoundViolation;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"partitioning and step-function approximation on compact metric graphs"};
    app.require_subcommand(1);

    double tol = 1e-10;
    unsigned long long seed = 1;
    std::string outPath;
    app.add_option("--tol", tol, "numeric tolerance scale");
    app.add_option("--seed", seed, "seed for random sweeps");
    app.add_option("--out", outPath, "write the report to this file");

    auto* cmdPartition = app.add_subcommand("partition", "partition a graph under a set functional");
    std::string graphPath, functional = "length", dotPath;
    int n = 1;
    cmdPartition->add_option("--graph", graphPath, "problem file")->required();
    cmdPartition->add_option("--functional", functional, "length|measure|product:A|phi_u|phi_mu|phi_theta:T");
    cmdPartition->add_option("--n", n, "part budget")->required();
    cmdPartition->add_option("--dot", dotPath, "optional DOT export path");

    auto* cmdApprox = app.add_subcommand("approximate", "step-function approximation of u");
    std::string uPath, aPath, muPath, mode = "uniform";
    std::string pText;
    cmdApprox->add_option("--graph", graphPath, "problem file")->required();
    cmdApprox->add_option("--u", uPath, "piecewise-linear function file");
    cmdApprox->add_option("--p", pText, "exponent (number or inf)");
    cmdApprox->add_option("--a", aPath, "weight file");
    cmdApprox->add_option("--mu", muPath, "measure file");
    cmdApprox->add_option("--n", n, "rank budget")->required();
    cmdApprox->add_option("--mode", mode, "uniform|lp");

    auto* cmdHardy = app.add_subcommand("hardy", "integral-operator checks on rooted trees");
    std::string rootName, vPath, wPath, check = "bound";
    int mesh = 200, nMaxOpt = 10;
    cmdHardy->add_option("--graph", graphPath, "problem file")->required();
    cmdHardy->add_option("--root", rootName, "root vertex id")->required();
    cmdHardy->add_option("--v", vPath, "outer weight file");
    cmdHardy->add_option("--w", wPath, "inner weight file");
    cmdHardy->add_option("--mesh", mesh, "cells per unit length");
    cmdHardy->add_option("--n-max", nMaxOpt, "number of singular values");
    cmdHardy->add_option("--check", check, "bound|asymptotics");

    auto* cmdSharp = app.add_subcommand("sharpness", "star-graph extremal checks");
    int starSize = 3;
    cmdSharp->add_option("--mode", mode, "uniform|lp")->required();
    cmdSharp->add_option("--N", starSize, "number of star arms")->required();
    cmdSharp->add_option("--p", pText, "exponent");

    auto* cmdVerify = app.add_subcommand("verify", "verify partitions or run random sweeps");
    std::string partitionPath;
    int sweep = 0;
    cmdVerify->add_option("--graph", graphPath, "problem file");
    cmdVerify->add_option("--functional", functional, "functional spec");
    cmdVerify->add_option("--n", n, "part budget");
    cmdVerify->add_option("--partition", partitionPath, "partition report to check");
    cmdVerify->add_option("--sweep", sweep, "number of random self-check instances");
    cmdVerify->add_option("--n-max", nMaxOpt, "max n in sweeps");

    for (CLI::App* sub : app.get_subcommands({})) sub->fallthrough();

    CLI11_PARSE(app, argc, argv);

    auto parseP = [&]() {
        if (pText.empty()) return 2.0;
        if (pText == "inf" || pText == "Inf" || pText == "infinity") return std::numeric_limits<double>::infinity();
        return std::stod(pText);
    };

    try {
        if (cmdPartition->parsed()) return runPartition(graphPath, functional, n, tol, outPath, dotPath);
        if (cmdApprox->parsed())
            return runApproximate(graphPath, uPath, parseP(), !pText.empty(), aPath, muPath, n, mode, tol,
                                  outPath);
        if (cmdHardy->parsed())
            return runHardy(graphPath, rootName, vPath, wPath, mesh, nMaxOpt, check, outPath);
        if (cmdSharp->parsed()) return runSharpness(mode, starSize, pText.empty() ? 2.0 : parseP(), outPath);
        if (cmdVerify->parsed())
            return runVerify(graphPath, functional, n, tol, partitionPath, sweep, seed, nMaxOpt, outPath);
    } catch (const Error& ex) {
        std::cerr << "error [" << errorCodeName(ex.code()) << "] " << ex.what() << "\n";
        if (ex.code() == ErrorCode::VerificationFailed) return kExitBoundViolation;
        return kExitInputError;
    } catch (const std::exception& ex) {
        std::cerr << "error " << ex.what() << "\n";
        return kExitInputError;
    }
    return kExitInputError;
}
