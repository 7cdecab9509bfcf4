#pragma once

#include <memory>
#include <optional>
#include <string>

#include "mgraph/functional.hpp"

namespace mgraph {

// Parsed problem file: the graph plus any of the optional sections used by
// functionals and the approximation commands.
struct ProblemSpec {
    std::shared_ptr<MetricGraph> graph;
    std::optional<Measure> measure;
    std::optional<Measure> measure2;
    std::optional<PiecewiseFunction> u;
    std::optional<PiecewiseFunction> weightA;
    std::optional<double> p;
};

ProblemSpec loadProblem(const std::string& path);
Measure loadMeasure(const MetricGraph& g, const std::string& path);
PiecewiseFunction loadPiecewiseLinear(const MetricGraph& g, const std::string& path);
PiecewiseFunction loadPiecewiseConstant(const MetricGraph& g, const std::string& path);

// --functional length|measure|product:ALPHA|phi_u|phi_mu|phi_theta:THETA,
// with parameters taken from the problem file sections.
FunctionalPtr makeFunctionalFromSpec(const ProblemSpec& ps, const std::string& spec);

std::string formatDouble(double x);
std::string pointToString(const MetricGraph& g, const GraphPoint& p);
GraphPoint pointFromString(const MetricGraph& g, const std::string& s);
std::string subsetToString(const Subset& s);
Subset subsetFromString(const MetricGraph& g, const std::string& s);

std::string fileDigest(const std::string& path);  // fnv1a over the bytes

void writeTextFile(const std::string& path, const std::string& content);
std::string readTextFile(const std::string& path);

// DOT export coloring edges by the partition part covering most of each edge
std::string partitionDot(const MetricGraph& g, const std::vector<Subset>& parts);

}  // namespace mgraph
