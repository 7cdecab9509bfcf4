#pragma once

#include "mgraph/partition.hpp"

namespace mgraph {

// Finitely many values, each on a connected subset; the parts form an exact
// partition of the graph, so evaluation is well defined everywhere.
class StepFunction {
public:
    StepFunction(std::vector<Subset> parts, std::vector<double> values);
    double at(const GraphPoint& p) const;
    int partCount() const { return static_cast<int>(parts_.size()); }
    const std::vector<Subset>& parts() const { return parts_; }
    const std::vector<double>& values() const { return values_; }

private:
    std::vector<Subset> parts_;
    std::vector<double> values_;
};

// Rank-bounded linear interpolation-type operator: fixed partition and one
// evaluation point per part, independent of the function it is applied to.
class ApproxOperator {
public:
    ApproxOperator(std::vector<Subset> parts, std::vector<GraphPoint> points);
    StepFunction apply(const PiecewiseFunction& u) const;
    int rank() const { return static_cast<int>(parts_.size()); }
    const std::vector<Subset>& parts() const { return parts_; }
    const std::vector<GraphPoint>& evaluationPoints() const { return points_; }

private:
    std::vector<Subset> parts_;
    std::vector<GraphPoint> points_;
};

struct UniformApproxResult {
    StepFunction v;
    PartitionResult partition;
    double bound = 0.0;     // (n+1)^{-1} ||w_a||_{p'} ||u'||_{p,a}
    double achieved = 0.0;  // exact sup error
    std::vector<GraphPoint> evaluationPoints;
};

// Step-function approximation of u in the sup norm; the partition functional
// depends on u for p < inf and only on (a, |u'|_inf-scale) for p = inf.
UniformApproxResult approximateUniform(const PiecewiseFunction& u, double p, const PiecewiseFunction& a,
                                       int n, double tol = 1e-10);

struct LpOperatorResult {
    ApproxOperator op;
    PartitionResult partition;
    double boundFactor = 0.0;  // (n+1)^{-1} ||w_a||_{p'} mu(graph)^{1/p}
};

// The measure-adapted linear operator: partition under the u-independent
// functional, evaluation points at the tilde-phi minimizers.
LpOperatorResult buildLpOperator(const Measure& mu, const PiecewiseFunction& a, double p, int n,
                                 double tol = 1e-10);

double supError(const PiecewiseFunction& u, const StepFunction& v);
double lpError(const PiecewiseFunction& u, const StepFunction& v, const Measure& mu, double p);

struct SharpnessReport {
    int starSize = 0;
    double p = 2.0;
    std::string mode;
    double achieved = 0.0;
    double bound = 0.0;
    double relError = 0.0;
    bool pass = false;
};

// Star-graph extremal checks: mode "uniform" compares max tilde-phi against
// the partition bound (equality expected); mode "lp" measures the worst
// residual of the rank-(N-1) operator over the span of the hat-slope family.
SharpnessReport sharpnessStar(int starSize, double p, const std::string& mode, double tol = 1e-10);

MetricGraph makeStarGraph(int arms, double armLength = 1.0);

}  // namespace mgraph
