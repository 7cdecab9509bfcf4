#pragma once

#include <vector>

#include "mgraph/subset.hpp"

namespace mgraph {

// Finite Borel measure: point masses plus a piecewise-constant density per
// edge. Atom locations are canonical; masses are positive.
class Measure {
public:
    struct Atom {
        GraphPoint point;
        double mass = 0.0;
    };
    struct DensityPiece {
        double from = 0.0;
        double to = 0.0;
        double value = 0.0;
    };

    explicit Measure(const MetricGraph& g);
    static Measure lebesgue(const MetricGraph& g);

    const MetricGraph& graph() const { return *g_; }

    void addAtom(const GraphPoint& p, double mass);
    void addDensityPiece(EdgeId e, double from, double to, double value);
    void setConstantDensity(double value);

    bool hasAtoms() const { return !atoms_.empty(); }
    const std::vector<Atom>& atoms() const { return atoms_; }
    const std::vector<std::vector<DensityPiece>>& density() const { return density_; }
    double densityAt(EdgeId e, double offset) const;
    double maxDensity() const;

    double total() const;
    double of(const Subset& e) const;

private:
    const MetricGraph* g_;
    std::vector<Atom> atoms_;
    std::vector<std::vector<DensityPiece>> density_;  // per edge, sorted, disjoint
};

// Piecewise polynomial of degree <= 1 per edge (affine pieces); continuity at
// vertices is validated separately for Sobolev inputs. Weights and densities
// use degree 0.
class PiecewiseFunction {
public:
    struct Piece {
        double from = 0.0;
        double to = 0.0;
        double c0 = 0.0;  // value at `from`
        double c1 = 0.0;  // slope
        double at(double offset) const { return c0 + c1 * (offset - from); }
    };

    explicit PiecewiseFunction(const MetricGraph& g);
    static PiecewiseFunction constant(const MetricGraph& g, double value);
    // continuous piecewise-linear edge data given by breakpoints and values
    void setEdgeLinear(EdgeId e, const std::vector<double>& breakpoints, const std::vector<double>& values);
    void addConstantPiece(EdgeId e, double from, double to, double value);

    const MetricGraph& graph() const { return *g_; }
    const std::vector<Piece>& edgePieces(EdgeId e) const { return pieces_.at(static_cast<size_t>(e)); }

    double at(const GraphPoint& p) const;      // vertex points use any incident edge value
    double at(EdgeId e, double offset) const;  // evaluation on a specific edge
    bool coversGraph() const;
    bool isPiecewiseConstant() const;
    // max |discontinuity| across vertices and interior breakpoints
    double continuityDefect() const;
    void requireContinuous() const;
    bool positive() const;  // strictly positive everywhere (piece values)

    PiecewiseFunction mapScaled(double scale, double shift) const;  // scale*f + shift

private:
    const MetricGraph* g_;
    std::vector<std::vector<Piece>> pieces_;
    friend PiecewiseFunction combineLinear(double alpha, const PiecewiseFunction& u1, const PiecewiseFunction& u2);
};

// alpha*u1 + u2 with merged breakpoints
PiecewiseFunction combineLinear(double alpha, const PiecewiseFunction& u1, const PiecewiseFunction& u2);

// ||f||_{L^p(E, weight dx)} with piecewise-constant weight (nullptr -> 1).
// Exact closed form for every p in [1, inf]; p = inf is the essential sup
// over E (weight must be a bounded density).
double lpNorm(const PiecewiseFunction& f, double p, const Subset& e, const PiecewiseFunction* weight = nullptr);

// ||u'||_{L^p(E, a dx)} for piecewise-linear u and piecewise-constant a > 0;
// for p = inf this is ess sup |a u'|.
double derivativeNorm(const PiecewiseFunction& u, double p, const PiecewiseFunction& a, const Subset& e);

// integral of |f|^p * w over [lo,hi] for one affine piece of f, exact
double affinePowerIntegral(double f_lo, double f_hi, double lo, double hi, double p, double w);

double holderConjugate(double p);

}  // namespace mgraph
