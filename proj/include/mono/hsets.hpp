#pragma once

#include "mono/monomialize.hpp"

namespace mono {

enum class FactorSign { Zero, Pos, Neg };

struct QuadrantFactor {
    FactorSign kind = FactorSign::Pos;
    Rational radius = rat(1); // ignored for Zero
};

// Product D_1 x ... x D_n with each D_i one of {0}, (0, r_i), (-r_i, 0).
struct SubQuadrant {
    std::vector<QuadrantFactor> factors;

    unsigned size() const { return static_cast<unsigned>(factors.size()); }
    bool contains(const std::vector<Rational>& q) const;
    SubQuadrant halved() const;
    std::string to_string() const;
};

// {x in Delta_r : eq(x) = 0, ineqs(x) > 0}; eq absent means no equation.
struct HBasicSet {
    unsigned nvars = 0;
    std::vector<Rational> polyradius;
    std::optional<Series> eq;
    std::vector<Series> ineqs;

    bool contains(const std::vector<Rational>& p) const;
};

struct Chart {
    SubQuadrant quadrant;
    TransformPath path;
};

// Sign taken by a certified normal germ on every point of the quadrant
// close enough to 0: 0 iff some alpha_i > 0 over a Zero factor, otherwise
// sign(unit_constant) * prod over Neg factors of (-1)^alpha_i.
int sign_on_quadrant(const NormalCertificate& cert, const SubQuadrant& q);

// All sub-quadrants (over the set's polyradius) on which the equation has
// sign 0 and every inequality sign +. Every defining series must be
// normal with a decidable certificate.
std::vector<SubQuadrant> membership_quadrants(const HBasicSet& pullback);

struct CoverageReport {
    unsigned long samples = 0;
    unsigned long covered = 0;
    std::vector<unsigned long> chart_hits;    // parallel to the chart list
    std::vector<std::string> frontier_notes;  // unexpanded families near misses
    double fraction() const { return samples == 0 ? 1.0 : double(covered) / double(samples); }
};

struct Parametrization {
    std::vector<Chart> charts;
    CoverageReport report;
    NodePtr tree; // null when the set has no defining series
};

// Runs the normalization engine on the defining series and keeps, per
// expanded leaf, the maximal sub-quadrants whose leaf signs realize
// membership. Coverage is sampled on a grid over A's intersection with
// the polydisk of radius delta and reported, never certified.
Parametrization parametrize(const HBasicSet& A, const MonomializeConfig& cfg,
                            const std::vector<Rational>& delta, const Rational& grid_step);

// Preimage of p under the chart map restricted to its quadrant; nullopt
// when p is not in the image.
std::optional<std::vector<Rational>> chart_preimage(const Chart& chart,
                                                    const std::vector<Rational>& p);

// Fibered presentation with one graph variable per defining series.
struct LiftedSet {
    unsigned nvars = 0;
    std::vector<Rational> polyradius;
    std::vector<Series> eqs;
    std::vector<Series> ineqs;

    bool contains(const std::vector<Rational>& p) const;
};

// sum |c_a| * r^a, a sup bound for |g| on the closed polydisk.
Rational coefficient_sum_bound(const Series& g, const std::vector<Rational>& r);

// Replaces each defining series g_i by a graph variable y_i with the
// equation y_i - g_i(x) = 0; bounds[i] becomes the polyradius of y_i and
// must dominate |g_i| on the polydisk (coefficient-sum check).
LiftedSet lift_graphs(const HBasicSet& A, const std::vector<Rational>& bounds);

// Connected components of the grid-sampled membership mask under face
// adjacency.
unsigned count_components_sampled(const HBasicSet& A, const Rational& grid_step);

} // namespace mono
