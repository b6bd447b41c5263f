#pragma once

#include "mono/series.hpp"

namespace mono {

// H-manifold data in n + k variables: the common zero set of the eqs
// intersected with {ineqs > 0} inside the polydisk, projected onto the
// first split_n coordinates.
struct ManifoldSpec {
    unsigned nvars = 0;
    unsigned split_n = 0;
    std::vector<Rational> polyradius;
    std::vector<Series> eqs;
    std::vector<Series> ineqs;

    unsigned dim() const { return nvars - static_cast<unsigned>(eqs.size()); }
};

struct FrameResult {
    std::vector<double> point;
    std::vector<std::vector<double>> tangent; // d orthonormal vectors
    std::vector<std::vector<double>> atilde;  // l vectors, orthonormal projections
    std::vector<std::vector<double>> fiber;   // d - l vectors, zero projection
    unsigned rank = 0;                        // l = rank of the projection
};

// Orthonormal basis of the kernel of the equation Jacobian at z.
std::vector<std::vector<double>> tangent_basis(const ManifoldSpec& m,
                                               const std::vector<double>& z);

// Tangent frame split against the projection onto the first split_n
// coordinates: rank l plus d - l fiber-tangent vectors b_i with
// Pi_n b_i = 0.
FrameResult fiber_basis(const ManifoldSpec& m, const std::vector<double>& z);

// Rank of the projection restricted to the tangent space at z.
unsigned rank_at(const ManifoldSpec& m, const std::vector<double>& z);

// Strictly increasing 0-based index sequence iota of length d whose
// coordinate projection is injective on the tangent space at every
// sample, with the first rank-many indices below split_n.
std::optional<std::vector<unsigned>>
immersion_witness(const ManifoldSpec& m, const std::vector<std::vector<double>>& samples);

// g_1 *...* g_q * prod_i (r_i^2 - z_i^2), the fiber-cutting function.
Series build_phi(const ManifoldSpec& m);

// Polynomial equations cutting out the fiber-critical locus of phi on
// the manifold: <grad phi, b_i> = 0 over a denominator-free symbolic
// fiber frame, with polydisk factors divided out and signs normalized.
std::vector<Series> critical_set_equations(const ManifoldSpec& m);

// Sampled check that (M cut to the smaller polydisk) has the same fibers
// as M over every sampled base point.
bool compatible_polydisk_check(const ManifoldSpec& m, const std::vector<Rational>& rprime,
                               unsigned grid = 256);

// Sampled check that every fiber coordinate is strictly dominated by
// some fixed base coordinate on M.
bool butterfly_check(const ManifoldSpec& m, unsigned grid = 64);

struct FiberCutResult {
    std::vector<Series> equations;
    std::vector<Rational> suggested_radius;
    unsigned manifold_dimension = 0;
    unsigned critical_dimension = 0; // sampled
    bool projection_onto = false;    // every sampled base point has a critical fiber point
    std::vector<std::vector<double>> critical_samples;
};

// Critical equations plus a compatible polydisk and a sampled dimension
// estimate of the critical set (checked < d).
FiberCutResult fiber_cut(const ManifoldSpec& m, unsigned grid = 64);

// Max over the samples of the numeric Jacobian-kernel dimension of the
// equation system.
unsigned dimension_sampled(const std::vector<Series>& eqs,
                           const std::vector<std::vector<double>>& samples);

} // namespace mono
