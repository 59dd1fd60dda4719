// interface.hpp
// Zero level set extraction (2D marching squares) and polyline curvature by
// 5-vertex circumscribed-circle fits.

#ifndef PFLAB_INTERFACE_HPP
#define PFLAB_INTERFACE_HPP

#include <vector>

#include "pflab/state.hpp"

namespace pflab {

struct InterfacePolyline {
    std::vector<std::array<double, 2>> vertices; // ordered; consecutive within 2h
    std::vector<std::array<double, 2>> normals;  // grad u / |grad u| at the vertices
    std::vector<double> kappa;                   // signed: H = kappa * normal
    bool closed = false;
    bool inward_normal_consistent = false; // normals point toward the fit centers
    int components_found = 0;              // chains in the full zero set

    bool empty() const { return vertices.empty(); }
    double length() const;
    std::array<double, 2> centroid() const;
};

// Marching squares on {u = 0}. Edge crossings are located by linear
// interpolation in artanh(u) (same zero set; exact for the 1D profile, which
// keeps vertex jitter below the curvature-fit scale). Returns the longest
// chain; no sign change yields an empty result.
InterfacePolyline extract_interface(const PhaseState& s);

// 5-vertex circumscribed-circle fit per vertex (windows wrap on closed
// polylines, clamp on open ones). Fills `kappa` and the consistency flag.
void polyline_curvature(InterfacePolyline& poly);

struct CurvatureComparison {
    std::vector<double> defect; // per vertex |kappa - v.normal|
    double mean_defect = 0.0;
    double lq_mean = 0.0;    // (average defect^q)^(1/q)
    double q = 0.0;          // p(n-1)/(n-p)
    double vline_integral = 0.0; // discrete int_Gamma |v.normal|^q dH^1
};

// v is sampled at the vertices by bilinear interpolation; q from p.
CurvatureComparison curvature_comparison(const InterfacePolyline& poly, const VectorField& v,
                                         double p);

} // namespace pflab

#endif
