#pragma once

#include <vector>

#include "planelab/plane.hpp"

namespace planelab {

// An involutive point<->line correspondence from the catalog. AntiAuto covers
// every rule of the shape (x,y) <-> [x^i, -y^i]; the others carry their own
// formulas.
struct Polarity {
    enum class Rule { AntiAuto, SpinPi, DoubleFlagKappa, Shift, Elliptic };

    PlaneModel plane;
    Rule rule = Rule::AntiAuto;
    Morphism iota; // AntiAuto only
    std::string name;
};

// Catalog lookup by name; throws parameter_error for unknown combinations.
// Names: "rho-bar", "pi", "kappa-hat", "kappa", "rho", "elliptic".
Polarity make_polarity(const PlaneModel& plane, const std::string& name);
std::vector<std::string> polarity_names(const PlaneModel& plane);

Line polar(const Polarity& pol, const Point& p);
Point polar(const Polarity& pol, const Line& l);

// closed-form membership residual of the absolute-point equation (normalized);
// ideal points return 0 or 1
double absolute_residual(const Polarity& pol, const Point& p);
bool is_absolute(const Polarity& pol, const Point& p, double tol = 1e-9);

struct UnitalSample {
    std::vector<Point> points;
    int local_dimension = -1;      // majority vote over probe points
    int probes = 0;                // probe points examined
    int probes_agreeing = 0;       // probes reporting the majority dimension
    int skipped = 0;               // degenerate sample draws skipped
};

// n absolute points obtained by solving the membership equation for the
// dependent coordinates; local dimension from the rank deficit of the
// constraint Jacobian (finite differences, step 1e-5, rank threshold 1e-6).
UnitalSample unital_probe(const Polarity& pol, int n, std::uint64_t seed);

enum class LineClass { Secant, Tangent, Exterior, Indeterminate };

struct LineClassification {
    LineClass cls = LineClass::Indeterminate;
    std::vector<Point> samples;  // intersection points found
    int local_dimension = -1;    // of the intersection, when a secant
    Point tangent_point;         // when a tangent
};

LineClassification classify_line(const Polarity& pol, const Line& l, int budget,
                                 std::uint64_t seed);

// residual vector of the membership equation at an affine point, one entry per
// carrier coordinate; drives the dimension probes
std::vector<double> membership_residual_vector(const Polarity& pol, const Elem& x,
                                               const Elem& y);

} // namespace planelab
