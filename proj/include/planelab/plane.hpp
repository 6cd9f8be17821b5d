#pragma once

#include <string>

#include "planelab/coords.hpp"

namespace planelab {

struct degenerate_input : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Projective elements are tagged; the two ideal kinds stay symbolic so that
// arithmetic at infinity is exact.
struct Point {
    enum class Kind { Affine, Slope, Infinity };
    Kind kind = Kind::Affine;
    Elem x, y; // Affine: both; Slope: x holds the slope

    static Point affine(const Elem& x, const Elem& y) { return {Kind::Affine, x, y}; }
    static Point slope(const Elem& s) { return {Kind::Slope, s, Elem(s.tag)}; }
    static Point infinity(Alg t) { return {Kind::Infinity, Elem(t), Elem(t)}; }
};

struct Line {
    enum class Kind { NonVertical, Vertical, AtInfinity };
    Kind kind = Kind::NonVertical;
    Elem s, t; // NonVertical: both; Vertical: s holds the foot c

    static Line non_vertical(const Elem& s, const Elem& t) { return {Kind::NonVertical, s, t}; }
    static Line vertical(const Elem& c) { return {Kind::Vertical, c, Elem(c.tag)}; }
    static Line at_infinity(Alg t) { return {Kind::AtInfinity, Elem(t), Elem(t)}; }
};

// Shift planes: lines are verticals plus the translates of the graph of f.
// A NonVertical(s, t) is the translate through offset (s, t).
struct ShiftSpec {
    enum class Kind { CoshM1, PowerAbs, Knarr };
    Kind kind = Kind::CoshM1;
    double c_re = 0.0, c_im = 0.0; // exponent for PowerAbs, f(z) = z^2 |z|^c
    bool nonstandard = false;      // Knarr requires the explicit flag

    Alg carrier() const { return kind == Kind::CoshM1 ? Alg::R : Alg::C; }
    Elem eval(const Elem& z) const;
    Elem deriv(const Elem& z, const Elem& dir) const; // directional derivative (numeric)
};

struct PlaneModel {
    enum class Kind { Ternary, Shift };
    Kind kind = Kind::Ternary;
    CoordinateStructure cs;
    ShiftSpec shift;
    double tol = 1e-9;

    Alg carrier() const { return kind == Kind::Ternary ? cs.carrier : shift.carrier(); }
    int carrier_dim() const { return dim(carrier()); }
    bool flat() const { return carrier_dim() == 1; }
};

PlaneModel plane_over(const CoordinateStructure& cs);
PlaneModel shift_plane(const ShiftSpec& f);

// "moulton:k=2", "shift:f=cosh", "shift:f=zabs:0.5", "shift:f=knarr:nonstandard=1"
PlaneModel parse_plane(const std::string& id);
std::string plane_id(const PlaneModel& plane);

bool incident(const PlaneModel& plane, const Point& p, const Line& l, double tol);
inline bool incident(const PlaneModel& plane, const Point& p, const Line& l) {
    return incident(plane, p, l, plane.tol);
}
// signed defect of the defining equation; 0 for symbolically decided cases
double incidence_residual(const PlaneModel& plane, const Point& p, const Line& l);

Line join(const PlaneModel& plane, const Point& p, const Point& q);
Point meet(const PlaneModel& plane, const Line& l, const Line& m);

bool same_point(const PlaneModel& plane, const Point& a, const Point& b, double tol);
bool same_line(const PlaneModel& plane, const Line& a, const Line& b, double tol);

// the dual of a Tschetweruchin-style plane; requires an odd branch map
PlaneModel dualize(const PlaneModel& plane);

Point random_affine(Rng& rng, const PlaneModel& plane, double scale = 1.5);
Line random_line(Rng& rng, const PlaneModel& plane, double scale = 1.5);

std::string to_string(const Point& p);
std::string to_string(const Line& l);

} // namespace planelab
