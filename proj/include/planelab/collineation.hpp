#pragma once

#include <optional>

#include "planelab/polarity.hpp"

namespace planelab {

// Parametric self-maps of a plane. Each family stores its parameters and
// applies points and lines independently; ideal elements map symbolically.
struct Collineation {
    enum class Family {
        MutationGeneral, // (a,b) -> (a^g s + m, r b^g s + q o (a^g s) + n)
        SpinStab,        // (x,y) -> (c^-1 x a, a~ o (y a d))
        DoubleFlag,      // (x,y) -> (a x c, b y c + n)
        Translation,     // (x,y) -> (x + m, y + n)
        UnitalMotion,    // (a,b) -> (a + m, b + m^iota o a + n)
        AxialScale,      // (x,y) -> (ax, by) on the flat glued planes
        HalfPlaneSwap,   // (x,y,z) <-> (z,y,x) on the dual Tschetweruchin plane
        ShiftBy          // z -> z + d on shift planes
    };

    Family family = Family::Translation;
    PlaneModel plane;
    Morphism gamma;       // MutationGeneral automorphism; UnitalMotion's iota
    double r = 1.0, s = 1.0;
    Elem q, m, n;
    Elem a, b, c;         // SpinStab / DoubleFlag units; AxialScale factors in a[0], b[0]
    double d = 1.0;       // SpinStab real factor

    // test hook: when set, the line action of a MutationGeneral map uses this
    // q instead of the point action's, producing a deliberately broken map
    std::optional<Elem> line_q_override;
};

Point apply(const Collineation& f, const Point& p);
Line apply(const Collineation& f, const Line& l);

// constructors (validate parameter domains)
Collineation mutation_general(const PlaneModel& plane, const Morphism& gamma, double r,
                              double s, const Elem& q, const Elem& m, const Elem& n);
Collineation spin_stab(const PlaneModel& plane, const Elem& a, const Elem& c, double d);
Collineation double_flag_map(const PlaneModel& plane, const Elem& a, const Elem& b,
                             const Elem& c, const Elem& n);
Collineation make_translation(const PlaneModel& plane, const Elem& m, const Elem& n);
Collineation make_unital_motion(const Polarity& pol, const Elem& m, const Elem& n);
Collineation make_axial_scale(const PlaneModel& plane, double ax, double by);
Collineation make_half_plane_swap(const PlaneModel& plane);
Collineation make_shift_by(const PlaneModel& plane, const Elem& dx, const Elem& dy);

// composition inside the MutationGeneral family (the stabilizer group law)
Collineation compose_mutation(const Collineation& second, const Collineation& first);

struct CollineationReport {
    bool pass = true;
    double max_residual = 0.0;
    int checked = 0;
    Point witness_p;
    Line witness_l;
};

// n random incident pairs (p, L); checks incident(f p, f L)
CollineationReport verify_collineation(const PlaneModel& plane, const Collineation& f, int n,
                                       std::uint64_t seed, double tol = 1e-8);

struct MotionTest {
    bool condition_membership = false;
    bool commutes = false;
    double max_commute_residual = 0.0;
};

// closed-form membership in the motion group of pol vs. empirical commutation
MotionTest motion_test(const Polarity& pol, const Collineation& f, int n, std::uint64_t seed,
                       double tol = 1e-8);

// dimension of the mutation motion family, counted from constraint ranks
int motion_dimension_audit(const Polarity& pol, std::uint64_t seed);

} // namespace planelab
