#pragma once

#include <optional>
#include <string>
#include <vector>

#include "planelab/algebra.hpp"
#include "planelab/linsolve.hpp"

namespace planelab {

struct parameter_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Thrown when an iterative kernel fails to converge; carries the best
// residual reached so callers can report it.
struct solver_error : std::runtime_error {
    double best_residual;
    solver_error(const std::string& what, double residual)
        : std::runtime_error(what), best_residual(residual) {}
};

// Monotone homeomorphism of [0, inf) fixing 0 and 1, from a fixed menu.
struct RadialSpec {
    enum class Kind { Identity, Power, QuadMean, TableSpline };
    Kind kind = Kind::Identity;
    double exponent = 1.0;
    std::vector<std::pair<double, double>> knots; // strictly increasing in both coords

    double eval(double x) const;
    double inverse(double y) const;
    double odd_eval(double x) const;    // sign-symmetric extension to R
    double odd_inverse(double y) const;
    bool is_odd_extension() const { return kind != Kind::TableSpline || odd_flag; }
    bool odd_flag = true; // spline knots may encode a non-odd homeomorphism of R

    // non-odd homeomorphism of R: x for x>=0, kink*x for x<0
    double kinked_eval(double x) const { return x >= 0 ? x : exponent * x; }

    static RadialSpec identity();
    static RadialSpec power(double r);
    static RadialSpec quad_mean(); // x -> (x + x^2)/2
    static RadialSpec spline(std::vector<std::pair<double, double>> knots);
};

// Direction map for the Andre product s * x = s x^{phi(|s|)}; values are
// normalized before use, the exponent means conjugation g^-1 x g.
struct AndreSpec {
    enum class Kind { Hom, Spline };
    Kind kind = Kind::Hom;
    double beta = 1.0;
    Elem phi(double s_abs) const; // unit quaternion, phi(1) = 1
};

struct SolverOptions {
    int bisect_steps = 200;
    int damped_iters = 100;
    double damping = 0.5;
    double tol = 1e-9;
};

enum class Family {
    Classical,
    MutationH,
    MutationO,
    Rees,
    Lenz5,
    Andre,
    HaehlSO4,
    DistortedH,
    DistortedO,
    Spin,
    Moulton,
    Tschet,
    TschetDual
};

// A member of the catalog of ternary/Cartesian fields. The ternary map is
// tau(s,x,t) = s*x + t for every family except the two Tschetweruchin-style
// ones, whose tau carries a sign-dependent branch.
struct CoordinateStructure {
    Family family = Family::Classical;
    Alg carrier = Alg::R;

    double mu = 1.0;        // mutation weight, > 1/2
    double theta = 1.0;     // Rees angle, in (0, pi)
    double alpha = 0.5;     // Lenz type V angle, in (0, pi/2)
    double spin_r = 1.0;    // spin parameter, > 0
    double moulton_k = 2.0; // Moulton constant, > 1
    RadialSpec radial;      // distorted / haehl / tschet branch map
    bool tschet_kinked = false; // tschet with the non-odd kink map
    AndreSpec andre;

    double branch_shift = 0.0; // deliberate corruption knob for negative tests

    SolverOptions solver;

    int carrier_dim() const { return dim(carrier); }
    bool left_distributive() const;
    bool ternary_is_product_plus_t() const {
        return family != Family::Tschet && family != Family::TschetDual;
    }
    void validate() const; // throws parameter_error on out-of-range parameters
};

// factory helpers
CoordinateStructure cs_classical(Alg a);
CoordinateStructure cs_mutation_h(double mu);
CoordinateStructure cs_mutation_o(double mu);
CoordinateStructure cs_rees(double theta);
CoordinateStructure cs_lenz5(double alpha);
CoordinateStructure cs_andre_hom(double beta);
CoordinateStructure cs_andre_spline();
CoordinateStructure cs_haehl(RadialSpec rho);
CoordinateStructure cs_distorted_h(RadialSpec rho);
CoordinateStructure cs_distorted_o(RadialSpec rho);
CoordinateStructure cs_spin(double r);
CoordinateStructure cs_moulton(double k);
CoordinateStructure cs_tschet(double r);
CoordinateStructure cs_tschet_kinked(double k);
CoordinateStructure cs_tschet_dual(double r);

// the multiplication s o x of the structure
Elem cs_multiply(const CoordinateStructure& cs, const Elem& s, const Elem& x);

// x (+) t = tau(1, x, t); componentwise except for the dual Tschetweruchin map
Elem cs_add(const CoordinateStructure& cs, const Elem& x, const Elem& t);

Elem cs_ternary(const CoordinateStructure& cs, const Elem& s, const Elem& x, const Elem& t);

// the real Cartesian product r * s behind the distorted families
double cs_star(const CoordinateStructure& cs, double r, double s);

// find s with s o x = w (x != 0); residual <= solver tol or solver_error
Elem solve_slope(const CoordinateStructure& cs, const Elem& x, const Elem& w);

// find x with s o x = w (s != 0)
Elem solve_point(const CoordinateStructure& cs, const Elem& s, const Elem& w);

// find s with s o x1 - s o x2 = d  (join kernel; x1 != x2)
Elem solve_join_slope(const CoordinateStructure& cs, const Elem& x1, const Elem& x2,
                      const Elem& d);

// find x with s1 o x - s2 o x = w  (meet kernel; s1 != s2)
Elem solve_meet_x(const CoordinateStructure& cs, const Elem& s1, const Elem& s2,
                  const Elem& w);

// matrix of x -> s o x in carrier coordinates (defined for every family whose
// product is linear in x, i.e. all but the distorted ones)
Mat left_mul_op(const CoordinateStructure& cs, const Elem& s);
// matrix of s -> s o x (families whose product is linear in s)
Mat right_mul_op(const CoordinateStructure& cs, const Elem& x);

// anti-automorphism check against the structure product
MorphismReport structure_morphism_verify(const CoordinateStructure& cs, const Morphism& m,
                                         int n_samples, std::uint64_t seed,
                                         double tol = 1e-12);

// identifier grammar: family(:key=value)*, e.g. "mutation-h:mu=0.75",
// "distorted-h:rho=power:2", "tschet:r=3"
CoordinateStructure parse_structure(const std::string& id);
std::string structure_id(const CoordinateStructure& cs);

} // namespace planelab
