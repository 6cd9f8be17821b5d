#pragma once

#include <map>
#include <string>
#include <vector>

#include "planelab/collineation.hpp"

namespace planelab {

// One witness payload: full coordinates of a failing configuration plus the
// trial index it replays from.
struct Witness {
    int trial = -1;
    double discrepancy = 0.0;
    std::string description;
    std::vector<std::vector<double>> coords;
};

struct VerificationReport {
    std::string suite;
    std::string plane;
    std::uint64_t seed = 0;
    int attempted = 0;
    int passed = 0;
    int skipped = 0;
    double max_residual = 0.0;
    bool pass = true;
    std::vector<Witness> witnesses;
    std::map<std::string, bool> subtests;

    void note_failure(const Witness& w) {
        pass = false;
        if (witnesses.size() < 8) witnesses.push_back(w);
    }
    std::string to_json() const;
};

// unique join / unique meet / parallels / quadrangle nondegeneracy
VerificationReport check_plane_axioms(const PlaneModel& plane, int n, std::uint64_t seed,
                                      double tol_closed = 1e-8, double tol_iter = 1e-6);

enum class AlgebraClass { Cartesian, Quasifield, Semifield, Nearfield, Skewfield };
AlgebraClass algebra_class_from_string(const std::string& s);
std::string to_string(AlgebraClass c);

// tests exactly the class's laws (additive group, tau = s o x + t, the
// distributive laws, associativity, solvability), each on n samples
VerificationReport check_algebra_axioms(const CoordinateStructure& cs, AlgebraClass cls, int n,
                                        std::uint64_t seed);

struct Region {
    enum class Kind { None, Window, Disk } kind = Kind::None;
    double xmin = 0, xmax = 0, ymin = 0, ymax = 0; // window
    double cx = 0, cy = 0, radius = 1;             // disk
    bool contains(double x, double y) const;
    static Region none() { return {}; }
    static Region window(double x0, double x1, double y0, double y1);
    static Region disk(double cx, double cy, double r);
};

struct ConfigurationResult {
    double max_discrepancy = 0.0;
    int trials_done = 0;
    int degenerate_redraws = 0;
    Witness witness; // the worst configuration, full coordinates
};

enum class ConfigKind { Desargues, Pappus };

// random closure configurations built via join/meet; discrepancy is the
// point-to-line distance of the closing element in affine chart coordinates
ConfigurationResult configuration_test(const PlaneModel& plane, ConfigKind kind,
                                       const Region& region, int trials, std::uint64_t seed);

// replay one trial's configuration deterministically (witness replay contract)
double configuration_replay(const PlaneModel& plane, ConfigKind kind, const Region& region,
                            std::uint64_t seed, int trial);

struct SmoothnessReport {
    bool has_locus = false;
    std::string locus;
    double max_jump_order1 = 0.0;
    double max_jump_order2 = 0.0;
    std::vector<std::array<double, 3>> probes; // (probe coordinate, left, right)
};

enum class Locus { SlopeSign, CoordSign };

// one-sided difference quotients of tau across the gluing locus
SmoothnessReport smoothness_probe(const CoordinateStructure& cs, Locus locus, int order);

// involutivity, the duality law and predicate/incidence agreement on n samples
// (affine tolerance 1e-10, ideal cases exact)
VerificationReport check_polarity_laws(const Polarity& pol, int n, std::uint64_t seed,
                                       double tol = 1e-10);

// membership <-> commutation over random parameter draws (half of them exact
// members); returns the number of disagreements
struct EquivalenceResult {
    int draws = 0;
    int members = 0;
    int disagreements = 0;
};
EquivalenceResult motion_equivalence(const Polarity& pol, int draws, std::uint64_t seed);

// the explicit isomorphism between the dual planes with exponents r and 1/r:
// (x, y) -> (-x^rho, y^rho) carrying [s, t] to [-s^rho, t^rho]
struct IsomorphismResult {
    int checked = 0;
    double max_residual = 0.0;
};
IsomorphismResult dual_exponent_isomorphism(double r, int n, std::uint64_t seed);

} // namespace planelab
