#pragma once

#include <array>
#include <cstdint>
#include <stdexcept>
#include <string>

#include "planelab/rng.hpp"

namespace planelab {

// The four composition algebras over the reals, by coordinate dimension.
enum class Alg : int { R = 1, C = 2, H = 4, O = 8 };

inline int dim(Alg a) { return static_cast<int>(a); }

struct structural_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct division_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// A value in R, C, H or O. Coordinates beyond dim(tag) stay zero, which lets
// one struct serve all four algebras without templates.
struct Elem {
    Alg tag = Alg::R;
    std::array<double, 8> c{};

    Elem() = default;
    explicit Elem(Alg t) : tag(t) {}
    Elem(Alg t, std::initializer_list<double> v) : tag(t) {
        int i = 0;
        for (double x : v) {
            if (i >= 8) break;
            c[static_cast<size_t>(i++)] = x;
        }
    }

    double& operator[](int i) { return c[static_cast<size_t>(i)]; }
    double operator[](int i) const { return c[static_cast<size_t>(i)]; }
    int n() const { return dim(tag); }

    static Elem zero(Alg t) { return Elem(t); }
    static Elem one(Alg t) {
        Elem e(t);
        e.c[0] = 1.0;
        return e;
    }
    static Elem unit(Alg t, int i) {
        Elem e(t);
        e.c[static_cast<size_t>(i)] = 1.0;
        return e;
    }
    static Elem real(Alg t, double v) {
        Elem e(t);
        e.c[0] = v;
        return e;
    }
};

Elem operator+(const Elem& a, const Elem& b);
Elem operator-(const Elem& a, const Elem& b);
Elem operator-(const Elem& a);
Elem operator*(double s, const Elem& a);
Elem operator*(const Elem& a, double s);

// Product in the element's own algebra (Cayley-Dickson convention
// (a,b)(c,d) = (ac - d~ b, d a + b c~), conj(a,b) = (a~, -b)).
Elem mul(const Elem& a, const Elem& b);

Elem conj(const Elem& a);
double norm2(const Elem& a);
double norm(const Elem& a);
Elem inverse(const Elem& a); // throws division_error on 0
double re(const Elem& a);
Elem pure(const Elem& a);

double dist(const Elem& a, const Elem& b);
bool near(const Elem& a, const Elem& b, double tol);

// Splittings: quaternion c = c' + c'' j (complex halves), octonion
// z = z' + z'' l (quaternion halves). lo/hi give the halves as elements of
// the half-dimensional algebra; join_halves rebuilds.
Elem half_lo(const Elem& a);
Elem half_hi(const Elem& a);
Elem join_halves(Alg t, const Elem& lo, const Elem& hi);

// Widen/narrow between algebras (zero padding / truncation of zero tail).
Elem cast_to(const Elem& a, Alg t);

std::string to_string(const Elem& a);

// --- morphism catalog ---------------------------------------------------
//
// The (anti)automorphisms the polarities are assembled from. `variance` is
// what the morphism is *declared* to be; morphism_verify checks the claim.

enum class Variance { Automorphism, AntiAutomorphism };

struct Morphism {
    enum class Kind {
        Identity,     // z -> z
        Conjugation,  // z -> z~
        TwistedConj,  // z -> g^-1 z~ g, g a unit (pure for an involution)
        HalfFlip,     // octonion z' + z'' l -> z' - z'' l
        ConjHalfFlip, // conjugation composed with HalfFlip: z' + z'' l -> z'~ + z'' l
        InnerAuto,    // z -> h^-1 z h, h a unit
        PairAuto,     // octonion (a,b) -> (p a p~, u (p b p~)), |p| = |u| = 1
        ReesConj      // C^2 carrier: (a,b) -> (a, b~)
    };

    Kind kind = Kind::Identity;
    Alg alg = Alg::H;
    Variance variance = Variance::Automorphism;
    Elem g, h, p, u; // parameters, used per kind

    static Morphism identity(Alg a);
    static Morphism conjugation(Alg a);                    // anti
    static Morphism twisted_conj(Alg a, const Elem& g);    // anti
    static Morphism half_flip();                           // auto on O
    static Morphism conj_half_flip();                      // anti on O
    static Morphism inner_auto(Alg a, const Elem& h);      // auto
    static Morphism pair_auto(const Elem& p, const Elem& u); // auto on O
    static Morphism rees_conj();                           // anti for the Rees product
};

Elem morphism_apply(const Morphism& m, const Elem& a);
Morphism morphism_inverse(const Morphism& m);

struct MorphismReport {
    bool pass = true;
    double max_law_residual = 0.0;       // (anti)homomorphism law
    double max_involution_residual = 0.0; // m(m(z)) vs z, when involutory
    bool involution = false;
    Elem witness_a, witness_b; // populated on failure
    std::string message;
};

// Checks the declared variance of m against `n_samples` random pairs using
// the classical product of m.alg. Structures with a different product run
// their own check in the coordinates module.
MorphismReport morphism_verify(const Morphism& m, int n_samples, std::uint64_t seed,
                               double tol = 1e-12);

// Random elements: standard normal coordinates; unit elements are normalized
// draws with rejection below 1e-6.
Elem random_elem(Rng& rng, Alg t, double scale = 1.0);
Elem random_unit(Rng& rng, Alg t);
Elem random_pure_unit(Rng& rng, Alg t);

} // namespace planelab
