#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "planelab/coords.hpp"

using namespace planelab;

namespace {

Elem E(Alg t, std::initializer_list<double> v) { return Elem(t, v); }

// quaternion table used as the independent route for the mutation examples
Elem qt_mul(const Elem& a, const Elem& b) {
    static const int IDX[4][4] = {{0, 1, 2, 3}, {1, 0, 3, 2}, {2, 3, 0, 1}, {3, 2, 1, 0}};
    static const int SGN[4][4] = {{+1, +1, +1, +1}, {+1, -1, +1, -1}, {+1, -1, -1, +1},
                                  {+1, +1, -1, -1}};
    Elem r(Alg::H);
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j) r[IDX[i][j]] += SGN[i][j] * a[i] * b[j];
    return r;
}

double bisect_oracle(double target, double lo, double hi) {
    // solve (x + x^2)/2 = target
    auto f = [](double x) { return 0.5 * (x + x * x); };
    for (int i = 0; i < 200; ++i) {
        double mid = 0.5 * (lo + hi);
        if (f(mid) < target)
            lo = mid;
        else
            hi = mid;
    }
    return 0.5 * (lo + hi);
}

std::vector<CoordinateStructure> catalog() {
    return {
        cs_classical(Alg::R),
        cs_classical(Alg::C),
        cs_classical(Alg::H),
        cs_classical(Alg::O),
        cs_mutation_h(0.75),
        cs_mutation_o(0.75),
        cs_rees(1.0471975511965976),
        cs_lenz5(0.7853981633974483),
        cs_andre_hom(1.0),
        cs_andre_spline(),
        cs_haehl(RadialSpec::quad_mean()),
        cs_distorted_h(RadialSpec::power(2.0)),
        cs_distorted_h(RadialSpec::quad_mean()),
        cs_distorted_o(RadialSpec::power(2.0)),
        cs_distorted_o(RadialSpec::quad_mean()),
        cs_spin(0.5),
        cs_moulton(2.0),
        cs_tschet(3.0),
        cs_tschet_dual(3.0),
    };
}

} // namespace

TEST_CASE("unit laws hold across the catalog") {
    for (const auto& cs : catalog()) {
        Rng rng(19);
        for (int t = 0; t < 50; ++t) {
            Elem x = random_elem(rng, cs.carrier);
            Elem one = Elem::one(cs.carrier), zero = Elem::zero(cs.carrier);
            CAPTURE(structure_id(cs));
            CHECK(dist(cs_ternary(cs, one, x, zero), x) < 1e-12 * (1 + norm(x)));
            CHECK(dist(cs_ternary(cs, x, one, zero), x) < 1e-12 * (1 + norm(x)));
        }
    }
}

TEST_CASE("mutation product against the table route") {
    auto cs = cs_mutation_h(0.75);
    Elem i = Elem::unit(Alg::H, 1), j = Elem::unit(Alg::H, 2), k = Elem::unit(Alg::H, 3);
    // 0.75 ij + 0.25 ji by the independent table
    Elem expect = 0.75 * qt_mul(i, j) + 0.25 * qt_mul(j, i);
    CHECK(dist(cs_multiply(cs, i, j), expect) == 0.0);
    CHECK(dist(cs_multiply(cs, i, j), 0.5 * k) == 0.0);
    // mu = 1 agrees with the classical product exactly
    auto cl = cs_mutation_h(1.0);
    Rng rng(4);
    for (int t = 0; t < 100; ++t) {
        Elem a = random_elem(rng, Alg::H), b = random_elem(rng, Alg::H);
        CHECK(dist(cs_multiply(cl, a, b), mul(a, b)) == 0.0);
    }
}

TEST_CASE("rees unit and product shape") {
    auto cs = cs_rees(1.0);
    Rng rng(9);
    for (int t = 0; t < 50; ++t) {
        Elem x = random_elem(rng, Alg::H);
        CHECK(dist(cs_multiply(cs, Elem::one(Alg::H), x), x) < 1e-14);
        CHECK(dist(cs_multiply(cs, x, Elem::one(Alg::H)), x) < 1e-14);
    }
}

TEST_CASE("spin product adds the stated real correction") {
    auto cs = cs_spin(0.7);
    Elem j = Elem::unit(Alg::H, 2), k = Elem::unit(Alg::H, 3);
    Elem expect = Elem::unit(Alg::H, 1);
    expect[0] = 2.0 * 0.7;
    CHECK(dist(cs_multiply(cs, j, k), expect) == 0.0);
}

TEST_CASE("distorted star product via the bisection oracle") {
    auto cs = cs_distorted_h(RadialSpec::quad_mean());
    double expect = bisect_oracle(9.0, 0.0, 100.0); // (x + x^2)/2 = 9
    CHECK(expect == doctest::Approx(3.7720018726587655).epsilon(1e-12));
    CHECK(cs_star(cs, 2.0, 2.0) == doctest::Approx(expect).epsilon(1e-12));
    // |c| = 1 reduces to the plain product
    Rng rng(21);
    for (int t = 0; t < 60; ++t) {
        Elem c = random_unit(rng, Alg::H);
        Elem z = random_elem(rng, Alg::H);
        CHECK(dist(cs_multiply(cs, c, z), mul(c, z)) < 1e-12 * (1 + norm(z)));
    }
    // the power radial collapses to the classical product
    auto cp = cs_distorted_h(RadialSpec::power(2.0));
    for (int t = 0; t < 60; ++t) {
        Elem c = random_elem(rng, Alg::H), z = random_elem(rng, Alg::H);
        CHECK(dist(cs_multiply(cp, c, z), mul(c, z)) < 1e-10 * (1 + norm(c) * norm(z)));
    }
}

TEST_CASE("flat family ternary golden values") {
    auto mo = cs_moulton(2.0);
    CHECK(cs_ternary(mo, E(Alg::R, {-1}), E(Alg::R, {-2}), E(Alg::R, {1}))[0] ==
          doctest::Approx(5.0));
    auto ts = cs_tschet(3.0);
    CHECK(cs_ternary(ts, E(Alg::R, {-1}), E(Alg::R, {-1}), E(Alg::R, {0}))[0] ==
          doctest::Approx(1.0));
    // additions
    auto td = cs_tschet_dual(3.0);
    CHECK(cs_add(td, E(Alg::R, {-1}), E(Alg::R, {2}))[0] ==
          doctest::Approx(std::cbrt(7.0)).epsilon(1e-14));
    CHECK(cs_add(ts, E(Alg::R, {-1}), E(Alg::R, {2}))[0] == doctest::Approx(1.0));
}

TEST_CASE("solver examples") {
    // classical H: i j = k
    auto h = cs_classical(Alg::H);
    Elem i = Elem::unit(Alg::H, 1), j = Elem::unit(Alg::H, 2), k = Elem::unit(Alg::H, 3);
    CHECK(dist(solve_slope(h, j, k), i) < 1e-14);

    auto mo = cs_moulton(2.0);
    CHECK(solve_slope(mo, E(Alg::R, {-1}), E(Alg::R, {3}))[0] == doctest::Approx(-1.5));

    // mutation: invert the right-multiplication operator built from the table
    auto mu = cs_mutation_h(0.75);
    Elem target = 0.5 * k;
    Mat op(4, 4);
    for (int col = 0; col < 4; ++col) {
        Elem e = Elem::unit(Alg::H, col);
        Elem v = 0.75 * qt_mul(e, j) + 0.25 * qt_mul(j, e);
        for (int row = 0; row < 4; ++row) op(row, col) = v[row];
    }
    auto sol = solve_linear(op, {target[0], target[1], target[2], target[3]});
    Elem oracle(Alg::H, {sol[0], sol[1], sol[2], sol[3]});
    CHECK(dist(solve_slope(mu, j, target), oracle) < 1e-12);
    CHECK(dist(oracle, i) < 1e-12);

    auto sp = cs_spin(1.0);
    Elem w = Elem::unit(Alg::H, 1);
    w[0] = 2.0;
    CHECK(dist(solve_point(sp, j, w), k) < 1e-12);

    auto c = cs_classical(Alg::C);
    CHECK(dist(solve_point(c, E(Alg::C, {0, 2}), E(Alg::C, {2, 0})), E(Alg::C, {0, -1})) <
          1e-14);

    CHECK_THROWS_AS(solve_slope(h, Elem::zero(Alg::H), k), parameter_error);
}

TEST_CASE("solve round-trips across the catalog") {
    for (const auto& cs : catalog()) {
        CAPTURE(structure_id(cs));
        int bad = 0;
        for (int t = 0; t < 1000; ++t) {
            Rng rng(1000 + static_cast<std::uint64_t>(t));
            Elem s = random_elem(rng, cs.carrier), x = random_elem(rng, cs.carrier);
            if (norm(s) < 1e-5 || norm(x) < 1e-5) continue;
            Elem w = cs_multiply(cs, s, x);
            Elem s2 = solve_slope(cs, x, w);
            Elem x2 = solve_point(cs, s, w);
            double res = dist(cs_multiply(cs, s2, x), w) / (1.0 + norm(w));
            res = std::max(res, dist(cs_multiply(cs, s, x2), w) / (1.0 + norm(w)));
            if (res > 1e-9) ++bad;
        }
        CHECK(bad == 0);
    }
}

TEST_CASE("distorted round-trip with random pairs") {
    auto cs = cs_distorted_h(RadialSpec::quad_mean());
    int bad = 0;
    for (int t = 0; t < 100; ++t) {
        Rng rng(77 + static_cast<std::uint64_t>(t));
        Elem c = random_elem(rng, Alg::H), z = random_elem(rng, Alg::H);
        if (norm(c) < 1e-4 || norm(z) < 1e-4) continue;
        Elem w = cs_multiply(cs, c, z);
        if (dist(solve_point(cs, c, w), z) > 1e-9 * (1 + norm(z))) ++bad;
    }
    CHECK(bad == 0);
}

TEST_CASE("distributivity landscape") {
    Rng rng(23);
    auto left_ok = [&](const CoordinateStructure& cs) {
        for (int t = 0; t < 200; ++t) {
            Elem s = random_elem(rng, cs.carrier), x = random_elem(rng, cs.carrier),
                 y = random_elem(rng, cs.carrier);
            Elem lhs = cs_multiply(cs, s, x + y);
            Elem rhs = cs_multiply(cs, s, x) + cs_multiply(cs, s, y);
            if (dist(lhs, rhs) > 1e-9 * (1 + norm(lhs))) return false;
        }
        return true;
    };
    auto right_ok = [&](const CoordinateStructure& cs) {
        for (int t = 0; t < 200; ++t) {
            Elem s = random_elem(rng, cs.carrier), s2 = random_elem(rng, cs.carrier),
                 x = random_elem(rng, cs.carrier);
            Elem lhs = cs_multiply(cs, s + s2, x);
            Elem rhs = cs_multiply(cs, s, x) + cs_multiply(cs, s2, x);
            if (dist(lhs, rhs) > 1e-9 * (1 + norm(lhs))) return false;
        }
        return true;
    };
    for (const auto& cs : {cs_classical(Alg::H), cs_mutation_h(0.75), cs_rees(1.0),
                           cs_lenz5(0.7), cs_spin(0.5), cs_andre_hom(1.0), cs_andre_spline(),
                           cs_haehl(RadialSpec::quad_mean())}) {
        CAPTURE(structure_id(cs));
        CHECK(left_ok(cs));
    }
    for (const auto& cs :
         {cs_classical(Alg::H), cs_mutation_h(0.75), cs_rees(1.0), cs_lenz5(0.7), cs_spin(0.5)}) {
        CAPTURE(structure_id(cs));
        CHECK(right_ok(cs));
    }
    // quasifield-only families break the right law; distorted breaks both
    CHECK_FALSE(right_ok(cs_andre_spline()));
    CHECK_FALSE(right_ok(cs_haehl(RadialSpec::quad_mean())));
    CHECK_FALSE(left_ok(cs_distorted_h(RadialSpec::quad_mean())));
    CHECK_FALSE(right_ok(cs_distorted_h(RadialSpec::quad_mean())));
}

TEST_CASE("associativity: near-field passes, spline breaks with a witness") {
    auto hom = cs_andre_hom(0.8);
    Rng rng(31);
    for (int t = 0; t < 300; ++t) {
        Elem s = random_elem(rng, Alg::H), x = random_elem(rng, Alg::H),
             y = random_elem(rng, Alg::H);
        Elem lhs = cs_multiply(hom, cs_multiply(hom, s, x), y);
        Elem rhs = cs_multiply(hom, s, cs_multiply(hom, x, y));
        CHECK(dist(lhs, rhs) < 1e-9 * (1 + norm(lhs)));
    }
    auto spl = cs_andre_spline();
    bool witness = false;
    for (int t = 0; t < 300 && !witness; ++t) {
        Elem s = random_elem(rng, Alg::H), x = random_elem(rng, Alg::H),
             y = random_elem(rng, Alg::H);
        Elem lhs = cs_multiply(spl, cs_multiply(spl, s, x), y);
        Elem rhs = cs_multiply(spl, s, cs_multiply(spl, x, y));
        if (dist(lhs, rhs) > 1e-6 * (1 + norm(lhs))) witness = true;
    }
    CHECK(witness);
}

TEST_CASE("planarity: slope separation is injective on samples") {
    for (const auto& cs : catalog()) {
        Rng rng(41);
        CAPTURE(structure_id(cs));
        for (int t = 0; t < 50; ++t) {
            Elem s = random_elem(rng, cs.carrier), s2 = random_elem(rng, cs.carrier);
            if (dist(s, s2) < 1e-3) continue;
            Elem x = random_elem(rng, cs.carrier), y = random_elem(rng, cs.carrier);
            if (dist(x, y) < 1e-3) continue;
            Elem d1 = cs_multiply(cs, s, x) - cs_multiply(cs, s2, x);
            Elem d2 = cs_multiply(cs, s, y) - cs_multiply(cs, s2, y);
            CHECK(dist(d1, d2) > 1e-10);
        }
    }
}

TEST_CASE("identifier grammar round-trips") {
    for (const char* id :
         {"classical-h", "mutation-h:mu=0.75", "moulton:k=2", "tschet:r=3",
          "distorted-h:rho=power:2", "distorted-o:rho=quadmean", "spin:r=0.5",
          "rees:theta=1.0471975512", "lenz5:alpha=0.5", "andre:phi=hom:1", "andre:phi=spline",
          "haehl-so4:rho=quadmean", "tschet-dual:r=3", "tschet:kink=2"}) {
        auto cs = parse_structure(id);
        auto cs2 = parse_structure(structure_id(cs));
        CHECK(cs2.family == cs.family);
        CHECK(cs2.carrier == cs.carrier);
    }
    CHECK_THROWS_AS(parse_structure("mutation-h:mu=0.4"), parameter_error);
    CHECK_THROWS_AS(parse_structure("rees:theta=3.5"), parameter_error);
    CHECK_THROWS_AS(parse_structure("moulton:k=0.5"), parameter_error);
    CHECK_THROWS_AS(parse_structure("nonsense"), parameter_error);
    CHECK_THROWS_AS(parse_structure("spin:r=-1"), parameter_error);
}

TEST_CASE("anti-automorphisms of the structure products") {
    // conjugation against the mutation, conjugation-by-k against the spin product
    auto mu = cs_mutation_h(0.75);
    auto rep = structure_morphism_verify(mu, Morphism::conjugation(Alg::H), 400, 3);
    CHECK(rep.pass);
    auto sp = cs_spin(0.5);
    rep = structure_morphism_verify(sp, Morphism::twisted_conj(Alg::H, Elem::unit(Alg::H, 3)),
                                    400, 3);
    CHECK(rep.pass);
    // plain conjugation is not one for the spin product
    rep = structure_morphism_verify(sp, Morphism::conjugation(Alg::H), 400, 3);
    CHECK_FALSE(rep.pass);
    // rees conjugation
    auto re = cs_rees(1.3);
    rep = structure_morphism_verify(re, Morphism::rees_conj(), 400, 3);
    CHECK(rep.pass);
    // lambda against the octonion mutation
    auto mo = cs_mutation_o(0.75);
    rep = structure_morphism_verify(mo, Morphism::conj_half_flip(), 400, 3);
    CHECK(rep.pass);
    // conjugation against the distorted product needs the commutative star
    auto dh = cs_distorted_h(RadialSpec::quad_mean());
    rep = structure_morphism_verify(dh, Morphism::conjugation(Alg::H), 400, 3, 1e-10);
    CHECK(rep.pass);
}
