#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "oracle_rational.hpp"
#include "planelab/verification.hpp"

using namespace planelab;

TEST_CASE("plane axiom suite passes on representative planes") {
    for (const char* id : {"classical-h", "mutation-o:mu=0.75", "spin:r=0.5", "moulton:k=2",
                           "tschet:r=3", "tschet-dual:r=3", "shift:f=cosh",
                           "distorted-h:rho=quadmean"}) {
        CAPTURE(id);
        auto rep = check_plane_axioms(parse_plane(id), 800, 2029);
        CHECK(rep.pass);
        CHECK(rep.witnesses.empty());
    }
}

TEST_CASE("corrupted branch boundary wrecks the axioms with a witness") {
    auto plane = parse_plane("tschet:r=3");
    plane.cs.branch_shift = 0.1; // straight lines only above slope 0.1
    auto rep = check_plane_axioms(plane, 3000, 9);
    CHECK_FALSE(rep.pass);
    CHECK_FALSE(rep.witnesses.empty());
}

TEST_CASE("algebra class matrix") {
    // semifields
    for (const char* id : {"classical-h", "mutation-h:mu=0.75", "mutation-o:mu=0.75",
                           "rees:theta=1.0471975512", "lenz5:alpha=0.7853981634", "spin:r=0.5"}) {
        CAPTURE(id);
        CHECK(check_algebra_axioms(parse_structure(id), AlgebraClass::Semifield, 400, 3).pass);
    }
    // quasifield-only families
    for (const char* id : {"andre:phi=spline", "haehl-so4:rho=quadmean"}) {
        CAPTURE(id);
        CHECK(check_algebra_axioms(parse_structure(id), AlgebraClass::Quasifield, 400, 3).pass);
        auto rep = check_algebra_axioms(parse_structure(id), AlgebraClass::Semifield, 400, 3);
        CHECK_FALSE(rep.pass);
        CHECK_FALSE(rep.subtests["right-distributive"]);
    }
    // the distorted families are Cartesian fields without either distributive law
    {
        auto cs = parse_structure("distorted-h:rho=quadmean");
        CHECK(check_algebra_axioms(cs, AlgebraClass::Cartesian, 400, 3).pass);
        auto rep = check_algebra_axioms(cs, AlgebraClass::Quasifield, 400, 3);
        CHECK_FALSE(rep.pass);
        CHECK_FALSE(rep.subtests["left-distributive"]);
    }
    // near-field: homomorphic direction map
    CHECK(check_algebra_axioms(parse_structure("andre:phi=hom:1"), AlgebraClass::Nearfield, 400,
                               3)
              .pass);
    {
        auto rep =
            check_algebra_axioms(parse_structure("andre:phi=spline"), AlgebraClass::Nearfield,
                                 400, 3);
        CHECK_FALSE(rep.pass);
        CHECK_FALSE(rep.subtests["associativity"]);
        CHECK_FALSE(rep.witnesses.empty());
    }
    // skew-field: classical quaternions pass, the mutation fails with a witness
    CHECK(check_algebra_axioms(parse_structure("classical-h"), AlgebraClass::Skewfield, 400, 3)
              .pass);
    {
        auto rep = check_algebra_axioms(parse_structure("mutation-h:mu=0.75"),
                                        AlgebraClass::Skewfield, 400, 3);
        CHECK_FALSE(rep.pass);
        CHECK_FALSE(rep.subtests["associativity"]);
        CHECK_FALSE(rep.witnesses.empty());
    }
    // tschet is not even Cartesian: its ternary map is not product-plus-translate
    {
        auto rep = check_algebra_axioms(parse_structure("tschet:r=3"), AlgebraClass::Cartesian,
                                        400, 3);
        CHECK_FALSE(rep.pass);
        CHECK_FALSE(rep.subtests["cartesian-form"]);
    }
}

TEST_CASE("desargues closes exactly where it should") {
    // the three skew-field planes are Desarguesian
    for (const char* id : {"classical-r", "classical-c", "classical-h"}) {
        CAPTURE(std::string(id));
        auto res = configuration_test(parse_plane(id), ConfigKind::Desargues, Region::none(),
                                      60, 2031);
        CHECK(res.trials_done == 60);
        CHECK(res.max_discrepancy < 1e-9);
    }
    // the octonion plane is Moufang but not Desarguesian: witnesses exist
    {
        auto res = configuration_test(parse_plane("classical-o"), ConfigKind::Desargues,
                                      Region::none(), 60, 2031);
        CHECK(res.max_discrepancy > 1e-3);
    }
    // pappus needs commutativity: holds over R and C, fails over H
    for (const char* id : {"classical-r", "classical-c"}) {
        CAPTURE(std::string(id));
        auto res =
            configuration_test(parse_plane(id), ConfigKind::Pappus, Region::none(), 40, 2033);
        CHECK(res.max_discrepancy < 1e-9);
    }
    {
        auto res = configuration_test(parse_plane("classical-h"), ConfigKind::Pappus,
                                      Region::none(), 40, 2033);
        CHECK(res.max_discrepancy > 1e-3);
    }
}

TEST_CASE("moulton and tschet produce desargues witnesses") {
    auto mo = parse_plane("moulton:k=2");
    auto res = configuration_test(mo, ConfigKind::Desargues,
                                  Region::window(-2.0, 2.0, -2.0, 2.0), 100, 2035);
    CHECK(res.max_discrepancy > 1e-3);
    CHECK_FALSE(res.witness.coords.empty());

    // replaying the witness trial reproduces its discrepancy
    double again = configuration_replay(mo, ConfigKind::Desargues,
                                        Region::window(-2.0, 2.0, -2.0, 2.0), 2035,
                                        res.witness.trial);
    CHECK(std::fabs(again - res.witness.discrepancy) < 1e-12);

    auto ts = parse_plane("tschet:r=2");
    auto res2 = configuration_test(ts, ConfigKind::Desargues,
                                   Region::window(-2.0, 2.0, -2.0, 2.0), 100, 2037);
    CHECK(res2.max_discrepancy > 1e-3);

    // pappus also fails there
    auto res3 = configuration_test(ts, ConfigKind::Pappus,
                                   Region::window(-2.0, 2.0, -2.0, 2.0), 80, 2039);
    CHECK(res3.max_discrepancy > 1e-3);
}

TEST_CASE("the moulton witness survives exact rational recomputation") {
    using oracle::Rat;
    auto mo = parse_plane("moulton:k=2");
    Region win = Region::window(-2.0, 2.0, -2.0, 2.0);
    auto res = configuration_test(mo, ConfigKind::Desargues, win, 120, 2041);
    REQUIRE(res.max_discrepancy > 1e-3);
    REQUIRE(res.witness.coords.size() == 10);

    // snap the seven independent points, then rebuild the configuration in Q;
    // the perspective triangle points are re-projected onto the exact rays
    Rat k(2);
    auto P = [&](int i) {
        return oracle::RatPoint{oracle::snap(res.witness.coords[static_cast<size_t>(i)][0]),
                                oracle::snap(res.witness.coords[static_cast<size_t>(i)][1])};
    };
    oracle::RatPoint o = P(0), a = P(1), b = P(2), c = P(3);
    oracle::RatLine oa = oracle::moulton_join(o, a, k);
    oracle::RatLine ob = oracle::moulton_join(o, b, k);
    oracle::RatLine oc = oracle::moulton_join(o, c, k);
    auto on_line = [&](const oracle::RatLine& l, double xval) {
        Rat x = oracle::snap(xval);
        return oracle::RatPoint{x, oracle::moulton_mul(l.s, x, k) + l.t};
    };
    oracle::RatPoint a2 = on_line(oa, res.witness.coords[4][0]);
    oracle::RatPoint b2 = on_line(ob, res.witness.coords[5][0]);
    oracle::RatPoint c2 = on_line(oc, res.witness.coords[6][0]);

    auto meetq = [&](const oracle::RatPoint& p1, const oracle::RatPoint& p2,
                     const oracle::RatPoint& q1, const oracle::RatPoint& q2) {
        return oracle::moulton_meet(oracle::moulton_join(p1, p2, k),
                                    oracle::moulton_join(q1, q2, k), k);
    };
    oracle::RatPoint pp = meetq(a, b, a2, b2);
    oracle::RatPoint qq = meetq(b, c, b2, c2);
    oracle::RatPoint rr = meetq(a, c, a2, c2);
    oracle::RatLine pq = oracle::moulton_join(pp, qq, k);
    REQUIRE_FALSE(pq.vertical);
    Rat defect = (rr.y - (oracle::moulton_mul(pq.s, rr.x, k) + pq.t)).abs();
    // euclideanized lower bound |defect| / (1 + |slope|) stays above 1e-3
    Rat bound = defect / (Rat(1) + pq.s.abs());
    CHECK(cmp(bound, Rat(1, 1000)) > 0);
    // and the exact value agrees with the floating recomputation to snapping order
    CHECK(oracle::to_double(defect) > 1e-3);
}

TEST_CASE("tschet closure fails inside random unit disks") {
    auto ts = parse_plane("tschet:r=2");
    int found = 0;
    const int disks = 6;
    for (int i = 0; i < disks; ++i) {
        Rng rng(5000, static_cast<std::uint64_t>(i));
        Region disk = Region::disk(rng.uniform(-5.0, 5.0), rng.uniform(-5.0, 5.0), 1.0);
        auto res = configuration_test(ts, ConfigKind::Desargues, disk, 60,
                                      6000 + static_cast<std::uint64_t>(i));
        if (res.max_discrepancy > 1e-3) ++found;
    }
    CHECK(found == disks);
}

TEST_CASE("smoothness probes") {
    // moulton: at s = 0 the one-sided slopes differ by |x| (k - 1); at x = -1, jump 1
    auto mo = parse_structure("moulton:k=2");
    auto rep = smoothness_probe(mo, Locus::SlopeSign, 1);
    CHECK(rep.has_locus);
    for (auto& pr : rep.probes) {
        double x = pr[0];
        double analytic_left = 2.0 * x;  // d tau / d s from below is k x for x < 0
        double analytic_right = x;
        if (x < 0) {
            CHECK(std::fabs(pr[1] - analytic_left) < 1e-3 * (1 + std::fabs(x)));
            CHECK(std::fabs(pr[2] - analytic_right) < 1e-3 * (1 + std::fabs(x)));
            // the jump equals |x| (k - 1), which is 1 exactly at x = -1
            CHECK(std::fabs((pr[2] - pr[1]) - std::fabs(x)) < 1e-2 * (1 + std::fabs(x)));
        }
    }
    CHECK(rep.max_jump_order1 > 1.0);

    // tschet r=3: order-1 jump across s = 0 for negative probes
    auto ts = parse_structure("tschet:r=3");
    auto rep2 = smoothness_probe(ts, Locus::SlopeSign, 2);
    CHECK(rep2.has_locus);
    CHECK(rep2.max_jump_order1 > 0.5);

    // classical: no locus at all
    auto cl = smoothness_probe(parse_structure("classical-r"), Locus::SlopeSign, 1);
    CHECK_FALSE(cl.has_locus);
    CHECK(cl.locus == "none");

    // moulton coordinate-sign locus: slopes jump by |s|(k-1) across x = 0
    auto rep3 = smoothness_probe(mo, Locus::CoordSign, 1);
    CHECK(rep3.max_jump_order1 > 1.0);
}

TEST_CASE("the dual-exponent coordinate isomorphism preserves incidence") {
    for (double r : {2.0, 3.0, 0.5}) {
        CAPTURE(r);
        auto res = dual_exponent_isomorphism(r, 2000, 2043);
        CHECK(res.checked == 2000);
        CHECK(res.max_residual < 1e-8);
    }
}

TEST_CASE("motion equivalence fails on a tampered map") {
    auto mu = parse_plane("mutation-h:mu=0.75");
    auto rho = make_polarity(mu, "rho-bar");
    Rng rng(7);
    Elem m = random_elem(rng, Alg::H);
    Elem n = random_elem(rng, Alg::H);
    n[0] = 0.5 * norm2(m);
    Collineation f = mutation_general(mu, Morphism::identity(Alg::H), 1, 1, conj(m), m, n);
    auto mt = motion_test(rho, f, 100, 11);
    CHECK(mt.condition_membership);
    CHECK(mt.commutes);
    // breaking the line action leaves membership true but kills commutation
    f.line_q_override = conj(m) + Elem::one(Alg::H);
    mt = motion_test(rho, f, 100, 11);
    CHECK(mt.condition_membership);
    CHECK_FALSE(mt.commutes);
}

TEST_CASE("suites are deterministic under (plane, seed)") {
    auto a = check_plane_axioms(parse_plane("distorted-h:rho=quadmean"), 300, 77);
    auto b = check_plane_axioms(parse_plane("distorted-h:rho=quadmean"), 300, 77);
    CHECK(a.max_residual == b.max_residual);
    CHECK(a.passed == b.passed);
    auto c1 = configuration_test(parse_plane("moulton:k=2"), ConfigKind::Desargues,
                                 Region::window(-2, 2, -2, 2), 30, 5);
    auto c2 = configuration_test(parse_plane("moulton:k=2"), ConfigKind::Desargues,
                                 Region::window(-2, 2, -2, 2), 30, 5);
    CHECK(c1.max_discrepancy == c2.max_discrepancy);
    CHECK(c1.witness.trial == c2.witness.trial);
}

TEST_CASE("reports serialize to json") {
    auto rep = check_plane_axioms(parse_plane("classical-r"), 50, 1);
    auto j = rep.to_json();
    CHECK(j.find("\"suite\"") != std::string::npos);
    CHECK(j.find("plane-axioms") != std::string::npos);
}
