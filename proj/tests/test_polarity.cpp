#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "planelab/polarity.hpp"
#include "planelab/verification.hpp"

using namespace planelab;

namespace {
Elem R1(double v) { return Elem(Alg::R, {v}); }
Elem H(std::initializer_list<double> v) { return Elem(Alg::H, v); }

std::vector<std::pair<std::string, std::string>> polarity_catalog() {
    return {
        {"classical-r", "rho-bar"},
        {"classical-r", "elliptic"},
        {"classical-c", "rho-bar"},
        {"classical-h", "rho-bar"},
        {"classical-h", "elliptic"},
        {"classical-o", "rho-bar"},
        {"mutation-h:mu=0.75", "rho-bar"},
        {"mutation-h:mu=0.75", "pi"},
        {"mutation-o:mu=0.75", "rho-bar"},
        {"mutation-o:mu=0.75", "pi"},
        {"rees:theta=1.0471975512", "kappa-hat"},
        {"spin:r=0.5", "kappa-hat"},
        {"spin:r=0.5", "pi"},
        {"distorted-h:rho=quadmean", "rho"},
        {"distorted-h:rho=quadmean", "kappa"},
        {"distorted-o:rho=quadmean", "pi"},
        {"distorted-o:rho=quadmean", "kappa"},
        {"moulton:k=2", "pi"},
        {"shift:f=cosh", "pi"},
    };
}
} // namespace

TEST_CASE("polar golden values") {
    auto mo = make_polarity(parse_plane("moulton:k=2"), "pi");
    Line l = polar(mo, Point::affine(R1(1), R1(1)));
    CHECK(l.kind == Line::Kind::NonVertical);
    CHECK(l.s[0] == 1.0);
    CHECK(l.t[0] == -1.0);

    auto mu = make_polarity(parse_plane("mutation-h:mu=0.75"), "rho-bar");
    Elem a = H({1, 2, 3, 4}), b = H({5, 6, 7, 8});
    Line lm = polar(mu, Point::affine(a, b));
    CHECK(dist(lm.s, conj(a)) == 0.0);
    CHECK(dist(lm.t, -conj(b)) == 0.0);

    auto sh = make_polarity(parse_plane("shift:f=cosh"), "pi");
    Line ls = polar(sh, Point::affine(R1(0), R1(0)));
    CHECK(ls.kind == Line::Kind::NonVertical);
    CHECK(ls.s[0] == 0.0);
    CHECK(ls.t[0] == 0.0);

    // ideal assignments
    CHECK(polar(mu, Point::infinity(Alg::H)).kind == Line::Kind::AtInfinity);
    CHECK(polar(mu, Line::at_infinity(Alg::H)).kind == Point::Kind::Infinity);
    Point sp = polar(mu, Line::vertical(H({0, 1, 0, 0})));
    CHECK(sp.kind == Point::Kind::Slope);
    CHECK(dist(sp.x, H({0, -1, 0, 0})) == 0.0);
}

TEST_CASE("absolute point golden values") {
    auto mu = make_polarity(parse_plane("mutation-h:mu=0.75"), "rho-bar");
    CHECK(is_absolute(mu, Point::affine(Elem::zero(Alg::H), Elem::zero(Alg::H))));
    CHECK(is_absolute(mu, Point::affine(Elem::one(Alg::H), H({0.5, 0, 0, 0}))));
    CHECK_FALSE(is_absolute(mu, Point::affine(Elem::one(Alg::H), H({0, 1, 0, 0}))));
    CHECK(is_absolute(mu, Point::infinity(Alg::H)));

    // spin pi: membership via the expanded right side y - y~ + 2 r y1
    auto sp = make_polarity(parse_plane("spin:r=0.5"), "pi");
    Rng rng(2);
    for (int t = 0; t < 200; ++t) {
        Elem x = random_elem(rng, Alg::H), y = random_elem(rng, Alg::H);
        Elem q = cs_multiply(sp.plane.cs, mul(conj(x), Elem::unit(Alg::H, 3)), x);
        Elem rhs = y - conj(y);
        rhs[0] = 2.0 * 0.5 * y[1];
        bool manual = dist(q, rhs) < 1e-9;
        CHECK(is_absolute(sp, Point::affine(x, y), 1e-9) == manual);
    }
}

TEST_CASE("involution, duality and predicate agreement across the catalog") {
    for (const auto& [pid, pname] : polarity_catalog()) {
        CAPTURE(pid);
        CAPTURE(pname);
        auto pol = make_polarity(parse_plane(pid), pname);
        auto rep = check_polarity_laws(pol, 400, 97);
        CHECK(rep.pass);
        CHECK(rep.max_residual < 1e-10);
    }
}

TEST_CASE("a broken polarity fails the law suite") {
    // an automorphism in place of an anti-automorphism wrecks the duality law
    auto plane = parse_plane("mutation-h:mu=0.75");
    Rng rng(3);
    Polarity bad;
    bad.plane = plane;
    bad.rule = Polarity::Rule::AntiAuto;
    bad.iota = Morphism::inner_auto(Alg::H, random_unit(rng, Alg::H));
    bad.name = "broken";
    auto rep = check_polarity_laws(bad, 300, 11);
    CHECK_FALSE(rep.pass);
    CHECK_FALSE(rep.witnesses.empty());
}

TEST_CASE("unital local dimensions match the expected table") {
    auto expect = std::vector<std::pair<std::pair<std::string, std::string>, int>>{
        {{"mutation-h:mu=0.75", "rho-bar"}, 7}, {{"mutation-h:mu=0.75", "pi"}, 5},
        {{"spin:r=0.5", "kappa-hat"}, 5},       {{"spin:r=0.5", "pi"}, 5},
        {{"distorted-h:rho=quadmean", "rho"}, 7}, {{"distorted-h:rho=quadmean", "kappa"}, 5},
        {{"mutation-o:mu=0.75", "rho-bar"}, 15}, {{"mutation-o:mu=0.75", "pi"}, 11},
        {{"distorted-o:rho=quadmean", "pi"}, 15}, {{"distorted-o:rho=quadmean", "kappa"}, 11},
        {{"moulton:k=2", "pi"}, 1},             {{"shift:f=cosh", "pi"}, 1},
        {{"rees:theta=1.0471975512", "kappa-hat"}, 5},
    };
    for (const auto& [key, dim_expected] : expect) {
        CAPTURE(key.first);
        CAPTURE(key.second);
        auto pol = make_polarity(parse_plane(key.first), key.second);
        auto us = unital_probe(pol, 40, 2024);
        CHECK(us.local_dimension == dim_expected);
        CHECK(us.probes_agreeing >= 9);
        CHECK(static_cast<int>(us.points.size()) == 40);
        for (const auto& p : us.points) CHECK(absolute_residual(pol, p) < 1e-8);
    }
    // the elliptic polarity has an empty unital
    auto ell = make_polarity(parse_plane("classical-r"), "elliptic");
    CHECK(unital_probe(ell, 10, 1).points.empty());
}

TEST_CASE("structural identities behind the unital dimensions") {
    Rng rng(12);
    // spin pi: the real part of x~k o x always equals r times its i-part,
    // which is what frees the y0 coordinate
    auto sp = parse_plane("spin:r=0.7");
    Elem k = Elem::unit(Alg::H, 3);
    for (int t = 0; t < 300; ++t) {
        Elem x = random_elem(rng, Alg::H);
        Elem q = cs_multiply(sp.cs, mul(conj(x), k), x);
        CHECK(std::fabs(q[0] - 0.7 * q[1]) < 1e-10 * (1 + norm(q)));
    }
    // double-flag kappa: k x~ k o x has no k-component, freeing y3
    auto dh = parse_plane("distorted-h:rho=quadmean");
    for (int t = 0; t < 300; ++t) {
        Elem x = random_elem(rng, Alg::H);
        if (norm(x) < 1e-6) continue;
        Elem q = cs_multiply(dh.cs, mul(mul(k, conj(x)), k), x);
        CHECK(std::fabs(q[3]) < 1e-10 * (1 + norm(q)));
    }
    // octonion mutation pi: a^lambda o a has no pure quaternion part, so the
    // pure part of b' stays free and the unital is eleven-dimensional
    auto mo = parse_plane("mutation-o:mu=0.75");
    Morphism lambda = Morphism::conj_half_flip();
    for (int t = 0; t < 300; ++t) {
        Elem a = random_elem(rng, Alg::O);
        Elem q = cs_multiply(mo.cs, morphism_apply(lambda, a), a);
        for (int i = 1; i < 4; ++i) CHECK(std::fabs(q[i]) < 1e-10 * (1 + norm(q)));
    }
    // rho-bar on either mutation: a~ o a is the squared norm on the nose
    for (const char* pid : {"mutation-h:mu=0.75", "mutation-o:mu=0.75"}) {
        auto plane = parse_plane(pid);
        for (int t = 0; t < 200; ++t) {
            Elem a = random_elem(rng, plane.carrier());
            Elem q = cs_multiply(plane.cs, conj(a), a);
            CHECK(std::fabs(q[0] - norm2(a)) < 1e-10 * (1 + norm2(a)));
            CHECK(norm(pure(q)) < 1e-10 * (1 + norm2(a)));
        }
    }
}

TEST_CASE("rees unital matches its explicit parametrization") {
    const double theta = 1.0471975511965976;
    auto pol = make_polarity(parse_plane("rees:theta=1.0471975511965976"), "kappa-hat");
    auto us = unital_probe(pol, 80, 77);
    REQUIRE(us.points.size() == 80);
    CHECK(us.local_dimension == 5);
    for (const auto& p : us.points) {
        // carrier packs (a, b) in C^2 as (a0, a1, b0, b1)
        double a0 = p.x[0], a1 = p.x[1], b0 = p.x[2], b1 = p.x[3];
        // y1 = (a^2 + e^{i theta} b^2) / 2
        double a2r = a0 * a0 - a1 * a1, a2i = 2 * a0 * a1;
        double b2r = b0 * b0 - b1 * b1, b2i = 2 * b0 * b1;
        double er = std::cos(theta), ei = std::sin(theta);
        double y1r = 0.5 * (a2r + er * b2r - ei * b2i);
        double y1i = 0.5 * (a2i + er * b2i + ei * b2r);
        CHECK(std::fabs(p.y[0] - y1r) < 1e-9 * (1 + std::fabs(y1r)));
        CHECK(std::fabs(p.y[1] - y1i) < 1e-9 * (1 + std::fabs(y1i)));
        // re(y2) = re(a~ b); im(y2) is the free coordinate
        double reab = a0 * b0 + a1 * b1;
        CHECK(std::fabs(p.y[2] - reab) < 1e-9 * (1 + std::fabs(reab)));
    }
}

TEST_CASE("shift unital satisfies 2y = f(2x)") {
    auto pol = make_polarity(parse_plane("shift:f=cosh"), "pi");
    auto us = unital_probe(pol, 50, 5);
    CHECK(us.local_dimension == 1);
    for (const auto& p : us.points) {
        double lhs = 2.0 * p.y[0];
        double rhs = std::cosh(2.0 * p.x[0]) - 1.0;
        CHECK(std::fabs(lhs - rhs) < 1e-9 * (1.0 + std::fabs(rhs)));
    }
}

TEST_CASE("classify_line: secants, tangents, exteriors") {
    auto mu = make_polarity(parse_plane("mutation-h:mu=0.75"), "rho-bar");
    // the vertical through 0 is a secant with local dimension 3
    auto cls = classify_line(mu, Line::vertical(Elem::zero(Alg::H)), 16, 3);
    CHECK(cls.cls == LineClass::Secant);
    CHECK(cls.local_dimension == 3);
    for (const auto& p : cls.samples)
        if (p.kind == Point::Kind::Affine) CHECK(std::fabs(p.y[0]) < 1e-9);

    // moulton tangent at (1, 1/2): the line [1, -1/2]
    auto mo = make_polarity(parse_plane("moulton:k=2"), "pi");
    auto cls2 = classify_line(mo, Line::non_vertical(R1(1), R1(-0.5)), 16, 3);
    CHECK(cls2.cls == LineClass::Tangent);
    CHECK(cls2.tangent_point.kind == Point::Kind::Affine);
    CHECK(cls2.tangent_point.x[0] == doctest::Approx(1.0));
    CHECK(cls2.tangent_point.y[0] == doctest::Approx(0.5));

    // the independent discriminant route: x^2 = 2(x - 1/2) has a double root,
    // and the glued branch 2 x^2 = 2(x - 1/2) has no real root
    double disc_straight = 4.0 - 4.0 * 1.0; // (x-1)^2 = 0
    double disc_glued = 4.0 - 4.0 * 2.0;    // 2x^2 - 2x + 1 = 0
    CHECK(disc_straight == 0.0);
    CHECK(disc_glued < 0.0);

    // elliptic: every line is exterior
    auto ell = make_polarity(parse_plane("classical-r"), "elliptic");
    auto cls3 = classify_line(ell, Line::non_vertical(R1(1), R1(1)), 8, 3);
    CHECK(cls3.cls == LineClass::Exterior);

    // a generic secant of the moulton unital
    auto cls4 = classify_line(mo, Line::non_vertical(R1(0), R1(2)), 24, 3);
    CHECK(cls4.cls == LineClass::Secant);
    CHECK(cls4.samples.size() >= 2);

    // the line at infinity is the tangent at the vertical direction point
    auto cls5 = classify_line(mu, Line::at_infinity(Alg::H), 8, 3);
    CHECK(cls5.cls == LineClass::Tangent);
    CHECK(cls5.tangent_point.kind == Point::Kind::Infinity);
}

TEST_CASE("random secants of the mutation unitals have the stated fibre dimension") {
    for (auto [pid, dim_expected] :
         std::vector<std::pair<std::string, int>>{{"mutation-h:mu=0.75", 3},
                                                  {"mutation-o:mu=0.75", 7}}) {
        CAPTURE(pid);
        auto pol = make_polarity(parse_plane(pid), "rho-bar");
        auto us = unital_probe(pol, 60, 31);
        REQUIRE(us.points.size() >= 60);
        int checked = 0;
        for (int t = 0; t + 1 < static_cast<int>(us.points.size()) && checked < 25; t += 2) {
            Line sec = join(pol.plane, us.points[t], us.points[t + 1]);
            auto cls = classify_line(pol, sec, 10, 100 + static_cast<std::uint64_t>(t));
            CHECK(cls.cls == LineClass::Secant);
            CHECK(cls.local_dimension == dim_expected);
            ++checked;
        }
        CHECK(checked == 25);
    }
}
