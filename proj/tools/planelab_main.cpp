#include <CLI11.hpp>
#include <iostream>
#include <sstream>

#include "planelab/facts.hpp"
#include "planelab/render.hpp"
#include "planelab/verification.hpp"

using namespace planelab;

namespace {

struct GlobalOpts {
    std::uint64_t seed = 42;
    double tol = 1e-8;
    int samples = 10000;
    std::string out;
    std::string format = "text";
};

void echo_invocation(int argc, char** argv) {
    std::ostringstream os;
    for (int i = 0; i < argc; ++i) os << (i ? " " : "") << argv[i];
    std::cout << "# " << os.str() << "\n";
}

int run_verify(const GlobalOpts& g, const std::string& plane_id_str,
               const std::string& suites) {
    PlaneModel plane = parse_plane(plane_id_str);
    plane.tol = g.tol;
    bool all_pass = true;
    std::vector<std::string> reports;
    std::istringstream ss(suites);
    std::string suite;
    while (std::getline(ss, suite, ',')) {
        if (suite == "axioms") {
            auto rep = check_plane_axioms(plane, g.samples, g.seed, g.tol, 1e-6);
            all_pass = all_pass && rep.pass;
            std::cout << (rep.pass ? "PASS" : "FAIL") << "  plane-axioms  " << rep.plane
                      << "  max-residual " << rep.max_residual << "\n";
            reports.push_back(rep.to_json());
        } else if (suite.rfind("algebra:", 0) == 0) {
            if (plane.kind != PlaneModel::Kind::Ternary)
                throw parameter_error("algebra suites need a ternary plane");
            auto cls = algebra_class_from_string(suite.substr(8));
            auto rep = check_algebra_axioms(plane.cs, cls, g.samples, g.seed);
            all_pass = all_pass && rep.pass;
            std::cout << (rep.pass ? "PASS" : "FAIL") << "  " << rep.suite << "  " << rep.plane
                      << "\n";
            reports.push_back(rep.to_json());
        } else if (suite == "polarity") {
            for (const auto& name : polarity_names(plane)) {
                Polarity pol = make_polarity(plane, name);
                auto rep = check_polarity_laws(pol, g.samples, g.seed);
                all_pass = all_pass && rep.pass;
                std::cout << (rep.pass ? "PASS" : "FAIL") << "  polarity-" << name << "  "
                          << rep.plane << "  max-residual " << rep.max_residual << "\n";
                reports.push_back(rep.to_json());
            }
        } else if (suite == "smoothness") {
            if (plane.kind != PlaneModel::Kind::Ternary)
                throw parameter_error("smoothness probes need a ternary plane");
            auto rep = smoothness_probe(plane.cs, Locus::SlopeSign, 2);
            if (!rep.has_locus)
                std::cout << "INFO  smoothness  " << plane_id(plane) << "  smooth: no locus\n";
            else
                std::cout << "INFO  smoothness  " << plane_id(plane) << "  order-1 jump "
                          << rep.max_jump_order1 << "  order-2 jump " << rep.max_jump_order2
                          << "\n";
        } else {
            throw parameter_error("unknown suite: " + suite);
        }
    }
    if (!g.out.empty()) {
        std::string body = "[";
        for (size_t i = 0; i < reports.size(); ++i) body += (i ? ",\n" : "\n") + reports[i];
        body += "\n]\n";
        atomic_write(g.out, body);
    }
    return all_pass ? 0 : 1;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"planelab: compact projective planes, their polarities and motions"};
    app.require_subcommand(1);
    app.fallthrough(); // global flags may follow the subcommand

    GlobalOpts g;
    app.add_option("--seed", g.seed, "random seed")->capture_default_str();
    app.add_option("--tol", g.tol, "tolerance for closed-form checks")->capture_default_str();
    app.add_option("--samples", g.samples, "sample count")->capture_default_str();
    app.add_option("--out", g.out, "output file");
    app.add_option("--format", g.format, "text|json|csv")->capture_default_str();

    // verify
    auto* verify = app.add_subcommand("verify", "run verification suites");
    std::string v_plane, v_suites = "axioms";
    verify->add_option("--plane", v_plane, "plane identifier")->required();
    verify->add_option("--suites", v_suites, "comma list: axioms,algebra:<class>,polarity,smoothness")
        ->capture_default_str();

    // unital
    auto* unital = app.add_subcommand("unital", "sample a polar unital (or plane incidences)");
    std::string u_plane, u_pol = "pi", u_target = "unital";
    unital->add_option("--plane", u_plane, "plane identifier")->required();
    unital->add_option("--polarity", u_pol, "polarity name")->capture_default_str();
    unital->add_option("--target", u_target, "unital|incidences")->capture_default_str();

    // render
    auto* render = app.add_subcommand("render", "draw a flat plane's lines as SVG");
    std::string r_plane, r_window = "-3,3,-3,3", r_overlay, r_grid = "9,5,5";
    render->add_option("--plane", r_plane, "plane identifier")->required();
    render->add_option("--window", r_window, "xmin,xmax,ymin,ymax")->capture_default_str();
    render->add_option("--grid", r_grid, "slopes,intercepts,verticals")->capture_default_str();
    render->add_option("--overlay-unital", r_overlay, "polarity whose unital to overlay");

    // desargues
    auto* desa = app.add_subcommand("desargues", "closure configuration sampling");
    std::string d_plane, d_kind = "desargues", d_window;
    int d_trials = 100, d_disks = 0;
    desa->add_option("--plane", d_plane, "plane identifier")->required();
    desa->add_option("--kind", d_kind, "desargues|pappus")->capture_default_str();
    desa->add_option("--trials", d_trials, "trials")->capture_default_str();
    desa->add_option("--window", d_window, "restrict draws to xmin,xmax,ymin,ymax");
    desa->add_option("--disks", d_disks, "sample this many random unit disks");

    // motions
    auto* motions = app.add_subcommand("motions", "motion-group membership equivalence");
    std::string m_plane, m_pol;
    int m_draws = 200;
    motions->add_option("--plane", m_plane, "plane identifier")->required();
    motions->add_option("--polarity", m_pol, "polarity name")->required();
    motions->add_option("--draws", m_draws, "parameter draws")->capture_default_str();

    // facts
    auto* facts = app.add_subcommand("facts", "query the classification fact base");
    std::string f_fix, f_group;
    facts->add_option("--fix", f_fix, "fixed configuration");
    facts->add_option("--group", f_group, "group class");

    CLI11_PARSE(app, argc, argv);
    echo_invocation(argc, argv);

    try {
        if (verify->parsed()) return run_verify(g, v_plane, v_suites);

        if (unital->parsed()) {
            PlaneModel plane = parse_plane(u_plane);
            std::string fmt = (g.format == "text") ? "json" : g.format;
            if (u_target == "incidences") {
                std::string path = g.out.empty() ? "incidences.json" : g.out;
                export_plane_incidences(plane, g.samples, g.seed, fmt, path);
                std::cout << "plane " << plane_id(plane) << " flags " << g.samples << " -> "
                          << path << "\n";
                return 0;
            }
            Polarity pol = make_polarity(plane, u_pol);
            std::string path = g.out.empty() ? "unital.json" : g.out;
            export_unital_samples(pol, g.samples, g.seed, fmt, path);
            auto us = unital_probe(pol, std::min(g.samples, 200), g.seed);
            std::cout << "plane " << plane_id(plane) << " polarity " << pol.name
                      << " local-dimension " << us.local_dimension << " points "
                      << us.points.size() << " -> " << path << "\n";
            return 0;
        }

        if (render->parsed()) {
            RenderSpec spec;
            spec.plane = parse_plane(r_plane);
            std::sscanf(r_window.c_str(), "%lf,%lf,%lf,%lf", &spec.xmin, &spec.xmax, &spec.ymin,
                        &spec.ymax);
            std::sscanf(r_grid.c_str(), "%d,%d,%d", &spec.slope_count, &spec.intercept_count,
                        &spec.vertical_count);
            spec.overlay_polarity = r_overlay;
            spec.out_path = g.out.empty() ? "plane.svg" : g.out;
            render_svg(spec);
            std::cout << "wrote " << spec.out_path << "\n";
            return 0;
        }

        if (desa->parsed()) {
            PlaneModel plane = parse_plane(d_plane);
            ConfigKind kind = (d_kind == "pappus") ? ConfigKind::Pappus : ConfigKind::Desargues;
            if (d_disks > 0) {
                int found = 0;
                for (int i = 0; i < d_disks; ++i) {
                    Rng rng(g.seed, 7000 + static_cast<std::uint64_t>(i));
                    Region disk = Region::disk(rng.uniform(-5, 5), rng.uniform(-5, 5), 1.0);
                    auto res = configuration_test(plane, kind, disk, d_trials, g.seed + 13 * i);
                    bool fail_found = res.max_discrepancy > 1e-3;
                    found += fail_found ? 1 : 0;
                    std::cout << "disk " << i << " center (" << disk.cx << "," << disk.cy
                              << ") max-discrepancy " << res.max_discrepancy
                              << (fail_found ? "  [closure fails]" : "") << "\n";
                }
                std::cout << found << "/" << d_disks << " disks exhibit closure failure\n";
                return 0;
            }
            Region region = Region::none();
            if (!d_window.empty()) {
                double a, b, c, d;
                std::sscanf(d_window.c_str(), "%lf,%lf,%lf,%lf", &a, &b, &c, &d);
                region = Region::window(a, b, c, d);
            }
            auto res = configuration_test(plane, kind, region, d_trials, g.seed);
            std::cout << d_kind << " on " << plane_id(plane) << ": trials " << res.trials_done
                      << " max-discrepancy " << res.max_discrepancy << " redraws "
                      << res.degenerate_redraws << "\n";
            if (!res.witness.coords.empty() && res.max_discrepancy > 1e-3) {
                std::cout << "worst configuration (trial " << res.witness.trial << "):\n";
                for (auto& c : res.witness.coords) {
                    std::cout << "  (";
                    for (size_t i = 0; i < c.size(); ++i) std::cout << (i ? "," : "") << c[i];
                    std::cout << ")\n";
                }
            }
            return 0;
        }

        if (motions->parsed()) {
            PlaneModel plane = parse_plane(m_plane);
            Polarity pol = make_polarity(plane, m_pol);
            auto res = motion_equivalence(pol, m_draws, g.seed);
            std::cout << "plane " << plane_id(plane) << " polarity " << pol.name << ": draws "
                      << res.draws << " members " << res.members << " disagreements "
                      << res.disagreements << "\n";
            if (plane.kind == PlaneModel::Kind::Ternary &&
                (plane.cs.family == Family::MutationH || plane.cs.family == Family::MutationO ||
                 plane.cs.family == Family::Classical) &&
                pol.rule == Polarity::Rule::AntiAuto &&
                pol.iota.kind == Morphism::Kind::Conjugation) {
                std::cout << "motion family dimension audit: "
                          << motion_dimension_audit(pol, g.seed) << "\n";
            }
            return res.disagreements == 0 ? 0 : 1;
        }

        if (facts->parsed()) {
            if (f_fix.empty() && f_group.empty()) {
                std::cout << (g.format == "json" ? facts_render_json() : facts_render_text());
                return 0;
            }
            FactRow row = facts_lookup(fixed_config_from_string(f_fix),
                                       group_class_from_string(f_group));
            std::cout << to_string(row.config) << " / " << to_string(row.group) << ": ";
            auto put = [&](const char* k, const std::optional<int>& v) {
                if (v) std::cout << k << "=" << *v << " ";
            };
            put("b", row.bounds.known);
            put("b'", row.bounds.translation);
            put("b''", row.bounds.cartesian);
            put("b*", row.bounds.hughes);
            put("c", row.bounds.classical);
            put("d", row.bounds.upper);
            put("g", row.bounds.group_known);
            for (int fn : row.footnotes) std::cout << "^" << fn << " ";
            std::cout << " [" << row.citation << "]\n";
            for (int fn : row.footnotes) std::cout << "  ^" << fn << ": " << footnote_text(fn) << "\n";
            return 0;
        }
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 0;
}
