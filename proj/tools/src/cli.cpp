#include "cli.hpp"

#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <iostream>
#include <numbers>

#include "CLI11.hpp"
#include "criteria.hpp"
#include "config.hpp"
#include "homoglab/constraints.hpp"
#include "homoglab/divfree.hpp"
#include "homoglab/errors.hpp"
#include "homoglab/example51.hpp"
#include "homoglab/norms.hpp"
#include "homoglab/pgf.hpp"
#include "homoglab/unfolding.hpp"
#include "report.hpp"

namespace homoglab::cli {

namespace {

namespace fs = std::filesystem;
constexpr double pi = std::numbers::pi;

struct Options {
    std::uint64_t seed = 1;
    int threads = 0;
    std::string in, out, report, v, coeff, config, u = "builtin:linear";
    double eps = 0.0;
    double xi1 = 1.0, xi2 = 0.0, delta = 0.01, nl_eps = 0.2, ppu = 64.0;
    bool crosscheck = false;
    int grid = 32, ygrid = 32, n = 1;
    double r = 10.0;
    std::vector<int> ks{4, 8, 16};
    std::vector<int> only;
};

// Splits v = u + w with u = mean_y v.
std::pair<GridField, TwoScaleField> split_mean(const TwoScaleField& v)
{
    GridField u(v.xgrid, v.components);
    TwoScaleField w = v;
    const std::size_t ny = v.ygrid.count();
    for (std::size_t x = 0; x < v.xgrid.count(); ++x) {
        for (std::size_t y = 0; y < ny; ++y)
            for (int c = 0; c < v.components; ++c)
                u.at(x, c) += v.at(x, y, c) / static_cast<double>(ny);
        for (std::size_t y = 0; y < ny; ++y)
            for (int c = 0; c < v.components; ++c)
                w.at(x, y, c) -= u.at(x, c);
    }
    return {u, w};
}

ojson grid_json(const Grid& g)
{
    ojson j = {{"periodic", g.is_periodic()}, {"sizes", g.sizes()}};
    if (!g.is_periodic()) {
        j["lower"] = g.lower();
        j["upper"] = g.upper();
    }
    return j;
}

int project_divfree(const Options& o)
{
    const GridField r = read_field(o.in);
    if (!r.grid.is_periodic())
        throw InvalidArgument("project-divfree needs a field on the periodic cell");
    const GridField p = divfree_project(r);
    write_field(o.out, p);
    if (!o.report.empty()) {
        ojson rep = make_report("project-divfree", o.seed);
        rep["grid"] = grid_json(r.grid);
        rep["norms"] = {{"input_l2", lp_norm(r, 2.0)}, {"output_l2", lp_norm(p, 2.0)}};
        const GridField pp = divfree_project(p);
        double idem = 0.0;
        for (std::size_t i = 0; i < p.data.size(); ++i)
            idem = std::max(idem, std::abs(pp.data[i] - p.data[i]));
        rep["residuals"] = {{"input_divergence", spectral_divergence(r)},
                            {"output_divergence", spectral_divergence(p)},
                            {"idempotence", idem}};
        finish_report(rep);
        write_report(rep, o.report);
    }
    return ok;
}

int coupled(const Options& o)
{
    const TwoScaleField v = read_two_scale(o.v);
    const CoefficientSet a = load_coefficients(o.coeff);
    const TwoScaleField p = coupled_project(v, a);
    write_two_scale(o.out, p);
    if (!o.report.empty()) {
        ojson rep = make_report("coupled-project", o.seed);
        rep["x_grid"] = grid_json(v.xgrid);
        rep["y_grid"] = grid_json(v.ygrid);
        const auto [u0, w0] = split_mean(v);
        const auto [u1, w1] = split_mean(p);
        rep["residuals"] = {{"input", to_json(constraint_residuals(u0, w0, a))},
                            {"output", to_json(constraint_residuals(u1, w1, a))}};
        rep["norms"] = {{"input_l2", l2_norm(v)}, {"output_l2", l2_norm(p)}};
        finish_report(rep);
        write_report(rep, o.report);
    }
    return ok;
}

int unfold_cmd(const Options& o)
{
    const GridField u = read_field(o.in);
    const TwoScaleField t = unfold(u, {o.eps});
    write_two_scale(o.out, t);
    if (!o.report.empty()) {
        ojson rep = make_report("unfold", o.seed);
        rep["epsilon"] = o.eps;
        rep["y_grid"] = grid_json(t.ygrid);
        const double nu = lp_norm(u, 2.0), nt = l2_norm(t);
        const std::vector<double> one{o.eps};
        rep["norms"] = {{"u_l2", nu}, {"unfolded_l2", nt}, {"isometry_defect", std::abs(nu - nt)},
                        {"unfold_defect", unfold_defect(u, one)[0]}};
        finish_report(rep);
        write_report(rep, o.report);
    }
    return ok;
}

int twoscale_study(const Options& o)
{
    const fs::path cfg_path(o.config);
    const json cfg = load_json(cfg_path);
    const Node root(cfg, "");
    root.only({"grid", "schedule", "unfold_schedule", "psi", "seed"});
    const int m = root.integer("grid", 512);
    const std::vector<double> schedule =
        root.has("schedule") ? root.numbers("schedule") : std::vector<double>{0.125, 0.0625, 0.03125};
    const std::vector<double> unfold_schedule =
        root.has("unfold_schedule") ? root.numbers("unfold_schedule") : std::vector<double>{0.25, 0.125, 0.0625};
    const std::string psi_name = root.string("psi", "exp");
    const std::uint64_t seed = static_cast<std::uint64_t>(root.integer("seed", static_cast<int>(o.seed)));
    if (m < 2)
        root.fail("grid", "must be at least 2");
    for (double e : schedule)
        if (!(e > 0.0))
            root.fail("schedule", "entries must be positive");

    std::function<double(std::span<const double>)> psi;
    double psi_sq = 0.0;  // int psi^2 over the unit square
    if (psi_name == "exp") {
        psi = [](std::span<const double> x) { return std::exp(x[0] + x[1]); };
        const double e2 = (std::exp(2.0) - 1.0) / 2.0;
        psi_sq = e2 * e2;
    } else if (psi_name == "sin") {
        psi = [](std::span<const double> x) { return std::sin(pi * x[0]) * std::sin(pi * x[1]); };
        psi_sq = 0.25;
    } else {
        root.fail("psi", "unknown test function '" + psi_name + "' (exp, sin)");
    }
    auto b = [](std::span<const double> y) { return std::cos(2 * pi * y[0]) + 0.5 * std::sin(2 * pi * y[1]); };
    const double limit = psi_sq * 0.625;
    const Grid g = Grid::unit_box(2, m);
    TwoScaleTest phi = [&](std::span<const double> x, std::span<const double> y, std::span<double> out) {
        out[0] = psi(x) * b(y);
    };

    ojson rep = make_report("twoscale-study", seed);
    rep["grid"] = m;
    rep["test_function"] = "psi(x) b(y), b = cos(2 pi y1) + sin(2 pi y2) / 2, psi = " + psi_name;
    rep["limit"] = limit;
    ojson pairings = ojson::array();
    std::vector<double> x(2), y(2);
    double prev_err = 0.0, prev_eps = 0.0;
    for (double eps : schedule) {
        GridField u(g, 1);
        for (std::size_t i = 0; i < g.count(); ++i) {
            g.coordinates(i, x);
            for (int a = 0; a < 2; ++a)
                y[a] = x[a] / eps;
            u.at(i, 0) = psi(x) * b(y);
        }
        const double value = two_scale_pairing(u, phi, eps).value;
        const double err = std::abs(value - limit);
        ojson e = {{"epsilon", eps}, {"pairing", value}, {"error", err}};
        if (prev_eps > 0.0)
            e["order"] = std::log(prev_err / err) / std::log(prev_eps / eps);
        pairings.push_back(e);
        prev_err = err;
        prev_eps = eps;
    }
    rep["pairings"] = pairings;

    GridField s(g, 1);
    for (std::size_t i = 0; i < g.count(); ++i) {
        g.coordinates(i, x);
        s.at(i, 0) = std::sin(2 * pi * x[0]);
    }
    const auto defects = unfold_defect(s, unfold_schedule);
    ojson unf = ojson::array();
    for (std::size_t i = 0; i < defects.size(); ++i) {
        ojson e = {{"epsilon", unfold_schedule[i]}, {"defect", defects[i]}};
        if (i > 0)
            e["ratio"] = defects[i] / defects[i - 1];
        unf.push_back(e);
    }
    rep["unfold_defects"] = unf;
    finish_report(rep);
    write_report(rep, o.out);
    return ok;
}

int relax_energy(const Options& o)
{
    const fs::path cfg_path(o.config);
    const json cfg = load_json(cfg_path);
    const Node root(cfg, "");
    root.only({"x_grid", "u", "coefficients", "integrand", "relaxation", "seed"});
    const std::uint64_t seed = root.has("seed") ? static_cast<std::uint64_t>(root.integer("seed")) : o.seed;
    const Grid xg = root.has("x_grid") ? parse_box(cfg.at("x_grid"), "/x_grid") : Grid::unit_box(2, 32);
    const GridField u = make_field(root.string("u", "builtin:linear"), xg, seed, cfg_path.parent_path());
    const CoefficientSet a = parse_coefficients(root.child("coefficients"), cfg_path.parent_path());
    const Integrand f = root.has("integrand") ? parse_integrand(root.child("integrand")) : quadratic();
    const RelaxationSpec spec = root.has("relaxation") ? parse_relaxation(root.child("relaxation")) : RelaxationSpec{};

    const bool sweep = !spec.r_sweep.empty() || !spec.n_sweep.empty();
    EnergyReport e;
    bool converged = true;
    try {
        e = sweep ? homogenized_estimate(u, a, f, spec) : relaxed_energy(u, a, f, spec);
    } catch (const EnergyNonConvergence& nc) {
        e = nc.report();
        converged = false;
    }
    ojson rep = make_report("relax-energy", seed);
    ojson body = to_json(e);
    for (auto it = body.begin(); it != body.end(); ++it)
        rep[it.key()] = it.value();
    rep["integrand"] = f.name;
    rep["provenance"] = {{"x_grid", grid_json(u.grid)},
                         {"y_grid", grid_json(a.ygrid)},
                         {"tol_energy", spec.tol_energy},
                         {"tol_feas", spec.tol_feas},
                         {"r", spec.r},
                         {"n", spec.n}};
    if (!converged)
        rep["error"] = {{"kind", "NonConvergence"}, {"message", "projected gradient hit its iteration cap"}};
    finish_report(rep);
    write_report(rep, o.out);
    return converged ? ok : numerical_error;
}

int example51(const Options& o)
{
    const Grid xg = Grid::unit_box(2, o.grid);
    const GridField u = make_field(o.u, xg, o.seed);
    const Grid yg = Grid::periodic({o.ygrid, o.ygrid});
    RelaxationSpec spec;
    spec.r = o.r;
    spec.n = o.n;
    const double closed = example_energy_closed_form(u);
    const EnergyReport e = relaxed_energy(u, benchmark_coefficients(yg), quadratic(), spec);
    const GridField phi = example_phi(u);
    double phi_sq = 0.0, u_sq = 0.0;
    for (std::size_t i = 0; i < u.nodes(); ++i) {
        phi_sq += phi.at(i, 0) * phi.at(i, 0);
        u_sq += u.at(i, 0) * u.at(i, 0) + u.at(i, 1) * u.at(i, 1);
    }
    ojson rep = make_report("example51", o.seed);
    rep["u"] = o.u;
    rep["closed_form"] = {{"value", closed}, {"int_u_sq", u_sq * xg.cell_volume()}, {"int_phi_sq", phi_sq * xg.cell_volume()}};
    rep["relaxed_energy"] = to_json(e);
    rep["relative_difference"] = std::abs(e.value - closed) / std::max(std::abs(closed), 1e-300);
    rep["provenance"] = {{"x_grid", grid_json(xg)}, {"y_grid", grid_json(yg)}, {"r", o.r}, {"n", o.n},
                         {"tol_feas", spec.tol_feas}};
    finish_report(rep);
    write_report(rep, o.out);
    return ok;
}

int nonlocality(const Options& o)
{
    std::optional<NonlocalityCrosscheck> cc;
    if (o.crosscheck) {
        cc = NonlocalityCrosscheck{};
        cc->points_per_unit = o.ppu;
    }
    const NonlocalityReport nl = nonlocality_report(o.xi1, o.xi2, o.nl_eps, o.delta, cc);
    ojson rep = make_report("nonlocality", o.seed);
    rep["parameters"] = {{"xi1", nl.xi1}, {"xi2", nl.xi2}, {"eps", nl.eps}, {"delta", nl.delta}};
    rep["energies"] = {{"omega_minus_omega1", nl.outer}, {"omega", nl.full}, {"omega2", nl.inner}};
    rep["subadditivity"] = {{"lhs", nl.lhs}, {"rhs", nl.rhs}};
    rep["violation"] = nl.violated;
    if (nl.numeric) {
        const auto& n = *nl.numeric;
        rep["numeric_crosscheck"] = {{"omega_minus_omega1", n.outer}, {"omega", n.full}, {"omega2", n.inner},
                                     {"rel_error_omega_minus_omega1", n.outer_rel_error},
                                     {"rel_error_omega", n.full_rel_error}, {"rel_error_omega2", n.inner_rel_error},
                                     {"cells_omega", n.full_cells}, {"cells_omega2", n.inner_cells}};
    }
    finish_report(rep);
    write_report(rep, o.out);
    return ok;
}

int mollify_cmd(const Options& o)
{
    const CoefficientSet a = load_coefficients(o.coeff);
    ojson rep = make_report("mollify", o.seed);
    rep["y_grid"] = grid_json(a.ygrid);
    const double amax = *std::max_element(a.samples.begin(), a.samples.end());
    const double amin = *std::min_element(a.samples.begin(), a.samples.end());
    ojson rows = ojson::array();
    double prev = INFINITY;
    bool decreasing = true;
    double overshoot = 0.0;
    for (int k : o.ks) {
        const CoefficientSet ak = mollify(a, k);
        const double dist = coefficient_distance(ak, a);
        const double hi = *std::max_element(ak.samples.begin(), ak.samples.end());
        const double lo = *std::min_element(ak.samples.begin(), ak.samples.end());
        overshoot = std::max({overshoot, hi - amax, amin - lo});
        decreasing = decreasing && dist < prev;
        prev = dist;
        rows.push_back({{"k", k}, {"distance_l2", dist}, {"max", hi}, {"min", lo}});
    }
    rep["mollified"] = rows;
    rep["strictly_decreasing"] = decreasing;
    rep["bound_overshoot"] = overshoot;
    finish_report(rep);
    write_report(rep, o.out);
    return ok;
}

int accept(const Options& o)
{
    const auto results = acceptance::run(o.only, o.seed);
    bool all = true;
    ojson rows = ojson::array();
    for (const auto& r : results) {
        std::cout << acceptance::format(r) << std::endl;
        all = all && r.passed;
        rows.push_back({{"id", r.id}, {"name", r.name}, {"passed", r.passed}, {"detail", r.detail}});
    }
    if (!o.out.empty()) {
        ojson rep = make_report("accept", o.seed);
        rep["criteria"] = rows;
        rep["all_passed"] = all;
        finish_report(rep);
        write_report(rep, o.out);
    }
    return all ? ok : criteria_failed;
}

int exit_code_for(const Error& e)
{
    if (dynamic_cast<const ConfigError*>(&e) || dynamic_cast<const InvalidArgument*>(&e))
        return usage_error;
    if (dynamic_cast<const IoError*>(&e) || dynamic_cast<const FormatError*>(&e))
        return io_error;
    return numerical_error;
}

void report_error(const std::string& command, const std::string& path, const char* kind, const std::string& what,
                  int code, std::uint64_t seed)
{
    std::cerr << "homoglab " << command << ": " << kind << ": " << what << std::endl;
    if (path.empty())
        return;
    try {
        ojson rep = make_report(command, seed);
        rep["error"] = {{"kind", kind}, {"message", what}, {"exit_code", code}};
        finish_report(rep);
        write_report(rep, path);
    } catch (const std::exception&) {
        // the error itself has already been printed
    }
}

}  // namespace

int run(int argc, const char* const* argv)
{
    CLI::App app{"homoglab: two-scale homogenization laboratory"};
    app.require_subcommand(1);
    Options o;
    app.add_option("--seed", o.seed, "random seed recorded in every report");
    app.add_option("--threads", o.threads, "worker threads (overrides HOMOGLAB_THREADS)")->check(CLI::PositiveNumber);

    auto* pd = app.add_subcommand("project-divfree", "divergence-free projection of a periodic field");
    pd->add_option("--in", o.in, "input PGF1 field")->required();
    pd->add_option("--out", o.out, "output PGF1 field")->required();
    pd->add_option("--report", o.report, "JSON report");

    auto* cp = app.add_subcommand("coupled-project", "projection onto both divergence constraints");
    cp->add_option("--v", o.v, "input PGF2 two-scale field")->required();
    cp->add_option("--coeff", o.coeff, "coefficient JSON")->required();
    cp->add_option("--out", o.out, "output PGF2 field")->required();
    cp->add_option("--report", o.report, "JSON report");

    auto* uf = app.add_subcommand("unfold", "periodic unfolding of a field on a box");
    uf->add_option("--in", o.in, "input PGF1 field")->required();
    uf->add_option("--eps", o.eps, "cell size epsilon")->required();
    uf->add_option("--out", o.out, "output PGF2 field")->required();
    uf->add_option("--report", o.report, "JSON report");

    auto* ts = app.add_subcommand("twoscale-study", "two-scale pairings and unfolding defects over a schedule");
    ts->add_option("--config", o.config, "study JSON")->required();
    ts->add_option("--out", o.out, "JSON report")->required();

    auto* re = app.add_subcommand("relax-energy", "truncated relaxed energy or its (r, n) sweep");
    re->add_option("--config", o.config, "run JSON")->required();
    re->add_option("--out", o.out, "JSON report")->required();

    auto* ex = app.add_subcommand("example51", "closed form against the computed relaxed energy");
    ex->add_option("--u", o.u, "builtin:linear|builtin:curl|builtin:zero|file.pgf");
    ex->add_option("--out", o.out, "JSON report (default stdout)");
    ex->add_option("--grid", o.grid, "x-grid cells per axis")->check(CLI::PositiveNumber);
    ex->add_option("--ygrid", o.ygrid, "y-grid cells per axis")->check(CLI::PositiveNumber);
    ex->add_option("--r", o.r, "truncation radius");
    ex->add_option("--n", o.n, "dilation")->check(CLI::PositiveNumber);

    auto* nl = app.add_subcommand("nonlocality", "subadditivity test of the closed-form energies");
    nl->add_option("--xi1", o.xi1, "value inside the inner square");
    nl->add_option("--xi2", o.xi2, "value outside");
    nl->add_option("--eps", o.nl_eps, "half-width of the inner square");
    nl->add_option("--delta", o.delta, "collar width");
    nl->add_flag("--numeric-crosscheck", o.crosscheck, "recompute the energies numerically");
    nl->add_option("--points-per-unit", o.ppu, "minimum crosscheck resolution");
    nl->add_option("--out", o.out, "JSON report (default stdout)");

    auto* mo = app.add_subcommand("mollify", "mollification distances of a coefficient field");
    mo->add_option("--coeff", o.coeff, "coefficient JSON")->required();
    mo->add_option("--k", o.ks, "mollifier levels")->delimiter(',');
    mo->add_option("--out", o.out, "JSON report (default stdout)");

    auto* ac = app.add_subcommand("accept", "run the acceptance criteria");
    ac->add_option("--only", o.only, "criterion ids")->delimiter(',');
    ac->add_option("--out", o.out, "JSON report");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? ok : usage_error;
    }
    if (o.threads > 0)
        setenv("HOMOGLAB_THREADS", std::to_string(o.threads).c_str(), 1);

    const std::string command = app.get_subcommands().front()->get_name();
    const std::string report_path = !o.report.empty() ? o.report : o.out;
    const bool report_is_json = !o.report.empty() || command == "twoscale-study" || command == "relax-energy" ||
                                command == "example51" || command == "nonlocality" || command == "mollify" ||
                                command == "accept";
    const std::string error_path = report_is_json ? report_path : std::string();
    try {
        if (command == "project-divfree")
            return project_divfree(o);
        if (command == "coupled-project")
            return coupled(o);
        if (command == "unfold")
            return unfold_cmd(o);
        if (command == "twoscale-study")
            return twoscale_study(o);
        if (command == "relax-energy")
            return relax_energy(o);
        if (command == "example51")
            return example51(o);
        if (command == "nonlocality")
            return nonlocality(o);
        if (command == "mollify")
            return mollify_cmd(o);
        return accept(o);
    } catch (const Error& e) {
        const int code = exit_code_for(e);
        report_error(command, error_path, e.kind(), e.what(), code, o.seed);
        return code;
    } catch (const nlohmann::json::exception& e) {
        report_error(command, error_path, "ConfigError", e.what(), usage_error, o.seed);
        return usage_error;
    } catch (const std::bad_alloc&) {
        report_error(command, error_path, "ResourceError", "out of memory", numerical_error, o.seed);
        return numerical_error;
    }
}

}  // namespace homoglab::cli
