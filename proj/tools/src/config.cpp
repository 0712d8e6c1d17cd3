#include "config.hpp"

#include <cmath>
#include <fstream>
#include <numbers>
#include <random>

#include "homoglab/errors.hpp"
#include "homoglab/example51.hpp"
#include "homoglab/pgf.hpp"

namespace homoglab::cli {

namespace {

std::string type_name(const json& j)
{
    return j.type_name();
}

std::filesystem::path resolve(const std::filesystem::path& base, const std::string& file)
{
    const std::filesystem::path p(file);
    return p.is_absolute() || base.empty() ? p : base / p;
}

}  // namespace

Node::Node(const json& j, std::string path) : j_(j), path_(std::move(path))
{
    if (!j_.is_object())
        throw ConfigError("at " + (path_.empty() ? std::string("/") : path_) + ": expected an object, got " +
                          type_name(j_));
}

bool Node::has(const std::string& key) const
{
    return j_.contains(key);
}

void Node::fail(const std::string& key, const std::string& what) const
{
    throw ConfigError("at " + path_ + "/" + key + ": " + what);
}

const json& Node::at(const std::string& key) const
{
    if (!j_.contains(key))
        fail(key, "missing required key");
    return j_.at(key);
}

Node Node::child(const std::string& key) const
{
    const json& v = at(key);
    if (!v.is_object())
        fail(key, "expected an object, got " + type_name(v));
    return Node(v, path_ + "/" + key);
}

double Node::number(const std::string& key) const
{
    const json& v = at(key);
    if (!v.is_number())
        fail(key, "expected a number, got " + type_name(v));
    return v.get<double>();
}

double Node::number(const std::string& key, double fallback) const
{
    return has(key) ? number(key) : fallback;
}

int Node::integer(const std::string& key) const
{
    const json& v = at(key);
    if (!v.is_number_integer())
        fail(key, "expected an integer, got " + type_name(v));
    return v.get<int>();
}

int Node::integer(const std::string& key, int fallback) const
{
    return has(key) ? integer(key) : fallback;
}

std::string Node::string(const std::string& key) const
{
    const json& v = at(key);
    if (!v.is_string())
        fail(key, "expected a string, got " + type_name(v));
    return v.get<std::string>();
}

std::string Node::string(const std::string& key, const std::string& fallback) const
{
    return has(key) ? string(key) : fallback;
}

std::vector<double> Node::numbers(const std::string& key) const
{
    const json& v = at(key);
    if (!v.is_array())
        fail(key, "expected an array of numbers, got " + type_name(v));
    std::vector<double> out;
    for (std::size_t i = 0; i < v.size(); ++i) {
        if (!v[i].is_number())
            fail(key + "/" + std::to_string(i), "expected a number, got " + type_name(v[i]));
        out.push_back(v[i].get<double>());
    }
    return out;
}

std::vector<int> Node::integers(const std::string& key) const
{
    const json& v = at(key);
    if (!v.is_array())
        fail(key, "expected an array of integers, got " + type_name(v));
    std::vector<int> out;
    for (std::size_t i = 0; i < v.size(); ++i) {
        if (!v[i].is_number_integer())
            fail(key + "/" + std::to_string(i), "expected an integer, got " + type_name(v[i]));
        out.push_back(v[i].get<int>());
    }
    return out;
}

std::vector<int> Node::sizes(const std::string& key, int dims) const
{
    const json& v = at(key);
    std::vector<int> out = v.is_number_integer() ? std::vector<int>(dims, v.get<int>()) : integers(key);
    if (static_cast<int>(out.size()) != dims)
        fail(key, "expected " + std::to_string(dims) + " sizes");
    for (int m : out)
        if (m < 1)
            fail(key, "sizes must be positive");
    return out;
}

void Node::only(std::initializer_list<const char*> allowed) const
{
    for (auto it = j_.begin(); it != j_.end(); ++it) {
        bool ok = false;
        for (const char* a : allowed)
            ok = ok || it.key() == a;
        if (!ok)
            fail(it.key(), "unknown key");
    }
}

json load_json(const std::filesystem::path& file)
{
    std::ifstream in(file);
    if (!in)
        throw IoError("cannot open '" + file.string() + "'");
    try {
        return json::parse(in);
    } catch (const json::parse_error& e) {
        throw ConfigError("'" + file.string() + "' is not valid JSON: " + e.what());
    }
}

CoefficientSet parse_coefficients(const Node& node, const std::filesystem::path& base)
{
    const std::string type = node.string("type", "example51");
    CoefficientSet a;
    try {
        if (type == "example51") {
            node.only({"type", "grid", "n", "profile", "mollify"});
            const auto sizes = node.sizes("grid", 2);
            const Grid yg = Grid::periodic(sizes);
            std::vector<double> profile;
            if (!node.has("profile")) {
                profile = benchmark_profile(sizes[1]);
            } else {
                const Node p = node.child("profile");
                const std::string kind = p.string("kind");
                if (kind == "exp_cos") {
                    p.only({"kind", "kappa"});
                    const double kappa = p.number("kappa", 8.0);
                    profile = make_profile(sample_profile(
                        [kappa](double s) { return std::exp(kappa * std::cos(2.0 * std::numbers::pi * s)); }, sizes[1]));
                } else if (kind == "samples") {
                    p.only({"kind", "values", "normalize"});
                    profile = p.numbers("values");
                    if (static_cast<int>(profile.size()) != sizes[1])
                        p.fail("values", "expected " + std::to_string(sizes[1]) + " samples (grid size along y2)");
                    if (p.has("normalize") && !p.raw().at("normalize").is_boolean())
                        p.fail("normalize", "expected a boolean");
                    if (!p.has("normalize") || p.raw().at("normalize").get<bool>())
                        profile = make_profile(profile);
                } else {
                    p.fail("kind", "unknown profile kind '" + kind + "' (exp_cos, samples)");
                }
            }
            a = example51_coefficients(profile, yg, node.integer("n", 1));
        } else if (type == "identity") {
            node.only({"type", "grid", "mollify"});
            const json& g = node.raw().at("grid");
            const int dims = g.is_array() ? static_cast<int>(g.size()) : 2;
            a = identity_rows(Grid::periodic(node.sizes("grid", dims)));
        } else if (type == "checkerboard") {
            node.only({"type", "grid", "low", "high", "mollify"});
            const json& g = node.raw().at("grid");
            const int dims = g.is_array() ? static_cast<int>(g.size()) : 2;
            a = checkerboard_coefficients(Grid::periodic(node.sizes("grid", dims)), node.number("low"),
                                          node.number("high"));
        } else if (type == "samples") {
            node.only({"type", "N", "l", "d", "file", "n", "mollify"});
            const int N = node.integer("N"), l = node.integer("l"), d = node.integer("d");
            const GridField s = read_field(resolve(base, node.string("file")).string());
            if (!s.grid.is_periodic() || s.grid.dims() != N)
                node.fail("file", "sample file must live on a periodic grid of dimension N");
            if (s.components != N * l * d)
                node.fail("file", "sample file must have N*l*d components");
            a = CoefficientSet(N, l, d, s.grid);
            a.samples = s.data;
            a = a.with_dilation(node.integer("n", 1));
        } else {
            node.fail("type", "unknown coefficient type '" + type + "' (example51, identity, checkerboard, samples)");
        }
        if (node.has("mollify"))
            a = mollify(a, node.integer("mollify"));
    } catch (const InvalidArgument& e) {
        throw ConfigError("at " + (node.path().empty() ? std::string("/") : node.path()) + ": " + e.what());
    }
    return a;
}

CoefficientSet load_coefficients(const std::filesystem::path& file)
{
    const json j = load_json(file);
    return parse_coefficients(Node(j, ""), file.parent_path());
}

Integrand parse_integrand(const Node& node)
{
    const std::string kind = node.string("kind", "quadratic");
    try {
        if (kind == "quadratic") {
            node.only({"kind", "alpha"});
            return quadratic(node.number("alpha", 1.0));
        }
        if (kind == "regularized_power") {
            node.only({"kind", "p"});
            return regularized_power(node.number("p"));
        }
        if (kind == "quadratic_quartic") {
            node.only({"kind", "beta"});
            return quadratic_quartic(node.number("beta"));
        }
        if (kind == "double_well") {
            node.only({"kind"});
            return double_well();
        }
    } catch (const InvalidArgument& e) {
        throw ConfigError("at " + (node.path().empty() ? std::string("/") : node.path()) + ": " + e.what());
    }
    node.fail("kind", "unknown integrand '" + kind + "' (quadratic, regularized_power, quadratic_quartic, double_well)");
}

RelaxationSpec parse_relaxation(const Node& node)
{
    node.only({"r", "n", "tol_energy", "tol_feas", "max_projection_iter", "max_outer_iter", "r_sweep", "n_sweep"});
    RelaxationSpec s;
    s.r = node.number("r", s.r);
    s.n = node.integer("n", s.n);
    s.tol_energy = node.number("tol_energy", s.tol_energy);
    s.tol_feas = node.number("tol_feas", s.tol_feas);
    s.max_projection_iter = node.integer("max_projection_iter", s.max_projection_iter);
    s.max_outer_iter = node.integer("max_outer_iter", s.max_outer_iter);
    if (node.has("r_sweep"))
        s.r_sweep = node.numbers("r_sweep");
    if (node.has("n_sweep"))
        s.n_sweep = node.integers("n_sweep");
    if (!(s.r >= 0.0))
        node.fail("r", "must be nonnegative");
    if (s.n < 1)
        node.fail("n", "must be a positive integer");
    if (!(s.tol_energy > 0.0))
        node.fail("tol_energy", "must be positive");
    if (!(s.tol_feas > 0.0))
        node.fail("tol_feas", "must be positive");
    if (node.has("r_sweep") && s.r_sweep.empty())
        node.fail("r_sweep", "must not be empty");
    if (node.has("n_sweep") && s.n_sweep.empty())
        node.fail("n_sweep", "must not be empty");
    return s;
}

Grid parse_box(const json& j, const std::string& path)
{
    try {
        if (j.is_number_integer())
            return Grid::unit_box(2, j.get<int>());
        if (j.is_array()) {
            std::vector<int> sizes;
            for (const auto& v : j) {
                if (!v.is_number_integer())
                    throw ConfigError("at " + path + ": expected integer grid sizes");
                sizes.push_back(v.get<int>());
            }
            std::vector<double> lower(sizes.size(), 0.0), upper(sizes.size(), 1.0);
            return Grid::box(lower, upper, sizes);
        }
        const Node n(j, path);
        n.only({"lower", "upper", "sizes"});
        const auto sizes = n.integers("sizes");
        const int dims = static_cast<int>(sizes.size());
        std::vector<double> lower = n.has("lower") ? n.numbers("lower") : std::vector<double>(dims, 0.0);
        std::vector<double> upper = n.has("upper") ? n.numbers("upper") : std::vector<double>(dims, 1.0);
        return Grid::box(lower, upper, sizes);
    } catch (const InvalidArgument& e) {
        throw ConfigError("at " + path + ": " + e.what());
    }
}

GridField make_field(const std::string& spec, const Grid& box, std::uint64_t seed, const std::filesystem::path& base)
{
    const std::string prefix = "builtin:";
    if (spec.rfind(prefix, 0) != 0) {
        GridField f = read_field(resolve(base, spec).string());
        if (f.grid.is_periodic())
            throw ConfigError("field '" + spec + "' must live on a box");
        return f;
    }
    const std::string name = spec.substr(prefix.size());
    if (box.dims() != 2)
        throw ConfigError("builtin fields are two-dimensional");
    GridField u(box, 2);
    std::vector<double> x(2);
    constexpr double pi = std::numbers::pi;
    if (name == "zero")
        return u;
    if (name == "random") {
        std::mt19937_64 rng(seed);
        std::uniform_real_distribution<double> uni(-1.0, 1.0);
        for (double& v : u.data)
            v = uni(rng);
        return u;
    }
    for (std::size_t i = 0; i < box.count(); ++i) {
        box.coordinates(i, x);
        if (name == "linear") {
            u.at(i, 0) = -x[0];
        } else if (name == "curl") {
            // (d psi / dx2, -d psi / dx1), psi = cos(pi x1) cos(pi x2) + cos(2 pi x1) cos(3 pi x2) / 2
            const double a = pi * x[0], b = pi * x[1];
            u.at(i, 0) = -pi * std::cos(a) * std::sin(b) - 1.5 * pi * std::cos(2 * a) * std::sin(3 * b);
            u.at(i, 1) = pi * std::sin(a) * std::cos(b) + pi * std::sin(2 * a) * std::cos(3 * b);
        } else {
            throw ConfigError("unknown builtin field '" + spec + "' (linear, zero, curl, random)");
        }
    }
    return u;
}

}  // namespace homoglab::cli
