#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include "homoglab/coefficients.hpp"
#include "homoglab/energy.hpp"
#include "homoglab/grid.hpp"
#include "homoglab/integrand.hpp"
#include "json.hpp"

namespace homoglab::cli {

using json = nlohmann::json;

// Read-only view of a JSON object that knows its location, so every error
// names the offending key as a JSON pointer ("/relaxation/r").
class Node {
public:
    Node(const json& j, std::string path);

    const std::string& path() const { return path_; }
    bool has(const std::string& key) const;
    Node child(const std::string& key) const;

    double number(const std::string& key) const;
    double number(const std::string& key, double fallback) const;
    int integer(const std::string& key) const;
    int integer(const std::string& key, int fallback) const;
    std::string string(const std::string& key) const;
    std::string string(const std::string& key, const std::string& fallback) const;
    std::vector<double> numbers(const std::string& key) const;
    std::vector<int> integers(const std::string& key) const;
    // Accepts an integer (repeated dims times) or an array of integers.
    std::vector<int> sizes(const std::string& key, int dims) const;
    const json& raw() const { return j_; }

    // Throws ConfigError for any key outside `allowed`.
    void only(std::initializer_list<const char*> allowed) const;
    [[noreturn]] void fail(const std::string& key, const std::string& what) const;

private:
    const json& at(const std::string& key) const;
    const json& j_;
    std::string path_;
};

json load_json(const std::filesystem::path& file);

// Coefficient description, e.g.
//   {"type": "example51", "grid": [32, 32], "n": 1, "profile": {"kind": "exp_cos", "kappa": 8}}
//   {"type": "identity" | "checkerboard" | "samples", ...}, optional "mollify": k.
CoefficientSet parse_coefficients(const Node& node, const std::filesystem::path& base);
CoefficientSet load_coefficients(const std::filesystem::path& file);

Integrand parse_integrand(const Node& node);
RelaxationSpec parse_relaxation(const Node& node);
// Unit box by default: [32, 32]; or {"lower": [...], "upper": [...], "sizes": [...]}.
Grid parse_box(const json& j, const std::string& path);

// "builtin:linear" (-x1, 0), "builtin:zero", "builtin:curl" (divergence-free),
// "builtin:random" (seeded), or a PGF1 file on a box.
GridField make_field(const std::string& spec, const Grid& box, std::uint64_t seed,
                     const std::filesystem::path& base = {});

}  // namespace homoglab::cli
