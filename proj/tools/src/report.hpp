#pragma once

#include <cstdint>
#include <string>

#include "homoglab/constraints.hpp"
#include "homoglab/energy.hpp"
#include "json.hpp"

namespace homoglab::cli {

using ojson = nlohmann::ordered_json;

// v rounded to 12 significant digits.
double round12(double v);

// Rounds every number to 12 significant digits and spells non-finite values
// as the strings "inf", "-inf" and "nan".
ojson stabilize(const ojson& j);

// {"command": ..., "seed": ..., <body>, "metadata": {...}}; only "metadata"
// (tool version and wall-clock timestamp) varies between identical runs.
ojson make_report(const std::string& command, std::uint64_t seed);
void finish_report(ojson& report);

// Writes the report (stabilized, two-space indent). Empty path: stdout.
void write_report(const ojson& report, const std::string& path);

ojson to_json(const ResidualReport& r);
ojson to_json(const EnergyReport& r);

}  // namespace homoglab::cli
