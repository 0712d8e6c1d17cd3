#include "report.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <ctime>
#include <fstream>
#include <iostream>

#include "homoglab/errors.hpp"

namespace homoglab::cli {

double round12(double v)
{
    if (!std::isfinite(v) || v == 0.0)
        return v;
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.12g", v);
    return std::strtod(buf, nullptr);
}

ojson stabilize(const ojson& j)
{
    if (j.is_number_float()) {
        const double v = j.get<double>();
        if (std::isnan(v))
            return "nan";
        if (std::isinf(v))
            return v > 0 ? "inf" : "-inf";
        return round12(v);
    }
    if (j.is_object()) {
        ojson out = ojson::object();
        for (auto it = j.begin(); it != j.end(); ++it)
            out[it.key()] = stabilize(it.value());
        return out;
    }
    if (j.is_array()) {
        ojson out = ojson::array();
        for (const auto& v : j)
            out.push_back(stabilize(v));
        return out;
    }
    return j;
}

ojson make_report(const std::string& command, std::uint64_t seed)
{
    ojson r = ojson::object();
    r["command"] = command;
    r["seed"] = seed;
    return r;
}

void finish_report(ojson& report)
{
    const auto now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
    std::tm tm{};
    gmtime_r(&now, &tm);
    char stamp[32];
    std::strftime(stamp, sizeof stamp, "%Y-%m-%dT%H:%M:%SZ", &tm);
    report["metadata"] = {{"tool", "homoglab"}, {"version", "0.1.0"}, {"timestamp", stamp}};
}

void write_report(const ojson& report, const std::string& path)
{
    const std::string text = stabilize(report).dump(2) + "\n";
    if (path.empty()) {
        std::cout << text;
        return;
    }
    std::ofstream out(path, std::ios::trunc);
    if (!out)
        throw IoError("cannot open '" + path + "' for writing");
    out << text;
    if (!out)
        throw IoError("write to '" + path + "' failed");
}

ojson to_json(const ResidualReport& r)
{
    return {{"x", r.x_residual}, {"y_max", r.y_residual_max}, {"y_l2", r.y_residual_l2}, {"mean", r.mean_residual}};
}

ojson to_json(const EnergyReport& r)
{
    ojson j = ojson::object();
    j["value"] = r.value;
    j["feasible"] = r.feasible;
    j["certified"] = r.certified;
    j["label"] = r.label;
    j["residuals"] = to_json(r.residuals);
    j["iterations"] = {{"outer", r.iterations}, {"projection", r.projection_iterations}};
    j["corrector"] = {{"l2", r.w_l2}, {"max", r.w_max}, {"mean_max", r.w_mean_max}};
    j["r"] = r.r;
    j["n"] = r.n;
    if (!r.table.empty()) {
        ojson t = ojson::array();
        for (const auto& e : r.table)
            t.push_back({{"r", e.r}, {"n", e.n}, {"value", e.value}, {"feasible", e.feasible}, {"iterations", e.iterations}});
        j["table"] = t;
        j["monotone_in_r"] = r.monotone_in_r;
    }
    return j;
}

}  // namespace homoglab::cli
