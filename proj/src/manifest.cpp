// SPDX-License-Identifier: Apache-2.0
//
// bpms - beamforming for joint bistatic positioning and monostatic sensing
// Copyright (C) 2026 The bpms authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
// ------------------------------------------------------------------------

#include "bpms/manifest.hpp"
#include "bpms/error.hpp"

#include <cmath>
#include <limits>

namespace bpms
{

using nlohmann::json;

namespace
{

bool same(double a, double b) { return a == b || (std::isnan(a) && std::isnan(b)); }

// json has no NaN; failed rows carry null
json number(double v)
{
    if (std::isfinite(v))
        return v;
    return nullptr;
}

double number_from(const json &v)
{
    if (v.is_null())
        return std::numeric_limits<double>::quiet_NaN();
    return v.get<double>();
}

} // namespace

bool operator==(const PointRecord &a, const PointRecord &b)
{
    const bool rho_same =
        a.rho.has_value() == b.rho.has_value() && (!a.rho.has_value() || same(*a.rho, *b.rho));
    return a.scheme == b.scheme && rho_same && a.status == b.status && same(a.solve_time_s, b.solve_time_s) &&
           same(a.crb_bp_sqrt_m, b.crb_bp_sqrt_m) && same(a.crb_ms_sqrt_m, b.crb_ms_sqrt_m);
}

bool operator==(const RunManifest &a, const RunManifest &b)
{
    if (a.rho_grid.size() != b.rho_grid.size())
        return false;
    for (std::size_t i = 0; i < a.rho_grid.size(); ++i)
        if (!same(a.rho_grid[i], b.rho_grid[i]))
            return false;
    return a.tool_version == b.tool_version && a.command == b.command && a.config == b.config &&
           a.seed == b.seed && a.phase_averages == b.phase_averages && a.schemes == b.schemes &&
           a.points == b.points && a.outputs == b.outputs && a.aods_deg == b.aods_deg;
}

json to_json(const RunManifest &m)
{
    json points = json::array();
    for (const auto &p : m.points)
        points.push_back({{"scheme", p.scheme},
                          {"rho", p.rho ? number(*p.rho) : json(nullptr)},
                          {"status", p.status},
                          {"solve_time_s", number(p.solve_time_s)},
                          {"crb_bp_sqrt_m", number(p.crb_bp_sqrt_m)},
                          {"crb_ms_sqrt_m", number(p.crb_ms_sqrt_m)}});
    json aods = json::object();
    for (const auto &[k, v] : m.aods_deg)
        aods[k] = v;
    return {{"tool_version", m.tool_version}, {"command", m.command},     {"config", m.config},
            {"seed", m.seed},                 {"phase_averages", m.phase_averages},
            {"schemes", m.schemes},           {"rho_grid", m.rho_grid},   {"points", points},
            {"outputs", m.outputs},           {"aods_deg", aods}};
}

RunManifest manifest_from_json(const json &doc)
{
    try
    {
        RunManifest m;
        m.tool_version = doc.at("tool_version").get<std::string>();
        m.command = doc.at("command").get<std::string>();
        m.config = doc.at("config");
        m.seed = doc.at("seed").get<std::uint64_t>();
        m.phase_averages = doc.at("phase_averages").get<int>();
        m.schemes = doc.at("schemes").get<std::vector<std::string>>();
        m.rho_grid = doc.at("rho_grid").get<std::vector<double>>();
        for (const auto &p : doc.at("points"))
        {
            PointRecord r;
            r.scheme = p.at("scheme").get<std::string>();
            if (!p.at("rho").is_null())
                r.rho = p.at("rho").get<double>();
            r.status = p.at("status").get<std::string>();
            r.solve_time_s = number_from(p.at("solve_time_s"));
            r.crb_bp_sqrt_m = number_from(p.at("crb_bp_sqrt_m"));
            r.crb_ms_sqrt_m = number_from(p.at("crb_ms_sqrt_m"));
            m.points.push_back(std::move(r));
        }
        m.outputs = doc.at("outputs").get<std::vector<std::string>>();
        for (auto it = doc.at("aods_deg").begin(); it != doc.at("aods_deg").end(); ++it)
            m.aods_deg[it.key()] = it.value().get<double>();
        return m;
    }
    catch (const json::exception &e)
    {
        throw ConfigError(std::string("malformed manifest: ") + e.what());
    }
}

std::string serialize(const RunManifest &manifest) { return to_json(manifest).dump(2) + "\n"; }

RunManifest parse_manifest(const std::string &text)
{
    json doc;
    try
    {
        doc = json::parse(text);
    }
    catch (const json::parse_error &e)
    {
        throw ConfigError(std::string("manifest is not valid JSON: ") + e.what());
    }
    return manifest_from_json(doc);
}

} // namespace bpms
