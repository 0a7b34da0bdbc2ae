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

#include "bpms/config.hpp"
#include "bpms/error.hpp"

#include <fstream>
#include <set>

namespace bpms
{

using nlohmann::json;

namespace
{

void reject_unknown(const json &obj, const std::set<std::string> &known, const std::string &where)
{
    if (!obj.is_object())
        throw ConfigError(where + " must be an object");
    for (auto it = obj.begin(); it != obj.end(); ++it)
        if (!known.count(it.key()))
            throw ConfigError("unknown key '" + it.key() + "' in " + where);
}

template <typename T> void read(const json &obj, const char *key, T &out, const std::string &where)
{
    if (!obj.contains(key))
        return;
    try
    {
        out = obj.at(key).get<T>();
    }
    catch (const json::exception &)
    {
        throw ConfigError(where + "." + key + " has the wrong type");
    }
}

Vec2 read_point(const json &v, const std::string &where)
{
    if (!v.is_array() || v.size() != 2 || !v[0].is_number() || !v[1].is_number())
        throw ConfigError(where + " must be a two-element numeric array");
    return Vec2(v[0].get<double>(), v[1].get<double>());
}

ArraySpec read_array(const json &obj, ArraySpec spec, const std::string &where)
{
    reject_unknown(obj, {"num_elements", "element_spacing_wavelengths"}, where);
    read(obj, "num_elements", spec.num_elements, where);
    read(obj, "element_spacing_wavelengths", spec.element_spacing_wavelengths, where);
    return spec;
}

json write_array(const ArraySpec &a)
{
    return {{"num_elements", a.num_elements}, {"element_spacing_wavelengths", a.element_spacing_wavelengths}};
}

} // namespace

LoadedScenario scenario_from_json(const json &doc)
{
    reject_unknown(doc, {"system", "geometry"}, "configuration");
    const Scenario reference = default_scenario(3, 1);

    SystemSpec spec;
    if (doc.contains("system"))
    {
        const json &s = doc["system"];
        reject_unknown(s,
                       {"carrier_frequency_hz", "bandwidth_hz", "num_subcarriers", "num_symbols", "num_slots",
                        "power_dbm", "noise_figure_db", "noise_psd_dbm_per_hz", "rng_seed", "tx_array", "rx_array",
                        "ue_array"},
                       "system");
        read(s, "carrier_frequency_hz", spec.carrier_frequency_hz, "system");
        read(s, "bandwidth_hz", spec.bandwidth_hz, "system");
        read(s, "num_subcarriers", spec.num_subcarriers, "system");
        read(s, "num_symbols", spec.num_symbols, "system");
        read(s, "num_slots", spec.num_slots, "system");
        read(s, "power_dbm", spec.power_dbm, "system");
        read(s, "noise_figure_db", spec.noise_figure_db, "system");
        read(s, "noise_psd_dbm_per_hz", spec.noise_psd_dbm_per_hz, "system");
        read(s, "rng_seed", spec.rng_seed, "system");
        if (s.contains("tx_array"))
            spec.tx_array = read_array(s["tx_array"], spec.tx_array, "system.tx_array");
        if (s.contains("rx_array"))
            spec.rx_array = read_array(s["rx_array"], spec.rx_array, "system.rx_array");
        if (s.contains("ue_array"))
            spec.ue_array = read_array(s["ue_array"], spec.ue_array, "system.ue_array");
    }

    LoadedScenario out;
    out.scenario.system = SystemConfig::from(spec);
    GeometryConfig &g = out.scenario.geometry;
    g = reference.geometry;

    if (doc.contains("geometry"))
    {
        const json &j = doc["geometry"];
        reject_unknown(j,
                       {"bs_position", "ue_position", "orientation_rad", "clock_bias_s", "ue_rcs_ms", "targets",
                        "phase_bp", "phase_ms"},
                       "geometry");
        if (j.contains("bs_position"))
            g.bs_position = read_point(j["bs_position"], "geometry.bs_position");
        if (j.contains("ue_position"))
            g.ue_position = read_point(j["ue_position"], "geometry.ue_position");
        read(j, "orientation_rad", g.orientation_rad, "geometry");
        read(j, "clock_bias_s", g.clock_bias_s, "geometry");
        read(j, "ue_rcs_ms", g.ue_rcs_ms, "geometry");
        if (j.contains("targets"))
        {
            if (!j["targets"].is_array())
                throw ConfigError("geometry.targets must be an array");
            g.targets.clear();
            for (std::size_t k = 0; k < j["targets"].size(); ++k)
            {
                const json &t = j["targets"][k];
                const std::string where = "geometry.targets[" + std::to_string(k) + "]";
                reject_unknown(t, {"position", "rcs_bp", "rcs_ms"}, where);
                if (!t.contains("position"))
                    throw ConfigError(where + " needs a position");
                Target target{read_point(t["position"], where + ".position"), 100.0, 100.0};
                read(t, "rcs_bp", target.rcs_bp, where);
                read(t, "rcs_ms", target.rcs_ms, where);
                g.targets.push_back(target);
            }
        }
        const bool has_bp = j.contains("phase_bp"), has_ms = j.contains("phase_ms");
        if (has_bp != has_ms)
            throw ConfigError("phase_bp and phase_ms must be given together");
        if (has_bp)
        {
            read(j, "phase_bp", g.phase_bp, "geometry");
            read(j, "phase_ms", g.phase_ms, "geometry");
            out.phases_from_config = true;
        }
    }
    if (!out.phases_from_config)
        draw_phases(g, out.scenario.system.rng_seed);
    g.validate();
    return out;
}

LoadedScenario load_scenario(const std::string &path)
{
    std::ifstream in(path);
    if (!in)
        throw ConfigError("cannot open configuration file " + path);
    json doc;
    try
    {
        doc = json::parse(in);
    }
    catch (const json::parse_error &e)
    {
        throw ConfigError("configuration " + path + " is not valid JSON: " + e.what());
    }
    return scenario_from_json(doc);
}

json scenario_to_json(const Scenario &scenario)
{
    const SystemConfig &s = scenario.system;
    const GeometryConfig &g = scenario.geometry;
    json targets = json::array();
    for (const auto &t : g.targets)
        targets.push_back({{"position", {t.position.x(), t.position.y()}}, {"rcs_bp", t.rcs_bp}, {"rcs_ms", t.rcs_ms}});
    return {{"system",
             {{"carrier_frequency_hz", s.carrier_frequency_hz},
              {"bandwidth_hz", s.bandwidth_hz},
              {"num_subcarriers", s.num_subcarriers},
              {"num_symbols", s.num_symbols},
              {"num_slots", s.num_slots},
              {"power_dbm", s.power_dbm()},
              {"noise_figure_db", s.noise_figure_db},
              {"noise_psd_dbm_per_hz", s.noise_psd_dbm_per_hz},
              {"rng_seed", s.rng_seed},
              {"tx_array", write_array(s.tx_array)},
              {"rx_array", write_array(s.rx_array)},
              {"ue_array", write_array(s.ue_array)}}},
            {"geometry",
             {{"bs_position", {g.bs_position.x(), g.bs_position.y()}},
              {"ue_position", {g.ue_position.x(), g.ue_position.y()}},
              {"orientation_rad", g.orientation_rad},
              {"clock_bias_s", g.clock_bias_s},
              {"ue_rcs_ms", g.ue_rcs_ms},
              {"targets", targets},
              {"phase_bp", g.phase_bp},
              {"phase_ms", g.phase_ms}}}};
}

void reseed(LoadedScenario &loaded, std::uint64_t seed)
{
    loaded.scenario.system.rng_seed = seed;
    if (!loaded.phases_from_config)
        draw_phases(loaded.scenario.geometry, seed);
}

} // namespace bpms
