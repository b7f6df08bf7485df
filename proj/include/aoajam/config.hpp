// SPDX-License-Identifier: Apache-2.0
//
// aoajam - AoA estimation under adversarial jamming in Rician fading
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

#pragma once

#include <cerrno>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <map>
#include <set>
#include <sstream>
#include <string>

#include "aoajam/sim.hpp"

namespace aoajam {

// Scenario files are flat `key = value` text. Keys carry their unit as a
// suffix (theta_t_deg, snr_db, ...); dB and degree values are converted to
// linear/radians exactly once, when the Scenario consumes them. Unknown keys
// are rejected, required keys must be present.
class ConfigError : public std::runtime_error {
  public:
    ConfigError(std::string message, int line = 0, std::string key = {})
        : std::runtime_error(std::move(message)), line_(line), key_(std::move(key)) {}
    int line() const { return line_; }
    const std::string& key() const { return key_; }

  private:
    int line_;
    std::string key_;
};

namespace detail {

inline std::string trim(const std::string& s) {
    const auto begin = s.find_first_not_of(" \t\r\n");
    if (begin == std::string::npos) return {};
    const auto end = s.find_last_not_of(" \t\r\n");
    return s.substr(begin, end - begin + 1);
}

inline double parse_double(const std::string& value, const std::string& key, int line) {
    errno = 0;
    char* end = nullptr;
    const double v = std::strtod(value.c_str(), &end);
    if (end == value.c_str() || *end != '\0' || errno == ERANGE)
        throw ConfigError("config: key '" + key + "' has invalid numeric value '" + value + "'", line, key);
    return v;
}

inline long long parse_int(const std::string& value, const std::string& key, int line) {
    errno = 0;
    char* end = nullptr;
    const long long v = std::strtoll(value.c_str(), &end, 10);
    if (end == value.c_str() || *end != '\0' || errno == ERANGE)
        throw ConfigError("config: key '" + key + "' has invalid integer value '" + value + "'", line, key);
    return v;
}

inline std::uint64_t parse_u64(const std::string& value, const std::string& key, int line) {
    errno = 0;
    char* end = nullptr;
    const unsigned long long v = std::strtoull(value.c_str(), &end, 10);
    if (end == value.c_str() || *end != '\0' || errno == ERANGE || value.find('-') != std::string::npos)
        throw ConfigError("config: key '" + key + "' has invalid seed value '" + value + "'", line, key);
    return v;
}

inline bool parse_bool(const std::string& value, const std::string& key, int line) {
    if (value == "true") return true;
    if (value == "false") return false;
    throw ConfigError("config: key '" + key + "' must be true or false, got '" + value + "'", line, key);
}

// Full-precision, locale-independent double formatting; round-trips bitwise.
inline std::string format_double(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

inline std::string jammer_mode_name(JammerMode m) {
    switch (m) {
        case JammerMode::None: return "none";
        case JammerMode::Unaware: return "unaware";
        case JammerMode::UniformUnaware: return "uniform_unaware";
        case JammerMode::Aware: return "aware";
    }
    return "none";
}

inline std::string knowledge_name(ReceiverKnowledge k) {
    switch (k) {
        case ReceiverKnowledge::None: return "none";
        case ReceiverKnowledge::Statistical: return "statistical";
        case ReceiverKnowledge::PerfectCsi: return "perfect_csi";
    }
    return "none";
}

} // namespace detail

inline Scenario parse_config(std::istream& in) {
    static const std::set<std::string> required = {
        "n_r", "n_j", "theta_t_deg", "theta_j_deg", "k_t_db",      "k_j_db", "training_len",
        "snr_db", "power_ratio", "jammer_mode", "receiver_knowledge", "trials", "seed"};
    static const std::set<std::string> optional = {
        "d_over_lambda", "p_t_max", "grid_min_deg", "grid_max_deg", "grid_step_deg",
        "refine", "block_fading", "keep_spectra"};

    std::map<std::string, std::pair<std::string, int>> kv;
    std::string raw;
    int line_no = 0;
    while (std::getline(in, raw)) {
        ++line_no;
        const std::string line = detail::trim(raw);
        if (line.empty() || line[0] == '#') continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos)
            throw ConfigError("config: line " + std::to_string(line_no) + " is not 'key = value'", line_no);
        const std::string key = detail::trim(line.substr(0, eq));
        const std::string value = detail::trim(line.substr(eq + 1));
        if (key.empty() || value.empty())
            throw ConfigError("config: line " + std::to_string(line_no) + " has empty key or value", line_no, key);
        if (!required.count(key) && !optional.count(key))
            throw ConfigError("config: unknown key '" + key + "' on line " + std::to_string(line_no), line_no, key);
        if (kv.count(key))
            throw ConfigError("config: duplicate key '" + key + "' on line " + std::to_string(line_no), line_no, key);
        kv[key] = {value, line_no};
    }
    for (const std::string& key : required)
        if (!kv.count(key)) throw ConfigError("config: missing required key '" + key + "'", 0, key);

    Scenario s;
    auto get = [&](const std::string& key) { return kv.at(key); };
    auto has = [&](const std::string& key) { return kv.count(key) > 0; };

    {
        const auto [v, ln] = get("n_r");
        s.n_r = static_cast<int>(detail::parse_int(v, "n_r", ln));
    }
    {
        const auto [v, ln] = get("n_j");
        s.n_j = static_cast<int>(detail::parse_int(v, "n_j", ln));
    }
    {
        const auto [v, ln] = get("theta_t_deg");
        s.theta_t_deg = detail::parse_double(v, "theta_t_deg", ln);
    }
    {
        const auto [v, ln] = get("theta_j_deg");
        s.theta_j_deg = detail::parse_double(v, "theta_j_deg", ln);
    }
    {
        const auto [v, ln] = get("k_t_db");
        s.k_t_db = detail::parse_double(v, "k_t_db", ln);
    }
    {
        const auto [v, ln] = get("k_j_db");
        s.k_j_db = detail::parse_double(v, "k_j_db", ln);
    }
    {
        const auto [v, ln] = get("training_len");
        s.training_len = static_cast<int>(detail::parse_int(v, "training_len", ln));
    }
    {
        const auto [v, ln] = get("snr_db");
        s.snr_db = detail::parse_double(v, "snr_db", ln);
    }
    {
        const auto [v, ln] = get("power_ratio");
        s.power_ratio = detail::parse_double(v, "power_ratio", ln);
    }
    {
        const auto [v, ln] = get("trials");
        s.trials = static_cast<int>(detail::parse_int(v, "trials", ln));
    }
    {
        const auto [v, ln] = get("seed");
        s.seed = detail::parse_u64(v, "seed", ln);
    }
    {
        const auto [v, ln] = get("jammer_mode");
        if (v == "none")
            s.jammer_mode = JammerMode::None;
        else if (v == "unaware")
            s.jammer_mode = JammerMode::Unaware;
        else if (v == "uniform_unaware")
            s.jammer_mode = JammerMode::UniformUnaware;
        else if (v == "aware")
            s.jammer_mode = JammerMode::Aware;
        else
            throw ConfigError("config: key 'jammer_mode' must be one of none|unaware|uniform_unaware|aware", ln,
                              "jammer_mode");
    }
    {
        const auto [v, ln] = get("receiver_knowledge");
        if (v == "none")
            s.receiver_knowledge = ReceiverKnowledge::None;
        else if (v == "statistical")
            s.receiver_knowledge = ReceiverKnowledge::Statistical;
        else if (v == "perfect_csi")
            s.receiver_knowledge = ReceiverKnowledge::PerfectCsi;
        else
            throw ConfigError("config: key 'receiver_knowledge' must be one of none|statistical|perfect_csi", ln,
                              "receiver_knowledge");
    }
    if (has("d_over_lambda")) {
        const auto [v, ln] = get("d_over_lambda");
        s.d_over_lambda = detail::parse_double(v, "d_over_lambda", ln);
    }
    if (has("p_t_max")) {
        const auto [v, ln] = get("p_t_max");
        s.p_t_max = detail::parse_double(v, "p_t_max", ln);
    }
    if (has("grid_min_deg")) {
        const auto [v, ln] = get("grid_min_deg");
        s.grid_min_deg = detail::parse_double(v, "grid_min_deg", ln);
    }
    if (has("grid_max_deg")) {
        const auto [v, ln] = get("grid_max_deg");
        s.grid_max_deg = detail::parse_double(v, "grid_max_deg", ln);
    }
    if (has("grid_step_deg")) {
        const auto [v, ln] = get("grid_step_deg");
        s.grid_step_deg = detail::parse_double(v, "grid_step_deg", ln);
    }
    if (has("refine")) {
        const auto [v, ln] = get("refine");
        s.refine = detail::parse_bool(v, "refine", ln);
    }
    if (has("block_fading")) {
        const auto [v, ln] = get("block_fading");
        s.block_fading = detail::parse_bool(v, "block_fading", ln);
    }
    if (has("keep_spectra")) {
        const auto [v, ln] = get("keep_spectra");
        s.keep_spectra = detail::parse_bool(v, "keep_spectra", ln);
    }

    try {
        s.validate();
    } catch (const std::invalid_argument& e) {
        throw ConfigError(std::string("config: ") + e.what());
    }
    return s;
}

inline Scenario parse_config_string(const std::string& text) {
    std::istringstream in(text);
    return parse_config(in);
}

inline Scenario load_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("config: cannot open '" + path + "'");
    return parse_config(in);
}

inline std::string emit_config(const Scenario& s) {
    std::ostringstream out;
    out << "n_r = " << s.n_r << "\n";
    out << "n_j = " << s.n_j << "\n";
    out << "d_over_lambda = " << detail::format_double(s.d_over_lambda) << "\n";
    out << "theta_t_deg = " << detail::format_double(s.theta_t_deg) << "\n";
    out << "theta_j_deg = " << detail::format_double(s.theta_j_deg) << "\n";
    out << "k_t_db = " << detail::format_double(s.k_t_db) << "\n";
    out << "k_j_db = " << detail::format_double(s.k_j_db) << "\n";
    out << "training_len = " << s.training_len << "\n";
    out << "snr_db = " << detail::format_double(s.snr_db) << "\n";
    out << "power_ratio = " << detail::format_double(s.power_ratio) << "\n";
    out << "p_t_max = " << detail::format_double(s.p_t_max) << "\n";
    out << "jammer_mode = " << detail::jammer_mode_name(s.jammer_mode) << "\n";
    out << "receiver_knowledge = " << detail::knowledge_name(s.receiver_knowledge) << "\n";
    out << "trials = " << s.trials << "\n";
    out << "seed = " << s.seed << "\n";
    out << "grid_min_deg = " << detail::format_double(s.grid_min_deg) << "\n";
    out << "grid_max_deg = " << detail::format_double(s.grid_max_deg) << "\n";
    out << "grid_step_deg = " << detail::format_double(s.grid_step_deg) << "\n";
    out << "refine = " << (s.refine ? "true" : "false") << "\n";
    out << "block_fading = " << (s.block_fading ? "true" : "false") << "\n";
    out << "keep_spectra = " << (s.keep_spectra ? "true" : "false") << "\n";
    return out.str();
}

inline bool operator==(const Scenario& a, const Scenario& b) {
    return a.n_r == b.n_r && a.n_j == b.n_j && a.d_over_lambda == b.d_over_lambda &&
           a.theta_t_deg == b.theta_t_deg && a.theta_j_deg == b.theta_j_deg && a.k_t_db == b.k_t_db &&
           a.k_j_db == b.k_j_db && a.training_len == b.training_len && a.snr_db == b.snr_db &&
           a.power_ratio == b.power_ratio && a.p_t_max == b.p_t_max && a.jammer_mode == b.jammer_mode &&
           a.receiver_knowledge == b.receiver_knowledge && a.trials == b.trials && a.seed == b.seed &&
           a.grid_min_deg == b.grid_min_deg && a.grid_max_deg == b.grid_max_deg &&
           a.grid_step_deg == b.grid_step_deg && a.refine == b.refine && a.block_fading == b.block_fading &&
           a.keep_spectra == b.keep_spectra;
}

} // namespace aoajam
