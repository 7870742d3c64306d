#pragma once

#include <chrono>
#include <ctime>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "config_io.hpp"
#include "engine.hpp"

namespace wildfire {

inline constexpr const char* log_columns = "t,n_healthy,n_afire,n_burnt,n_ext,n_nonflam,cost,retardant_count";

/// CSV body with a commented config header. Pure: no clock involved.
inline std::string format_log(const EpisodeLog& log) {
    std::ostringstream out;
    out << "# wildfire episode log\n";
    std::istringstream cfg(serialize_config(log.config));
    for (std::string line; std::getline(cfg, line);) out << "# " << line << '\n';
    out << "# episode_seed: " << log.seed << '\n';
    out << "# termination: " << to_string(log.termination) << '\n';
    out << log_columns << '\n';
    for (const auto& r : log.records) {
        const auto& c = r.census;
        out << r.t << ',' << c.n_healthy << ',' << c.n_afire << ',' << c.n_burnt << ',' << c.n_ext << ','
            << c.n_nonflam << ',' << detail::format_double(r.cost) << ',' << r.retardant_count << '\n';
    }
    return out.str();
}

/// YYYYMMDD-HHMMSS in UTC.
inline std::string log_timestamp(std::chrono::system_clock::time_point when) {
    const std::time_t tt = std::chrono::system_clock::to_time_t(when);
    std::tm tm{};
    gmtime_r(&tt, &tm);
    char buf[32];
    std::strftime(buf, sizeof buf, "%Y%m%d-%H%M%S", &tm);
    return buf;
}

/// Writes the log into `dir` as <timestamp>.csv, adding -1, -2, ... on collision.
inline std::filesystem::path write_logfile(const EpisodeLog& log, std::chrono::system_clock::time_point started,
                                           const std::filesystem::path& dir = ".") {
    namespace fs = std::filesystem;
    const std::string stem = log_timestamp(started);
    fs::path path = dir / (stem + ".csv");
    for (int k = 1; fs::exists(path); ++k) path = dir / (stem + "-" + std::to_string(k) + ".csv");
    std::ofstream file(path, std::ios::binary);
    if (!file) throw std::runtime_error("cannot open log file " + path.string());
    file << format_log(log);
    if (!file.flush()) throw std::runtime_error("failed writing log file " + path.string());
    return path;
}

/// Contents of a log file as needed for replay.
struct ParsedLog {
    Config config;
    std::uint64_t seed = 0;
    std::vector<std::vector<std::string>> rows;  // data rows split on ','
};

inline ParsedLog parse_log(const std::string& text) {
    ParsedLog out;
    std::string yaml;
    bool have_seed = false;
    bool header_seen = false;
    std::istringstream in(text);
    for (std::string line; std::getline(in, line);) {
        if (line.rfind("# ", 0) == 0) {
            const std::string body = line.substr(2);
            if (body.rfind("episode_seed: ", 0) == 0) {
                out.seed = detail::parse_number<std::uint64_t>("episode_seed", body.substr(14));
                have_seed = true;
            } else if (body.find(": ") != std::string::npos && body.rfind("termination", 0) != 0) {
                yaml += body + '\n';
            }
            continue;
        }
        if (line == log_columns) {
            header_seen = true;
            continue;
        }
        if (line.empty()) continue;
        std::vector<std::string> fields;
        std::istringstream row(line);
        for (std::string f; std::getline(row, f, ',');) fields.push_back(f);
        out.rows.push_back(std::move(fields));
    }
    if (!header_seen || !have_seed) throw std::runtime_error("not an episode log (missing header or episode_seed)");
    out.config = parse_config(yaml);
    return out;
}

}  // namespace wildfire
