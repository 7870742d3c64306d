// Command-line front end: run one episode, sweep seeds, or replay a log as frames.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "wildfire/config_io.hpp"
#include "wildfire/engine.hpp"
#include "wildfire/logfile.hpp"
#include "wildfire/render_png.hpp"

namespace fs = std::filesystem;
using namespace wildfire;

namespace {

struct ModelFlags {
    std::string config_path;
    std::map<std::string, std::string> overrides;
    std::optional<int> ignition, persistence, efficiency;

    void attach(CLI::App& app) {
        app.add_option("--config", config_path, "flat key: value config file")->check(CLI::ExistingFile);
        for (const auto key : config_keys) {
            std::string flag = "--" + std::string(key);
            for (auto& ch : flag)
                if (ch == '_') ch = '-';
            const std::string k(key);
            app.add_option_function<std::string>(flag, [this, k](const std::string& v) { overrides[k] = v; },
                                                 "overrides config key " + k);
        }
        app.add_option("--ignition", ignition, "slider l in [0,10]: alpha0 = 1 - l/10");
        app.add_option("--persistence", persistence, "slider p in [0,10]: beta = p/10");
        app.add_option("--efficiency", efficiency, "slider e in [0,10]: zeta = e/10");
    }

    // Precedence: defaults < config file < sliders < explicit key flags.
    Config resolve() const {
        Config c;
        if (!config_path.empty()) {
            std::ifstream in(config_path);
            std::stringstream ss;
            ss << in.rdbuf();
            c = parse_config(ss.str());
        }
        if (ignition || persistence || efficiency) {
            const Config base = c;
            const auto s = map_slider_params(ignition.value_or(static_cast<int>(std::lround((1.0 - base.fire.alpha0) * 10))),
                                             persistence.value_or(static_cast<int>(std::lround(base.fire.beta * 10))),
                                             efficiency.value_or(static_cast<int>(std::lround(base.fire.zeta * 10))));
            if (ignition) c.fire.alpha0 = s.alpha0;
            if (persistence) c.fire.beta = s.beta;
            if (efficiency) c.fire.zeta = s.zeta;
        }
        return apply_overrides(c, overrides);
    }
};

struct FrameFlags {
    std::string dir;
    std::string format;
    int scale = 8;

    void attach(CLI::App& app) {
        app.add_option("--frames", dir, "write one frame per forest update into DIR");
        app.add_option("--format", format, "frame format")->check(CLI::IsMember({"png", "ascii"}));
        app.add_option("--scale", scale, "PNG pixels per cell")->check(CLI::Range(1, 64));
    }

    // Frames are written when --frames is given or the config asks for an output format.
    std::optional<RenderOptions> options(const Config& c) const {
        RenderOptions o;
        o.scale = scale;
        if (!format.empty()) o.format = format == "png" ? FrameFormat::png : FrameFormat::ascii;
        else if (c.output != FrameFormat::none) o.format = c.output;
        else if (dir.empty()) return std::nullopt;
        return o;
    }

    fs::path directory() const { return dir.empty() ? fs::path("frames") : fs::path(dir); }
};

EpisodeHooks frame_writer(const std::optional<RenderOptions>& opts, const fs::path& dir, std::size_t& written) {
    EpisodeHooks hooks;
    if (!opts) return hooks;
    fs::create_directories(dir);
    hooks.on_macro_step = [opts, dir, &written](const ForestState& forest, std::span<const AgentState> agents) {
        char name[32];
        std::snprintf(name, sizeof name, "frame_%05llu.%s", static_cast<unsigned long long>(forest.t),
                      opts->format == FrameFormat::png ? "png" : "txt");
        std::ofstream out(dir / name, std::ios::binary);
        out << render_frame(forest, agents, *opts);
        if (!out) throw std::runtime_error("cannot write frame " + (dir / name).string());
        ++written;
    };
    return hooks;
}

void print_census_line(const StepRecord& r) {
    const auto& c = r.census;
    std::printf("t=%llu healthy=%zu afire=%zu burnt=%zu ext=%zu nonflam=%zu cost=%.6g\n",
                static_cast<unsigned long long>(r.t), c.n_healthy, c.n_afire, c.n_burnt, c.n_ext, c.n_nonflam,
                r.cost);
}

std::vector<std::uint64_t> parse_seed_list(const std::string& text) {
    std::vector<std::uint64_t> out;
    std::stringstream ss(text);
    for (std::string part; std::getline(ss, part, ',');) {
        const auto dash = part.find('-');
        if (dash == std::string::npos) {
            out.push_back(std::stoull(part));
        } else {
            const auto lo = std::stoull(part.substr(0, dash));
            const auto hi = std::stoull(part.substr(dash + 1));
            if (hi < lo) throw std::invalid_argument("bad seed range " + part);
            for (auto s = lo; s <= hi; ++s) out.push_back(s);
        }
    }
    return out;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Wildfire firefighting simulator"};
    app.require_subcommand(1);

    auto* run = app.add_subcommand("run", "simulate one episode");
    ModelFlags run_model;
    FrameFlags run_frames;
    std::uint64_t episode = 0;
    std::string log_dir = ".";
    bool quiet = false;
    run_model.attach(*run);
    run_frames.attach(*run);
    run->add_option("--episode", episode, "episode seed (mixed with the master seed)");
    run->add_option("--log-dir", log_dir, "directory for the log file when logfile is true");
    run->add_flag("--quiet", quiet, "print only the final record");

    auto* batch = app.add_subcommand("batch", "run a seed sweep and report final-cost statistics");
    ModelFlags batch_model;
    std::string seeds_spec;
    int runs = 0;
    unsigned threads = 0;
    batch_model.attach(*batch);
    auto* seeds_opt = batch->add_option("--seeds", seeds_spec, "episode seeds, e.g. 1-200 or 1,5,9");
    batch->add_option("--runs", runs, "shorthand for --seeds 1-K")->excludes(seeds_opt);
    batch->add_option("--threads", threads, "worker threads (0 = hardware)");

    auto* render = app.add_subcommand("render", "replay a log file into frames");
    std::string log_path;
    FrameFlags render_frames;
    render->add_option("log", log_path, "episode log (CSV)")->required()->check(CLI::ExistingFile);
    render_frames.attach(*render);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        // help and version keep CLI11's exit code 0; usage errors share exit 2
        return app.exit(e) == 0 ? 0 : 2;
    }

    try {
        if (run->parsed()) {
            const Config cfg = run_model.resolve();
            const auto started = std::chrono::system_clock::now();
            std::size_t written = 0;
            const auto hooks = frame_writer(run_frames.options(cfg), run_frames.directory(), written);
            const EpisodeLog log = run_episode(cfg, episode, hooks);
            if (quiet) {
                print_census_line(log.records.back());
            } else {
                for (const auto& r : log.records) print_census_line(r);
            }
            std::printf("termination: %s\n", to_string(log.termination));
            if (!log.deviations.empty()) std::printf("agent deviations: %zu\n", log.deviations.size());
            if (written) std::printf("frames: %zu in %s\n", written, run_frames.directory().c_str());
            if (cfg.logfile) {
                fs::create_directories(log_dir);
                std::printf("log: %s\n", write_logfile(log, started, log_dir).c_str());
            }
        } else if (batch->parsed()) {
            const Config cfg = batch_model.resolve();
            std::vector<std::uint64_t> seeds;
            if (runs > 0) {
                for (int s = 1; s <= runs; ++s) seeds.push_back(static_cast<std::uint64_t>(s));
            } else if (!seeds_spec.empty()) {
                seeds = parse_seed_list(seeds_spec);
            } else {
                throw std::invalid_argument("batch needs --seeds or --runs");
            }
            const BatchReport report = run_batch(cfg, seeds, threads);
            std::printf("seed,final_cost,length,n_healthy,n_afire,n_burnt,n_ext,n_nonflam\n");
            for (const auto& e : report.episodes) {
                const auto& c = e.final_census;
                std::printf("%llu,%.17g,%llu,%zu,%zu,%zu,%zu,%zu\n", static_cast<unsigned long long>(e.seed),
                            e.final_cost, static_cast<unsigned long long>(e.length), c.n_healthy, c.n_afire,
                            c.n_burnt, c.n_ext, c.n_nonflam);
            }
            std::printf("# episodes=%zu mean=%.6f sd=%.6f min=%.6f max=%.6f mean_length=%.3f\n",
                        report.episodes.size(), report.mean_cost, report.stddev_cost, report.min_cost,
                        report.max_cost, report.mean_length);
        } else if (render->parsed()) {
            std::ifstream in(log_path);
            std::stringstream ss;
            ss << in.rdbuf();
            const ParsedLog parsed = parse_log(ss.str());
            auto opts = render_frames.options(parsed.config);
            if (!opts) opts = RenderOptions{FrameFormat::ascii, render_frames.scale};
            std::size_t written = 0;
            const auto hooks = frame_writer(opts, render_frames.directory(), written);
            const EpisodeLog replay = run_episode(parsed.config, parsed.seed, hooks);
            std::istringstream body(format_log(replay));
            std::vector<std::string> lines;
            for (std::string l; std::getline(body, l);)
                if (!l.empty() && l[0] != '#' && l != log_columns) lines.push_back(l);
            bool match = lines.size() == parsed.rows.size();
            for (std::size_t i = 0; match && i < lines.size(); ++i) {
                std::string joined;
                for (std::size_t f = 0; f < parsed.rows[i].size(); ++f) joined += (f ? "," : "") + parsed.rows[i][f];
                match = joined == lines[i];
            }
            if (!match) {
                std::fprintf(stderr, "replay does not reproduce the log; frames may not match it\n");
                return 1;
            }
            std::printf("frames: %zu in %s (replay verified against %zu records)\n", written,
                        render_frames.directory().c_str(), lines.size());
        }
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 2;
    }
    return 0;
}
