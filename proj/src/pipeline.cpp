#include "formfit/pipeline.hpp"

#include <algorithm>
#include <charconv>
#include <filesystem>
#include <fstream>
#include <future>
#include <map>
#include <tuple>

#include <fmt/format.h>
#include <json.hpp>

#include "formfit/errors.hpp"
#include "formfit/matching.hpp"
#include "formfit/pitch_svg.hpp"
#include "formfit/stability.hpp"
#include "formfit/tracking_io.hpp"

namespace fs = std::filesystem;

namespace formfit {

namespace {

constexpr int kOutfielders = 10;

struct StreamJob {
    std::string team_id;
    Phase phase = Phase::all;
    std::vector<Segment> segments;
};

struct StreamResult {
    Timeline timeline;
    std::size_t skipped = 0;
};

std::string sanitize(std::string_view text) {
    std::string out;
    out.reserve(text.size());
    for (const char c : text) {
        const bool ok = (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') ||
                        (c >= '0' && c <= '9') || c == '-' || c == '_';
        out.push_back(ok ? c : '_');
    }
    return out;
}

TeamObservation observation_of(const Segment& seg) {
    TeamObservation obs;
    obs.players.reserve(seg.mean_positions.size());
    for (const auto& [player, pos] : seg.mean_positions) obs.players.push_back({player, pos});
    return obs;
}

StreamResult process_stream(StreamJob job, const TemplateRegistry& registry,
                            const RunConfig& config) {
    StreamResult result;
    std::vector<std::pair<Segment, MatchResult>> fitted;
    fitted.reserve(job.segments.size());
    const Scaling scaling = config.scaling ? Scaling::on : Scaling::off;
    for (Segment& seg : job.segments) {
        apply_substitutions(seg, kOutfielders);
        const std::size_t count = seg.mean_positions.size();
        if (count < 8 || count > 10) {
            ++result.skipped;
            continue;
        }
        try {
            MatchResult match_result =
                config.formations.empty()
                    ? match(observation_of(seg), registry, scaling)
                    : match_restricted(observation_of(seg), registry, config.formations, scaling);
            fitted.emplace_back(std::move(seg), std::move(match_result));
        } catch (const NoTemplateError&) {
            // Restriction covers no template for this player count.
            ++result.skipped;
        }
    }
    result.timeline = stabilize(fitted, registry, config.epsilon,
                                config.change_after_possession, scaling);
    return result;
}

class OutputWriter {
public:
    explicit OutputWriter(fs::path dir) : dir_(std::move(dir)) {}

    void write(const fs::path& relative, std::string_view content) {
        const fs::path full = dir_ / relative;
        fs::create_directories(full.parent_path());
        std::ofstream out(full, std::ios::binary);
        if (!out) throw InvalidInputError(fmt::format("cannot open output file \"{}\"", full.string()));
        out.write(content.data(), static_cast<std::streamsize>(content.size()));
        out.flush();
        if (!out) throw InvalidInputError(fmt::format("failed writing \"{}\"", full.string()));
        written_.push_back(full);
    }

    void remove_written() {
        for (const fs::path& path : written_) {
            std::error_code ec;
            fs::remove(path, ec);
        }
        written_.clear();
    }

    std::vector<std::string> paths() const {
        std::vector<std::string> out;
        out.reserve(written_.size());
        for (const fs::path& p : written_) out.push_back(p.string());
        return out;
    }

private:
    fs::path dir_;
    std::vector<fs::path> written_;
};

nlohmann::json config_echo(const RunConfig& config) {
    nlohmann::json doc;
    doc["tracking"] = config.tracking_path;
    doc["meta"] = config.meta_path;
    doc["templates"] = config.templates_path ? *config.templates_path : "builtin";
    doc["formations"] = config.formations;
    doc["every"] = config.every;
    doc["substitutions"] = config.substitutions;
    doc["epsilon"] = config.epsilon;
    doc["change_after_possession"] = config.change_after_possession;
    doc["scaling"] = config.scaling;
    doc["split_phase"] = config.split_phase;
    doc["render"] = config.render;
    // out_dir and threads are execution details: outputs are byte-identical
    // across both, and the echo must reflect that.
    return doc;
}

}  // namespace

SegmentPolicy parse_every(const std::string& every) {
    if (every == "frame") return SegmentPolicy::frame();
    if (every == "possession") return SegmentPolicy::possession();
    if (every == "period") return SegmentPolicy::period();
    if (every.size() >= 2 && (every.back() == 's' || every.back() == 'm')) {
        const std::string_view digits{every.data(), every.size() - 1};
        std::int64_t value = 0;
        const char* first = digits.data();
        const char* last = digits.data() + digits.size();
        const auto [ptr, ec] = std::from_chars(first, last, value);
        if (ec == std::errc{} && ptr == last && value > 0) {
            return SegmentPolicy::duration(static_cast<double>(value) *
                                           (every.back() == 'm' ? 60.0 : 1.0));
        }
    }
    throw ConfigError(fmt::format(
        "invalid segmentation \"{}\": expected frame, possession, period, <n>s or <n>m", every));
}

RunSummary run_pipeline(const RunConfig& config) {
    const SegmentPolicy policy = parse_every(config.every);
    if (config.substitutions != "drop") {
        throw ConfigError(
            fmt::format("unsupported substitutions mode \"{}\" (only \"drop\")", config.substitutions));
    }
    if (config.epsilon < 0.0) {
        throw ConfigError(fmt::format("change threshold must be >= 0, got {}", config.epsilon));
    }
    if (config.threads < 1) {
        throw ConfigError(fmt::format("threads must be >= 1, got {}", config.threads));
    }
    if (config.out_dir.empty()) throw ConfigError("output directory is required");

    std::optional<TemplateRegistry> file_registry;
    if (config.templates_path) file_registry = TemplateRegistry::load_file(*config.templates_path);
    const TemplateRegistry& registry =
        file_registry ? *file_registry : TemplateRegistry::default_registry();
    for (const std::string& name : config.formations) {
        if (registry.find(name) == nullptr) {
            throw ConfigError(fmt::format("unknown formation \"{}\" in --formations", name));
        }
    }

    const MatchMeta meta = load_meta_file(config.meta_path);
    const std::vector<FrameRecord> records =
        normalize_orientation(parse_tracking_file(config.tracking_path, meta), meta);
    const std::vector<Segment> segments = segment(records, policy, config.split_phase);

    // One stability stream per (team, phase); segmentation output is already
    // chronological within each stream.
    std::map<std::pair<std::string, int>, StreamJob> jobs;
    for (const Segment& seg : segments) {
        auto& job = jobs[{seg.team_id, static_cast<int>(seg.phase)}];
        job.team_id = seg.team_id;
        job.phase = seg.phase;
        job.segments.push_back(seg);
    }

    std::vector<StreamJob> ordered_jobs;
    ordered_jobs.reserve(jobs.size());
    for (auto& [_, job] : jobs) ordered_jobs.push_back(std::move(job));

    std::vector<StreamResult> results(ordered_jobs.size());
    if (config.threads > 1 && ordered_jobs.size() > 1) {
        std::vector<std::future<StreamResult>> futures;
        futures.reserve(ordered_jobs.size());
        for (StreamJob& job : ordered_jobs) {
            futures.push_back(std::async(std::launch::async, process_stream, std::move(job),
                                         std::cref(registry), std::cref(config)));
        }
        for (std::size_t i = 0; i < futures.size(); ++i) results[i] = futures[i].get();
    } else {
        for (std::size_t i = 0; i < ordered_jobs.size(); ++i) {
            results[i] = process_stream(std::move(ordered_jobs[i]), registry, config);
        }
    }

    RunSummary summary;
    summary.segments_total = segments.size();

    std::string timeline_csv =
        "team_id,phase,period,start_frame,end_frame,frame_count,adopted_formation,"
        "candidate_formation,candidate_cost,incumbent_cost\n";
    std::string labels_csv =
        "team_id,phase,period,start_frame,end_frame,player_id,position_label\n";
    std::vector<std::pair<std::string, std::string>> svg_files;  // name, content

    for (const StreamResult& result : results) {
        summary.segments_skipped += result.skipped;
        for (const TimelineEntry& entry : result.timeline.entries) {
            ++summary.segments_matched;
            const Segment& seg = entry.segment;
            fmt::format_to(std::back_inserter(timeline_csv), "{},{},{},{},{},{},{},{},{:.6f},{}\n",
                           seg.team_id, phase_name(seg.phase), seg.period, seg.start_frame,
                           seg.end_frame, seg.frame_count, entry.adopted_formation,
                           entry.candidate_formation, entry.candidate_cost,
                           entry.incumbent_cost ? fmt::format("{:.6f}", *entry.incumbent_cost)
                                                : std::string());
            for (const auto& [player, label] : entry.adopted_labels) {
                fmt::format_to(std::back_inserter(labels_csv), "{},{},{},{},{},{},{}\n",
                               seg.team_id, phase_name(seg.phase), seg.period, seg.start_frame,
                               seg.end_frame, player, label);
            }
            if (config.render) {
                MatchResult adopted;
                adopted.formation_name = entry.adopted_formation;
                adopted.labels = entry.adopted_labels;
                adopted.cost = entry.adopted_formation == entry.candidate_formation
                                   ? entry.candidate_cost
                                   : entry.incumbent_cost.value_or(entry.candidate_cost);
                RenderSpec spec;
                spec.pitch_length = meta.pitch_length;
                spec.pitch_width = meta.pitch_width;
                svg_files.emplace_back(
                    fmt::format("render/{}_{}_p{}_f{}-{}.svg", sanitize(seg.team_id),
                                phase_name(seg.phase), seg.period, seg.start_frame, seg.end_frame),
                    render_match(seg, adopted, registry, spec));
            }
        }
    }

    OutputWriter writer{fs::path(config.out_dir)};
    try {
        writer.write("timeline.csv", timeline_csv);
        writer.write("labels.csv", labels_csv);
        writer.write("config.json", config_echo(config).dump(2) + "\n");
        for (const auto& [name, content] : svg_files) writer.write(name, content);
    } catch (...) {
        writer.remove_written();
        throw;
    }
    summary.output_files = writer.paths();
    return summary;
}

}  // namespace formfit
