#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "formfit/segmentation.hpp"

namespace formfit {

/// Batch run configuration; mirrors the CLI surface.
struct RunConfig {
    std::string tracking_path;
    std::string meta_path;
    std::optional<std::string> templates_path;  // absent: built-in catalog
    std::vector<std::string> formations;        // empty: whole catalog
    std::string every = "period";               // frame|possession|period|<n>s|<n>m
    std::string substitutions = "drop";
    double epsilon = 0.0;
    bool change_after_possession = false;
    bool scaling = true;
    bool split_phase = true;
    bool render = false;
    int threads = 1;
    std::string out_dir;
};

struct RunSummary {
    std::size_t segments_total = 0;
    std::size_t segments_matched = 0;
    std::size_t segments_skipped = 0;  // unusable player count or no allowed template
    std::vector<std::string> output_files;
};

/// Parses the `every` value ("frame", "possession", "period", "10s", "5m").
SegmentPolicy parse_every(const std::string& every);

/// Runs ingest -> segmentation -> matching -> stability and writes the
/// timeline, label and config files (plus SVGs when requested) into
/// `config.out_dir`. Files created by a failing run are removed before the
/// error propagates.
RunSummary run_pipeline(const RunConfig& config);

}  // namespace formfit
