#pragma once

// Parallel census sweeps over a prime range, persisted as CSV (or JSON lines)
// in ascending p with resumable checkpoints.

#include <cstdint>
#include <filesystem>
#include <functional>
#include <optional>
#include <string>

#include "fermat_lab/counting.hpp"

namespace fermat_lab {

enum class OutputFormat { Csv, Jsonl };

struct SweepConfig {
    u64 lo = 3;  // inclusive
    u64 hi = 3;  // exclusive
    std::optional<CountMode> mode;  // unset: default_mode(p) per prime
    QuotientBacking backing = QuotientBacking::Table;
    unsigned workers = 1;
    std::filesystem::path output_path;
    std::optional<std::filesystem::path> checkpoint_path;
    bool include_wieferich = true;
    bool record_timing = true;  // when false, elapsed is written as 0
    OutputFormat format = OutputFormat::Csv;

    // Stop after this many records have been written in this run; used to
    // exercise resume.
    std::optional<u64> stop_after;
};

void validate(const SweepConfig& config);

/// Digest of every field that affects the output bytes (not workers).
std::string config_hash(const SweepConfig& config);

struct Checkpoint {
    u64 last_completed_p = 0;
    u64 records_written = 0;
    std::string config_hash;
};

Checkpoint read_checkpoint(const std::filesystem::path& path);
void write_checkpoint(const std::filesystem::path& path, const Checkpoint& cp);

inline constexpr u64 kCheckpointEvery = 256;

struct SweepSummary {
    u64 records_written = 0;   // total in the output file
    u64 records_this_run = 0;
    bool resumed = false;
    bool complete = false;
    double elapsed = 0.0;
};

/// Runs (or resumes) a sweep. on_record sees each record as it is written.
SweepSummary sweep(const SweepConfig& config,
                   const std::function<void(const CountRecord&)>& on_record = {});

}  // namespace fermat_lab
