#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "bd/sampler.hpp"

namespace bd {

constexpr int kSchemaVersion = 1;

// On-disk form of one centered sample (JSONL, one record per line).
struct SampleRecord {
    int schema_version = kSchemaVersion;
    int d = 1;
    int box_n = 0;
    std::string mode;  // "geometric" | "exponential" | "cesaro"
    double param = 0.0;
    std::uint64_t replica = 0;
    std::uint64_t derived_seed = 0;
    std::uint64_t n_updates = 0;
    double elapsed = 0.0;
    int window = 0;
    Height raw_origin = 0;
    std::vector<Height> heights;  // (2W+1)^d, canonical order, origin entry 0
};

std::string to_json_line(const SampleRecord& rec);
SampleRecord sample_record_from_json(const std::string& line);

SampleRecord make_record(const CenteredSample& s, SamplerMode mode,
                         double param, std::uint64_t replica,
                         std::uint64_t derived_seed);
CenteredSample sample_from_record(const SampleRecord& rec);

std::string mode_name(SamplerMode mode);
SamplerMode mode_from_name(const std::string& name);

// Checkpoint for the discrete chain: heights + step counter + engine state.
struct Checkpoint {
    int schema_version = kSchemaVersion;
    int d = 1;
    int box_n = 0;
    std::uint64_t step = 0;
    std::string rng_state;
    std::vector<Height> heights;
};

void write_checkpoint(const std::string& path, const Checkpoint& cp);
std::optional<Checkpoint> read_checkpoint(const std::string& path);

// One header row, numeric columns.
void write_csv(std::ostream& os, const std::vector<std::string>& header,
               const std::vector<std::vector<double>>& rows);

}  // namespace bd
