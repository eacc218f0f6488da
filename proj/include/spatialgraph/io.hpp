#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "spatialgraph/sampler.hpp"

namespace spatialgraph {

// `i<TAB>j<TAB>r` per line, 1-indexed, placement order.
void write_edges_tsv(const std::filesystem::path& path, const GraphSample& sample);
// Edge lengths (third column) of an edges file.
std::vector<double> read_edge_lengths(const std::filesystem::path& path);

// CSV `k,alpha,r,Z`.
void write_trace_csv(const std::filesystem::path& path, const std::vector<TraceRow>& trace);

struct RunMetadata {
  const GraphSample* sample;
  std::optional<double> C_estimate;
  std::optional<double> d_K;
  std::optional<double> wall_time_ms;
};

// JSON object, schema 1; missing values serialize as null.
std::string metadata_json(const RunMetadata& meta);

}  // namespace spatialgraph
