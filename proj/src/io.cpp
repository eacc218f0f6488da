#include "spatialgraph/io.hpp"

#include <fstream>
#include <json.hpp>

#include "spatialgraph/error.hpp"
#include "spatialgraph/format.hpp"

namespace spatialgraph {

void write_edges_tsv(const std::filesystem::path& path, const GraphSample& sample) {
  std::ofstream out(path);
  if (!out) throw InputError("cannot write edges file " + path.string());
  for (const auto& e : sample.edges) {
    out << (e.i + 1) << '\t' << (e.j + 1) << '\t' << format_double(e.r) << '\n';
  }
}

std::vector<double> read_edge_lengths(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot read edges file " + path.string());
  std::vector<double> lengths;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (trim(line).empty()) continue;
    const auto fields = split(trim(line), '\t');
    double r = 0.0;
    if (fields.size() != 3 || !parse_double(fields[2], r)) {
      throw InputError(path.string() + ":" + std::to_string(lineno) + ": expected i<TAB>j<TAB>r");
    }
    lengths.push_back(r);
  }
  return lengths;
}

void write_trace_csv(const std::filesystem::path& path, const std::vector<TraceRow>& trace) {
  std::ofstream out(path);
  if (!out) throw InputError("cannot write trace file " + path.string());
  out << "k,alpha,r,Z\n";
  for (const auto& t : trace) {
    out << t.k << ',' << format_double(t.alpha) << ',' << format_double(t.r) << ','
        << format_double(t.Z) << '\n';
  }
}

std::string metadata_json(const RunMetadata& meta) {
  auto optional_number = [](const std::optional<double>& v) -> nlohmann::ordered_json {
    if (v && std::isfinite(*v)) return *v;
    return nullptr;
  };
  const GraphSample& s = *meta.sample;
  nlohmann::ordered_json j;
  j["schema"] = 1;
  j["n"] = s.n;
  j["m"] = s.m;
  j["status"] = std::string(to_string(s.status));
  j["edges_placed"] = s.edges.size();
  j["gamma"] = s.gamma;
  j["seed"] = s.seed;
  j["C_estimate"] = optional_number(meta.C_estimate);
  j["d_K"] = optional_number(meta.d_K);
  j["wall_time_ms"] = optional_number(meta.wall_time_ms);
  return j.dump(2) + "\n";
}

}  // namespace spatialgraph
