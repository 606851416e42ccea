#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "json.hpp"
#include "uls/gridfield.hpp"
#include "uls/solver.hpp"

namespace uls {

inline constexpr const char* kConfigSchema = "v1";

using Field = std::variant<TrigPoly, GridField>;

// Data spec forms:
//   {"kind": "trig", "generators": [...], "terms": [{"n": [...], "re": .., "im": ..}]}
//   {"kind": "grid", "L": .., "n": .., "random": {"seed", "band": [lo, hi], "law",
//    "exponent", "scale", "wiener"}}
//   {"kind": "grid", "L": .., "n": .., "from_trig": {trig spec}}
//   {"kind": "grid", "path": "dump.bin"}
// A bare trig polynomial (no "kind") is accepted.
Field field_from_json(const nlohmann::json& j, std::uint64_t seed = 0);

struct RunConfig {
  nlohmann::json raw;
  std::uint64_t seed = 0;
  EquationSpec eq;
  nlohmann::json data;
  SolveConfig solve;
  std::optional<Dyadic> M;  // Galerkin level; defaults to 64 when Q != 0
  NormOptions norms;
  SupOptions sup;
  double envelope_delta = 0.1;
  std::string out_dir = ".";
  std::string prefix = "run";

  std::string hash() const;
};

// Throws InvalidArgument on a malformed config or a schema other than "v1".
RunConfig parse_config(const nlohmann::json& j);
RunConfig load_config(const std::string& path);

nlohmann::json norm_options_to_json(const NormOptions& o);
NormOptions norm_options_from_json(const nlohmann::json& j);
SolveConfig solve_config_from_json(const nlohmann::json& j);

// FNV-1a 64 of the canonical (sorted-key, compact) dump, as 16 hex digits.
std::string config_hash(const nlohmann::json& j);

// CSV with a leading "# config_hash=<hash> <tag>" comment line.
class CsvWriter {
 public:
  CsvWriter(const std::string& path, const std::string& hash, const std::string& tag,
            const std::vector<std::string>& columns);
  void row(const std::vector<double>& values);
  void row(const std::vector<std::string>& values);
  void close();

 private:
  std::string path_;
  std::string buf_;
  std::size_t ncol_;
};

struct CsvTable {
  std::vector<std::string> comments;
  std::vector<std::string> columns;
  std::vector<std::vector<double>> rows;
  std::vector<double> column(const std::string& name) const;
};

CsvTable read_csv(const std::string& path);

struct PlotSpec {
  std::string x;
  std::vector<std::string> y;
  bool logx = false;
  bool logy = false;
  bool fit = false;  // least-squares line per series, in plotted coordinates
  std::string title;
};

// Static SVG line chart of the chosen columns. Throws InvalidArgument on an
// unknown column.
std::string render_svg(const CsvTable& t, const PlotSpec& spec, const std::string& hash);

}  // namespace uls
