#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"

#include "fluxcat/errors.hpp"
#include "fluxcat/parallel.hpp"
#include "fluxcat/potential.hpp"
#include "fluxcat/spectrum.hpp"

namespace fluxcat {

enum class ExperimentKind { OverlapSweep, ExponentFit, Anderson, LemmaCheck, Energy, DirichletHilbert };

const char* to_string(ExperimentKind kind);

/// Malformed configuration; `issues` holds one diagnostic per offending field.
class ConfigError : public DomainError {
 public:
  explicit ConfigError(std::vector<std::string> issues);
  const std::vector<std::string>& issues() const noexcept { return issues_; }

 private:
  std::vector<std::string> issues_;
};

struct ExperimentConfig {
  ExperimentKind experiment = ExperimentKind::OverlapSweep;
  std::optional<MagneticPotential> potential;
  BoundaryCondition bc = BoundaryCondition::Periodic;
  double rho = 1.0;
  std::vector<int> n_grid;
  std::optional<double> delta_override;
  std::string output_path;
  std::map<std::string, double> tolerances;
  std::string hash;  // 16 hex digits, FNV-1a over the canonical JSON text

  double tolerance(const std::string& key) const;
};

/// FNV-1a 64 of doc.dump() (object keys are sorted, so the text is canonical).
std::string config_hash(const nlohmann::json& doc);

ExperimentConfig parse_config(const nlohmann::json& doc);
ExperimentConfig load_config(const std::filesystem::path& path);

struct RunOptions {
  std::optional<std::filesystem::path> out_dir;
  Execution exec = Execution::Parallel;
  std::ostream* log = nullptr;  // summary line; std::cout when null
};

struct RunOutcome {
  int exit_code = 0;
  std::string summary;
  std::vector<std::filesystem::path> files;
};

/// Exit codes: 0 success, 2 a property check failed, 1 configuration or numerical error.
inline constexpr int kExitOk = 0;
inline constexpr int kExitError = 1;
inline constexpr int kExitPropertyFailure = 2;

RunOutcome run(const ExperimentConfig& config, const RunOptions& opts = {});

/// Formats with 17 significant digits.
std::string format_real(double v);

}  // namespace fluxcat
