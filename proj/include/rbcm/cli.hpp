// Command-line front end: configuration, report assembly and rendering.

#ifndef RBCM_CLI_HPP_
#define RBCM_CLI_HPP_

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "rbcm/closed_form.hpp"
#include "rbcm/perm_a5.hpp"
#include "rbcm/rbcm_search.hpp"

namespace rbcm::cli {

inline constexpr const char* kVersion = "1.0.0";

enum class Mode : std::uint8_t { closed_form, brute_force, cross_validate, a5, genus_atlas };
enum class OutputFormat : std::uint8_t { table, json, csv };

std::string to_string(Mode m);
std::string to_string(OutputFormat f);

struct RunConfig {
  std::vector<std::uint32_t> primes;
  std::vector<RbcmType> types{RbcmType::I, RbcmType::II};
  Mode mode = Mode::closed_form;
  OutputFormat format = OutputFormat::table;
  std::optional<std::string> output_path;
  unsigned jobs = 0;
};

/// Exit statuses.
inline constexpr int kExitAgree = 0;
inline constexpr int kExitDisagree = 1;
inline constexpr int kExitUsage = 2;

struct ClassRecord {
  std::uint32_t p = 0;
  std::string type;
  std::uint32_t valence = 0;
  std::string family;  // empty when no closed-form parameters are known
  std::string params;
  /// Matrix entries (matrix models) or cycle notation (permutation model).
  std::vector<std::uint32_t> sigma_entries, omega_entries;
  std::string sigma_cycles, omega_cycles;
  long genus = 0;
  std::size_t face_length = 0;
  std::size_t vertices = 0, edges = 0, faces = 0;
};

struct PrimeReport {
  std::uint32_t p = 0;
  std::uint32_t e = 0, w1 = 0, w2 = 0;
  bool permutation_model = false;
  std::vector<ClassRecord> classes;
  std::vector<Finding> findings;
  std::optional<ValidationReport> validation;
  std::vector<StepCheck> steps;
};

struct RunResult {
  std::vector<PrimeReport> reports;
  int exit_code = kExitAgree;
};

/// Thrown for invalid primes and bound violations; message is the diagnostic.
class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

RunResult run(const RunConfig& config);

/// Byte-stable rendering of a run in the configured format.
std::string render(const RunResult& result, const RunConfig& config);

/// Writes the payload to `path` (or `out` when absent); returns bytes
/// written. Throws std::runtime_error carrying the system error text.
std::size_t emit_report(const std::string& payload, const std::optional<std::string>& path, std::ostream& out);

/// Full command line handling; returns the exit status.
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace rbcm::cli

#endif  // RBCM_CLI_HPP_
