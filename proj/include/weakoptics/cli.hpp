#pragma once

#include <weakoptics/crystal.hpp>
#include <weakoptics/pulse.hpp>
#include <weakoptics/weakmeas.hpp>

#include <iosfwd>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace weakoptics::cli {

enum class Command { contour, spectrum, angle_sweep, pulse, singularities, estimate_beta };
enum class Format { csv, json };

const char* command_name(Command c);

/// Exit statuses of the command-line tool.
enum ExitCode : int { kOk = 0, kIoError = 1, kUsage = 2, kNullPostselection = 3 };

class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// --help was given; what() carries the help text.
class HelpRequested : public UsageError {
 public:
  using UsageError::UsageError;
};

/// Inclusive sweep `lo:hi:count`.
struct Range {
  double lo = 0.0;
  double hi = 0.0;
  std::size_t count = 2;

  std::vector<double> values() const;
  bool operator==(const Range&) const = default;
};

/// Polarization selection as given on the command line: a basis label or a
/// linear-polarization angle in radians.
struct StateSpec {
  std::string label = "V";
  std::optional<double> angle;

  PolarizationState resolve() const;
  bool operator==(const StateSpec&) const = default;
};

/// Fully resolved parameters of one invocation. Angles are stored in radians.
struct RunPlan {
  Command command = Command::contour;

  LinearDispersion linear;
  std::optional<std::string> dispersion_file;

  StateSpec pre;
  StateSpec post;

  Range omega_range;
  Range beta_range;
  double omega = 1.0;
  double beta = 0.0;

  DelayMethod method = DelayMethod::analytic;
  double step = kDefaultDiffStep;
  double singular_tol = kDefaultSingularTol;
  double tol = kDefaultSingularTol;

  SpectralGrid grid;
  double sigma = 0.005;

  double tau = 0.0;
  Interval bracket;

  std::string output_path;  ///< empty: standard output
  Format format = Format::csv;

  DispersionModel model() const;
  SelectionPair pair() const { return {pre.resolve(), post.resolve()}; }
};

/// Splits `lo:hi:count` (or `lo:hi` when count_required is false).
Range parse_range(const std::string& text, bool count_required = true);

/// Parses the token list (without the program name). A `--config file.json`
/// option supplies defaults that explicit flags override. Throws UsageError.
RunPlan parse(std::span<const std::string> args);

/// Tokens that reproduce `plan` exactly when handed back to parse().
std::vector<std::string> canonical_args(const RunPlan& plan);

/// Shell-style rendering of canonical_args, prefixed with the tool name.
std::string canonical_command(const RunPlan& plan);

/// Runs the plan, writing to plan.output_path or `out`. Diagnostics go to `err`.
int execute(const RunPlan& plan, std::ostream& out, std::ostream& err);

/// parse + execute with exit-status mapping; the tool's main().
int run(std::span<const std::string> args, std::ostream& out, std::ostream& err);

/// Splits a shell-style command line (single quotes only).
std::vector<std::string> split_command(const std::string& line);

}  // namespace weakoptics::cli
