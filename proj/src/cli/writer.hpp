#pragma once

#include <weakoptics/pulse.hpp>
#include <weakoptics/weakmeas.hpp>

#include <optional>
#include <ostream>
#include <string>
#include <vector>

namespace weakoptics::cli {

/// One line of the contour/spectrum/angle-sweep tables.
struct SampleRow {
  double omega;
  double beta;
  Complexd t;
  double abs_t;
  std::optional<double> arg_t;
  std::optional<double> group_delay;
  bool singular;
};

std::string format_number(double v);

/// Header comment lines shared by all CSV outputs.
void write_csv_preamble(std::ostream& os, const std::string& command,
                        const std::vector<std::string>& notes);

void write_samples_csv(std::ostream& os, const std::vector<SampleRow>& rows);
void write_samples_json(std::ostream& os, const std::string& command,
                        const std::vector<std::string>& notes, const std::vector<SampleRow>& rows);

void write_singularities_csv(std::ostream& os, const std::vector<Singularity>& s);
void write_singularities_json(std::ostream& os, const std::string& command,
                              const std::vector<Singularity>& s);

void write_estimate_csv(std::ostream& os, double omega, double tau, double beta);
void write_estimate_json(std::ostream& os, const std::string& command, double omega, double tau,
                         double beta);

void write_pulse_json(std::ostream& os, const std::string& command, double beta, double sigma,
                      const PulseField& input, const Propagation& result);

}  // namespace weakoptics::cli
