#include "writer.hpp"

#include <json.hpp>

#include <cmath>
#include <cstdio>

namespace weakoptics::cli {

namespace {

// JSON strings are escaped by nlohmann; numbers are printed here so that
// every value carries exactly 17 significant digits.
std::string quote(const std::string& s) { return nlohmann::json(s).dump(); }

std::string jnum(double v) { return std::isfinite(v) ? format_number(v) : "null"; }

std::string jopt(const std::optional<double>& v) { return v ? jnum(*v) : "null"; }

void json_array(std::ostream& os, const Eigen::VectorXd& v) {
  os << '[';
  for (Eigen::Index i = 0; i < v.size(); ++i) {
    if (i) os << ',';
    os << jnum(v[i]);
  }
  os << ']';
}

}  // namespace

std::string format_number(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

void write_csv_preamble(std::ostream& os, const std::string& command,
                        const std::vector<std::string>& notes) {
  os << "# " << command << '\n';
  for (const auto& n : notes) os << "# " << n << '\n';
}

void write_samples_csv(std::ostream& os, const std::vector<SampleRow>& rows) {
  os << "omega,beta,re_t,im_t,abs_t,arg_t,group_delay,singular\n";
  for (const auto& r : rows) {
    os << format_number(r.omega) << ',' << format_number(r.beta) << ','
       << format_number(r.t.real()) << ',' << format_number(r.t.imag()) << ','
       << format_number(r.abs_t) << ',' << (r.arg_t ? format_number(*r.arg_t) : "") << ','
       << (r.group_delay ? format_number(*r.group_delay) : "") << ','
       << (r.singular ? "true" : "false") << '\n';
  }
}

void write_samples_json(std::ostream& os, const std::string& command,
                        const std::vector<std::string>& notes,
                        const std::vector<SampleRow>& rows) {
  os << "{\"command\":" << quote(command) << ",\"notes\":[";
  for (std::size_t i = 0; i < notes.size(); ++i) os << (i ? "," : "") << quote(notes[i]);
  os << "],\"samples\":[";
  for (std::size_t i = 0; i < rows.size(); ++i) {
    const auto& r = rows[i];
    os << (i ? ",\n" : "\n") << "{\"omega\":" << jnum(r.omega) << ",\"beta\":" << jnum(r.beta)
       << ",\"re_t\":" << jnum(r.t.real()) << ",\"im_t\":" << jnum(r.t.imag())
       << ",\"abs_t\":" << jnum(r.abs_t) << ",\"arg_t\":" << jopt(r.arg_t)
       << ",\"group_delay\":" << jopt(r.group_delay)
       << ",\"singular\":" << (r.singular ? "true" : "false") << '}';
  }
  os << "\n]}\n";
}

void write_singularities_csv(std::ostream& os, const std::vector<Singularity>& s) {
  os << "omega,beta,residual_abs_t\n";
  for (const auto& p : s) {
    os << format_number(p.omega) << ',' << format_number(p.beta) << ','
       << format_number(p.residual_abs_t) << '\n';
  }
}

void write_singularities_json(std::ostream& os, const std::string& command,
                              const std::vector<Singularity>& s) {
  os << "{\"command\":" << quote(command) << ",\"singularities\":[";
  for (std::size_t i = 0; i < s.size(); ++i) {
    os << (i ? ",\n" : "\n") << "{\"omega\":" << jnum(s[i].omega)
       << ",\"beta\":" << jnum(s[i].beta) << ",\"residual_abs_t\":" << jnum(s[i].residual_abs_t)
       << '}';
  }
  os << "\n]}\n";
}

void write_estimate_csv(std::ostream& os, double omega, double tau, double beta) {
  os << "omega,tau,beta\n"
     << format_number(omega) << ',' << format_number(tau) << ',' << format_number(beta) << '\n';
}

void write_estimate_json(std::ostream& os, const std::string& command, double omega, double tau,
                         double beta) {
  os << "{\"command\":" << quote(command) << ",\"omega\":" << jnum(omega)
     << ",\"tau\":" << jnum(tau) << ",\"beta\":" << jnum(beta) << "}\n";
}

void write_pulse_json(std::ostream& os, const std::string& command, double beta, double sigma,
                      const PulseField& input, const Propagation& result) {
  const SpectralGrid& g = input.grid();
  const PropagationReport& r = result.report;
  os << "{\"command\":" << quote(command) << ",\n\"grid\":{\"n\":" << g.n
     << ",\"omega_center\":" << jnum(g.omega_center) << ",\"omega_span\":" << jnum(g.omega_span)
     << ",\"d_omega\":" << jnum(g.d_omega()) << ",\"time_step\":" << jnum(g.d_t())
     << ",\"t0\":" << jnum(g.time(0)) << "},\n\"beta\":" << jnum(beta)
     << ",\"sigma_omega\":" << jnum(sigma) << ",\n\"report\":{\"peak_shift\":"
     << jnum(r.peak_shift) << ",\"centroid_shift\":" << jnum(r.centroid_shift)
     << ",\"energy_transmission\":" << jnum(r.energy_transmission)
     << ",\"predicted_group_delay\":" << jopt(r.predicted_group_delay)
     << "},\n\"input_intensity\":";
  json_array(os, input.intensity());
  os << ",\n\"output_intensity\":";
  json_array(os, result.output.intensity());
  os << "}\n";
}

}  // namespace weakoptics::cli
