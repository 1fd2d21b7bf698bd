#include "writer.hpp"

#include <weakoptics/cli.hpp>
#include <weakoptics/errors.hpp>

#include <fstream>
#include <iostream>
#include <sstream>

namespace weakoptics::cli {

namespace {

SampleRow row_from(const TransferSample& s) {
  return {s.omega, s.beta, s.t, s.abs_t, s.arg_t, s.group_delay, s.singular()};
}

void emit_samples(std::ostream& os, const RunPlan& plan, const std::vector<SampleRow>& rows,
                  const std::vector<std::string>& notes) {
  const std::string command = canonical_command(plan);
  if (plan.format == Format::json) {
    write_samples_json(os, command, notes, rows);
  } else {
    write_csv_preamble(os, command, notes);
    write_samples_csv(os, rows);
  }
}

void require_live(const std::vector<SampleRow>& rows) {
  for (const auto& r : rows) {
    if (!r.singular) return;
  }
  throw PostselectionNull("postselection null at every sample");
}

// Produces the complete output document in memory so that a failing run
// never leaves a truncated file behind.
std::string produce(const RunPlan& plan, std::ostream& err) {
  const DispersionModel model = plan.model();
  const SelectionPair pair = plan.pair();
  const DelayOptions opts{plan.method, plan.step, plan.singular_tol};
  std::ostringstream os;

  switch (plan.command) {
    case Command::contour: {
      const auto ws = plan.omega_range.values();
      const auto bs = plan.beta_range.values();
      const TransferGrid grid = contour_grid(model, ws, bs, pair, opts);
      std::vector<SampleRow> rows;
      rows.reserve(grid.samples.size());
      for (const auto& s : grid.samples) rows.push_back(row_from(s));
      require_live(rows);
      emit_samples(os, plan, rows, {"arg_t is the principal value in (-pi, pi]"});
      break;
    }
    case Command::spectrum: {
      const auto ws = plan.omega_range.values();
      const PhaseSpectrum spec = phase_spectrum(model, plan.beta, pair, ws, plan.singular_tol);
      const auto samples = sweep_frequency(model, plan.beta, ws, pair, opts);
      std::vector<SampleRow> rows;
      rows.reserve(samples.size());
      for (std::size_t i = 0; i < samples.size(); ++i) {
        SampleRow r = row_from(samples[i]);
        r.arg_t = spec.samples[i].phase;
        rows.push_back(r);
      }
      require_live(rows);
      std::vector<std::string> notes{"arg_t is the unwrapped phase delay; empty at singular samples"};
      if (spec.undersampled) {
        notes.emplace_back("warning: adjacent phase step >= 0.9 pi, frequency grid may be too coarse");
        err << "warning: adjacent phase step >= 0.9 pi, frequency grid may be too coarse\n";
      }
      emit_samples(os, plan, rows, notes);
      break;
    }
    case Command::angle_sweep: {
      const auto bs = plan.beta_range.values();
      std::vector<SampleRow> rows;
      for (const auto& s : sweep_angle(model, plan.omega, bs, pair, opts)) rows.push_back(row_from(s));
      require_live(rows);
      emit_samples(os, plan, rows, {"arg_t is the principal value in (-pi, pi]"});
      break;
    }
    case Command::pulse: {
      const PulseField input = gaussian_pulse(plan.grid, plan.sigma);
      const Propagation result = propagate(model, plan.beta, pair, input, plan.singular_tol);
      write_pulse_json(os, canonical_command(plan), plan.beta, plan.sigma, input, result);
      break;
    }
    case Command::singularities: {
      SingularitySearch search;
      search.omega_scan = plan.omega_range.count;
      search.beta_scan = plan.beta_range.count;
      search.tol = plan.tol;
      const auto found = find_singularities(model, {plan.omega_range.lo, plan.omega_range.hi},
                                            {plan.beta_range.lo, plan.beta_range.hi}, pair,
                                            search);
      if (plan.format == Format::json) {
        write_singularities_json(os, canonical_command(plan), found);
      } else {
        write_csv_preamble(os, canonical_command(plan), {});
        write_singularities_csv(os, found);
      }
      break;
    }
    case Command::estimate_beta: {
      const double beta =
          estimate_beta(model, plan.omega, pair, plan.tau, plan.bracket, plan.singular_tol);
      if (plan.format == Format::json) {
        write_estimate_json(os, canonical_command(plan), plan.omega, plan.tau, beta);
      } else {
        write_csv_preamble(os, canonical_command(plan), {});
        write_estimate_csv(os, plan.omega, plan.tau, beta);
      }
      break;
    }
  }
  return os.str();
}

}  // namespace

int execute(const RunPlan& plan, std::ostream& out, std::ostream& err) {
  std::string document;
  try {
    document = produce(plan, err);
  } catch (const PostselectionNull& e) {
    err << "error: " << e.what() << '\n';
    return kNullPostselection;
  } catch (const DataError& e) {
    err << "error: " << e.what() << '\n';
    return kIoError;
  } catch (const BadBracket& e) {
    err << "error: " << e.what() << '\n';
    return kUsage;
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << '\n';
    return kUsage;
  } catch (const std::out_of_range& e) {
    err << "error: " << e.what() << '\n';
    return kUsage;
  }

  if (plan.output_path.empty()) {
    out << document;
    out.flush();
    return out ? kOk : kIoError;
  }
  std::ofstream file(plan.output_path, std::ios::binary | std::ios::trunc);
  if (!file) {
    err << "error: cannot open '" << plan.output_path << "' for writing\n";
    return kIoError;
  }
  file << document;
  file.close();
  if (!file) {
    err << "error: failed writing '" << plan.output_path << "'\n";
    return kIoError;
  }
  return kOk;
}

int run(std::span<const std::string> args, std::ostream& out, std::ostream& err) {
  RunPlan plan;
  try {
    plan = parse(args);
  } catch (const HelpRequested& h) {
    out << h.what();
    return kOk;
  } catch (const UsageError& e) {
    err << "usage error: " << e.what() << '\n';
    return kUsage;
  }
  return execute(plan, out, err);
}

}  // namespace weakoptics::cli
