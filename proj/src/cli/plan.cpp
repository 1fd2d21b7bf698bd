#include <weakoptics/cli.hpp>
#include <weakoptics/errors.hpp>

#include <CLI11.hpp>
#include <json.hpp>

#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <numbers>

namespace weakoptics::cli {

namespace {

constexpr double kDeg = std::numbers::pi / 180.0;

std::string num(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

bool to_double(std::string_view s, double& out) {
  if (!s.empty() && s.front() == '+') s.remove_prefix(1);
  const char* end = s.data() + s.size();
  auto [ptr, ec] = std::from_chars(s.data(), end, out);
  return !s.empty() && ec == std::errc() && ptr == end && std::isfinite(out);
}

double parse_value(const std::string& flag, const std::string& text) {
  double v = 0.0;
  if (!to_double(text, v)) throw UsageError(flag + ": expected a number, got '" + text + "'");
  return v;
}

// Every option a subcommand may carry, bound as text or number before
// interpretation (units, range syntax) happens.
struct RawOptions {
  double tau_te = LinearDispersion{}.tau_te;
  double tau_tm = LinearDispersion{}.tau_tm;
  double phi0_te = 0.0;
  double phi0_tm = 0.0;
  std::string dispersion_file;
  std::string pre = "V";
  std::string post = "V";
  double pre_angle = 0.0;
  double post_angle = 0.0;
  bool degrees = false;
  std::string output;
  std::string format = "csv";
  std::string config;
  double singular_tol = kDefaultSingularTol;

  std::string omega;
  std::string beta;
  std::string method = "analytic";
  double step = kDefaultDiffStep;

  double center = 1.0;
  double span = 0.64;
  std::size_t samples = 4096;
  double sigma = 0.005;

  double tol = kDefaultSingularTol;
  double tau = 0.0;
  std::string bracket;
};

struct Flags {
  CLI::Option* dispersion_file = nullptr;
  CLI::Option* pre_angle = nullptr;
  CLI::Option* post_angle = nullptr;
};

Flags add_common(CLI::App* sc, RawOptions& raw) {
  Flags f;
  auto* tte = sc->add_option("--tau-te", raw.tau_te, "TE group delay slope (linear model)");
  auto* ttm = sc->add_option("--tau-tm", raw.tau_tm, "TM group delay slope (linear model)");
  auto* pte = sc->add_option("--phi0-te", raw.phi0_te, "TE phase offset, radians");
  auto* ptm = sc->add_option("--phi0-tm", raw.phi0_tm, "TM phase offset, radians");
  f.dispersion_file =
      sc->add_option("--dispersion-file", raw.dispersion_file, "tabulated omega,phi_te,phi_tm CSV");
  f.dispersion_file->excludes(tte)->excludes(ttm)->excludes(pte)->excludes(ptm);

  const std::vector<std::string> labels{"V", "H", "D45", "A135"};
  auto* pre = sc->add_option("--pre", raw.pre, "pre-selection state (V, H, D45, A135)")
                  ->check(CLI::IsMember(labels));
  auto* post = sc->add_option("--post", raw.post, "post-selection state (V, H, D45, A135)")
                   ->check(CLI::IsMember(labels));
  f.pre_angle = sc->add_option("--pre-angle", raw.pre_angle, "linear pre-selection angle")
                    ->excludes(pre);
  f.post_angle = sc->add_option("--post-angle", raw.post_angle, "linear post-selection angle")
                     ->excludes(post);
  sc->add_flag("--degrees", raw.degrees, "angles on the command line are in degrees");
  sc->add_option("-o,--output", raw.output, "output file (default: standard output)");
  sc->add_option("--format", raw.format, "csv or json")->check(CLI::IsMember({"csv", "json"}));
  sc->add_option("--config", raw.config, "JSON file of default flag values");
  sc->add_option("--singular-tol", raw.singular_tol, "|T| below which a sample is singular")
      ->check(CLI::PositiveNumber);
  return f;
}

void add_delay_method(CLI::App* sc, RawOptions& raw) {
  sc->add_option("--method", raw.method, "group delay method: analytic or numeric")
      ->check(CLI::IsMember({"analytic", "numeric"}));
  sc->add_option("--step", raw.step, "central-difference step for --method numeric")
      ->check(CLI::PositiveNumber);
}

// Splices config-file entries in front of the user's tokens; with
// take-last semantics the explicit flags win.
std::vector<std::string> expand_config(std::span<const std::string> args) {
  std::vector<std::string> tokens(args.begin(), args.end());
  std::string path;
  for (std::size_t i = 0; i < tokens.size(); ++i) {
    if (tokens[i] == "--config" && i + 1 < tokens.size()) path = tokens[i + 1];
    if (tokens[i].rfind("--config=", 0) == 0) path = tokens[i].substr(9);
  }
  if (path.empty() || tokens.empty()) return tokens;

  std::ifstream in(path);
  if (!in) throw UsageError("cannot read config file '" + path + "'");
  nlohmann::json cfg;
  try {
    cfg = nlohmann::json::parse(in);
  } catch (const nlohmann::json::exception& e) {
    throw UsageError("config file '" + path + "' is not valid JSON: " + e.what());
  }
  if (!cfg.is_object()) throw UsageError("config file must hold a flat JSON object");

  std::vector<std::string> injected;
  for (const auto& [key, value] : cfg.items()) {
    if (key == "config") throw UsageError("config file may not name another config file");
    const std::string flag = "--" + key;
    if (value.is_boolean()) {
      if (value.get<bool>()) injected.push_back(flag);
    } else if (value.is_number()) {
      injected.push_back(flag + "=" + num(value.get<double>()));
    } else if (value.is_string()) {
      injected.push_back(flag + "=" + value.get<std::string>());
    } else {
      throw UsageError("config key '" + key + "' must be a number, string or boolean");
    }
  }
  std::vector<std::string> out;
  out.push_back(tokens.front());
  out.insert(out.end(), injected.begin(), injected.end());
  out.insert(out.end(), tokens.begin() + 1, tokens.end());
  return out;
}

}  // namespace

const char* command_name(Command c) {
  switch (c) {
    case Command::contour:
      return "contour";
    case Command::spectrum:
      return "spectrum";
    case Command::angle_sweep:
      return "angle-sweep";
    case Command::pulse:
      return "pulse";
    case Command::singularities:
      return "singularities";
    case Command::estimate_beta:
      return "estimate-beta";
  }
  return "?";
}

std::vector<double> Range::values() const {
  std::vector<double> v(count);
  if (count == 1) {
    v[0] = lo;
    return v;
  }
  for (std::size_t i = 0; i < count; ++i) {
    v[i] = lo + (hi - lo) * static_cast<double>(i) / static_cast<double>(count - 1);
  }
  v.back() = hi;
  return v;
}

PolarizationState StateSpec::resolve() const {
  if (angle) return linear_state(*angle);
  return basis_state(label);
}

DispersionModel RunPlan::model() const {
  if (dispersion_file) return load_tabulated(*dispersion_file);
  return DispersionModel(linear);
}

Range parse_range(const std::string& text, bool count_required) {
  std::vector<std::string> parts;
  std::size_t start = 0;
  while (true) {
    const auto colon = text.find(':', start);
    parts.push_back(text.substr(start, colon == std::string::npos ? std::string::npos
                                                                   : colon - start));
    if (colon == std::string::npos) break;
    start = colon + 1;
  }
  const std::size_t want = count_required ? 3 : 2;
  if (parts.size() != want) {
    throw UsageError("malformed range '" + text + "' (expected " +
                     (count_required ? "lo:hi:count" : "lo:hi") + ")");
  }
  Range r;
  if (!to_double(parts[0], r.lo) || !to_double(parts[1], r.hi)) {
    throw UsageError("malformed range bounds in '" + text + "'");
  }
  if (!(r.hi > r.lo)) throw UsageError("range '" + text + "' is empty (need lo < hi)");
  if (count_required) {
    std::size_t n = 0;
    const auto& c = parts[2];
    auto [ptr, ec] = std::from_chars(c.data(), c.data() + c.size(), n);
    if (ec != std::errc() || ptr != c.data() + c.size()) {
      throw UsageError("malformed count in range '" + text + "'");
    }
    if (n < 2) throw UsageError("range '" + text + "' needs at least 2 points");
    r.count = n;
  }
  return r;
}

RunPlan parse(std::span<const std::string> args) {
  const std::vector<std::string> tokens = expand_config(args);

  CLI::App app{"Collinear weak-measurement simulator for a birefringent crystal", "weakoptics"};
  app.option_defaults()->multi_option_policy(CLI::MultiOptionPolicy::TakeLast);
  app.require_subcommand(1);

  RawOptions raw;
  std::map<CLI::App*, std::pair<Command, Flags>> subs;

  auto* contour = app.add_subcommand("contour", "T(omega, beta) on a 2-D grid");
  subs[contour] = {Command::contour, add_common(contour, raw)};
  contour->add_option("--omega", raw.omega, "frequency range lo:hi:count")->required();
  contour->add_option("--beta", raw.beta, "angle range lo:hi:count")->required();
  add_delay_method(contour, raw);

  auto* spectrum = app.add_subcommand("spectrum", "unwrapped phase delay vs frequency");
  subs[spectrum] = {Command::spectrum, add_common(spectrum, raw)};
  spectrum->add_option("--omega", raw.omega, "frequency range lo:hi:count")->required();
  spectrum->add_option("--beta", raw.beta, "crystal angle")->required();
  add_delay_method(spectrum, raw);

  auto* sweep = app.add_subcommand("angle-sweep", "group delay vs crystal angle");
  subs[sweep] = {Command::angle_sweep, add_common(sweep, raw)};
  sweep->add_option("--omega", raw.omega, "frequency")->required();
  sweep->add_option("--beta", raw.beta, "angle range lo:hi:count")->required();
  add_delay_method(sweep, raw);

  auto* pulse = app.add_subcommand("pulse", "propagate a Gaussian wavepacket");
  subs[pulse] = {Command::pulse, add_common(pulse, raw)};
  pulse->add_option("--beta", raw.beta, "crystal angle")->required();
  pulse->add_option("--center", raw.center, "carrier frequency of the envelope");
  pulse->add_option("--span", raw.span, "spectral window width")->check(CLI::PositiveNumber);
  pulse->add_option("--samples", raw.samples, "grid size (power of two >= 64)");
  pulse->add_option("--sigma", raw.sigma, "rms spectral intensity width")
      ->check(CLI::PositiveNumber);

  auto* sing = app.add_subcommand("singularities", "locate zeros of T(omega, beta)");
  subs[sing] = {Command::singularities, add_common(sing, raw)};
  sing->add_option("--omega", raw.omega, "frequency window lo:hi:scan");
  sing->add_option("--beta", raw.beta, "angle window lo:hi:scan");
  sing->add_option("--tol", raw.tol, "target residual |T|")->check(CLI::PositiveNumber);

  auto* est = app.add_subcommand("estimate-beta", "invert a measured group delay to an angle");
  subs[est] = {Command::estimate_beta, add_common(est, raw)};
  est->add_option("--omega", raw.omega, "frequency")->required();
  est->add_option("--tau", raw.tau, "measured group delay")->required();
  est->add_option("--bracket", raw.bracket, "angle bracket lo:hi")->required();

  try {
    std::vector<std::string> rev(tokens.rbegin(), tokens.rend());
    app.parse(rev);
  } catch (const CLI::CallForHelp&) {
    throw HelpRequested(app.help());
  } catch (const CLI::ParseError& e) {
    const auto chosen = app.get_subcommands();
    const std::string help = chosen.empty() ? app.help() : chosen.front()->help();
    throw UsageError(std::string(e.what()) + "\n\n" + help);
  }

  CLI::App* chosen = app.get_subcommands().front();
  const auto& [command, flags] = subs.at(chosen);

  RunPlan plan;
  plan.command = command;
  const double angle_unit = raw.degrees ? kDeg : 1.0;

  if (flags.dispersion_file->count() > 0) {
    plan.dispersion_file = raw.dispersion_file;
  } else {
    plan.linear = {raw.tau_te, raw.tau_tm, raw.phi0_te, raw.phi0_tm};
    try {
      (void)DispersionModel(plan.linear);
    } catch (const std::invalid_argument& e) {
      throw UsageError(e.what());
    }
  }

  plan.pre.label = raw.pre;
  plan.post.label = raw.post;
  if (flags.pre_angle->count() > 0) plan.pre.angle = raw.pre_angle * angle_unit;
  if (flags.post_angle->count() > 0) plan.post.angle = raw.post_angle * angle_unit;

  plan.output_path = raw.output;
  plan.format = raw.format == "json" ? Format::json : Format::csv;
  plan.singular_tol = raw.singular_tol;
  plan.method = raw.method == "numeric" ? DelayMethod::numeric : DelayMethod::analytic;
  plan.step = raw.step;

  auto angle_range = [&](const std::string& text) {
    Range r = parse_range(text);
    r.lo *= angle_unit;
    r.hi *= angle_unit;
    return r;
  };

  switch (command) {
    case Command::contour:
      plan.omega_range = parse_range(raw.omega);
      plan.beta_range = angle_range(raw.beta);
      break;
    case Command::spectrum:
      plan.omega_range = parse_range(raw.omega);
      plan.beta = parse_value("--beta", raw.beta) * angle_unit;
      break;
    case Command::angle_sweep:
      plan.omega = parse_value("--omega", raw.omega);
      plan.beta_range = angle_range(raw.beta);
      break;
    case Command::pulse:
      if (plan.format == Format::csv && chosen->get_option("--format")->count() > 0) {
        throw UsageError("pulse writes JSON only; drop --format csv");
      }
      plan.format = Format::json;
      plan.beta = parse_value("--beta", raw.beta) * angle_unit;
      plan.grid = {raw.samples, raw.center, raw.span};
      plan.sigma = raw.sigma;
      try {
        plan.grid.validate();
      } catch (const std::invalid_argument& e) {
        throw UsageError(e.what());
      }
      break;
    case Command::singularities:
      plan.omega_range = raw.omega.empty() ? Range{0.5, 1.5, 201} : parse_range(raw.omega);
      plan.beta_range =
          raw.beta.empty() ? Range{0.0, std::numbers::pi, 201} : angle_range(raw.beta);
      plan.tol = raw.tol;
      break;
    case Command::estimate_beta: {
      plan.omega = parse_value("--omega", raw.omega);
      plan.tau = raw.tau;
      const Range b = parse_range(raw.bracket, false);
      plan.bracket = {b.lo * angle_unit, b.hi * angle_unit};
      break;
    }
  }
  return plan;
}

std::vector<std::string> canonical_args(const RunPlan& plan) {
  std::vector<std::string> a{command_name(plan.command)};
  auto add = [&](const std::string& flag, const std::string& value) {
    a.push_back("--" + flag + "=" + value);
  };
  auto range = [](const Range& r) {
    return num(r.lo) + ":" + num(r.hi) + ":" + std::to_string(r.count);
  };

  if (plan.dispersion_file) {
    add("dispersion-file", *plan.dispersion_file);
  } else {
    add("tau-te", num(plan.linear.tau_te));
    add("tau-tm", num(plan.linear.tau_tm));
    add("phi0-te", num(plan.linear.phi0_te));
    add("phi0-tm", num(plan.linear.phi0_tm));
  }
  if (plan.pre.angle) {
    add("pre-angle", num(*plan.pre.angle));
  } else {
    add("pre", plan.pre.label);
  }
  if (plan.post.angle) {
    add("post-angle", num(*plan.post.angle));
  } else {
    add("post", plan.post.label);
  }
  add("singular-tol", num(plan.singular_tol));

  const std::string method = plan.method == DelayMethod::numeric ? "numeric" : "analytic";
  switch (plan.command) {
    case Command::contour:
      add("omega", range(plan.omega_range));
      add("beta", range(plan.beta_range));
      add("method", method);
      add("step", num(plan.step));
      break;
    case Command::spectrum:
      add("omega", range(plan.omega_range));
      add("beta", num(plan.beta));
      add("method", method);
      add("step", num(plan.step));
      break;
    case Command::angle_sweep:
      add("omega", num(plan.omega));
      add("beta", range(plan.beta_range));
      add("method", method);
      add("step", num(plan.step));
      break;
    case Command::pulse:
      add("beta", num(plan.beta));
      add("center", num(plan.grid.omega_center));
      add("span", num(plan.grid.omega_span));
      add("samples", std::to_string(plan.grid.n));
      add("sigma", num(plan.sigma));
      break;
    case Command::singularities:
      add("omega", range(plan.omega_range));
      add("beta", range(plan.beta_range));
      add("tol", num(plan.tol));
      break;
    case Command::estimate_beta:
      add("omega", num(plan.omega));
      add("tau", num(plan.tau));
      add("bracket", num(plan.bracket.lo) + ":" + num(plan.bracket.hi));
      break;
  }
  if (plan.command != Command::pulse) add("format", plan.format == Format::json ? "json" : "csv");
  if (!plan.output_path.empty()) add("output", plan.output_path);
  return a;
}

std::string canonical_command(const RunPlan& plan) {
  std::string s = "weakoptics";
  for (const auto& tok : canonical_args(plan)) {
    s += ' ';
    if (tok.find_first_of(" \t'\"\\$") == std::string::npos) {
      s += tok;
      continue;
    }
    s += '\'';
    for (char c : tok) {
      if (c == '\'') {
        s += "'\\''";
      } else {
        s += c;
      }
    }
    s += '\'';
  }
  return s;
}

std::vector<std::string> split_command(const std::string& line) {
  std::vector<std::string> out;
  std::string cur;
  bool in_token = false;
  bool quoted = false;
  for (std::size_t i = 0; i < line.size(); ++i) {
    const char c = line[i];
    if (quoted) {
      if (c == '\'') {
        quoted = false;
      } else {
        cur += c;
      }
    } else if (c == '\'') {
      quoted = true;
      in_token = true;
    } else if (c == '\\' && i + 1 < line.size()) {
      cur += line[++i];
      in_token = true;
    } else if (c == ' ' || c == '\t') {
      if (in_token) out.push_back(cur);
      cur.clear();
      in_token = false;
    } else {
      cur += c;
      in_token = true;
    }
  }
  if (in_token) out.push_back(cur);
  return out;
}

}  // namespace weakoptics::cli
