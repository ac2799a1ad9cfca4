#include "ltlab/config.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <map>
#include <numbers>
#include <sstream>

#include "ltlab/error.hpp"

namespace ltlab {

namespace {

std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r\n");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r\n");
  return s.substr(first, last - first + 1);
}

std::vector<std::string_view> split(std::string_view s, char sep) {
  std::vector<std::string_view> parts;
  std::size_t start = 0;
  while (true) {
    const auto pos = s.find(sep, start);
    parts.push_back(trim(s.substr(start, pos - start)));
    if (pos == std::string_view::npos) break;
    start = pos + 1;
  }
  return parts;
}

[[noreturn]] void bad_value(std::string_view key, std::string_view value) {
  throw ValidationError("invalid value '" + std::string(value) + "' for '" + std::string(key) + "'");
}

double parse_real(std::string_view key, std::string_view text) {
  text = trim(text);
  double factor = 1.0;
  if (text.size() >= 2 && text.substr(text.size() - 2) == "pi") {
    factor = std::numbers::pi;
    text = trim(text.substr(0, text.size() - 2));
    if (!text.empty() && text.back() == '*') text = trim(text.substr(0, text.size() - 1));
    if (text.empty()) return factor;
  }
  double value = 0.0;
  const auto [end, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
  if (ec != std::errc() || end != text.data() + text.size() || !std::isfinite(value)) {
    bad_value(key, text);
  }
  return value * factor;
}

template <class Int>
Int parse_int(std::string_view key, std::string_view text) {
  text = trim(text);
  Int value{};
  const auto [end, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
  if (ec != std::errc() || end != text.data() + text.size()) bad_value(key, text);
  return value;
}

bool parse_bool(std::string_view key, std::string_view text) {
  text = trim(text);
  if (text == "true" || text == "1" || text == "yes" || text == "on") return true;
  if (text == "false" || text == "0" || text == "no" || text == "off") return false;
  bad_value(key, text);
}

std::vector<int> parse_exponents(std::string_view key, std::string_view text) {
  text = trim(text);
  std::vector<int> out;
  if (const auto dots = text.find(".."); dots != std::string_view::npos) {
    const int lo = parse_int<int>(key, text.substr(0, dots));
    const int hi = parse_int<int>(key, text.substr(dots + 2));
    if (hi < lo) bad_value(key, text);
    for (int k = lo; k <= hi; ++k) out.push_back(k);
  } else {
    for (auto part : split(text, ',')) out.push_back(parse_int<int>(key, part));
  }
  return out;
}

SigmaSpec parse_sigma(std::string_view key, std::string_view text) {
  const auto parts = split(text, ',');
  if (parts.size() != 3) bad_value(key, text);
  const double c0 = parse_real(key, parts[0]);
  const double c1 = parse_real(key, parts[1]);
  const double freq = parse_real(key, parts[2]);
  if (c1 == 0.0) return SigmaSpec::constant(c0);
  return SigmaSpec::affine_sine(c0, c1, freq);
}

}  // namespace

std::string format_double(double x) {
  char buf[32];
  const auto [end, ec] = std::to_chars(buf, buf + sizeof buf, x);
  return std::string(buf, end);
}

double ExperimentConfig::dt() const { return std::ldexp(1.0, -dt_exponent); }

std::size_t ExperimentConfig::horizon_steps() const { return to_steps(horizon, dt(), "T"); }

std::vector<double> ExperimentConfig::eps_values() const {
  std::vector<int> ks = eps_exponents;
  std::sort(ks.begin(), ks.end());
  std::vector<double> out;
  for (int k : ks) out.push_back(std::ldexp(1.0, -k));
  return out;
}

std::size_t ExperimentConfig::reporting_stride() const {
  if (t_grid_stride > 0) return t_grid_stride;
  return std::max<std::size_t>(1, horizon_steps() / 1024);
}

std::size_t ExperimentConfig::path_steps() const {
  const auto eps = eps_values();
  const std::size_t margin = eps.empty() ? 0 : to_steps(eps.front(), dt(), "eps");
  return horizon_steps() + std::max<std::size_t>(margin, 1);
}

void apply_setting(ExperimentConfig& c, std::string_view key, std::string_view value) {
  key = trim(key);
  value = trim(value);
  try {
    if (key == "T") {
      c.horizon = parse_real(key, value);
    } else if (key == "dt_exp") {
      c.dt_exponent = parse_int<int>(key, value);
    } else if (key == "eps_exps") {
      c.eps_exponents = parse_exponents(key, value);
    } else if (key == "paths") {
      c.n_paths = parse_int<std::size_t>(key, value);
    } else if (key == "seed") {
      c.base_seed = parse_int<std::uint64_t>(key, value);
    } else if (key == "level") {
      c.level_y = parse_real(key, value);
    } else if (key == "generator") {
      if (value == "brownian") {
        c.generator = PathKind::brownian;
      } else if (value == "sigma_martingale") {
        c.generator = PathKind::sigma_martingale;
      } else {
        bad_value(key, value);
      }
    } else if (key == "sigma") {
      c.sigma = parse_sigma(key, value);
    } else if (key == "estimator") {
      std::vector<EstimatorKind> kinds;
      for (auto part : split(value, ',')) {
        const auto kind = parse_estimator(part);
        if (std::find(kinds.begin(), kinds.end(), kind) == kinds.end()) kinds.push_back(kind);
      }
      c.estimators = std::move(kinds);
    } else if (key == "oracle") {
      c.oracle = parse_oracle(value);
    } else if (key == "h") {
      c.oracle_h = parse_real(key, value);
    } else if (key == "stride") {
      c.t_grid_stride = parse_int<std::size_t>(key, value);
    } else if (key == "allow_coarse_dt") {
      c.allow_coarse_dt = parse_bool(key, value);
    } else if (key == "function") {
      c.sweep_function = FunctionSpec::parse(std::string(value));
    } else if (key == "y_step") {
      c.sweep_y_step = parse_real(key, value);
    } else if (key == "y_margin") {
      c.sweep_y_margin = parse_real(key, value);
    } else if (key == "out") {
      c.output_dir = std::string(value);
    } else if (key == "threads") {
      c.threads = parse_int<unsigned>(key, value);
    } else {
      throw ValidationError("unknown config key '" + std::string(key) + "'");
    }
  } catch (const InvalidArgument& e) {
    throw ValidationError(e.what());
  }
}

ExperimentConfig parse_config_text(std::string_view text, ExperimentConfig base) {
  std::size_t line_no = 0;
  for (auto line : split(text, '\n')) {
    ++line_no;
    if (const auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string_view::npos) {
      throw ValidationError("config line " + std::to_string(line_no) + ": expected 'key = value'");
    }
    apply_setting(base, line.substr(0, eq), line.substr(eq + 1));
  }
  return base;
}

ExperimentConfig load_config_file(const std::string& path, ExperimentConfig base) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot read config file '" + path + "'");
  std::stringstream buffer;
  buffer << in.rdbuf();
  return parse_config_text(buffer.str(), std::move(base));
}

void validate(const ExperimentConfig& c) {
  if (!(c.horizon > 0.0)) throw ValidationError("T must be positive");
  if (c.dt_exponent < 0 || c.dt_exponent > 40) throw ValidationError("dt_exp must lie in [0, 40]");
  try {
    if (c.horizon_steps() == 0) throw ValidationError("T is shorter than one step");
  } catch (const AlignmentError&) {
    throw ValidationError("T is not an integer multiple of dt = 2^-" + std::to_string(c.dt_exponent));
  }
  if (c.eps_exponents.empty()) throw ValidationError("at least one eps is required");
  auto ks = c.eps_exponents;
  std::sort(ks.begin(), ks.end());
  if (std::adjacent_find(ks.begin(), ks.end()) != ks.end()) {
    throw ValidationError("eps exponents must be distinct");
  }
  for (int k : ks) {
    if (k < 0) throw ValidationError("eps exponents must be nonnegative");
    if (k > c.dt_exponent) {
      throw ValidationError("eps = 2^-" + std::to_string(k) + " is not a multiple of dt = 2^-" +
                            std::to_string(c.dt_exponent));
    }
  }
  if (!c.allow_coarse_dt && c.dt_exponent < ks.back() + 8) {
    throw ValidationError("dt must be at most min(eps) * 2^-8 (dt_exp >= " +
                          std::to_string(ks.back() + 8) + "); pass allow_coarse_dt to override");
  }
  if (c.n_paths < 1) throw ValidationError("paths must be at least 1");
  if (c.estimators.empty()) throw ValidationError("at least one estimator is required");
  if (!(c.oracle_h > 0.0)) throw ValidationError("h must be positive");
  if (!(c.sweep_y_step > 0.0) || !(c.sweep_y_margin >= 0.0)) {
    throw ValidationError("y_step must be positive and y_margin nonnegative");
  }
  if (c.generator == PathKind::sigma_martingale) {
    if (!c.sigma) throw ValidationError("the sigma_martingale generator needs a sigma spec");
    c.sigma->validate_on_grid(c.dt(), c.path_steps() + 1);
  }
}

std::string canonical_text(const ExperimentConfig& c) {
  std::map<std::string, std::string> entries;
  entries["T"] = format_double(c.horizon);
  entries["dt_exp"] = std::to_string(c.dt_exponent);
  auto ks = c.eps_exponents;
  std::sort(ks.begin(), ks.end());
  std::string eps;
  for (std::size_t j = 0; j < ks.size(); ++j) eps += (j ? "," : "") + std::to_string(ks[j]);
  entries["eps_exps"] = eps;
  entries["paths"] = std::to_string(c.n_paths);
  entries["seed"] = std::to_string(c.base_seed);
  entries["level"] = format_double(c.level_y);
  entries["generator"] = c.generator == PathKind::brownian ? "brownian" : "sigma_martingale";
  if (c.generator == PathKind::sigma_martingale && c.sigma) entries["sigma"] = c.sigma->to_string();
  std::string est;
  for (std::size_t j = 0; j < c.estimators.size(); ++j) {
    est += (j ? "," : "") + std::string(to_string(c.estimators[j]));
  }
  entries["estimator"] = est;
  entries["oracle"] = std::string(to_string(c.oracle));
  entries["h"] = format_double(c.oracle_h);
  entries["stride"] = std::to_string(c.t_grid_stride);
  entries["allow_coarse_dt"] = c.allow_coarse_dt ? "true" : "false";
  entries["function"] = c.sweep_function.to_string();
  entries["y_step"] = format_double(c.sweep_y_step);
  entries["y_margin"] = format_double(c.sweep_y_margin);
  std::string out;
  for (const auto& [k, v] : entries) out += k + " = " + v + "\n";
  return out;
}

std::string config_hash(const ExperimentConfig& c) {
  std::uint64_t h = 14695981039346656037ull;
  for (unsigned char ch : canonical_text(c)) {
    h ^= ch;
    h *= 1099511628211ull;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

}  // namespace ltlab
