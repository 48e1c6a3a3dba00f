#include "nonrecip/config_io.hpp"

#include <cstdio>
#include <initializer_list>
#include <ostream>
#include <set>

namespace nonrecip::io {

namespace {

/// Reads a JSON object field by field and rejects keys it was not asked for.
class ObjectReader {
 public:
  ObjectReader(const json& j, std::string context) : j_(j), context_(std::move(context)) {
    if (!j_.is_object()) throw ConfigError(where() + " must be a JSON object");
  }

  bool has(const char* key) const { return j_.contains(key); }

  double number(const char* key) {
    const json& v = required(key);
    if (!v.is_number()) throw ConfigError("key '" + path(key) + "' must be a number");
    return v.get<double>();
  }

  std::optional<double> optional_number(const char* key) {
    if (!has(key)) return std::nullopt;
    return number(key);
  }

  int integer(const char* key) {
    const json& v = required(key);
    if (!v.is_number_integer()) throw ConfigError("key '" + path(key) + "' must be an integer");
    return v.get<int>();
  }

  std::string string(const char* key) {
    const json& v = required(key);
    if (!v.is_string()) throw ConfigError("key '" + path(key) + "' must be a string");
    return v.get<std::string>();
  }

  Complex<double> complex(const char* key) {
    ObjectReader inner(required(key), path(key));
    const double re = inner.number("re");
    const double im = inner.number("im");
    inner.finish();
    return {re, im};
  }

  const json& object(const char* key) { return required(key); }

  std::string path(const char* key) const {
    return context_.empty() ? std::string(key) : context_ + "." + key;
  }

  void finish() const {
    for (const auto& item : j_.items()) {
      if (!seen_.contains(item.key())) {
        throw ConfigError("unknown key '" + path(item.key().c_str()) + "'");
      }
    }
  }

 private:
  const json& required(const char* key) {
    seen_.insert(key);
    if (!j_.contains(key)) throw ConfigError("missing key '" + path(key) + "'");
    return j_.at(key);
  }

  std::string where() const { return context_.empty() ? "config" : "'" + context_ + "'"; }

  const json& j_;
  std::string context_;
  std::set<std::string> seen_;
};

template <typename Record>
const Record& checked(const Record& r, const std::string& context) {
  try {
    return validate(r);
  } catch (const DomainError& e) {
    throw ConfigError(context + ": " + e.what());
  }
}

}  // namespace

json complex_to_json(const Complex<double>& z) { return {{"re", z.real()}, {"im", z.imag()}}; }

json to_json(const PendulumParams& p) {
  return {{"omega1", p.omega1}, {"omega2", p.omega2}, {"gamma1", p.gamma1},
          {"gamma2", p.gamma2}, {"g", p.g},           {"f1", p.f1},
          {"f2", p.f2},         {"phi1", p.phi1},     {"phi2", p.phi2},
          {"omega_d", p.omega_d}};
}

json to_json(const OptomechDriveParams& p) {
  return {{"delta_a1", p.delta_a1}, {"delta_a2", p.delta_a2}, {"delta_b1", p.delta_b1},
          {"j", p.j},               {"g11", p.g11},           {"g21", p.g21},
          {"eps_a1", p.eps_a1},     {"eps_a2", p.eps_a2},     {"phi_a1", p.phi_a1},
          {"phi_a2", p.phi_a2},     {"eps_b1", p.eps_b1},     {"gamma_a1", p.gamma_a1},
          {"gamma_a2", p.gamma_a2}, {"gamma_b1", p.gamma_b1}};
}

json to_json(const EffectiveParams& p) {
  return {{"delta_p1", p.delta_p1},
          {"delta_p2", p.delta_p2},
          {"delta_b1", p.delta_b1},
          {"j", p.j},
          {"g11_eff", complex_to_json(p.g11_eff)},
          {"g21_eff", complex_to_json(p.g21_eff)},
          {"gamma_a1", p.gamma_a1},
          {"gamma_a2", p.gamma_a2},
          {"gamma_b1", p.gamma_b1}};
}

json to_json(const SweepSpec& s) {
  return {{"variable", std::string(to_string(s.variable))},
          {"start", s.start},
          {"stop", s.stop},
          {"points", s.points}};
}

PendulumParams pendulum_from_json(const json& j) {
  ObjectReader r(j, "pendulum");
  PendulumParams p;
  p.omega1 = r.number("omega1");
  p.omega2 = r.number("omega2");
  p.gamma1 = r.number("gamma1");
  p.gamma2 = r.number("gamma2");
  p.g = r.number("g");
  p.f1 = r.number("f1");
  p.f2 = r.number("f2");
  p.phi1 = r.number("phi1");
  p.phi2 = r.number("phi2");
  p.omega_d = r.number("omega_d");
  r.finish();
  return checked(p, "pendulum");
}

OptomechDriveParams drives_from_json(const json& j) {
  ObjectReader r(j, "drives");
  OptomechDriveParams p;
  p.delta_a1 = r.number("delta_a1");
  p.delta_a2 = r.number("delta_a2");
  p.delta_b1 = r.number("delta_b1");
  p.j = r.number("j");
  p.g11 = r.number("g11");
  p.g21 = r.number("g21");
  p.eps_a1 = r.number("eps_a1");
  p.eps_a2 = r.number("eps_a2");
  p.phi_a1 = r.number("phi_a1");
  p.phi_a2 = r.number("phi_a2");
  p.eps_b1 = r.number("eps_b1");
  p.gamma_a1 = r.number("gamma_a1");
  p.gamma_a2 = r.number("gamma_a2");
  p.gamma_b1 = r.number("gamma_b1");
  r.finish();
  return checked(p, "drives");
}

EffectiveParams effective_from_json(const json& j) {
  ObjectReader r(j, "effective");
  EffectiveParams p;
  p.delta_p1 = r.number("delta_p1");
  p.delta_p2 = r.number("delta_p2");
  p.delta_b1 = r.number("delta_b1");
  p.j = r.number("j");
  p.g11_eff = r.complex("g11_eff");
  p.g21_eff = r.complex("g21_eff");
  p.gamma_a1 = r.number("gamma_a1");
  p.gamma_a2 = r.number("gamma_a2");
  p.gamma_b1 = r.number("gamma_b1");
  r.finish();
  return checked(p, "effective");
}

SweepSpec sweep_from_json(const json& j) {
  ObjectReader r(j, "sweep");
  SweepSpec s;
  try {
    s.variable = sweep_variable_from_string(r.string("variable"));
  } catch (const ConfigError&) {
    throw;
  } catch (const DomainError& e) {
    throw ConfigError(std::string("sweep.variable: ") + e.what());
  }
  s.start = r.number("start");
  s.stop = r.number("stop");
  s.points = r.integer("points");
  r.finish();
  return checked(s, "sweep");
}

OutputFormat output_format_from_string(const std::string& name) {
  if (name == "csv") return OutputFormat::csv;
  if (name == "json") return OutputFormat::json;
  throw ConfigError("format must be 'csv' or 'json', got '" + name + "'");
}

RunConfig run_config_from_json(const json& j) {
  ObjectReader r(j, "");
  RunConfig c;
  if (r.has("pendulum")) c.pendulum = pendulum_from_json(r.object("pendulum"));
  if (r.has("drives")) c.drives = drives_from_json(r.object("drives"));
  if (r.has("effective")) c.effective = effective_from_json(r.object("effective"));
  if (r.has("sweep")) c.sweep = sweep_from_json(r.object("sweep"));
  if (r.has("probe_omega")) c.probe_omega = r.number("probe_omega");
  if (r.has("coupling_form")) {
    const std::string form = r.string("coupling_form");
    if (form == "symmetric") {
      c.coupling_form = CouplingForm::symmetric;
    } else if (form == "frequency_weighted") {
      c.coupling_form = CouplingForm::frequency_weighted;
    } else {
      throw ConfigError("key 'coupling_form' must be 'symmetric' or 'frequency_weighted'");
    }
  }
  if (r.has("output")) {
    ObjectReader o(r.object("output"), "output");
    if (o.has("path")) c.output.path = o.string("path");
    if (o.has("format")) c.output.format = output_format_from_string(o.string("format"));
    o.finish();
  }
  if (r.has("solver")) {
    ObjectReader s(r.object("solver"), "solver");
    if (s.has("tol")) c.solver.tol = s.number("tol");
    if (s.has("max_iter")) c.solver.max_iter = s.integer("max_iter");
    const std::string mode = s.has("mode") ? s.string("mode") : "self_consistent";
    if (mode == "prescribed") {
      c.mode = SolveMode::prescribed_detunings(s.number("delta_p1"), s.number("delta_p2"));
    } else if (mode != "self_consistent") {
      throw ConfigError("key 'solver.mode' must be 'self_consistent' or 'prescribed'");
    }
    s.finish();
    if (!(c.solver.tol > 0)) throw ConfigError("key 'solver.tol' must be > 0");
    if (c.solver.max_iter < 1) throw ConfigError("key 'solver.max_iter' must be >= 1");
  }
  if (r.has("isolation")) {
    ObjectReader s(r.object("isolation"), "isolation");
    c.isolation.omega_min = s.optional_number("omega_min");
    c.isolation.omega_max = s.optional_number("omega_max");
    if (s.has("points")) c.isolation.points = s.integer("points");
    if (s.has("refine_tol")) c.isolation.refine_tol = s.number("refine_tol");
    s.finish();
  }
  r.finish();
  return c;
}

RunConfig run_config_from_text(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ConfigError(std::string("malformed JSON: ") + e.what());
  }
  return run_config_from_json(j);
}

std::string format_double(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

void write_pendulum_csv(std::ostream& os, const std::vector<PendulumSpectrumRow>& rows) {
  os << "delta,abs_alpha1,arg_alpha1,abs_alpha2,arg_alpha2\n";
  for (const auto& row : rows) {
    os << format_double(row.delta) << ',' << format_double(row.abs_alpha1) << ','
       << format_double(row.arg_alpha1) << ',' << format_double(row.abs_alpha2) << ','
       << format_double(row.arg_alpha2) << '\n';
  }
}

namespace {

constexpr std::pair<int, int> kTransmissionColumns[] = {{1, 2}, {2, 1}, {1, 1}, {2, 2}, {1, 3},
                                                        {3, 1}, {2, 3}, {3, 2}, {3, 3}};

std::string column_name(std::pair<int, int> ij) {
  return "t" + std::to_string(ij.first) + std::to_string(ij.second);
}

}  // namespace

void write_transmission_csv(
    std::ostream& os, const std::vector<TransmissionRow>& rows,
    const std::optional<std::pair<std::string, std::vector<double>>>& leading) {
  if (leading) os << leading->first << ',';
  os << "omega";
  for (const auto& ij : kTransmissionColumns) os << ',' << column_name(ij);
  os << ",stable\n";
  for (std::size_t k = 0; k < rows.size(); ++k) {
    const auto& row = rows[k];
    if (leading) os << format_double(leading->second.at(k)) << ',';
    os << format_double(row.omega);
    for (const auto& [i, j] : kTransmissionColumns) os << ',' << format_double(row.at(i, j));
    os << ',' << (row.stable ? 1 : 0) << '\n';
  }
}

json pendulum_rows_to_json(const std::vector<PendulumSpectrumRow>& rows) {
  json out = json::array();
  for (const auto& row : rows) {
    out.push_back({{"delta", row.delta},
                   {"abs_alpha1", row.abs_alpha1},
                   {"arg_alpha1", row.arg_alpha1},
                   {"abs_alpha2", row.abs_alpha2},
                   {"arg_alpha2", row.arg_alpha2}});
  }
  return out;
}

json transmission_rows_to_json(
    const std::vector<TransmissionRow>& rows,
    const std::optional<std::pair<std::string, std::vector<double>>>& leading) {
  json out = json::array();
  for (std::size_t k = 0; k < rows.size(); ++k) {
    json row = {{"omega", rows[k].omega}, {"stable", rows[k].stable}};
    if (leading) row[leading->first] = leading->second.at(k);
    for (const auto& ij : kTransmissionColumns) row[column_name(ij)] = rows[k].at(ij.first, ij.second);
    out.push_back(std::move(row));
  }
  return out;
}

json to_json(const IsolationResult& r) {
  return {{"omega_iso", r.omega_iso}, {"t12", r.t12}, {"t21", r.t21}, {"isolation_db", r.isolation_db}};
}

json to_json(const SteadyState& ss) {
  return {{"alpha", complex_to_json(ss.alpha)},
          {"beta", complex_to_json(ss.beta)},
          {"xi", complex_to_json(ss.xi)},
          {"g11_eff", complex_to_json(ss.effective.g11_eff)},
          {"g21_eff", complex_to_json(ss.effective.g21_eff)},
          {"delta_p1", ss.effective.delta_p1},
          {"delta_p2", ss.effective.delta_p2},
          {"theta", ss.effective.theta()},
          {"iterations", ss.iterations},
          {"residual", ss.residual},
          {"residual_history", ss.residual_history},
          {"warnings", ss.warnings}};
}

json to_json(const PhaseReport& r) {
  return {{"predicted_phase", r.predicted_phase},
          {"actual_phase", r.actual_phase},
          {"deviation", r.deviation}};
}

}  // namespace nonrecip::io
