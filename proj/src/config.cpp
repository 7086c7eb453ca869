#include "cavityclock/config.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <sstream>

#include "cavityclock/bogoliubov.hpp"
#include "cavityclock/circuit.hpp"
#include "cavityclock/gaussian.hpp"
#include "cavityclock/metrology.hpp"
#include "cavityclock/sweeps.hpp"

namespace cavityclock {

namespace {

const char* kVersion = "cavity-clock 0.1.0";

const std::set<std::string> kAxisNames = {"h",         "theta_a", "theta_0",
                                          "n_photons", "split",   "phi_0"};

const std::set<std::string> kRealKeys = {
    "alpha", "theta", "r",     "phi",   "purity",     "h",
    "theta_a", "theta_0", "n_photons", "split", "phi_0", "l0",
    "ic",    "phi_ext", "q",   "kappa", "l_eff",      "v",
    "t_traj", "delta_theta"};

const std::set<std::string> kIntKeys = {"n_max", "measurements", "k_max"};

const std::map<std::string, std::set<std::string>> kEnumKeys = {
    {"command", {"state", "bogo", "qfi", "sweep", "circuit"}},
    {"format", {"csv", "json"}},
    {"method", {"quadrature", "series1"}},
    {"flag", {"full", "mode_mixing_only"}},
    {"circuit_output", {"max_photons", "snr"}},
    {"state_kind", {"coherent", "squeezed_vacuum"}},
    {"loss_model", {"pure_loss", "photon_rescale"}},
};

const std::map<Command, std::set<std::string>> kCommandKeys = {
    {Command::state, {"alpha", "theta", "r", "phi", "purity"}},
    {Command::qfi, {"alpha", "theta", "r", "phi", "purity", "measurements"}},
    {Command::bogo, {"h", "theta_a", "n_max", "method"}},
    {Command::sweep,
     {"flag", "purity", "h", "theta_a", "theta_0", "n_photons", "split",
      "phi_0", "n_max", "method"}},
    {Command::circuit,
     {"circuit_output", "l0", "ic", "phi_ext", "q", "kappa", "l_eff", "v",
      "t_traj", "delta_theta", "k_max", "state_kind", "loss_model"}},
};

std::string trim(const std::string& text) {
    const auto begin = text.find_first_not_of(" \t\r");
    if (begin == std::string::npos) return "";
    const auto end = text.find_last_not_of(" \t\r");
    return text.substr(begin, end - begin + 1);
}

bool parse_real(const std::string& text, double& value) {
    std::istringstream in(text);
    in >> value;
    return static_cast<bool>(in) && in.eof();
}

bool parse_int(const std::string& text, long& value) {
    std::istringstream in(text);
    in >> value;
    return static_cast<bool>(in) && in.eof();
}

std::vector<double> expand_grid(const std::string& text) {
    double start = 0, stop = 0, step = 0;
    const auto c1 = text.find(':');
    const auto c2 = text.find(':', c1 + 1);
    if (c1 == std::string::npos || c2 == std::string::npos ||
        !parse_real(trim(text.substr(0, c1)), start) ||
        !parse_real(trim(text.substr(c1 + 1, c2 - c1 - 1)), stop) ||
        !parse_real(trim(text.substr(c2 + 1)), step) || !(step > 0.0) ||
        stop < start) {
        throw std::invalid_argument("expected start:stop:step with step > 0");
    }
    std::vector<double> values;
    const long count = std::lround((stop - start) / step);
    for (long i = 0; i <= count; ++i) {
        const double v = start + i * step;
        if (v > stop + 1e-9 * step) break;
        values.push_back(v);
    }
    return values;
}

std::vector<double> parse_list(const std::string& text) {
    std::vector<double> values;
    std::stringstream in(text);
    std::string item;
    while (std::getline(in, item, ',')) {
        double v = 0;
        if (!parse_real(trim(item), v)) {
            throw std::invalid_argument("bad list element '" + trim(item) + "'");
        }
        values.push_back(v);
    }
    if (values.empty()) throw std::invalid_argument("empty list");
    return values;
}

Command command_from_name(const std::string& name) {
    if (name == "state") return Command::state;
    if (name == "bogo") return Command::bogo;
    if (name == "qfi") return Command::qfi;
    if (name == "sweep") return Command::sweep;
    if (name == "circuit") return Command::circuit;
    throw std::invalid_argument("unknown command '" + name + "'");
}

std::string command_name(Command command) {
    switch (command) {
        case Command::state: return "state";
        case Command::bogo: return "bogo";
        case Command::qfi: return "qfi";
        case Command::sweep: return "sweep";
        case Command::circuit: return "circuit";
    }
    return "qfi";
}

// Range checks that can be decided at parse time; surfaces operation
// preconditions before any computation runs.
void validate(const RunConfig& config, std::vector<std::string>& errors) {
    const auto bad = [&errors](const std::string& message) {
        errors.push_back(message);
    };
    const std::string method = config.enum_or("method", "quadrature");
    if (config.command == Command::bogo) {
        const double h = config.real_or("h", 0.0);
        if (h < 0.0 || h >= 2.0) bad("bogo: h must lie in [0, 2)");
        if (method == "series1" && h > 0.5) {
            bad("bogo: series1 requires h <= 0.5");
        }
    }
    if (config.command == Command::sweep) {
        std::vector<double> h_values = {config.real_or("h", 0.1)};
        auto it = config.lists.find("h");
        if (it != config.lists.end()) h_values = it->second;
        for (double h : h_values) {
            if (h < 0.0 || h > 0.5) {
                bad("sweep: h values must lie in [0, 0.5]");
                break;
            }
        }
        const double purity = config.real_or("purity", 1.0);
        if (!(purity > 0.0) || purity > 1.0) {
            bad("sweep: purity must lie in (0, 1]");
        }
        for (double s : config.lists.count("split")
                            ? config.lists.at("split")
                            : std::vector<double>{config.real_or("split", 1.0)}) {
            if (s < 0.0 || s > 1.0) {
                bad("sweep: split must lie in [0, 1]");
                break;
            }
        }
    }
    if (config.command == Command::state || config.command == Command::qfi) {
        const double purity = config.real_or("purity", 1.0);
        if (!(purity > 0.0) || purity > 1.0) {
            bad("purity must lie in (0, 1]");
        }
        if (config.real_or("r", 0.0) < 0.0) bad("r must be >= 0");
        if (config.real_or("alpha", 0.0) < 0.0) bad("alpha must be >= 0");
    }
    if (config.command == Command::circuit) {
        const double kappa = config.real_or("kappa", 0.2);
        if (!(kappa > 0.0) || kappa >= 1.0) {
            bad("circuit: kappa must lie in (0, 1)");
        }
        const double flux = config.real_or("phi_ext", 0.4);
        if (flux < 0.0 || flux >= 0.5) {
            bad("circuit: phi_ext must lie in [0, 0.5) Phi0");
        }
        if (!(config.real_or("q", 1e4) > 0.0)) bad("circuit: q must be > 0");
    }
    if (config.int_or("n_max", 10) < 1) bad("n_max must be >= 1");
}

}  // namespace

double RunConfig::real_or(const std::string& key, double fallback) const {
    auto it = reals.find(key);
    return it == reals.end() ? fallback : it->second;
}

long RunConfig::int_or(const std::string& key, long fallback) const {
    auto it = ints.find(key);
    return it == ints.end() ? fallback : it->second;
}

std::string RunConfig::enum_or(const std::string& key,
                               const std::string& fallback) const {
    auto it = enums.find(key);
    return it == enums.end() ? fallback : it->second;
}

ConfigError::ConfigError(const std::vector<std::string>& messages)
    : std::runtime_error([&messages] {
          std::string joined = "config errors:";
          for (const auto& m : messages) joined += "\n  " + m;
          return joined;
      }()),
      errors(messages) {}

RunConfig parse_config(const std::string& text) {
    RunConfig config;
    std::vector<std::string> errors;
    bool command_seen = false;

    std::istringstream in(text);
    std::string line;
    int line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        const auto hash = line.find('#');
        if (hash != std::string::npos) line = line.substr(0, hash);
        line = trim(line);
        if (line.empty()) continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos) {
            errors.push_back("line " + std::to_string(line_no) +
                             ": expected key = value");
            continue;
        }
        const std::string key = trim(line.substr(0, eq));
        const std::string value = trim(line.substr(eq + 1));
        const auto fail = [&](const std::string& what) {
            errors.push_back("line " + std::to_string(line_no) + " (" + key +
                             "): " + what);
        };
        try {
            if (key == "out") {
                config.out = value;
            } else if (auto it = kEnumKeys.find(key); it != kEnumKeys.end()) {
                if (!it->second.count(value)) {
                    fail("invalid value '" + value + "'");
                    continue;
                }
                if (key == "command") {
                    config.command = command_from_name(value);
                    command_seen = true;
                } else if (key == "format") {
                    config.format = value == "json" ? OutputFormat::json
                                                    : OutputFormat::csv;
                } else {
                    config.enums[key] = value;
                }
            } else if (kIntKeys.count(key)) {
                long v = 0;
                if (!parse_int(value, v)) {
                    fail("expected an integer");
                } else {
                    config.ints[key] = v;
                }
            } else if (kRealKeys.count(key)) {
                double v = 0;
                if (!parse_real(value, v)) {
                    fail("expected a real number");
                } else {
                    config.reals[key] = v;
                }
            } else if (key.size() > 5 &&
                       key.substr(key.size() - 5) == "_list" &&
                       kAxisNames.count(key.substr(0, key.size() - 5))) {
                const std::string axis = key.substr(0, key.size() - 5);
                if (config.lists.count(axis)) {
                    fail("axis '" + axis + "' specified twice");
                } else {
                    config.lists[axis] = parse_list(value);
                }
            } else if (key.size() > 5 &&
                       key.substr(key.size() - 5) == "_grid" &&
                       kAxisNames.count(key.substr(0, key.size() - 5))) {
                const std::string axis = key.substr(0, key.size() - 5);
                if (config.lists.count(axis)) {
                    fail("axis '" + axis + "' specified twice");
                } else {
                    config.lists[axis] = expand_grid(value);
                }
            } else {
                fail("unknown key");
            }
        } catch (const std::exception& err) {
            fail(err.what());
        }
    }

    if (!command_seen) {
        errors.push_back("missing required key 'command'");
    } else {
        const auto& allowed = kCommandKeys.at(config.command);
        for (const auto& [key, unused] : config.reals) {
            (void)unused;
            if (!allowed.count(key)) {
                errors.push_back("key '" + key + "' not valid for command '" +
                                 command_name(config.command) + "'");
            }
        }
        for (const auto& [key, unused] : config.ints) {
            (void)unused;
            if (!allowed.count(key)) {
                errors.push_back("key '" + key + "' not valid for command '" +
                                 command_name(config.command) + "'");
            }
        }
        for (const auto& [key, unused] : config.enums) {
            (void)unused;
            if (!allowed.count(key)) {
                errors.push_back("key '" + key + "' not valid for command '" +
                                 command_name(config.command) + "'");
            }
        }
        if (!config.lists.empty() && config.command != Command::sweep) {
            errors.push_back("axis lists are only valid for command 'sweep'");
        }
        if (errors.empty()) validate(config, errors);
    }

    if (!errors.empty()) throw ConfigError(errors);
    return config;
}

std::string print_config(const RunConfig& config) {
    std::ostringstream out;
    out << "command = " << command_name(config.command) << '\n';
    out << "format = "
        << (config.format == OutputFormat::json ? "json" : "csv") << '\n';
    if (!config.out.empty()) out << "out = " << config.out << '\n';
    for (const auto& [key, value] : config.enums) {
        out << key << " = " << value << '\n';
    }
    for (const auto& [key, value] : config.ints) {
        out << key << " = " << value << '\n';
    }
    for (const auto& [key, value] : config.reals) {
        out << key << " = " << format_real(value) << '\n';
    }
    for (const auto& [key, values] : config.lists) {
        out << key << "_list = ";
        for (std::size_t i = 0; i < values.size(); ++i) {
            if (i > 0) out << ',';
            out << format_real(values[i]);
        }
        out << '\n';
    }
    return out.str();
}

namespace {

StateParams params_from_config(const RunConfig& config) {
    StateParams params;
    params.alpha = config.real_or("alpha", 0.0);
    params.theta = config.real_or("theta", 0.0);
    params.r = config.real_or("r", 0.0);
    params.phi = config.real_or("phi", 0.0);
    params.purity = config.real_or("purity", 1.0);
    return params;
}

MapMethod method_from_config(const RunConfig& config) {
    return config.enum_or("method", "quadrature") == "series1"
               ? MapMethod::series1
               : MapMethod::quadrature;
}

Table run_state(const RunConfig& config) {
    const StateParams params = params_from_config(config);
    const GaussianState state = make_state(params);
    const StateParams back = extract_params(state);
    Table table;
    table.add_metadata("artifact", kVersion);
    table.columns = {"alpha", "theta", "r", "phi", "purity", "n_photons",
                     "x1", "x2", "sigma_11", "sigma_12", "sigma_22"};
    table.rows.push_back({back.alpha, back.theta, back.r, back.phi,
                          back.purity, mean_photon_number(back),
                          state.first_moments()(0), state.first_moments()(1),
                          state.covariance()(0, 0), state.covariance()(0, 1),
                          state.covariance()(1, 1)});
    return table;
}

Table run_qfi(const RunConfig& config) {
    const StateParams params = params_from_config(config);
    const double closed = qfi_closed_form(params);
    const double general = qfi_general(make_state(params));
    Table table;
    table.add_metadata("artifact", kVersion);
    table.columns = {"value", "qfi_general", "n_photons"};
    std::vector<double> row = {closed, general, mean_photon_number(params)};
    if (config.ints.count("measurements")) {
        table.columns.push_back("delta_theta");
        row.push_back(phase_variance(
            closed, static_cast<int>(config.int_or("measurements", 1))));
    }
    table.rows.push_back(std::move(row));
    return table;
}

Table run_bogo(const RunConfig& config) {
    const int n_max = static_cast<int>(config.int_or("n_max", 10));
    const BogoliubovMap map =
        building_block(config.real_or("h", 0.0), config.real_or("theta_a", 0.0),
                       n_max, method_from_config(config));
    const IdentityDefects defects = identity_defects(map);
    Table table;
    table.add_metadata("artifact", kVersion);
    table.add_metadata("h", format_real(config.real_or("h", 0.0)));
    table.add_metadata("theta_a", format_real(config.real_or("theta_a", 0.0)));
    table.add_metadata("n_max", std::to_string(n_max));
    table.add_metadata("method", config.enum_or("method", "quadrature"));
    table.add_metadata("defect_unitarity", format_real(defects.unitarity));
    table.add_metadata("defect_symmetry", format_real(defects.symmetry));
    table.columns = {"m", "n", "re_a", "im_a", "re_b", "im_b"};
    const Eigen::MatrixXcd a = map.mode_mixing();
    const Eigen::MatrixXcd b = map.particle_creation();
    for (int m = 1; m <= n_max; ++m) {
        for (int n = 1; n <= n_max; ++n) {
            table.rows.push_back({static_cast<double>(m),
                                  static_cast<double>(n),
                                  a(m - 1, n - 1).real(), a(m - 1, n - 1).imag(),
                                  b(m - 1, n - 1).real(),
                                  b(m - 1, n - 1).imag()});
        }
    }
    return table;
}

Table run_sweep_command(const RunConfig& config) {
    SweepSpec spec;
    spec.h = config.real_or("h", 0.1);
    spec.theta_a = config.real_or("theta_a", M_PI);
    spec.theta_0 = config.real_or("theta_0", 0.0);
    spec.n_photons = config.real_or("n_photons", 1.0);
    spec.split = config.real_or("split", 1.0);
    spec.phi_0 = config.real_or("phi_0", 0.0);
    spec.purity = config.real_or("purity", 1.0);
    spec.flag = config.enum_or("flag", "full") == "mode_mixing_only"
                    ? TransformFlag::mode_mixing_only
                    : TransformFlag::full;
    spec.n_max = static_cast<int>(config.int_or("n_max", 10));
    spec.method = method_from_config(config);
    for (const auto& [axis, values] : config.lists) {
        spec.axes.push_back({axis, values});
    }
    Table table = run_sweep(spec);
    Table out;
    out.add_metadata("artifact", kVersion);
    // theta_0 defaults to 0 where the sweep does not pin it.
    out.add_metadata("theta_0",
                     format_real(config.real_or("theta_0", 0.0)));
    out.metadata.insert(out.metadata.end(), table.metadata.begin(),
                        table.metadata.end());
    out.columns = std::move(table.columns);
    out.rows = std::move(table.rows);
    return out;
}

Table run_circuit(const RunConfig& config) {
    CircuitParams params;
    params.inductance_per_length = config.real_or("l0", 0.44e-6);
    params.junction_critical_current = config.real_or("ic", 0.5e-6);
    params.external_flux = config.real_or("phi_ext", 0.4);
    params.quality_factor = config.real_or("q", 1e4);
    params.current_ratio = config.real_or("kappa", 0.2);
    params.cavity_length = config.real_or("l_eff", 0.06);
    params.phase_velocity = config.real_or("v", 1.2e8);
    params.trajectory_time = config.real_or("t_traj", 4e-9);
    params.phase_per_trajectory = config.real_or("delta_theta", 0.94e-3);

    if (config.enum_or("circuit_output", "max_photons") == "snr") {
        const ClockStateKind kind =
            config.enum_or("state_kind", "coherent") == "squeezed_vacuum"
                ? ClockStateKind::squeezed_vacuum
                : ClockStateKind::coherent;
        const LossModel loss =
            config.enum_or("loss_model", "pure_loss") == "photon_rescale"
                ? LossModel::photon_rescale
                : LossModel::pure_loss;
        Table table = snr_vs_trajectories(
            params, kind, static_cast<int>(config.int_or("k_max", 5000)),
            loss);
        table.metadata.insert(table.metadata.begin(),
                              std::string("artifact = ") + kVersion);
        return table;
    }
    const double ic_eff = squid_critical_current(
        params.junction_critical_current, params.external_flux);
    Table table;
    table.add_metadata("artifact", kVersion);
    table.columns = {"value", "omega", "ic_eff", "lambda", "tau"};
    table.rows.push_back(
        {max_photon_number(params), angular_frequency(params), ic_eff,
         params.cavity_length - 2.0 * squid_inductance(ic_eff, 0.0) /
                                    params.inductance_per_length,
         2.0 * params.quality_factor / angular_frequency(params)});
    return table;
}

}  // namespace

Table run_command(const RunConfig& config) {
    switch (config.command) {
        case Command::state: return run_state(config);
        case Command::qfi: return run_qfi(config);
        case Command::bogo: return run_bogo(config);
        case Command::sweep: return run_sweep_command(config);
        case Command::circuit: return run_circuit(config);
    }
    throw std::logic_error("unreachable");
}

}  // namespace cavityclock
