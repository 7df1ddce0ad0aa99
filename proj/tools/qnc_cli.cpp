// Copyright 2026 The qnc-butterfly Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "qnc/analytic.hpp"
#include "qnc/circuit.hpp"
#include "qnc/montecarlo.hpp"

namespace {

constexpr const char* kVersion = "0.1.0";
constexpr const char* kIdleSchedule = "per-step-idle-v1";

struct FRange {
  double lo = 0.0, hi = 0.0, step = 0.0;
};

FRange parse_range(const std::string& s) {
  FRange r;
  if (std::sscanf(s.c_str(), "%lf:%lf:%lf", &r.lo, &r.hi, &r.step) != 3 ||
      !(r.step > 0) || !(r.lo <= r.hi) || !(r.lo >= 0) || !(r.hi <= 1)) {
    throw std::invalid_argument("range must be lo:hi:step within [0,1]");
  }
  return r;
}

std::vector<double> grid(const FRange& r) {
  std::vector<double> out;
  const int n = static_cast<int>(std::round((r.hi - r.lo) / r.step)) + 1;
  for (int i = 0; i < n; ++i) out.push_back(std::min(r.hi, r.lo + i * r.step));
  return out;
}

std::string fmt(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.10g", v);
  return buf;
}

// Rows plus column names; rendered as CSV or a JSON record array.
struct Table {
  std::vector<std::string> columns;
  std::vector<std::vector<std::string>> rows;
};

void emit(const Table& table, const std::vector<std::string>& header_lines,
          const std::string& out_path, const std::string& format) {
  std::ostringstream os;
  if (format == "csv") {
    for (const auto& line : header_lines) os << "# " << line << '\n';
    for (size_t i = 0; i < table.columns.size(); ++i) {
      os << (i ? "," : "") << table.columns[i];
    }
    os << '\n';
    for (const auto& row : table.rows) {
      for (size_t i = 0; i < row.size(); ++i) os << (i ? "," : "") << row[i];
      os << '\n';
    }
  } else {
    nlohmann::json j;
    j["meta"] = header_lines;
    j["rows"] = nlohmann::json::array();
    for (const auto& row : table.rows) {
      nlohmann::json obj;
      for (size_t i = 0; i < row.size(); ++i) obj[table.columns[i]] = row[i];
      j["rows"].push_back(std::move(obj));
    }
    os << j.dump(2) << '\n';
  }
  if (out_path.empty() || out_path == "-") {
    std::cout << os.str();
    return;
  }
  std::filesystem::path path(out_path);
  if (path.is_relative()) {
    if (const char* dir = std::getenv("QNC_OUT_DIR")) path = std::filesystem::path(dir) / path;
  }
  std::ofstream f(path);
  if (!f) throw std::runtime_error("cannot write " + path.string());
  f << os.str();
}

std::vector<std::string> base_header(const std::string& command_echo) {
  return {std::string("qnc-butterfly ") + kVersion, "command: " + command_echo,
          std::string("idle-schedule: ") + kIdleSchedule};
}

qnc::ErrorModel initial_model(const std::string& model_name, double F) {
  return qnc::ErrorModel::initial_only(qnc::initial_kind_from_name(model_name), F);
}

qnc::JointDistribution distribution_for(qnc::Protocol protocol,
                                        const std::string& model_name, double F) {
  return qnc::exact_distribution(protocol, initial_model(model_name, F));
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Butterfly-network entanglement distribution analyzer"};
  app.set_version_flag("--version", kVersion);
  app.require_subcommand(1);

  std::string out_path, format = "csv", model_name = "z", protocol_name = "qnc";
  std::string f_range = "0.8:1.0:0.01", gate_f_range = "0.980:1.000:0.001";
  std::string circuit_format = "text", kernel = "auto";
  double f = 0.9, initial_f = 0.95, gate_f = 1.0;
  uint64_t seed = 1, target_errors = 20000, max_trials = 100000000, batch_size = 65536;
  int workers = 1, cycles = 2;

  auto add_common = [&](CLI::App* cmd) {
    cmd->add_option("--out", out_path, "output file (default stdout; relative paths go under $QNC_OUT_DIR)");
    cmd->add_option("--format", format, "csv or json")
        ->check(CLI::IsMember({"csv", "json"}));
  };

  auto* c_analytic = app.add_subcommand("analytic", "closed-form / enumerated fidelity curves");
  add_common(c_analytic);
  c_analytic->add_option("--model", model_name)->check(CLI::IsMember({"z", "x", "pauli"}));
  c_analytic->add_option("--f-range", f_range, "lo:hi:step");

  auto* c_correlate = app.add_subcommand("correlate", "final-pair error correlation table");
  add_common(c_correlate);
  c_correlate->add_option("--f", f, "input fidelity");
  c_correlate->add_option("--f-range", f_range, "lo:hi:step (overrides --f)");

  auto* c_mc = app.add_subcommand("mc", "Monte Carlo estimate at one parameter point");
  add_common(c_mc);
  c_mc->add_option("--protocol", protocol_name)->check(CLI::IsMember({"qnc", "2es"}));
  c_mc->add_option("--model", model_name)->check(CLI::IsMember({"z", "x", "pauli"}));
  c_mc->add_option("--initial-f", initial_f);
  c_mc->add_option("--gate-f", gate_f);
  c_mc->add_option("--seed", seed);
  c_mc->add_option("--target-errors", target_errors);
  c_mc->add_option("--max-trials", max_trials);
  c_mc->add_option("--batch-size", batch_size);
  c_mc->add_option("--workers", workers, "0 = all cores");
  c_mc->add_option("--cycles", cycles, "2ES bottleneck repetitions");
  c_mc->add_option("--kernel", kernel)->check(CLI::IsMember({"auto", "scalar", "avx2"}));

  auto* c_sweep = app.add_subcommand("sweep", "Monte Carlo gate-fidelity sweep");
  add_common(c_sweep);
  c_sweep->add_option("--protocol", protocol_name)->check(CLI::IsMember({"qnc", "2es"}));
  c_sweep->add_option("--model", model_name)->check(CLI::IsMember({"z", "x", "pauli"}));
  c_sweep->add_option("--initial-f", initial_f);
  c_sweep->add_option("--gate-f-range", gate_f_range, "lo:hi:step");
  c_sweep->add_option("--seed", seed);
  c_sweep->add_option("--target-errors", target_errors);
  c_sweep->add_option("--max-trials", max_trials);
  c_sweep->add_option("--batch-size", batch_size);
  c_sweep->add_option("--workers", workers);
  c_sweep->add_option("--cycles", cycles);
  c_sweep->add_option("--kernel", kernel)->check(CLI::IsMember({"auto", "scalar", "avx2"}));

  auto* c_threshold = app.add_subcommand("threshold", "0.5 joint-fidelity crossing");
  add_common(c_threshold);
  c_threshold->add_option("--protocol", protocol_name)->check(CLI::IsMember({"qnc", "2es"}));
  c_threshold->add_option("--model", model_name)->check(CLI::IsMember({"z", "x", "pauli"}));

  auto* c_circuit = app.add_subcommand("circuit", "dump a protocol circuit");
  c_circuit->add_option("--protocol", protocol_name)->check(CLI::IsMember({"qnc", "2es"}));
  c_circuit->add_option("--cycles", cycles);
  c_circuit->add_option("--out", out_path);
  c_circuit->add_option("--format", circuit_format)->check(CLI::IsMember({"text", "json"}));

  auto* c_enumerate = app.add_subcommand("enumerate", "exact output distribution at one F");
  add_common(c_enumerate);
  c_enumerate->add_option("--protocol", protocol_name)->check(CLI::IsMember({"qnc", "2es"}));
  c_enumerate->add_option("--model", model_name)->check(CLI::IsMember({"z", "x", "pauli"}));
  c_enumerate->add_option("--f", f);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  std::ostringstream echo;
  for (int i = 1; i < argc; ++i) echo << (i > 1 ? " " : "") << argv[i];

  try {
    if (*c_analytic) {
      Table t{{"protocol", "F", "P00", "P01", "P10", "P11", "joint_fidelity"}, {}};
      for (const char* proto : {"qnc", "2es"}) {
        for (double F : grid(parse_range(f_range))) {
          const auto d = distribution_for(qnc::protocol_from_name(proto), model_name, F);
          const auto p = d.collapsed_mn();
          t.rows.push_back({proto, fmt(F), fmt(p[0]), fmt(p[1]), fmt(p[2]), fmt(p[3]),
                            fmt(d.joint_fidelity())});
        }
      }
      for (double F : grid(parse_range(f_range))) {
        t.rows.push_back({"reference", fmt(F), fmt(F), "0", "0", fmt(1 - F), fmt(F)});
      }
      auto hdr = base_header(echo.str());
      hdr.push_back("model: " + model_name +
                    (model_name == "pauli" ? " (F is the channel fidelity 1-p)" : ""));
      emit(t, hdr, out_path, format);
    } else if (*c_correlate) {
      Table t{{"F", "a", "b", "c", "d", "phi"}, {}};
      std::vector<double> fs = c_correlate->count("--f-range")
                                   ? grid(parse_range(f_range))
                                   : std::vector<double>{f};
      for (double F : fs) {
        const auto ct = qnc::correlation_at(F);
        t.rows.push_back({fmt(F), fmt(ct.a), fmt(ct.b), fmt(ct.c), fmt(ct.d), fmt(ct.phi)});
      }
      emit(t, base_header(echo.str()), out_path, format);
    } else if (*c_mc || *c_sweep) {
      qnc::McConfig cfg;
      cfg.protocol = qnc::protocol_from_name(protocol_name);
      cfg.model = initial_model(model_name, initial_f);
      cfg.seed = seed;
      cfg.target_error_events = target_errors;
      cfg.max_trials = max_trials;
      cfg.batch_size = batch_size;
      cfg.workers = workers;
      cfg.cycles = cycles;
      cfg.kernel = kernel;
      Table t{{"protocol", "initial_F", "gate_F", "trials", "error_events", "joint_success",
               "stderr", "seed"},
              {}};
      auto row = [&](double gf, const qnc::McEstimate& e, uint64_t s) {
        t.rows.push_back({protocol_name, fmt(initial_f), fmt(gf), std::to_string(e.trials),
                          std::to_string(e.error_events), fmt(e.joint_success),
                          fmt(e.stderr_est), std::to_string(s)});
      };
      auto hdr = base_header(echo.str());
      hdr.push_back("seed: " + std::to_string(seed));
      if (*c_mc) {
        cfg.model.with_gate_fidelity(gate_f);
        const auto e = qnc::run(cfg);
        row(gate_f, e, seed);
        hdr.push_back("kernel: " + e.kernel);
      } else {
        const auto r = parse_range(gate_f_range);
        for (const auto& pt : qnc::sweep_gate_fidelity(cfg, r.lo, r.hi, r.step)) {
          row(pt.gate_fidelity, pt.estimate, seed);
        }
      }
      emit(t, hdr, out_path, format);
    } else if (*c_threshold) {
      const auto th = qnc::find_threshold(qnc::protocol_from_name(protocol_name),
                                          qnc::initial_kind_from_name(model_name));
      Table t{{"protocol", "model", "pair_fidelity_threshold", "channel_fidelity_threshold"},
              {}};
      if (th) {
        const double pair_f = *th;
        const double channel_f =
            model_name == "pauli" ? 1.0 - 5.0 * (1.0 - pair_f) / 4.0 : pair_f;
        t.rows.push_back({protocol_name, model_name, fmt(pair_f), fmt(channel_f)});
      } else {
        t.rows.push_back({protocol_name, model_name, "none", "none"});
      }
      emit(t, base_header(echo.str()), out_path, format);
    } else if (*c_circuit) {
      const qnc::Circuit circuit = protocol_name == "qnc" ? qnc::build_qnc()
                                                          : qnc::build_2es(cycles);
      const std::string text =
          circuit_format == "text" ? qnc::dump_text(circuit) : qnc::dump_json(circuit);
      if (out_path.empty() || out_path == "-") {
        std::cout << text;
      } else {
        std::ofstream fo(out_path);
        if (!fo) throw std::runtime_error("cannot write " + out_path);
        fo << text;
      }
    } else if (*c_enumerate) {
      const auto d = distribution_for(qnc::protocol_from_name(protocol_name), model_name, f);
      Table t{{"code", "bell_first", "bell_second", "probability"}, {}};
      for (int code = 0; code < 16; ++code) {
        t.rows.push_back({std::to_string(code),
                          qnc::bell_name(static_cast<qnc::BellIndex>(code >> 2)),
                          qnc::bell_name(static_cast<qnc::BellIndex>(code & 3)),
                          fmt(d.probs[code])});
      }
      emit(t, base_header(echo.str()), out_path, format);
    }
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  } catch (const std::domain_error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 3;
  }
  return 0;
}
