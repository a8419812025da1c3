// Copyright 2026 The Vassiliev Authors. All Rights Reserved.
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

// vassiliev: enumeration tables, invariant computation and property checks.
//
// Exit codes: 0 success, 1 file, validation or usage error, 2 an estimate
// missed its error target or a property check failed.

#include <chrono>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "vassiliev/canon.hpp"
#include "vassiliev/checks.hpp"
#include "vassiliev/enumerate.hpp"
#include "vassiliev/invariant.hpp"
#include "vassiliev/link.hpp"
#include "vassiliev/report.hpp"

namespace {

using vassiliev::RunReport;

constexpr int kOk = 0;
constexpr int kInputError = 1;
constexpr int kNotConverged = 2;

struct Flags {
  std::string link;
  std::string config;
  std::optional<int> degree;
  int components = 1;
  std::optional<std::int64_t> budget;
  std::optional<std::uint64_t> seed;
  std::string suite;
  std::optional<int> workers;
  std::string out;
  bool timings = false;
};

nlohmann::json read_json(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error(path + ": cannot open");
  try {
    return nlohmann::json::parse(in);
  } catch (const nlohmann::json::parse_error& e) {
    throw std::runtime_error(path + ": " + e.what());
  }
}

void emit(const std::string& text, const std::string& out) {
  if (out.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream f(out);
  if (!f) throw std::runtime_error(out + ": cannot write");
  f << text;
}

vassiliev::Link load_checked(const std::string& path) {
  vassiliev::Link link;
  try {
    link = vassiliev::load_link(path);
  } catch (const nlohmann::json::exception& e) {
    throw std::runtime_error(path + ": " + e.what());
  }
  const auto violations = vassiliev::validate(link);
  if (!violations.empty()) {
    std::string msg = path + ": invalid link";
    for (const auto& v : violations) msg += "\n  " + v;
    throw std::runtime_error(msg);
  }
  return link;
}

int cmd_enumerate(const Flags& f) {
  const int n = f.degree.value_or(1);
  const auto table = vassiliev::enumerate(n, f.components);
  std::ostringstream text;
  nlohmann::json rows = nlohmann::json::array();
  text << "# degree " << n << ", " << f.components << " core(s): " << table.size() << " classes\n";
  text << "#   u   t   e deg  |Aut| |Aut+|  diagram\n";
  for (const auto& d : table) {
    const auto aut = vassiliev::automorphism_orders(d);
    char line[96];
    std::snprintf(line, sizeof line, "%4d%4d%4d%4d%7lld%7lld  ", d.external_count(), d.internal_count(),
                  d.edge_count(), vassiliev::degree(d), static_cast<long long>(aut.all),
                  static_cast<long long>(aut.even));
    text << line << vassiliev::to_text(d) << "\n";
    rows.push_back({{"diagram", vassiliev::to_text(d)},
                    {"u", d.external_count()},
                    {"t", d.internal_count()},
                    {"e", d.edge_count()},
                    {"degree", vassiliev::degree(d)},
                    {"aut", aut.all},
                    {"aut_even", aut.even}});
  }
  std::cout << text.str();
  if (!f.out.empty()) {
    RunReport r;
    r.command = "enumerate";
    r.inputs = {{"degree", n}, {"components", f.components}};
    r.results = {{"diagrams", rows}};
    emit(r.dump(), f.out);
  }
  return kOk;
}

int cmd_invariant(const Flags& f) {
  nlohmann::json config;
  std::string link_path = f.link;
  if (!f.config.empty()) {
    config = read_json(f.config);
    if (link_path.empty() && config.is_object() && config.contains("link")) {
      std::filesystem::path p = config.at("link").get<std::string>();
      if (p.is_relative()) p = std::filesystem::path(f.config).parent_path() / p;
      link_path = p.string();
    }
  }
  if (link_path.empty()) throw std::invalid_argument("invariant: --link or a config with \"link\" is required");
  const auto link = load_checked(link_path);
  auto opt = vassiliev::options_from_json(config, link);
  if (f.degree) opt.degree = *f.degree;
  if (f.budget) opt.budget = *f.budget, opt.budgets.clear();
  if (f.seed) opt.seed = *f.seed;
  if (f.workers) opt.workers = *f.workers;
  if (opt.degree < 0 || opt.degree > 2) throw std::invalid_argument("invariant: degree must lie in 0..2");

  const auto start = std::chrono::steady_clock::now();
  const auto result = vassiliev::assemble_V(link, opt);
  RunReport r;
  r.command = "invariant";
  r.inputs = {{"link", vassiliev::to_json(link)}, {"options", vassiliev::to_json(opt)}};
  r.results = {{"degrees", result.to_json(false)}, {"converged", result.converged()}};
  r.seed = opt.seed;
  r.exit_code = result.converged() ? kOk : kNotConverged;
  if (f.timings) {
    nlohmann::json per = nlohmann::json::array();
    for (const auto& d : result.degrees) per.push_back(d.seconds);
    r.timings = {{"total_seconds", std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count()},
                 {"degree_seconds", per},
                 {"workers", opt.workers}};
  }
  emit(r.dump(), f.out);
  return r.exit_code;
}

int cmd_check(const Flags& f) {
  vassiliev::CheckConfig config;
  nlohmann::json raw = nlohmann::json::object();
  if (!f.config.empty()) {
    raw = read_json(f.config);
    config = vassiliev::check_config_from_json(raw, std::filesystem::path(f.config).parent_path().string());
  }
  if (!f.link.empty()) config.links.insert(config.links.begin(), load_checked(f.link));
  if (f.degree) config.invariant.degree = *f.degree;
  if (f.budget) config.invariant.budget = *f.budget, config.invariant.budgets.clear();
  if (f.seed) config.seed = config.invariant.seed = *f.seed;
  if (f.workers) config.invariant.workers = *f.workers;

  const auto start = std::chrono::steady_clock::now();
  RunReport r;
  r.command = "check";
  r.checks = vassiliev::run_suite(f.suite, config);
  r.inputs = {{"suite", f.suite}, {"config", raw}, {"options", vassiliev::to_json(config.invariant)}};
  r.seed = config.seed;
  bool pass = true;
  for (const auto& c : r.checks) pass = pass && c.pass;
  r.exit_code = pass ? kOk : kNotConverged;
  if (f.timings)
    r.timings = {{"total_seconds", std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count()},
                 {"workers", config.invariant.workers}};
  for (const auto& c : r.checks)
    std::cerr << (c.pass ? "PASS " : "FAIL ") << c.name << "  measured " << c.measured << " tolerance "
              << c.tolerance << "  " << c.detail << "\n";
  emit(r.dump(), f.out);
  return r.exit_code;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Configuration-space integrals for links in the thickened torus"};
  app.set_version_flag("--version", std::string(vassiliev::code_version()));
  app.require_subcommand(1);
  Flags f;

  auto* en = app.add_subcommand("enumerate", "Tabulate abstract diagrams of one degree");
  en->add_option("--degree", f.degree, "Degree n")->required();
  en->add_option("--components", f.components, "Number of core circles")->capture_default_str();
  en->add_option("--out", f.out, "Also write the table as a JSON report");

  auto* inv = app.add_subcommand("invariant", "Compute V(L) up to a degree");
  inv->add_option("--link", f.link, "Link file (JSON)");
  inv->add_option("--config", f.config, "Run config (JSON); may name the link");
  inv->add_option("--degree", f.degree, "Degree cutoff, 0..2 (default: link or config, else 2)");
  inv->add_option("--budget", f.budget, "Samples per diagram (default: link or config, else 200000)");
  inv->add_option("--seed", f.seed, "Seed (default: link or config, else 1)");
  inv->add_option("--workers", f.workers, "Worker threads; results do not depend on it (default 1)");
  inv->add_option("--out", f.out, "Report file (default: standard output)");
  inv->add_flag("--timings", f.timings, "Add wall-clock timings to the report");

  auto* chk = app.add_subcommand("check", "Run a property-check suite");
  std::string suites;
  for (const auto& s : vassiliev::suite_names()) suites += (suites.empty() ? "" : ", ") + s;
  chk->add_option("--suite", f.suite, "One of: " + suites)->required();
  chk->add_option("--config", f.config, "Check config (JSON) listing links, pairs and singular links");
  chk->add_option("--link", f.link, "Extra link, used first by single-link suites");
  chk->add_option("--degree", f.degree, "Degree cutoff for invariant runs");
  chk->add_option("--budget", f.budget, "Samples per diagram for invariant runs");
  chk->add_option("--seed", f.seed, "Seed for all randomness");
  chk->add_option("--workers", f.workers, "Worker threads (default 1)");
  chk->add_option("--out", f.out, "Report file (default: standard output)");
  chk->add_flag("--timings", f.timings, "Add wall-clock timings to the report");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? kOk : kInputError;
  }
  try {
    if (en->parsed()) return cmd_enumerate(f);
    if (inv->parsed()) return cmd_invariant(f);
    return cmd_check(f);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kInputError;
  }
}
