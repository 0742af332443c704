// Copyright 2026 The jrom Authors.
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

#include "cli.hpp"

#include <filesystem>
#include <fstream>
#include <memory>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "jrom/bytecode.hpp"
#include "jrom/error.hpp"
#include "jrom/pipeline.hpp"
#include "jrom/romizer.hpp"
#include "jrom/verify.hpp"

namespace jrom {
namespace {

namespace fs = std::filesystem;

struct RunConfig {
  std::vector<std::string> classpath;
  std::vector<std::string> targets;
  bool closure = false;
  LinkFlags flags;
  std::string out;
  std::string c_out;
  bool verify = false;
  std::string report_format = "table";
  std::uint64_t seed = 1;
  int vectors = 5;
  std::string trace;
  std::string corrupt;  // test hook: method whose operand gets flipped
};

// Fatal configuration or I/O problem.
struct ConfigError {
  std::string message;
};

class Command {
 public:
  Command(const RunConfig& cfg, std::ostream& out, std::ostream& err)
      : cfg_(cfg), out_(out), err_(err) {}

  int link();
  int report();
  int romize();
  int verify();

 private:
  ClassPath classpath() const;
  std::vector<std::string> roots() const;
  std::unique_ptr<Session> session(bool link) const;
  // Prints per-class failures; true if there were any.
  bool print_failures(const Session& s) const;
  SuiteReport run_suite(const Session& before, Session& after) const;
  std::string render_report(const Session& s) const;
  void write_file(const std::string& path, const std::string& data) const;

  const RunConfig& cfg_;
  std::ostream& out_;
  std::ostream& err_;
};

ClassPath Command::classpath() const {
  if (cfg_.classpath.empty()) throw ConfigError{"no --classpath given"};
  ClassPath cp;
  for (const std::string& p : cfg_.classpath) {
    if (!fs::is_directory(p)) {
      throw ConfigError{"classpath entry not found: " + p};
    }
    cp.add_directory(p);
  }
  return cp;
}

std::vector<std::string> Command::roots() const {
  if (!cfg_.targets.empty()) return cfg_.targets;
  std::set<std::string> all;
  for (const std::string& p : cfg_.classpath) {
    for (std::string& n : list_class_names(p)) all.insert(std::move(n));
  }
  return {all.begin(), all.end()};
}

std::unique_ptr<Session> Command::session(bool link) const {
  auto s = std::make_unique<Session>(classpath(), cfg_.flags);
  s->load(roots(), cfg_.closure);
  if (link) s->link();
  s->initialize();
  return s;
}

bool Command::print_failures(const Session& s) const {
  for (const ClassFailure& f : s.failures()) {
    err_ << "error: " << f.class_name << ": " << f.message << "\n";
  }
  return !s.failures().empty();
}

void Command::write_file(const std::string& path,
                         const std::string& data) const {
  std::ofstream f(path, std::ios::binary);
  f.write(data.data(), static_cast<std::streamsize>(data.size()));
  if (!f) throw ConfigError{"cannot write " + path};
}

std::string Command::render_report(const Session& s) const {
  std::vector<const ClassRep*> linked;
  for (const ClassRep* c : s.targets()) {
    if (c->state() == LoadState::Linked) linked.push_back(c);
  }
  FootprintReport r = build_report(linked, s.flags());
  return cfg_.report_format == "records" ? r.records() : r.table();
}

// Flips the first constant or quick operand byte of the named method.
void corrupt_method(Session& s, const std::string& name) {
  for (ClassRep* c : s.mutable_targets()) {
    for (auto& m : c->methods) {
      if (!m->code || !m->qualified_name().starts_with(name)) continue;
      Bytes& code = m->code->bytecode;
      for (const Instruction& insn : decode(code)) {
        switch (insn.opcode) {
          case op::kBipush:
          case op::kLdcQuickI:
          case op::kLdcQuickF:
            code[insn.pc + 1] ^= 1;
            return;
          case op::kSipush:
          case op::kLdcWQuickI:
          case op::kLdcWQuickF:
          case op::kLdc2QuickL:
          case op::kLdc2QuickD:
          case op::kGetstaticQuick:
          case op::kPutstaticQuick:
          case op::kGetfieldQuick:
          case op::kPutfieldQuick:
          case op::kInvokevirtualQuick:
            code[insn.pc + 2] ^= (insn.opcode >= op::kGetstaticQuick &&
                                  insn.opcode <= op::kPutfieldQuick)
                                     ? 8
                                     : 1;
            return;
          default:
            break;
        }
      }
    }
  }
  throw ConfigError{"no operand to corrupt in " + name};
}

SuiteReport Command::run_suite(const Session& before, Session& after) const {
  std::ofstream trace;
  SuiteOptions opt;
  opt.seed = cfg_.seed;
  opt.vectors = cfg_.vectors;
  if (!cfg_.trace.empty()) {
    trace.open(cfg_.trace);
    if (!trace) throw ConfigError{"cannot write " + cfg_.trace};
    opt.trace = &trace;
  }
  SuiteReport r = differential_suite(before.world(), after.world(), opt);
  for (const MethodFailure& f : r.failures) {
    err_ << "mismatch: " << f.method << ": " << f.difference << "\n";
  }
  if (!r.zones_difference.empty()) {
    err_ << "mismatch: initialized state: " << r.zones_difference << "\n";
  }
  if (r.mutation_ran && !r.mutation_detected) {
    err_ << "error: corrupting " << r.mutation_target << " went unnoticed\n";
  }
  if (r.checked == 0) err_ << "warning: 0 methods checked\n";
  return r;
}

int Command::link() {
  auto s = session(true);
  std::size_t linked = 0;
  for (const ClassRep* c : s->targets()) {
    if (c->state() == LoadState::Linked) ++linked;
  }
  out_ << "linked " << linked << " classes\n";
  return print_failures(*s) ? kExitFailures : kExitOk;
}

int Command::report() {
  auto s = session(true);
  std::string text = render_report(*s);
  if (cfg_.out.empty()) {
    out_ << text;
  } else {
    write_file(cfg_.out, text);
  }
  return print_failures(*s) ? kExitFailures : kExitOk;
}

int Command::romize() {
  if (cfg_.out.empty()) throw ConfigError{"romize needs --out"};
  auto s = session(true);
  if (print_failures(*s)) return kExitFailures;
  if (cfg_.verify) {
    auto before = session(false);
    if (print_failures(*before)) return kExitFailures;
    SuiteReport r = run_suite(*before, *s);
    if (!r.passed()) return kExitFailures;
    out_ << "verified " << r.checked << " methods\n";
  }
  Bytes image;
  try {
    image = emit_image(s->targets(), s->world().heap, s->flags());
  } catch (const Error& e) {
    err_ << "error: " << e.what() << "\n";
    return kExitFailures;
  }
  write_file(cfg_.out, std::string(image.begin(), image.end()));
  if (!cfg_.c_out.empty()) write_file(cfg_.c_out, emit_c_array(image, "jrom_image"));
  write_file(cfg_.out + ".report", render_report(*s));
  out_ << "wrote " << image.size() << " bytes, " << s->targets().size()
       << " classes\n";
  return kExitOk;
}

int Command::verify() {
  auto before = session(false);
  auto after = session(true);
  bool failed = print_failures(*before) | print_failures(*after);
  if (!cfg_.corrupt.empty()) corrupt_method(*after, cfg_.corrupt);
  SuiteReport r = run_suite(*before, *after);
  out_ << "checked " << r.checked << " methods, " << r.vectors
       << " vectors, skipped " << r.skipped << "\n";
  if (r.mutation_ran) {
    out_ << "mutation " << (r.mutation_detected ? "detected" : "missed")
         << " at " << r.mutation_target << "\n";
  }
  if (r.passed()) out_ << "verified " << r.checked << " methods\n";
  return failed || !r.passed() ? kExitFailures : kExitOk;
}

void add_common(CLI::App& cmd, RunConfig& cfg) {
  cmd.add_option("--classpath,-c", cfg.classpath,
                 "class directory (repeatable)")
      ->required()
      ->allow_extra_args(false);
  cmd.add_option("targets", cfg.targets,
                 "binary class names (default: every class on the classpath)");
  cmd.add_flag("--closure", cfg.closure,
               "also take every transitively referenced class");
  cmd.add_flag_function(
      "--no-introspection",
      [&cfg](std::int64_t) { cfg.flags.introspection = false; },
      "drop member names kept for reflection");
  cmd.add_flag("--private-field-opt", cfg.flags.private_field_opt,
               "rewrite accesses to a class's own private fields");
  cmd.add_option_function<std::vector<std::string>>(
      "--close-package",
      [&cfg](const std::vector<std::string>& v) {
        cfg.flags.closed_packages.insert(v.begin(), v.end());
      },
      "treat a package as closed (repeatable)")
      ->allow_extra_args(false);
  cmd.add_flag("--closed-world", cfg.flags.closed_world,
               "no class outside the set will ever link against it");
  cmd.add_option("--seed", cfg.seed, "seed for verification vectors");
  cmd.add_option("--vectors", cfg.vectors, "argument vectors per method")
      ->check(CLI::PositiveNumber);
  cmd.add_option("--trace", cfg.trace, "write an execution trace to a file");
}

}  // namespace

int run_cli(int argc, const char* const* argv, std::ostream& out,
            std::ostream& err) {
  RunConfig cfg;
  CLI::App app{"jrom: preload, link and romize Java classes"};
  app.require_subcommand(1);

  CLI::App* link = app.add_subcommand("link", "load and link classes");
  CLI::App* report = app.add_subcommand("report", "footprint report");
  CLI::App* romize = app.add_subcommand("romize", "write a ROM image");
  CLI::App* verify =
      app.add_subcommand("verify", "differential check of linked code");
  for (CLI::App* cmd : {link, report, romize, verify}) add_common(*cmd, cfg);
  for (CLI::App* cmd : {report, romize}) {
    cmd->add_option("--report-format", cfg.report_format, "table or records")
        ->check(CLI::IsMember({"table", "records"}));
    cmd->add_option("--out,-o", cfg.out, "output file");
  }
  romize->add_option("--c-out", cfg.c_out, "also write the image as C source");
  romize->add_flag("--verify", cfg.verify, "run the differential check first");
  verify->add_option("--inject-corruption", cfg.corrupt)->group("");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitConfig;
  }

  Command command(cfg, out, err);
  try {
    if (!cfg.out.empty() && cfg.out == cfg.c_out) {
      throw ConfigError{"--out and --c-out name the same file"};
    }
    if (*link) return command.link();
    if (*report) return command.report();
    if (*romize) return command.romize();
    return command.verify();
  } catch (const ConfigError& e) {
    err << "error: " << e.message << "\n";
    return kExitConfig;
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return e.code() == ErrorCode::Io ? kExitConfig : kExitFailures;
  }
}

}  // namespace jrom
