// Copyright 2026 The witness authors
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

// Command-line front end: check, explore, serve and fixtures.

#include <unistd.h>

#include <csignal>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "witness/cli.hpp"
#include "witness/service.hpp"

namespace fs = std::filesystem;
using namespace witness;

namespace {

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot read " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_file(const fs::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  out << text;
}

void print_parse_error(const ParseError& e, const SourceFile& src) {
  std::cerr << src.path();
  if (e.span.valid()) {
    auto [line, col] = src.position(e.span.begin);
    std::cerr << ":" << line << ":" << col;
  }
  std::cerr << ": error: " << e.message;
  if (!e.expected.empty()) {
    std::cerr << " (expected";
    for (const std::string& x : e.expected) std::cerr << " " << x;
    std::cerr << ")";
  }
  std::cerr << "\n";
}

struct CheckOptions {
  std::string file;
  std::string entry;
  std::string format = "text";
  SearchParams params;
};

int run_check(const CheckOptions& o) {
  SourceFile src(o.file, read_file(o.file));
  try {
    link_entry(parse_program(src), o.entry);
  } catch (const ParseFailure& f) {
    print_parse_error(f.error(), src);
    if (o.format == "json") std::cout << to_json(f.error(), src).dump(2) << "\n";
    return kUsageExit;
  } catch (const std::invalid_argument& e) {
    std::cerr << o.file << ": " << e.what() << "\n";
    return kUsageExit;
  }
  TraceDocument doc = analyze(src, o.entry, o.params);
  if (o.format == "json")
    std::cout << serialize(doc);
  else
    std::cout << render_report(doc);
  return exit_code(doc.report.classification);
}

int run_explore(const std::string& path, const std::string& script) {
  Explorer ex(parse_document(read_file(path)));
  std::ifstream file;
  if (!script.empty()) {
    file.open(script);
    if (!file) throw std::runtime_error("cannot read " + script);
  }
  std::istream& in = script.empty() ? std::cin : file;
  const bool prompt = script.empty() && isatty(STDIN_FILENO);
  std::cout << render_state(ex.state(), ex.graph());
  for (std::string line; !ex.done();) {
    if (prompt) std::cout << "> " << std::flush;
    if (!std::getline(in, line)) break;
    std::cout << ex.execute(line);
  }
  return 0;
}

HttpServer* g_server = nullptr;

int run_serve(const std::string& input, const std::string& entry, const std::string& host, int port,
              const std::string& static_dir, const SearchParams& params) {
  CheckService service(64, params);
  if (!input.empty()) {
    std::string text = read_file(input);
    if (fs::path(input).extension() == ".json") {
      service.set_trace(parse_document(text));
    } else {
      SourceFile src(input, text);
      try {
        service.set_trace(analyze(src, entry, params));
      } catch (const ParseFailure& f) {
        print_parse_error(f.error(), src);
        return kUsageExit;
      }
    }
  }
  HttpServer server(service, static_dir.empty() ? std::nullopt : std::optional<std::string>(static_dir));
  int bound = server.bind(host, port);
  if (bound < 0) {
    std::cerr << "cannot bind " << host << ":" << port << "\n";
    return kUsageExit;
  }
  g_server = &server;
  std::signal(SIGINT, [](int) {
    if (g_server) g_server->stop();
  });
  std::cout << "listening on http://" << host << ":" << bound << std::endl;
  server.listen();
  g_server = nullptr;
  return 0;
}

int run_fixtures(const std::string& out_dir, const std::vector<std::string>& files) {
  std::vector<SourceFile> programs;
  for (const std::string& f : files) programs.emplace_back(f, read_file(f));
  std::vector<Fixture> fixtures = make_fixtures(programs);
  fs::create_directories(out_dir);
  Json index = Json::array();
  for (const Fixture& f : fixtures) {
    fs::path base = fs::path(out_dir) / f.name;
    write_file(base.string() + ".document.json", serialize(f.document));
    std::string script;
    for (const ScriptCommand& c : f.script) script += format_script_command(c) + "\n";
    write_file(base.string() + ".script.txt", script);
    write_file(base.string() + ".expected.json", f.expected.dump(2) + "\n");
    index.push_back(f.name);
  }
  write_file(fs::path(out_dir) / "index.json", index.dump(2) + "\n");
  std::cout << fixtures.size() << " fixtures written to " << out_dir << "\n";
  return 0;
}

void add_search_flags(CLI::App* cmd, SearchParams& p) {
  cmd->add_option("--tests", p.num_traces, "Number of traces")->check(CLI::Range(1, 100000));
  cmd->add_option("--steps", p.step_limit, "Step limit per trace")->check(CLI::PositiveNumber);
  cmd->add_option("--timeout", p.timeout_seconds, "Wall-clock budget in seconds")->check(CLI::PositiveNumber);
  cmd->add_option("--seed", p.seed, "Base seed");
  cmd->add_option("--jobs", p.jobs, "Worker threads")->check(CLI::Range(1, 64));
  cmd->add_flag("--exhaustive", p.exhaustive, "Keep searching after the first witness");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Search for type-error witnesses and explore their traces."};
  app.require_subcommand(1);

  CheckOptions check;
  CLI::App* check_cmd = app.add_subcommand("check", "Search one program for a witness");
  check_cmd->add_option("file", check.file, "Program source")->required()->check(CLI::ExistingFile);
  check_cmd->add_option("--entry", check.entry, "Function to test (default: last binding)");
  check_cmd->add_option("--format", check.format, "Output format")->check(CLI::IsMember({"text", "json"}));
  add_search_flags(check_cmd, check.params);

  std::string doc_path, script_path;
  CLI::App* explore_cmd = app.add_subcommand("explore", "Step through a trace document");
  explore_cmd->add_option("document", doc_path, "Trace document (JSON)")->required()->check(CLI::ExistingFile);
  explore_cmd->add_option("--script", script_path, "Read commands from a file")->check(CLI::ExistingFile);

  std::string serve_input, serve_entry, host = "127.0.0.1", static_dir;
  int port = 8080;
  SearchParams serve_params;
  CLI::App* serve_cmd = app.add_subcommand("serve", "Run the local HTTP service");
  serve_cmd->add_option("input", serve_input, "Program source or trace document served at /trace")
      ->check(CLI::ExistingFile);
  serve_cmd->add_option("--entry", serve_entry, "Entry for a program input");
  serve_cmd->add_option("--host", host, "Address to bind");
  serve_cmd->add_option("--port", port, "Port (0 picks a free one)")->check(CLI::Range(0, 65535));
  serve_cmd->add_option("--static", static_dir, "Directory served at /")->check(CLI::ExistingDirectory);
  add_search_flags(serve_cmd, serve_params);

  std::string out_dir;
  std::vector<std::string> fixture_files;
  CLI::App* fixtures_cmd = app.add_subcommand("fixtures", "Write traversal conformance fixtures");
  fixtures_cmd->add_option("--out", out_dir, "Output directory")->required();
  fixtures_cmd->add_option("programs", fixture_files, "Program sources")->required()->check(CLI::ExistingFile);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kUsageExit;
  }

  try {
    if (*check_cmd) return run_check(check);
    if (*explore_cmd) return run_explore(doc_path, script_path);
    if (*serve_cmd) return run_serve(serve_input, serve_entry, host, port, static_dir, serve_params);
    if (*fixtures_cmd) return run_fixtures(out_dir, fixture_files);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsageExit;
  }
  return kUsageExit;
}
