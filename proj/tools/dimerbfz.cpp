// Command-line front end: build, verify, rigidity, mutate, serve.
// Exit codes: 0 pass, 1 property failure, 2 input error.

#include <spdlog/sinks/stdout_color_sinks.h>
#include <spdlog/spdlog.h>

#include <csignal>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "dimerbfz/io.hpp"
#include "dimerbfz/session.hpp"

using namespace dimerbfz;

namespace {

constexpr int kPass = 0;
constexpr int kFail = 1;
constexpr int kInput = 2;

struct InputArgs {
  std::string type;
  std::string u;
  std::string v;
  std::string interleave;
  std::string frozen = "omit";
  std::string quiver_file;
  std::string potential_file;
};

void add_input_options(CLI::App* cmd, InputArgs& in) {
  cmd->add_option("--type", in.type, "Named type (A3, D4, E6, ...) or a JSON Cartan matrix");
  cmd->add_option("--u", in.u, "Word for u, space-separated letters");
  cmd->add_option("--v", in.v, "Word for v, space-separated letters");
  cmd->add_option("--interleave", in.interleave, "Shuffle of u (0) and v (1), e.g. 00101");
  cmd->add_option("--frozen-arrows", in.frozen, "Arrows between frozen vertices")
      ->check(CLI::IsMember({"omit", "close"}));
  cmd->add_option("--quiver", in.quiver_file, "Instance or quiver JSON file")->check(CLI::ExistingFile);
  cmd->add_option("--potential", in.potential_file, "Potential JSON file")->check(CLI::ExistingFile);
}

Json read_json(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ValidationError("cannot read " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  Json j = Json::parse(ss.str(), nullptr, false);
  if (j.is_discarded()) throw ValidationError(path + " is not valid JSON");
  return j;
}

Instance load_instance(const InputArgs& in) {
  if (!in.quiver_file.empty()) {
    if (!in.type.empty() || !in.u.empty() || !in.v.empty())
      throw ValidationError("--quiver cannot be combined with --type, --u or --v");
    return instance_from_json(read_json(in.quiver_file));
  }
  if (in.type.empty()) throw ValidationError("either --type or --quiver is required");
  const CartanMatrix cartan = parse_cartan(in.type);
  return build_instance(cartan, parse_word(in.u), parse_word(in.v), parse_interleave(in.interleave),
                        in.frozen == "close" ? FrozenArrows::close : FrozenArrows::omit);
}

std::optional<Potential> load_potential(const InputArgs& in, const Quiver& quiver) {
  if (in.potential_file.empty()) return std::nullopt;
  return potential_from_json(read_json(in.potential_file), quiver);
}

void print(const Json& j) { std::cout << j.dump(2) << "\n"; }

int run_build(const InputArgs& in, const std::string& format) {
  const Instance inst = load_instance(in);
  if (format == "dot")
    std::cout << to_dot(inst.quiver);
  else if (format == "tikz")
    std::cout << to_tikz(inst);
  else
    print(to_json(inst));
  return kPass;
}

int run_verify(const InputArgs& in) {
  const Instance inst = load_instance(in);
  if (!inst.layout) throw ValidationError("verify needs a cylinder layout (use --type or an instance file)");
  const DimerReport report = check_dimer(inst.quiver, *inst.layout);
  print(to_json(report));
  return report.pass() ? kPass : kFail;
}

int run_rigidity(const InputArgs& in, std::size_t cap, std::size_t oracle_dim, bool certificates) {
  Instance inst = load_instance(in);
  std::optional<Potential> s = load_potential(in, inst.quiver);
  if (!s && !inst.layout) throw ValidationError("rigidity needs a layout or --potential");
  RigidityOptions options;
  options.length_cap = cap;
  options.oracle_max_dimension = oracle_dim;
  Session session(std::move(inst), std::move(s), options);
  const RigidityReport& report = session.rigidity();
  print(certificates ? certificate_response(report) : verdict_json(report));
  return report.rigid ? kPass : kFail;
}

Session open_session(const InputArgs& in, const std::string& load) {
  if (!load.empty()) return Session::from_state(read_json(load));
  Instance inst = load_instance(in);
  std::optional<Potential> s = load_potential(in, inst.quiver);
  return Session(std::move(inst), std::move(s));
}

void save_session(const Session& session, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw ValidationError("cannot write " + path);
  out << session.state().dump(2) << "\n";
}

int run_mutate(const InputArgs& in, const std::vector<int>& at, const std::string& load, const std::string& save) {
  Session session = open_session(in, load);
  try {
    for (int k : at) session.mutate(k);
  } catch (const FrozenVertexError& e) {
    throw ValidationError(e.what());
  }
  print(seed_response(session));
  if (!save.empty()) save_session(session, save);
  return kPass;
}

Server* g_server = nullptr;

extern "C" void on_signal(int) {
  if (g_server) g_server->stop();
}

int run_serve(const InputArgs& in, const std::string& host, int port, const std::string& load,
              const std::string& save) {
  Server server(open_session(in, load));
  const int bound = server.bind(host, port);
  if (bound < 0) throw ValidationError("cannot bind " + host + ":" + std::to_string(port));
  std::cerr << "listening on http://" << host << ":" << bound << "\n";
  g_server = &server;
  std::signal(SIGINT, on_signal);
  std::signal(SIGTERM, on_signal);
  server.listen();
  g_server = nullptr;
  if (!save.empty()) {
    std::ofstream out(save);
    if (!out) throw ValidationError("cannot write " + save);
    out << server.state().dump(2) << "\n";
  }
  return kPass;
}

bool configure_logging() {
  auto logger = spdlog::stderr_color_mt("dimerbfz");
  spdlog::set_default_logger(logger);
  spdlog::set_level(spdlog::level::warn);
  const char* env = std::getenv("DIMERBFZ_LOG");
  if (!env || !*env) return true;
  const std::string level = env;
  if (level == "error")
    spdlog::set_level(spdlog::level::err);
  else if (level == "info")
    spdlog::set_level(spdlog::level::info);
  else if (level == "debug")
    spdlog::set_level(spdlog::level::debug);
  else
    return false;
  return true;
}

}  // namespace

int main(int argc, char** argv) {
  if (!configure_logging()) {
    std::cerr << "error: DIMERBFZ_LOG must be error, info or debug\n";
    return kInput;
  }

  CLI::App app{"BFZ quivers as dimer models and rigidity of their potentials"};
  app.require_subcommand(1);
  InputArgs in;

  auto* build = app.add_subcommand("build", "Build a quiver with its cylinder layout");
  add_input_options(build, in);
  std::string format = "json";
  build->add_option("--format", format, "Output format")->check(CLI::IsMember({"json", "dot", "tikz"}));

  auto* verify = app.add_subcommand("verify", "Check the dimer axioms");
  add_input_options(verify, in);

  auto* rigidity = app.add_subcommand("rigidity", "Certify every simple cycle");
  add_input_options(rigidity, in);
  std::size_t cap = 0;
  std::size_t oracle_dim = 20'000;
  bool certificates = false;
  rigidity->add_option("--cap", cap, "Longest simple cycle to enumerate (default: vertex count)");
  rigidity->add_option("--oracle-dim", oracle_dim, "Largest linear system for the oracle");
  rigidity->add_flag("--certificates", certificates, "Print the certificates with the verdict");

  auto* mutate = app.add_subcommand("mutate", "Mutate the seed");
  add_input_options(mutate, in);
  std::vector<int> at;
  std::string load;
  std::string save;
  mutate->add_option("--at", at, "Vertex to mutate at; repeat for a sequence")->take_all();
  mutate->add_option("--load", load, "Session state to start from")->check(CLI::ExistingFile);
  mutate->add_option("--save", save, "Write the session state here");

  auto* serve = app.add_subcommand("serve", "Serve a session over HTTP");
  add_input_options(serve, in);
  std::string host = "127.0.0.1";
  int port = 8080;
  serve->add_option("--host", host, "Address to bind");
  serve->add_option("--port", port, "Port to bind; 0 picks a free one");
  serve->add_option("--load", load, "Session state to start from")->check(CLI::ExistingFile);
  serve->add_option("--save", save, "Write the session state here on shutdown");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kPass : kInput;
  }

  try {
    if (build->parsed()) return run_build(in, format);
    if (verify->parsed()) return run_verify(in);
    if (rigidity->parsed()) return run_rigidity(in, cap, oracle_dim, certificates);
    if (mutate->parsed()) return run_mutate(in, at, load, save);
    if (serve->parsed()) return run_serve(in, host, port, load, save);
  } catch (const ValidationError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kInput;
  } catch (const CapError& e) {
    std::cerr << "cap exceeded: " << e.what() << "\n";
    return kFail;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return kInput;
  }
  return kInput;
}
