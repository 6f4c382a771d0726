#pragma once

#include <memory>
#include <mutex>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "dimerbfz/io.hpp"

namespace dimerbfz {

/// Mutation requested at a frozen vertex.
class FrozenVertexError : public std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

/// One instance with its current seed. Layout, faces and certificates
/// describe the initial instance; the seed moves with the mutations.
class Session {
 public:
  /// Without a potential the superpotential of the layout faces is used;
  /// without either the potential is zero.
  explicit Session(Instance instance, std::optional<Potential> potential = std::nullopt,
                   RigidityOptions options = {});

  /// {"instance", "potential"?, "history"}.
  Json state() const;
  /// Rebuilds the initial seed and replays the history.
  static Session from_state(const Json& j);

  const Instance& instance() const { return instance_; }
  const Seed& seed() const { return seed_; }
  const std::vector<int>& history() const { return history_; }
  const std::vector<Face>& faces() const { return faces_; }
  const Potential& potential() const { return potential_; }

  /// Throws FrozenVertexError for frozen vertices and ValidationError for
  /// unknown ones.
  void mutate(int vertex);
  void reset();
  /// Replaying the history from the initial seed reproduces the seed.
  bool consistent() const;

  /// Rigidity of the initial instance, computed on first use.
  const RigidityReport& rigidity();

 private:
  Instance instance_;
  Potential potential_;
  std::vector<Face> faces_;
  RigidityOptions options_;
  Seed initial_;
  Seed seed_;
  std::vector<int> history_;
  std::optional<RigidityReport> rigidity_;
};

/// {"quiver", "variables", "history"}.
Json seed_response(const Session& session);
/// {"verdict", "certificates"}.
Json certificate_response(const RigidityReport& report);

/// HTTP front end for one session. Mutations and resets are serialized;
/// reads work on the latest published snapshot.
class Server {
 public:
  explicit Server(Session session);
  ~Server();
  Server(const Server&) = delete;
  Server& operator=(const Server&) = delete;

  /// Returns the bound port, or -1. Port 0 picks a free one.
  int bind(const std::string& host, int port);
  /// Blocks until stop().
  void listen();
  void stop();

  /// Copy of the session state.
  Json state() const;

 private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
};

}  // namespace dimerbfz
