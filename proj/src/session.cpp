#include "dimerbfz/session.hpp"

#include <spdlog/spdlog.h>

#include "httplib.h"

namespace dimerbfz {

namespace {

Potential default_potential(const Instance& instance, const std::vector<Face>& faces) {
  if (!instance.layout) return Potential();
  return superpotential(instance.quiver, faces);
}

}  // namespace

Session::Session(Instance instance, std::optional<Potential> potential, RigidityOptions options)
    : instance_(std::move(instance)), options_(options), initial_(instance_.quiver), seed_(initial_) {
  faces_ = instance_faces(instance_, potential ? &*potential : nullptr);
  potential_ = potential ? std::move(*potential) : default_potential(instance_, faces_);
}

Json Session::state() const {
  Json j{{"instance", to_json(instance_)}};
  j["potential"] = to_json(potential_);
  j["history"] = history_;
  return j;
}

Session Session::from_state(const Json& j) {
  if (!j.is_object() || !j.contains("instance")) throw ValidationError("session state needs \"instance\"");
  Instance instance = instance_from_json(j.at("instance"));
  std::optional<Potential> potential;
  if (j.contains("potential")) potential = potential_from_json(j.at("potential"), instance.quiver);
  Session session(std::move(instance), std::move(potential));
  if (j.contains("history")) {
    if (!j.at("history").is_array()) throw ValidationError("\"history\" must be an array");
    for (const Json& k : j.at("history")) {
      if (!k.is_number_integer()) throw ValidationError("\"history\" must hold vertex ids");
      session.mutate(k.get<int>());
    }
  }
  return session;
}

void Session::mutate(int vertex) {
  const Vertex& v = seed_.quiver().vertex(vertex);
  if (v.frozen) throw FrozenVertexError("vertex " + std::to_string(vertex) + " is frozen and cannot be mutated");
  seed_ = mutate_seed(seed_, vertex);
  history_.push_back(vertex);
  spdlog::debug("mutated at {}; history length {}", vertex, history_.size());
}

void Session::reset() {
  seed_ = initial_;
  history_.clear();
}

bool Session::consistent() const {
  Seed replayed = initial_;
  for (int k : history_) replayed = mutate_seed(replayed, k);
  return replayed == seed_;
}

const RigidityReport& Session::rigidity() {
  if (!rigidity_) {
    const CylinderLayout* lay = instance_.layout ? &*instance_.layout : nullptr;
    rigidity_ = rigidity_check(instance_.quiver, lay, faces_, potential_, options_);
  }
  return *rigidity_;
}

Json seed_response(const Session& session) {
  Json j = to_json(session.seed());
  j["history"] = session.history();
  return j;
}

Json certificate_response(const RigidityReport& report) {
  Json certificates = Json::array();
  for (const CycleResult& c : report.cycles)
    if (c.certified) certificates.push_back(to_json(c.certificate));
  return {{"verdict", verdict_json(report)}, {"certificates", std::move(certificates)}};
}

// Server ----------------------------------------------------------------------

struct Server::Impl {
  explicit Impl(Session s) : session(std::move(s)) { publish(); }

  // Guards session; held for whole mutations so they apply in arrival order.
  mutable std::mutex mutex;
  Session session;
  // Immutable rendered responses, swapped after each change.
  std::shared_ptr<const std::string> quiver;
  std::shared_ptr<const std::string> layout;
  std::shared_ptr<const std::string> faces;
  std::shared_ptr<const std::string> certificate;
  httplib::Server http;

  void publish() {
    quiver = std::make_shared<const std::string>(seed_response(session).dump());
    if (!layout) {
      const Instance& inst = session.instance();
      layout = std::make_shared<const std::string>(inst.layout ? to_json(*inst.layout).dump() : "");
      faces = std::make_shared<const std::string>(to_json(session.faces()).dump());
    }
  }

  std::shared_ptr<const std::string> snapshot(const std::shared_ptr<const std::string>& p) const {
    std::lock_guard lock(mutex);
    return p;
  }
};

namespace {

void send_json(httplib::Response& res, int status, const std::string& body) {
  res.status = status;
  res.set_content(body, "application/json");
}

void send_error(httplib::Response& res, int status, const std::string& message) {
  send_json(res, status, Json{{"error", message}}.dump());
}

}  // namespace

Server::Server(Session session) : impl_(std::make_unique<Impl>(std::move(session))) {
  Impl& im = *impl_;
  im.http.Get("/quiver", [&im](const httplib::Request&, httplib::Response& res) {
    send_json(res, 200, *im.snapshot(im.quiver));
  });
  im.http.Get("/layout", [&im](const httplib::Request&, httplib::Response& res) {
    auto body = im.snapshot(im.layout);
    if (body->empty())
      send_error(res, 404, "the session has no cylinder layout");
    else
      send_json(res, 200, *body);
  });
  im.http.Get("/faces", [&im](const httplib::Request&, httplib::Response& res) {
    send_json(res, 200, *im.snapshot(im.faces));
  });
  im.http.Get("/certificate", [&im](const httplib::Request&, httplib::Response& res) {
    std::lock_guard lock(im.mutex);
    try {
      if (!im.certificate)
        im.certificate = std::make_shared<const std::string>(certificate_response(im.session.rigidity()).dump());
      send_json(res, 200, *im.certificate);
    } catch (const std::exception& e) {
      send_error(res, 422, e.what());
    }
  });
  im.http.Post("/mutate", [&im](const httplib::Request& req, httplib::Response& res) {
    const Json body = Json::parse(req.body, nullptr, false);
    if (body.is_discarded() || !body.is_object() || !body.contains("vertex") || !body.at("vertex").is_number_integer()) {
      send_error(res, 400, "expected {\"vertex\": <id>}");
      return;
    }
    const int k = body.at("vertex").get<int>();
    std::lock_guard lock(im.mutex);
    try {
      im.session.mutate(k);
    } catch (const FrozenVertexError& e) {
      send_error(res, 409, e.what());
      return;
    } catch (const ValidationError& e) {
      send_error(res, 400, e.what());
      return;
    }
    im.publish();
    Json out{{"vertex", k}, {"x'_" + std::to_string(k), im.session.seed().variable_string(k)}};
    out["seed"] = seed_response(im.session);
    send_json(res, 200, out.dump());
  });
  im.http.Post("/reset", [&im](const httplib::Request&, httplib::Response& res) {
    std::lock_guard lock(im.mutex);
    im.session.reset();
    im.publish();
    send_json(res, 200, *im.quiver);
  });
}

Server::~Server() { stop(); }

int Server::bind(const std::string& host, int port) {
  if (port == 0) return impl_->http.bind_to_any_port(host);
  return impl_->http.bind_to_port(host, port) ? port : -1;
}

void Server::listen() { impl_->http.listen_after_bind(); }

void Server::stop() {
  if (impl_) impl_->http.stop();
}

Json Server::state() const {
  std::lock_guard lock(impl_->mutex);
  return impl_->session.state();
}

}  // namespace dimerbfz
