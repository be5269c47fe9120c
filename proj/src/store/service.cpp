#include "agtk/store/service.hpp"

#include "agtk/error.hpp"
#include "httplib.h"

namespace agtk::store {

using nlohmann::json;

namespace {

int http_status(ErrorCode code) {
  switch (code) {
    case ErrorCode::UnknownDocument: return 404;
    case ErrorCode::RevisionConflict:
    case ErrorCode::DocumentExists: return 409;
    case ErrorCode::BadCommand:
    case ErrorCode::UnknownOp:
    case ErrorCode::BadId: return 400;
    case ErrorCode::IoFailure:
    case ErrorCode::CorruptMeta: return 500;
    default: return 422;
  }
}

void send_json(httplib::Response& res, int status, const json& body) {
  res.status = status;
  res.set_content(body.dump(), "application/json");
}

void send_error(httplib::Response& res, const Error& e) {
  send_json(res, http_status(e.code()), {{"code", std::string(error_code_name(e.code()))}, {"detail", e.detail()}});
}

template <class F>
httplib::Server::Handler guarded(F f) {
  return [f](const httplib::Request& req, httplib::Response& res) {
    try {
      f(req, res);
    } catch (const Error& e) {
      send_error(res, e);
    } catch (const std::exception& e) {
      send_json(res, 500, {{"code", "Internal"}, {"detail", e.what()}});
    }
  };
}

}  // namespace

struct Service::Impl {
  Store& store;
  httplib::Server server;

  explicit Impl(Store& s) : store(s) {
    server.Get("/docs", guarded([this](const httplib::Request&, httplib::Response& res) {
      json out = json::array();
      for (const auto& r : store.list_documents()) {
        out.push_back({{"doc_id", r.doc_id}, {"kind", std::string(kind_name(r.kind))}, {"revision", r.revision}});
      }
      send_json(res, 200, out);
    }));
    server.Get(R"(/docs/([^/]+))", guarded([this](const httplib::Request& req, httplib::Response& res) {
      DocumentRecord r = store.load_document(req.matches[1]);
      res.status = 200;
      res.set_header("X-Revision", std::to_string(r.revision));
      res.set_content(r.payload, "application/xml");
    }));
    server.Put(R"(/docs/([^/]+))", guarded([this](const httplib::Request& req, httplib::Response& res) {
      if (!req.has_param("kind")) throw Error(ErrorCode::BadCommand, "missing query parameter 'kind'");
      auto kind = parse_kind(req.get_param_value("kind"));
      if (!kind) throw Error(ErrorCode::BadCommand, "unknown kind '" + req.get_param_value("kind") + "'");
      DocumentRecord r = store.create_document(req.matches[1], *kind, req.body);
      res.set_header("X-Revision", std::to_string(r.revision));
      send_json(res, 201, {{"revision", r.revision}});
    }));
    server.Post(R"(/docs/([^/]+)/edits)", guarded([this](const httplib::Request& req, httplib::Response& res) {
      EditCommand cmd = parse_edit_command(req.body);
      std::uint64_t rev = store.apply_edit(req.matches[1], cmd);
      send_json(res, 200, {{"revision", rev}});
    }));
    server.Get(R"(/docs/([^/]+)/validate)", guarded([this](const httplib::Request& req, httplib::Response& res) {
      DocumentRecord r = store.load_document(req.matches[1]);
      send_json(res, 200, document_violations(r.kind, r.payload));
    }));
  }
};

Service::Service(Store& store) : impl_(std::make_unique<Impl>(store)) {}

Service::~Service() { stop(); }

int Service::bind(const std::string& address) {
  auto colon = address.rfind(':');
  if (colon == std::string::npos) throw Error(ErrorCode::BindFailure, "expected host:port, got '" + address + "'");
  std::string host = address.substr(0, colon);
  int port = 0;
  try {
    std::size_t used = 0;
    port = std::stoi(address.substr(colon + 1), &used);
    if (used != address.size() - colon - 1 || port < 0 || port > 65535) throw std::out_of_range("port");
  } catch (const std::exception&) {
    throw Error(ErrorCode::BindFailure, "bad port in '" + address + "'");
  }
  impl_->server.set_socket_options([](socket_t sock) {
    int yes = 1;
    setsockopt(sock, SOL_SOCKET, SO_REUSEADDR, reinterpret_cast<const void*>(&yes), sizeof(yes));
  });
  if (port == 0) {
    port = impl_->server.bind_to_any_port(host);
    if (port < 0) throw Error(ErrorCode::BindFailure, address);
    return port;
  }
  if (!impl_->server.bind_to_port(host, port)) throw Error(ErrorCode::BindFailure, address);
  return port;
}

void Service::run() { impl_->server.listen_after_bind(); }

void Service::wait_until_ready() const { impl_->server.wait_until_ready(); }

void Service::stop() {
  if (impl_ && impl_->server.is_running()) impl_->server.stop();
}

void serve(Store& store, const std::string& address) {
  Service service(store);
  service.bind(address);
  service.run();
}

}  // namespace agtk::store
