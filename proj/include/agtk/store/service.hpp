#pragma once

#include <memory>
#include <string>

#include "agtk/store/store.hpp"

namespace agtk::store {

/// HTTP/JSON front end over a Store.
///
///   GET  /docs                 [{doc_id, kind, revision}]
///   GET  /docs/{id}            AIF; X-Revision header
///   PUT  /docs/{id}?kind=K     201 {revision: 0}
///   POST /docs/{id}/edits      {op, args, base_revision} -> 200 {revision}
///   GET  /docs/{id}/validate   [violation lines]
///
/// Failures carry {code, detail}: 400 malformed request, 404 unknown
/// document, 409 revision conflict or existing document, 422 module error.
class Service {
 public:
  explicit Service(Store& store);
  ~Service();
  Service(const Service&) = delete;
  Service& operator=(const Service&) = delete;

  /// `address` is "host:port"; port 0 picks a free one. Returns the bound
  /// port. Errors: BindFailure.
  int bind(const std::string& address);
  /// Serves until stop(); call after bind().
  void run();
  /// Blocks until a concurrent run() accepts connections.
  void wait_until_ready() const;
  void stop();

 private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
};

/// Binds and serves until the process ends. Errors: BindFailure.
void serve(Store& store, const std::string& address);

}  // namespace agtk::store
