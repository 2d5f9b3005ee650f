#pragma once

#include <memory>
#include <string>

#include "rcam/service/session_service.hpp"

namespace rcam::service {

/// HTTP transport for SessionService: POST /rpc with a JSON request body, GET /health.
/// Answers CORS preflights so that a browser page on another origin can drive it.
class StepServer {
public:
    explicit StepServer(SessionService& service);
    ~StepServer();

    /// Binds to host:port, or to a free port when port is 0. Returns the bound port, or -1.
    int bind(const std::string& host, int port);
    /// Serves until stop(); call after bind().
    bool listen();
    void stop();
    void wait_until_ready() const;

private:
    struct Impl;
    std::unique_ptr<Impl> impl_;
};

}  // namespace rcam::service
