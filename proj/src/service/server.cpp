#include "rcam/service/server.hpp"

#include <httplib.h>

namespace rcam::service {

struct StepServer::Impl {
    explicit Impl(SessionService& s) : service(s) {}

    SessionService& service;
    httplib::Server http;
};

StepServer::StepServer(SessionService& service) : impl_(std::make_unique<Impl>(service)) {
    auto& http = impl_->http;
    http.set_default_headers({{"Access-Control-Allow-Origin", "*"},
                              {"Access-Control-Allow-Methods", "POST, GET, OPTIONS"},
                              {"Access-Control-Allow-Headers", "Content-Type"}});
    http.Options(R"(/.*)", [](const httplib::Request&, httplib::Response& res) { res.status = 204; });
    http.Get("/health", [](const httplib::Request&, httplib::Response& res) {
        res.set_content(R"({"ok":true})", "application/json");
    });
    http.Post("/rpc", [this](const httplib::Request& req, httplib::Response& res) {
        res.set_content(impl_->service.handle_text(req.body), "application/json");
    });
}

StepServer::~StepServer() { stop(); }

int StepServer::bind(const std::string& host, int port) {
    if (port == 0) return impl_->http.bind_to_any_port(host);
    return impl_->http.bind_to_port(host, port) ? port : -1;
}

bool StepServer::listen() { return impl_->http.listen_after_bind(); }

void StepServer::stop() {
    if (impl_->http.is_running()) impl_->http.stop();
}

void StepServer::wait_until_ready() const { impl_->http.wait_until_ready(); }

}  // namespace rcam::service
