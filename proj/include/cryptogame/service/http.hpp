#pragma once
// HTTP transport for GameService.

#include <memory>
#include <ostream>
#include <string>

#include "cryptogame/service/service.hpp"

namespace cryptogame::service {

class HttpServer {
public:
    /// `log` receives one line per request; null disables logging.
    HttpServer(GameService& service, std::ostream* log = nullptr);
    ~HttpServer();

    HttpServer(const HttpServer&) = delete;
    HttpServer& operator=(const HttpServer&) = delete;

    /// Binds the listening socket. Port 0 picks a free port. Returns the bound port.
    int bind(const std::string& host, int port);
    /// Blocks until stop() is called.
    void serve();
    void stop();

private:
    struct Impl;
    std::unique_ptr<Impl> impl_;
};

}  // namespace cryptogame::service
