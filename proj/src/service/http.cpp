#include "cryptogame/service/http.hpp"

#include <httplib.h>

#include <chrono>
#include <ctime>
#include <iomanip>
#include <mutex>
#include <stdexcept>

namespace cryptogame::service {

namespace {

std::string utc_timestamp() {
    const auto now = std::chrono::system_clock::now();
    const auto t = std::chrono::system_clock::to_time_t(now);
    const auto ms = std::chrono::duration_cast<std::chrono::milliseconds>(now.time_since_epoch()).count() % 1000;
    std::tm tm{};
    gmtime_r(&t, &tm);
    std::ostringstream out;
    out << std::put_time(&tm, "%Y-%m-%dT%H:%M:%S") << '.' << std::setw(3) << std::setfill('0') << ms << 'Z';
    return out.str();
}

}  // namespace

struct HttpServer::Impl {
    GameService& service;
    std::ostream* log;
    std::mutex log_mutex;
    httplib::Server server;

    void dispatch(const httplib::Request& in, httplib::Response& out) {
        Request request{in.method, in.path, {}, in.body};
        for (const auto& [k, v] : in.headers) request.headers.emplace(k, v);
        const auto response = service.handle(request);
        out.status = response.status;
        if (response.status != 204) out.set_content(response.body.dump(), "application/json");
        if (log) {
            const auto session = request.header(session_header).value_or("-");
            std::lock_guard lock(log_mutex);
            *log << utc_timestamp() << ' ' << session << ' ' << in.method << ' ' << in.path << ' ' << response.status
                 << '\n'
                 << std::flush;
        }
    }
};

HttpServer::HttpServer(GameService& service, std::ostream* log) : impl_(new Impl{service, log, {}, {}}) {
    auto handler = [this](const httplib::Request& in, httplib::Response& out) { impl_->dispatch(in, out); };
    impl_->server.Get(".*", handler);
    impl_->server.Post(".*", handler);
    impl_->server.Put(".*", handler);
    impl_->server.Delete(".*", handler);
    impl_->server.Patch(".*", handler);
}

HttpServer::~HttpServer() { stop(); }

int HttpServer::bind(const std::string& host, int port) {
    const int bound = port == 0 ? impl_->server.bind_to_any_port(host) : (impl_->server.bind_to_port(host, port) ? port : -1);
    if (bound < 0) throw std::runtime_error("cannot bind " + host + ":" + std::to_string(port));
    return bound;
}

void HttpServer::serve() { impl_->server.listen_after_bind(); }

void HttpServer::stop() {
    if (impl_) impl_->server.stop();
}

}  // namespace cryptogame::service
