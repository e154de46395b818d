#pragma once

// HTTP adapter for a live portal. Requests are serialized through a rate
// limiter; 429 and transient failures back off exponentially up to a retry
// budget; login redirects and sign-in pages surface as auth-wall errors.

#include <algorithm>
#include <chrono>
#include <memory>
#include <mutex>
#include <string>
#include <thread>

#include <httplib.h>

#include "biblio/datasource.hpp"
#include "biblio/error.hpp"
#include "biblio/html_facet.hpp"
#include "biblio/query_urls.hpp"

namespace biblio {

struct HttpReply {
    int status = 0;
    std::string body;
    std::string location;  // redirect target, if any
};

/// Performs one GET. Throws TransportError(Network) when no reply arrives.
class HttpTransport {
public:
    virtual ~HttpTransport() = default;
    virtual HttpReply get(const std::string& target) = 0;
};

class HttplibTransport final : public HttpTransport {
public:
    /// `base_url` is "scheme://host[:port][/prefix/]".
    explicit HttplibTransport(const std::string& base_url, std::chrono::seconds timeout = std::chrono::seconds{30}) {
        const auto scheme_end = base_url.find("://");
        if (scheme_end == std::string::npos) throw ConfigError("portal base URL lacks a scheme: '" + base_url + "'");
        const auto path_start = base_url.find('/', scheme_end + 3);
        const auto origin = base_url.substr(0, path_start);
        prefix_ = path_start == std::string::npos ? "/" : base_url.substr(path_start);
        if (prefix_.back() != '/') prefix_ += '/';
        client_ = std::make_unique<httplib::Client>(origin);
        if (!client_->is_valid()) throw ConfigError("unsupported portal base URL '" + base_url + "'");
        client_->set_connection_timeout(timeout);
        client_->set_read_timeout(timeout);
        client_->set_follow_location(false);
    }

    HttpReply get(const std::string& target) override {
        auto res = client_->Get(prefix_ + target);
        if (!res) throw TransportError(TransportErrorKind::Network, httplib::to_string(res.error()));
        return {res->status, res->body, res->get_header_value("Location")};
    }

private:
    std::unique_ptr<httplib::Client> client_;
    std::string prefix_;
};

/// Enforces a minimum gap between consecutive requests.
class RateLimiter {
public:
    using Clock = std::chrono::steady_clock;

    explicit RateLimiter(std::chrono::milliseconds min_delay) : min_delay_(min_delay) {}

    /// Blocks until the next request may be sent, then reserves the slot.
    void acquire() {
        std::unique_lock lock(mutex_);
        const auto now = Clock::now();
        if (next_allowed_ > now) std::this_thread::sleep_until(next_allowed_);
        next_allowed_ = Clock::now() + min_delay_;
    }

    /// Pushes the next slot at least `wait` into the future.
    void penalize(std::chrono::milliseconds wait) {
        std::lock_guard lock(mutex_);
        next_allowed_ = std::max(next_allowed_, Clock::now() + wait);
    }

    std::chrono::milliseconds min_delay() const noexcept { return min_delay_; }

private:
    std::mutex mutex_;
    std::chrono::milliseconds min_delay_;
    Clock::time_point next_allowed_{};
};

struct LiveClientOptions {
    std::string base_url;
    std::chrono::milliseconds min_delay{1000};
    int max_retries = 2;
    /// Body text the portal shows when a search has no results.
    std::string zero_results_marker = "No documents were found";
    /// Body text of the portal's login page.
    std::string auth_wall_marker = "Sign in to continue";
    std::chrono::seconds timeout{30};
};

class LiveClient final : public QueryClient {
public:
    explicit LiveClient(LiveClientOptions options, std::unique_ptr<HttpTransport> transport = nullptr)
        : options_(std::move(options)), limiter_(options_.min_delay) {
        if (options_.max_retries < 0) throw ConfigError("max_retries must be >= 0");
        if (transport) {
            transport_ = std::move(transport);
        } else {
            if (options_.base_url.empty()) throw ConfigError("live mode requires a portal base URL");
            transport_ = std::make_unique<HttplibTransport>(options_.base_url, options_.timeout);
        }
    }

    SearchResponse exact_title_query(const NormalizedName& name, int year_floor) override {
        return request(urls::exact_query_url(name, year_floor));
    }
    SearchResponse relaxed_title_query(const NormalizedName& name, int year_floor) override {
        return request(urls::relaxed_query_url(name, year_floor));
    }
    SearchResponse cluster_exact_query(const std::string& verbatim_source_title, int year_floor) override {
        return request(urls::cluster_query_url(verbatim_source_title, year_floor));
    }
    std::chrono::milliseconds min_request_delay() const override { return options_.min_delay; }

    /// Fetches one results page. Retries network failures, 429 and 5xx at
    /// most `max_retries` times; everything else fails immediately.
    SearchResponse request(const std::string& url) {
        for (int attempt = 0;; ++attempt) {
            limiter_.acquire();
            try {
                return interpret(transport_->get(url));
            } catch (const TransportError& e) {
                if (e.unrecoverable() || !retryable(e) || attempt >= options_.max_retries) throw;
                limiter_.penalize(options_.min_delay * (2 << attempt));
            }
        }
    }

    int requests_sent() const noexcept { return requests_sent_; }

private:
    static bool retryable(const TransportError& e) {
        switch (e.kind()) {
        case TransportErrorKind::Network:
        case TransportErrorKind::RateLimited: return true;
        case TransportErrorKind::HttpStatus: return e.status() >= 500;
        case TransportErrorKind::AuthWall: return false;
        }
        return false;
    }

    SearchResponse interpret(const HttpReply& reply) {
        ++requests_sent_;
        if (reply.status == 429) throw TransportError(TransportErrorKind::RateLimited, "HTTP 429", 429);
        if (reply.status == 401 || reply.status == 403) {
            throw TransportError(TransportErrorKind::AuthWall, "HTTP " + std::to_string(reply.status), reply.status);
        }
        if (reply.status >= 300 && reply.status < 400) {
            throw TransportError(TransportErrorKind::AuthWall, "redirected to '" + reply.location + "'", reply.status);
        }
        if (reply.status < 200 || reply.status >= 300) {
            throw TransportError(TransportErrorKind::HttpStatus, "HTTP " + std::to_string(reply.status), reply.status);
        }
        if (!options_.auth_wall_marker.empty() && reply.body.find(options_.auth_wall_marker) != std::string::npos) {
            throw TransportError(TransportErrorKind::AuthWall, "login page served", reply.status);
        }

        SearchResponse r;
        r.found = reply.body.find(options_.zero_results_marker) == std::string::npos;
        r.facet_html = reply.body;
        if (r.found) {
            for (auto& [title, count] : html::parse_facet_list(reply.body, html::kSourceTitleFacet)) {
                r.source_titles.push_back(std::move(title));
            }
        }
        return r;
    }

    LiveClientOptions options_;
    std::unique_ptr<HttpTransport> transport_;
    RateLimiter limiter_;
    int requests_sent_ = 0;
};

}  // namespace biblio
