#pragma once

#include <atomic>
#include <chrono>
#include <deque>
#include <functional>
#include <map>
#include <memory>
#include <mutex>
#include <string>

#include "divcard/model.hpp"
#include "divcard/scan.hpp"

namespace divcard::remote {

inline constexpr const char* HTTP_ERROR = "HTTP_ERROR";
inline constexpr const char* RATE_LIMITED = "RATE_LIMITED";
inline constexpr const char* NOT_FOUND = "NOT_FOUND";

struct HttpRequest {
    std::string method = "GET";
    std::string url;
    std::map<std::string, std::string> headers;
    std::string body;
};

struct HttpResponse {
    int status = 0;
    std::map<std::string, std::string> headers; // lowercased names
    std::string body;

    std::string header(const std::string& name) const;
};

class HttpTransport {
  public:
    virtual ~HttpTransport() = default;
    virtual Result<HttpResponse> send(const HttpRequest& request) = 0;
};

// Live HTTP(S) via cpp-httplib.
class RealTransport : public HttpTransport {
  public:
    Result<HttpResponse> send(const HttpRequest& request) override;
};

// Replays interactions recorded as JSON; repeated requests for the same
// method+url consume entries in file order. Thread safe.
class CassetteTransport : public HttpTransport {
  public:
    CassetteTransport() : mutex_(std::make_unique<std::mutex>()) {}

    static Result<CassetteTransport> load(const std::string& path);
    static CassetteTransport fromJson(const std::string& jsonText);

    Result<HttpResponse> send(const HttpRequest& request) override;

  private:
    std::unique_ptr<std::mutex> mutex_;
    std::map<std::string, std::deque<HttpResponse>> interactions_;
};

// Wraps another transport to observe concurrency; an optional delay widens
// the overlap window so tests can see the parallelism bound.
class RecordingTransport : public HttpTransport {
  public:
    explicit RecordingTransport(HttpTransport& inner,
                                std::chrono::milliseconds delay = std::chrono::milliseconds(0))
        : inner_(inner), delay_(delay) {}

    Result<HttpResponse> send(const HttpRequest& request) override;

    int maxInFlight() const { return maxInFlight_.load(); }
    std::vector<std::string> requestedUrls() const;

  private:
    HttpTransport& inner_;
    std::chrono::milliseconds delay_;
    std::atomic<int> inFlight_{0};
    std::atomic<int> maxInFlight_{0};
    mutable std::mutex urlMutex_;
    std::vector<std::string> urls_;
};

struct RepoSelector {
    std::string language;
    int topN = 0;
    int activityWindowDays = 30;
};

// REST client for the hosting platform: content listing, raw downloads and
// repository search, honoring rate-limit headers with exponential backoff
// (base 1s, doubled per retry, at most 5 retries).
class PlatformClient {
  public:
    PlatformClient(HttpTransport& transport, std::string apiBase = "https://api.github.com")
        : transport_(transport), apiBase_(std::move(apiBase)) {}

    void setToken(std::string token) { token_ = std::move(token); }
    void setMaxConcurrency(int n) { maxConcurrency_ = n > 0 ? n : 1; }
    int maxConcurrency() const { return maxConcurrency_; }
    void setSleeper(std::function<void(std::chrono::milliseconds)> fn) {
        sleeper_ = std::move(fn);
    }
    void setClock(std::function<std::chrono::system_clock::time_point()> fn) {
        now_ = std::move(fn);
    }
    void setNameTable(scan::NameTable table) { nameTable_ = std::move(table); }

    // Lists the repository root plus .github/ and docs/ via the contents
    // endpoints and downloads the community files, at most maxConcurrency at
    // a time.
    Result<scan::CommunityFileSet> collectRemote(std::string_view ownerRepo);

    // Pages through star-ordered search results, keeping repositories pushed
    // within the activity window, until topN are found or results end.
    Result<std::vector<std::string>> selectTopRepos(const RepoSelector& selector);

  private:
    Result<HttpResponse> get(const std::string& url);

    HttpTransport& transport_;
    std::string apiBase_;
    std::string token_;
    int maxConcurrency_ = 8;
    int maxRetries_ = 5;
    std::chrono::milliseconds backoffBase_{1000};
    std::function<void(std::chrono::milliseconds)> sleeper_;
    std::function<std::chrono::system_clock::time_point()> now_;
    scan::NameTable nameTable_;
};

} // namespace divcard::remote
