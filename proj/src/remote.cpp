#include "divcard/remote.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <future>
#include <semaphore>
#include <thread>

#include <httplib.h>
#include <json.hpp>

namespace divcard::remote {

using Json = nlohmann::json;

std::string HttpResponse::header(const std::string& name) const {
    std::string key = name;
    std::transform(key.begin(), key.end(), key.begin(),
                   [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
    auto it = headers.find(key);
    return it == headers.end() ? std::string{} : it->second;
}

// ---------------------------------------------------------------------------
// Real transport
// ---------------------------------------------------------------------------

namespace {

struct UrlParts {
    std::string scheme;
    std::string host;
    std::string pathAndQuery;
};

std::optional<UrlParts> splitUrl(const std::string& url) {
    UrlParts parts;
    size_t schemeEnd = url.find("://");
    if (schemeEnd == std::string::npos) return std::nullopt;
    parts.scheme = url.substr(0, schemeEnd);
    size_t hostBegin = schemeEnd + 3;
    size_t pathBegin = url.find('/', hostBegin);
    if (pathBegin == std::string::npos) {
        parts.host = url.substr(hostBegin);
        parts.pathAndQuery = "/";
    } else {
        parts.host = url.substr(hostBegin, pathBegin - hostBegin);
        parts.pathAndQuery = url.substr(pathBegin);
    }
    return parts;
}

} // namespace

Result<HttpResponse> RealTransport::send(const HttpRequest& request) {
    auto parts = splitUrl(request.url);
    if (!parts)
        return Result<HttpResponse>::failure(HTTP_ERROR, "malformed url: " + request.url);

    httplib::Headers headers;
    for (const auto& [k, v] : request.headers) headers.emplace(k, v);
    if (!headers.count("User-Agent")) headers.emplace("User-Agent", "divcard");

    auto toResponse = [](const httplib::Result& res) -> Result<HttpResponse> {
        if (!res)
            return Result<HttpResponse>::failure(HTTP_ERROR,
                                                 "transport error: " + httplib::to_string(res.error()));
        HttpResponse out;
        out.status = res->status;
        for (const auto& [k, v] : res->headers) {
            std::string key = k;
            std::transform(key.begin(), key.end(), key.begin(),
                           [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
            out.headers[key] = v;
        }
        out.body = res->body;
        return Result<HttpResponse>::success(std::move(out));
    };

    auto run = [&](auto& client) -> Result<HttpResponse> {
        client.set_follow_location(true);
        client.set_connection_timeout(15);
        client.set_read_timeout(30);
        if (request.method == "POST")
            return toResponse(client.Post(parts->pathAndQuery, headers, request.body,
                                          "application/json"));
        return toResponse(client.Get(parts->pathAndQuery, headers));
    };

#ifdef CPPHTTPLIB_OPENSSL_SUPPORT
    if (parts->scheme == "https") {
        httplib::SSLClient client(parts->host);
        client.enable_server_certificate_verification(true);
        return run(client);
    }
#else
    if (parts->scheme == "https")
        return Result<HttpResponse>::failure(HTTP_ERROR, "built without TLS support");
#endif
    httplib::Client client(parts->host);
    return run(client);
}

// ---------------------------------------------------------------------------
// Cassette transport
// ---------------------------------------------------------------------------

Result<CassetteTransport> CassetteTransport::load(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in)
        return Result<CassetteTransport>::failure(scan::IO_ERROR, "cannot read cassette " + path);
    std::string text((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
    return Result<CassetteTransport>::success(fromJson(text));
}

CassetteTransport CassetteTransport::fromJson(const std::string& jsonText) {
    CassetteTransport transport;
    Json doc = Json::parse(jsonText, nullptr, false);
    if (doc.is_discarded() || !doc.contains("interactions")) return transport;
    for (const auto& item : doc["interactions"]) {
        std::string method = item.value("/request/method"_json_pointer, std::string("GET"));
        std::string url = item.value("/request/url"_json_pointer, std::string{});
        HttpResponse response;
        response.status = item.value("/response/status"_json_pointer, 200);
        if (item.contains("response") && item["response"].contains("headers")) {
            for (const auto& [k, v] : item["response"]["headers"].items()) {
                std::string key = k;
                std::transform(key.begin(), key.end(), key.begin(), [](unsigned char c) {
                    return static_cast<char>(std::tolower(c));
                });
                response.headers[key] = v.get<std::string>();
            }
        }
        if (item.contains("response") && item["response"].contains("body")) {
            const auto& body = item["response"]["body"];
            response.body = body.is_string() ? body.get<std::string>() : body.dump();
        }
        transport.interactions_[method + " " + url].push_back(std::move(response));
    }
    return transport;
}

Result<HttpResponse> CassetteTransport::send(const HttpRequest& request) {
    std::lock_guard<std::mutex> lock(*mutex_);
    auto it = interactions_.find(request.method + " " + request.url);
    if (it == interactions_.end() || it->second.empty())
        return Result<HttpResponse>::failure(
            HTTP_ERROR, "no cassette entry for " + request.method + " " + request.url);
    // The final entry repeats so idempotent retries keep replaying.
    HttpResponse response = it->second.front();
    if (it->second.size() > 1) it->second.pop_front();
    return Result<HttpResponse>::success(std::move(response));
}

// ---------------------------------------------------------------------------
// Recording transport
// ---------------------------------------------------------------------------

Result<HttpResponse> RecordingTransport::send(const HttpRequest& request) {
    int current = ++inFlight_;
    int seen = maxInFlight_.load();
    while (current > seen && !maxInFlight_.compare_exchange_weak(seen, current)) {
    }
    {
        std::lock_guard<std::mutex> lock(urlMutex_);
        urls_.push_back(request.url);
    }
    if (delay_.count() > 0) std::this_thread::sleep_for(delay_);
    auto result = inner_.send(request);
    --inFlight_;
    return result;
}

std::vector<std::string> RecordingTransport::requestedUrls() const {
    std::lock_guard<std::mutex> lock(urlMutex_);
    return urls_;
}

// ---------------------------------------------------------------------------
// Platform client
// ---------------------------------------------------------------------------

namespace {

std::optional<std::chrono::system_clock::time_point> parseIso8601(const std::string& text) {
    int y, mo, d, h, mi, s;
    if (std::sscanf(text.c_str(), "%d-%d-%dT%d:%d:%d", &y, &mo, &d, &h, &mi, &s) != 6)
        return std::nullopt;
    std::tm tm{};
    tm.tm_year = y - 1900;
    tm.tm_mon = mo - 1;
    tm.tm_mday = d;
    tm.tm_hour = h;
    tm.tm_min = mi;
    tm.tm_sec = s;
    return std::chrono::system_clock::from_time_t(timegm(&tm));
}

} // namespace

Result<HttpResponse> PlatformClient::get(const std::string& url) {
    HttpRequest request;
    request.url = url;
    request.headers["Accept"] = "application/vnd.github+json";
    request.headers["User-Agent"] = "divcard";
    if (!token_.empty()) request.headers["Authorization"] = "Bearer " + token_;

    auto sleeper = sleeper_ ? sleeper_ : [](std::chrono::milliseconds d) {
        std::this_thread::sleep_for(d);
    };

    std::string resetAt;
    for (int attempt = 0;; ++attempt) {
        auto result = transport_.send(request);
        if (!result.ok())
            return Result<HttpResponse>::failure(result.error.code, result.error.message);
        HttpResponse& response = *result;
        bool limited = (response.status == 403 || response.status == 429) &&
                       (response.header("x-ratelimit-remaining") == "0" ||
                        !response.header("retry-after").empty());
        if (!limited) {
            if (response.status == 404)
                return Result<HttpResponse>::failure(NOT_FOUND, "not found: " + url);
            if (response.status < 200 || response.status >= 300)
                return Result<HttpResponse>::failure(
                    HTTP_ERROR, "status " + std::to_string(response.status) + " for " + url);
            return Result<HttpResponse>::success(std::move(response));
        }
        resetAt = response.header("x-ratelimit-reset");
        if (attempt >= maxRetries_)
            return Result<HttpResponse>::failure(
                RATE_LIMITED, "rate limited until " + (resetAt.empty() ? "unknown" : resetAt) +
                                  " (" + url + ")");
        sleeper(backoffBase_ * (1 << attempt));
    }
}

Result<scan::CommunityFileSet> PlatformClient::collectRemote(std::string_view ownerRepo) {
    std::string repo(ownerRepo);
    struct Entry {
        scan::FileCategory category;
        std::string path;
        std::string downloadUrl;
    };
    std::vector<Entry> matched;

    bool rootListed = false;
    for (const char* dir : {"", ".github", "docs"}) {
        std::string url = apiBase_ + "/repos/" + repo + "/contents/" + dir;
        auto listing = get(url);
        if (!listing.ok()) {
            // Conventional directories may be absent; the root must exist.
            if (std::string_view(dir).empty() || listing.error.code != NOT_FOUND)
                return Result<scan::CommunityFileSet>::failure(listing.error.code,
                                                               listing.error.message);
            continue;
        }
        rootListed = true;
        Json items = Json::parse(listing->body, nullptr, false);
        if (items.is_discarded() || !items.is_array())
            return Result<scan::CommunityFileSet>::failure(
                HTTP_ERROR, "unexpected listing payload for " + url);
        for (const auto& item : items) {
            if (item.value("type", std::string{}) != "file") continue;
            std::string name = item.value("name", std::string{});
            auto category = scan::matchCommunityFile(name, nameTable_);
            if (!category) continue;
            std::string download = item.value("download_url", std::string{});
            if (download.empty()) continue;
            std::string prefix = std::string_view(dir).empty() ? "" : std::string(dir) + "/";
            matched.push_back({*category, prefix + name, download});
        }
    }
    if (!rootListed)
        return Result<scan::CommunityFileSet>::failure(NOT_FOUND, "repository not reachable");

    // Bounded parallel downloads; results land in a fixed-size slot table so
    // ordering stays deterministic.
    std::counting_semaphore<64> slots(std::min(maxConcurrency_, 64));
    std::vector<Result<HttpResponse>> downloads(matched.size(),
                                                Result<HttpResponse>::failure("", ""));
    {
        std::vector<std::future<void>> tasks;
        tasks.reserve(matched.size());
        for (size_t k = 0; k < matched.size(); ++k) {
            tasks.push_back(std::async(std::launch::async, [&, k] {
                slots.acquire();
                downloads[k] = get(matched[k].downloadUrl);
                slots.release();
            }));
        }
        for (auto& t : tasks) t.wait();
    }

    scan::CommunityFileSet set;
    for (size_t k = 0; k < matched.size(); ++k) {
        if (!downloads[k].ok())
            return Result<scan::CommunityFileSet>::failure(downloads[k].error.code,
                                                           downloads[k].error.message);
        set.entries.push_back({matched[k].category, matched[k].path,
                               scan::normalizeText(downloads[k]->body)});
    }
    std::sort(set.entries.begin(), set.entries.end(),
              [](const scan::CommunityFile& a, const scan::CommunityFile& b) {
                  return a.path < b.path;
              });
    return Result<scan::CommunityFileSet>::success(std::move(set));
}

Result<std::vector<std::string>> PlatformClient::selectTopRepos(const RepoSelector& selector) {
    std::vector<std::string> repos;
    if (selector.topN <= 0) return Result<std::vector<std::string>>::success(std::move(repos));

    auto now = now_ ? now_() : std::chrono::system_clock::now();
    auto window = std::chrono::hours(24) * selector.activityWindowDays;

    constexpr int kPerPage = 30;
    constexpr int kMaxPages = 10;
    for (int page = 1; page <= kMaxPages && int(repos.size()) < selector.topN; ++page) {
        std::string url = apiBase_ + "/search/repositories?q=language:" + selector.language +
                          "&sort=stars&order=desc&per_page=" + std::to_string(kPerPage) +
                          "&page=" + std::to_string(page);
        auto result = get(url);
        if (!result.ok())
            return Result<std::vector<std::string>>::failure(result.error.code,
                                                             result.error.message);
        Json doc = Json::parse(result->body, nullptr, false);
        if (doc.is_discarded() || !doc.contains("items"))
            return Result<std::vector<std::string>>::failure(HTTP_ERROR,
                                                             "unexpected search payload");
        const auto& items = doc["items"];
        if (items.empty()) break;
        for (const auto& item : items) {
            if (int(repos.size()) >= selector.topN) break;
            std::string fullName = item.value("full_name", std::string{});
            std::string pushedAt = item.value("pushed_at", std::string{});
            auto pushed = parseIso8601(pushedAt);
            if (fullName.empty() || !pushed) continue;
            if (now - *pushed <= window) repos.push_back(fullName);
        }
        if (int(items.size()) < kPerPage) break;
    }
    return Result<std::vector<std::string>>::success(std::move(repos));
}

} // namespace divcard::remote
