#include <doctest.h>

#include <chrono>

#include <json.hpp>

#include "divcard/remote.hpp"
#include "divcard/scan.hpp"
#include "support/testutil.hpp"

using namespace divcard;
using namespace divcard::remote;

namespace {

CassetteTransport loadCassette(const std::string& name) {
    auto loaded = CassetteTransport::load(testutil::fixturePath("cassettes/" + name));
    REQUIRE(loaded.ok());
    return std::move(*loaded);
}

PlatformClient fastClient(HttpTransport& transport,
                          std::vector<std::chrono::milliseconds>* sleeps = nullptr) {
    PlatformClient client(transport);
    client.setSleeper([sleeps](std::chrono::milliseconds d) {
        if (sleeps) sleeps->push_back(d);
    });
    return client;
}

} // namespace

TEST_CASE("collectRemote matches collectLocal on the checked-out copy") {
    auto cassette = loadCassette("collect_ok.json");
    auto client = fastClient(cassette);
    auto viaApi = client.collectRemote("acme/widget");
    REQUIRE_MESSAGE(viaApi.ok(), viaApi.error.message);

    auto viaDisk = scan::collectLocal(testutil::fixturePath("repo_a"));
    REQUIRE(viaDisk.ok());
    CHECK(*viaApi == *viaDisk);
}

TEST_CASE("a missing repository reports NOT_FOUND") {
    auto cassette = loadCassette("not_found.json");
    auto client = fastClient(cassette);
    auto result = client.collectRemote("acme/missing");
    REQUIRE_FALSE(result.ok());
    CHECK(result.error.code == NOT_FOUND);
}

TEST_CASE("rate limiting backs off exponentially and then succeeds") {
    auto cassette = loadCassette("rate_limit_recover.json");
    std::vector<std::chrono::milliseconds> sleeps;
    auto client = fastClient(cassette, &sleeps);
    auto result = client.collectRemote("acme/limited");
    REQUIRE_MESSAGE(result.ok(), result.error.message);
    REQUIRE(result->entries.size() == 1);
    // Two 403 responses -> two backoff sleeps, doubling from 1s.
    REQUIRE(sleeps.size() == 2);
    CHECK(sleeps[0] == std::chrono::milliseconds(1000));
    CHECK(sleeps[1] == std::chrono::milliseconds(2000));
}

TEST_CASE("persistent rate limiting surfaces RATE_LIMITED with the reset time") {
    auto cassette = loadCassette("rate_limit_exhaust.json");
    std::vector<std::chrono::milliseconds> sleeps;
    auto client = fastClient(cassette, &sleeps);
    auto result = client.collectRemote("acme/stuck");
    REQUIRE_FALSE(result.ok());
    CHECK(result.error.code == RATE_LIMITED);
    CHECK(result.error.message.find("1750000000") != std::string::npos);
    CHECK(sleeps.size() == 5); // maxRetries
}

TEST_CASE("selectTopRepos keeps star order and drops idle repositories") {
    auto cassette = loadCassette("search_repos.json");
    auto client = fastClient(cassette);
    client.setClock([] {
        std::tm tm{};
        tm.tm_year = 2025 - 1900;
        tm.tm_mon = 0;
        tm.tm_mday = 22;
        return std::chrono::system_clock::from_time_t(timegm(&tm));
    });
    RepoSelector selector;
    selector.language = "python";
    selector.topN = 2;
    auto repos = client.selectTopRepos(selector);
    REQUIRE_MESSAGE(repos.ok(), repos.error.message);
    REQUIRE(repos->size() == 2);
    CHECK((*repos)[0] == "alpha/one");
    CHECK((*repos)[1] == "gamma/three"); // beta/two went idle months ago
}

TEST_CASE("selectTopRepos with topN zero asks nothing of the network") {
    CassetteTransport empty = CassetteTransport::fromJson("{\"interactions\": []}");
    auto client = fastClient(empty);
    RepoSelector selector;
    selector.language = "python";
    selector.topN = 0;
    auto repos = client.selectTopRepos(selector);
    REQUIRE(repos.ok());
    CHECK(repos->empty());
}

TEST_CASE("an unknown language yields an empty result") {
    CassetteTransport cassette = CassetteTransport::fromJson(R"({"interactions": [
        {"request": {"method": "GET",
                     "url": "https://api.github.com/search/repositories?q=language:nolang&sort=stars&order=desc&per_page=30&page=1"},
         "response": {"status": 200, "body": "{\"total_count\": 0, \"items\": []}"}}
    ]})");
    auto client = fastClient(cassette);
    RepoSelector selector;
    selector.language = "nolang";
    selector.topN = 5;
    auto repos = client.selectTopRepos(selector);
    REQUIRE(repos.ok());
    CHECK(repos->empty());
}

TEST_CASE("parallel downloads never exceed the configured bound") {
    // Six matched files against a bound of two, with a delay wide enough for
    // the pool to saturate.
    std::string listing;
    std::string interactions;
    const char* names[] = {"README.md",  "CONTRIBUTING.md", "GOVERNANCE.md",
                           "SECURITY.md", "SUPPORT.md",      "COMMUNITY.md"};
    for (const char* name : names) {
        if (!listing.empty()) listing += ",";
        listing += std::string("{\\\"name\\\": \\\"") + name +
                   "\\\", \\\"type\\\": \\\"file\\\", \\\"download_url\\\": "
                   "\\\"https://raw.test/many/" +
                   name + "\\\"}";
        interactions += std::string(",{\"request\": {\"method\": \"GET\", \"url\": "
                                    "\"https://raw.test/many/") +
                        name + "\"}, \"response\": {\"status\": 200, \"body\": \"text\"}}";
    }
    std::string cassetteJson =
        "{\"interactions\": ["
        "{\"request\": {\"method\": \"GET\", \"url\": "
        "\"https://api.github.com/repos/acme/many/contents/\"}, "
        "\"response\": {\"status\": 200, \"body\": \"[" + listing + "]\"}},"
        "{\"request\": {\"method\": \"GET\", \"url\": "
        "\"https://api.github.com/repos/acme/many/contents/.github\"}, "
        "\"response\": {\"status\": 404, \"body\": \"{}\"}},"
        "{\"request\": {\"method\": \"GET\", \"url\": "
        "\"https://api.github.com/repos/acme/many/contents/docs\"}, "
        "\"response\": {\"status\": 404, \"body\": \"{}\"}}" +
        interactions + "]}";

    CassetteTransport cassette = CassetteTransport::fromJson(cassetteJson);
    RecordingTransport recorder(cassette, std::chrono::milliseconds(15));
    auto client = fastClient(recorder);
    client.setMaxConcurrency(2);
    auto result = client.collectRemote("acme/many");
    REQUIRE_MESSAGE(result.ok(), result.error.message);
    CHECK(result->entries.size() == 6);
    CHECK(recorder.maxInFlight() <= 2);
    CHECK(recorder.requestedUrls().size() == 9);
}

TEST_CASE("selectTopRepos pages until it has enough active repositories") {
    // Page one: thirty repos, only the first active. Page two: one more
    // active repo. topN=2 must span both pages, keeping star order.
    nlohmann::json page1items = nlohmann::json::array();
    for (int k = 0; k < 30; ++k) {
        page1items.push_back({{"full_name", "p1/repo" + std::to_string(k)},
                              {"stargazers_count", 5000 - k},
                              {"pushed_at", k == 0 ? "2025-01-20T12:00:00Z"
                                                   : "2024-06-01T00:00:00Z"}});
    }
    nlohmann::json page2items = nlohmann::json::array();
    page2items.push_back({{"full_name", "p2/active"},
                          {"stargazers_count", 100},
                          {"pushed_at", "2025-01-21T00:00:00Z"}});
    auto searchUrl = [](int page) {
        return "https://api.github.com/search/repositories?q=language:go&sort=stars&order=desc"
               "&per_page=30&page=" +
               std::to_string(page);
    };
    nlohmann::json cassette;
    cassette["interactions"] = nlohmann::json::array();
    cassette["interactions"].push_back(
        {{"request", {{"method", "GET"}, {"url", searchUrl(1)}}},
         {"response",
          {{"status", 200},
           {"body", nlohmann::json{{"total_count", 31}, {"items", page1items}}.dump()}}}});
    cassette["interactions"].push_back(
        {{"request", {{"method", "GET"}, {"url", searchUrl(2)}}},
         {"response",
          {{"status", 200},
           {"body", nlohmann::json{{"total_count", 31}, {"items", page2items}}.dump()}}}});
    CassetteTransport transport = CassetteTransport::fromJson(cassette.dump());
    auto client = fastClient(transport);
    client.setClock([] {
        std::tm tm{};
        tm.tm_year = 2025 - 1900;
        tm.tm_mon = 0;
        tm.tm_mday = 22;
        return std::chrono::system_clock::from_time_t(timegm(&tm));
    });
    RepoSelector selector;
    selector.language = "go";
    selector.topN = 2;
    auto repos = client.selectTopRepos(selector);
    REQUIRE_MESSAGE(repos.ok(), repos.error.message);
    REQUIRE(repos->size() == 2);
    CHECK((*repos)[0] == "p1/repo0");
    CHECK((*repos)[1] == "p2/active");
}
