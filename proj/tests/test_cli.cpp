#include <doctest.h>

#include <filesystem>

#include <json.hpp>

#include "support/testutil.hpp"

#ifndef DIVCARD_BIN
#define DIVCARD_BIN "divcard"
#endif

namespace {

std::string bin() { return DIVCARD_BIN; }

std::string q(const std::string& s) { return "'" + s + "'"; }

std::filesystem::path tmpDir() {
    auto dir = std::filesystem::temp_directory_path() / "divcard_cli_tests";
    std::filesystem::create_directories(dir);
    return dir;
}

} // namespace

TEST_CASE("check: a clean card exits 0 with no output") {
    auto result = testutil::runCommand(bin() + " check " + q(testutil::fixturePath("besser.divcard")) +
                                       " 2>/dev/null");
    CHECK(result.exitCode == 0);
    CHECK(result.output.empty());
}

TEST_CASE("check: a broken range exits 1 with one RANGE_INVERTED line") {
    auto result = testutil::runCommand(bin() + " check " +
                                       q(testutil::fixturePath("bad_range.divcard")) +
                                       " 2>/dev/null");
    CHECK(result.exitCode == 1);
    CHECK(result.output.find("RANGE_INVERTED") != std::string::npos);
    CHECK(std::count(result.output.begin(), result.output.end(), '\n') == 1);
}

TEST_CASE("check --format json emits structured diagnostics") {
    auto result = testutil::runCommand(bin() + " check " +
                                       q(testutil::fixturePath("bad_range.divcard")) +
                                       " --format json 2>/dev/null");
    CHECK(result.exitCode == 1);
    auto doc = nlohmann::json::parse(result.output, nullptr, false);
    REQUIRE_FALSE(doc.is_discarded());
    REQUIRE(doc["diagnostics"].size() == 1);
    CHECK(doc["diagnostics"][0]["code"] == "RANGE_INVERTED");
    CHECK(doc["diagnostics"][0]["severity"] == "error");
}

TEST_CASE("emit: json goes to stdout and is byte-stable across runs") {
    std::string cmd = bin() + " emit " + q(testutil::fixturePath("besser.divcard")) +
                      " --to json 2>/dev/null";
    auto first = testutil::runCommand(cmd);
    auto second = testutil::runCommand(cmd);
    CHECK(first.exitCode == 0);
    CHECK(first.output == second.output);
    CHECK(first.output.find("\"teamSize\": 15") != std::string::npos);
}

TEST_CASE("emit: markdown with -o writes the file") {
    auto out = tmpDir() / "besser.md";
    std::filesystem::remove(out);
    auto result = testutil::runCommand(bin() + " emit " +
                                       q(testutil::fixturePath("besser.divcard")) +
                                       " --to md -o " + q(out.string()) + " 2>/dev/null");
    CHECK(result.exitCode == 0);
    CHECK(result.output.empty());
    std::string written = testutil::slurp(out.string());
    CHECK(written.find("# Besser") == 0);
}

TEST_CASE("emit: unresolved references exit 1") {
    auto result = testutil::runCommand(
        bin() + " emit " + q(testutil::fixturePath("mutations/UNRESOLVED_REF.divcard")) +
        " --to json 2>/dev/null");
    CHECK(result.exitCode == 1);
    CHECK(result.output.empty()); // payload only on success
}

TEST_CASE("report: text table lists all seven dimensions") {
    auto result = testutil::runCommand(bin() + " report " +
                                       q(testutil::fixturePath("besser.divcard")) +
                                       " 2>/dev/null");
    CHECK(result.exitCode == 0);
    CHECK(std::count(result.output.begin(), result.output.end(), '\n') == 7);
    CHECK(result.output.find("developmentTeam") != std::string::npos);
    CHECK(result.output.find("High") != std::string::npos);
}

TEST_CASE("report --format json carries ratios") {
    auto result = testutil::runCommand(bin() + " report " +
                                       q(testutil::fixturePath("decidim.divcard")) +
                                       " --format json 2>/dev/null");
    CHECK(result.exitCode == 0);
    auto doc = nlohmann::json::parse(result.output, nullptr, false);
    REQUIRE_FALSE(doc.is_discarded());
    REQUIRE(doc["rows"].size() == 7);
    bool sawNonCoding = false;
    for (const auto& row : doc["rows"]) {
        if (row["dimension"] == "nonCodingContributors") {
            sawNonCoding = true;
            CHECK(row["level"] == "Limited");
        }
    }
    CHECK(sawNonCoding);
}

TEST_CASE("lint: clean card exits 0, risky card exits 1 and --k widens the net") {
    auto clean = testutil::runCommand(bin() + " lint " +
                                      q(testutil::fixturePath("besser.divcard")) +
                                      " 2>/dev/null");
    CHECK(clean.exitCode == 0);
    CHECK(clean.output.empty());

    auto risky = tmpDir() / "risky.divcard";
    {
        std::ofstream out(risky);
        out << "project \"Risky\"\n\ndevelopmentTeam tiny\n  teamSize: 3\n"
            << "  ethnicities: [\"X\"]\n  religiousBeliefs: [\"R\"]\n";
    }
    auto flagged = testutil::runCommand(bin() + " lint " + q(risky.string()) + " 2>/dev/null");
    CHECK(flagged.exitCode == 1);
    CHECK(flagged.output.find("SMALL_GROUP_REIDENTIFICATION") != std::string::npos);

    auto relaxed =
        testutil::runCommand(bin() + " lint " + q(risky.string()) + " --k 2 2>/dev/null");
    CHECK(relaxed.exitCode == 0);
}

TEST_CASE("scan: local rule scan emits five findings as JSON, byte-stable") {
    std::string cmd = bin() + " scan " + q(testutil::fixturePath("corpus/repo07")) +
                      " --backend rule --format json --collected-at 2025-01-22T00:00:00Z"
                      " 2>/dev/null";
    auto first = testutil::runCommand(cmd);
    auto second = testutil::runCommand(cmd);
    CHECK(first.exitCode == 0);
    CHECK(first.output == second.output);
    auto doc = nlohmann::json::parse(first.output, nullptr, false);
    REQUIRE_FALSE(doc.is_discarded());
    CHECK(doc["backend"] == "rule");
    REQUIRE(doc["findings"].size() == 5);
    CHECK(doc["findings"][0]["area"] == "A1");
    CHECK(doc["findings"][0]["present"] == true);
    CHECK(doc["collectedAt"] == "2025-01-22T00:00:00Z");
}

TEST_CASE("scan: --skeleton writes a card that checks clean") {
    auto skeleton = tmpDir() / "skeleton.divcard";
    std::filesystem::remove(skeleton);
    auto result = testutil::runCommand(
        bin() + " scan " + q(testutil::fixturePath("corpus/repo07")) + " --skeleton " +
        q(skeleton.string()) + " --collected-at 2025-01-22T00:00:00Z 2>/dev/null >/dev/null");
    CHECK(result.exitCode == 0);
    auto check = testutil::runCommand(bin() + " check " + q(skeleton.string()) + " 2>/dev/null");
    CHECK(check.exitCode == 0);
}

TEST_CASE("scan: remote repositories resolve through the cassette transport") {
    std::string cmd = "DIVCARD_HTTP_CASSETTE=" +
                      q(testutil::fixturePath("cassettes/scan_remote.json")) + " " + bin() +
                      " scan acme/widget --format json --collected-at 2025-01-22T00:00:00Z"
                      " 2>/dev/null";
    auto result = testutil::runCommand(cmd);
    CHECK(result.exitCode == 0);
    auto doc = nlohmann::json::parse(result.output, nullptr, false);
    REQUIRE_FALSE(doc.is_discarded());
    CHECK(doc["repo"] == "acme/widget");
    REQUIRE(doc["files"].size() == 2);
    CHECK(doc["files"][0]["path"] == ".github/SUPPORT.md");
}

TEST_CASE("scan: llm backend classifies through a stubbed endpoint") {
    // One valid verdict for A1, then negatives; the cassette replays the last
    // entry for the remaining areas.
    nlohmann::json cassette;
    cassette["interactions"] = nlohmann::json::array();
    auto push = [&](const std::string& content) {
        nlohmann::json reply;
        reply["choices"] = nlohmann::json::array(
            {nlohmann::json{{"message", nlohmann::json{{"content", content}}}}});
        nlohmann::json item;
        item["request"] = {{"method", "POST"}, {"url", "https://llm.test/v1/chat/completions"}};
        item["response"] = {{"status", 200}, {"body", reply.dump()}};
        cassette["interactions"].push_back(std::move(item));
    };
    push(R"({"present": true, "subfindings": {"profileAspects": true}, "evidence": [{"path": "README.md", "excerpt": "The development team counts 9 developers"}]})");
    push(R"({"present": false, "subfindings": {}, "evidence": []})");
    auto cassettePath = tmpDir() / "llm_stub.json";
    {
        std::ofstream out(cassettePath);
        out << cassette.dump();
    }
    std::string cmd = "DIVCARD_HTTP_CASSETTE=" + q(cassettePath.string()) +
                      " DIVCARD_LLM_ENDPOINT='https://llm.test/v1/chat/completions'"
                      " DIVCARD_LLM_KEY=k " +
                      bin() + " scan " + q(testutil::fixturePath("corpus/repo07")) +
                      " --backend llm --format json --collected-at 2025-01-22T00:00:00Z"
                      " 2>/dev/null";
    auto result = testutil::runCommand(cmd);
    CHECK(result.exitCode == 0);
    auto doc = nlohmann::json::parse(result.output, nullptr, false);
    REQUIRE_FALSE(doc.is_discarded());
    CHECK(doc["backend"] == "llm");
    CHECK(doc["findings"][0]["present"] == true);
    CHECK(doc["findings"][1]["present"] == false);
}

TEST_CASE("fetch-corpus: downloads into a scannable layout") {
    auto outDir = tmpDir() / "fetched";
    std::filesystem::remove_all(outDir);
    std::string cmd = "DIVCARD_HTTP_CASSETTE=" +
                      q(testutil::fixturePath("cassettes/fetch_corpus.json")) +
                      " DIVCARD_COLLECTED_AT=2025-01-22T00:00:00Z " + bin() +
                      " fetch-corpus --language python --top 1 --out " + q(outDir.string()) +
                      " 2>/dev/null";
    auto result = testutil::runCommand(cmd);
    CHECK(result.exitCode == 0);
    CHECK(result.output == "alpha/one\n");
    std::string readme = testutil::slurp((outDir / "alpha_one" / "README.md").string());
    CHECK(readme.find("Alpha one") != std::string::npos);

    auto scan = testutil::runCommand(bin() + " scan " + q((outDir / "alpha_one").string()) +
                                     " --format json --collected-at 2025-01-22T00:00:00Z"
                                     " 2>/dev/null");
    CHECK(scan.exitCode == 0);
}

TEST_CASE("usage errors exit 2") {
    auto unknown = testutil::runCommand(bin() + " check --no-such-flag x 2>/dev/null");
    CHECK(unknown.exitCode == 2);
    auto missing = testutil::runCommand(bin() + " 2>/dev/null");
    CHECK(missing.exitCode == 2);
}

TEST_CASE("io failures exit 3") {
    auto result = testutil::runCommand(bin() + " check /no/such/file.divcard 2>/dev/null");
    CHECK(result.exitCode == 3);
    auto remote = testutil::runCommand(
        "DIVCARD_HTTP_CASSETTE=" + q(testutil::fixturePath("cassettes/not_found.json")) + " " +
        bin() + " scan acme/missing 2>/dev/null");
    CHECK(remote.exitCode == 3);
}

TEST_CASE("scan: --name-table extends the matcher") {
    auto dir = tmpDir() / "renamed_repo";
    std::filesystem::create_directories(dir);
    {
        std::ofstream out(dir / "BEHAVIOUR.md");
        out << "Be kind.\n";
    }
    auto table = tmpDir() / "names.json";
    {
        std::ofstream out(table);
        out << "{\"codeOfConduct\": [\"behaviour\"]}";
    }
    auto result = testutil::runCommand(bin() + " scan " + q(dir.string()) + " --name-table " +
                                       q(table.string()) +
                                       " --format json --collected-at 2025-01-22T00:00:00Z"
                                       " 2>/dev/null");
    CHECK(result.exitCode == 0);
    auto doc = nlohmann::json::parse(result.output, nullptr, false);
    REQUIRE_FALSE(doc.is_discarded());
    REQUIRE(doc["files"].size() == 1);
    CHECK(doc["files"][0]["category"] == "codeOfConduct");
}

TEST_CASE("--help and --version exit 0") {
    auto help = testutil::runCommand(bin() + " --help 2>/dev/null");
    CHECK(help.exitCode == 0);
    CHECK(help.output.find("Software Diversity Card") != std::string::npos);
    auto version = testutil::runCommand(bin() + " --version 2>/dev/null");
    CHECK(version.exitCode == 0);
    CHECK(version.output.find("divcard 0.1.0") != std::string::npos);
}

TEST_CASE("llm backend without an endpoint is a usage error") {
    auto result = testutil::runCommand("env -u DIVCARD_LLM_ENDPOINT " + bin() + " scan " +
                                       q(testutil::fixturePath("corpus/repo07")) +
                                       " --backend llm 2>/dev/null");
    CHECK(result.exitCode == 2);
}
