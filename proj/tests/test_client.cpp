#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <algorithm>
#include <atomic>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <thread>
#include <unistd.h>

#include "httplib.h"
#include "json.hpp"

#include "grover/client.hpp"

using namespace grover;

namespace {

struct TempDir {
    std::filesystem::path path;
    TempDir() {
        path = std::filesystem::temp_directory_path() /
               ("grover_client_" + std::to_string(::getpid()));
        std::filesystem::create_directories(path);
    }
    ~TempDir() { std::filesystem::remove_all(path); }
    std::string file(const char* name) const { return (path / name).string(); }
};

std::string slurp(const std::string& path) {
    std::ifstream in(path);
    std::stringstream buffer;
    buffer << in.rdbuf();
    return buffer.str();
}

// Stub chat-completion endpoint replaying deterministic canned replies.
struct StubServer {
    httplib::Server server;
    std::thread thread;
    int port = 0;
    std::atomic<int> requests{0};
    std::atomic<int> throttles_left{0};
    std::string last_auth;

    StubServer() {
        server.Post("/v1/chat/completions", [this](const httplib::Request& req,
                                                   httplib::Response& res) {
            ++requests;
            last_auth = req.get_header_value("Authorization");
            if (throttles_left > 0) {
                --throttles_left;
                res.status = 429;
                return;
            }
            const auto body = nlohmann::json::parse(req.body);
            const std::string prompt =
                body.at("messages").at(0).at("content").get<std::string>();
            const nlohmann::json reply{
                {"choices",
                 {{{"message",
                    {{"role", "assistant"},
                     {"content", "{'00': 0.9} for prompt len " +
                                     std::to_string(prompt.size())}}}}}}};
            res.set_content(reply.dump(), "application/json");
        });
        port = server.bind_to_any_port("127.0.0.1");
        thread = std::thread([this] { server.listen_after_bind(); });
        server.wait_until_ready();
    }
    ~StubServer() {
        server.stop();
        thread.join();
    }
    std::string url() const {
        return "http://127.0.0.1:" + std::to_string(port) + "/v1/chat/completions";
    }
};

void write_corpus(const std::string& path, int n_records) {
    std::ofstream out(path);
    for (int i = 0; i < n_records; ++i) {
        out << nlohmann::json{{"id", "rec-" + std::to_string(i)},
                              {"prompt", "prompt number " + std::to_string(i)}}
                   .dump()
            << '\n';
    }
}

EndpointConfig stub_config(const StubServer& stub, const TempDir& tmp) {
    EndpointConfig config;
    config.url = stub.url();
    config.model = "stub-model";
    config.cache_dir = tmp.file("cache");
    config.requests_per_minute = 100000;  // no pacing in tests
    config.max_retries = 3;
    return config;
}

}  // namespace

TEST_CASE("sha256 matches the FIPS test vectors") {
    CHECK(sha256_hex("") ==
          "e3b0c44298fc1c149afbf4c8996fb92427ae41e4649b934ca495991b7852b855");
    CHECK(sha256_hex("abc") ==
          "ba7816bf8f01cfea414140de5dae2223b00361a396177a9cb410ff61f20015ad");
    CHECK(sha256_hex(std::string(1000, 'a')).size() == 64);
}

TEST_CASE("cache keys are stable and sensitive to every component") {
    EndpointConfig config;
    config.url = "http://example/v1/chat/completions";
    config.model = "m";
    const std::string key = cache_key(config, "prompt");
    CHECK(key == cache_key(config, "prompt"));
    CHECK(key != cache_key(config, "other prompt"));
    EndpointConfig other = config;
    other.model = "m2";
    CHECK(key != cache_key(other, "prompt"));
    other = config;
    other.temperature = 0.7;
    CHECK(key != cache_key(other, "prompt"));
}

TEST_CASE("query-model round trip with caching and resumability") {
    TempDir tmp;
    StubServer stub;
    write_corpus(tmp.file("corpus.jsonl"), 3);
    const EndpointConfig config = stub_config(stub, tmp);

    const QueryStats first =
        query_model(tmp.file("corpus.jsonl"), config, tmp.file("preds.jsonl"), "tag");
    CHECK(first.records == 3);
    CHECK(first.network_calls == 3);
    CHECK(first.cache_hits == 0);
    CHECK(first.failed == 0);
    const std::string run1 = slurp(tmp.file("preds.jsonl"));
    CHECK(std::count(run1.begin(), run1.end(), '\n') == 3);
    CHECK(run1.find("\"model_tag\":\"tag\"") != std::string::npos);

    // warm cache: identical output, zero network traffic
    const int before = stub.requests;
    const QueryStats second =
        query_model(tmp.file("corpus.jsonl"), config, tmp.file("preds.jsonl"), "tag");
    CHECK(second.cache_hits == 3);
    CHECK(second.network_calls == 0);
    CHECK(stub.requests == before);
    CHECK(slurp(tmp.file("preds.jsonl")) == run1);
}

TEST_CASE("throttle responses are retried") {
    TempDir tmp;
    StubServer stub;
    stub.throttles_left = 2;
    write_corpus(tmp.file("corpus.jsonl"), 1);

    const QueryStats stats = query_model(tmp.file("corpus.jsonl"),
                                         stub_config(stub, tmp),
                                         tmp.file("preds.jsonl"));
    CHECK(stats.retries == 2);
    CHECK(stats.failed == 0);
    CHECK(stub.requests == 3);
}

TEST_CASE("exhausted retries mark the record failed and the run continues") {
    TempDir tmp;
    StubServer stub;
    stub.throttles_left = 100;
    write_corpus(tmp.file("corpus.jsonl"), 2);
    EndpointConfig config = stub_config(stub, tmp);
    config.max_retries = 1;

    const QueryStats stats =
        query_model(tmp.file("corpus.jsonl"), config, tmp.file("preds.jsonl"));
    CHECK(stats.failed == 2);
    CHECK(slurp(tmp.file("preds.jsonl")).empty());
}

TEST_CASE("cache soundness: one key, one reply") {
    TempDir tmp;
    StubServer stub;
    write_corpus(tmp.file("corpus.jsonl"), 2);
    const EndpointConfig config = stub_config(stub, tmp);
    query_model(tmp.file("corpus.jsonl"), config, tmp.file("a.jsonl"));
    query_model(tmp.file("corpus.jsonl"), config, tmp.file("b.jsonl"));
    CHECK(slurp(tmp.file("a.jsonl")) == slurp(tmp.file("b.jsonl")));
    // one cache file per distinct prompt
    int cache_files = 0;
    for (const auto& entry :
         std::filesystem::directory_iterator(tmp.file("cache"))) {
        (void)entry;
        ++cache_files;
    }
    CHECK(cache_files == 2);
}

TEST_CASE("the auth token reaches the wire but never any artifact") {
    TempDir tmp;
    StubServer stub;
    write_corpus(tmp.file("corpus.jsonl"), 2);
    EndpointConfig config = stub_config(stub, tmp);
    config.auth_env = "GROVER_TEST_SENTINEL_TOKEN";
    const std::string sentinel = "sentinel-vGh2K9-secret";
    ::setenv(config.auth_env.c_str(), sentinel.c_str(), 1);

    query_model(tmp.file("corpus.jsonl"), config, tmp.file("preds.jsonl"));
    CHECK(stub.last_auth == "Bearer " + sentinel);

    // scan everything the run persisted
    for (const auto& entry :
         std::filesystem::recursive_directory_iterator(tmp.path)) {
        if (!entry.is_regular_file()) continue;
        const std::string content = slurp(entry.path().string());
        CHECK(content.find(sentinel) == std::string::npos);
    }
    ::unsetenv(config.auth_env.c_str());
}
