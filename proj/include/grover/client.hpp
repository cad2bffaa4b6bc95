#pragma once
#include <cstdint>
#include <string>
#include <string_view>

namespace grover {

// Generic chat-completion endpoint. `url` is the full completions URL
// (e.g. http://host:port/v1/chat/completions). The auth token is read from
// the named environment variable and never persisted or logged.
struct EndpointConfig {
    std::string url;
    std::string model;
    std::string auth_env = "GROVER_API_TOKEN";
    int max_retries = 3;
    int requests_per_minute = 60;
    double timeout_seconds = 60.0;
    std::string cache_dir = ".grover_cache";
    double temperature = 0.0;
};

struct QueryStats {
    std::uint64_t records = 0;
    std::uint64_t cache_hits = 0;
    std::uint64_t network_calls = 0;
    std::uint64_t retries = 0;
    std::uint64_t failed = 0;
};

// Sends every corpus prompt as a single user message, cache first, with
// retry/backoff on throttling. Predictions are written incrementally in
// input order so interrupted runs resume from the cache.
QueryStats query_model(const std::string& corpus_path,
                       const EndpointConfig& config,
                       const std::string& predictions_out,
                       const std::string& model_tag = "");

std::string sha256_hex(std::string_view data);

// Content hash of (endpoint, model, prompt, decoding params).
std::string cache_key(const EndpointConfig& config, const std::string& prompt);

}  // namespace grover
