#include "grover/client.hpp"

#include <array>
#include <chrono>
#include <cstdint>
#include <cstdlib>
#include <cstring>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <stdexcept>
#include <thread>

#include "httplib.h"
#include "json.hpp"

namespace grover {

namespace {

// Compact SHA-256 (FIPS 180-4), enough for content-addressed cache keys.
struct Sha256 {
    std::array<std::uint32_t, 8> state{0x6a09e667, 0xbb67ae85, 0x3c6ef372,
                                       0xa54ff53a, 0x510e527f, 0x9b05688c,
                                       0x1f83d9ab, 0x5be0cd19};
    std::array<std::uint8_t, 64> buffer{};
    std::uint64_t total = 0;
    std::size_t fill = 0;

    static std::uint32_t rotr(std::uint32_t x, int n) {
        return (x >> n) | (x << (32 - n));
    }

    void compress(const std::uint8_t* block) {
        static constexpr std::uint32_t k[64] = {
            0x428a2f98, 0x71374491, 0xb5c0fbcf, 0xe9b5dba5, 0x3956c25b,
            0x59f111f1, 0x923f82a4, 0xab1c5ed5, 0xd807aa98, 0x12835b01,
            0x243185be, 0x550c7dc3, 0x72be5d74, 0x80deb1fe, 0x9bdc06a7,
            0xc19bf174, 0xe49b69c1, 0xefbe4786, 0x0fc19dc6, 0x240ca1cc,
            0x2de92c6f, 0x4a7484aa, 0x5cb0a9dc, 0x76f988da, 0x983e5152,
            0xa831c66d, 0xb00327c8, 0xbf597fc7, 0xc6e00bf3, 0xd5a79147,
            0x06ca6351, 0x14292967, 0x27b70a85, 0x2e1b2138, 0x4d2c6dfc,
            0x53380d13, 0x650a7354, 0x766a0abb, 0x81c2c92e, 0x92722c85,
            0xa2bfe8a1, 0xa81a664b, 0xc24b8b70, 0xc76c51a3, 0xd192e819,
            0xd6990624, 0xf40e3585, 0x106aa070, 0x19a4c116, 0x1e376c08,
            0x2748774c, 0x34b0bcb5, 0x391c0cb3, 0x4ed8aa4a, 0x5b9cca4f,
            0x682e6ff3, 0x748f82ee, 0x78a5636f, 0x84c87814, 0x8cc70208,
            0x90befffa, 0xa4506ceb, 0xbef9a3f7, 0xc67178f2};
        std::uint32_t w[64];
        for (int i = 0; i < 16; ++i) {
            w[i] = (std::uint32_t(block[4 * i]) << 24) |
                   (std::uint32_t(block[4 * i + 1]) << 16) |
                   (std::uint32_t(block[4 * i + 2]) << 8) |
                   std::uint32_t(block[4 * i + 3]);
        }
        for (int i = 16; i < 64; ++i) {
            const std::uint32_t s0 =
                rotr(w[i - 15], 7) ^ rotr(w[i - 15], 18) ^ (w[i - 15] >> 3);
            const std::uint32_t s1 =
                rotr(w[i - 2], 17) ^ rotr(w[i - 2], 19) ^ (w[i - 2] >> 10);
            w[i] = w[i - 16] + s0 + w[i - 7] + s1;
        }
        auto [a, b, c, d, e, f, g, h] = state;
        for (int i = 0; i < 64; ++i) {
            const std::uint32_t s1 = rotr(e, 6) ^ rotr(e, 11) ^ rotr(e, 25);
            const std::uint32_t ch = (e & f) ^ (~e & g);
            const std::uint32_t t1 = h + s1 + ch + k[i] + w[i];
            const std::uint32_t s0 = rotr(a, 2) ^ rotr(a, 13) ^ rotr(a, 22);
            const std::uint32_t maj = (a & b) ^ (a & c) ^ (b & c);
            const std::uint32_t t2 = s0 + maj;
            h = g; g = f; f = e; e = d + t1;
            d = c; c = b; b = a; a = t1 + t2;
        }
        state[0] += a; state[1] += b; state[2] += c; state[3] += d;
        state[4] += e; state[5] += f; state[6] += g; state[7] += h;
    }

    void update(const std::uint8_t* data, std::size_t len) {
        total += len;
        while (len) {
            const std::size_t take = std::min(len, buffer.size() - fill);
            std::memcpy(buffer.data() + fill, data, take);
            fill += take;
            data += take;
            len -= take;
            if (fill == buffer.size()) {
                compress(buffer.data());
                fill = 0;
            }
        }
    }

    std::string finish() {
        const std::uint64_t bits = total * 8;
        const std::uint8_t pad = 0x80;
        update(&pad, 1);
        const std::uint8_t zero = 0x00;
        while (fill != 56) update(&zero, 1);
        std::uint8_t length[8];
        for (int i = 0; i < 8; ++i) {
            length[i] = static_cast<std::uint8_t>(bits >> (56 - 8 * i));
        }
        update(length, 8);
        static const char* hex = "0123456789abcdef";
        std::string out;
        out.reserve(64);
        for (std::uint32_t word : state) {
            for (int shift = 28; shift >= 0; shift -= 4) {
                out += hex[(word >> shift) & 0xf];
            }
        }
        return out;
    }
};

struct ParsedUrl {
    std::string base;  // scheme://host[:port]
    std::string path;
};

ParsedUrl parse_url(const std::string& url) {
    const auto scheme_end = url.find("://");
    if (scheme_end == std::string::npos) {
        throw std::invalid_argument("endpoint url needs a scheme: " + url);
    }
    const auto path_start = url.find('/', scheme_end + 3);
    if (path_start == std::string::npos) return {url, "/"};
    return {url.substr(0, path_start), url.substr(path_start)};
}

}  // namespace

std::string sha256_hex(std::string_view data) {
    Sha256 hash;
    hash.update(reinterpret_cast<const std::uint8_t*>(data.data()), data.size());
    return hash.finish();
}

std::string cache_key(const EndpointConfig& config, const std::string& prompt) {
    char temperature[32];
    std::snprintf(temperature, sizeof temperature, "%.6g", config.temperature);
    std::string material = config.url;
    material += '\n';
    material += config.model;
    material += '\n';
    material += temperature;
    material += '\n';
    material += prompt;
    return sha256_hex(material);
}

QueryStats query_model(const std::string& corpus_path,
                       const EndpointConfig& config,
                       const std::string& predictions_out,
                       const std::string& model_tag) {
    std::ifstream corpus(corpus_path);
    if (!corpus) throw std::runtime_error("cannot open corpus: " + corpus_path);
    std::ofstream out(predictions_out);
    if (!out) {
        throw std::runtime_error("cannot open predictions output: " + predictions_out);
    }
    std::filesystem::create_directories(config.cache_dir);

    // Token stays in memory only; it must never reach disk or any stream.
    std::string token;
    if (const char* env = std::getenv(config.auth_env.c_str())) token = env;

    const ParsedUrl url = parse_url(config.url);
    httplib::Client http(url.base);
    http.set_connection_timeout(std::chrono::milliseconds(
        static_cast<int>(config.timeout_seconds * 1000)));
    http.set_read_timeout(std::chrono::milliseconds(
        static_cast<int>(config.timeout_seconds * 1000)));

    const auto min_interval =
        config.requests_per_minute > 0
            ? std::chrono::milliseconds(60000 / config.requests_per_minute)
            : std::chrono::milliseconds(0);
    auto last_call = std::chrono::steady_clock::now() - min_interval;

    QueryStats stats;
    const std::string tag = model_tag.empty() ? config.model : model_tag;
    std::string line;
    while (std::getline(corpus, line)) {
        if (line.empty()) continue;
        const auto record = nlohmann::json::parse(line);
        const std::string id = record.at("id").get<std::string>();
        const std::string prompt = record.at("prompt").get<std::string>();
        ++stats.records;

        const std::filesystem::path cache_file =
            std::filesystem::path(config.cache_dir) /
            (cache_key(config, prompt) + ".json");
        std::string reply;
        bool have_reply = false;
        if (std::ifstream cached(cache_file); cached) {
            nlohmann::json j;
            cached >> j;
            reply = j.at("raw_reply").get<std::string>();
            have_reply = true;
            ++stats.cache_hits;
        }

        for (int attempt = 0; !have_reply && attempt <= config.max_retries;
             ++attempt) {
            if (attempt) {
                ++stats.retries;
                std::this_thread::sleep_for(
                    std::chrono::milliseconds(250 << (attempt - 1)));
            }
            const auto now = std::chrono::steady_clock::now();
            if (now - last_call < min_interval) {
                std::this_thread::sleep_for(min_interval - (now - last_call));
            }
            last_call = std::chrono::steady_clock::now();
            ++stats.network_calls;

            nlohmann::json body{
                {"model", config.model},
                {"temperature", config.temperature},
                {"messages",
                 {{{"role", "user"}, {"content", prompt}}}},
            };
            httplib::Headers headers;
            if (!token.empty()) {
                headers.emplace("Authorization", "Bearer " + token);
            }
            auto res = http.Post(url.path, headers, body.dump(), "application/json");
            if (!res) continue;  // transport error, retry
            if (res->status == 429 || res->status >= 500) continue;
            if (res->status != 200) break;  // permanent client error
            try {
                const auto j = nlohmann::json::parse(res->body);
                reply = j.at("choices").at(0).at("message").at("content")
                            .get<std::string>();
                have_reply = true;
            } catch (const nlohmann::json::exception&) {
                break;  // unusable payload, do not hammer the endpoint
            }
        }

        if (!have_reply) {
            ++stats.failed;
            std::cerr << "query failed for record " << id << '\n';
            continue;
        }
        if (!std::filesystem::exists(cache_file)) {
            std::ofstream cached(cache_file);
            cached << nlohmann::json{{"raw_reply", reply}}.dump() << '\n';
        }
        out << nlohmann::ordered_json{{"id", id},
                                      {"model_tag", tag},
                                      {"raw_reply", reply}}
                   .dump()
            << '\n';
        out.flush();
    }
    return stats;
}

}  // namespace grover
