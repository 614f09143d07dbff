#pragma once
// Chat-completions client for a live endpoint. Kept out of llm.hpp so the
// offline engine and tests never pull in the HTTP stack.

#include <cstdlib>
#include <string>

#include <httplib.h>
#include <nlohmann/json.hpp>

#include "hydra/llm.hpp"

namespace hydra {

struct HttpLlmConfig {
    std::string base_url = "http://127.0.0.1:8080";
    std::string path = "/v1/chat/completions";
    std::string model = "default";
    std::string api_key_env = "HYDRA_API_KEY";
};

class HttpLlm : public LlmClient {
public:
    explicit HttpLlm(HttpLlmConfig config) : config_(std::move(config)) {}

    std::string complete(const LlmRequest& request) override {
        nlohmann::json body{
            {"model", config_.model},
            {"messages",
             {{{"role", "user"}, {"content", request.prompt}}}},
            {"temperature", request.settings.temperature},
            {"max_tokens", request.settings.max_tokens},
        };
        std::string reply = post_json(config_.path, body.dump());
        nlohmann::json j = nlohmann::json::parse(reply);
        return j.at("choices").at(0).at("message").at("content")
            .get<std::string>();
    }

protected:
    // Overridable transport seam; tests substitute a canned reply.
    virtual std::string post_json(const std::string& path,
                                  const std::string& body) {
        httplib::Client client(config_.base_url);
        client.set_read_timeout(60, 0);
        httplib::Headers headers;
        const char* key = std::getenv(config_.api_key_env.c_str());
        if (key && *key)
            headers.emplace("Authorization", std::string("Bearer ") + key);
        auto res = client.Post(path, headers, body, "application/json");
        if (!res)
            throw std::runtime_error("llm endpoint unreachable: " +
                                     config_.base_url);
        if (res->status != 200)
            throw std::runtime_error("llm endpoint returned status " +
                                     std::to_string(res->status));
        return res->body;
    }

private:
    HttpLlmConfig config_;
};

}  // namespace hydra
