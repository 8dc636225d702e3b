// SPDX-License-Identifier: Apache-2.0
#include "abridge/llm/gateway.hpp"

#include <thread>

namespace abridge::llm {

LlmGateway::LlmGateway(std::shared_ptr<ChatProvider> provider, CompletionParams defaults, Sleeper sleeper)
    : provider_(std::move(provider)), defaults_(defaults), sleeper_(std::move(sleeper)) {
  if (!provider_) throw ValidationError("gateway needs a provider");
  if (!sleeper_) sleeper_ = [](std::chrono::milliseconds d) { std::this_thread::sleep_for(d); };
}

ChatMessage LlmGateway::complete(const Conversation& conversation) const {
  return complete(conversation, defaults_);
}

ChatMessage LlmGateway::complete(const Conversation& conversation, const CompletionParams& params) const {
  validate(conversation);
  if (params.temperature < 0.0) throw ValidationError("temperature must be >= 0");
  if (params.max_output_tokens <= 0) throw ValidationError("max_output_tokens must be positive");
  if (params.max_retries < 0) throw ValidationError("max_retries must be >= 0");

  auto delay = kBackoffBase;
  for (int attempt = 0;; ++attempt) {
    ++attempts_;
    try {
      return ChatMessage{Role::assistant, provider_->send(conversation, params)};
    } catch (const TimeoutError& e) {
      if (attempt >= params.max_retries) {
        throw TimeoutError(std::string("provider timed out after ") + std::to_string(attempt + 1) +
                           " attempt(s): " + e.what());
      }
    } catch (const TransientError& e) {
      if (attempt >= params.max_retries) {
        throw ProviderError(std::string("provider failed after ") + std::to_string(attempt + 1) +
                            " attempt(s): " + e.what());
      }
    }
    sleeper_(delay);
    delay *= kBackoffFactor;
  }
}

}  // namespace abridge::llm
