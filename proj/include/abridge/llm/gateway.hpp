// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <atomic>
#include <chrono>
#include <cstdint>
#include <functional>
#include <memory>

#include "abridge/llm/chat.hpp"
#include "abridge/llm/provider.hpp"

namespace abridge::llm {

/// Validates conversations and retries transient provider failures with
/// exponential backoff (1 s, 2 s, 4 s, ...). Safe to share across threads.
class LlmGateway {
 public:
  using Sleeper = std::function<void(std::chrono::milliseconds)>;

  explicit LlmGateway(std::shared_ptr<ChatProvider> provider, CompletionParams defaults = {},
                      Sleeper sleeper = {});

  ChatMessage complete(const Conversation& conversation) const;
  ChatMessage complete(const Conversation& conversation, const CompletionParams& params) const;

  const CompletionParams& defaults() const noexcept { return defaults_; }

  /// Provider attempts made through this gateway so far.
  std::uint64_t attempt_count() const noexcept { return attempts_.load(); }

  static constexpr std::chrono::milliseconds kBackoffBase{1000};
  static constexpr int kBackoffFactor = 2;

 private:
  std::shared_ptr<ChatProvider> provider_;
  CompletionParams defaults_;
  Sleeper sleeper_;
  mutable std::atomic<std::uint64_t> attempts_{0};
};

}  // namespace abridge::llm
