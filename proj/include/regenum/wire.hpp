// Copyright 2026 The regenum Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

// Master-worker wire format. Frame: u32 length (bytes after the length
// field), u8 kind, payload. All integers are big-endian.
//
//   REQUEST  = 0   (no payload)
//   ASSIGN   = 1   task_index u64
//   RESULT   = 2   task_index u64, count u64, has_best u8,
//                  best_numerator u64, best_denominator u64,
//                  champion_count u32, elapsed_ms u64
//   SHUTDOWN = 3   (no payload)

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <variant>
#include <vector>

#include "regenum/aspl.hpp"
#include "regenum/error.hpp"

namespace regenum::wire {

enum class Kind : std::uint8_t { kRequest = 0, kAssign = 1, kResult = 2, kShutdown = 3 };

struct Request {
  friend bool operator==(const Request&, const Request&) = default;
};

struct Assign {
  std::uint64_t task_index = 0;
  friend bool operator==(const Assign&, const Assign&) = default;
};

struct Result {
  std::uint64_t task_index = 0;
  std::uint64_t count = 0;
  std::optional<AsplValue> best;
  std::uint32_t champion_count = 0;
  std::uint64_t elapsed_ms = 0;

  friend bool operator==(const Result& a, const Result& b) {
    const bool same_best = a.best.has_value() == b.best.has_value() &&
                           (!a.best || a.best->identical(*b.best));
    return same_best && a.task_index == b.task_index && a.count == b.count &&
           a.champion_count == b.champion_count && a.elapsed_ms == b.elapsed_ms;
  }
};

struct Shutdown {
  friend bool operator==(const Shutdown&, const Shutdown&) = default;
};

using Message = std::variant<Request, Assign, Result, Shutdown>;

inline constexpr std::size_t kHeaderBytes = 4;
inline constexpr std::size_t kResultPayloadBytes = 8 + 8 + 1 + 8 + 8 + 4 + 8;

inline Kind kind_of(const Message& m) { return static_cast<Kind>(m.index()); }

inline std::size_t payload_size(Kind kind) {
  switch (kind) {
    case Kind::kAssign: return 8;
    case Kind::kResult: return kResultPayloadBytes;
    default: return 0;
  }
}

namespace detail {

template <typename T>
void put(std::vector<std::uint8_t>& out, T value) {
  for (int shift = 8 * (static_cast<int>(sizeof(T)) - 1); shift >= 0; shift -= 8) {
    out.push_back(static_cast<std::uint8_t>(value >> shift));
  }
}

template <typename T>
T get(std::span<const std::uint8_t> in, std::size_t& pos) {
  T value = 0;
  for (std::size_t i = 0; i < sizeof(T); ++i) value = static_cast<T>((value << 8) | in[pos++]);
  return value;
}

}  // namespace detail

inline void encode(const Message& m, std::vector<std::uint8_t>& out) {
  const Kind kind = kind_of(m);
  detail::put<std::uint32_t>(out, static_cast<std::uint32_t>(1 + payload_size(kind)));
  out.push_back(static_cast<std::uint8_t>(kind));
  if (const auto* a = std::get_if<Assign>(&m)) {
    detail::put<std::uint64_t>(out, a->task_index);
  } else if (const auto* r = std::get_if<Result>(&m)) {
    detail::put<std::uint64_t>(out, r->task_index);
    detail::put<std::uint64_t>(out, r->count);
    out.push_back(r->best ? 1 : 0);
    detail::put<std::uint64_t>(out, r->best ? r->best->numerator : 0);
    detail::put<std::uint64_t>(out, r->best ? r->best->denominator : 0);
    detail::put<std::uint32_t>(out, r->champion_count);
    detail::put<std::uint64_t>(out, r->elapsed_ms);
  }
}

inline std::vector<std::uint8_t> encode(const Message& m) {
  std::vector<std::uint8_t> out;
  encode(m, out);
  return out;
}

// Decodes one frame body (kind byte + payload).
inline Message decode_body(std::span<const std::uint8_t> body) {
  if (body.empty()) throw Error(ErrorCode::kProtocol, "empty frame");
  if (body[0] > static_cast<std::uint8_t>(Kind::kShutdown)) {
    throw Error(ErrorCode::kProtocol, "unknown message kind " + std::to_string(body[0]));
  }
  const auto kind = static_cast<Kind>(body[0]);
  if (body.size() != 1 + payload_size(kind)) {
    throw Error(ErrorCode::kProtocol, "bad frame length " + std::to_string(body.size()));
  }
  std::size_t pos = 1;
  switch (kind) {
    case Kind::kRequest: return Request{};
    case Kind::kShutdown: return Shutdown{};
    case Kind::kAssign: return Assign{detail::get<std::uint64_t>(body, pos)};
    case Kind::kResult: {
      Result r;
      r.task_index = detail::get<std::uint64_t>(body, pos);
      r.count = detail::get<std::uint64_t>(body, pos);
      const std::uint8_t has_best = body[pos++];
      const auto num = detail::get<std::uint64_t>(body, pos);
      const auto den = detail::get<std::uint64_t>(body, pos);
      if (has_best > 1) throw Error(ErrorCode::kProtocol, "has_best must be 0 or 1");
      if (has_best == 1) {
        if (den == 0) throw Error(ErrorCode::kProtocol, "zero ASPL denominator");
        r.best = AsplValue{num, den};
      }
      r.champion_count = detail::get<std::uint32_t>(body, pos);
      r.elapsed_ms = detail::get<std::uint64_t>(body, pos);
      return r;
    }
  }
  throw Error(ErrorCode::kProtocol, "unreachable");
}

// Incremental decoder for a byte stream.
class FrameReader {
 public:
  static constexpr std::uint32_t kMaxFrame = 1 + kResultPayloadBytes;

  void feed(std::span<const std::uint8_t> bytes) { buf_.insert(buf_.end(), bytes.begin(), bytes.end()); }

  std::optional<Message> next() {
    if (buf_.size() - pos_ < kHeaderBytes) return std::nullopt;
    std::size_t p = pos_;
    const auto len = detail::get<std::uint32_t>(buf_, p);
    if (len == 0 || len > kMaxFrame) throw Error(ErrorCode::kProtocol, "frame length " + std::to_string(len));
    if (buf_.size() - p < len) return std::nullopt;
    Message m = decode_body(std::span<const std::uint8_t>(buf_).subspan(p, len));
    pos_ = p + len;
    if (pos_ == buf_.size()) {
      buf_.clear();
      pos_ = 0;
    }
    return m;
  }

  std::size_t buffered() const { return buf_.size() - pos_; }

 private:
  std::vector<std::uint8_t> buf_;
  std::size_t pos_ = 0;
};

}  // namespace regenum::wire
