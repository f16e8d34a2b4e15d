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

#include <gtest/gtest.h>

#include <cstdint>
#include <vector>

#include "regenum/wire.hpp"

namespace regenum::wire {
namespace {

using Bytes = std::vector<std::uint8_t>;

ErrorCode decode_error(const Bytes& frame) {
  FrameReader r;
  r.feed(frame);
  try {
    r.next();
  } catch (const Error& e) {
    return e.code();
  }
  ADD_FAILURE() << "accepted";
  return ErrorCode::kIo;
}

TEST(WireTest, ExactBytes) {
  EXPECT_EQ(encode(Request{}), (Bytes{0, 0, 0, 1, 0}));
  EXPECT_EQ(encode(Shutdown{}), (Bytes{0, 0, 0, 1, 3}));
  EXPECT_EQ(encode(Assign{0x0102030405060708ULL}), (Bytes{0, 0, 0, 9, 1, 1, 2, 3, 4, 5, 6, 7, 8}));

  const Bytes result = encode(Result{7, 19, AsplValue{150, 90}, 1, 42});
  const Bytes expected = {0, 0, 0, 46, 2,                       // length, kind
                          0, 0, 0, 0, 0, 0, 0, 7,               // task
                          0, 0, 0, 0, 0, 0, 0, 19,              // count
                          1,                                    // has best
                          0, 0, 0, 0, 0, 0, 0, 150,             // numerator
                          0, 0, 0, 0, 0, 0, 0, 90,              // denominator
                          0, 0, 0, 1,                           // champions
                          0, 0, 0, 0, 0, 0, 0, 42};             // elapsed ms
  EXPECT_EQ(result, expected);
  EXPECT_EQ(result.size(), kHeaderBytes + 1 + kResultPayloadBytes);
}

TEST(WireTest, RoundTripEveryKind) {
  const std::vector<Message> messages = {Request{}, Assign{12345}, Result{3, 0, std::nullopt, 0, 5},
                                         Result{UINT64_MAX, UINT64_MAX, AsplValue{7, 3}, 9, 1}, Shutdown{}};
  FrameReader r;
  for (const Message& m : messages) r.feed(encode(m));
  for (const Message& m : messages) {
    auto got = r.next();
    ASSERT_TRUE(got.has_value());
    EXPECT_EQ(*got, m);
  }
  EXPECT_FALSE(r.next().has_value());
  EXPECT_EQ(r.buffered(), 0U);
}

TEST(WireTest, ByteAtATime) {
  Bytes stream;
  for (const Message& m : std::vector<Message>{Assign{1}, Result{2, 3, AsplValue{5, 3}, 1, 0}, Shutdown{}}) {
    const Bytes b = encode(m);
    stream.insert(stream.end(), b.begin(), b.end());
  }
  FrameReader r;
  std::vector<Message> got;
  for (std::uint8_t byte : stream) {
    r.feed(std::vector<std::uint8_t>{byte});
    while (auto m = r.next()) got.push_back(*m);
  }
  ASSERT_EQ(got.size(), 3U);
  EXPECT_EQ(got[0], Message(Assign{1}));
  EXPECT_EQ(got[2], Message(Shutdown{}));
}

TEST(WireTest, Malformed) {
  EXPECT_EQ(decode_error({0, 0, 0, 0}), ErrorCode::kProtocol);             // zero length
  EXPECT_EQ(decode_error({0, 0, 0, 1, 4}), ErrorCode::kProtocol);          // unknown kind
  EXPECT_EQ(decode_error({0, 0, 0, 2, 0, 0}), ErrorCode::kProtocol);       // REQUEST with payload
  EXPECT_EQ(decode_error({0, 0, 0, 5, 1, 0, 0, 0, 0}), ErrorCode::kProtocol);  // short ASSIGN
  EXPECT_EQ(decode_error({0x7f, 0, 0, 0, 1}), ErrorCode::kProtocol);       // absurd length

  Bytes bad_flag = encode(Result{1, 1, AsplValue{1, 1}, 0, 0});
  bad_flag[5 + 16] = 2;
  EXPECT_EQ(decode_error(bad_flag), ErrorCode::kProtocol);
  Bytes zero_den = encode(Result{1, 1, AsplValue{1, 1}, 0, 0});
  zero_den[5 + 17 + 15] = 0;
  EXPECT_EQ(decode_error(zero_den), ErrorCode::kProtocol);
}

TEST(WireTest, IncompleteFrameWaits) {
  const Bytes b = encode(Assign{9});
  FrameReader r;
  r.feed(std::span<const std::uint8_t>(b.data(), b.size() - 1));
  EXPECT_FALSE(r.next().has_value());
  r.feed(std::span<const std::uint8_t>(b.data() + b.size() - 1, 1));
  EXPECT_EQ(r.next(), std::optional<Message>(Assign{9}));
}

}  // namespace
}  // namespace regenum::wire
