// Copyright 2026 The qalloc Authors
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

#ifndef QALLOC_TYPES_H_
#define QALLOC_TYPES_H_

#include <compare>
#include <cstdint>
#include <functional>
#include <ostream>

namespace qalloc {

// Integer identifier that does not convert implicitly between entity kinds.
template <typename Tag>
class StrongId {
 public:
  constexpr StrongId() = default;
  constexpr explicit StrongId(std::int32_t value) : value_(value) {}

  constexpr std::int32_t value() const { return value_; }

  friend constexpr auto operator<=>(StrongId, StrongId) = default;

  friend std::ostream& operator<<(std::ostream& os, StrongId id) {
    return os << id.value_;
  }

 private:
  std::int32_t value_ = -1;
};

struct TaskTag {};
struct AgentTag {};
struct StationTag {};

using TaskId = StrongId<TaskTag>;
using AgentId = StrongId<AgentTag>;
using StationId = StrongId<StationTag>;

// Simulation time in ticks. One tick is one second of scenario time.
using Tick = std::int64_t;

struct Cell {
  int x = 0;
  int y = 0;

  friend constexpr auto operator<=>(const Cell&, const Cell&) = default;

  friend std::ostream& operator<<(std::ostream& os, const Cell& c) {
    return os << '(' << c.x << ',' << c.y << ')';
  }
};

}  // namespace qalloc

template <typename Tag>
struct std::hash<qalloc::StrongId<Tag>> {
  std::size_t operator()(qalloc::StrongId<Tag> id) const noexcept {
    return std::hash<std::int32_t>{}(id.value());
  }
};

template <>
struct std::hash<qalloc::Cell> {
  std::size_t operator()(const qalloc::Cell& c) const noexcept {
    return std::hash<std::int64_t>{}((static_cast<std::int64_t>(c.x) << 32) ^
                                     static_cast<std::uint32_t>(c.y));
  }
};

#endif  // QALLOC_TYPES_H_
