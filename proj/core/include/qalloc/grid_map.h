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

#ifndef QALLOC_GRID_MAP_H_
#define QALLOC_GRID_MAP_H_

#include <cstdint>
#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include "qalloc/types.h"

namespace qalloc {

// Static occupancy grid shared by every agent. Cell (x, y) has x in
// [0, width) growing along a row and y in [0, height) growing down the rows.
// The risk layer is zero until filled in by BuildRiskLayer().
class GridMap {
 public:
  GridMap() = default;
  GridMap(int width, int height);

  int width() const { return width_; }
  int height() const { return height_; }
  std::size_t cell_count() const { return occupied_.size(); }

  bool InBounds(Cell c) const {
    return c.x >= 0 && c.y >= 0 && c.x < width_ && c.y < height_;
  }
  // Out-of-bounds cells report as occupied.
  bool IsOccupied(Cell c) const {
    return !InBounds(c) || occupied_[Index(c)] != 0;
  }
  bool IsFree(Cell c) const { return !IsOccupied(c); }
  void SetOccupied(Cell c, bool occupied);

  double Risk(Cell c) const { return risk_[Index(c)]; }
  void SetRisk(Cell c, double risk) { risk_[Index(c)] = risk; }

  std::size_t Index(Cell c) const {
    return static_cast<std::size_t>(c.y) * static_cast<std::size_t>(width_) +
           static_cast<std::size_t>(c.x);
  }
  Cell CellAt(std::size_t index) const {
    return Cell{static_cast<int>(index % static_cast<std::size_t>(width_)),
                static_cast<int>(index / static_cast<std::size_t>(width_))};
  }

  // Renders the occupancy as '#'/'.' rows, the same format ParseGridMap reads.
  std::string ToText() const;

 private:
  int width_ = 0;
  int height_ = 0;
  std::vector<std::uint8_t> occupied_;
  std::vector<double> risk_;
};

// Parses one row per line, '#' occupied and '.' free. Blank trailing lines
// are ignored; rows must have equal length. Throws std::invalid_argument.
GridMap ParseGridMap(std::string_view text);
GridMap LoadGridMapFile(const std::filesystem::path& path);

}  // namespace qalloc

#endif  // QALLOC_GRID_MAP_H_
