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

#include "qalloc/grid_map.h"

#include <fstream>
#include <sstream>
#include <stdexcept>

namespace qalloc {

GridMap::GridMap(int width, int height) : width_(width), height_(height) {
  if (width <= 0 || height <= 0) {
    throw std::invalid_argument("grid map dimensions must be positive");
  }
  const auto n = static_cast<std::size_t>(width) * static_cast<std::size_t>(height);
  occupied_.assign(n, 0);
  risk_.assign(n, 0.0);
}

void GridMap::SetOccupied(Cell c, bool occupied) {
  if (!InBounds(c)) {
    std::ostringstream msg;
    msg << "cell " << c << " outside " << width_ << "x" << height_ << " map";
    throw std::out_of_range(msg.str());
  }
  occupied_[Index(c)] = occupied ? 1 : 0;
  if (occupied) risk_[Index(c)] = 0.0;
}

std::string GridMap::ToText() const {
  std::string out;
  out.reserve(cell_count() + static_cast<std::size_t>(height_));
  for (int y = 0; y < height_; ++y) {
    for (int x = 0; x < width_; ++x) {
      out.push_back(occupied_[Index({x, y})] ? '#' : '.');
    }
    out.push_back('\n');
  }
  return out;
}

GridMap ParseGridMap(std::string_view text) {
  std::vector<std::string> rows;
  std::size_t start = 0;
  while (start <= text.size()) {
    std::size_t end = text.find('\n', start);
    if (end == std::string_view::npos) end = text.size();
    std::string row(text.substr(start, end - start));
    if (!row.empty() && row.back() == '\r') row.pop_back();
    rows.push_back(std::move(row));
    start = end + 1;
  }
  while (!rows.empty() && rows.back().empty()) rows.pop_back();
  if (rows.empty()) throw std::invalid_argument("grid map is empty");

  const int width = static_cast<int>(rows.front().size());
  const int height = static_cast<int>(rows.size());
  if (width == 0) throw std::invalid_argument("grid map row 1 is empty");
  GridMap map(width, height);
  for (int y = 0; y < height; ++y) {
    const std::string& row = rows[static_cast<std::size_t>(y)];
    if (static_cast<int>(row.size()) != width) {
      std::ostringstream msg;
      msg << "grid map row " << (y + 1) << " has length " << row.size()
          << ", expected " << width;
      throw std::invalid_argument(msg.str());
    }
    for (int x = 0; x < width; ++x) {
      const char ch = row[static_cast<std::size_t>(x)];
      if (ch == '#') {
        map.SetOccupied({x, y}, true);
      } else if (ch != '.') {
        std::ostringstream msg;
        msg << "grid map row " << (y + 1) << " column " << (x + 1)
            << ": unexpected character '" << ch << "'";
        throw std::invalid_argument(msg.str());
      }
    }
  }
  return map;
}

GridMap LoadGridMapFile(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open map file " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  try {
    return ParseGridMap(buf.str());
  } catch (const std::invalid_argument& e) {
    throw std::invalid_argument(path.string() + ": " + e.what());
  }
}

}  // namespace qalloc
