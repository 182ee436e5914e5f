// Copyright (c) 2026 labelcheck authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//   http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "labelcheck/pgm.h"

#include <algorithm>
#include <cctype>
#include <filesystem>
#include <fstream>
#include <iterator>

#include "labelcheck/error.h"

namespace labelcheck {

namespace {

class HeaderReader {
 public:
  explicit HeaderReader(std::string_view bytes) : bytes_(bytes) {}

  void SkipSpaceAndComments() {
    while (pos_ < bytes_.size()) {
      const char c = bytes_[pos_];
      if (c == '#') {
        while (pos_ < bytes_.size() && bytes_[pos_] != '\n') ++pos_;
      } else if (std::isspace(static_cast<unsigned char>(c))) {
        ++pos_;
      } else {
        break;
      }
    }
  }

  long Number() {
    SkipSpaceAndComments();
    const size_t start = pos_;
    long value = 0;
    while (pos_ < bytes_.size() && std::isdigit(static_cast<unsigned char>(bytes_[pos_]))) {
      value = value * 10 + (bytes_[pos_] - '0');
      if (value > 1 << 24) throw Error(ErrorCode::kBadImage, "header value too large");
      ++pos_;
    }
    if (pos_ == start) throw Error(ErrorCode::kBadImage, "expected a number in header");
    return value;
  }

  size_t pos() const { return pos_; }
  void Advance() { ++pos_; }

 private:
  std::string_view bytes_;
  size_t pos_ = 2;
};

}  // namespace

FrameRegion ParsePgm(std::string_view bytes) {
  if (bytes.size() < 2 || bytes[0] != 'P' || bytes[1] != '5') {
    throw Error(ErrorCode::kBadImage, "not a binary PGM (P5)");
  }
  HeaderReader header(bytes);
  const long width = header.Number();
  const long height = header.Number();
  const long maxval = header.Number();
  if (width <= 0 || height <= 0 || maxval <= 0 || maxval > 255) {
    throw Error(ErrorCode::kBadImage, "unsupported PGM dimensions or maxval");
  }
  // Exactly one whitespace byte separates the header from the raster.
  if (header.pos() >= bytes.size() ||
      !std::isspace(static_cast<unsigned char>(bytes[header.pos()]))) {
    throw Error(ErrorCode::kBadImage, "missing raster separator");
  }
  header.Advance();
  const size_t count = static_cast<size_t>(width) * static_cast<size_t>(height);
  if (bytes.size() - header.pos() < count) {
    throw Error(ErrorCode::kBadImage, "truncated raster");
  }
  FrameRegion region(static_cast<int>(width), static_cast<int>(height));
  const double scale = 255.0 / static_cast<double>(maxval);
  for (size_t i = 0; i < count; ++i) {
    const auto v = static_cast<unsigned char>(bytes[header.pos() + i]);
    region.pixels[i] = static_cast<float>(std::min<double>(v * scale, 255.0));
  }
  return region;
}

FrameRegion ReadPgmFile(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::kFileMissing, "cannot open " + path);
  std::string bytes((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
  try {
    return ParsePgm(bytes);
  } catch (const Error& e) {
    throw Error(e.code(), path + ": " + e.what());
  }
}

std::string EncodePgm(const FrameRegion& region) {
  std::string out = "P5\n" + std::to_string(region.width) + " " +
                    std::to_string(region.height) + "\n255\n";
  for (float v : region.pixels) {
    out.push_back(static_cast<char>(
        static_cast<unsigned char>(std::clamp(v + 0.5f, 0.0f, 255.0f))));
  }
  return out;
}

std::vector<IndexedFrame> LoadFrameDirectory(const std::string& dir) {
  namespace fs = std::filesystem;
  std::error_code ec;
  if (!fs::is_directory(dir, ec)) {
    throw Error(ErrorCode::kFileMissing, "not a directory: " + dir);
  }
  std::vector<std::pair<long, fs::path>> files;
  for (const auto& entry : fs::directory_iterator(dir)) {
    if (!entry.is_regular_file() || entry.path().extension() != ".pgm") continue;
    const std::string stem = entry.path().stem().string();
    if (stem.empty() || stem.size() > 12 ||
        !std::all_of(stem.begin(), stem.end(),
                     [](char c) { return std::isdigit(static_cast<unsigned char>(c)); })) {
      continue;
    }
    files.emplace_back(std::stol(stem), entry.path());
  }
  std::sort(files.begin(), files.end());
  std::vector<IndexedFrame> frames;
  for (size_t i = 0; i < files.size(); ++i) {
    if (i > 0 && files[i].first == files[i - 1].first) {
      throw Error(ErrorCode::kInvalidArgument,
                  "duplicate frame index " + std::to_string(files[i].first));
    }
    frames.push_back({files[i].first, ReadPgmFile(files[i].second.string())});
  }
  return frames;
}

}  // namespace labelcheck
