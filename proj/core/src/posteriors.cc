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

#include "labelcheck/posteriors.h"

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstring>
#include <fstream>
#include <iterator>
#include <limits>

#include "labelcheck/error.h"

namespace labelcheck {

namespace {

static_assert(std::numeric_limits<float>::is_iec559, "IEEE 754 required");

constexpr char kMagic[4] = {'C', 'P', 'S', 'T'};

template <typename T>
T LoadLe(const uint8_t* p) {
  T v = 0;
  for (size_t i = 0; i < sizeof(T); ++i) {
    v |= static_cast<T>(static_cast<T>(p[i]) << (8 * i));
  }
  return v;
}

template <typename T>
void StoreLe(T v, std::string* out) {
  for (size_t i = 0; i < sizeof(T); ++i) {
    out->push_back(static_cast<char>((v >> (8 * i)) & 0xFF));
  }
}

}  // namespace

PosteriorMatrix::PosteriorMatrix(int num_frames, int num_units, bool normalized)
    : PosteriorMatrix(num_frames, num_units,
                      std::vector<float>(static_cast<size_t>(std::max(num_frames, 0)) *
                                         static_cast<size_t>(std::max(num_units, 0))),
                      normalized) {}

PosteriorMatrix::PosteriorMatrix(int num_frames, int num_units,
                                 std::vector<float> values, bool normalized)
    : num_frames_(num_frames),
      num_units_(num_units),
      normalized_(normalized),
      values_(std::move(values)) {
  if (num_frames < 0 || num_units < 0) {
    throw Error(ErrorCode::kInvalidArgument, "negative matrix dimension");
  }
  if (values_.size() !=
      static_cast<size_t>(num_frames) * static_cast<size_t>(num_units)) {
    throw Error(ErrorCode::kDimensionMismatch,
                "value count does not match num_frames x num_units");
  }
}

double LogSumExp(std::span<const float> row) {
  double max = -std::numeric_limits<double>::infinity();
  for (float v : row) max = std::max(max, static_cast<double>(v));
  if (!std::isfinite(max)) return max;
  double sum = 0.0;
  for (float v : row) sum += std::exp(static_cast<double>(v) - max);
  return max + std::log(sum);
}

void PosteriorMatrix::CheckNormalized() const {
  if (!normalized_) return;
  for (int t = 0; t < num_frames_; ++t) {
    auto row = Row(t);
    for (float v : row) {
      if (std::isnan(v) || v > kValueTolerance) {
        throw Error(ErrorCode::kNotNormalized,
                    "frame " + std::to_string(t) + " has a value above 0");
      }
    }
    const double lse = LogSumExp(row);
    if (!(std::abs(lse) <= kRowSumTolerance)) {
      throw Error(ErrorCode::kNotNormalized,
                  "frame " + std::to_string(t) + " log-sum-exp is " +
                      std::to_string(lse));
    }
  }
}

PosteriorMatrix ReadPosteriors(std::span<const uint8_t> bytes) {
  if (bytes.size() < 4 || std::memcmp(bytes.data(), kMagic, 4) != 0) {
    throw Error(ErrorCode::kBadMagic, "missing CPST signature");
  }
  if (bytes.size() < PosteriorMatrix::kHeaderBytes) {
    throw Error(ErrorCode::kTruncatedPayload, "header shorter than 16 bytes");
  }
  const uint8_t* p = bytes.data();
  const auto version = LoadLe<uint16_t>(p + 4);
  const auto flags = LoadLe<uint16_t>(p + 6);
  const auto num_frames = LoadLe<uint32_t>(p + 8);
  const auto num_units = LoadLe<uint32_t>(p + 12);
  if (version != PosteriorMatrix::kVersion) {
    throw Error(ErrorCode::kBadMagic,
                "unsupported version " + std::to_string(version));
  }

  const uint64_t count = uint64_t{num_frames} * uint64_t{num_units};
  if (count > std::numeric_limits<uint64_t>::max() / sizeof(float) ||
      count * sizeof(float) >
          std::numeric_limits<size_t>::max() - PosteriorMatrix::kHeaderBytes) {
    throw Error(ErrorCode::kDimensionOverflow,
                std::to_string(num_frames) + " x " + std::to_string(num_units));
  }
  const uint64_t payload = count * sizeof(float);
  const uint64_t available = bytes.size() - PosteriorMatrix::kHeaderBytes;
  if (available < payload) {
    throw Error(ErrorCode::kTruncatedPayload,
                "declared " + std::to_string(payload) + " payload bytes, got " +
                    std::to_string(available));
  }
  if (available > payload ||
      num_frames > static_cast<uint32_t>(std::numeric_limits<int>::max()) ||
      num_units > static_cast<uint32_t>(std::numeric_limits<int>::max())) {
    throw Error(ErrorCode::kDimensionOverflow,
                "payload of " + std::to_string(available) +
                    " bytes does not match the declared dimensions");
  }

  std::vector<float> values(static_cast<size_t>(count));
  const uint8_t* data = p + PosteriorMatrix::kHeaderBytes;
  for (size_t i = 0; i < values.size(); ++i) {
    values[i] = std::bit_cast<float>(LoadLe<uint32_t>(data + 4 * i));
  }
  PosteriorMatrix matrix(static_cast<int>(num_frames),
                         static_cast<int>(num_units), std::move(values),
                         (flags & PosteriorMatrix::kFlagNormalized) != 0);
  matrix.CheckNormalized();
  return matrix;
}

PosteriorMatrix ReadPosteriors(std::string_view bytes) {
  return ReadPosteriors(std::span<const uint8_t>(
      reinterpret_cast<const uint8_t*>(bytes.data()), bytes.size()));
}

std::string WritePosteriors(const PosteriorMatrix& matrix) {
  std::string out;
  out.reserve(PosteriorMatrix::kHeaderBytes + 4 * matrix.values().size());
  out.append(kMagic, 4);
  StoreLe<uint16_t>(PosteriorMatrix::kVersion, &out);
  StoreLe<uint16_t>(matrix.normalized() ? PosteriorMatrix::kFlagNormalized : 0,
                    &out);
  StoreLe<uint32_t>(static_cast<uint32_t>(matrix.num_frames()), &out);
  StoreLe<uint32_t>(static_cast<uint32_t>(matrix.num_units()), &out);
  for (float v : matrix.values()) StoreLe(std::bit_cast<uint32_t>(v), &out);
  return out;
}

PosteriorMatrix ReadPosteriorsFile(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::kFileMissing, "cannot open " + path);
  std::string bytes((std::istreambuf_iterator<char>(in)),
                    std::istreambuf_iterator<char>());
  return ReadPosteriors(std::string_view(bytes));
}

void WritePosteriorsFile(const PosteriorMatrix& matrix, const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(ErrorCode::kIoError, "cannot write " + path);
  const std::string bytes = WritePosteriors(matrix);
  out.write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
  if (!out) throw Error(ErrorCode::kIoError, "short write to " + path);
}

}  // namespace labelcheck
