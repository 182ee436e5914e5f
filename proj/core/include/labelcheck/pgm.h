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

#ifndef LABELCHECK_PGM_H_
#define LABELCHECK_PGM_H_

#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "labelcheck/subtitle_boundary.h"

namespace labelcheck {

// Binary (P5) PGM with maxval <= 255; values are rescaled to [0, 255].
// Throws Error(kBadImage) on malformed input.
FrameRegion ParsePgm(std::string_view bytes);
FrameRegion ReadPgmFile(const std::string& path);
std::string EncodePgm(const FrameRegion& region);

struct IndexedFrame {
  long index = 0;
  FrameRegion region;
};

// Loads every "<digits>.pgm" file of a directory, ordered by the numeric
// stem. Throws Error(kFileMissing) if the directory does not exist and
// Error(kInvalidArgument) if two files share an index.
std::vector<IndexedFrame> LoadFrameDirectory(const std::string& dir);

}  // namespace labelcheck

#endif  // LABELCHECK_PGM_H_
