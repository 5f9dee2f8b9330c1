// Copyright 2026 The qnn-lens Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <cstdint>
#include <string>

#include "train.hpp"

namespace qnn_lens {

enum class DatasetKind { Circles, Blobs };

const char *dataset_kind_name(DatasetKind kind);
DatasetKind dataset_kind_from_name(const std::string &name);

struct DatasetSpec {
    DatasetKind kind = DatasetKind::Blobs;
    int num_points = 80;
    double noise = 0.1;
    std::uint64_t seed = 42;

    bool operator==(const DatasetSpec &) const = default;
};

/// Ring radii before normalization: class A outer, class B inner.
inline constexpr double kOuterRadius = 1.0;
inline constexpr double kInnerRadius = 0.5;

/// Blob centers: class A at (-c, -c), class B at (c, c).
inline constexpr double kBlobCenter = 0.5;

/// circles: evenly spaced angles per ring, Gaussian noise, then per-axis
/// min-max scaling onto [-1, 1]. blobs: Gaussian clusters clipped to
/// [-1, 1]. Class A points come first; ids are "data_<k>".
LabeledDataset generate_dataset(const DatasetSpec &spec);

}  // namespace qnn_lens
