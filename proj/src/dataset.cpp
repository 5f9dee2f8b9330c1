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

#include "dataset.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <numbers>
#include <optional>
#include <random>

#include "errors.hpp"

namespace qnn_lens {

const char *dataset_kind_name(DatasetKind kind) { return kind == DatasetKind::Circles ? "circles" : "blobs"; }

DatasetKind dataset_kind_from_name(const std::string &name) {
    if (name == "circles") {
        return DatasetKind::Circles;
    }
    if (name == "blobs") {
        return DatasetKind::Blobs;
    }
    throw InvalidArgument("unknown dataset kind '" + name + "'");
}

namespace {

// Platform-independent draws on top of mt19937_64.
class Sampler {
  public:
    explicit Sampler(std::uint64_t seed) : rng_(seed) {}

    double uniform() { return static_cast<double>(rng_() >> 11) * 0x1.0p-53; }

    // Box-Muller; both variates are used.
    double gaussian() {
        if (spare_) {
            const double v = *spare_;
            spare_.reset();
            return v;
        }
        const double u1 = 1.0 - uniform();
        const double u2 = uniform();
        const double r = std::sqrt(-2.0 * std::log(u1));
        const double phi = 2 * std::numbers::pi * u2;
        spare_ = r * std::sin(phi);
        return r * std::cos(phi);
    }

  private:
    std::mt19937_64 rng_;
    std::optional<double> spare_;
};

std::string point_id(std::size_t k) { return "data_" + std::to_string(k); }

LabeledDataset make_circles(const DatasetSpec &spec, Sampler &sampler) {
    const int per_class = spec.num_points / 2;
    std::vector<std::array<double, 2>> xy;
    std::vector<ClassLabel> labels;
    for (ClassLabel label : {ClassLabel::A, ClassLabel::B}) {
        const double radius = label == ClassLabel::A ? kOuterRadius : kInnerRadius;
        for (int k = 0; k < per_class; ++k) {
            const double angle = 2 * std::numbers::pi * k / per_class;
            xy.push_back({radius * std::cos(angle), radius * std::sin(angle)});
            labels.push_back(label);
        }
    }
    if (spec.noise > 0.0) {
        for (auto &p : xy) {
            p[0] += spec.noise * sampler.gaussian();
            p[1] += spec.noise * sampler.gaussian();
        }
    }
    for (int axis = 0; axis < 2; ++axis) {
        auto [lo, hi] = std::minmax_element(xy.begin(), xy.end(),
                                            [axis](const auto &a, const auto &b) { return a[axis] < b[axis]; });
        const double min = (*lo)[axis];
        const double span = (*hi)[axis] - min;
        for (auto &p : xy) {
            const double scaled = span > 0.0 ? 2.0 * (p[axis] - min) / span - 1.0 : 0.0;
            p[axis] = std::clamp(scaled, -1.0, 1.0);
        }
    }
    LabeledDataset out{"circles", {}};
    for (std::size_t k = 0; k < xy.size(); ++k) {
        out.points.push_back({point_id(k), {xy[k][0], xy[k][1]}, labels[k]});
    }
    return out;
}

LabeledDataset make_blobs(const DatasetSpec &spec, Sampler &sampler) {
    const int per_class = spec.num_points / 2;
    LabeledDataset out{"blobs", {}};
    std::size_t k = 0;
    for (ClassLabel label : {ClassLabel::A, ClassLabel::B}) {
        const double c = label == ClassLabel::A ? -kBlobCenter : kBlobCenter;
        for (int n = 0; n < per_class; ++n) {
            const double x = std::clamp(c + spec.noise * sampler.gaussian(), -1.0, 1.0);
            const double y = std::clamp(c + spec.noise * sampler.gaussian(), -1.0, 1.0);
            out.points.push_back({point_id(k++), {x, y}, label});
        }
    }
    return out;
}

}  // namespace

LabeledDataset generate_dataset(const DatasetSpec &spec) {
    if (spec.num_points < 4 || spec.num_points % 2 != 0) {
        throw InvalidArgument("num_points must be an even number >= 4, got " + std::to_string(spec.num_points));
    }
    if (!(spec.noise >= 0.0) || !std::isfinite(spec.noise)) {
        throw InvalidArgument("noise must be a finite number >= 0");
    }
    Sampler sampler(spec.seed);
    return spec.kind == DatasetKind::Circles ? make_circles(spec, sampler) : make_blobs(spec, sampler);
}

}  // namespace qnn_lens
