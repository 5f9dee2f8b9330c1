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

#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>

#include "errors.hpp"

using namespace qnn_lens;

TEST(Dataset, NoiselessCirclesSitOnRings) {
    const LabeledDataset d = generate_dataset({DatasetKind::Circles, 8, 0.0, 1});
    ASSERT_EQ(d.points.size(), 8u);
    EXPECT_EQ(d.kind, "circles");
    // Outer ring spans [-1, 1] after scaling, so radii come out unchanged.
    int outer = 0, inner = 0;
    for (const DataPoint &p : d.points) {
        const double r = std::hypot(p.features[0], p.features[1]);
        if (p.label == ClassLabel::A) {
            EXPECT_NEAR(r, kOuterRadius, 1e-12);
            ++outer;
        } else {
            EXPECT_NEAR(r, kInnerRadius, 1e-12);
            ++inner;
        }
    }
    EXPECT_EQ(outer, 4);
    EXPECT_EQ(inner, 4);
}

TEST(Dataset, Deterministic) {
    for (DatasetKind kind : {DatasetKind::Circles, DatasetKind::Blobs}) {
        const DatasetSpec spec{kind, 40, 0.2, 17};
        EXPECT_EQ(generate_dataset(spec), generate_dataset(spec));
        EXPECT_NE(generate_dataset(spec), generate_dataset({kind, 40, 0.2, 18}));
    }
}

TEST(Dataset, Layout) {
    for (DatasetKind kind : {DatasetKind::Circles, DatasetKind::Blobs}) {
        const LabeledDataset d = generate_dataset({kind, 80, 0.3, 42});
        ASSERT_EQ(d.points.size(), 80u);
        EXPECT_NO_THROW(validate_dataset(d));
        for (std::size_t k = 0; k < d.points.size(); ++k) {
            EXPECT_EQ(d.points[k].id, "data_" + std::to_string(k));
            EXPECT_EQ(d.points[k].label, k < 40 ? ClassLabel::A : ClassLabel::B);
            ASSERT_EQ(d.points[k].features.size(), 2u);
            for (double f : d.points[k].features) {
                EXPECT_GE(f, -1.0);
                EXPECT_LE(f, 1.0);
            }
        }
    }
}

TEST(Dataset, BlobsSeparate) {
    const LabeledDataset d = generate_dataset({DatasetKind::Blobs, 80, 0.1, 42});
    // The x + y = 0 diagonal splits the classes.
    double min_a = 1e9, max_b = -1e9;
    for (const DataPoint &p : d.points) {
        const double s = -(p.features[0] + p.features[1]);
        if (p.label == ClassLabel::A) {
            min_a = std::min(min_a, s);
        } else {
            max_b = std::max(max_b, s);
        }
    }
    EXPECT_GT(min_a, 0.0);
    EXPECT_LT(max_b, 0.0);
}

TEST(Dataset, RejectsBadSpec) {
    EXPECT_THROW(generate_dataset({DatasetKind::Blobs, 7, 0.1, 1}), InvalidArgument);
    EXPECT_THROW(generate_dataset({DatasetKind::Blobs, 2, 0.1, 1}), InvalidArgument);
    EXPECT_THROW(generate_dataset({DatasetKind::Circles, 8, -0.1, 1}), InvalidArgument);
    EXPECT_THROW(dataset_kind_from_name("moons"), InvalidArgument);
}
