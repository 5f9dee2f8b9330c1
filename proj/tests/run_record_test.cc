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


#include "run_record.hpp"

#include <gtest/gtest.h>

#include <fstream>

#include "errors.hpp"
#include "json_writer.hpp"
#include "store_fixture.hpp"

using namespace qnn_lens;
using qnn_lens::testing::SmallRun;
using qnn_lens::testing::TempDir;

namespace {

void overwrite(const std::filesystem::path &path, const std::string &text) {
    std::ofstream(path, std::ios::binary | std::ios::trunc) << text;
}

std::string replace_first(std::string text, const std::string &from, const std::string &to) {
    const auto pos = text.find(from);
    EXPECT_NE(pos, std::string::npos) << from;
    if (pos != std::string::npos) {
        text.replace(pos, from.size(), to);
    }
    return text;
}

}  // namespace

TEST(JsonWriter, NumberFormatting) {
    EXPECT_EQ(format_double(0.0), "0");
    EXPECT_EQ(format_double(-0.0), "0");
    EXPECT_EQ(format_double(1.0), "1");
    EXPECT_EQ(format_double(-2.5), "-2.5");
    EXPECT_EQ(format_double(0.1), "0.10000000000000001");
    EXPECT_EQ(format_double(1e-7), "9.9999999999999995e-08");
    EXPECT_EQ(format_double(1e-300), "1e-300");
    EXPECT_THROW(format_double(std::nan("")), InvalidArgument);
}

TEST(JsonWriter, Nesting) {
    JsonWriter w;
    w.begin_object();
    w.field("a", 1);
    w.key("b").begin_array().value("x\"y\n").null().value(true).end_array();
    w.key("c").begin_object().end_object();
    w.key("d").raw("[1,2]");
    w.end_object();
    EXPECT_EQ(w.str(), R"({"a":1,"b":["x\"y\n",null,true],"c":{},"d":[1,2]})");
}

TEST(RunRecord, SampledEpochs) {
    EXPECT_EQ(default_sampled_epochs(0), std::vector<int>{0});
    EXPECT_EQ(default_sampled_epochs(100).size(), 101u);
    const auto big = default_sampled_epochs(250);
    EXPECT_EQ(big.front(), 0);
    EXPECT_EQ(big[1], 3);
    EXPECT_EQ(big.back(), 250);
    EXPECT_EQ(big.size(), 85u);
    const auto even = default_sampled_epochs(1000);
    EXPECT_EQ(even.size(), 101u);
    EXPECT_EQ(even[1], 10);
}

TEST(RunRecord, FilesRoundTripByteForByte) {
    TempDir dir;
    RunStore store(dir.path());
    const RunSummary summary = SmallRun().record(store);
    const std::string &id = summary.run_id;

    const std::string meta = store.read_file(id, "meta.json");
    EXPECT_EQ(serialize_meta(parse_meta(meta, "meta.json")), meta);
    const std::string snaps = store.read_file(id, "snapshots.json");
    EXPECT_EQ(serialize_snapshots(id, parse_snapshots(snaps, "snapshots.json")), snaps);
    for (int e = 0; e <= 4; ++e) {
        const std::string trace = store.read_file(id, "traces/" + std::to_string(e) + ".json");
        EXPECT_EQ(serialize_epoch_trace(parse_epoch_trace(trace, "trace")), trace);
        const std::string grid = store.read_file(id, "grids/" + std::to_string(e) + ".json");
        EXPECT_EQ(serialize_epoch_grid(parse_epoch_grid(grid, "grid")), grid);
    }
}

TEST(RunRecord, SingleDatapointParseMatchesFullParse) {
    TempDir dir;
    RunStore store(dir.path());
    const std::string id = SmallRun().record(store).run_id;
    const std::string text = store.read_file(id, "traces/2.json");
    const EpochTrace full = parse_epoch_trace(text, "t");
    for (const DatapointTrace &dp : full.datapoints) {
        EXPECT_EQ(parse_datapoint_trace(text, "t", 2, dp.id), dp);
    }
    EXPECT_EQ(parse_datapoint_trace(text, "t", 2, "missing"), std::nullopt);
    EXPECT_THROW(parse_datapoint_trace(text, "t", 3, "data_0"), SchemaError);

    // Reformatted but equivalent JSON takes the general path.
    const std::string spaced = replace_first(text, "\"datapoints\":[", "\"datapoints\" : [");
    EXPECT_EQ(parse_datapoint_trace(spaced, "t", 2, "data_3"), full.datapoints[3]);
    // Damage outside the requested entry is still rejected.
    EXPECT_THROW(parse_datapoint_trace(text.substr(0, text.size() - 2), "t", 2, "data_0"), SchemaError);
}

TEST(RunRecord, SchemaErrors) {
    TempDir dir;
    RunStore store(dir.path());
    const std::string id = SmallRun().record(store).run_id;
    const std::string meta = store.read_file(id, "meta.json");

    EXPECT_THROW(parse_meta(replace_first(meta, "\"schema_version\":1,", ""), "m"), SchemaError);
    EXPECT_THROW(parse_meta(replace_first(meta, "\"schema_version\":1", "\"schema_version\":2"), "m"), SchemaError);
    EXPECT_THROW(parse_meta("{not json", "m"), SchemaError);
    EXPECT_THROW(parse_meta("[]", "m"), SchemaError);
    EXPECT_THROW(parse_meta(replace_first(meta, "\"num_qubits\":3", "\"num_qubits\":\"3\""), "m"), SchemaError);
    EXPECT_THROW(parse_meta(replace_first(meta, "\"kind\":\"rotation\"", "\"kind\":\"measure\""), "m"), SchemaError);

    try {
        parse_meta(replace_first(meta, "\"learning_rate\":", "\"lr\":"), "meta.json");
        FAIL();
    } catch (const SchemaError &e) {
        EXPECT_NE(std::string(e.what()).find("learning_rate"), std::string::npos) << e.what();
    }

    const std::string grid = store.read_file(id, "grids/0.json");
    EXPECT_THROW(parse_epoch_grid(replace_first(grid, "\"grid_size\":15", "\"grid_size\":14"), "g"), SchemaError);
    EXPECT_THROW(parse_epoch_grid(replace_first(grid, "\"predicted_class\":\"", "\"predicted_class\":\"X"), "g"),
                 SchemaError);
}

TEST(RunRecord, TamperedProbabilityIsRejected) {
    TempDir dir;
    RunStore store(dir.path());
    const std::string id = SmallRun().record(store).run_id;
    const std::string text = store.read_file(id, "traces/1.json");
    // The initial state of the first datapoint has P(000) = 1.
    const std::string bad = replace_first(text, "[\"000\",1]", "[\"000\",0.98]");
    EXPECT_THROW(parse_epoch_trace(bad, "t"), SchemaError);
    EXPECT_THROW(parse_datapoint_trace(bad, "t", 1, "data_0"), SchemaError);
}

TEST(RunRecord, Summary) {
    const SmallRun run;
    RunMeta meta{"id", "2026-01-01T00:00:00.000Z", run.circuit, run.dataset, run.generator, run.config, {0, 4}};
    const RunSummary s = summarize(meta, run.snapshots);
    EXPECT_EQ(s.run_id, "id");
    EXPECT_EQ(s.dataset_kind, "blobs");
    EXPECT_EQ(s.num_qubits, 3);
    EXPECT_EQ(s.epochs, 4);
    EXPECT_EQ(s.final_accuracy, run.snapshots.back().accuracy);
}
