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

#include <cmath>
#include <limits>
#include <set>

#include "errors.hpp"
#include "json.hpp"

namespace qnn_lens {

using nlohmann::json;

std::vector<int> default_sampled_epochs(int epochs) {
    std::vector<int> out;
    if (epochs <= 100) {
        for (int e = 0; e <= epochs; ++e) {
            out.push_back(e);
        }
        return out;
    }
    const int stride = (epochs + 99) / 100;
    for (int e = 0; e <= epochs; e += stride) {
        out.push_back(e);
    }
    if (out.back() != epochs) {
        out.push_back(epochs);
    }
    return out;
}

// ---------------------------------------------------------------------------
// Writing

void write_circuit(JsonWriter &w, const CircuitSpec &circuit) {
    w.begin_object();
    w.field("num_qubits", circuit.num_qubits());
    w.field("feature_dim", circuit.feature_dim());
    w.field("layers", circuit.layers());
    w.field("measured_qubit", circuit.measured_qubit());
    w.field("num_parameters", circuit.num_parameters());
    w.key("steps").begin_array();
    for (std::size_t s = 0; s < circuit.steps().size(); ++s) {
        const Step &step = circuit.steps()[s];
        w.begin_object();
        w.field("index", static_cast<int>(s));
        w.field("kind", step_kind_name(step.kind));
        w.key("gates").begin_array();
        for (const CircuitGate &g : step.gates) {
            w.begin_object();
            w.field("gate", gate_type_name(g.type));
            if (g.type == GateType::CNOT) {
                w.field("control", g.control);
            }
            w.field("target", g.target);
            if (g.source == AngleSource::Feature) {
                w.field("feature", g.index);
            } else if (g.source == AngleSource::Parameter) {
                w.field("param", g.index);
            }
            w.end_object();
        }
        w.end_array();
        w.end_object();
    }
    w.end_array();
    w.end_object();
}

namespace {

void write_basis_list(JsonWriter &w, const std::vector<BasisProbability> &entries) {
    w.begin_array();
    for (const auto &e : entries) {
        w.begin_array().value(e.label).value(e.probability).end_array();
    }
    w.end_array();
}

}  // namespace

void write_decomposition(JsonWriter &w, const StateDecomposition &d, int step) {
    w.begin_object();
    w.field("step", step);
    w.field("num_qubits", d.num_qubits);
    w.key("basis");
    write_basis_list(w, d.basis);
    w.key("marginals").begin_array();
    for (const Marginal &m : d.marginals) {
        w.begin_object();
        w.field("qubit", m.qubit);
        w.field("value", m.value);
        w.field("total", m.total);
        w.key("contributions");
        write_basis_list(w, m.contributions);
        w.end_object();
    }
    w.end_array();
    if (d.amplitudes) {
        w.key("amplitudes").begin_array();
        for (const Amplitude &a : *d.amplitudes) {
            w.begin_array().value(a.real()).value(a.imag()).end_array();
        }
        w.end_array();
    }
    w.end_object();
}

void write_grid_cell(JsonWriter &w, const FeatureGridCell &cell) {
    w.begin_object();
    w.field("i", cell.i);
    w.field("j", cell.j);
    w.key("center").begin_array().value(cell.center[0]).value(cell.center[1]).end_array();
    w.field("expectation", cell.expectation);
    w.field("predicted_class", class_label_name(cell.predicted_class));
    w.field("confidence", cell.confidence());
    w.field("p0", cell.p0);
    w.field("p1", cell.p1);
    w.key("basis");
    write_basis_list(w, cell.basis);
    w.end_object();
}

void write_summary(JsonWriter &w, const RunSummary &summary) {
    w.begin_object();
    w.field("run_id", summary.run_id);
    w.field("created_at", summary.created_at);
    w.field("dataset", summary.dataset_kind);
    w.field("qubits", summary.num_qubits);
    w.field("epochs", summary.epochs);
    w.field("final_accuracy", summary.final_accuracy);
    w.end_object();
}

std::string serialize_meta(const RunMeta &meta) {
    JsonWriter w;
    w.begin_object();
    w.field("schema_version", kSchemaVersion);
    w.field("run_id", meta.run_id);
    w.field("created_at", meta.created_at);
    w.field("basis_label_order", "qubit0_first");
    w.key("circuit");
    write_circuit(w, meta.circuit);
    w.key("dataset").begin_object();
    w.field("kind", meta.dataset.kind);
    w.key("generator");
    if (meta.generator) {
        w.begin_object();
        w.field("kind", dataset_kind_name(meta.generator->kind));
        w.field("num_points", meta.generator->num_points);
        w.field("noise", meta.generator->noise);
        w.field("seed", meta.generator->seed);
        w.end_object();
    } else {
        w.null();
    }
    w.key("points").begin_array();
    for (const DataPoint &p : meta.dataset.points) {
        w.begin_object();
        w.field("id", p.id);
        w.key("features").begin_array();
        for (double x : p.features) {
            w.value(x);
        }
        w.end_array();
        w.field("label", class_label_name(p.label));
        w.end_object();
    }
    w.end_array();
    w.end_object();
    w.key("config").begin_object();
    w.field("epochs", meta.config.epochs);
    w.field("learning_rate", meta.config.learning_rate);
    w.field("seed", meta.config.seed);
    w.field("optimizer", optimizer_name(meta.config.optimizer));
    w.end_object();
    w.key("sampled_epochs").begin_array();
    for (int e : meta.sampled_epochs) {
        w.value(e);
    }
    w.end_array();
    w.end_object();
    return w.take();
}

std::string serialize_snapshots(const std::string &run_id, const std::vector<TrainingSnapshot> &snapshots) {
    JsonWriter w;
    w.begin_object();
    w.field("schema_version", kSchemaVersion);
    w.field("run_id", run_id);
    w.key("snapshots").begin_array();
    for (const TrainingSnapshot &s : snapshots) {
        w.begin_object();
        w.field("epoch", s.epoch);
        w.key("thetas").begin_array();
        for (double t : s.thetas) {
            w.value(t);
        }
        w.end_array();
        w.field("loss", s.loss);
        w.field("accuracy", s.accuracy);
        w.end_object();
    }
    w.end_array();
    w.end_object();
    return w.take();
}

std::string serialize_epoch_trace(const EpochTrace &trace) {
    JsonWriter w;
    w.begin_object();
    w.field("schema_version", kSchemaVersion);
    w.field("epoch", trace.epoch);
    w.key("datapoints").begin_array();
    for (const DatapointTrace &dp : trace.datapoints) {
        w.begin_object();
        w.field("id", dp.id);
        w.key("states").begin_array();
        for (std::size_t s = 0; s < dp.states.size(); ++s) {
            write_decomposition(w, dp.states[s], static_cast<int>(s));
        }
        w.end_array();
        w.end_object();
    }
    w.end_array();
    w.end_object();
    return w.take();
}

std::string serialize_epoch_grid(const EpochGrid &grid) {
    JsonWriter w;
    w.begin_object();
    w.field("schema_version", kSchemaVersion);
    w.field("epoch", grid.epoch);
    w.field("grid_size", kGridSize);
    w.key("cells").begin_array();
    for (const FeatureGridCell &c : grid.cells) {
        write_grid_cell(w, c);
    }
    w.end_array();
    w.end_object();
    return w.take();
}

std::string serialize_states(const std::vector<StateDecomposition> &states) {
    JsonWriter w;
    w.begin_array();
    for (std::size_t s = 0; s < states.size(); ++s) {
        write_decomposition(w, states[s], static_cast<int>(s));
    }
    w.end_array();
    return w.take();
}

std::string serialize_cells(const std::vector<FeatureGridCell> &cells) {
    JsonWriter w;
    w.begin_array();
    for (const FeatureGridCell &c : cells) {
        write_grid_cell(w, c);
    }
    w.end_array();
    return w.take();
}

// ---------------------------------------------------------------------------
// Reading

namespace {

/// A JSON value plus a link to its parent, so every schema error can name
/// the field it tripped on. The path string is only built on failure; a
/// child must not outlive its parent.
class Node {
  public:
    Node(const json &value, const std::string &source) : value_(&value), source_(&source) {}

    [[noreturn]] void fail(const std::string &what) const {
        throw SchemaError(*source_ + ": field '" + path() + "' " + what);
    }

    bool has(const char *name) const { return value_->is_object() && value_->contains(name); }

    Node operator[](const char *name) const {
        if (!value_->is_object()) {
            fail("is not an object");
        }
        auto it = value_->find(name);
        if (it == value_->end()) {
            throw SchemaError(*source_ + ": missing field '" + Node(*value_, this, name, 0).path() + "'");
        }
        return Node(*it, this, name, 0);
    }

    Node at(std::size_t index) const { return Node((*value_)[index], this, nullptr, index); }

    std::size_t size() const {
        if (!value_->is_array()) {
            fail("is not an array");
        }
        return value_->size();
    }

    bool is_null() const { return value_->is_null(); }

    double as_double() const {
        if (!value_->is_number()) {
            fail("is not a number");
        }
        const double v = value_->get<double>();
        if (!std::isfinite(v)) {
            fail("is not finite");
        }
        return v;
    }

    int as_int() const {
        if (!value_->is_number_integer()) {
            fail("is not an integer");
        }
        const auto v = value_->get<std::int64_t>();
        if (v < std::numeric_limits<int>::min() || v > std::numeric_limits<int>::max()) {
            fail("is out of range");
        }
        return static_cast<int>(v);
    }

    std::uint64_t as_uint64() const {
        if (!value_->is_number_unsigned() && !(value_->is_number_integer() && value_->get<std::int64_t>() >= 0)) {
            fail("is not an unsigned integer");
        }
        return value_->get<std::uint64_t>();
    }

    const std::string &as_string() const {
        if (!value_->is_string()) {
            fail("is not a string");
        }
        return value_->get_ref<const std::string &>();
    }

    template <typename F> auto convert(F &&f) const -> decltype(f(std::string())) {
        try {
            return f(as_string());
        } catch (const InvalidArgument &e) {
            fail(std::string("is invalid: ") + e.what());
        }
    }

    std::string path() const {
        if (!parent_) {
            return "";
        }
        std::string prefix = parent_->path();
        if (!name_) {
            return prefix + "[" + std::to_string(index_) + "]";
        }
        return prefix.empty() ? std::string(name_) : prefix + "." + name_;
    }

  private:
    Node(const json &value, const Node *parent, const char *name, std::size_t index)
        : value_(&value), source_(parent->source_), parent_(parent), name_(name), index_(index) {}

    const json *value_;
    const std::string *source_;
    const Node *parent_ = nullptr;
    const char *name_ = nullptr;
    std::size_t index_ = 0;
};

json parse_document(std::string_view text, const std::string &source) {
    json doc = json::parse(text.begin(), text.end(), nullptr, false);
    if (doc.is_discarded()) {
        throw SchemaError(source + ": not valid JSON");
    }
    if (!doc.is_object()) {
        throw SchemaError(source + ": top level is not an object");
    }
    Node root(doc, source);
    if (root["schema_version"].as_int() != kSchemaVersion) {
        root["schema_version"].fail("has unsupported value");
    }
    return doc;
}

CircuitSpec parse_circuit(const Node &n) {
    std::vector<Step> steps;
    const Node steps_node = n["steps"];
    for (std::size_t s = 0; s < steps_node.size(); ++s) {
        const Node step_node = steps_node.at(s);
        if (step_node["index"].as_int() != static_cast<int>(s)) {
            step_node["index"].fail("does not match its position");
        }
        Step step;
        step.kind = step_node["kind"].convert(step_kind_from_name);
        const Node gates = step_node["gates"];
        for (std::size_t g = 0; g < gates.size(); ++g) {
            const Node gn = gates.at(g);
            CircuitGate gate;
            gate.type = gn["gate"].convert(gate_type_from_name);
            if (gate.type == GateType::CNOT) {
                gate.control = gn["control"].as_int();
            }
            gate.target = gn["target"].as_int();
            if (gn.has("feature")) {
                gate.source = AngleSource::Feature;
                gate.index = gn["feature"].as_int();
            } else if (gn.has("param")) {
                gate.source = AngleSource::Parameter;
                gate.index = gn["param"].as_int();
            }
            step.gates.push_back(gate);
        }
        steps.push_back(std::move(step));
    }
    try {
        CircuitSpec spec = CircuitSpec::from_parts(n["num_qubits"].as_int(), n["feature_dim"].as_int(),
                                                   n["layers"].as_int(), n["measured_qubit"].as_int(),
                                                   std::move(steps));
        if (n["num_parameters"].as_int() != spec.num_parameters()) {
            n["num_parameters"].fail("disagrees with the circuit layout");
        }
        return spec;
    } catch (const InvalidArgument &e) {
        n.fail(std::string("is not a valid circuit: ") + e.what());
    }
}

std::vector<BasisProbability> parse_basis_list(const Node &n) {
    std::vector<BasisProbability> out;
    out.reserve(n.size());
    for (std::size_t k = 0; k < n.size(); ++k) {
        const Node pair = n.at(k);
        if (pair.size() != 2) {
            pair.fail("must be a [label, probability] pair");
        }
        out.push_back({pair.at(0).as_string(), pair.at(1).as_double()});
    }
    return out;
}

StateDecomposition parse_decomposition(const Node &n, int expected_step) {
    if (n["step"].as_int() != expected_step) {
        n["step"].fail("does not match its position");
    }
    StateDecomposition d;
    d.num_qubits = n["num_qubits"].as_int();
    d.basis = parse_basis_list(n["basis"]);
    const Node marginals = n["marginals"];
    for (std::size_t k = 0; k < marginals.size(); ++k) {
        const Node m = marginals.at(k);
        d.marginals.push_back(
            {m["qubit"].as_int(), m["value"].as_int(), m["total"].as_double(), parse_basis_list(m["contributions"])});
    }
    if (n.has("amplitudes")) {
        const Node amps = n["amplitudes"];
        std::vector<Amplitude> values;
        for (std::size_t k = 0; k < amps.size(); ++k) {
            const Node pair = amps.at(k);
            if (pair.size() != 2) {
                pair.fail("must be a [re, im] pair");
            }
            values.emplace_back(pair.at(0).as_double(), pair.at(1).as_double());
        }
        d.amplitudes = std::move(values);
    }
    try {
        validate_decomposition(d, "decomposition");
    } catch (const SchemaError &e) {
        n.fail(std::string("is inconsistent (") + e.what() + ")");
    }
    return d;
}

FeatureGridCell parse_grid_cell(const Node &n) {
    FeatureGridCell c;
    c.i = n["i"].as_int();
    c.j = n["j"].as_int();
    const Node center = n["center"];
    if (center.size() != 2) {
        center.fail("must hold two coordinates");
    }
    c.center = {center.at(0).as_double(), center.at(1).as_double()};
    c.expectation = n["expectation"].as_double();
    c.predicted_class = n["predicted_class"].convert(class_label_from_name);
    if (n["confidence"].as_double() != c.confidence()) {
        n["confidence"].fail("is not |expectation|");
    }
    c.p0 = n["p0"].as_double();
    c.p1 = n["p1"].as_double();
    c.basis = parse_basis_list(n["basis"]);
    try {
        validate_grid_cell(c, "grid cell");
    } catch (const SchemaError &e) {
        n.fail(std::string("is inconsistent (") + e.what() + ")");
    }
    return c;
}

}  // namespace

RunMeta parse_meta(std::string_view text, const std::string &source) {
    const json doc = parse_document(text, source);
    const Node root(doc, source);

    const Node dataset = root["dataset"];
    LabeledDataset data;
    data.kind = dataset["kind"].as_string();
    std::optional<DatasetSpec> generator;
    if (!dataset["generator"].is_null()) {
        const Node g = dataset["generator"];
        generator = DatasetSpec{g["kind"].convert(dataset_kind_from_name), g["num_points"].as_int(),
                                g["noise"].as_double(), g["seed"].as_uint64()};
    }
    const Node points = dataset["points"];
    for (std::size_t k = 0; k < points.size(); ++k) {
        const Node p = points.at(k);
        DataPoint point;
        point.id = p["id"].as_string();
        const Node features = p["features"];
        for (std::size_t f = 0; f < features.size(); ++f) {
            point.features.push_back(features.at(f).as_double());
        }
        point.label = p["label"].convert(class_label_from_name);
        data.points.push_back(std::move(point));
    }
    try {
        validate_dataset(data);
    } catch (const InvalidArgument &e) {
        points.fail(std::string("is invalid: ") + e.what());
    }

    const Node config = root["config"];
    TrainConfig cfg{config["epochs"].as_int(), config["learning_rate"].as_double(), config["seed"].as_uint64(),
                    config["optimizer"].convert(optimizer_from_name)};

    std::vector<int> sampled;
    const Node sampled_node = root["sampled_epochs"];
    for (std::size_t k = 0; k < sampled_node.size(); ++k) {
        sampled.push_back(sampled_node.at(k).as_int());
        if (sampled.back() < 0 || sampled.back() > cfg.epochs || (k > 0 && sampled.back() <= sampled[k - 1])) {
            sampled_node.at(k).fail("is not an increasing epoch within the run");
        }
    }
    if (root["basis_label_order"].as_string() != "qubit0_first") {
        root["basis_label_order"].fail("has unsupported value");
    }

    return RunMeta{root["run_id"].as_string(), root["created_at"].as_string(), parse_circuit(root["circuit"]),
                   std::move(data), generator, cfg, std::move(sampled)};
}

std::vector<TrainingSnapshot> parse_snapshots(std::string_view text, const std::string &source) {
    const json doc = parse_document(text, source);
    const Node root(doc, source);
    root["run_id"].as_string();
    const Node list = root["snapshots"];
    std::vector<TrainingSnapshot> out;
    out.reserve(list.size());
    for (std::size_t k = 0; k < list.size(); ++k) {
        const Node s = list.at(k);
        TrainingSnapshot snap;
        snap.epoch = s["epoch"].as_int();
        if (snap.epoch != static_cast<int>(k)) {
            s["epoch"].fail("breaks the contiguous epoch sequence");
        }
        const Node thetas = s["thetas"];
        for (std::size_t j = 0; j < thetas.size(); ++j) {
            snap.thetas.push_back(thetas.at(j).as_double());
        }
        snap.loss = s["loss"].as_double();
        snap.accuracy = s["accuracy"].as_double();
        if (snap.loss < 0.0) {
            s["loss"].fail("is negative");
        }
        if (snap.accuracy < 0.0 || snap.accuracy > 1.0) {
            s["accuracy"].fail("is outside [0, 1]");
        }
        out.push_back(std::move(snap));
    }
    if (out.empty()) {
        list.fail("is empty");
    }
    return out;
}

namespace {

DatapointTrace parse_datapoint(const Node &dp) {
    DatapointTrace t;
    t.id = dp["id"].as_string();
    const Node states = dp["states"];
    t.states.reserve(states.size());
    for (std::size_t s = 0; s < states.size(); ++s) {
        t.states.push_back(parse_decomposition(states.at(s), static_cast<int>(s)));
    }
    return t;
}

}  // namespace

EpochTrace parse_epoch_trace(std::string_view text, const std::string &source) {
    const json doc = parse_document(text, source);
    const Node root(doc, source);
    EpochTrace trace;
    trace.epoch = root["epoch"].as_int();
    const Node list = root["datapoints"];
    trace.datapoints.reserve(list.size());
    for (std::size_t k = 0; k < list.size(); ++k) {
        trace.datapoints.push_back(parse_datapoint(list.at(k)));
    }
    return trace;
}

namespace {

// Index one past the value that opens at text[begin] ('{' or '['), or npos.
std::size_t skip_value(std::string_view text, std::size_t begin) {
    int depth = 0;
    bool in_string = false;
    for (std::size_t k = begin; k < text.size(); ++k) {
        const char c = text[k];
        if (in_string) {
            if (c == '\\') {
                ++k;
            } else if (c == '"') {
                in_string = false;
            }
        } else if (c == '"') {
            in_string = true;
        } else if (c == '{' || c == '[') {
            ++depth;
        } else if ((c == '}' || c == ']') && --depth == 0) {
            return k + 1;
        }
    }
    return std::string_view::npos;
}

std::optional<DatapointTrace> parse_datapoint_slow(std::string_view text, const std::string &source, int epoch,
                                                   const std::string &datapoint_id) {
    const json doc = parse_document(text, source);
    const Node root(doc, source);
    if (root["epoch"].as_int() != epoch) {
        root["epoch"].fail("does not match the requested epoch");
    }
    const Node list = root["datapoints"];
    for (std::size_t k = 0; k < list.size(); ++k) {
        const Node dp = list.at(k);
        if (dp["id"].as_string() == datapoint_id) {
            return parse_datapoint(dp);
        }
    }
    return std::nullopt;
}

}  // namespace

std::optional<DatapointTrace> parse_datapoint_trace(std::string_view text, const std::string &source, int epoch,
                                                    const std::string &datapoint_id) {
    // Canonical files let us convert just the requested entry. Anything
    // unexpected goes through the full parser.
    constexpr std::string_view kList = "\"datapoints\":[";
    const std::size_t list = text.find(kList);
    std::string needle = "{\"id\":";
    append_escaped(needle, datapoint_id);
    needle += ",\"states\":";
    const std::size_t begin = list == std::string_view::npos ? list : text.find(needle, list);
    const std::size_t end = begin == std::string_view::npos ? begin : skip_value(text, begin);
    if (end == std::string_view::npos || !json::accept(text.begin(), text.end())) {
        return parse_datapoint_slow(text, source, epoch, datapoint_id);
    }

    std::string header(text.substr(0, list + kList.size()));
    header += "]}";
    const json head = parse_document(header, source);
    const Node root(head, source);
    if (root["epoch"].as_int() != epoch) {
        root["epoch"].fail("does not match the requested epoch");
    }
    const json entry = json::parse(text.begin() + static_cast<std::ptrdiff_t>(begin),
                                   text.begin() + static_cast<std::ptrdiff_t>(end));
    const std::string entry_source = source + ": datapoint '" + datapoint_id + "'";
    return parse_datapoint(Node(entry, entry_source));
}

EpochGrid parse_epoch_grid(std::string_view text, const std::string &source) {
    const json doc = parse_document(text, source);
    const Node root(doc, source);
    EpochGrid grid;
    grid.epoch = root["epoch"].as_int();
    if (root["grid_size"].as_int() != kGridSize) {
        root["grid_size"].fail("is not " + std::to_string(kGridSize));
    }
    const Node cells = root["cells"];
    if (cells.size() != static_cast<std::size_t>(kGridSize * kGridSize)) {
        cells.fail("must hold " + std::to_string(kGridSize * kGridSize) + " cells");
    }
    grid.cells.reserve(cells.size());
    for (std::size_t k = 0; k < cells.size(); ++k) {
        grid.cells.push_back(parse_grid_cell(cells.at(k)));
    }
    return grid;
}

RunSummary summarize(const RunMeta &meta, const std::vector<TrainingSnapshot> &snapshots) {
    return {meta.run_id,
            meta.created_at,
            meta.dataset.kind,
            meta.circuit.num_qubits(),
            meta.config.epochs,
            snapshots.empty() ? 0.0 : snapshots.back().accuracy};
}

}  // namespace qnn_lens
