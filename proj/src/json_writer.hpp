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
#include <string_view>
#include <vector>

namespace qnn_lens {

/// Locale-independent "%.17g". Zero of either sign is written as 0 so a
/// parse/print cycle is byte-stable.
std::string format_double(double value);

/// Compact streaming JSON emitter. Field order is whatever order the caller
/// writes, which is how the store keeps a canonical layout.
class JsonWriter {
  public:
    JsonWriter &begin_object();
    JsonWriter &end_object();
    JsonWriter &begin_array();
    JsonWriter &end_array();
    JsonWriter &key(std::string_view name);

    JsonWriter &value(double v);
    JsonWriter &value(int v) { return value(static_cast<std::int64_t>(v)); }
    JsonWriter &value(std::int64_t v);
    JsonWriter &value(std::uint64_t v);
    JsonWriter &value(bool v);
    JsonWriter &value(std::string_view v);
    JsonWriter &value(const char *v) { return value(std::string_view(v)); }
    JsonWriter &null();

    /// Splices an already-serialized JSON value.
    JsonWriter &raw(std::string_view json);

    template <typename T> JsonWriter &field(std::string_view name, const T &v) {
        key(name);
        return value(v);
    }

    const std::string &str() const noexcept { return out_; }
    std::string take() { return std::move(out_); }

  private:
    void separate();

    std::string out_;
    std::vector<bool> first_;
    bool after_key_ = false;
};

void append_escaped(std::string &out, std::string_view s);

}  // namespace qnn_lens
