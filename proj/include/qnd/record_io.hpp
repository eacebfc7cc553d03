// Copyright 2026 The qndsim Authors
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
#include <iosfwd>
#include <span>
#include <vector>

#include "qnd/record.hpp"

namespace qnd {

// NDJSON: one record per line,
//   {"seed": <master seed>, "stream": <stream id>, "dt": <s>, "samples": [...]}
// Ground-truth labels are not exported.
void write_records_ndjson(std::ostream& os, std::span<const Record> records);
std::vector<Record> read_records_ndjson(std::istream& is);

// Packed binary: a sequence of blocks, each
//   magic   4 bytes  "QNDR"
//   version u32 LE   1
//   dt      f64 LE   sample period in seconds
//   count   u64 LE   number of samples
//   samples count x f64 LE
inline constexpr std::uint32_t kRecordFormatVersion = 1;

void write_records_binary(std::ostream& os, std::span<const Record> records);
std::vector<Record> read_records_binary(std::istream& is);

}  // namespace qnd
