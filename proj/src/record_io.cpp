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

#include "qnd/record_io.hpp"

#include <array>
#include <bit>
#include <istream>
#include <ostream>
#include <string>

#include <nlohmann/json.hpp>
#include "qnd/errors.hpp"

namespace qnd {

void write_records_ndjson(std::ostream& os, std::span<const Record> records) {
    for (const auto& r : records) {
        nlohmann::json line = {{"seed", r.seed.master_seed},
                               {"stream", r.seed.stream_id},
                               {"dt", r.dt},
                               {"samples", r.samples}};
        os << line.dump() << '\n';
    }
    if (!os) throw IoError("failed writing NDJSON records");
}

std::vector<Record> read_records_ndjson(std::istream& is) {
    std::vector<Record> out;
    std::string line;
    long line_no = 0;
    while (std::getline(is, line)) {
        ++line_no;
        if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
        try {
            const auto j = nlohmann::json::parse(line);
            Record r;
            r.seed.master_seed = j.value("seed", std::uint64_t{0});
            r.seed.stream_id = j.value("stream", std::uint64_t{0});
            r.dt = j.at("dt").get<double>();
            r.samples = j.at("samples").get<std::vector<double>>();
            r.truth.dt = r.dt;
            out.push_back(std::move(r));
        } catch (const nlohmann::json::exception& e) {
            throw ParseError("NDJSON line " + std::to_string(line_no) + ": " + e.what());
        }
    }
    return out;
}

namespace {

constexpr std::array<char, 4> kMagic{'Q', 'N', 'D', 'R'};

template <typename T>
void put_le(std::ostream& os, T value) {
    using U = std::conditional_t<sizeof(T) == 8, std::uint64_t, std::uint32_t>;
    const U bits = std::bit_cast<U>(value);
    std::array<char, sizeof(U)> bytes;
    for (std::size_t k = 0; k < sizeof(U); ++k) bytes[k] = static_cast<char>((bits >> (8 * k)) & 0xFF);
    os.write(bytes.data(), bytes.size());
}

template <typename T>
bool get_le(std::istream& is, T& value) {
    using U = std::conditional_t<sizeof(T) == 8, std::uint64_t, std::uint32_t>;
    std::array<unsigned char, sizeof(U)> bytes;
    if (!is.read(reinterpret_cast<char*>(bytes.data()), bytes.size())) return false;
    U bits = 0;
    for (std::size_t k = 0; k < sizeof(U); ++k) bits |= static_cast<U>(bytes[k]) << (8 * k);
    value = std::bit_cast<T>(bits);
    return true;
}

}  // namespace

void write_records_binary(std::ostream& os, std::span<const Record> records) {
    for (const auto& r : records) {
        os.write(kMagic.data(), kMagic.size());
        put_le(os, kRecordFormatVersion);
        put_le(os, r.dt);
        put_le(os, static_cast<std::uint64_t>(r.samples.size()));
        for (double v : r.samples) put_le(os, v);
    }
    if (!os) throw IoError("failed writing binary records");
}

std::vector<Record> read_records_binary(std::istream& is) {
    std::vector<Record> out;
    while (true) {
        std::array<char, 4> magic{};
        is.read(magic.data(), magic.size());
        if (is.gcount() == 0) break;
        if (is.gcount() != 4 || magic != kMagic) throw ParseError("binary records: bad magic");
        std::uint32_t version = 0;
        std::uint64_t count = 0;
        Record r;
        if (!get_le(is, version) || !get_le(is, r.dt) || !get_le(is, count))
            throw ParseError("binary records: truncated header");
        if (version != kRecordFormatVersion)
            throw ParseError("binary records: unsupported version " + std::to_string(version));
        r.samples.resize(count);
        for (auto& v : r.samples)
            if (!get_le(is, v)) throw ParseError("binary records: truncated samples");
        r.truth.dt = r.dt;
        out.push_back(std::move(r));
    }
    return out;
}

}  // namespace qnd
