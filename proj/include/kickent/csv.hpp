// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <filesystem>
#include <iosfwd>
#include <string>

#include "kickent/experiments.hpp"

namespace kickent {

inline constexpr const char* kCsvHeader = "run_id,T,b,K1,K2,size,S_classical,S_quantum,raw_norm";

// One row per record, floats at 17 significant digits, absent values empty, LF endings.
void write_csv(std::ostream& out, const EntropySeries& series);
void emit_csv(const EntropySeries& series, const std::filesystem::path& path);

// Inverse of emit_csv. The run_id of the first row becomes the series run_id.
EntropySeries read_csv(std::istream& in);
EntropySeries read_csv(const std::filesystem::path& path);

}  // namespace kickent
