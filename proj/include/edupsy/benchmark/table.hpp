// Copyright 2026 The edupsy Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <map>
#include <string>
#include <vector>

#include "edupsy/benchmark/harness.hpp"

namespace edupsy::benchmark {

/// Column order for each level's table.
const std::vector<std::string>& canonical_subjects(Level level);

/// One table row: a named run and its accuracy per subject, in tenths.
struct TableRow {
  std::string name;
  std::map<std::string, std::int64_t> tenths;
};

TableRow row_from_reports(const std::string& name, const std::vector<SubjectReport>& reports,
                          Level level);

struct RenderedTable {
  std::string text;  // aligned, pipe separated
  std::string csv;
};

/// Canonical subjects first, then any other subject present, alphabetically.
/// Missing cells render "-" (empty in CSV). Throws Error(validation) when no
/// row has a subject.
RenderedTable format_table(const std::vector<TableRow>& rows, Level level);

/// Subjects whose accuracy is below `floor_tenths`.
std::vector<SubjectReport> below_floor(const std::vector<SubjectReport>& reports,
                                       std::int64_t floor_tenths);

}  // namespace edupsy::benchmark
