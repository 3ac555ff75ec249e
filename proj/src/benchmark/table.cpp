// Copyright 2026 The edupsy Authors
// SPDX-License-Identifier: Apache-2.0

#include "edupsy/benchmark/table.hpp"

#include <algorithm>
#include <set>

#include "edupsy/core/errors.hpp"
#include "edupsy/core/text.hpp"

namespace edupsy::benchmark {
namespace {

std::string pad(const std::string& s, std::size_t width) {
  const std::size_t n = text::char_length(s);
  return n >= width ? s : s + std::string(width - n, ' ');
}

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

}  // namespace

const std::vector<std::string>& canonical_subjects(Level level) {
  static const std::vector<std::string> primary = {"Chinese", "Mathematics", "English", "Science",
                                                   "Ethics"};
  static const std::vector<std::string> secondary = {"Chinese",   "Mathematics", "English",
                                                     "Physics",   "Chemistry",   "Biology",
                                                     "Politics",  "History",     "Geography"};
  return level == Level::primary ? primary : secondary;
}

TableRow row_from_reports(const std::string& name, const std::vector<SubjectReport>& reports,
                          Level level) {
  TableRow row{name, {}};
  for (const auto& r : reports) {
    if (r.level == level) row.tenths[r.subject] = r.tenths;
  }
  return row;
}

RenderedTable format_table(const std::vector<TableRow>& rows, Level level) {
  std::set<std::string> present;
  for (const auto& row : rows) {
    for (const auto& [subject, v] : row.tenths) present.insert(subject);
  }
  if (present.empty()) {
    throw Error(ErrorKind::validation,
                "no subjects to tabulate for level " + std::string(to_string(level)));
  }
  std::vector<std::string> columns;
  for (const auto& s : canonical_subjects(level)) {
    if (present.count(s)) columns.push_back(s);
  }
  for (const auto& s : present) {
    if (std::find(columns.begin(), columns.end(), s) == columns.end()) columns.push_back(s);
  }

  std::vector<std::vector<std::string>> cells;
  cells.push_back({"Model"});
  cells.back().insert(cells.back().end(), columns.begin(), columns.end());
  for (const auto& row : rows) {
    std::vector<std::string> line{row.name};
    for (const auto& c : columns) {
      const auto it = row.tenths.find(c);
      line.push_back(it == row.tenths.end() ? "-" : format_tenths(it->second));
    }
    cells.push_back(std::move(line));
  }
  std::vector<std::size_t> widths(columns.size() + 1, 0);
  for (const auto& line : cells) {
    for (std::size_t i = 0; i < line.size(); ++i) widths[i] = std::max(widths[i], text::char_length(line[i]));
  }

  RenderedTable out;
  for (std::size_t r = 0; r < cells.size(); ++r) {
    std::string text_line = "|";
    std::string csv_line;
    for (std::size_t i = 0; i < cells[r].size(); ++i) {
      text_line += " " + pad(cells[r][i], widths[i]) + " |";
      if (i) csv_line += ',';
      csv_line += cells[r][i] == "-" && r > 0 ? "" : csv_field(cells[r][i]);
    }
    out.text += text_line + "\n";
    out.csv += csv_line + "\n";
    if (r == 0) {
      std::string rule = "|";
      for (std::size_t w : widths) rule += std::string(w + 2, '-') + "|";
      out.text += rule + "\n";
    }
  }
  return out;
}

std::vector<SubjectReport> below_floor(const std::vector<SubjectReport>& reports,
                                       std::int64_t floor_tenths) {
  std::vector<SubjectReport> out;
  for (const auto& r : reports) {
    if (r.tenths < floor_tenths) out.push_back(r);
  }
  return out;
}

}  // namespace edupsy::benchmark
