// Copyright 2026 The edupsy Authors
// SPDX-License-Identifier: Apache-2.0

#include "edupsy/retrieval/document.hpp"

#include <fstream>
#include <nlohmann/json.hpp>
#include <unordered_set>

#include "edupsy/core/errors.hpp"
#include "edupsy/core/text.hpp"

namespace edupsy::retrieval {

std::vector<Document> load_corpus_jsonl(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorKind::io, "cannot read corpus " + path.string());
  std::vector<Document> docs;
  std::unordered_set<std::string> seen;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (text::is_blank(line)) continue;
    const std::string where = path.string() + ":" + std::to_string(line_no);
    Document d;
    try {
      const auto j = nlohmann::json::parse(line);
      d.id = j.at("id").get<std::string>();
      d.title = j.value("title", std::string());
      d.text = j.at("text").get<std::string>();
    } catch (const nlohmann::json::exception& ex) {
      throw Error(ErrorKind::format, where + ": " + ex.what());
    }
    if (d.id.empty()) throw Error(ErrorKind::validation, where + ": empty document id");
    if (text::is_blank(d.text)) throw Error(ErrorKind::validation, where + ": empty document text");
    if (!seen.insert(d.id).second) {
      throw Error(ErrorKind::validation, where + ": duplicate document id '" + d.id + "'");
    }
    docs.push_back(std::move(d));
  }
  return docs;
}

void save_corpus_jsonl(const std::vector<Document>& docs, const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error(ErrorKind::io, "cannot write corpus " + path.string());
  for (const auto& d : docs) {
    nlohmann::ordered_json j;
    j["id"] = d.id;
    j["title"] = d.title;
    j["text"] = d.text;
    out << j.dump() << '\n';
  }
}

}  // namespace edupsy::retrieval
