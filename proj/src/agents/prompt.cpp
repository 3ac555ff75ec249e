// Copyright 2026 The edupsy Authors
// SPDX-License-Identifier: Apache-2.0

#include "edupsy/agents/prompt.hpp"

#include <fstream>
#include <sstream>

#include "edupsy/core/errors.hpp"
#include "edupsy/core/text.hpp"

namespace edupsy::agents {
namespace {

constexpr std::string_view kEducationSystem =
    "You are an educational assistant for primary and secondary school students. "
    "Answer accurately and concisely in the language of the question. "
    "When you rely on reference material, cite it as [doc:ID].";
constexpr std::string_view kEducationUser =
    "Reference material:\n{contexts}\n\nQuestion: {question}";
constexpr std::string_view kPsychologySystem =
    "You are a warm and patient counselor for students. Listen carefully, acknowledge "
    "feelings, and offer gentle, practical suggestions. Stay consistent with the earlier "
    "conversation.";
constexpr std::string_view kPsychologyUser = "{question}";

std::string fill(std::string_view tmpl, std::string_view question, std::string_view contexts,
                 std::string_view history) {
  std::string out;
  out.reserve(tmpl.size() + question.size() + contexts.size() + history.size());
  std::size_t i = 0;
  while (i < tmpl.size()) {
    if (tmpl[i] == '{') {
      const auto close = tmpl.find('}', i);
      if (close != std::string_view::npos) {
        const auto name = tmpl.substr(i + 1, close - i - 1);
        const std::string_view* value = nullptr;
        if (name == "question") value = &question;
        if (name == "contexts") value = &contexts;
        if (name == "history") value = &history;
        if (value) {
          out += *value;
          i = close + 1;
          continue;
        }
      }
    }
    out += tmpl[i++];
  }
  return out;
}

std::string strip_trailing_newlines(std::string s) {
  while (!s.empty() && (s.back() == '\n' || s.back() == '\r')) s.pop_back();
  return s;
}

}  // namespace

PromptTemplates PromptTemplates::defaults() {
  return {1, std::string(kEducationSystem), std::string(kEducationUser),
          std::string(kPsychologySystem), std::string(kPsychologyUser)};
}

PromptTemplates PromptTemplates::parse(std::string_view text) {
  PromptTemplates t;
  t.education_system.clear();
  t.education_user.clear();
  t.psychology_system.clear();
  t.psychology_user.clear();
  std::string* current = nullptr;
  bool seen[4] = {false, false, false, false};
  std::istringstream in{std::string(text)};
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.size() > 2 && line.front() == '[' && line.back() == ']') {
      const std::string name = line.substr(1, line.size() - 2);
      int slot = -1;
      if (name == "education.system") slot = 0, current = &t.education_system;
      else if (name == "education.user") slot = 1, current = &t.education_user;
      else if (name == "psychology.system") slot = 2, current = &t.psychology_system;
      else if (name == "psychology.user") slot = 3, current = &t.psychology_user;
      if (slot < 0) {
        throw Error(ErrorKind::format, "templates line " + std::to_string(lineno) +
                                           ": unknown section [" + name + "]");
      }
      if (seen[slot]) {
        throw Error(ErrorKind::format, "templates line " + std::to_string(lineno) +
                                           ": duplicate section [" + name + "]");
      }
      seen[slot] = true;
      continue;
    }
    if (!current) {
      const std::string trimmed = text::trim(line);
      if (trimmed.empty() || trimmed.front() == '#') continue;
      const auto eq = trimmed.find('=');
      if (eq != std::string::npos && text::trim(trimmed.substr(0, eq)) == "version") {
        try {
          t.version = std::stoi(text::trim(trimmed.substr(eq + 1)));
        } catch (const std::exception&) {
          throw Error(ErrorKind::format, "templates: bad version");
        }
        continue;
      }
      throw Error(ErrorKind::format,
                  "templates line " + std::to_string(lineno) + ": text outside a section");
    }
    if (!current->empty() || !line.empty()) {
      if (!current->empty()) *current += '\n';
      *current += line;
    }
  }
  for (std::string* s : {&t.education_system, &t.education_user, &t.psychology_system,
                         &t.psychology_user}) {
    *s = strip_trailing_newlines(*s);
  }
  if (t.education_user.find("{question}") == std::string::npos ||
      t.psychology_user.find("{question}") == std::string::npos) {
    throw Error(ErrorKind::format, "templates: user templates must contain {question}");
  }
  if (t.education_system.empty() || t.psychology_system.empty()) {
    throw Error(ErrorKind::format, "templates: system sections must not be empty");
  }
  return t;
}

PromptTemplates PromptTemplates::load(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorKind::not_found, "templates file not found: " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse(ss.str());
}

std::string PromptTemplates::to_text() const {
  std::ostringstream out;
  out << "version = " << version << "\n\n"
      << "[education.system]\n" << education_system << "\n\n"
      << "[education.user]\n" << education_user << "\n\n"
      << "[psychology.system]\n" << psychology_system << "\n\n"
      << "[psychology.user]\n" << psychology_user << "\n";
  return out.str();
}

std::string render_contexts(const std::vector<ContextBlock>& blocks) {
  if (blocks.empty()) return "(none)";
  std::string out;
  for (std::size_t i = 0; i < blocks.size(); ++i) {
    if (i) out += "\n\n";
    out += "[doc:" + blocks[i].doc_id + "] " + blocks[i].title + "\n" + blocks[i].excerpt;
  }
  return out;
}

std::string render_history(const std::vector<ChatTurn>& history) {
  std::string out;
  for (const auto& t : history) {
    if (!out.empty()) out += '\n';
    out += std::string(to_string(t.role)) + ": " + t.text;
  }
  return out;
}

PromptBuilder::PromptBuilder(PromptTemplates templates, PromptBudgets budgets)
    : templates_(std::move(templates)), budgets_(budgets) {
  if (budgets_.excerpt_chars == 0 || budgets_.prompt_chars == 0) {
    throw Error(ErrorKind::config, "prompt budgets must be positive");
  }
}

AssembledPrompt PromptBuilder::education(std::string_view question,
                                         const std::vector<retrieval::Document>& contexts) const {
  if (text::is_blank(question)) throw Error(ErrorKind::validation, "question must not be empty");
  AssembledPrompt p;
  p.route = Route::education;
  p.system = templates_.education_system;
  p.question = std::string(question);
  for (const auto& d : contexts) {
    p.context_blocks.push_back({d.id, d.title, text::truncate_chars(d.text, budgets_.excerpt_chars)});
  }
  fit(p);
  return p;
}

AssembledPrompt PromptBuilder::psychology(std::span<const ChatTurn> history,
                                          std::string_view question, std::size_t window) const {
  if (text::is_blank(question)) throw Error(ErrorKind::validation, "question must not be empty");
  if (window == 0) throw Error(ErrorKind::validation, "history window must be at least 1");
  AssembledPrompt p;
  p.route = Route::psychology;
  p.system = templates_.psychology_system;
  p.question = std::string(question);
  std::vector<ChatTurn> usable;
  for (const auto& t : history) {
    if (!t.refused && t.role != Role::system) usable.push_back(t);
  }
  const std::size_t start = usable.size() > window ? usable.size() - window : 0;
  p.history.assign(usable.begin() + static_cast<std::ptrdiff_t>(start), usable.end());
  fit(p);
  return p;
}

std::string PromptBuilder::render_user(const AssembledPrompt& p) const {
  const auto& tmpl =
      p.route == Route::psychology ? templates_.psychology_user : templates_.education_user;
  return fill(tmpl, p.question, render_contexts(p.context_blocks), render_history(p.history));
}

std::string PromptBuilder::render(const AssembledPrompt& p) const {
  std::string out = p.system;
  out += "\n\n";
  for (const auto& t : p.history) out += std::string(to_string(t.role)) + ": " + t.text + "\n";
  out += "user: ";
  out += render_user(p);
  return out;
}

GenerationRequest PromptBuilder::request(const AssembledPrompt& p) const {
  GenerationRequest r;
  r.system = p.system;
  for (const auto& t : p.history) r.messages.push_back({t.role, t.text});
  r.messages.push_back({Role::user, render_user(p)});
  for (const auto& b : p.context_blocks) r.context_ids.push_back(b.doc_id);
  return r;
}

std::string PromptBuilder::hash(const AssembledPrompt& p) const {
  return text::hex64(text::fnv1a64(render(p)));
}

void PromptBuilder::fit(AssembledPrompt& p) const {
  const std::size_t budget = budgets_.prompt_chars;
  auto over = [&] {
    const std::size_t n = text::char_length(render(p));
    return n > budget ? n - budget : 0;
  };
  std::size_t excess = over();
  while (excess > 0 && !p.history.empty()) {
    p.history.erase(p.history.begin());
    excess = over();
  }
  for (auto it = p.context_blocks.rbegin(); excess > 0 && it != p.context_blocks.rend(); ++it) {
    const std::size_t len = text::char_length(it->excerpt);
    it->excerpt = text::truncate_chars(it->excerpt, len > excess ? len - excess : 0);
    excess = over();
  }
  if (excess > 0) {
    const std::size_t len = text::char_length(p.question);
    if (len > excess) {
      p.question = text::truncate_chars(p.question, len - excess);
      excess = over();
    }
  }
  if (excess > 0) {
    throw Error(ErrorKind::config, "config key 'prompt_budget': too small for the prompt templates");
  }
}

}  // namespace edupsy::agents
