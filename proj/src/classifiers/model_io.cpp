// Copyright 2026 The edupsy Authors
// SPDX-License-Identifier: Apache-2.0

#include "edupsy/classifiers/model_io.hpp"

#include <fstream>

#include "edupsy/core/errors.hpp"
#include "edupsy/core/text.hpp"

namespace edupsy::classifiers {

nlohmann::json to_json(const TextClassifier& model) {
  nlohmann::ordered_json j;
  j["format"] = "edupsy-text-classifier";
  j["version"] = kModelFormatVersion;
  j["head_name"] = model.head_name;
  j["dim"] = model.linear.dim();
  j["bias"] = model.linear.bias;
  j["weights"] = std::vector<double>(model.linear.weights.data(),
                                     model.linear.weights.data() + model.linear.weights.size());
  j["featurizer_params"] = {{"kind", "char_ngram_hash"},
                            {"ngram_min", kMinNgram},
                            {"ngram_max", kMaxNgram},
                            {"hash", "fnv1a64"},
                            {"normalization", "l2"}};
  j["loss"] = {{"gamma", model.loss.gamma}, {"alpha", model.loss.alpha}};
  return j;
}

TextClassifier text_classifier_from_json(const nlohmann::json& j) {
  try {
    if (j.at("format").get<std::string>() != "edupsy-text-classifier") {
      throw Error(ErrorKind::format, "not a text classifier model");
    }
    if (j.at("version").get<int>() != kModelFormatVersion) {
      throw Error(ErrorKind::format, "unsupported model version " + j.at("version").dump());
    }
    const auto& fp = j.at("featurizer_params");
    if (fp.at("ngram_min").get<int>() != kMinNgram || fp.at("ngram_max").get<int>() != kMaxNgram ||
        fp.at("hash").get<std::string>() != "fnv1a64") {
      throw Error(ErrorKind::format, "model was trained with an incompatible featurizer");
    }
    TextClassifier model;
    model.head_name = j.at("head_name").get<std::string>();
    const auto dim = j.at("dim").get<std::size_t>();
    const auto weights = j.at("weights").get<std::vector<double>>();
    if (weights.size() != dim || dim < 2) {
      throw Error(ErrorKind::format, "weights length does not match dim");
    }
    model.linear.weights = Eigen::Map<const Eigen::VectorXd>(weights.data(),
                                                             static_cast<Eigen::Index>(dim));
    model.linear.bias = j.at("bias").get<double>();
    if (!model.linear.weights.allFinite() || !std::isfinite(model.linear.bias)) {
      throw Error(ErrorKind::format, "model contains non-finite weights");
    }
    if (j.contains("loss")) {
      model.loss.gamma = j["loss"].value("gamma", model.loss.gamma);
      model.loss.alpha = j["loss"].value("alpha", model.loss.alpha);
    }
    return model;
  } catch (const nlohmann::json::exception& ex) {
    throw Error(ErrorKind::format, std::string("malformed model: ") + ex.what());
  }
}

void save_model(const TextClassifier& model, const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error(ErrorKind::io, "cannot write model " + path.string());
  out << to_json(model).dump() << '\n';
}

TextClassifier load_model(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorKind::io, "cannot read model " + path.string());
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(in);
  } catch (const nlohmann::json::exception& ex) {
    throw Error(ErrorKind::format, path.string() + ": " + ex.what());
  }
  return text_classifier_from_json(j);
}

std::vector<LabeledExample> load_training_jsonl(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorKind::io, "cannot read training data " + path.string());
  std::vector<LabeledExample> out;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (text::is_blank(line)) continue;
    const std::string where = path.string() + ":" + std::to_string(line_no);
    try {
      const auto j = nlohmann::json::parse(line);
      LabeledExample ex;
      ex.text = j.at("text").get<std::string>();
      const int label = j.at("label").get<int>();
      if (label != 0 && label != 1) throw Error(ErrorKind::validation, where + ": label must be 0 or 1");
      if (text::is_blank(ex.text)) throw Error(ErrorKind::validation, where + ": empty text");
      ex.label = label == 1 ? Label::positive : Label::negative;
      out.push_back(std::move(ex));
    } catch (const nlohmann::json::exception& ex) {
      throw Error(ErrorKind::format, where + ": " + ex.what());
    }
  }
  return out;
}

void save_training_jsonl(std::span<const LabeledExample> examples, const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error(ErrorKind::io, "cannot write " + path.string());
  for (const auto& e : examples) {
    nlohmann::ordered_json j;
    j["text"] = e.text;
    j["label"] = e.label == Label::positive ? 1 : 0;
    out << j.dump() << '\n';
  }
}

}  // namespace edupsy::classifiers
