// Copyright 2026 The edupsy Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "edupsy/classifiers/linear_classifier.hpp"

namespace edupsy::classifiers::synthetic {

// Template-and-vocabulary generators standing in for the real labelled
// corpora. Every generator is a pure function of its seed.

std::string education_question(std::mt19937_64& rng);
std::string psychology_message(std::mt19937_64& rng);
std::string unsafe_message(std::mt19937_64& rng);
/// Education or psychology text, chosen uniformly.
std::string benign_message(std::mt19937_64& rng);

std::vector<std::string> education_questions(std::size_t n, std::uint64_t seed);
std::vector<std::string> psychology_messages(std::size_t n, std::uint64_t seed);
std::vector<std::string> unsafe_messages(std::size_t n, std::uint64_t seed);
std::vector<std::string> benign_messages(std::size_t n, std::uint64_t seed);

/// Safety head data: positive = safe (benign), negative = unsafe.
std::vector<LabeledExample> safety_dataset(std::size_t per_class, std::uint64_t seed);

/// Intent head data: positive = education, negative = psychology.
std::vector<LabeledExample> intent_dataset(std::size_t education, std::size_t psychology,
                                           std::uint64_t seed);

}  // namespace edupsy::classifiers::synthetic
