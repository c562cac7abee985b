// Copyright 2026 The tlsum Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// Tokenization, sentence splitting and keyphrase matching.

#ifndef TLSUM_TEXT_H_
#define TLSUM_TEXT_H_

#include <span>
#include <string>
#include <string_view>
#include <unordered_set>
#include <vector>

namespace tlsum::text {

// Lowercases ASCII and splits on every character that is not a letter or a
// digit. Bytes >= 0x80 are kept inside tokens so UTF-8 words stay whole.
std::vector<std::string> tokenize(std::string_view text);

std::string to_lower(std::string_view text);

// Splits after '.', '!' or '?' when followed by whitespace and an uppercase
// letter or a digit. A period closing one of Mr, Mrs, Dr, St, U.S or vs does
// not end a sentence. Sentences are trimmed; empty ones are dropped.
std::vector<std::string> split_sentences(std::string_view text);

// Built-in English stopword list (data/stopwords_en.txt).
const std::unordered_set<std::string>& stopwords();
bool is_stopword(std::string_view token);

// Tokens with stopwords removed, for vectorization.
std::vector<std::string> content_tokens(std::span<const std::string> tokens);

// Case-insensitive substring match of any phrase. Empty phrases never match.
bool contains_any(std::string_view text, std::span<const std::string> phrases);

// Porter (1980) suffix stripping. Input must be a lowercase token.
std::string porter_stem(std::string_view word);

}  // namespace tlsum::text

#endif  // TLSUM_TEXT_H_
