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

#include "tlsum/text.h"

#include "doctest.h"

namespace text = tlsum::text;
using Tokens = std::vector<std::string>;

TEST_CASE("tokenize lowercases and splits on non-alphanumerics") {
  CHECK(text::tokenize("Hello, World! It's 2012-04-26.") ==
        Tokens{"hello", "world", "it", "s", "2012", "04", "26"});
  CHECK(text::tokenize("  ...  ").empty());
  CHECK(text::tokenize("") .empty());
}

TEST_CASE("split_sentences follows the boundary rule") {
  CHECK(text::split_sentences("A b. C d.") == Tokens{"A b.", "C d."});
  CHECK(text::split_sentences("Is it? Yes! 3 more.") == Tokens{"Is it?", "Yes!", "3 more."});
  CHECK(text::split_sentences("Mr. Smith went. He left.") == Tokens{"Mr. Smith went.", "He left."});
  CHECK(text::split_sentences("The U.S. Army left. Then.") == Tokens{"The U.S. Army left.", "Then."});
  CHECK(text::split_sentences("Dr. No vs. Bond.") == Tokens{"Dr. No vs. Bond."});
  CHECK(text::split_sentences("end. lower case stays") == Tokens{"end. lower case stays"});
  CHECK(text::split_sentences("").empty());
}

TEST_CASE("stopwords ship with the library") {
  CHECK(text::stopwords().size() >= 250);
  CHECK(text::is_stopword("the"));
  CHECK(text::is_stopword("a"));
  CHECK_FALSE(text::is_stopword("verdict"));
  Tokens toks{"the", "verdict", "was", "a", "surprise"};
  CHECK(text::content_tokens(toks) == Tokens{"verdict", "surprise"});
}

TEST_CASE("keyphrase matching is case-insensitive and contiguous") {
  Tokens q{"Bashar al-Assad"};
  CHECK(text::contains_any("President BASHAR AL-ASSAD spoke", q));
  CHECK_FALSE(text::contains_any("Bashar spoke with al-Assad", q));
  Tokens q2{"syria", "egypt"};
  CHECK(text::contains_any("Talks on Egypt", q2));
  CHECK_FALSE(text::contains_any("Talks on Libya", q2));
}

TEST_CASE("porter stemmer reference words") {
  CHECK(text::porter_stem("caresses") == "caress");
  CHECK(text::porter_stem("ponies") == "poni");
  CHECK(text::porter_stem("running") == "run");
  CHECK(text::porter_stem("relational") == "relat");
  CHECK(text::porter_stem("hopefulness") == "hope");
  CHECK(text::porter_stem("a") == "a");
}
