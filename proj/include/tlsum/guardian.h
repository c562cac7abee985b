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

// Client for the Guardian content search API with an on-disk response cache.

#ifndef TLSUM_GUARDIAN_H_
#define TLSUM_GUARDIAN_H_

#include <chrono>
#include <filesystem>
#include <functional>
#include <stdexcept>
#include <string>
#include <vector>

#include "tlsum/corpus.h"

namespace tlsum::guardian {

class FetchError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct HttpResponse {
  int status = 0;
  std::string body;
};

// Performs one GET of a path-and-query on the API host.
using Transport = std::function<HttpResponse(const std::string& target)>;
using Sleeper = std::function<void(std::chrono::milliseconds)>;

inline constexpr const char* kApiHost = "https://content.guardianapis.com";

// HTTPS transport against kApiHost.
Transport https_transport();

struct FetchOptions {
  // Responses are read from and written to this directory when set.
  std::filesystem::path cache_dir;
  // Null means cache-only: a miss is an error.
  Transport transport;
  Sleeper sleep;
  int attempts = 3;
  std::chrono::milliseconds initial_backoff{1000};
  int page_size = 50;
  int max_pages = 200;
};

// The timeline span widened by ceil(10% of its length in days) on each side.
DateSpan search_span(Date first, Date last);
DateSpan search_span(const Timeline& timeline);

// Request target for one result page, without the api-key parameter.
std::string search_target(const std::string& query, const DateSpan& span, int page,
                          int page_size);
// Cache file for a request target.
std::filesystem::path cache_path(const std::filesystem::path& cache_dir,
                                 const std::string& target);

// Articles from one search response whose body contains the query exactly
// (case-insensitive). Throws DataError on malformed responses.
std::vector<Article> parse_search_response(const std::string& body, const std::string& query);

// Pages through the search results for `query` in `span`, retrying failed
// or rate-limited requests with exponential backoff. Requests are serialized
// process-wide. Results are deduplicated by id and ordered by (date, id).
// Throws FetchError when a page cannot be obtained.
std::vector<Article> fetch_guardian(const std::string& query, const DateSpan& span,
                                    const std::string& api_key, const FetchOptions& options);

}  // namespace tlsum::guardian

#endif  // TLSUM_GUARDIAN_H_
