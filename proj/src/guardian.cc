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

#include "tlsum/guardian.h"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <map>
#include <mutex>
#include <thread>

#include "httplib.h"
#include "json.hpp"
#include "tlsum/io.h"
#include "tlsum/text.h"

namespace tlsum::guardian {

namespace {

std::mutex& request_mutex() {
  static std::mutex m;
  return m;
}

uint64_t fnv1a(std::string_view s) {
  uint64_t h = 1469598103934665603ull;
  for (unsigned char c : s) {
    h ^= c;
    h *= 1099511628211ull;
  }
  return h;
}

bool retryable(int status) { return status == 0 || status == 429 || status >= 500; }

std::string request_page(const std::string& target, const std::string& api_key,
                         const FetchOptions& options) {
  if (!options.transport) {
    throw FetchError("no cached response for " + target + " and no transport available");
  }
  const std::string full = target + "&api-key=" + httplib::detail::encode_query_param(api_key);
  auto backoff = options.initial_backoff;
  int last_status = 0;
  std::lock_guard<std::mutex> lock(request_mutex());
  for (int attempt = 1; attempt <= options.attempts; ++attempt) {
    HttpResponse r;
    try {
      r = options.transport(full);
    } catch (const std::exception&) {
      r.status = 0;
    }
    if (r.status == 200) return r.body;
    last_status = r.status;
    if (!retryable(r.status)) break;
    if (attempt < options.attempts) {
      if (options.sleep) {
        options.sleep(backoff);
      } else {
        std::this_thread::sleep_for(backoff);
      }
      backoff *= 2;
    }
  }
  throw FetchError("request " + target + " failed with HTTP status " +
                   std::to_string(last_status));
}

}  // namespace

Transport https_transport() {
  return [](const std::string& target) {
    httplib::Client client(kApiHost);
    client.set_connection_timeout(10);
    client.set_read_timeout(30);
    auto res = client.Get(target);
    HttpResponse out;
    if (res) {
      out.status = res->status;
      out.body = res->body;
    }
    return out;
  };
}

DateSpan search_span(Date first, Date last) {
  int days = last - first;
  int pad = static_cast<int>(std::ceil(0.1 * days));
  return {first - pad, last + pad};
}

DateSpan search_span(const Timeline& timeline) {
  if (timeline.empty()) throw std::invalid_argument("search_span: empty timeline");
  return search_span(timeline.first_date(), timeline.last_date());
}

std::string search_target(const std::string& query, const DateSpan& span, int page,
                          int page_size) {
  using httplib::detail::encode_query_param;
  return "/search?q=" + encode_query_param("\"" + query + "\"") +
         "&query-fields=body&from-date=" + span.first.iso() + "&to-date=" + span.last.iso() +
         "&order-by=oldest&show-fields=bodyText&page-size=" + std::to_string(page_size) +
         "&page=" + std::to_string(page);
}

std::filesystem::path cache_path(const std::filesystem::path& cache_dir,
                                 const std::string& target) {
  char name[32];
  std::snprintf(name, sizeof name, "%016llx.json",
                static_cast<unsigned long long>(fnv1a(target)));
  return cache_dir / name;
}

std::vector<Article> parse_search_response(const std::string& body, const std::string& query) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(body);
  } catch (const nlohmann::json::exception& e) {
    throw DataError(std::string("malformed search response: ") + e.what());
  }
  std::vector<Article> out;
  if (!doc.contains("response") || !doc["response"].is_object()) {
    throw DataError("search response lacks a 'response' object");
  }
  const auto& results = doc["response"].value("results", nlohmann::json::array());
  const std::vector<std::string> phrase = {query};
  for (const auto& r : results) {
    std::string id = r.value("id", "");
    std::string when = r.value("webPublicationDate", "");
    std::string title = r.value("webTitle", "");
    std::string body_text;
    if (r.contains("fields") && r["fields"].is_object()) {
      body_text = r["fields"].value("bodyText", "");
    }
    if (id.empty() || when.empty()) throw DataError("search result without id or date");
    if (!text::contains_any(body_text, phrase)) continue;
    auto date = Date::parse_iso(when);
    if (!date) throw DataError("search result " + id + " has a bad date '" + when + "'");
    auto sentences = text::split_sentences(body_text);
    if (sentences.empty()) continue;
    out.push_back(make_article(id, title, *date, sentences));
  }
  return out;
}

std::vector<Article> fetch_guardian(const std::string& query, const DateSpan& span,
                                    const std::string& api_key, const FetchOptions& options) {
  std::map<std::string, Article> by_id;
  for (int page = 1; page <= options.max_pages; ++page) {
    const std::string target = search_target(query, span, page, options.page_size);
    std::string body;
    std::filesystem::path cached;
    if (!options.cache_dir.empty()) {
      cached = cache_path(options.cache_dir, target);
      if (std::filesystem::exists(cached)) body = io::read_file(cached);
    }
    if (body.empty()) {
      body = request_page(target, api_key, options);
      if (!cached.empty()) io::write_file_atomic(cached, body);
    }
    for (auto& a : parse_search_response(body, query)) by_id.try_emplace(a.id, std::move(a));

    auto doc = nlohmann::json::parse(body);
    const auto& resp = doc["response"];
    int pages = resp.value("pages", 0);
    size_t n_results = resp.contains("results") ? resp["results"].size() : 0;
    if (page >= pages || n_results == 0) break;
  }
  std::vector<Article> out;
  out.reserve(by_id.size());
  for (auto& [id, a] : by_id) out.push_back(std::move(a));
  std::sort(out.begin(), out.end(), [](const Article& x, const Article& y) {
    return x.pub_date != y.pub_date ? x.pub_date < y.pub_date : x.id < y.id;
  });
  return out;
}

}  // namespace tlsum::guardian
