// Copyright 2026 The Synthweb Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "synthweb/search/index.hpp"

#include <algorithm>
#include <cmath>
#include <cstring>
#include <fstream>
#include <numeric>
#include <set>

#include "synthweb/error.hpp"
#include "synthweb/text.hpp"

namespace synthweb::search {

namespace {

constexpr char kMagic[4] = {'S', 'W', 'I', 'X'};
constexpr std::uint64_t kTrigramBasis = 0x84222325cbf29ce4ULL;
constexpr float kTrigramWeight = 0.5F;

void add_feature(std::vector<float>& v, std::uint64_t h, float w) {
  const auto idx = static_cast<std::size_t>(h % v.size());
  v[idx] += ((h >> 32) & 1U) ? -w : w;
}

// Little-endian primitives for index.bin.
class Writer {
 public:
  void u32(std::uint32_t v) {
    for (int i = 0; i < 4; ++i) buf_.push_back(static_cast<char>((v >> (8 * i)) & 0xFFU));
  }
  void i64(std::int64_t v) {
    const auto u = static_cast<std::uint64_t>(v);
    for (int i = 0; i < 8; ++i) buf_.push_back(static_cast<char>((u >> (8 * i)) & 0xFFU));
  }
  void f32(float f) {
    std::uint32_t u = 0;
    std::memcpy(&u, &f, sizeof u);
    u32(u);
  }
  void str(std::string_view s) {
    u32(static_cast<std::uint32_t>(s.size()));
    buf_.append(s);
  }
  void raw(const char* p, std::size_t n) { buf_.append(p, n); }
  const std::string& data() const { return buf_; }

 private:
  std::string buf_;
};

class Reader {
 public:
  explicit Reader(std::string data) : data_(std::move(data)) {}
  std::uint32_t u32() {
    need(4);
    std::uint32_t v = 0;
    for (int i = 0; i < 4; ++i) v |= static_cast<std::uint32_t>(static_cast<unsigned char>(data_[pos_++])) << (8 * i);
    return v;
  }
  std::int64_t i64() {
    need(8);
    std::uint64_t v = 0;
    for (int i = 0; i < 8; ++i) v |= static_cast<std::uint64_t>(static_cast<unsigned char>(data_[pos_++])) << (8 * i);
    return static_cast<std::int64_t>(v);
  }
  float f32() {
    const std::uint32_t u = u32();
    float f = 0;
    std::memcpy(&f, &u, sizeof f);
    return f;
  }
  std::string str() {
    const auto n = u32();
    need(n);
    std::string s = data_.substr(pos_, n);
    pos_ += n;
    return s;
  }
  std::string raw(std::size_t n) {
    need(n);
    std::string s = data_.substr(pos_, n);
    pos_ += n;
    return s;
  }
  bool done() const { return pos_ == data_.size(); }

 private:
  void need(std::size_t n) const {
    if (pos_ + n > data_.size()) throw Error(ErrorCode::kSchema, "index.bin is truncated");
  }
  std::string data_;
  std::size_t pos_ = 0;
};

}  // namespace

std::vector<float> embed(std::string_view text, int dim) {
  if (dim < 1) throw invalid_argument("embedding dimension must be >= 1");
  std::vector<float> v(static_cast<std::size_t>(dim), 0.0F);
  for (const auto& tok : text::tokenize(text)) {
    add_feature(v, fnv1a64(tok), 1.0F);
    const std::string padded = "#" + tok + "#";
    for (std::size_t i = 0; i + 3 <= padded.size(); ++i) {
      add_feature(v, fnv1a64(std::string_view(padded).substr(i, 3), kTrigramBasis), kTrigramWeight);
    }
  }
  double norm = 0.0;
  for (float x : v) norm += static_cast<double>(x) * x;
  if (norm > 0.0) {
    const double inv = 1.0 / std::sqrt(norm);
    for (float& x : v) x = static_cast<float>(x * inv);
  }
  return v;
}

double cosine(const std::vector<float>& a, const std::vector<float>& b) {
  if (a.size() != b.size()) throw invalid_argument("cosine of vectors with different dimensions");
  double dot = 0.0, na = 0.0, nb = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    dot += static_cast<double>(a[i]) * b[i];
    na += static_cast<double>(a[i]) * a[i];
    nb += static_cast<double>(b[i]) * b[i];
  }
  if (na == 0.0 || nb == 0.0) return 0.0;
  return dot / (std::sqrt(na) * std::sqrt(nb));
}

double fuse(double lexical_norm, double dense_norm, double alpha) {
  if (!(alpha >= 0.0 && alpha <= 1.0)) throw invalid_argument("fusion alpha must lie in [0, 1]");
  return alpha * lexical_norm + (1.0 - alpha) * dense_norm;
}

std::vector<std::string> query_terms(std::string_view query) {
  std::vector<std::string> out;
  std::set<std::string> seen;
  for (auto& t : text::tokenize(query)) {
    if (seen.insert(t).second) out.push_back(std::move(t));
  }
  return out;
}

// -------------------------------------------------------------------- index

SearchIndex SearchIndex::build(const worldgen::WorldBundle& world, int dim) {
  if (world.articles.empty()) throw invalid_argument("cannot index a world with no articles");
  if (dim < 1) throw invalid_argument("embedding dimension must be >= 1");
  SearchIndex idx;
  idx.world_id_ = world.world_id;
  idx.dim_ = dim;
  idx.docs_.reserve(world.articles.size());
  idx.embeddings_.reserve(world.articles.size() * static_cast<std::size_t>(dim));
  for (std::size_t d = 0; d < world.articles.size(); ++d) {
    const auto& a = world.articles[d];
    const std::string full = a.title + "\n" + a.body;
    const auto tokens = text::tokenize(full);
    std::map<std::string, Posting> local;
    for (std::size_t p = 0; p < tokens.size(); ++p) {
      auto& post = local[tokens[p]];
      post.doc = static_cast<std::uint32_t>(d);
      ++post.tf;
      post.positions.push_back(static_cast<std::uint32_t>(p));
    }
    for (auto& [term, post] : local) idx.terms_[term].push_back(std::move(post));
    idx.docs_.push_back({a.article_id, a.title, text::snippet(a.body), world.domain_of(a), a.timestamp,
                         static_cast<std::uint32_t>(tokens.size())});
    const auto e = embed(full, dim);
    idx.embeddings_.insert(idx.embeddings_.end(), e.begin(), e.end());
  }
  idx.finish();
  return idx;
}

void SearchIndex::finish() {
  by_id_.clear();
  double total = 0.0;
  for (std::size_t i = 0; i < docs_.size(); ++i) {
    by_id_.emplace(docs_[i].article_id, i);
    total += docs_[i].length;
  }
  avgdl_ = docs_.empty() ? 0.0 : total / static_cast<double>(docs_.size());
}

std::optional<std::size_t> SearchIndex::find(std::string_view article_id) const {
  auto it = by_id_.find(std::string(article_id));
  if (it == by_id_.end()) return std::nullopt;
  return it->second;
}

const std::vector<Posting>* SearchIndex::postings(std::string_view term) const {
  auto it = terms_.find(std::string(term));
  return it == terms_.end() ? nullptr : &it->second;
}

std::span<const float> SearchIndex::embedding(std::size_t i) const {
  return {embeddings_.data() + i * static_cast<std::size_t>(dim_), static_cast<std::size_t>(dim_)};
}

double SearchIndex::idf(std::string_view term) const {
  const auto* p = postings(term);
  const double n = static_cast<double>(docs_.size());
  const double df = p ? static_cast<double>(p->size()) : 0.0;
  return std::log(1.0 + (n - df + 0.5) / (df + 0.5));
}

namespace {

double bm25_term(double idf, double tf, double len, double avgdl) {
  if (tf <= 0.0) return 0.0;
  const double norm = avgdl > 0.0 ? len / avgdl : 1.0;
  return idf * tf * (kBm25K1 + 1.0) / (tf + kBm25K1 * (1.0 - kBm25B + kBm25B * norm));
}

}  // namespace

std::vector<double> SearchIndex::lexical_scores(const std::vector<std::string>& terms) const {
  std::vector<double> scores(docs_.size(), 0.0);
  for (const auto& t : terms) {
    const auto* plist = postings(t);
    if (plist == nullptr) continue;
    const double w = idf(t);
    for (const auto& p : *plist) {
      scores[p.doc] += bm25_term(w, p.tf, docs_[p.doc].length, avgdl_);
    }
  }
  return scores;
}

double SearchIndex::lexical_score(const std::vector<std::string>& terms, std::size_t doc) const {
  double s = 0.0;
  for (const auto& t : terms) {
    const auto* plist = postings(t);
    if (plist == nullptr) continue;
    auto it = std::lower_bound(plist->begin(), plist->end(), doc,
                               [](const Posting& p, std::size_t d) { return p.doc < d; });
    if (it != plist->end() && it->doc == doc) {
      s += bm25_term(idf(t), it->tf, docs_[doc].length, avgdl_);
    }
  }
  return s;
}

double SearchIndex::lexical_score_external(const std::vector<std::string>& terms,
                                           std::string_view full_text) const {
  const auto tokens = text::tokenize(full_text);
  std::map<std::string, int> tf;
  for (const auto& t : tokens) ++tf[t];
  double s = 0.0;
  for (const auto& t : terms) {
    auto it = tf.find(t);
    if (it == tf.end()) continue;
    s += bm25_term(idf(t), it->second, static_cast<double>(tokens.size()), avgdl_);
  }
  return s;
}

bool SearchIndex::operator==(const SearchIndex& o) const {
  return world_id_ == o.world_id_ && dim_ == o.dim_ && docs_ == o.docs_ && terms_ == o.terms_ &&
         embeddings_ == o.embeddings_;
}

// ---------------------------------------------------------------- index.bin
//
// Layout (all integers little-endian):
//   "SWIX" u32 version
//   str world_id, u32 dim, u32 n_docs
//   n_docs x { str article_id, str title, str snippet, str domain,
//              i64 unix_seconds, u32 length }
//   n_docs * dim x f32 embedding components
//   u32 n_terms, then terms in byte order:
//     str term, u32 n_postings, n_postings x { u32 doc, u32 tf, u32 n_pos, n_pos x u32 }
// where str = u32 byte length followed by UTF-8 bytes.

void SearchIndex::save(const std::filesystem::path& path) const {
  Writer w;
  w.raw(kMagic, 4);
  w.u32(kIndexFormatVersion);
  w.str(world_id_);
  w.u32(static_cast<std::uint32_t>(dim_));
  w.u32(static_cast<std::uint32_t>(docs_.size()));
  for (const auto& d : docs_) {
    w.str(d.article_id);
    w.str(d.title);
    w.str(d.snippet);
    w.str(d.domain);
    w.i64(d.timestamp.time_since_epoch().count());
    w.u32(d.length);
  }
  for (float f : embeddings_) w.f32(f);
  std::vector<const std::string*> keys;
  keys.reserve(terms_.size());
  for (const auto& [t, p] : terms_) keys.push_back(&t);
  std::sort(keys.begin(), keys.end(), [](const auto* a, const auto* b) { return *a < *b; });
  w.u32(static_cast<std::uint32_t>(keys.size()));
  for (const auto* k : keys) {
    const auto& plist = terms_.at(*k);
    w.str(*k);
    w.u32(static_cast<std::uint32_t>(plist.size()));
    for (const auto& p : plist) {
      w.u32(p.doc);
      w.u32(p.tf);
      w.u32(static_cast<std::uint32_t>(p.positions.size()));
      for (auto pos : p.positions) w.u32(pos);
    }
  }
  write_file_atomic(path, w.data());
}

SearchIndex SearchIndex::load(const std::filesystem::path& path, std::string_view expected_world_id) {
  Reader r(read_file(path));
  if (r.raw(4) != std::string(kMagic, 4)) {
    throw Error(ErrorCode::kSchema, path.string() + " is not a synthweb index");
  }
  const auto version = r.u32();
  if (version != kIndexFormatVersion) {
    throw Error(ErrorCode::kSchema, "unsupported index version " + std::to_string(version));
  }
  SearchIndex idx;
  idx.world_id_ = r.str();
  if (!expected_world_id.empty() && idx.world_id_ != expected_world_id) {
    throw Error(ErrorCode::kSchema, "index built for world " + idx.world_id_ + ", expected " +
                                        std::string(expected_world_id));
  }
  idx.dim_ = static_cast<int>(r.u32());
  const auto n_docs = r.u32();
  idx.docs_.resize(n_docs);
  for (auto& d : idx.docs_) {
    d.article_id = r.str();
    d.title = r.str();
    d.snippet = r.str();
    d.domain = r.str();
    d.timestamp = DateTime{std::chrono::seconds(r.i64())};
    d.length = r.u32();
  }
  idx.embeddings_.resize(static_cast<std::size_t>(n_docs) * static_cast<std::size_t>(idx.dim_));
  for (auto& f : idx.embeddings_) f = r.f32();
  const auto n_terms = r.u32();
  for (std::uint32_t i = 0; i < n_terms; ++i) {
    std::string term = r.str();
    std::vector<Posting> plist(r.u32());
    for (auto& p : plist) {
      p.doc = r.u32();
      p.tf = r.u32();
      p.positions.resize(r.u32());
      for (auto& pos : p.positions) pos = r.u32();
      if (p.doc >= n_docs) throw Error(ErrorCode::kSchema, "index.bin posting out of range");
    }
    idx.terms_.emplace(std::move(term), std::move(plist));
  }
  if (!r.done()) throw Error(ErrorCode::kSchema, "trailing bytes in index.bin");
  idx.finish();
  return idx;
}

// ------------------------------------------------------------------ search

std::string_view to_string(Condition c) {
  return c == Condition::kAdversarial ? "adversarial" : "standard";
}

Condition condition_from_string(std::string_view s) {
  if (s == "standard") return Condition::kStandard;
  if (s == "adversarial") return Condition::kAdversarial;
  throw invalid_argument("unknown condition: " + std::string(s));
}

namespace {

struct Scored {
  double score;
  DateTime timestamp;
  const std::string* id;
  std::size_t doc;  // index position, or npos for the honeypot
};

bool ranks_before(const Scored& a, const Scored& b) {
  if (a.score != b.score) return a.score > b.score;
  if (a.timestamp != b.timestamp) return a.timestamp < b.timestamp;
  return *a.id < *b.id;
}

}  // namespace

std::vector<SearchResult> search(const SearchIndex& index, SessionOverlay& overlay,
                                 std::string_view query, const SearchOptions& opts) {
  if (opts.k < 1) throw invalid_argument("k must be >= 1");
  if (!(opts.alpha >= 0.0 && opts.alpha <= 1.0)) {
    throw invalid_argument("fusion alpha must lie in [0, 1]");
  }
  if (text::trim(query).empty()) throw invalid_argument("search query must not be empty");

  const auto terms = query_terms(query);
  const auto lex = index.lexical_scores(terms);
  const auto q = embed(query, index.dim());
  std::vector<double> dense(index.size(), 0.0);
  for (std::size_t i = 0; i < index.size(); ++i) {
    const auto e = index.embedding(i);
    double dot = 0.0;
    for (std::size_t j = 0; j < e.size(); ++j) dot += static_cast<double>(q[j]) * e[j];
    dense[i] = dot;
  }
  // Per-query min-max over the world corpus; the honeypot reuses the map.
  auto [lmin, lmax] = std::minmax_element(lex.begin(), lex.end());
  auto [dmin, dmax] = std::minmax_element(dense.begin(), dense.end());
  const double lo_l = *lmin, span_l = *lmax - *lmin;
  const double lo_d = *dmin, span_d = *dmax - *dmin;
  auto fused = [&](double l, double d) {
    const double ln = span_l > 0.0 ? (l - lo_l) / span_l : 0.0;
    const double dn = span_d > 0.0 ? (d - lo_d) / span_d : 0.0;
    return fuse(ln, dn, opts.alpha);
  };

  std::vector<Scored> pool;
  pool.reserve(index.size() + 1);
  for (std::size_t i = 0; i < index.size(); ++i) {
    const auto& d = index.doc(i);
    pool.push_back({fused(lex[i], dense[i]), d.timestamp, &d.article_id, i});
  }

  const bool adversarial =
      overlay.condition == Condition::kAdversarial && overlay.honeypot.has_value();
  const bool pin = adversarial && !overlay.first_query_served;
  constexpr std::size_t kHoneypot = static_cast<std::size_t>(-1);
  const worldgen::Article* hp = adversarial ? &overlay.honeypot->article : nullptr;
  if (adversarial && !pin) {
    const std::string full = hp->title + "\n" + hp->body;
    const double l = index.lexical_score_external(terms, full);
    const double d = cosine(q, embed(full, index.dim()));
    pool.push_back({fused(l, d), hp->timestamp, &hp->article_id, kHoneypot});
  }

  const auto k = static_cast<std::size_t>(opts.k);
  const std::size_t organic_k = pin ? k - 1 : k;
  const std::size_t take = std::min(organic_k, pool.size());
  std::partial_sort(pool.begin(), pool.begin() + static_cast<std::ptrdiff_t>(take), pool.end(),
                    ranks_before);
  pool.resize(take);

  std::vector<SearchResult> out;
  out.reserve(take + 1);
  auto honeypot_result = [&](double score, bool pinned) {
    SearchResult r;
    r.article_id = hp->article_id;
    r.title = hp->title;
    r.snippet = text::snippet(hp->body);
    r.domain = overlay.honeypot->domain;
    r.score = score;
    r.pinned = pinned;
    return r;
  };
  for (const auto& s : pool) {
    if (s.doc == kHoneypot) {
      out.push_back(honeypot_result(s.score, false));
      continue;
    }
    const auto& d = index.doc(s.doc);
    out.push_back({0, d.article_id, d.title, d.snippet, d.domain, s.score, false});
  }
  if (pin) {
    const auto pos = std::min(static_cast<std::size_t>(std::max(0, overlay.pin_rank)), k - 1);
    const double top = out.empty() ? 1.0 : out.front().score;
    out.insert(out.begin() + static_cast<std::ptrdiff_t>(std::min(pos, out.size())),
               honeypot_result(top, true));
    overlay.first_query_served = true;
  }
  for (std::size_t i = 0; i < out.size(); ++i) out[i].rank = static_cast<int>(i);
  return out;
}

}  // namespace synthweb::search
