// Copyright 2026 The edupsy Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdint>
#include <cstring>
#include <istream>
#include <limits>
#include <ostream>
#include <queue>
#include <random>
#include <span>
#include <sstream>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "edupsy/core/errors.hpp"
#include "edupsy/core/random.hpp"
#include "edupsy/retrieval/document.hpp"
#include "edupsy/retrieval/hnsw_params.hpp"

namespace edupsy::retrieval {

struct AuditReport {
  std::vector<std::string> violations;
  bool ok() const { return violations.empty(); }
};

/// Hierarchical navigable small world graph over unit vectors, scored by
/// cosine similarity (dot product).
///
/// Structure maintained after every insert:
///  - every edge is present in both endpoint lists of its layer;
///  - degree <= m on layers > 0 and <= 2m on layer 0;
///  - a node on layer L has adjacency on every layer below L;
///  - every node is reachable from the entry point on layer 0.
///
/// Reachability survives neighbor pruning because each node keeps one
/// protected layer-0 edge to an earlier node (its tree parent). Pruning never
/// drops a protected edge, and a parent is only chosen when it has room for
/// another protected edge, so the protected edges form a spanning tree.
///
/// Not internally synchronized: concurrent const calls are safe, insert needs
/// exclusive access.
template <typename Scalar = float>
class HnswIndex {
 public:
  using VectorType = Vector<Scalar>;
  using NodeId = std::uint32_t;
  static constexpr NodeId kNone = std::numeric_limits<NodeId>::max();
  static constexpr int kMaxLevel = 30;

  explicit HnswIndex(std::size_t dim, HnswParams params = {})
      : dim_(dim), params_(params), rng_(params.seed) {
    if (dim == 0) throw Error(ErrorKind::validation, "index dim must be positive");
    if (params.m < 2) throw Error(ErrorKind::validation, "hnsw m must be at least 2");
    if (params.ef_construction < params.m) {
      throw Error(ErrorKind::validation, "hnsw ef_construction must be >= m");
    }
    if (params.ef_search == 0) throw Error(ErrorKind::validation, "hnsw ef_search must be >= 1");
  }

  /// Repeated insert in input order.
  static HnswIndex build(std::size_t dim, std::span<const EmbeddedDocument<Scalar>> docs,
                         HnswParams params = {}) {
    HnswIndex index(dim, params);
    // Validate everything up front so a bad input leaves nothing half-built.
    std::unordered_map<std::string, std::size_t> seen;
    for (std::size_t i = 0; i < docs.size(); ++i) {
      index.check_dim(docs[i].vector);
      if (!seen.emplace(docs[i].doc.id, i).second) {
        throw Error(ErrorKind::validation, "duplicate document id '" + docs[i].doc.id + "'");
      }
    }
    for (const auto& d : docs) index.insert(d.doc.id, d.vector);
    return index;
  }

  void insert(const EmbeddedDocument<Scalar>& doc) { insert(doc.doc.id, doc.vector); }

  /// Throws validation on dimension mismatch or duplicate id; the index is
  /// unchanged in either case.
  void insert(const std::string& id, const VectorType& vec) {
    check_dim(vec);
    if (by_id_.count(id) != 0) {
      throw Error(ErrorKind::validation, "duplicate document id '" + id + "'");
    }
    if (ids_.size() >= static_cast<std::size_t>(kNone)) {
      throw Error(ErrorKind::validation, "index is full");
    }

    const int level = draw_level();
    const auto node = static_cast<NodeId>(ids_.size());
    ids_.push_back(id);
    by_id_.emplace(id, node);
    vectors_.push_back(vec);
    levels_.push_back(level);
    links_.emplace_back(static_cast<std::size_t>(level) + 1);
    parent_.push_back(kNone);
    tree_degree_.push_back(0);

    if (entry_ == kNone) {
      entry_ = node;
      max_level_ = level;
      return;
    }

    NodeId cur = entry_;
    for (int l = max_level_; l > level; --l) cur = greedy_closest(vec, cur, l);

    std::vector<Candidate> entry_points{{sim(cur, vec), cur}};
    for (int l = std::min(level, max_level_); l >= 0; --l) {
      std::vector<Candidate> found = search_layer(vec, entry_points, params_.ef_construction, l);
      std::vector<NodeId> chosen = select_neighbors(vec, found, params_.max_degree(l));
      if (l == 0) attach_tree_parent(node, vec, found, chosen);
      for (NodeId nb : chosen) {
        links_[node][l].push_back(nb);
        links_[nb][l].push_back(node);
      }
      for (NodeId nb : chosen) {
        if (links_[nb][l].size() > params_.max_degree(l)) shrink(nb, l);
      }
      entry_points = std::move(found);
    }

    if (level > max_level_) {
      entry_ = node;
      max_level_ = level;
    }
  }

  /// Greedy descent through the upper layers, then a layer-0 beam of width
  /// max(ef_search, k). Results follow hit_before order.
  std::vector<ScoredHit> search(const VectorType& query, std::size_t k, std::size_t ef_search) const {
    check_dim(query);
    if (entry_ == kNone || k == 0) return {};
    NodeId cur = entry_;
    for (int l = max_level_; l > 0; --l) cur = greedy_closest(query, cur, l);
    const std::size_t ef = std::max(ef_search, k);
    const auto found = search_layer(query, {{sim(cur, query), cur}}, ef, 0);
    std::vector<ScoredHit> hits;
    hits.reserve(found.size());
    for (const auto& c : found) hits.push_back({ids_[c.node], static_cast<double>(c.sim)});
    std::sort(hits.begin(), hits.end(), hit_before);
    if (hits.size() > k) hits.resize(k);
    return hits;
  }

  std::vector<ScoredHit> search(const VectorType& query, std::size_t k) const {
    return search(query, k, params_.ef_search);
  }

  std::size_t size() const { return ids_.size(); }
  bool empty() const { return ids_.empty(); }
  std::size_t dim() const { return dim_; }
  const HnswParams& params() const { return params_; }
  NodeId entry_point() const { return entry_; }
  int max_level() const { return max_level_; }
  int level(NodeId n) const { return levels_.at(n); }
  const std::string& doc_id(NodeId n) const { return ids_.at(n); }
  const VectorType& vector(NodeId n) const { return vectors_.at(n); }
  const std::vector<NodeId>& neighbors(NodeId n, int layer) const {
    return links_.at(n).at(static_cast<std::size_t>(layer));
  }
  bool contains(const std::string& id) const { return by_id_.count(id) != 0; }

  AuditReport audit() const {
    AuditReport report;
    auto fail = [&](std::string msg) {
      if (report.violations.size() < 32) report.violations.push_back(std::move(msg));
    };
    const std::size_t n = ids_.size();
    if (n == 0) {
      if (entry_ != kNone) fail("empty index has an entry point");
      return report;
    }
    if (entry_ >= n) {
      fail("entry point out of range");
      return report;
    }
    const int top = *std::max_element(levels_.begin(), levels_.end());
    if (levels_[entry_] != max_level_ || top != max_level_) {
      fail("entry point is not on the top layer");
    }
    for (NodeId u = 0; u < n; ++u) {
      if (links_[u].size() != static_cast<std::size_t>(levels_[u]) + 1) {
        fail("node " + std::to_string(u) + " adjacency does not match its level");
        continue;
      }
      for (int l = 0; l <= levels_[u]; ++l) {
        const auto& adj = links_[u][l];
        if (adj.size() > params_.max_degree(l)) {
          fail("node " + std::to_string(u) + " exceeds degree bound on layer " + std::to_string(l));
        }
        std::vector<NodeId> sorted = adj;
        std::sort(sorted.begin(), sorted.end());
        if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end()) {
          fail("node " + std::to_string(u) + " has a repeated edge on layer " + std::to_string(l));
        }
        for (NodeId v : adj) {
          if (v >= n || v == u) {
            fail("node " + std::to_string(u) + " has an invalid neighbor");
            continue;
          }
          if (levels_[v] < l) {
            fail("node " + std::to_string(v) + " linked on layer " + std::to_string(l) +
                 " above its level");
            continue;
          }
          const auto& back = links_[v][l];
          if (std::find(back.begin(), back.end(), u) == back.end()) {
            fail("edge " + std::to_string(u) + "->" + std::to_string(v) + " on layer " +
                 std::to_string(l) + " is not bidirectional");
          }
        }
      }
    }
    std::vector<char> seen(n, 0);
    std::vector<NodeId> stack{entry_};
    seen[entry_] = 1;
    std::size_t reached = 1;
    while (!stack.empty()) {
      const NodeId u = stack.back();
      stack.pop_back();
      for (NodeId v : links_[u][0]) {
        if (v < n && !seen[v]) {
          seen[v] = 1;
          ++reached;
          stack.push_back(v);
        }
      }
    }
    if (reached != n) {
      fail(std::to_string(n - reached) + " node(s) unreachable from the entry point on layer 0");
    }
    return report;
  }

  /// Same documents, vectors, levels and adjacency.
  bool same_graph(const HnswIndex& other) const {
    return dim_ == other.dim_ && ids_ == other.ids_ && levels_ == other.levels_ &&
           links_ == other.links_ && entry_ == other.entry_ && max_level_ == other.max_level_ &&
           vectors_equal(other);
  }

  // Snapshot layout is described in docs/index_format.md.
  void save(std::ostream& out) const {
    out.write(kMagic, sizeof(kMagic));
    put<std::uint32_t>(out, kSnapshotVersion);
    put<std::uint32_t>(out, sizeof(Scalar));
    put<std::uint64_t>(out, dim_);
    put<std::uint64_t>(out, params_.m);
    put<std::uint64_t>(out, params_.ef_construction);
    put<std::uint64_t>(out, params_.ef_search);
    put_f64(out, params_.level_lambda);
    put<std::uint64_t>(out, params_.seed);
    put<std::uint8_t>(out, params_.heuristic_pruning ? 1 : 0);
    put<std::uint64_t>(out, ids_.size());
    put<std::uint32_t>(out, entry_);
    put<std::int32_t>(out, max_level_);
    std::ostringstream rng_state;
    rng_state << rng_;
    put_string(out, rng_state.str());
    for (std::size_t u = 0; u < ids_.size(); ++u) {
      put_string(out, ids_[u]);
      put<std::int32_t>(out, levels_[u]);
      put<std::uint32_t>(out, parent_[u]);
      for (Eigen::Index i = 0; i < vectors_[u].size(); ++i) put_scalar(out, vectors_[u][i]);
      for (const auto& adj : links_[u]) {
        put<std::uint32_t>(out, static_cast<std::uint32_t>(adj.size()));
        for (NodeId v : adj) put<std::uint32_t>(out, v);
      }
    }
    if (!out) throw Error(ErrorKind::io, "failed writing index snapshot");
  }

  /// Throws format on bad magic, version, scalar width or inconsistent data.
  static HnswIndex load(std::istream& in) {
    char magic[sizeof(kMagic)];
    in.read(magic, sizeof(magic));
    if (!in || std::memcmp(magic, kMagic, sizeof(kMagic)) != 0) {
      throw Error(ErrorKind::format, "not an index snapshot (bad magic)");
    }
    if (get<std::uint32_t>(in) != kSnapshotVersion) {
      throw Error(ErrorKind::format, "unsupported index snapshot version");
    }
    if (get<std::uint32_t>(in) != sizeof(Scalar)) {
      throw Error(ErrorKind::format, "index snapshot scalar width mismatch");
    }
    const auto dim = get<std::uint64_t>(in);
    HnswParams p;
    p.m = get<std::uint64_t>(in);
    p.ef_construction = get<std::uint64_t>(in);
    p.ef_search = get<std::uint64_t>(in);
    p.level_lambda = get_f64(in);
    p.seed = get<std::uint64_t>(in);
    p.heuristic_pruning = get<std::uint8_t>(in) != 0;
    if (dim == 0 || dim > (1u << 20)) throw Error(ErrorKind::format, "bad snapshot dim");
    HnswIndex index(dim, p);
    const auto count = get<std::uint64_t>(in);
    if (count >= kNone) throw Error(ErrorKind::format, "bad snapshot count");
    index.entry_ = get<std::uint32_t>(in);
    index.max_level_ = get<std::int32_t>(in);
    std::istringstream rng_state(get_string(in));
    rng_state >> index.rng_;
    for (std::uint64_t u = 0; u < count; ++u) {
      std::string id = get_string(in);
      const auto level = get<std::int32_t>(in);
      if (level < 0 || level > kMaxLevel) throw Error(ErrorKind::format, "bad node level");
      const auto parent = get<std::uint32_t>(in);
      VectorType v(static_cast<Eigen::Index>(dim));
      for (std::uint64_t i = 0; i < dim; ++i) v[static_cast<Eigen::Index>(i)] = get_scalar(in);
      std::vector<std::vector<NodeId>> adj(static_cast<std::size_t>(level) + 1);
      for (auto& list : adj) {
        const auto deg = get<std::uint32_t>(in);
        if (deg > 2 * p.m) throw Error(ErrorKind::format, "node degree exceeds bound");
        list.resize(deg);
        for (auto& nb : list) {
          nb = get<std::uint32_t>(in);
          if (nb >= count) throw Error(ErrorKind::format, "neighbor id out of range");
        }
      }
      if (!index.by_id_.emplace(id, static_cast<NodeId>(u)).second) {
        throw Error(ErrorKind::format, "duplicate id in snapshot");
      }
      index.ids_.push_back(std::move(id));
      index.levels_.push_back(level);
      index.parent_.push_back(parent);
      index.vectors_.push_back(std::move(v));
      index.links_.push_back(std::move(adj));
    }
    if (!in) throw Error(ErrorKind::format, "truncated index snapshot");
    if ((count == 0) != (index.entry_ == kNone) || (count > 0 && index.entry_ >= count)) {
      throw Error(ErrorKind::format, "bad snapshot entry point");
    }
    index.tree_degree_.assign(count, 0);
    for (std::uint64_t u = 0; u < count; ++u) {
      const NodeId par = index.parent_[u];
      if (par == kNone) continue;
      if (par >= count) throw Error(ErrorKind::format, "parent id out of range");
      ++index.tree_degree_[u];
      ++index.tree_degree_[par];
    }
    return index;
  }

 private:
  struct Candidate {
    Scalar sim;
    NodeId node;
  };
  // Best first: higher similarity, then lower node id.
  static bool better(const Candidate& a, const Candidate& b) {
    return a.sim != b.sim ? a.sim > b.sim : a.node < b.node;
  }
  struct WorseOnTop {
    bool operator()(const Candidate& a, const Candidate& b) const { return better(a, b); }
  };
  struct BestOnTop {
    bool operator()(const Candidate& a, const Candidate& b) const { return better(b, a); }
  };

  static constexpr char kMagic[8] = {'E', 'D', 'P', 'S', 'H', 'N', 'S', 'W'};
  static constexpr std::uint32_t kSnapshotVersion = 1;

  void check_dim(const VectorType& v) const {
    if (static_cast<std::size_t>(v.size()) != dim_) {
      throw Error(ErrorKind::validation, "vector dimension " + std::to_string(v.size()) +
                                             " does not match index dimension " +
                                             std::to_string(dim_));
    }
  }

  Scalar sim(NodeId n, const VectorType& q) const { return similarity<Scalar>(vectors_[n], q); }

  int draw_level() {
    const double u = uniform_open0(rng_);
    const double l = std::floor(-std::log(u) * params_.effective_level_lambda());
    return static_cast<int>(std::min(l, static_cast<double>(kMaxLevel)));
  }

  NodeId greedy_closest(const VectorType& q, NodeId start, int layer) const {
    NodeId cur = start;
    Scalar best = sim(cur, q);
    for (bool moved = true; moved;) {
      moved = false;
      for (NodeId nb : links_[cur][layer]) {
        const Scalar s = sim(nb, q);
        if (s > best) {
          best = s;
          cur = nb;
          moved = true;
        }
      }
    }
    return cur;
  }

  // Per-thread visited marks, reset lazily by bumping a tag.
  struct Visited {
    std::vector<std::uint32_t> marks;
    std::uint32_t tag = 0;
    void reset(std::size_t n) {
      if (marks.size() < n) marks.resize(n, 0);
      if (++tag == 0) {
        std::fill(marks.begin(), marks.end(), 0);
        tag = 1;
      }
    }
    bool visit(NodeId n) {
      if (marks[n] == tag) return false;
      marks[n] = tag;
      return true;
    }
  };

  /// Beam search on one layer. Returns up to ef nodes, best first.
  std::vector<Candidate> search_layer(const VectorType& q, const std::vector<Candidate>& entry_points,
                                      std::size_t ef, int layer) const {
    thread_local Visited visited;
    visited.reset(ids_.size());
    std::priority_queue<Candidate, std::vector<Candidate>, BestOnTop> frontier;
    std::priority_queue<Candidate, std::vector<Candidate>, WorseOnTop> results;
    for (const auto& ep : entry_points) {
      if (!visited.visit(ep.node)) continue;
      frontier.push(ep);
      results.push(ep);
      if (results.size() > ef) results.pop();
    }
    while (!frontier.empty()) {
      const Candidate c = frontier.top();
      if (results.size() >= ef && c.sim < results.top().sim) break;
      frontier.pop();
      for (NodeId nb : links_[c.node][layer]) {
        if (!visited.visit(nb)) continue;
        const Candidate cand{sim(nb, q), nb};
        if (results.size() < ef || cand.sim > results.top().sim) {
          frontier.push(cand);
          results.push(cand);
          if (results.size() > ef) results.pop();
        }
      }
    }
    std::vector<Candidate> out;
    out.reserve(results.size());
    while (!results.empty()) {
      out.push_back(results.top());
      results.pop();
    }
    std::reverse(out.begin(), out.end());
    return out;
  }

  /// `candidates` best first. Simple mode keeps the nearest `limit`; the
  /// heuristic keeps a candidate only if it is closer to the base than to any
  /// kept neighbor, then tops up with the skipped ones in order.
  std::vector<NodeId> select_neighbors(const VectorType& base, const std::vector<Candidate>& candidates,
                                       std::size_t limit) const {
    (void)base;
    std::vector<NodeId> out;
    if (!params_.heuristic_pruning) {
      for (const auto& c : candidates) {
        if (out.size() == limit) break;
        out.push_back(c.node);
      }
      return out;
    }
    std::vector<NodeId> skipped;
    for (const auto& c : candidates) {
      if (out.size() == limit) break;
      bool diverse = true;
      for (NodeId kept : out) {
        if (similarity<Scalar>(vectors_[c.node], vectors_[kept]) > c.sim) {
          diverse = false;
          break;
        }
      }
      (diverse ? out : skipped).push_back(c.node);
    }
    for (NodeId s : skipped) {
      if (out.size() == limit) break;
      out.push_back(s);
    }
    return out;
  }

  bool tree_edge(NodeId a, NodeId b) const { return parent_[a] == b || parent_[b] == a; }

  void attach_tree_parent(NodeId node, const VectorType& vec, const std::vector<Candidate>& found,
                          std::vector<NodeId>& chosen) {
    const std::size_t cap = params_.max_degree(0);
    NodeId parent = kNone;
    for (const auto& c : found) {
      if (tree_degree_[c.node] < cap) {
        parent = c.node;
        break;
      }
    }
    if (parent == kNone) {
      // Every beam candidate is saturated with tree edges: fall back to the
      // most similar node anywhere that still has room.
      Scalar best = -std::numeric_limits<Scalar>::infinity();
      for (NodeId u = 0; u < node; ++u) {
        if (tree_degree_[u] >= cap) continue;
        const Scalar s = sim(u, vec);
        if (parent == kNone || s > best) {
          best = s;
          parent = u;
        }
      }
    }
    parent_[node] = parent;
    ++tree_degree_[parent];
    ++tree_degree_[node];
    if (std::find(chosen.begin(), chosen.end(), parent) == chosen.end()) {
      if (chosen.size() >= params_.max_degree(0)) chosen.pop_back();
      chosen.push_back(parent);
    }
  }

  /// Brings `node`'s list on `layer` back within its bound, removing each
  /// dropped edge from both endpoints.
  void shrink(NodeId node, int layer) {
    auto& adj = links_[node][layer];
    const std::size_t cap = params_.max_degree(layer);
    std::vector<NodeId> keep;
    std::vector<Candidate> rest;
    for (NodeId nb : adj) {
      if (layer == 0 && tree_edge(node, nb)) {
        keep.push_back(nb);
      } else {
        rest.push_back({similarity<Scalar>(vectors_[node], vectors_[nb]), nb});
      }
    }
    std::sort(rest.begin(), rest.end(), better);
    const std::size_t room = cap - std::min(cap, keep.size());
    std::vector<NodeId> ranked = select_neighbors(vectors_[node], rest, room);
    keep.insert(keep.end(), ranked.begin(), ranked.end());
    for (const auto& c : rest) {
      if (std::find(ranked.begin(), ranked.end(), c.node) != ranked.end()) continue;
      auto& back = links_[c.node][layer];
      back.erase(std::remove(back.begin(), back.end(), node), back.end());
    }
    adj = std::move(keep);
  }

  bool vectors_equal(const HnswIndex& other) const {
    if (vectors_.size() != other.vectors_.size()) return false;
    for (std::size_t i = 0; i < vectors_.size(); ++i) {
      if (vectors_[i] != other.vectors_[i]) return false;
    }
    return true;
  }

  // Little-endian serialization helpers.
  template <typename T>
  static void put(std::ostream& out, T v) {
    using U = std::make_unsigned_t<T>;
    const U u = static_cast<U>(v);
    for (std::size_t i = 0; i < sizeof(T); ++i) out.put(static_cast<char>((u >> (8 * i)) & 0xFF));
  }
  template <typename T>
  static T get(std::istream& in) {
    using U = std::make_unsigned_t<T>;
    U u = 0;
    for (std::size_t i = 0; i < sizeof(T); ++i) {
      const int c = in.get();
      if (c == std::char_traits<char>::eof()) throw Error(ErrorKind::format, "truncated index snapshot");
      u |= static_cast<U>(static_cast<U>(c & 0xFF) << (8 * i));
    }
    return static_cast<T>(u);
  }
  static void put_f64(std::ostream& out, double d) { put<std::uint64_t>(out, std::bit_cast<std::uint64_t>(d)); }
  static double get_f64(std::istream& in) { return std::bit_cast<double>(get<std::uint64_t>(in)); }
  static void put_scalar(std::ostream& out, Scalar s) {
    if constexpr (sizeof(Scalar) == 4) {
      put<std::uint32_t>(out, std::bit_cast<std::uint32_t>(s));
    } else {
      put<std::uint64_t>(out, std::bit_cast<std::uint64_t>(s));
    }
  }
  static Scalar get_scalar(std::istream& in) {
    if constexpr (sizeof(Scalar) == 4) {
      return std::bit_cast<Scalar>(get<std::uint32_t>(in));
    } else {
      return std::bit_cast<Scalar>(get<std::uint64_t>(in));
    }
  }
  static void put_string(std::ostream& out, const std::string& s) {
    put<std::uint32_t>(out, static_cast<std::uint32_t>(s.size()));
    out.write(s.data(), static_cast<std::streamsize>(s.size()));
  }
  static std::string get_string(std::istream& in) {
    const auto n = get<std::uint32_t>(in);
    if (n > (1u << 24)) throw Error(ErrorKind::format, "oversized string in snapshot");
    std::string s(n, '\0');
    in.read(s.data(), n);
    if (!in) throw Error(ErrorKind::format, "truncated index snapshot");
    return s;
  }

  std::size_t dim_;
  HnswParams params_;
  std::mt19937_64 rng_;
  std::vector<std::string> ids_;
  std::unordered_map<std::string, NodeId> by_id_;
  std::vector<VectorType> vectors_;
  std::vector<int> levels_;
  std::vector<std::vector<std::vector<NodeId>>> links_;  // [node][layer]
  std::vector<NodeId> parent_;                           // layer-0 tree parent
  std::vector<std::size_t> tree_degree_;                 // protected layer-0 edges
  NodeId entry_ = kNone;
  int max_level_ = -1;
};

using HnswIndexf = HnswIndex<float>;

}  // namespace edupsy::retrieval
