#pragma once

// Canonical store of finite sets: hereditarily finite (grounded) sets and
// graph-presented hypersets, quotiented by bisimulation.
//
// Every node in a SetStore is pairwise non-bisimilar, so handle equality is set
// equality. For grounded sets that is plain extensionality; for hypersets it is
// Aczel-style bisimilarity (so Ω = {Ω} has exactly one handle).
//
// Canonical order: grounded sets come first, ordered by Ackermann code
// (code(s) = Σ 2^code(m) over members m); hypersets follow, ordered by
// (|Tr(x)|, root label, sorted labelled edge list of Tr(x)), where labels come
// from a colour refinement that is invariant under isomorphism. Member lists are
// kept sorted in this order.
//
// Tr(x) here contains x itself: Tr(x) = ∩{C | C transitive and x ∈ C}. Some texts
// use the closure of the members only.

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <deque>
#include <map>
#include <optional>
#include <span>
#include <sstream>
#include <string>
#include <string_view>
#include <unordered_map>
#include <utility>
#include <vector>

#include "paradox/error.hpp"

namespace paradox {

/// Opaque identifier of a set inside one SetStore. Equal handles ⇔ equal sets.
/// The defaulted ordering is by insertion id, not the canonical order; use
/// SetStore::less (or SetStore::canonical_less()) for that.
struct SetHandle {
  std::uint32_t id = 0;
  friend constexpr auto operator<=>(SetHandle, SetHandle) = default;
};

/// A finite pointed graph; edge (m, p) means node m ∈ node p.
struct MembershipGraph {
  std::size_t node_count = 0;
  std::vector<std::pair<std::size_t, std::size_t>> edges;
  std::size_t root = 0;
};

/// Parses `nodes N`, `edge m p`, `root r` lines (0-based, `#` comments).
inline MembershipGraph parse_membership_graph(std::string_view text) {
  MembershipGraph g;
  bool have_nodes = false;
  bool have_root = false;
  std::istringstream in{std::string(text)};
  std::string raw;
  std::size_t line_no = 0;
  auto read_index = [&](std::istringstream& ls, const char* what) {
    long long v = -1;
    if (!(ls >> v) || v < 0) throw input_error(std::string("expected non-negative index for ") + what, line_no);
    return static_cast<std::size_t>(v);
  };
  while (std::getline(in, raw)) {
    ++line_no;
    if (auto hash = raw.find('#'); hash != std::string::npos) raw.resize(hash);
    std::istringstream ls(raw);
    std::string word;
    if (!(ls >> word)) continue;
    if (word == "nodes") {
      if (have_nodes) throw input_error("duplicate nodes line", line_no);
      g.node_count = read_index(ls, "nodes");
      have_nodes = true;
    } else if (word == "edge") {
      std::size_t m = read_index(ls, "edge member");
      std::size_t p = read_index(ls, "edge parent");
      g.edges.emplace_back(m, p);
    } else if (word == "root") {
      if (have_root) throw input_error("duplicate root line", line_no);
      g.root = read_index(ls, "root");
      have_root = true;
    } else {
      throw input_error("unknown declaration '" + word + "'", line_no);
    }
    std::string extra;
    if (ls >> extra) throw input_error("trailing token '" + extra + "'", line_no);
  }
  if (!have_nodes) throw input_error("missing nodes line");
  if (!have_root) throw input_error("missing root line");
  return g;
}

inline std::string format_membership_graph(const MembershipGraph& g) {
  std::ostringstream os;
  os << "nodes " << g.node_count << '\n';
  for (auto [m, p] : g.edges) os << "edge " << m << ' ' << p << '\n';
  os << "root " << g.root << '\n';
  return os.str();
}

enum class SetOp { empty, adjoin, pair, singleton, ordered_pair, union_, powerset, successor };

struct SetClassification {
  bool grounded = true;
  std::optional<std::size_t> rank;  // undefined for ungrounded sets
  std::vector<std::size_t> n_cycles;  // n in 1..bound with x ∈ⁿ x
};

class SetStore {
 public:
  static constexpr std::size_t default_powerset_budget = std::size_t{1} << 16;
  static constexpr std::size_t default_isomorphism_budget = 64;

  SetStore() = default;

  std::size_t size() const { return nodes_.size(); }

  /// After freezing, constructors only succeed when the result already exists.
  void freeze() { frozen_ = true; }
  bool frozen() const { return frozen_; }

  // ---- construction -------------------------------------------------------

  SetHandle empty() { return make_set({}); }

  /// The set whose members are exactly `members` (duplicates ignored).
  SetHandle make_set(std::span<const SetHandle> members) {
    std::vector<SetHandle> key(members.begin(), members.end());
    std::sort(key.begin(), key.end());
    key.erase(std::unique(key.begin(), key.end()), key.end());
    for (auto m : key) check_handle(m);
    if (auto it = by_members_.find(key); it != by_members_.end()) return SetHandle{it->second};
    if (frozen_) throw contract_error("SetStore is frozen; set not present");

    Node n;
    n.grounded = std::all_of(key.begin(), key.end(), [&](SetHandle m) { return node(m).grounded; });
    if (n.grounded) {
      std::size_t r = 0;
      bool small = true;
      std::uint64_t code = 0;
      for (auto m : key) {
        r = std::max(r, node(m).rank + 1);
        const auto& c = node(m).code;
        if (!c || *c >= 64) {
          small = false;
        } else {
          code |= std::uint64_t{1} << *c;
        }
      }
      n.rank = r;
      if (small) n.code = code;
    }
    n.by_id = key;
    n.members = key;
    SetHandle h{static_cast<std::uint32_t>(nodes_.size())};
    nodes_.push_back(std::move(n));
    by_members_.emplace(key, h.id);
    if (!nodes_.back().grounded) {
      ungrounded_.push_back(h);
      nodes_[h.id].hyper_key = compute_hyper_key(h);
    }
    sort_canonical(nodes_[h.id].members);
    return h;
  }

  SetHandle make_set(std::initializer_list<SetHandle> members) {
    return make_set(std::span<const SetHandle>(members.begin(), members.size()));
  }

  /// s ∪ {a}
  SetHandle adjoin(SetHandle s, SetHandle a) {
    std::vector<SetHandle> m(node(s).by_id);
    m.push_back(a);
    return make_set(m);
  }
  SetHandle singleton(SetHandle a) { return make_set({a}); }
  SetHandle pair(SetHandle a, SetHandle b) { return make_set({a, b}); }
  /// Kuratowski pair {{a},{a,b}}.
  SetHandle ordered_pair(SetHandle a, SetHandle b) { return make_set({singleton(a), pair(a, b)}); }
  /// s⁺ = s ∪ {s}
  SetHandle successor(SetHandle s) { return adjoin(s, s); }

  /// ∪s
  SetHandle big_union(SetHandle s) {
    std::vector<SetHandle> out;
    for (auto m : node(s).by_id) {
      const auto& mm = node(m).by_id;
      out.insert(out.end(), mm.begin(), mm.end());
    }
    return make_set(out);
  }

  /// a ∪ b
  SetHandle set_union(SetHandle a, SetHandle b) {
    std::vector<SetHandle> out(node(a).by_id);
    out.insert(out.end(), node(b).by_id.begin(), node(b).by_id.end());
    return make_set(out);
  }

  /// P(s); allowed for hypersets too, but the number of subsets is capped.
  SetHandle powerset(SetHandle s, std::size_t budget = default_powerset_budget) {
    const auto members = node(s).members;  // copy: the node vector may grow
    if (members.size() >= 63 || (std::size_t{1} << members.size()) > budget)
      throw budget_error("powerset: 2^" + std::to_string(members.size()) + " subsets exceed budget " +
                         std::to_string(budget));
    std::vector<SetHandle> subsets;
    std::vector<SetHandle> buf;
    const std::uint64_t count = std::uint64_t{1} << members.size();
    subsets.reserve(count);
    for (std::uint64_t mask = 0; mask < count; ++mask) {
      buf.clear();
      for (std::size_t i = 0; i < members.size(); ++i)
        if ((mask >> i) & 1u) buf.push_back(members[i]);
      subsets.push_back(make_set(buf));
    }
    return make_set(subsets);
  }

  SetHandle construct(SetOp op, std::span<const SetHandle> args) {
    auto need = [&](std::size_t n, const char* name) {
      if (args.size() != n)
        throw precondition_error(std::string(name) + " expects " + std::to_string(n) + " argument(s), got " +
                                 std::to_string(args.size()));
    };
    switch (op) {
      case SetOp::empty: need(0, "empty"); return empty();
      case SetOp::adjoin: need(2, "adjoin"); return adjoin(args[0], args[1]);
      case SetOp::pair: need(2, "pair"); return pair(args[0], args[1]);
      case SetOp::singleton: need(1, "singleton"); return singleton(args[0]);
      case SetOp::ordered_pair: need(2, "ordered_pair"); return ordered_pair(args[0], args[1]);
      case SetOp::union_: need(1, "union"); return big_union(args[0]);
      case SetOp::powerset: need(1, "powerset"); return powerset(args[0]);
      case SetOp::successor: need(1, "successor"); return successor(args[0]);
    }
    throw precondition_error("unknown set operation");
  }

  /// Handle of the bisimulation quotient of `g` at `g.root`.
  SetHandle canonicalize(const MembershipGraph& g) {
    const std::size_t n = g.node_count;
    if (g.root >= n) throw input_error("membership graph: root " + std::to_string(g.root) + " out of range");
    std::vector<std::vector<std::size_t>> kids(n);
    for (auto [m, p] : g.edges) {
      if (m >= n || p >= n)
        throw input_error("membership graph: edge " + std::to_string(m) + " " + std::to_string(p) +
                          " out of range for " + std::to_string(n) + " nodes");
      kids[p].push_back(m);
    }
    std::vector<std::vector<std::size_t>> parents(n);
    for (std::size_t p = 0; p < n; ++p) {
      auto& k = kids[p];
      std::sort(k.begin(), k.end());
      k.erase(std::unique(k.begin(), k.end()), k.end());
      for (auto m : k) parents[m].push_back(p);
    }

    // Grounded nodes, leaves first: a node is grounded once all its members are.
    std::vector<std::size_t> pending(n);
    std::deque<std::size_t> ready;
    for (std::size_t v = 0; v < n; ++v) {
      pending[v] = kids[v].size();
      if (pending[v] == 0) ready.push_back(v);
    }
    std::vector<std::optional<SetHandle>> handle(n);
    std::vector<SetHandle> buf;
    while (!ready.empty()) {
      auto v = ready.front();
      ready.pop_front();
      buf.clear();
      for (auto m : kids[v]) buf.push_back(*handle[m]);
      handle[v] = make_set(buf);
      for (auto p : parents[v])
        if (--pending[p] == 0) ready.push_back(p);
    }
    if (handle[g.root]) return *handle[g.root];

    // Ungrounded part: refine jointly with the store's existing hypersets.
    std::vector<std::size_t> fresh;  // graph nodes still unresolved
    for (std::size_t v = 0; v < n; ++v)
      if (!handle[v]) fresh.push_back(v);
    const std::size_t old_count = ungrounded_.size();
    const std::size_t total = old_count + fresh.size();
    std::vector<std::size_t> fresh_index(n, SIZE_MAX);
    for (std::size_t i = 0; i < fresh.size(); ++i) fresh_index[fresh[i]] = old_count + i;
    std::unordered_map<std::uint32_t, std::size_t> old_index;
    for (std::size_t i = 0; i < old_count; ++i) old_index.emplace(ungrounded_[i].id, i);

    // Child references: atoms (grounded handles) and unresolved indices.
    struct Child {
      bool atom;
      std::size_t value;
    };
    std::vector<std::vector<Child>> children(total);
    for (std::size_t i = 0; i < old_count; ++i)
      for (auto m : node(ungrounded_[i]).by_id) {
        if (node(m).grounded)
          children[i].push_back({true, m.id});
        else
          children[i].push_back({false, old_index.at(m.id)});
      }
    for (std::size_t i = 0; i < fresh.size(); ++i)
      for (auto m : kids[fresh[i]]) {
        if (handle[m])
          children[old_count + i].push_back({true, handle[m]->id});
        else
          children[old_count + i].push_back({false, fresh_index[m]});
      }

    std::vector<std::size_t> block(total, 0);
    std::size_t block_count = 1;
    for (;;) {
      std::map<std::vector<std::size_t>, std::size_t> sigs;
      std::vector<std::size_t> next(total);
      for (std::size_t i = 0; i < total; ++i) {
        std::vector<std::size_t> sig;
        sig.reserve(children[i].size() + 1);
        for (const auto& c : children[i]) sig.push_back(c.atom ? 2 * c.value : 2 * block[c.value] + 1);
        std::sort(sig.begin(), sig.end());
        sig.erase(std::unique(sig.begin(), sig.end()), sig.end());
        sig.insert(sig.begin(), block[i]);
        next[i] = sigs.emplace(std::move(sig), sigs.size()).first->second;
      }
      const bool stable = sigs.size() == block_count;
      block.swap(next);
      block_count = sigs.size();
      if (stable) break;
    }

    // Blocks holding an existing node resolve to it; the rest become new nodes.
    std::vector<std::optional<SetHandle>> block_handle(block_count);
    for (std::size_t i = 0; i < old_count; ++i) block_handle[block[i]] = ungrounded_[i];
    if (frozen_) {
      for (std::size_t i = old_count; i < total; ++i)
        if (!block_handle[block[i]]) throw contract_error("SetStore is frozen; hyperset not present");
    }
    std::vector<SetHandle> created;
    std::vector<std::size_t> representative(block_count, SIZE_MAX);
    for (std::size_t i = old_count; i < total; ++i) {
      auto b = block[i];
      if (block_handle[b]) continue;
      representative[b] = i;
      SetHandle h{static_cast<std::uint32_t>(nodes_.size())};
      nodes_.push_back(Node{});
      nodes_.back().grounded = false;
      block_handle[b] = h;
      created.push_back(h);
    }
    for (std::size_t b = 0; b < block_count; ++b) {
      if (representative[b] == SIZE_MAX) continue;
      std::vector<SetHandle> members;
      for (const auto& c : children[representative[b]])
        members.push_back(c.atom ? SetHandle{static_cast<std::uint32_t>(c.value)} : *block_handle[block[c.value]]);
      std::sort(members.begin(), members.end());
      members.erase(std::unique(members.begin(), members.end()), members.end());
      auto& nd = nodes_[block_handle[b]->id];
      nd.by_id = members;
      nd.members = members;
      by_members_.emplace(members, block_handle[b]->id);
    }
    for (auto h : created) ungrounded_.push_back(h);
    for (auto h : created) nodes_[h.id].hyper_key = compute_hyper_key(h);
    for (auto h : created) sort_canonical(nodes_[h.id].members);
    return *block_handle[block[fresh_index[g.root]]];
  }

  // ---- queries ------------------------------------------------------------

  /// Members in canonical order.
  std::span<const SetHandle> members(SetHandle s) const { return node(s).members; }

  /// x ∈ s
  bool contains(SetHandle s, SetHandle x) const {
    const auto& v = node(s).by_id;
    return std::binary_search(v.begin(), v.end(), x);
  }

  bool subset_of(SetHandle a, SetHandle b) const {
    const auto& va = node(a).by_id;
    const auto& vb = node(b).by_id;
    return std::includes(vb.begin(), vb.end(), va.begin(), va.end());
  }

  bool grounded(SetHandle s) const { return node(s).grounded; }

  std::optional<std::size_t> rank(SetHandle s) const {
    const auto& n = node(s);
    if (!n.grounded) return std::nullopt;
    return n.rank;
  }

  /// Ackermann code when it fits in 64 bits (grounded sets only).
  std::optional<std::uint64_t> small_code(SetHandle s) const { return node(s).code; }

  /// Canonical total order.
  bool less(SetHandle a, SetHandle b) const {
    if (a == b) return false;
    const auto& na = node(a);
    const auto& nb = node(b);
    if (na.grounded != nb.grounded) return na.grounded;
    if (!na.grounded) return na.hyper_key < nb.hyper_key;
    if (na.code && nb.code) return *na.code < *nb.code;
    if (na.code) return true;
    if (nb.code) return false;
    // Highest differing "bit" decides, as in binary comparison of codes.
    auto ia = na.members.rbegin();
    auto ib = nb.members.rbegin();
    for (; ia != na.members.rend() && ib != nb.members.rend(); ++ia, ++ib) {
      if (*ia == *ib) continue;
      return less(*ia, *ib);
    }
    return ia == na.members.rend() && ib != nb.members.rend();
  }

  auto canonical_less() const {
    return [this](SetHandle a, SetHandle b) { return less(a, b); };
  }

  void sort_canonical(std::vector<SetHandle>& v) const { std::sort(v.begin(), v.end(), canonical_less()); }

  /// Tr(x): the least transitive collection containing x, in canonical order.
  std::vector<SetHandle> transitive_closure(SetHandle x) const {
    auto out = closure_ids(x);
    sort_canonical(out);
    return out;
  }

  SetClassification classify(SetHandle x, std::size_t cycle_bound) const {
    SetClassification c;
    c.grounded = grounded(x);
    c.rank = rank(x);
    if (c.grounded) return c;
    auto tr = closure_ids(x);
    std::unordered_map<std::uint32_t, std::size_t> local;
    for (std::size_t i = 0; i < tr.size(); ++i) local.emplace(tr[i].id, i);
    std::vector<char> frontier(tr.size(), 0);
    frontier[local.at(x.id)] = 1;
    for (std::size_t step = 1; step <= cycle_bound; ++step) {
      std::vector<char> next(tr.size(), 0);
      for (std::size_t i = 0; i < tr.size(); ++i)
        if (frontier[i])
          for (auto m : node(tr[i]).by_id) next[local.at(m.id)] = 1;
      frontier.swap(next);
      if (frontier[local.at(x.id)]) c.n_cycles.push_back(step);
    }
    return c;
  }

  /// True iff some bijection F: Tr(x) → Tr(y) satisfies a ∈ b ⇔ F(a) ∈ F(b).
  /// F need not send x to y. Backtracking with degree/rank pruning.
  bool is_isomorphic(SetHandle x, SetHandle y, std::size_t budget = default_isomorphism_budget) const {
    auto tx = closure_ids(x);
    auto ty = closure_ids(y);
    if (tx.size() > budget || ty.size() > budget)
      throw budget_error("is_isomorphic: closure size exceeds budget " + std::to_string(budget));
    if (tx.size() != ty.size()) return false;
    const std::size_t n = tx.size();
    auto adjacency = [&](const std::vector<SetHandle>& t) {
      std::unordered_map<std::uint32_t, std::size_t> local;
      for (std::size_t i = 0; i < t.size(); ++i) local.emplace(t[i].id, i);
      std::vector<std::vector<char>> adj(n, std::vector<char>(n, 0));  // adj[m][p]: m ∈ p
      for (std::size_t p = 0; p < n; ++p)
        for (auto m : node(t[p]).by_id) adj[local.at(m.id)][p] = 1;
      return adj;
    };
    auto ax = adjacency(tx);
    auto ay = adjacency(ty);
    struct Profile {
      std::size_t out_deg, in_deg;
      long long rank;
      bool loop;
      bool operator==(const Profile&) const = default;
    };
    auto profile = [&](const std::vector<SetHandle>& t, const std::vector<std::vector<char>>& adj, std::size_t i) {
      Profile p{0, 0, -1, adj[i][i] != 0};
      for (std::size_t j = 0; j < n; ++j) {
        p.out_deg += adj[j][i];  // members of i
        p.in_deg += adj[i][j];   // sets containing i
      }
      if (auto r = rank(t[i])) p.rank = static_cast<long long>(*r);
      return p;
    };
    std::vector<Profile> px(n), py(n);
    for (std::size_t i = 0; i < n; ++i) {
      px[i] = profile(tx, ax, i);
      py[i] = profile(ty, ay, i);
    }
    // Most constrained first.
    std::vector<std::size_t> order(n);
    for (std::size_t i = 0; i < n; ++i) order[i] = i;
    std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
      return px[a].out_deg + px[a].in_deg > px[b].out_deg + px[b].in_deg;
    });
    std::vector<std::size_t> image(n, SIZE_MAX);
    std::vector<char> used(n, 0);
    auto search = [&](auto&& self, std::size_t depth) -> bool {
      if (depth == n) return true;
      const std::size_t i = order[depth];
      for (std::size_t j = 0; j < n; ++j) {
        if (used[j] || !(px[i] == py[j])) continue;
        bool ok = true;
        for (std::size_t d = 0; d < depth && ok; ++d) {
          const std::size_t k = order[d];
          ok = ax[i][k] == ay[j][image[k]] && ax[k][i] == ay[image[k]][j];
        }
        if (!ok) continue;
        image[i] = j;
        used[j] = 1;
        if (self(self, depth + 1)) return true;
        used[j] = 0;
      }
      image[i] = SIZE_MAX;
      return false;
    };
    return search(search, 0);
  }

  /// For a family of nonempty, pairwise disjoint sets, the set of the
  /// canonically least member of each.
  SetHandle choice_set(SetHandle family) {
    const auto fam = node(family).members;
    for (auto m : fam)
      if (node(m).by_id.empty()) throw precondition_error("choice_set: member " + to_string(m) + " is empty");
    for (std::size_t i = 0; i < fam.size(); ++i)
      for (std::size_t j = i + 1; j < fam.size(); ++j) {
        const auto& a = node(fam[i]).by_id;
        const auto& b = node(fam[j]).by_id;
        std::vector<SetHandle> common;
        std::set_intersection(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(common));
        if (!common.empty())
          throw precondition_error("choice_set: members " + to_string(fam[i]) + " and " + to_string(fam[j]) +
                                   " are not disjoint");
      }
    std::vector<SetHandle> picks;
    for (auto m : fam) picks.push_back(node(m).members.front());
    return make_set(picks);
  }

  /// Brace notation for grounded sets (`{}` is ∅); hypersets print as a
  /// system of equations over their ungrounded closure, root first:
  /// `hyper[x0={x0}]`.
  std::string to_string(SetHandle s) const {
    if (grounded(s)) return grounded_string(s);
    auto tr = transitive_closure(s);
    std::vector<SetHandle> names{s};
    for (auto t : tr)
      if (!grounded(t) && t != s) names.push_back(t);
    auto name_of = [&](SetHandle t) -> std::string {
      if (grounded(t)) return grounded_string(t);
      auto it = std::find(names.begin(), names.end(), t);
      return "x" + std::to_string(it - names.begin());
    };
    std::string out = "hyper[";
    for (std::size_t i = 0; i < names.size(); ++i) {
      if (i) out += "; ";
      out += "x" + std::to_string(i) + "={";
      bool first = true;
      for (auto m : members(names[i])) {
        if (!first) out += ",";
        first = false;
        out += name_of(m);
      }
      out += "}";
    }
    return out + "]";
  }

  /// Every handle currently in the store, in canonical order.
  std::vector<SetHandle> all() const {
    std::vector<SetHandle> out(nodes_.size());
    for (std::size_t i = 0; i < out.size(); ++i) out[i] = SetHandle{static_cast<std::uint32_t>(i)};
    sort_canonical(out);
    return out;
  }

 private:
  struct Node {
    std::vector<SetHandle> members;  // canonical order
    std::vector<SetHandle> by_id;    // id order; lookup key
    bool grounded = true;
    std::size_t rank = 0;
    std::optional<std::uint64_t> code;
    std::vector<std::uint32_t> hyper_key;
  };

  struct KeyHash {
    std::size_t operator()(const std::vector<SetHandle>& v) const noexcept {
      std::size_t h = v.size();
      for (auto x : v) h ^= x.id + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
      return h;
    }
  };

  const Node& node(SetHandle h) const {
    check_handle(h);
    return nodes_[h.id];
  }

  void check_handle(SetHandle h) const {
    if (h.id >= nodes_.size()) throw contract_error("SetHandle " + std::to_string(h.id) + " not in this store");
  }

  std::vector<SetHandle> closure_ids(SetHandle x) const {
    std::vector<SetHandle> out{x};
    std::unordered_map<std::uint32_t, char> seen{{x.id, 1}};
    for (std::size_t i = 0; i < out.size(); ++i)
      for (auto m : node(out[i]).by_id)
        if (seen.emplace(m.id, 1).second) out.push_back(m);
    return out;
  }

  std::string grounded_string(SetHandle s) const {
    std::string out = "{";
    bool first = true;
    for (auto m : members(s)) {
      if (!first) out += ",";
      first = false;
      out += grounded_string(m);
    }
    return out + "}";
  }

  // (|Tr|, root label, sorted (member label, parent label) pairs) under an
  // isomorphism-invariant labelling of Tr(x). Grounded nodes are labelled by
  // Ackermann position; ungrounded ones by colour refinement, which ends
  // discrete because stored nodes are pairwise non-bisimilar.
  std::vector<std::uint32_t> compute_hyper_key(SetHandle x) const {
    auto tr = closure_ids(x);
    std::vector<SetHandle> grounded_part;
    std::vector<SetHandle> hyper_part;
    for (auto t : tr) (node(t).grounded ? grounded_part : hyper_part).push_back(t);
    sort_canonical(grounded_part);
    std::unordered_map<std::uint32_t, std::size_t> color;
    for (std::size_t i = 0; i < grounded_part.size(); ++i) color[grounded_part[i].id] = i;
    const std::size_t g = grounded_part.size();
    for (auto h : hyper_part) color[h.id] = g;
    std::size_t classes = 1;
    for (;;) {
      std::vector<std::vector<std::size_t>> sigs(hyper_part.size());
      for (std::size_t i = 0; i < hyper_part.size(); ++i) {
        auto& sig = sigs[i];
        for (auto m : node(hyper_part[i]).by_id) sig.push_back(color.at(m.id));
        std::sort(sig.begin(), sig.end());
        sig.insert(sig.begin(), color.at(hyper_part[i].id));
      }
      auto distinct = sigs;
      std::sort(distinct.begin(), distinct.end());
      distinct.erase(std::unique(distinct.begin(), distinct.end()), distinct.end());
      for (std::size_t i = 0; i < hyper_part.size(); ++i)
        color[hyper_part[i].id] =
            g + static_cast<std::size_t>(std::lower_bound(distinct.begin(), distinct.end(), sigs[i]) - distinct.begin());
      if (distinct.size() == classes) break;
      classes = distinct.size();
    }
    std::vector<std::uint32_t> key{static_cast<std::uint32_t>(tr.size()), static_cast<std::uint32_t>(color.at(x.id))};
    std::vector<std::pair<std::uint32_t, std::uint32_t>> edges;
    for (auto t : tr)
      for (auto m : node(t).by_id)
        edges.emplace_back(static_cast<std::uint32_t>(color.at(m.id)), static_cast<std::uint32_t>(color.at(t.id)));
    std::sort(edges.begin(), edges.end());
    for (auto [m, p] : edges) {
      key.push_back(m);
      key.push_back(p);
    }
    return key;
  }

  std::vector<Node> nodes_;
  std::unordered_map<std::vector<SetHandle>, std::uint32_t, KeyHash> by_members_;
  std::vector<SetHandle> ungrounded_;
  bool frozen_ = false;
};

/// V_d: all grounded sets of rank < d, in canonical order. |V_{k+1}| = 2^|V_k|.
inline std::vector<SetHandle> rank_universe(SetStore& store, std::size_t d,
                                            std::size_t budget = SetStore::default_powerset_budget) {
  std::vector<SetHandle> level;  // V_0 = ∅
  for (std::size_t k = 0; k < d; ++k) {
    SetHandle vk = store.make_set(level);
    SetHandle next = store.powerset(vk, budget);
    auto m = store.members(next);
    level.assign(m.begin(), m.end());
  }
  return level;
}

/// Von Neumann natural n.
inline SetHandle von_neumann(SetStore& store, std::size_t n) {
  SetHandle x = store.empty();
  for (std::size_t i = 0; i < n; ++i) x = store.successor(x);
  return x;
}

/// Grounded x is a von Neumann ordinal: transitive, and every member transitive.
inline bool is_ordinal(const SetStore& store, SetHandle x) {
  if (!store.grounded(x)) return false;
  auto transitive = [&](SetHandle s) {
    for (auto m : store.members(s))
      if (!store.subset_of(m, s)) return false;
    return true;
  };
  if (!transitive(x)) return false;
  for (auto m : store.members(x))
    if (!transitive(m)) return false;
  return true;
}

}  // namespace paradox
