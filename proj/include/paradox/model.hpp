#pragma once

// Finite ∈-structures and classes over them.
//
// A Structure on n elements stores, for each element e, its extension
// ext(e) = {x | x ∈ e} as a Subset. A class is any subset of the domain; it is a
// set in the structure when some element has exactly that extension.
//
// Structure bitmap: bit (x*n + y) is set iff x ∈ y. Enumeration order is the
// numeric order of this bitmap.

#include <cstddef>
#include <cstdint>
#include <optional>
#include <regex>
#include <sstream>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "paradox/error.hpp"
#include "paradox/subset.hpp"

namespace paradox {

class Structure {
 public:
  /// Largest n whose relation fits a 64-bit bitmap.
  static constexpr std::size_t max_bitmap_size = 8;

  Structure() = default;
  explicit Structure(std::size_t n) : ext_(n) {
    require_small_domain(n, "Structure");
  }

  static Structure from_bitmap(std::size_t n, std::uint64_t bitmap) {
    if (n > max_bitmap_size) throw budget_error("Structure::from_bitmap: size " + std::to_string(n) + " too large");
    Structure m(n);
    for (std::size_t x = 0; x < n; ++x)
      for (std::size_t y = 0; y < n; ++y)
        if ((bitmap >> (x * n + y)) & 1u) m.ext_[y].insert(x);
    return m;
  }

  std::size_t size() const { return ext_.size(); }
  Subset domain() const { return Subset::full(size()); }

  /// x ∈ y
  bool member(std::size_t x, std::size_t y) const { return ext_.at(y).contains(x); }
  void set_member(std::size_t x, std::size_t y, bool value = true) {
    if (value)
      ext_.at(y).insert(x);
    else
      ext_.at(y).erase(x);
  }

  /// {x | x ∈ e}
  Subset extension_of(std::size_t e) const { return ext_.at(e); }

  std::uint64_t bitmap() const {
    if (size() > max_bitmap_size) throw budget_error("Structure::bitmap: size too large");
    std::uint64_t b = 0;
    const std::size_t n = size();
    for (std::size_t y = 0; y < n; ++y)
      ext_[y].for_each([&](std::size_t x) { b |= std::uint64_t{1} << (x * n + y); });
    return b;
  }

  const std::vector<std::string>& labels() const { return labels_; }
  void set_labels(std::vector<std::string> labels) {
    if (!labels.empty() && labels.size() != size()) throw precondition_error("label count does not match size");
    labels_ = std::move(labels);
  }
  std::string name(std::size_t e) const { return e < labels_.size() ? labels_[e] : std::to_string(e); }
  std::optional<std::size_t> find(std::string_view label) const {
    for (std::size_t i = 0; i < labels_.size(); ++i)
      if (labels_[i] == label) return i;
    return std::nullopt;
  }

  friend bool operator==(const Structure& a, const Structure& b) { return a.ext_ == b.ext_; }

 private:
  std::vector<Subset> ext_;
  std::vector<std::string> labels_;
};

inline std::string to_string(const Structure& m, Subset s) { return to_string(s, m.labels()); }

/// Parses `elements a b ...` followed by `member x y` lines.
inline Structure load_structure(std::string_view text) {
  static const std::regex name_re("[a-z][a-z0-9_]*");
  std::istringstream in{std::string(text)};
  std::string raw;
  std::size_t line_no = 0;
  std::optional<Structure> m;
  std::unordered_map<std::string, std::size_t> index;
  while (std::getline(in, raw)) {
    ++line_no;
    if (auto hash = raw.find('#'); hash != std::string::npos) raw.resize(hash);
    std::istringstream ls(raw);
    std::string word;
    if (!(ls >> word)) continue;
    if (word == "elements") {
      if (m) throw input_error("duplicate elements line", line_no);
      std::vector<std::string> names;
      for (std::string nm; ls >> nm;) {
        if (!std::regex_match(nm, name_re)) throw input_error("bad element name '" + nm + "'", line_no);
        if (!index.emplace(nm, names.size()).second) throw input_error("duplicate element '" + nm + "'", line_no);
        names.push_back(nm);
      }
      if (names.size() > Subset::max_elements)
        throw input_error("size mismatch: " + std::to_string(names.size()) + " elements exceed 64", line_no);
      m.emplace(names.size());
      m->set_labels(std::move(names));
    } else if (word == "member") {
      if (!m) throw input_error("member line before elements line", line_no);
      std::string x, y, extra;
      if (!(ls >> x >> y)) throw input_error("member expects two names", line_no);
      if (ls >> extra) throw input_error("size mismatch: member takes two names, found more", line_no);
      auto ix = index.find(x);
      auto iy = index.find(y);
      if (ix == index.end()) throw input_error("dangling name '" + x + "'", line_no);
      if (iy == index.end()) throw input_error("dangling name '" + y + "'", line_no);
      m->set_member(ix->second, iy->second);
    } else {
      throw input_error("unknown declaration '" + word + "'", line_no);
    }
  }
  if (!m) throw input_error("missing elements line");
  return std::move(*m);
}

inline std::string format_structure(const Structure& m) {
  std::ostringstream os;
  os << "elements";
  for (std::size_t i = 0; i < m.size(); ++i) os << ' ' << m.name(i);
  os << '\n';
  for (std::size_t y = 0; y < m.size(); ++y)
    for (std::size_t x = 0; x < m.size(); ++x)
      if (m.member(x, y)) os << "member " << m.name(x) << ' ' << m.name(y) << '\n';
  return os.str();
}

/// Where a class came from; metadata only, never part of class identity.
struct ClassOrigin {
  enum class Kind { explicit_, formula, builder } kind = Kind::explicit_;
  std::string text;  // formula source or builder name
};

struct ClassRef {
  Subset extension;
  ClassOrigin origin;
};

inline ClassRef explicit_class(Subset s) { return ClassRef{s, {}}; }

/// Productive choice: for each represented s ⊆ C, a witness x ∈ C ∖ ext(s).
struct ProductiveChoiceCertificate {
  struct Entry {
    std::size_t subset_element;
    std::size_t witness;
  };
  std::vector<Entry> entries;  // ascending subset_element
};

struct Verdict {
  enum class Status { set, paradoxical } status = Status::set;
  std::optional<std::size_t> representative;  // when status == set
  ProductiveChoiceCertificate certificate;    // when status == paradoxical

  bool is_set() const { return status == Status::set; }
};

/// Least element whose extension is exactly C, if any.
inline std::optional<std::size_t> is_represented(const Structure& m, Subset c) {
  for (std::size_t e = 0; e < m.size(); ++e)
    if (m.extension_of(e) == c) return e;
  return std::nullopt;
}
inline std::optional<std::size_t> is_represented(const Structure& m, const ClassRef& c) {
  return is_represented(m, c.extension);
}

/// Elements with no infinite descending ∈-chain: the least class closed
/// under "all members already in".
inline Subset grounded_elements(const Structure& m) {
  Subset wf;
  for (bool grew = true; grew;) {
    grew = false;
    for (std::size_t e = 0; e < m.size(); ++e)
      if (!wf.contains(e) && m.extension_of(e).subset_of(wf)) {
        wf.insert(e);
        grew = true;
      }
  }
  return wf;
}

/// Elements e with e ∈ⁿ e (a membership path of exactly n steps from e to e).
inline Subset n_cyclic_elements(const Structure& m, std::size_t n) {
  Subset out;
  if (n == 0) return out;
  for (std::size_t e = 0; e < m.size(); ++e) {
    Subset frontier = Subset::single(e);
    for (std::size_t step = 0; step < n; ++step) {
      Subset next;
      for (std::size_t y = 0; y < m.size(); ++y)
        if (!(m.extension_of(y) & frontier).empty()) next.insert(y);
      frontier = next;
    }
    if (frontier.contains(e)) out.insert(e);
  }
  return out;
}

inline constexpr std::size_t default_structure_cap = 4;

inline std::uint64_t structure_count(std::size_t n) {
  if (n * n >= 64) throw budget_error("structure count overflows for n=" + std::to_string(n));
  return std::uint64_t{1} << (n * n);
}

/// Calls f(structure) for all 2^(n²) relations on n elements, in bitmap order.
template <class F>
void for_each_structure(std::size_t n, F&& f, std::size_t cap = default_structure_cap) {
  if (n > cap)
    throw budget_error("enumerate_structures: n=" + std::to_string(n) + " exceeds cap " + std::to_string(cap));
  const std::uint64_t total = structure_count(n);
  for (std::uint64_t b = 0; b < total; ++b) f(Structure::from_bitmap(n, b));
}

/// Materialized form of for_each_structure; only sensible for small n.
inline std::vector<Structure> enumerate_structures(std::size_t n, std::size_t cap = default_structure_cap) {
  std::vector<Structure> out;
  for_each_structure(n, [&](Structure m) { out.push_back(std::move(m)); }, cap);
  return out;
}

}  // namespace paradox
