#pragma once

#include <cstdint>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

namespace paradox {

/// Line-oriented, machine-parseable check report.
///
///     REPORT <name> exhaustive|bounded
///     CHECK <name> PASS|FAIL
///     COUNT <key> <n>
///     WITNESS <class-bitmap> <subset-element> <witness-element>
///     COUNTEREXAMPLE <structure-bitmap> <details>
///     NOTE <free text>
///
/// Other modules may add verdict-style lines (VERDICT, STAGE, MEMBER, ...);
/// only FAIL and COUNTEREXAMPLE lines make a report fail.
class Report {
 public:
  /// Counterexample lines beyond this many are counted but not printed.
  static constexpr std::size_t max_listed_counterexamples = 16;

  Report() = default;
  explicit Report(std::string name, bool bounded = false) : name_(std::move(name)), bounded_(bounded) {}

  const std::string& name() const { return name_; }
  bool bounded() const { return bounded_; }
  void mark_bounded() { bounded_ = true; }

  void check(std::string_view name, bool pass) {
    add("CHECK " + std::string(name) + (pass ? " PASS" : " FAIL"));
    if (!pass) failed_ = true;
  }

  void count(std::string_view key, std::uint64_t n) {
    add("COUNT " + std::string(key) + " " + std::to_string(n));
  }

  void witness(std::uint64_t class_bitmap, std::string_view subset_element, std::string_view witness_element) {
    add("WITNESS " + std::to_string(class_bitmap) + " " + std::string(subset_element) + " " +
        std::string(witness_element));
  }

  void counterexample(std::uint64_t structure_bitmap, std::string_view details) {
    failed_ = true;
    ++counterexamples_;
    if (counterexamples_ <= max_listed_counterexamples)
      add("COUNTEREXAMPLE " + std::to_string(structure_bitmap) + " " + std::string(details));
  }

  void note(std::string_view text) { add("NOTE " + std::string(text)); }

  /// Raw line; must not start with CHECK/COUNTEREXAMPLE unless produced via the typed helpers.
  void line(std::string text) { add(std::move(text)); }

  /// Appends every line of `other`; pass/fail and boundedness propagate.
  void merge(const Report& other) {
    lines_.insert(lines_.end(), other.lines_.begin(), other.lines_.end());
    failed_ = failed_ || other.failed_;
    counterexamples_ += other.counterexamples_;
    bounded_ = bounded_ || other.bounded_;
  }

  bool passed() const { return !failed_; }
  std::uint64_t counterexamples() const { return counterexamples_; }
  const std::vector<std::string>& lines() const { return lines_; }

  /// Full text including the REPORT header line.
  std::string str() const {
    std::ostringstream os;
    if (!name_.empty()) os << "REPORT " << name_ << (bounded_ ? " bounded" : " exhaustive") << '\n';
    for (const auto& l : lines_) os << l << '\n';
    return os.str();
  }

 private:
  void add(std::string l) { lines_.push_back(std::move(l)); }

  std::string name_;
  bool bounded_ = false;
  bool failed_ = false;
  std::uint64_t counterexamples_ = 0;
  std::vector<std::string> lines_;
};

}  // namespace paradox
