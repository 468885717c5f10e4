#pragma once

#include <cstdint>
#include <iosfwd>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "naesat/error.hpp"
#include "naesat/rational.hpp"
#include "naesat/rng.hpp"

namespace naesat {

// A clause is "satisfied" when at least one literal is true, and
// "NAE-satisfied" when it has at least one true and at least one false
// literal.
enum class Mode { sat, nae };

inline const char* mode_name(Mode m) { return m == Mode::sat ? "sat" : "nae"; }

struct Literal {
  int var = 0;  // 1-based variable index
  bool negated = false;

  Literal() = default;
  Literal(int v, bool neg) : var(v), negated(neg) {}

  // Construct from a DIMACS-style signed integer (3 -> x3, -3 -> not x3).
  static Literal from_dimacs(int code) { return Literal(code < 0 ? -code : code, code < 0); }
  int to_dimacs() const { return negated ? -var : var; }

  Literal negate() const { return Literal(var, !negated); }
  bool value_under(bool var_value) const { return negated ? !var_value : var_value; }

  friend bool operator==(const Literal&, const Literal&) = default;
  friend auto operator<=>(const Literal&, const Literal&) = default;
};

// Literals are stored sorted by variable index; no two literals may share a
// variable (duplicate literals are collapsed by the parser, tautologies are
// rejected outright).
class Clause {
 public:
  explicit Clause(std::vector<Literal> literals);

  int size() const { return static_cast<int>(literals_.size()); }
  const std::vector<Literal>& literals() const { return literals_; }
  const Literal& operator[](int i) const { return literals_[static_cast<std::size_t>(i)]; }

  std::vector<int> variables() const;
  bool contains_var(int var) const;

  // Canonical key: sorted variable list plus a polarity bitmask, so that a
  // clause and its conjugate can be matched with hash probes.
  struct Key {
    std::vector<int> vars;
    std::uint64_t polarity = 0;  // bit i set = i-th literal negated
    friend bool operator==(const Key&, const Key&) = default;
  };
  Key key() const;

  friend bool operator==(const Clause&, const Clause&) = default;

 private:
  std::vector<Literal> literals_;
};

struct ClauseKeyHash {
  std::size_t operator()(const Clause::Key& k) const;
};

// Total truth assignment over variables 1..n, bit-addressable.
//
// Assignments are ordered by their packed integer value with variable 1 in
// the least significant bit; oracle enumeration and all lexicographic
// tie-breaks use this order.
class Assignment {
 public:
  Assignment() = default;
  explicit Assignment(int n, bool fill = false);
  static Assignment from_mask(int n, std::uint64_t mask);
  static Assignment from_bits(const std::string& bits);  // "0101", variable 1 first

  int size() const { return n_; }
  bool get(int var) const;
  void set(int var, bool value);
  void flip(int var);

  std::string to_bits() const;
  std::uint64_t low_mask() const;  // first min(n, 64) variables packed

  friend bool operator==(const Assignment&, const Assignment&) = default;

  // Packed-integer order (variable 1 = least significant bit).
  static bool mask_less(const Assignment& a, const Assignment& b);

 private:
  int n_ = 0;
  std::vector<std::uint64_t> words_;
};

class PartialAssignment {
 public:
  PartialAssignment() = default;

  void assign(int var, bool value);  // throws on double assignment
  std::optional<bool> get(int var) const;
  bool contains(int var) const { return values_.count(var) != 0; }
  std::size_t size() const { return values_.size(); }
  const std::map<int, bool>& entries() const { return values_; }

 private:
  std::map<int, bool> values_;
};

struct InstanceStats {
  std::int64_t clause_count = 0;
  std::vector<std::int64_t> per_length;  // per_length[i] = number of i-clauses
  Rational eta;                          // average clause length, exact
  std::vector<std::int64_t> occurrence;  // occurrence[v] for v in 1..n

  int max_len() const { return static_cast<int>(per_length.size()) - 1; }
};

// A clause multiset over variables 1..n. Duplicate clauses are allowed
// because MAX semantics counts clauses; immutable after construction.
class Instance {
 public:
  Instance() = default;
  Instance(int num_vars, std::vector<Clause> clauses);

  int num_vars() const { return num_vars_; }
  const std::vector<Clause>& clauses() const { return clauses_; }
  std::int64_t clause_count() const { return static_cast<std::int64_t>(clauses_.size()); }
  bool empty() const { return clauses_.empty(); }
  int max_len() const { return max_len_; }
  bool has_unit_clause() const;

  friend bool operator==(const Instance&, const Instance&) = default;

 private:
  int num_vars_ = 0;
  int max_len_ = 0;
  std::vector<Clause> clauses_;
};

Instance parse_dimacs(std::istream& in);
Instance parse_dimacs(const std::string& text);
std::string emit_dimacs(const Instance& instance);

// Extracts a "c planted <bits>" comment if present (emitted by the generator).
std::optional<Assignment> planted_from_dimacs(const std::string& text);

bool clause_satisfied(const Clause& clause, const Assignment& alpha, Mode mode);
std::int64_t count_satisfied(const Instance& instance, const Assignment& alpha, Mode mode);

InstanceStats stats(const Instance& instance);

struct Subformula {
  Instance g;                     // the clauses (NAE-)satisfied by alpha
  std::int64_t weight = 0;        // w = |G|
  std::optional<Rational> theta;  // average clause length of G; unset when G is empty
};

Subformula satisfiable_subformula(const Instance& instance, const Assignment& alpha, Mode mode);

// Variables of G with occurrence at most tau = lambda_param * |G| / n.
std::vector<int> subtau_variables(const Instance& g, const Rational& lambda_param);

enum class GenMode { uniform, planted_nae };

struct GeneratedInstance {
  Instance instance;
  std::optional<Assignment> planted;
};

GeneratedInstance random_instance(int n, int k, int m, GenMode mode, std::uint64_t seed);

}  // namespace naesat
