#include "naesat/formula.hpp"

#include <algorithm>
#include <cctype>
#include <istream>
#include <sstream>

namespace naesat {

Rational parse_rational(const std::string& text) {
  auto slash = text.find('/');
  if (slash != std::string::npos) {
    Rational q(text.substr(0, slash) + "/" + text.substr(slash + 1));
    q.canonicalize();
    if (q.get_den() == 0) fail(errc::malformed_header, "zero denominator in '" + text + "'");
    return q;
  }
  auto dot = text.find('.');
  if (dot == std::string::npos) {
    Rational q(text);
    q.canonicalize();
    return q;
  }
  std::string digits = text.substr(0, dot) + text.substr(dot + 1);
  std::size_t frac_len = text.size() - dot - 1;
  bool neg = false;
  if (!digits.empty() && (digits[0] == '-' || digits[0] == '+')) {
    neg = digits[0] == '-';
    digits = digits.substr(1);
  }
  if (digits.empty()) fail(errc::malformed_header, "bad rational '" + text + "'");
  mpz_class num(digits, 10);
  mpz_class den;
  mpz_ui_pow_ui(den.get_mpz_t(), 10, frac_len);
  Rational q(neg ? mpz_class(-num) : num, den);
  q.canonicalize();
  return q;
}

Clause::Clause(std::vector<Literal> literals) : literals_(std::move(literals)) {
  if (literals_.empty()) fail(errc::empty_clause, "clause must contain at least one literal");
  std::sort(literals_.begin(), literals_.end(),
            [](const Literal& a, const Literal& b) { return a.var < b.var; });
  for (std::size_t i = 0; i + 1 < literals_.size(); ++i) {
    if (literals_[i].var == literals_[i + 1].var) {
      if (literals_[i].negated != literals_[i + 1].negated)
        fail(errc::tautological_clause,
             "clause contains both polarities of variable " + std::to_string(literals_[i].var));
      fail(errc::tautological_clause,
           "duplicate literal on variable " + std::to_string(literals_[i].var));
    }
  }
  for (const Literal& l : literals_)
    if (l.var < 1) fail(errc::variable_out_of_range, "variable index must be >= 1");
}

std::vector<int> Clause::variables() const {
  std::vector<int> vars;
  vars.reserve(literals_.size());
  for (const Literal& l : literals_) vars.push_back(l.var);
  return vars;
}

bool Clause::contains_var(int var) const {
  for (const Literal& l : literals_)
    if (l.var == var) return true;
  return false;
}

Clause::Key Clause::key() const {
  Key k;
  k.vars.reserve(literals_.size());
  for (std::size_t i = 0; i < literals_.size(); ++i) {
    k.vars.push_back(literals_[i].var);
    if (literals_[i].negated) k.polarity |= 1ULL << i;
  }
  return k;
}

std::size_t ClauseKeyHash::operator()(const Clause::Key& k) const {
  std::uint64_t h = 0x9e3779b97f4a7c15ULL ^ k.polarity;
  for (int v : k.vars) h = splitmix64(h + static_cast<std::uint64_t>(v));
  return static_cast<std::size_t>(h);
}

Assignment::Assignment(int n, bool fill) : n_(n), words_((n + 63) / 64, fill ? ~0ULL : 0ULL) {
  if (n < 0) fail(errc::infeasible_parameters, "negative assignment length");
  if (fill && n_ % 64 != 0 && !words_.empty()) words_.back() &= (1ULL << (n_ % 64)) - 1;
}

Assignment Assignment::from_mask(int n, std::uint64_t mask) {
  Assignment a(n);
  if (!a.words_.empty()) {
    a.words_[0] = n >= 64 ? mask : (mask & ((1ULL << n) - 1));
  }
  return a;
}

Assignment Assignment::from_bits(const std::string& bits) {
  Assignment a(static_cast<int>(bits.size()));
  for (std::size_t i = 0; i < bits.size(); ++i) {
    if (bits[i] != '0' && bits[i] != '1')
      fail(errc::malformed_header, "assignment bits must be 0/1");
    a.set(static_cast<int>(i) + 1, bits[i] == '1');
  }
  return a;
}

bool Assignment::get(int var) const {
  return (words_[static_cast<std::size_t>(var - 1) / 64] >> ((var - 1) % 64)) & 1ULL;
}

void Assignment::set(int var, bool value) {
  std::uint64_t& w = words_[static_cast<std::size_t>(var - 1) / 64];
  const std::uint64_t bit = 1ULL << ((var - 1) % 64);
  if (value)
    w |= bit;
  else
    w &= ~bit;
}

void Assignment::flip(int var) { words_[static_cast<std::size_t>(var - 1) / 64] ^= 1ULL << ((var - 1) % 64); }

std::string Assignment::to_bits() const {
  std::string s(static_cast<std::size_t>(n_), '0');
  for (int v = 1; v <= n_; ++v)
    if (get(v)) s[static_cast<std::size_t>(v - 1)] = '1';
  return s;
}

std::uint64_t Assignment::low_mask() const { return words_.empty() ? 0 : words_[0]; }

bool Assignment::mask_less(const Assignment& a, const Assignment& b) {
  const std::size_t words = std::max(a.words_.size(), b.words_.size());
  for (std::size_t i = words; i-- > 0;) {
    const std::uint64_t wa = i < a.words_.size() ? a.words_[i] : 0;
    const std::uint64_t wb = i < b.words_.size() ? b.words_[i] : 0;
    if (wa != wb) return wa < wb;
  }
  return false;
}

void PartialAssignment::assign(int var, bool value) {
  auto [it, inserted] = values_.emplace(var, value);
  (void)it;
  if (!inserted)
    fail(errc::precondition_violated, "variable " + std::to_string(var) + " assigned twice");
}

std::optional<bool> PartialAssignment::get(int var) const {
  auto it = values_.find(var);
  if (it == values_.end()) return std::nullopt;
  return it->second;
}

Instance::Instance(int num_vars, std::vector<Clause> clauses)
    : num_vars_(num_vars), clauses_(std::move(clauses)) {
  if (num_vars < 0) fail(errc::infeasible_parameters, "negative variable count");
  for (const Clause& c : clauses_) {
    for (const Literal& l : c.literals())
      if (l.var > num_vars_)
        fail(errc::variable_out_of_range,
             "variable " + std::to_string(l.var) + " exceeds declared n=" + std::to_string(num_vars_));
    max_len_ = std::max(max_len_, c.size());
  }
}

bool Instance::has_unit_clause() const {
  return std::any_of(clauses_.begin(), clauses_.end(), [](const Clause& c) { return c.size() == 1; });
}

namespace {

// Collapses duplicate literals, rejects tautologies; used by the parser so
// that Clause construction only ever sees clean literal lists.
Clause make_clause_from_raw(std::vector<Literal> raw) {
  std::sort(raw.begin(), raw.end(), [](const Literal& a, const Literal& b) {
    return a.var != b.var ? a.var < b.var : a.negated < b.negated;
  });
  std::vector<Literal> lits;
  for (const Literal& l : raw) {
    if (!lits.empty() && lits.back().var == l.var) {
      if (lits.back().negated != l.negated)
        fail(errc::tautological_clause,
             "clause contains both polarities of variable " + std::to_string(l.var));
      continue;  // duplicate literal collapsed
    }
    lits.push_back(l);
  }
  return Clause(std::move(lits));
}

}  // namespace

Instance parse_dimacs(std::istream& in) {
  std::string line;
  long long n = -1, m = -1;
  std::vector<Clause> clauses;
  std::vector<Literal> current;
  bool saw_header = false;

  while (std::getline(in, line)) {
    if (line.empty()) continue;
    std::istringstream ls(line);
    std::string first;
    if (!(ls >> first)) continue;
    if (first == "c") continue;
    if (first == "p") {
      if (saw_header) fail(errc::malformed_header, "duplicate 'p' line");
      std::string fmt;
      if (!(ls >> fmt >> n >> m) || fmt != "cnf" || n < 0 || m < 0)
        fail(errc::malformed_header, "expected 'p cnf <vars> <clauses>'");
      saw_header = true;
      continue;
    }
    if (!saw_header) fail(errc::malformed_header, "clause data before 'p cnf' header");
    ls.clear();
    ls.str(line);
    long long code;
    while (ls >> code) {
      if (code == 0) {
        if (current.empty()) fail(errc::empty_clause, "empty clause in input");
        clauses.push_back(make_clause_from_raw(std::move(current)));
        current.clear();
        continue;
      }
      const long long v = code < 0 ? -code : code;
      if (v > n)
        fail(errc::variable_out_of_range,
             "literal " + std::to_string(code) + " exceeds declared n=" + std::to_string(n));
      current.push_back(Literal::from_dimacs(static_cast<int>(code)));
    }
    if (!ls.eof()) fail(errc::malformed_header, "non-integer token in clause data");
  }
  if (!saw_header) fail(errc::malformed_header, "missing 'p cnf' header");
  if (!current.empty()) fail(errc::malformed_header, "last clause not terminated by 0");
  if (static_cast<long long>(clauses.size()) != m)
    fail(errc::malformed_header, "declared " + std::to_string(m) + " clauses, found " +
                                     std::to_string(clauses.size()));
  return Instance(static_cast<int>(n), std::move(clauses));
}

Instance parse_dimacs(const std::string& text) {
  std::istringstream in(text);
  return parse_dimacs(in);
}

std::string emit_dimacs(const Instance& instance) {
  std::ostringstream out;
  out << "p cnf " << instance.num_vars() << ' ' << instance.clause_count() << '\n';
  for (const Clause& c : instance.clauses()) {
    for (const Literal& l : c.literals()) out << l.to_dimacs() << ' ';
    out << "0\n";
  }
  return out.str();
}

std::optional<Assignment> planted_from_dimacs(const std::string& text) {
  std::istringstream in(text);
  std::string line;
  while (std::getline(in, line)) {
    std::istringstream ls(line);
    std::string c, tag, bits;
    if (ls >> c >> tag >> bits && c == "c" && tag == "planted") return Assignment::from_bits(bits);
  }
  return std::nullopt;
}

bool clause_satisfied(const Clause& clause, const Assignment& alpha, Mode mode) {
  bool any_true = false, any_false = false;
  for (const Literal& l : clause.literals()) {
    if (l.value_under(alpha.get(l.var)))
      any_true = true;
    else
      any_false = true;
    if (mode == Mode::sat && any_true) return true;
    if (any_true && any_false) return true;
  }
  return mode == Mode::sat ? any_true : (any_true && any_false);
}

std::int64_t count_satisfied(const Instance& instance, const Assignment& alpha, Mode mode) {
  if (alpha.size() != instance.num_vars())
    fail(errc::precondition_violated, "assignment does not cover all variables");
  std::int64_t s = 0;
  for (const Clause& c : instance.clauses())
    if (clause_satisfied(c, alpha, mode)) ++s;
  return s;
}

InstanceStats stats(const Instance& instance) {
  if (instance.empty()) fail(errc::empty_instance, "statistics of an empty instance");
  InstanceStats st;
  st.clause_count = instance.clause_count();
  st.per_length.assign(static_cast<std::size_t>(instance.max_len()) + 1, 0);
  st.occurrence.assign(static_cast<std::size_t>(instance.num_vars()) + 1, 0);
  std::int64_t total_len = 0;
  for (const Clause& c : instance.clauses()) {
    st.per_length[static_cast<std::size_t>(c.size())]++;
    total_len += c.size();
    for (const Literal& l : c.literals()) st.occurrence[static_cast<std::size_t>(l.var)]++;
  }
  st.eta = Rational(total_len, st.clause_count);
  st.eta.canonicalize();
  return st;
}

Subformula satisfiable_subformula(const Instance& instance, const Assignment& alpha, Mode mode) {
  std::vector<Clause> kept;
  for (const Clause& c : instance.clauses())
    if (clause_satisfied(c, alpha, mode)) kept.push_back(c);
  Subformula out;
  out.weight = static_cast<std::int64_t>(kept.size());
  out.g = Instance(instance.num_vars(), std::move(kept));
  if (out.weight > 0) out.theta = stats(out.g).eta;
  return out;
}

std::vector<int> subtau_variables(const Instance& g, const Rational& lambda_param) {
  if (g.empty()) fail(errc::empty_instance, "sub-tau variables of an empty instance");
  if (lambda_param <= 0) fail(errc::infeasible_parameters, "lambda must be positive");
  const InstanceStats st = stats(g);
  Rational tau = lambda_param * Rational(st.clause_count, g.num_vars());
  tau.canonicalize();
  std::vector<int> vars;
  for (int v = 1; v <= g.num_vars(); ++v)
    if (Rational(st.occurrence[static_cast<std::size_t>(v)]) <= tau) vars.push_back(v);
  return vars;
}

GeneratedInstance random_instance(int n, int k, int m, GenMode mode, std::uint64_t seed) {
  if (k < 2 || n < k || m < 0)
    fail(errc::infeasible_parameters,
         "need k >= 2, n >= k, m >= 0 (got n=" + std::to_string(n) + ", k=" + std::to_string(k) +
             ", m=" + std::to_string(m) + ")");
  Rng rng(seed);

  GeneratedInstance out;
  std::optional<Assignment> planted;
  if (mode == GenMode::planted_nae) {
    Assignment a(n);
    for (int v = 1; v <= n; ++v) a.set(v, rng.coin());
    planted = a;
  }

  std::vector<int> pool(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) pool[static_cast<std::size_t>(i)] = i + 1;

  std::vector<Clause> clauses;
  clauses.reserve(static_cast<std::size_t>(m));
  while (static_cast<int>(clauses.size()) < m) {
    // Partial Fisher-Yates: the first k entries become the clause variables.
    for (int i = 0; i < k; ++i) {
      const auto j = i + static_cast<int>(rng.below(static_cast<std::uint64_t>(n - i)));
      std::swap(pool[static_cast<std::size_t>(i)], pool[static_cast<std::size_t>(j)]);
    }
    std::vector<Literal> lits;
    lits.reserve(static_cast<std::size_t>(k));
    for (int i = 0; i < k; ++i) lits.emplace_back(pool[static_cast<std::size_t>(i)], rng.coin());
    Clause clause(std::move(lits));
    if (planted && !clause_satisfied(clause, *planted, Mode::nae)) continue;
    clauses.push_back(std::move(clause));
  }
  out.instance = Instance(n, std::move(clauses));
  out.planted = planted;
  return out;
}

}  // namespace naesat
