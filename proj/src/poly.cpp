#include "toricsum/poly.hpp"

#include "toricsum/errors.hpp"

#include <algorithm>
#include <cctype>
#include <limits>
#include <sstream>

namespace toricsum {

Polynomial::Polynomial(int dimension, Terms terms) : dimension_(dimension) {
  if (dimension < 1) throw Error("polynomial dimension must be positive");
  for (auto& [exps, coeff] : terms) {
    if (static_cast<int>(exps.size()) != dimension) {
      throw Error("exponent vector length differs from the polynomial dimension");
    }
    if (std::any_of(exps.begin(), exps.end(), [](std::int64_t e) { return e < 0; })) {
      throw Error("negative exponent");
    }
    if (coeff != 0) terms_.emplace(exps, std::move(coeff));
  }
}

bool Polynomial::has_constant_term() const {
  return terms_.count(ExponentVector(static_cast<std::size_t>(dimension_), 0)) > 0;
}

std::vector<ExponentVector> Polynomial::support() const {
  std::vector<ExponentVector> out;
  out.reserve(terms_.size());
  for (const auto& [exps, coeff] : terms_) out.push_back(exps);
  return out;
}

std::int64_t Polynomial::degree_in(int var) const {
  std::int64_t d = 0;
  for (const auto& [exps, coeff] : terms_) d = std::max(d, exps[static_cast<std::size_t>(var)]);
  return d;
}

std::int64_t Polynomial::total_degree() const {
  std::int64_t d = 0;
  for (const auto& [exps, coeff] : terms_) {
    std::int64_t s = 0;
    for (auto e : exps) s += e;
    d = std::max(d, s);
  }
  return d;
}

void Polynomial::require_analyzable() const {
  if (is_zero()) throw ZeroPolynomial();
  if (has_constant_term()) throw ConstantTermNonzero();
}

Polynomial Polynomial::scaled(const BigInt& factor) const {
  if (factor == 0) throw Error("scaling by zero");
  Terms out;
  for (const auto& [exps, coeff] : terms_) out.emplace(exps, coeff * factor);
  return Polynomial(dimension_, std::move(out));
}

namespace {

class Parser {
 public:
  explicit Parser(std::string_view text) {
    for (std::size_t i = 0; i < text.size(); ++i) {
      if (!std::isspace(static_cast<unsigned char>(text[i]))) {
        chars_.push_back(text[i]);
        positions_.push_back(i);
      }
    }
    end_position_ = text.size();
  }

  // Returns monomials keyed by 1-based variable index -> exponent.
  std::vector<std::pair<std::map<int, std::int64_t>, BigInt>> parse() {
    if (chars_.empty()) fail("empty polynomial");
    std::vector<std::pair<std::map<int, std::int64_t>, BigInt>> out;
    out.push_back(term(true));
    while (!at_end()) {
      const char c = peek();
      if (c != '+' && c != '-') fail(std::string("unexpected character '") + c + "'");
      auto t = term(true);
      out.push_back(std::move(t));
    }
    return out;
  }

  int max_variable() const noexcept { return max_variable_; }

 private:
  bool at_end() const noexcept { return pos_ >= chars_.size(); }
  char peek() const noexcept { return chars_[pos_]; }
  std::size_t position() const noexcept {
    return at_end() ? end_position_ : positions_[pos_];
  }
  [[noreturn]] void fail(const std::string& what) const { throw ParseError(what, position()); }

  static bool is_named_var(char c) {
    return c == 'x' || c == 'y' || c == 'z' || c == 'u' || c == 'v' || c == 'w';
  }

  std::string digits() {
    std::string out;
    while (!at_end() && std::isdigit(static_cast<unsigned char>(peek()))) out.push_back(chars_[pos_++]);
    return out;
  }

  std::int64_t natural(const char* what) {
    const std::size_t start = position();
    std::string d = digits();
    if (d.empty()) fail(std::string("expected ") + what);
    if (d.size() > 9) throw ParseError(std::string(what) + " too large", start);
    return std::stoll(d);
  }

  std::pair<std::map<int, std::int64_t>, BigInt> term(bool allow_sign) {
    BigInt coeff = 1;
    bool have_content = false;
    if (allow_sign) {
      // Leading '+'/'-' chain: "x+-y" is "x + (-y)".
      int signs = 0;
      while (!at_end() && (peek() == '+' || peek() == '-')) {
        if (peek() == '-') coeff = -coeff;
        ++pos_;
        if (++signs > 2) fail("too many signs");
      }
    }
    if (!at_end() && std::isdigit(static_cast<unsigned char>(peek()))) {
      coeff *= BigInt(digits());
      have_content = true;
    }
    std::map<int, std::int64_t> mono;
    while (!at_end()) {
      if (peek() == '*') {
        if (!have_content) fail("expected a term before '*'");
        ++pos_;
        if (at_end() || !is_named_var(peek())) fail("expected a variable after '*'");
      }
      if (!is_named_var(peek())) break;
      const char name = chars_[pos_++];
      int index = 0;
      if (name == 'x' && !at_end() && std::isdigit(static_cast<unsigned char>(peek()))) {
        const std::size_t start = position();
        index = static_cast<int>(natural("variable index"));
        if (index < 1) throw ParseError("variable indices start at 1", start);
      } else {
        index = std::string_view("xyzuvw").find(name) + 1;
      }
      std::int64_t exponent = 1;
      if (!at_end() && peek() == '^') {
        ++pos_;
        exponent = natural("exponent");
      }
      mono[index] += exponent;
      max_variable_ = std::max(max_variable_, index);
      have_content = true;
    }
    if (!have_content) fail("expected a term");
    return {std::move(mono), std::move(coeff)};
  }

  std::vector<char> chars_;
  std::vector<std::size_t> positions_;
  std::size_t end_position_ = 0;
  std::size_t pos_ = 0;
  int max_variable_ = 0;
};

}  // namespace

Polynomial parse_polynomial(std::string_view text, std::optional<int> dimension_hint) {
  Parser parser(text);
  auto monomials = parser.parse();
  int n = std::max(parser.max_variable(), 1);
  if (dimension_hint) {
    if (*dimension_hint < 1) throw ParseError("dimension must be positive", 0);
    if (*dimension_hint < parser.max_variable()) {
      throw ParseError("variable x" + std::to_string(parser.max_variable()) +
                           " exceeds the declared dimension " + std::to_string(*dimension_hint),
                       0);
    }
    n = *dimension_hint;
  }
  Polynomial::Terms terms;
  for (auto& [mono, coeff] : monomials) {
    ExponentVector exps(static_cast<std::size_t>(n), 0);
    for (const auto& [var, e] : mono) exps[static_cast<std::size_t>(var - 1)] = e;
    terms[exps] += coeff;
  }
  Polynomial f(n, std::move(terms));
  if (f.is_zero()) throw ZeroPolynomial();
  if (f.has_constant_term()) throw ConstantTermNonzero();
  return f;
}

std::string render(const Polynomial& f) {
  if (f.is_zero()) return "0";
  const int n = f.dimension();
  auto var_name = [n](std::size_t i) -> std::string {
    if (n <= 6) return std::string(1, "xyzuvw"[i]);
    return "x" + std::to_string(i + 1);
  };
  std::ostringstream out;
  bool first = true;
  // Graded order: lower total degree first, then descending lexicographic.
  std::vector<const Polynomial::Terms::value_type*> order;
  for (const auto& t : f.terms()) order.push_back(&t);
  std::stable_sort(order.begin(), order.end(), [](auto* a, auto* b) {
    std::int64_t da = 0, db = 0;
    for (auto e : a->first) da += e;
    for (auto e : b->first) db += e;
    if (da != db) return da < db;
    return a->first > b->first;
  });
  for (const auto* t : order) {
    const auto& [exps, coeff] = *t;
    BigInt magnitude = abs(coeff);
    if (first) {
      if (coeff < 0) out << "-";
    } else {
      out << (coeff < 0 ? " - " : " + ");
    }
    first = false;
    bool constant = std::all_of(exps.begin(), exps.end(), [](std::int64_t e) { return e == 0; });
    bool need_star = false;
    if (magnitude != 1 || constant) {
      out << magnitude;
      need_star = true;
    }
    for (std::size_t i = 0; i < exps.size(); ++i) {
      if (exps[i] == 0) continue;
      if (need_star) out << "*";
      out << var_name(i);
      if (exps[i] != 1) out << "^" << exps[i];
      need_star = true;
    }
  }
  return out.str();
}

std::optional<Polynomial> face_restriction(const Polynomial& f,
                                           const std::function<bool(const ExponentVector&)>& keep) {
  Polynomial::Terms out;
  for (const auto& [exps, coeff] : f.terms()) {
    if (keep(exps)) out.emplace(exps, coeff);
  }
  if (out.empty()) return std::nullopt;
  return Polynomial(f.dimension(), std::move(out));
}

std::optional<Polynomial> face_restriction(const Polynomial& f, const std::set<ExponentVector>& selected) {
  return face_restriction(f, [&](const ExponentVector& e) { return selected.count(e) > 0; });
}

std::vector<Polynomial> gradient(const Polynomial& f) {
  std::vector<Polynomial> out;
  const int n = f.dimension();
  out.reserve(static_cast<std::size_t>(n));
  for (int j = 0; j < n; ++j) {
    Polynomial::Terms d;
    for (const auto& [exps, coeff] : f.terms()) {
      const auto e = exps[static_cast<std::size_t>(j)];
      if (e == 0) continue;
      ExponentVector lowered = exps;
      lowered[static_cast<std::size_t>(j)] -= 1;
      d[lowered] += coeff * e;
    }
    out.emplace_back(n, std::move(d));
  }
  return out;
}

std::optional<std::int64_t> homogeneity(const Polynomial& f) {
  std::optional<std::int64_t> degree;
  for (const auto& [exps, coeff] : f.terms()) {
    std::int64_t s = 0;
    for (auto e : exps) s += e;
    if (degree && *degree != s) return std::nullopt;
    degree = s;
  }
  return degree;
}

std::uint64_t mul_mod(std::uint64_t a, std::uint64_t b, std::uint64_t modulus) {
  return static_cast<std::uint64_t>(static_cast<unsigned __int128>(a) * b % modulus);
}

std::uint64_t pow_mod(std::uint64_t base, std::uint64_t exp, std::uint64_t modulus) {
  std::uint64_t result = 1 % modulus;
  base %= modulus;
  while (exp > 0) {
    if (exp & 1U) result = mul_mod(result, base, modulus);
    base = mul_mod(base, base, modulus);
    exp >>= 1U;
  }
  return result;
}

std::uint64_t reduce_mod(const BigInt& z, std::uint64_t modulus) {
  BigInt r = z % modulus;
  if (r < 0) r += modulus;
  return r.convert_to<std::uint64_t>();
}

std::vector<ReducedTerm> reduce_terms(const Polynomial& f, std::uint64_t modulus) {
  std::vector<ReducedTerm> out;
  for (const auto& [exps, coeff] : f.terms()) {
    const std::uint64_t c = reduce_mod(coeff, modulus);
    if (c != 0) out.push_back({c, exps});
  }
  return out;
}

ModEvaluator::ModEvaluator(const Polynomial& f, std::uint64_t modulus)
    : modulus_(modulus), dimension_(f.dimension()), terms_(reduce_terms(f, modulus)) {
  if (modulus < 2) throw Error("modulus must be at least 2");
  const auto n = static_cast<std::size_t>(dimension_);
  degrees_.resize(n);
  tables_.resize(n);
  for (std::size_t j = 0; j < n; ++j) {
    std::int64_t d = 0;
    for (const auto& t : terms_) d = std::max(d, t.exponents[j]);
    degrees_[j] = d;
    const auto width = static_cast<std::uint64_t>(d + 1);
    if (d == 0 || modulus > kMaxTableEntries / width) continue;
    auto& table = tables_[j];
    table.resize(modulus * width);
    for (std::uint64_t x = 0; x < modulus; ++x) {
      std::uint64_t acc = 1 % modulus;
      for (std::uint64_t e = 0; e < width; ++e) {
        table[x * width + e] = acc;
        acc = mul_mod(acc, x, modulus);
      }
    }
  }
}

std::uint64_t ModEvaluator::power(int var, std::uint64_t x, std::int64_t e) const {
  const auto j = static_cast<std::size_t>(var);
  const auto& table = tables_[j];
  if (!table.empty() && e <= degrees_[j]) {
    return table[x * static_cast<std::uint64_t>(degrees_[j] + 1) + static_cast<std::uint64_t>(e)];
  }
  return pow_mod(x, static_cast<std::uint64_t>(e), modulus_);
}

std::uint64_t ModEvaluator::operator()(std::span<const std::uint64_t> point) const {
  if (static_cast<int>(point.size()) != dimension_) throw Error("point dimension mismatch");
  std::uint64_t total = 0;
  for (const auto& t : terms_) {
    std::uint64_t v = t.coefficient;
    for (int j = 0; j < dimension_ && v != 0; ++j) {
      const auto e = t.exponents[static_cast<std::size_t>(j)];
      if (e != 0) v = mul_mod(v, power(j, point[static_cast<std::size_t>(j)] % modulus_, e), modulus_);
    }
    total += v;
    if (total >= modulus_) total -= modulus_;
  }
  return total;
}

std::uint64_t eval_mod(const Polynomial& f, std::span<const std::uint64_t> point, std::uint64_t modulus) {
  return ModEvaluator(f, modulus)(point);
}

}  // namespace toricsum
