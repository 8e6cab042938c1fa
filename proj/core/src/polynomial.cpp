#include "semid/polynomial.hpp"

#include <algorithm>
#include <cctype>
#include <numeric>

namespace semid {

Monomial Monomial::variable(int nvars, int index, int power) {
  Monomial m(nvars);
  m.exps_[static_cast<std::size_t>(index)] = static_cast<std::uint16_t>(power);
  return m;
}

int Monomial::degree() const { return std::accumulate(exps_.begin(), exps_.end(), 0); }

bool Monomial::divisible_by(const Monomial& other) const {
  for (std::size_t v = 0; v < exps_.size(); ++v) {
    if (other.exps_[v] > exps_[v]) return false;
  }
  return true;
}

Monomial Monomial::operator*(const Monomial& other) const {
  Monomial out = *this;
  for (std::size_t v = 0; v < exps_.size(); ++v) out.exps_[v] += other.exps_[v];
  return out;
}

Monomial Monomial::operator/(const Monomial& other) const {
  Monomial out = *this;
  for (std::size_t v = 0; v < exps_.size(); ++v) out.exps_[v] -= other.exps_[v];
  return out;
}

bool GradedLexGreater::operator()(const Monomial& a, const Monomial& b) const {
  const int da = a.degree();
  const int db = b.degree();
  if (da != db) return da > db;
  return std::lexicographical_compare(b.exps_.begin(), b.exps_.end(), a.exps_.begin(),
                                      a.exps_.end());
}

Polynomial Polynomial::constant(int nvars, const Rational& c) {
  Polynomial p(nvars);
  p.add_term(Monomial(nvars), c);
  return p;
}

Polynomial Polynomial::variable(int nvars, int index) {
  return term(Monomial::variable(nvars, index), Rational(1));
}

Polynomial Polynomial::term(const Monomial& m, const Rational& c) {
  Polynomial p(m.nvars());
  p.add_term(m, c);
  return p;
}

void Polynomial::add_term(const Monomial& m, const Rational& c) {
  if (c == 0) return;
  auto [it, inserted] = terms_.try_emplace(m, c);
  if (!inserted) {
    it->second += c;
    if (it->second == 0) terms_.erase(it);
  }
}

int Polynomial::total_degree() const {
  // The first term has the largest degree under graded order.
  return terms_.empty() ? 0 : terms_.begin()->first.degree();
}

bool Polynomial::divisible_by_variable(int var) const {
  return std::all_of(terms_.begin(), terms_.end(),
                     [var](const auto& t) { return t.first.exponent(var) > 0; });
}

Polynomial& Polynomial::operator+=(const Polynomial& o) {
  if (nvars_ == 0) nvars_ = o.nvars_;
  for (const auto& [m, c] : o.terms_) add_term(m, c);
  return *this;
}

Polynomial& Polynomial::operator-=(const Polynomial& o) {
  if (nvars_ == 0) nvars_ = o.nvars_;
  for (const auto& [m, c] : o.terms_) add_term(m, -c);
  return *this;
}

Polynomial& Polynomial::operator*=(const Rational& c) {
  if (c == 0) {
    terms_.clear();
    return *this;
  }
  for (auto& t : terms_) t.second *= c;
  return *this;
}

Polynomial operator*(const Polynomial& a, const Polynomial& b) {
  Polynomial out(std::max(a.nvars_, b.nvars_));
  for (const auto& [ma, ca] : a.terms_) {
    for (const auto& [mb, cb] : b.terms_) out.add_term(ma * mb, ca * cb);
  }
  return out;
}

Polynomial Polynomial::exact_divide(const Polynomial& divisor) const {
  if (divisor.is_zero()) throw std::domain_error("division by the zero polynomial");
  const auto& [lead_m, lead_c] = *divisor.terms_.begin();
  Polynomial quotient(nvars_);
  Polynomial rest = *this;
  while (!rest.is_zero()) {
    const auto& [rm, rc] = *rest.terms_.begin();
    if (!rm.divisible_by(lead_m)) throw std::domain_error("polynomial division is not exact");
    const Polynomial t = term(rm / lead_m, rc / lead_c);
    quotient += t;
    rest -= t * divisor;
  }
  return quotient;
}

Polynomial Polynomial::derivative(int var) const {
  Polynomial out(nvars_);
  for (const auto& [m, c] : terms_) {
    const int e = m.exponent(var);
    if (e == 0) continue;
    out.add_term(m / Monomial::variable(nvars_, var), c * e);
  }
  return out;
}

Rational Polynomial::evaluate(std::span<const Rational> values) const {
  if (static_cast<int>(values.size()) != nvars_) {
    throw std::invalid_argument("evaluation point has wrong number of variables");
  }
  Rational sum = 0;
  for (const auto& [m, c] : terms_) {
    Rational prod = c;
    for (int v = 0; v < nvars_; ++v) {
      for (int e = 0; e < m.exponent(v); ++e) prod *= values[static_cast<std::size_t>(v)];
    }
    sum += prod;
  }
  return sum;
}

double Polynomial::evaluate(std::span<const double> values) const {
  if (static_cast<int>(values.size()) != nvars_) {
    throw std::invalid_argument("evaluation point has wrong number of variables");
  }
  double sum = 0.0;
  for (const auto& [m, c] : terms_) {
    double prod = c.get_d();
    for (int v = 0; v < nvars_; ++v) {
      for (int e = 0; e < m.exponent(v); ++e) prod *= values[static_cast<std::size_t>(v)];
    }
    sum += prod;
  }
  return sum;
}

std::uint64_t Polynomial::evaluate(const PrimeField& field,
                                   std::span<const std::uint64_t> values) const {
  if (static_cast<int>(values.size()) != nvars_) {
    throw std::invalid_argument("evaluation point has wrong number of variables");
  }
  std::uint64_t sum = 0;
  for (const auto& [m, c] : terms_) {
    std::uint64_t prod = field.from_rational(c);
    for (int v = 0; v < nvars_; ++v) {
      for (int e = 0; e < m.exponent(v); ++e) {
        prod = field.mul(prod, values[static_cast<std::size_t>(v)]);
      }
    }
    sum = field.add(sum, prod);
  }
  return sum;
}

std::string Polynomial::to_string(std::span<const std::string> names,
                                  std::span<const int> print_order) const {
  if (terms_.empty()) return "0";
  std::vector<int> order(print_order.begin(), print_order.end());
  if (order.empty()) {
    order.resize(static_cast<std::size_t>(nvars_));
    std::iota(order.begin(), order.end(), 0);
  }
  std::string out;
  bool first = true;
  for (const auto& [m, c] : terms_) {
    const bool negative = c < 0;
    const Rational mag = negative ? Rational(-c) : c;
    if (first) {
      if (negative) out += "-";
    } else {
      out += negative ? " - " : " + ";
    }
    first = false;

    std::vector<std::string> factors;
    if (m.degree() == 0 || mag != 1) factors.push_back(mag.get_str());
    for (int v : order) {
      const int e = m.exponent(v);
      if (e == 0) continue;
      std::string f = names[static_cast<std::size_t>(v)];
      if (e > 1) f += "^" + std::to_string(e);
      factors.push_back(std::move(f));
    }
    for (std::size_t k = 0; k < factors.size(); ++k) {
      if (k > 0) out += "*";
      out += factors[k];
    }
  }
  return out;
}

namespace {

class PolyParser {
 public:
  PolyParser(std::string_view text, std::span<const std::string> names)
      : text_(text), names_(names) {}

  Polynomial parse() {
    const int nvars = static_cast<int>(names_.size());
    Polynomial sum(nvars);
    skip_ws();
    bool negative = false;
    if (peek() == '+' || peek() == '-') negative = get() == '-';
    while (true) {
      Polynomial t = parse_term();
      if (negative) t *= Rational(-1);
      sum += t;
      skip_ws();
      if (pos_ == text_.size()) break;
      const char op = get();
      if (op != '+' && op != '-') fail("expected '+' or '-'");
      negative = op == '-';
    }
    return sum;
  }

 private:
  Polynomial parse_term() {
    const int nvars = static_cast<int>(names_.size());
    Rational coeff = 1;
    Monomial mono(nvars);
    while (true) {
      skip_ws();
      if (std::isdigit(static_cast<unsigned char>(peek()))) {
        Rational value(read_while([](char c) { return std::isdigit(static_cast<unsigned char>(c)) != 0; }));
        skip_ws();
        if (peek() == '/') {
          get();
          skip_ws();
          Rational den(read_while([](char c) { return std::isdigit(static_cast<unsigned char>(c)) != 0; }));
          if (den == 0) fail("zero denominator");
          value /= den;
        }
        coeff *= value;
      } else if (std::isalpha(static_cast<unsigned char>(peek())) || peek() == '_') {
        const std::string name = read_while([](char c) {
          return std::isalnum(static_cast<unsigned char>(c)) != 0 || c == '_';
        });
        auto it = std::find(names_.begin(), names_.end(), name);
        if (it == names_.end()) fail("unknown variable '" + name + "'");
        int power = 1;
        skip_ws();
        if (peek() == '^') {
          get();
          skip_ws();
          power = std::stoi(read_while([](char c) { return std::isdigit(static_cast<unsigned char>(c)) != 0; }));
        }
        mono = mono * Monomial::variable(nvars, static_cast<int>(it - names_.begin()), power);
      } else {
        fail("expected a number or variable");
      }
      skip_ws();
      if (peek() != '*') break;
      get();
    }
    return Polynomial::term(mono, coeff);
  }

  template <class Pred>
  std::string read_while(Pred pred) {
    const std::size_t start = pos_;
    while (pos_ < text_.size() && pred(text_[pos_])) ++pos_;
    if (start == pos_) fail("unexpected character");
    return std::string(text_.substr(start, pos_ - start));
  }
  void skip_ws() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }
  char peek() const { return pos_ < text_.size() ? text_[pos_] : '\0'; }
  char get() { return pos_ < text_.size() ? text_[pos_++] : '\0'; }
  [[noreturn]] void fail(const std::string& what) const {
    throw std::invalid_argument("polynomial parse error at offset " + std::to_string(pos_) +
                                ": " + what + " in \"" + std::string(text_) + "\"");
  }

  std::string_view text_;
  std::span<const std::string> names_;
  std::size_t pos_ = 0;
};

}  // namespace

Polynomial parse_polynomial(std::string_view text, std::span<const std::string> names) {
  return PolyParser(text, names).parse();
}

}  // namespace semid
