#include "cayley/polynomial.hpp"

#include <algorithm>
#include <cctype>
#include <limits>
#include <stdexcept>

#include "json.hpp"

namespace cayley {

namespace {

BigInt abs_big(const BigInt& a) { return a < 0 ? BigInt(-a) : a; }

BigInt gcd_big(BigInt a, BigInt b) {
  a = abs_big(a);
  b = abs_big(b);
  while (b != 0) {
    BigInt r = a % b;
    a = std::move(b);
    b = std::move(r);
  }
  return a;
}

}  // namespace

Polynomial::Polynomial(std::vector<BigInt> coefficients) : c_(std::move(coefficients)) { trim(); }

Polynomial::Polynomial(std::initializer_list<long long> coefficients) {
  for (long long v : coefficients) c_.emplace_back(v);
  trim();
}

Polynomial Polynomial::constant(const BigInt& c) { return Polynomial(std::vector<BigInt>{c}); }

Polynomial Polynomial::monomial(const BigInt& c, std::size_t k) {
  std::vector<BigInt> v(k + 1, 0);
  v[k] = c;
  return Polynomial(std::move(v));
}

void Polynomial::trim() {
  while (!c_.empty() && c_.back() == 0) c_.pop_back();
}

const BigInt& Polynomial::trailing() const {
  for (const auto& v : c_)
    if (v != 0) return v;
  throw std::domain_error("zero polynomial has no trailing coefficient");
}

BigInt Polynomial::content() const {
  BigInt g = 0;
  for (const auto& v : c_) {
    g = gcd_big(g, v);
    if (g == 1) break;
  }
  return g;
}

Polynomial Polynomial::primitive() const {
  if (is_zero()) return *this;
  return divided(content());
}

Polynomial Polynomial::operator-() const {
  Polynomial out = *this;
  for (auto& v : out.c_) v = -v;
  return out;
}

Polynomial& Polynomial::operator+=(const Polynomial& o) {
  if (o.c_.size() > c_.size()) c_.resize(o.c_.size(), 0);
  for (std::size_t i = 0; i < o.c_.size(); ++i) c_[i] += o.c_[i];
  trim();
  return *this;
}

Polynomial& Polynomial::operator-=(const Polynomial& o) {
  if (o.c_.size() > c_.size()) c_.resize(o.c_.size(), 0);
  for (std::size_t i = 0; i < o.c_.size(); ++i) c_[i] -= o.c_[i];
  trim();
  return *this;
}

Polynomial& Polynomial::operator*=(const Polynomial& o) {
  if (is_zero() || o.is_zero()) {
    c_.clear();
    return *this;
  }
  std::vector<BigInt> out(c_.size() + o.c_.size() - 1, 0);
  for (std::size_t i = 0; i < c_.size(); ++i) {
    if (c_[i] == 0) continue;
    for (std::size_t j = 0; j < o.c_.size(); ++j) out[i + j] += c_[i] * o.c_[j];
  }
  c_ = std::move(out);
  trim();
  return *this;
}

Polynomial Polynomial::scaled(const BigInt& k) const {
  Polynomial out = *this;
  for (auto& v : out.c_) v *= k;
  out.trim();
  return out;
}

Polynomial Polynomial::divided(const BigInt& k) const {
  if (k == 0) throw std::domain_error("division by zero");
  Polynomial out = *this;
  for (auto& v : out.c_) {
    if (v % k != 0) throw std::domain_error("inexact coefficient division");
    v /= k;
  }
  return out;
}

std::string Polynomial::to_string() const {
  if (is_zero()) return "0";
  std::string out;
  for (std::size_t k = 0; k < c_.size(); ++k) {
    const BigInt& v = c_[k];
    if (v == 0) continue;
    const bool neg = v < 0;
    const BigInt mag = abs_big(v);
    if (out.empty()) out += neg ? "-" : "";
    else out += neg ? " - " : " + ";
    if (k == 0 || mag != 1) out += mag.str();
    if (k >= 1) out += "x";
    if (k >= 2) out += "^" + std::to_string(k);
  }
  return out;
}

Polynomial exact_div(const Polynomial& a, const Polynomial& b) {
  if (b.is_zero()) throw std::domain_error("division by the zero polynomial");
  if (a.is_zero()) return a;
  std::vector<BigInt> rem = a.coefficients();
  const int db = b.degree();
  const int dq = a.degree() - db;
  if (dq < 0) throw std::domain_error("inexact polynomial division");
  std::vector<BigInt> q(static_cast<std::size_t>(dq) + 1, 0);
  for (int k = dq; k >= 0; --k) {
    const BigInt& top = rem[static_cast<std::size_t>(k + db)];
    if (top == 0) continue;
    if (top % b.leading() != 0) throw std::domain_error("inexact polynomial division");
    const BigInt f = top / b.leading();
    q[static_cast<std::size_t>(k)] = f;
    for (int j = 0; j <= db; ++j)
      rem[static_cast<std::size_t>(k + j)] -= f * b.coefficients()[static_cast<std::size_t>(j)];
  }
  for (const auto& v : rem)
    if (v != 0) throw std::domain_error("inexact polynomial division");
  return Polynomial(std::move(q));
}

Polynomial gcd(const Polynomial& a, const Polynomial& b) {
  Polynomial p = a.primitive(), q = b.primitive();
  if (p.degree() < q.degree()) std::swap(p, q);
  while (!q.is_zero()) {
    // primitive pseudo-remainder of p by q
    Polynomial r = p;
    while (!r.is_zero() && r.degree() >= q.degree()) {
      const auto shift = static_cast<std::size_t>(r.degree() - q.degree());
      const BigInt lr = r.leading();
      r = r.scaled(q.leading()) - Polynomial::monomial(lr, shift) * q;
      r = r.primitive();
    }
    p = std::move(q);
    q = std::move(r);
  }
  if (!p.is_zero() && p.leading() < 0) p = -p;
  return p;
}

// ---------------------------------------------------------------------------

RationalGF::RationalGF(Polynomial num, Polynomial den) : num_(std::move(num)), den_(std::move(den)) {
  if (den_.is_zero()) throw std::domain_error("zero denominator");
  if (num_.is_zero()) {
    den_ = Polynomial{1};
    return;
  }
  const Polynomial g = gcd(num_, den_);
  if (g.degree() > 0) {
    num_ = exact_div(num_, g);
    den_ = exact_div(den_, g);
  }
  const BigInt c = gcd_big(num_.content(), den_.content());
  BigInt k = c;
  if (den_.trailing() < 0) k = -k;
  num_ = num_.divided(k);
  den_ = den_.divided(k);
}

RationalGF operator+(const RationalGF& a, const RationalGF& b) {
  return RationalGF(a.num_ * b.den_ + b.num_ * a.den_, a.den_ * b.den_);
}

RationalGF operator-(const RationalGF& a, const RationalGF& b) {
  return RationalGF(a.num_ * b.den_ - b.num_ * a.den_, a.den_ * b.den_);
}

RationalGF operator*(const RationalGF& a, const RationalGF& b) {
  return RationalGF(a.num_ * b.num_, a.den_ * b.den_);
}

RationalGF operator/(const RationalGF& a, const RationalGF& b) {
  if (b.is_zero()) throw std::domain_error("division by zero");
  return RationalGF(a.num_ * b.den_, a.den_ * b.num_);
}

bool RationalGF::cross_equal(const RationalGF& other) const {
  return num_ * other.den_ == other.num_ * den_;
}

std::string RationalGF::to_string() const {
  if (den_ == Polynomial{1}) return num_.to_string();
  auto wrap = [](const Polynomial& p) {
    const bool single = std::count_if(p.coefficients().begin(), p.coefficients().end(),
                                      [](const BigInt& v) { return v != 0; }) <= 1;
    return single ? p.to_string() : "(" + p.to_string() + ")";
  };
  return wrap(num_) + "/" + wrap(den_);
}

namespace {

nlohmann::json coeffs_json(const Polynomial& p) {
  nlohmann::json a = nlohmann::json::array();
  for (const auto& v : p.coefficients()) {
    if (v >= std::numeric_limits<std::int64_t>::min() && v <= std::numeric_limits<std::int64_t>::max())
      a.push_back(static_cast<std::int64_t>(v));
    else
      a.push_back(v.str());
  }
  return a;
}

Polynomial coeffs_from_json(const nlohmann::json& a) {
  std::vector<BigInt> c;
  for (const auto& v : a) {
    if (v.is_string()) c.emplace_back(v.get<std::string>());
    else c.emplace_back(v.get<std::int64_t>());
  }
  return Polynomial(std::move(c));
}

// Recursive descent over + - juxtaposition * ^ and parentheses in x.
class ExprParser {
 public:
  explicit ExprParser(std::string_view s) : s_(s) {}

  RationalGF rational() {
    Polynomial num = expr();
    Polynomial den{1};
    skip();
    if (peek() == '/') {
      ++i_;
      den = expr();
    }
    skip();
    if (i_ != s_.size()) fail("unexpected '" + std::string(1, s_[i_]) + "'");
    return RationalGF(num, den);
  }

 private:
  std::string_view s_;
  std::size_t i_ = 0;

  [[noreturn]] void fail(const std::string& why) const {
    throw std::invalid_argument("generating function text at offset " + std::to_string(i_) +
                                ": " + why);
  }
  void skip() {
    while (i_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[i_]))) ++i_;
  }
  char peek() {
    skip();
    return i_ < s_.size() ? s_[i_] : '\0';
  }

  Polynomial expr() {
    Polynomial acc;
    bool first = true;
    for (;;) {
      char c = peek();
      bool neg = false;
      if (c == '+' || c == '-') {
        neg = c == '-';
        ++i_;
      } else if (!first) {
        break;
      }
      Polynomial t = term();
      acc += neg ? -t : t;
      first = false;
    }
    return acc;
  }

  Polynomial term() {
    Polynomial acc = power();
    for (;;) {
      char c = peek();
      if (c == '*') {
        ++i_;
        acc *= power();
      } else if (c == '(' || c == 'x' || std::isdigit(static_cast<unsigned char>(c))) {
        acc *= power();
      } else {
        break;
      }
    }
    return acc;
  }

  Polynomial power() {
    Polynomial base = atom();
    if (peek() != '^') return base;
    ++i_;
    const bool brace = peek() == '{';
    if (brace) ++i_;
    skip();
    std::size_t start = i_;
    while (i_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[i_]))) ++i_;
    if (start == i_) fail("exponent expected");
    const int e = std::stoi(std::string(s_.substr(start, i_ - start)));
    if (brace) {
      if (peek() != '}') fail("'}' expected");
      ++i_;
    }
    Polynomial out{1};
    for (int k = 0; k < e; ++k) out *= base;
    return out;
  }

  Polynomial atom() {
    char c = peek();
    if (c == '(') {
      ++i_;
      Polynomial e = expr();
      if (peek() != ')') fail("')' expected");
      ++i_;
      return e;
    }
    if (c == 'x') {
      ++i_;
      return Polynomial{0, 1};
    }
    if (std::isdigit(static_cast<unsigned char>(c))) {
      std::size_t start = i_;
      while (i_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[i_]))) ++i_;
      return Polynomial::constant(BigInt(std::string(s_.substr(start, i_ - start))));
    }
    fail(c ? "unexpected '" + std::string(1, c) + "'" : "unexpected end");
  }
};

}  // namespace

std::string RationalGF::to_json() const {
  nlohmann::ordered_json j;
  j["num"] = coeffs_json(num_);
  j["den"] = coeffs_json(den_);
  return j.dump();
}

RationalGF RationalGF::from_json(std::string_view text) {
  const auto j = nlohmann::json::parse(text);
  return RationalGF(coeffs_from_json(j.at("num")), coeffs_from_json(j.at("den")));
}

RationalGF RationalGF::parse(std::string_view text) { return ExprParser(text).rational(); }

std::vector<BigInt> taylor(const RationalGF& g, std::size_t n) {
  const auto& den = g.den();
  if (den[0] == 0) throw std::domain_error("denominator vanishes at 0");
  std::vector<BigInt> a(n + 1, 0);
  for (std::size_t k = 0; k <= n; ++k) {
    BigInt v = g.num()[k];
    for (std::size_t j = 1; j <= k && j < den.coefficients().size(); ++j) v -= den[j] * a[k - j];
    if (v % den[0] != 0) throw std::domain_error("series is not integral");
    a[k] = v / den[0];
  }
  return a;
}

std::vector<BigInt> series(const RationalGF& g, std::size_t n) {
  auto t = taylor(g, n);
  return std::vector<BigInt>(t.begin() + 1, t.end());
}

}  // namespace cayley
