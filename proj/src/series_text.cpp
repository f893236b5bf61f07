#include <cctype>
#include <sstream>

#include "hdpart/errors.hpp"
#include "hdpart/series.hpp"

namespace hdp {

namespace {

std::string monomial_text(const Rational& abs_c, int k) {
  if (k == 0) return to_string(abs_c);
  std::string var = k == 1 ? "t" : "t^" + std::to_string(k);
  if (abs_c == 1) return var;
  return to_string(abs_c) + "*" + var;
}

int term_count(const PolynomialQ& p) {
  int n = 0;
  for (const auto& c : p.coeffs())
    if (c != 0) ++n;
  return n;
}

std::string paren_if_sum(const PolynomialQ& p) {
  const auto s = render(p);
  return term_count(p) > 1 || (term_count(p) == 1 && p.coeffs().back() < 0) ? "(" + s + ")" : s;
}

}  // namespace

std::string render(const PolynomialQ& p) {
  if (p.is_zero()) return "0";
  std::string out;
  bool first = true;
  for (int k = 0; k <= p.degree(); ++k) {
    const Rational& c = p.coeffs()[static_cast<std::size_t>(k)];
    if (c == 0) continue;
    const Rational a = abs(c);
    if (first) {
      if (c < 0) out += "-";
    } else {
      out += c < 0 ? " - " : " + ";
    }
    out += monomial_text(a, k);
    first = false;
  }
  return out;
}

std::string render(const RationalFunctionQ& r) {
  if (r.den().degree() == 0) {
    return render(r.num() * (Rational(1) / r.den()[0]));
  }
  return paren_if_sum(r.num()) + " / (" + render(r.den()) + ")";
}

std::string render(const PowerSeriesQ& s) {
  std::string out = "(";
  for (int i = 0; i <= s.order(); ++i) {
    if (i) out += ", ";
    out += to_string(s[i]);
  }
  return out + ")";
}

std::string render_factored(const RationalFunctionQ& r) {
  const auto red = r.reduced();
  if (red.num().is_zero()) return "0";

  std::string num;
  const int v = red.num().valuation();
  PolynomialQ rest(std::vector<Rational>(red.num().coeffs().begin() + v, red.num().coeffs().end()));
  if (v == 0) {
    num = render(rest);
  } else {
    const std::string tv = v == 1 ? "t" : "t^" + std::to_string(v);
    if (rest == PolynomialQ::constant(1))
      num = tv;
    else if (rest == PolynomialQ::constant(-1))
      num = "-" + tv;
    else
      num = tv + "*" + paren_if_sum(rest);
  }

  PolynomialQ den = red.den();
  if (den.degree() == 0) return num;

  // Peel (1 - t^j) factors, largest j first.
  std::vector<std::pair<int, int>> factors;
  for (int j = den.degree(); j >= 1 && den.degree() > 0; --j) {
    const auto f = PolynomialQ::one_minus(j);
    int e = 0;
    while (den.degree() >= j) {
      auto qr = divmod(den, f);
      if (!qr.remainder.is_zero()) break;
      den = std::move(qr.quotient);
      ++e;
    }
    if (e) factors.emplace_back(j, e);
  }
  std::string dtext;
  if (den == PolynomialQ::constant(1)) {
    std::vector<std::string> parts;
    for (auto it = factors.rbegin(); it != factors.rend(); ++it) {
      std::string f = "(" + render(PolynomialQ::one_minus(it->first)) + ")";
      if (it->second > 1) f += "^" + std::to_string(it->second);
      parts.push_back(f);
    }
    if (parts.size() == 1 && factors.front().second == 1) {
      dtext = parts.front();
    } else {
      dtext = "(";
      for (std::size_t i = 0; i < parts.size(); ++i) dtext += (i ? "*" : "") + parts[i];
      dtext += ")";
    }
  } else {
    dtext = "(" + render(red.den()) + ")";
  }
  const bool wrap = v == 0 && term_count(rest) > 1;
  return (wrap ? "(" + num + ")" : num) + " / " + dtext;
}

// ---- parser

namespace {

class Parser {
 public:
  explicit Parser(std::string_view s) : s_(s) {}

  RationalFunctionQ parse() {
    auto r = expr();
    skip();
    if (i_ != s_.size()) fail("unexpected character");
    return r;
  }

 private:
  [[noreturn]] void fail(const std::string& what) const {
    std::ostringstream os;
    os << "parse error at offset " << i_ << ": " << what << " in '" << s_ << "'";
    throw DomainError(os.str());
  }

  void skip() {
    while (i_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[i_]))) ++i_;
  }

  bool eat(char c) {
    skip();
    if (i_ < s_.size() && s_[i_] == c) {
      ++i_;
      return true;
    }
    return false;
  }

  Integer number() {
    skip();
    const std::size_t start = i_;
    while (i_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[i_]))) ++i_;
    if (start == i_) fail("expected a number");
    return Integer(std::string(s_.substr(start, i_ - start)));
  }

  RationalFunctionQ expr() {
    auto r = term();
    for (;;) {
      if (eat('+'))
        r = r + term();
      else if (eat('-'))
        r = r - term();
      else
        return r;
    }
  }

  RationalFunctionQ term() {
    auto r = unary();
    for (;;) {
      if (eat('*'))
        r = r * unary();
      else if (eat('/'))
        r = r / unary();
      else
        return r;
    }
  }

  RationalFunctionQ unary() {
    if (eat('-')) return RationalFunctionQ(PolynomialQ::constant(-1)) * unary();
    if (eat('+')) return unary();
    return power();
  }

  RationalFunctionQ power() {
    auto base = atom();
    if (!eat('^')) return base;
    const bool par = eat('(');
    const bool neg = eat('-');
    const Integer e = number();
    if (par && !eat(')')) fail("expected ')'");
    if (!e.fits_uint_p() || e > 100000) fail("exponent too large");
    auto r = base.pow(static_cast<unsigned>(e.get_ui()));
    return neg ? RationalFunctionQ(PolynomialQ::constant(1)) / r : r;
  }

  RationalFunctionQ atom() {
    skip();
    if (eat('(')) {
      auto r = expr();
      if (!eat(')')) fail("expected ')'");
      return r;
    }
    if (eat('t')) return RationalFunctionQ(PolynomialQ::monomial(1, 1));
    if (i_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[i_])))
      return RationalFunctionQ(PolynomialQ::constant(Rational(number())));
    fail("expected a number, t or '('");
  }

  std::string_view s_;
  std::size_t i_ = 0;
};

}  // namespace

RationalFunctionQ parse_rational_function(std::string_view text) { return Parser(text).parse(); }

PolynomialQ parse_polynomial(std::string_view text) {
  const auto r = parse_rational_function(text).reduced();
  if (r.den().degree() != 0) throw DomainError("expression is not a polynomial: '" + std::string(text) + "'");
  return r.num() * (Rational(1) / r.den()[0]);
}

}  // namespace hdp
