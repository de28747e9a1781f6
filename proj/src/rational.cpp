#include "gdof/rational.hpp"

#include <cctype>

namespace gdof {

Rational rat(long num, long den) {
  if (den == 0) throw ParseError("rational with zero denominator");
  Rational r(num, den);
  r.canonicalize();
  return r;
}

namespace {

bool valid_integer(const std::string& s) {
  if (s.empty()) return false;
  std::size_t i = (s[0] == '-' || s[0] == '+') ? 1 : 0;
  if (i == s.size()) return false;
  for (; i < s.size(); ++i)
    if (!std::isdigit(static_cast<unsigned char>(s[i]))) return false;
  return true;
}

}  // namespace

Rational parse_rational(const std::string& text) {
  std::string s;
  for (char c : text)
    if (!std::isspace(static_cast<unsigned char>(c))) s.push_back(c);
  if (s.empty()) throw ParseError("empty rational literal");

  auto slash = s.find('/');
  if (slash != std::string::npos) {
    std::string num = s.substr(0, slash), den = s.substr(slash + 1);
    if (!valid_integer(num) || !valid_integer(den))
      throw ParseError("bad rational literal: '" + text + "'");
    Rational r{mpz_class(num, 10), mpz_class(den, 10)};
    if (r.get_den() == 0) throw ParseError("zero denominator in '" + text + "'");
    r.canonicalize();
    return r;
  }

  auto dot = s.find('.');
  if (dot != std::string::npos) {
    std::string head = s.substr(0, dot), tail = s.substr(dot + 1);
    bool neg = !head.empty() && head[0] == '-';
    if (!head.empty() && (head[0] == '-' || head[0] == '+')) head = head.substr(1);
    if (head.empty()) head = "0";
    if (tail.empty()) tail = "0";
    if (!valid_integer(head) || !valid_integer(tail))
      throw ParseError("bad decimal literal: '" + text + "'");
    mpz_class scale;
    mpz_ui_pow_ui(scale.get_mpz_t(), 10, tail.size());
    mpz_class numerator = mpz_class(head, 10) * scale + mpz_class(tail, 10);
    if (neg) numerator = -numerator;
    Rational r(numerator, scale);
    r.canonicalize();
    return r;
  }

  if (!valid_integer(s)) throw ParseError("bad rational literal: '" + text + "'");
  return Rational(mpz_class(s, 10));
}

std::string rational_str(const Rational& r) {
  if (r.get_den() == 1) return r.get_num().get_str();
  return r.get_num().get_str() + "/" + r.get_den().get_str();
}

std::vector<Rational> parse_rational_list(const std::string& csv) {
  std::vector<Rational> out;
  std::string cur;
  for (char c : csv) {
    if (c == ',') {
      out.push_back(parse_rational(cur));
      cur.clear();
    } else {
      cur.push_back(c);
    }
  }
  out.push_back(parse_rational(cur));
  return out;
}

double to_double(const Rational& r) { return r.get_d(); }

}  // namespace gdof
