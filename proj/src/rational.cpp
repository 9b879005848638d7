#include "kalton/rational.hpp"

#include <cctype>

namespace kalton {

namespace {

bool valid_digits(std::string_view s) {
  if (s.empty()) return false;
  for (char c : s)
    if (!std::isdigit(static_cast<unsigned char>(c))) return false;
  return true;
}

}  // namespace

Rational Rational::parse(std::string_view text) {
  std::string_view s = text;
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  bool negative = false;
  if (!s.empty() && (s.front() == '+' || s.front() == '-')) {
    negative = s.front() == '-';
    s.remove_prefix(1);
  }
  if (s.empty()) throw std::invalid_argument("Rational::parse: empty input '" + std::string(text) + "'");

  auto bad = [&] { return std::invalid_argument("Rational::parse: bad rational '" + std::string(text) + "'"); };

  mpz_class num, den = 1;
  if (auto slash = s.find('/'); slash != std::string_view::npos) {
    std::string_view p = s.substr(0, slash), q = s.substr(slash + 1);
    if (!valid_digits(p) || !valid_digits(q)) throw bad();
    num = mpz_class(std::string(p));
    den = mpz_class(std::string(q));
    if (den == 0) throw std::domain_error("Rational::parse: zero denominator in '" + std::string(text) + "'");
  } else if (auto dot = s.find('.'); dot != std::string_view::npos) {
    std::string_view ip = s.substr(0, dot), fp = s.substr(dot + 1);
    if (ip.empty() && fp.empty()) throw bad();
    if ((!ip.empty() && !valid_digits(ip)) || (!fp.empty() && !valid_digits(fp))) throw bad();
    num = ip.empty() ? mpz_class(0) : mpz_class(std::string(ip));
    for (char c : fp) {
      num = num * 10 + (c - '0');
      den *= 10;
    }
  } else {
    if (!valid_digits(s)) throw bad();
    num = mpz_class(std::string(s));
  }
  if (negative) num = -num;
  return Rational(num, den);
}

std::string Rational::str() const {
  if (is_integer()) return v_.get_num().get_str();
  return v_.get_num().get_str() + "/" + v_.get_den().get_str();
}

std::string Rational::decimal(int frac_digits) const {
  mpz_class scale = 1;
  for (int i = 0; i < frac_digits; ++i) scale *= 10;
  // round(num*scale/den), half away from zero
  mpz_class n = v_.get_num() * scale, d = v_.get_den();
  mpz_class q, r;
  mpz_tdiv_qr(q.get_mpz_t(), r.get_mpz_t(), n.get_mpz_t(), d.get_mpz_t());
  mpz_class r2 = ::abs(r) * 2;
  if (r2 >= d) q += (sgn(n) < 0 ? -1 : 1);

  bool neg = q < 0;
  mpz_class aq = ::abs(q);
  std::string digits = aq.get_str();
  if (static_cast<int>(digits.size()) <= frac_digits)
    digits.insert(0, frac_digits + 1 - digits.size(), '0');
  std::string out = neg ? "-" : "";
  if (frac_digits == 0) return out + digits;
  out += digits.substr(0, digits.size() - frac_digits);
  out += ".";
  out += digits.substr(digits.size() - frac_digits);
  return out;
}

}  // namespace kalton
