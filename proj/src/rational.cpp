#include "alginv/rational.hpp"

#include <cctype>
#include <stdexcept>

namespace alginv {

namespace {

bool all_digits(std::string_view s) {
  if (s.empty()) return false;
  for (char c : s)
    if (!std::isdigit(static_cast<unsigned char>(c))) return false;
  return true;
}

Integer pow10(unsigned long e) {
  Integer r;
  mpz_ui_pow_ui(r.get_mpz_t(), 10, e);
  return r;
}

}  // namespace

Rational parse_rational(std::string_view text) {
  std::string_view s = text;
  bool negative = false;
  if (!s.empty() && (s.front() == '-' || s.front() == '+')) {
    negative = s.front() == '-';
    s.remove_prefix(1);
  }
  if (s.empty()) throw std::invalid_argument("empty rational literal");

  Rational value;
  if (auto slash = s.find('/'); slash != std::string_view::npos) {
    auto num = s.substr(0, slash);
    auto den = s.substr(slash + 1);
    if (!all_digits(num) || !all_digits(den))
      throw std::invalid_argument("malformed rational literal '" + std::string(text) + "'");
    Integer d(std::string(den), 10);
    if (d == 0) throw std::invalid_argument("zero denominator in '" + std::string(text) + "'");
    value = Rational(Integer(std::string(num), 10), d);
    value.canonicalize();
  } else {
    std::string_view mantissa = s;
    long exponent = 0;
    if (auto e = s.find_first_of("eE"); e != std::string_view::npos) {
      mantissa = s.substr(0, e);
      auto exp_text = s.substr(e + 1);
      bool exp_neg = false;
      if (!exp_text.empty() && (exp_text.front() == '-' || exp_text.front() == '+')) {
        exp_neg = exp_text.front() == '-';
        exp_text.remove_prefix(1);
      }
      if (!all_digits(exp_text))
        throw std::invalid_argument("malformed exponent in '" + std::string(text) + "'");
      exponent = std::stol(std::string(exp_text));
      if (exp_neg) exponent = -exponent;
    }
    std::string digits;
    long frac_len = 0;
    if (auto dot = mantissa.find('.'); dot != std::string_view::npos) {
      auto ip = mantissa.substr(0, dot);
      auto fp = mantissa.substr(dot + 1);
      if ((!ip.empty() && !all_digits(ip)) || (!fp.empty() && !all_digits(fp)) ||
          (ip.empty() && fp.empty()))
        throw std::invalid_argument("malformed decimal literal '" + std::string(text) + "'");
      digits = std::string(ip) + std::string(fp);
      frac_len = static_cast<long>(fp.size());
    } else {
      if (!all_digits(mantissa))
        throw std::invalid_argument("malformed number '" + std::string(text) + "'");
      digits = std::string(mantissa);
    }
    Integer n(digits, 10);
    long scale = exponent - frac_len;
    if (scale >= 0) {
      value = Rational(n * pow10(static_cast<unsigned long>(scale)));
    } else {
      value = Rational(n, pow10(static_cast<unsigned long>(-scale)));
      value.canonicalize();
    }
  }
  return negative ? Rational(-value) : value;
}

std::string to_string(const Rational& q) {
  if (q.get_den() == 1) return q.get_num().get_str();
  return q.get_num().get_str() + "/" + q.get_den().get_str();
}

}  // namespace alginv
