#include "sixv/rational.hpp"

#include <stdexcept>

namespace sixv {

namespace {

bool is_integer_literal(std::string_view text)
{
  if (!text.empty() && (text.front() == '-' || text.front() == '+')) text.remove_prefix(1);
  if (text.empty()) return false;
  for (char c : text) {
    if (c < '0' || c > '9') return false;
  }
  return true;
}

mpz_class parse_integer(std::string_view text)
{
  if (!is_integer_literal(text)) {
    throw std::invalid_argument("malformed rational component '" + std::string(text) + "'");
  }
  if (text.front() == '+') text.remove_prefix(1);
  return mpz_class(std::string(text), 10);
}

}  // namespace

Rational parse_rational(std::string_view text)
{
  const auto first = text.find_first_not_of(" \t");
  text = first == std::string_view::npos ? std::string_view{} : text.substr(first);
  text = text.substr(0, text.find_last_not_of(" \t") + 1);
  const auto slash = text.find('/');
  const mpz_class num = parse_integer(text.substr(0, slash));
  mpz_class den = 1;
  if (slash != std::string_view::npos) {
    den = parse_integer(text.substr(slash + 1));
    if (den == 0) throw std::invalid_argument("zero denominator in '" + std::string(text) + "'");
  }
  Rational out(num, den);
  out.canonicalize();
  return out;
}

std::string to_string(const Rational& value)
{
  return value.get_num().get_str() + "/" + value.get_den().get_str();
}

Rational pow(const Rational& base, std::uint64_t exponent)
{
  Rational result = 1;
  Rational square = base;
  while (exponent != 0) {
    if (exponent & 1U) result *= square;
    exponent >>= 1U;
    if (exponent != 0) square *= square;
  }
  return result;
}

}  // namespace sixv
