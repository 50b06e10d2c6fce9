#include "wallcross/rational.hpp"

#include <stdexcept>

namespace wallcross {

Rational parse_rational(std::string_view text) {
  std::string s(text);
  auto first = s.find_first_not_of(" \t");
  auto last = s.find_last_not_of(" \t");
  if (first == std::string::npos) {
    throw std::invalid_argument("empty rational literal");
  }
  s = s.substr(first, last - first + 1);
  std::string body = (s[0] == '-' || s[0] == '+') ? s.substr(1) : s;
  auto slash = body.find('/');
  auto digits_only = [](std::string_view part) {
    if (part.empty()) return false;
    for (char c : part) {
      if (c < '0' || c > '9') return false;
    }
    return true;
  };
  if (slash == std::string::npos ? !digits_only(body)
                                 : !digits_only(std::string_view(body).substr(0, slash)) ||
                                       !digits_only(std::string_view(body).substr(slash + 1))) {
    throw std::invalid_argument("malformed rational literal '" + s + "'");
  }
  if (slash != std::string::npos && mpz_class(body.substr(slash + 1)) == 0) {
    throw std::invalid_argument("zero denominator in '" + s + "'");
  }
  Rational value(s[0] == '+' ? body : s, 10);
  value.canonicalize();
  return value;
}

std::string to_string(const Rational& value) { return value.get_str(); }

Rational factorial(unsigned n) {
  mpz_class f;
  mpz_fac_ui(f.get_mpz_t(), n);
  return Rational(f);
}

std::int64_t floor_to_int(const Rational& value) {
  mpz_class q;
  mpz_fdiv_q(q.get_mpz_t(), value.get_num_mpz_t(), value.get_den_mpz_t());
  return q.get_si();
}

std::int64_t ceil_to_int(const Rational& value) {
  mpz_class q;
  mpz_cdiv_q(q.get_mpz_t(), value.get_num_mpz_t(), value.get_den_mpz_t());
  return q.get_si();
}

}  // namespace wallcross
