#include "gmtforms/rational.hpp"

#include <cctype>

#include "gmtforms/errors.hpp"

namespace gmtforms {

std::string rat_to_string(const Rat& q) { return q.get_str(); }

Rat rat_from_string(const std::string& s) {
  if (s.empty()) throw ParseError("empty rational literal");
  // mpq_class(string) aborts on garbage, so validate by hand first.
  auto is_int = [](const std::string& t) {
    if (t.empty()) return false;
    std::size_t i = (t[0] == '-' || t[0] == '+') ? 1 : 0;
    if (i == t.size()) return false;
    for (; i < t.size(); ++i)
      if (!std::isdigit(static_cast<unsigned char>(t[i]))) return false;
    return true;
  };
  const auto slash = s.find('/');
  if (slash == std::string::npos) {
    if (!is_int(s)) throw ParseError("bad rational literal: " + s);
    return Rat(Int(s));
  }
  const std::string num = s.substr(0, slash), den = s.substr(slash + 1);
  if (!is_int(num) || !is_int(den)) throw ParseError("bad rational literal: " + s);
  Int d(den);
  if (d == 0) throw ParseError("zero denominator: " + s);
  Rat q(Int(num), d);
  q.canonicalize();
  return q;
}

Int binomial(long n, long k) {
  if (k < 0 || n < 0 || k > n) return Int(0);
  Int r;
  mpz_bin_uiui(r.get_mpz_t(), static_cast<unsigned long>(n), static_cast<unsigned long>(k));
  return r;
}

Int factorial(long n) {
  if (n < 0) throw IndexOutOfRange("factorial of negative integer");
  Int r;
  mpz_fac_ui(r.get_mpz_t(), static_cast<unsigned long>(n));
  return r;
}

}  // namespace gmtforms
