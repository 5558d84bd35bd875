#include "fdt/rational.hpp"

#include <nlohmann/json.hpp>

namespace fdt {

Rational parse_rational(const std::string& text) {
  // All explicit base 10: the GMP string constructors treat a leading
  // zero as octal otherwise.
  auto slash = text.find('/');
  if (slash != std::string::npos) {
    Integer num(text.substr(0, slash), 10);
    Integer den(text.substr(slash + 1), 10);
    if (den == 0) throw std::invalid_argument("parse_rational: zero denominator");
    Rational q(num, den);
    q.canonicalize();
    return q;
  }
  auto dot = text.find('.');
  if (dot != std::string::npos) {
    std::string digits = text.substr(0, dot) + text.substr(dot + 1);
    std::size_t frac_len = text.size() - dot - 1;
    Integer num(digits, 10);
    Integer den(1);
    for (std::size_t i = 0; i < frac_len; ++i) den *= 10;
    Rational q(num, den);
    q.canonicalize();
    return q;
  }
  return Rational(Integer(text, 10));
}

Rational rationalize(const Rational& x, const Integer& max_den) {
  if (max_den < 1) throw std::invalid_argument("rationalize: max_den must be >= 1");
  if (x.get_den() <= max_den) return x;
  // Continued-fraction convergents h_k/k_k of |x|; return the last one
  // whose denominator still fits. (h_{-2}, h_{-1}) = (0, 1) and
  // (k_{-2}, k_{-1}) = (1, 0).
  Integer num = x.get_num(), den = x.get_den();
  Integer h_prev(0), h(1);
  Integer k_prev(1), k(0);
  bool negative = num < 0;
  if (negative) num = -num;
  Integer a, r;
  while (den != 0) {
    mpz_fdiv_qr(a.get_mpz_t(), r.get_mpz_t(), num.get_mpz_t(), den.get_mpz_t());
    Integer h_next = a * h + h_prev;
    Integer k_next = a * k + k_prev;
    if (k_next > max_den) break;
    h_prev = h; k_prev = k;
    h = h_next; k = k_next;
    num = den; den = r;
  }
  Rational out(negative ? Integer(-h) : h, k);
  out.canonicalize();
  return out;
}

namespace {

nlohmann::json integer_to_json(const Integer& z) {
  if (z.fits_slong_p()) return nlohmann::json(static_cast<std::int64_t>(z.get_si()));
  return nlohmann::json(z.get_str());
}

Integer integer_from_json(const nlohmann::json& j) {
  if (j.is_number_integer()) return Integer(static_cast<long>(j.get<std::int64_t>()));
  if (j.is_string()) return Integer(j.get<std::string>(), 10);
  throw std::invalid_argument("rational_from_json: num/den must be integer or string");
}

}  // namespace

nlohmann::json rational_to_json(const Rational& q) {
  nlohmann::json j;
  j["num"] = integer_to_json(q.get_num());
  j["den"] = integer_to_json(q.get_den());
  return j;
}

Rational rational_from_json(const nlohmann::json& j) {
  if (j.is_number_integer()) return Rational(Integer(static_cast<long>(j.get<std::int64_t>())));
  if (j.is_string()) return parse_rational(j.get<std::string>());
  if (!j.is_object() || !j.contains("num") || !j.contains("den"))
    throw std::invalid_argument("rational_from_json: expected {num, den}");
  Integer num = integer_from_json(j["num"]);
  Integer den = integer_from_json(j["den"]);
  if (den == 0) throw std::invalid_argument("rational_from_json: zero denominator");
  Rational q(num, den);
  q.canonicalize();
  return q;
}

}  // namespace fdt
