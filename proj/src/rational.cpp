#include "afpt/rational.hpp"

#include <charconv>

#include "afpt/errors.hpp"

namespace afpt {

std::int64_t floor(const Rational& r) {
  const auto n = r.numerator();
  const auto d = r.denominator();  // boost keeps d > 0
  return n >= 0 ? n / d : -((-n + d - 1) / d);
}

std::int64_t ceil(const Rational& r) { return -floor(-r); }

std::string to_string(const Rational& r) {
  if (r.denominator() == 1) return std::to_string(r.numerator());
  return std::to_string(r.numerator()) + "/" + std::to_string(r.denominator());
}

namespace {

std::int64_t parse_int(std::string_view s, std::string_view whole) {
  std::int64_t v = 0;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (s.empty() || ec != std::errc() || ptr != s.data() + s.size())
    throw InputError("not a rational number: '" + std::string(whole) + "'");
  return v;
}

}  // namespace

Rational parse_rational(std::string_view text) {
  if (auto slash = text.find('/'); slash != std::string_view::npos) {
    const auto den = parse_int(text.substr(slash + 1), text);
    if (den == 0) throw InputError("zero denominator in '" + std::string(text) + "'");
    return Rational(parse_int(text.substr(0, slash), text), den);
  }
  if (auto dot = text.find('.'); dot != std::string_view::npos) {
    auto frac = text.substr(dot + 1);
    if (frac.size() > 12) throw InputError("too many decimals in '" + std::string(text) + "'");
    std::int64_t scale = 1;
    for (std::size_t i = 0; i < frac.size(); ++i) scale *= 10;
    const bool negative = !text.empty() && text.front() == '-';
    const auto whole = text.substr(0, dot);
    const std::int64_t ipart = (whole.empty() || whole == "-") ? 0 : parse_int(whole, text);
    const std::int64_t fpart = frac.empty() ? 0 : parse_int(frac, text);
    const std::int64_t mag = (ipart < 0 ? -ipart : ipart) * scale + fpart;
    return Rational(negative ? -mag : mag, scale);
  }
  return Rational(parse_int(text, text));
}

}  // namespace afpt
