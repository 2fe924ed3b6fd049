#include "ptv/rat.hpp"

#include <cctype>
#include <ostream>

namespace ptv {

Rat Rat::parse(const std::string& s) {
  auto fail = [&]() -> ParseError {
    return ParseError("BadRational", "cannot parse rational '" + s + "'");
  };
  if (s.empty()) throw fail();
  // mpq_set_str accepts whitespace and other bases; enforce the strict
  // "p" / "p/q" grammar up front.
  std::size_t slash = s.find('/');
  auto is_int_token = [](const std::string& t) {
    if (t.empty()) return false;
    std::size_t i = (t[0] == '-') ? 1 : 0;
    if (i == t.size()) return false;
    for (; i < t.size(); ++i)
      if (!std::isdigit(static_cast<unsigned char>(t[i]))) return false;
    return true;
  };
  if (slash == std::string::npos) {
    if (!is_int_token(s)) throw fail();
    return Rat(Int(s));
  }
  std::string p = s.substr(0, slash);
  std::string q = s.substr(slash + 1);
  // Serialized form keeps the sign on the numerator, so the denominator
  // token is unsigned.
  if (!is_int_token(p) || !is_int_token(q) || q[0] == '-') throw fail();
  Int den(q);
  if (den == 0) throw ParseError("BadRational", "zero denominator in '" + s + "'");
  return Rat(Int(p), den);
}

std::string Rat::str() const {
  return q_.get_str();  // canonical form is maintained, so this is "p" or "p/q"
}

std::ostream& operator<<(std::ostream& os, const Rat& r) { return os << r.str(); }

Rat abs(const Rat& r) { return r.sign() < 0 ? -r : r; }

}  // namespace ptv
