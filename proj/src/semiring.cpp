#include "w2a/semiring.hpp"

#include <array>
#include <charconv>
#include <sstream>

namespace w2a {

namespace {

const std::array<SemiringDescriptor, 4> kDescriptors = {{
    {SemiringId::boolean, true},
    {SemiringId::tropical, true},
    {SemiringId::rational, true},
    {SemiringId::lang_xy, false},
}};

const std::array<std::string_view, 4> kNames = {"boolean", "tropical", "rational", "lang_xy"};

[[noreturn]] void bad_access(const Weight& w, std::string_view wanted) {
  throw InternalError("weight of semiring '" + std::string(semiring_name(w.semiring_id())) +
                      "' accessed as '" + std::string(wanted) + "'");
}

void require_same_semiring(const Weight& a, const Weight& b) {
  if (a.semiring_id() != b.semiring_id()) {
    throw PreconditionError("mixed-semiring operands: '" +
                            std::string(semiring_name(a.semiring_id())) + "' and '" +
                            std::string(semiring_name(b.semiring_id())) + "'");
  }
}

std::uint64_t checked_add(std::uint64_t a, std::uint64_t b) {
  std::uint64_t r = 0;
  if (__builtin_add_overflow(a, b, &r)) {
    throw Error("tropical weight overflow");
  }
  return r;
}

bool all_digits(std::string_view s) {
  if (s.empty()) return false;
  for (char c : s) {
    if (c < '0' || c > '9') return false;
  }
  return true;
}

}  // namespace

SemiringDescriptor semiring(SemiringId id) { return kDescriptors[static_cast<int>(id)]; }

const SemiringDescriptor* find_semiring(std::string_view name) {
  for (std::size_t i = 0; i < kNames.size(); ++i) {
    if (kNames[i] == name) return &kDescriptors[i];
  }
  return nullptr;
}

std::string_view semiring_name(SemiringId id) { return kNames[static_cast<int>(id)]; }

bool Weight::as_boolean() const {
  if (const bool* b = std::get_if<bool>(&value_)) return *b;
  bad_access(*this, "boolean");
}

const TropicalNumber& Weight::as_tropical() const {
  if (const TropicalNumber* t = std::get_if<TropicalNumber>(&value_)) return *t;
  bad_access(*this, "tropical");
}

const Rational& Weight::as_rational() const {
  if (const Rational* q = std::get_if<Rational>(&value_)) return *q;
  bad_access(*this, "rational");
}

const WordSet& Weight::as_words() const {
  if (const WordSet* s = std::get_if<WordSet>(&value_)) return *s;
  bad_access(*this, "lang_xy");
}

Weight zero(const SemiringDescriptor& s) {
  switch (s.id) {
    case SemiringId::boolean: return Weight::boolean(false);
    case SemiringId::tropical: return Weight::tropical_infinity();
    case SemiringId::rational: return Weight::rational(Rational(0));
    case SemiringId::lang_xy: return Weight::lang({});
  }
  throw InternalError("unknown semiring id");
}

Weight one(const SemiringDescriptor& s) {
  switch (s.id) {
    case SemiringId::boolean: return Weight::boolean(true);
    case SemiringId::tropical: return Weight::tropical(0);
    case SemiringId::rational: return Weight::rational(Rational(1));
    case SemiringId::lang_xy: return Weight::lang({std::string()});
  }
  throw InternalError("unknown semiring id");
}

bool is_zero(const Weight& w) { return w == zero(semiring(w.semiring_id())); }

bool is_one(const Weight& w) { return w == one(semiring(w.semiring_id())); }

Weight plus(const Weight& a, const Weight& b) {
  require_same_semiring(a, b);
  switch (a.semiring_id()) {
    case SemiringId::boolean:
      return Weight::boolean(a.as_boolean() || b.as_boolean());
    case SemiringId::tropical: {
      const TropicalNumber& x = a.as_tropical();
      const TropicalNumber& y = b.as_tropical();
      if (x.infinite) return b;
      if (y.infinite) return a;
      return Weight::tropical(std::min(x.finite, y.finite));
    }
    case SemiringId::rational:
      return Weight::rational(a.as_rational() + b.as_rational());
    case SemiringId::lang_xy: {
      WordSet u = a.as_words();
      u.insert(b.as_words().begin(), b.as_words().end());
      return Weight::lang(std::move(u));
    }
  }
  throw InternalError("unknown semiring id");
}

Weight times(const Weight& a, const Weight& b) {
  require_same_semiring(a, b);
  switch (a.semiring_id()) {
    case SemiringId::boolean:
      return Weight::boolean(a.as_boolean() && b.as_boolean());
    case SemiringId::tropical: {
      const TropicalNumber& x = a.as_tropical();
      const TropicalNumber& y = b.as_tropical();
      if (x.infinite || y.infinite) return Weight::tropical_infinity();
      return Weight::tropical(checked_add(x.finite, y.finite));
    }
    case SemiringId::rational:
      return Weight::rational(a.as_rational() * b.as_rational());
    case SemiringId::lang_xy: {
      WordSet out;
      for (const std::string& u : a.as_words()) {
        for (const std::string& v : b.as_words()) {
          out.insert(u + v);
        }
      }
      return Weight::lang(std::move(out));
    }
  }
  throw InternalError("unknown semiring id");
}

namespace {

Weight parse_tropical(std::string_view text) {
  if (text == "inf") return Weight::tropical_infinity();
  if (!all_digits(text)) {
    throw ParseError("bad tropical weight '" + std::string(text) + "'");
  }
  std::uint64_t n = 0;
  auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), n);
  if (ec != std::errc() || ptr != text.data() + text.size()) {
    throw ParseError("bad tropical weight '" + std::string(text) + "'");
  }
  return Weight::tropical(n);
}

Weight parse_rational(std::string_view text) {
  std::string_view rest = text;
  bool negative = false;
  if (!rest.empty() && rest.front() == '-') {
    negative = true;
    rest.remove_prefix(1);
  }
  std::string_view num_text = rest;
  std::string_view den_text = "1";
  if (auto slash = rest.find('/'); slash != std::string_view::npos) {
    num_text = rest.substr(0, slash);
    den_text = rest.substr(slash + 1);
  }
  if (!all_digits(num_text) || !all_digits(den_text)) {
    throw ParseError("bad rational weight '" + std::string(text) + "'");
  }
  boost::multiprecision::cpp_int num{std::string(num_text)};
  boost::multiprecision::cpp_int den{std::string(den_text)};
  if (den == 0) {
    throw ParseError("zero denominator in rational weight '" + std::string(text) + "'");
  }
  if (negative) num = -num;
  return Weight::rational(Rational(num, den));
}

Weight parse_lang(std::string_view text) {
  if (text.size() < 2 || text.front() != '{' || text.back() != '}') {
    throw ParseError("bad lang_xy weight '" + std::string(text) + "'");
  }
  std::string_view body = text.substr(1, text.size() - 2);
  WordSet words;
  if (body.empty()) return Weight::lang(std::move(words));
  std::size_t start = 0;
  while (true) {
    std::size_t comma = body.find(',', start);
    std::string_view token =
        comma == std::string_view::npos ? body.substr(start) : body.substr(start, comma - start);
    if (token == "e") {
      words.insert(std::string());
    } else {
      if (token.empty()) {
        throw ParseError("empty word token in lang_xy weight '" + std::string(text) + "'");
      }
      for (char c : token) {
        if (c != 'x' && c != 'y') {
          throw ParseError("bad lang_xy word '" + std::string(token) + "'");
        }
      }
      words.insert(std::string(token));
    }
    if (comma == std::string_view::npos) break;
    start = comma + 1;
  }
  return Weight::lang(std::move(words));
}

}  // namespace

Weight parse_weight(const SemiringDescriptor& s, std::string_view text) {
  switch (s.id) {
    case SemiringId::boolean:
      if (text == "0") return Weight::boolean(false);
      if (text == "1") return Weight::boolean(true);
      throw ParseError("bad boolean weight '" + std::string(text) + "'");
    case SemiringId::tropical: return parse_tropical(text);
    case SemiringId::rational: return parse_rational(text);
    case SemiringId::lang_xy: return parse_lang(text);
  }
  throw InternalError("unknown semiring id");
}

std::string format_weight(const Weight& w) {
  switch (w.semiring_id()) {
    case SemiringId::boolean:
      return w.as_boolean() ? "1" : "0";
    case SemiringId::tropical: {
      const TropicalNumber& t = w.as_tropical();
      return t.infinite ? "inf" : std::to_string(t.finite);
    }
    case SemiringId::rational: {
      const Rational& q = w.as_rational();
      std::ostringstream out;
      out << numerator(q);
      if (denominator(q) != 1) out << '/' << denominator(q);
      return out.str();
    }
    case SemiringId::lang_xy: {
      std::string out = "{";
      bool first = true;
      for (const std::string& word : w.as_words()) {
        if (!first) out += ',';
        first = false;
        out += word.empty() ? "e" : word;
      }
      out += '}';
      return out;
    }
  }
  throw InternalError("unknown semiring id");
}

}  // namespace w2a
