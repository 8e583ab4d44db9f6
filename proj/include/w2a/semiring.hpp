#pragma once

#include <cstdint>
#include <set>
#include <string>
#include <string_view>
#include <variant>

#include <boost/multiprecision/cpp_int.hpp>

#include "w2a/error.hpp"

namespace w2a {

enum class SemiringId { boolean = 0, tropical = 1, rational = 2, lang_xy = 3 };

struct SemiringDescriptor {
  SemiringId id;
  bool commutative;

  friend bool operator==(const SemiringDescriptor&, const SemiringDescriptor&) = default;
};

SemiringDescriptor semiring(SemiringId id);
const SemiringDescriptor* find_semiring(std::string_view name);
std::string_view semiring_name(SemiringId id);

using Rational = boost::multiprecision::cpp_rational;

/// Natural number extended with +infinity; infinity is the zero of (min, +).
struct TropicalNumber {
  bool infinite = false;
  std::uint64_t finite = 0;

  static TropicalNumber infinity() { return {true, 0}; }
  static TropicalNumber of(std::uint64_t n) { return {false, n}; }

  friend bool operator==(const TropicalNumber& a, const TropicalNumber& b) {
    return a.infinite == b.infinite && (a.infinite || a.finite == b.finite);
  }
};

/// Finite language over {x, y}; "" is the empty word.
using WordSet = std::set<std::string>;

/// A value together with the semiring it lives in.
class Weight {
 public:
  Weight() : value_(TropicalNumber::infinity()) {}

  static Weight boolean(bool truth) { return Weight(Payload(truth)); }
  static Weight tropical(std::uint64_t n) { return Weight(Payload(TropicalNumber::of(n))); }
  static Weight tropical_infinity() { return Weight(Payload(TropicalNumber::infinity())); }
  static Weight rational(Rational q) { return Weight(Payload(std::move(q))); }
  static Weight lang(WordSet words) { return Weight(Payload(std::move(words))); }

  SemiringId semiring_id() const { return static_cast<SemiringId>(value_.index()); }

  bool as_boolean() const;
  const TropicalNumber& as_tropical() const;
  const Rational& as_rational() const;
  const WordSet& as_words() const;

  friend bool operator==(const Weight&, const Weight&) = default;

 private:
  using Payload = std::variant<bool, TropicalNumber, Rational, WordSet>;
  explicit Weight(Payload p) : value_(std::move(p)) {}
  Payload value_;
};

Weight zero(const SemiringDescriptor& s);
Weight one(const SemiringDescriptor& s);
bool is_zero(const Weight& w);
bool is_one(const Weight& w);

Weight plus(const Weight& a, const Weight& b);
Weight times(const Weight& a, const Weight& b);

Weight parse_weight(const SemiringDescriptor& s, std::string_view text);
std::string format_weight(const Weight& w);

}  // namespace w2a
