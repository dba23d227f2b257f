/*
 * Copyright 2026 The dioph Authors.
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     https://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

// Concrete ring backends: Z/n, binary products, and Z seen through a finite
// search window ("zbox").
//
// Every element is carried as a single int64 code:
//   zmod:n      residue in [0, n)
//   product     left_code * |right| + right_code (both factors finite)
//   zbox:B      the integer itself
// so the zero element always has code 0 and codes of a finite ring are
// exactly [0, size).

#ifndef DIOPH_RING_HPP_
#define DIOPH_RING_HPP_

#include <compare>
#include <cstdint>
#include <memory>
#include <numeric>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "dioph/numeric.hpp"

namespace dioph {

struct Element {
  std::int64_t code = 0;

  friend auto operator<=>(const Element&, const Element&) = default;
};

using Tuple = std::vector<Element>;

/// Elements of a backend in enumeration order. `exhaustive` is false when
/// the list is only a window into an infinite ring.
struct Enumeration {
  std::vector<Element> elements;
  bool exhaustive = true;
};

/// Connectedness of Spec R. For zbox the answer is the known one for Z, but
/// it is reported with a caveat because nothing was enumerated.
struct ConnectivityVerdict {
  bool connected = false;
  bool non_exhaustive = false;
};

class Ring {
 public:
  enum class Kind { kZMod, kProduct, kZBox };

  static Ring zmod(std::int64_t n) {
    if (n < 1) throw std::invalid_argument("zmod modulus must be >= 1");
    auto node = std::make_shared<Node>();
    node->kind = Kind::kZMod;
    node->value = n;
    node->size = static_cast<std::uint64_t>(n);
    return Ring(std::move(node));
  }

  static Ring product(Ring left, Ring right) {
    if (!left.is_finite() || !right.is_finite()) {
      throw std::invalid_argument("product factors must be finite backends");
    }
    std::uint64_t sz = 0;
    if (__builtin_mul_overflow(left.size(), right.size(), &sz) || sz > static_cast<std::uint64_t>(INT64_MAX)) {
      throw std::invalid_argument("product backend too large");
    }
    auto node = std::make_shared<Node>();
    node->kind = Kind::kProduct;
    node->size = static_cast<std::uint64_t>(sz);
    node->left = std::make_shared<Ring>(std::move(left));
    node->right = std::make_shared<Ring>(std::move(right));
    return Ring(std::move(node));
  }

  static Ring zbox(std::int64_t bound) {
    if (bound < 1) throw std::invalid_argument("zbox bound must be >= 1");
    auto node = std::make_shared<Node>();
    node->kind = Kind::kZBox;
    node->value = bound;
    return Ring(std::move(node));
  }

  /// Parses `zmod:6`, `zbox:100`, `product:(zmod:2,zmod:3)`. A product with
  /// more than two factors nests to the right.
  static Ring parse(std::string_view text) {
    std::size_t pos = 0;
    Ring r = parse_at(text, pos);
    skip_space(text, pos);
    if (pos != text.size()) {
      throw std::invalid_argument("trailing characters in ring descriptor: " +
                                  std::string(text));
    }
    return r;
  }

  Kind kind() const { return node_->kind; }
  bool is_finite() const { return node_->kind != Kind::kZBox; }

  /// Number of elements; finite backends only.
  std::uint64_t size() const {
    if (!is_finite()) throw std::logic_error("size() of an infinite backend");
    return node_->size;
  }

  std::int64_t modulus() const {
    require(Kind::kZMod, "modulus");
    return node_->value;
  }
  std::int64_t bound() const {
    require(Kind::kZBox, "bound");
    return node_->value;
  }
  const Ring& left() const {
    require(Kind::kProduct, "left");
    return *node_->left;
  }
  const Ring& right() const {
    require(Kind::kProduct, "right");
    return *node_->right;
  }

  /// Additive order of 1; 0 for Z.
  std::int64_t characteristic() const {
    switch (kind()) {
      case Kind::kZMod:
        return node_->value;
      case Kind::kZBox:
        return 0;
      case Kind::kProduct:
        return std::lcm(left().characteristic(), right().characteristic());
    }
    return 0;
  }

  bool is_zero_ring() const { return is_finite() && size() == 1; }

  Element zero() const { return Element{0}; }
  Element one() const { return canonical(1); }

  /// Image of k under the unique ring map Z -> R.
  Element canonical(std::int64_t k) const {
    switch (kind()) {
      case Kind::kZMod:
        return Element{mod_floor(k, node_->value)};
      case Kind::kZBox:
        return Element{k};
      case Kind::kProduct:
        return join(left().canonical(k), right().canonical(k));
    }
    return Element{0};
  }

  bool is_zero(Element a) const { return a.code == 0; }

  Element add(Element a, Element b) const {
    switch (kind()) {
      case Kind::kZMod: {
        std::int64_t s = a.code - (node_->value - b.code);
        if (s < 0) s += node_->value;
        return Element{s};
      }
      case Kind::kZBox:
        return Element{checked_add(a.code, b.code)};
      case Kind::kProduct: {
        auto [al, ar] = split(a);
        auto [bl, br] = split(b);
        return join(left().add(al, bl), right().add(ar, br));
      }
    }
    return Element{0};
  }

  Element neg(Element a) const {
    switch (kind()) {
      case Kind::kZMod:
        return Element{a.code == 0 ? 0 : node_->value - a.code};
      case Kind::kZBox:
        return Element{checked_neg(a.code)};
      case Kind::kProduct: {
        auto [l, r] = split(a);
        return join(left().neg(l), right().neg(r));
      }
    }
    return Element{0};
  }

  Element sub(Element a, Element b) const { return add(a, neg(b)); }

  Element mul(Element a, Element b) const {
    switch (kind()) {
      case Kind::kZMod:
        return Element{mul_mod(a.code, b.code, node_->value)};
      case Kind::kZBox:
        return Element{checked_mul(a.code, b.code)};
      case Kind::kProduct: {
        auto [al, ar] = split(a);
        auto [bl, br] = split(b);
        return join(left().mul(al, bl), right().mul(ar, br));
      }
    }
    return Element{0};
  }

  Element pow(Element a, unsigned e) const {
    Element acc = one();
    Element base = a;
    while (e > 0) {
      if (e & 1U) acc = mul(acc, base);
      e >>= 1U;
      if (e > 0) base = mul(base, base);
    }
    return acc;
  }

  /// Components of a product element.
  std::pair<Element, Element> split(Element a) const {
    require(Kind::kProduct, "split");
    auto rs = static_cast<std::int64_t>(right().size());
    return {Element{a.code / rs}, Element{a.code % rs}};
  }

  Element join(Element l, Element r) const {
    require(Kind::kProduct, "join");
    return Element{l.code * static_cast<std::int64_t>(right().size()) + r.code};
  }

  /// Whether `a` is a legal element code for this backend.
  bool contains(Element a) const {
    if (!is_finite()) return true;
    return a.code >= 0 && static_cast<std::uint64_t>(a.code) < size();
  }

  /// All elements of a finite backend, or the window [-B, B] for zbox:B.
  Enumeration enumerate() const {
    if (!is_finite()) return enumerate_box(node_->value);
    Enumeration e;
    e.elements.reserve(size());
    for (std::uint64_t i = 0; i < size(); ++i) {
      e.elements.push_back(Element{static_cast<std::int64_t>(i)});
    }
    return e;
  }

  /// The window [-box, box] of a zbox backend; finite backends ignore `box`.
  Enumeration enumerate_box(std::int64_t box) const {
    if (is_finite()) return enumerate();
    if (box < 0) throw std::invalid_argument("negative search box");
    Enumeration e;
    e.exhaustive = false;
    e.elements.reserve(static_cast<std::size_t>(2 * box + 1));
    for (std::int64_t v = -box; v <= box; ++v) e.elements.push_back(Element{v});
    return e;
  }

  bool is_domain() const {
    switch (kind()) {
      case Kind::kZMod:
        return is_prime(node_->value);
      case Kind::kZBox:
        return true;
      case Kind::kProduct:
        if (left().is_zero_ring()) return right().is_domain();
        if (right().is_zero_ring()) return left().is_domain();
        return false;
    }
    return false;
  }

  ConnectivityVerdict is_connected_spectrum() const {
    switch (kind()) {
      case Kind::kZMod:
        return {node_->value == 1 || is_prime_power(node_->value), false};
      case Kind::kZBox:
        return {true, true};
      case Kind::kProduct:
        if (left().is_zero_ring()) return right().is_connected_spectrum();
        if (right().is_zero_ring()) return left().is_connected_spectrum();
        return {false, false};
    }
    return {};
  }

  std::string descriptor() const {
    switch (kind()) {
      case Kind::kZMod:
        return "zmod:" + std::to_string(node_->value);
      case Kind::kZBox:
        return "zbox:" + std::to_string(node_->value);
      case Kind::kProduct: {
        std::string s = "product:(" + left().descriptor();
        const Ring* r = &right();
        while (r->kind() == Kind::kProduct) {
          s += "," + r->left().descriptor();
          r = &r->right();
        }
        return s + "," + r->descriptor() + ")";
      }
    }
    return {};
  }

  std::string format(Element a) const {
    if (kind() != Kind::kProduct) return std::to_string(a.code);
    auto [l, r] = split(a);
    return "(" + left().format(l) + "," + right().format(r) + ")";
  }

  friend bool operator==(const Ring& a, const Ring& b) {
    return a.descriptor() == b.descriptor();
  }

 private:
  struct Node {
    Kind kind = Kind::kZMod;
    std::int64_t value = 0;
    std::uint64_t size = 0;
    std::shared_ptr<const Ring> left;
    std::shared_ptr<const Ring> right;
  };

  explicit Ring(std::shared_ptr<const Node> node) : node_(std::move(node)) {}

  void require(Kind k, const char* what) const {
    if (kind() != k) throw std::logic_error(std::string("Ring::") + what + " on wrong backend kind");
  }

  static void skip_space(std::string_view t, std::size_t& pos) {
    while (pos < t.size() && (t[pos] == ' ' || t[pos] == '\t')) ++pos;
  }

  static bool eat(std::string_view t, std::size_t& pos, std::string_view lit) {
    skip_space(t, pos);
    if (t.substr(pos, lit.size()) == lit) {
      pos += lit.size();
      return true;
    }
    return false;
  }

  static std::int64_t read_int(std::string_view t, std::size_t& pos) {
    skip_space(t, pos);
    std::size_t start = pos;
    std::int64_t v = 0;
    while (pos < t.size() && t[pos] >= '0' && t[pos] <= '9') {
      v = checked_add(checked_mul(v, 10), t[pos] - '0');
      ++pos;
    }
    if (pos == start) {
      throw std::invalid_argument("expected integer in ring descriptor: " + std::string(t));
    }
    return v;
  }

  static Ring parse_at(std::string_view t, std::size_t& pos) {
    if (eat(t, pos, "zmod:")) return zmod(read_int(t, pos));
    if (eat(t, pos, "zbox:")) return zbox(read_int(t, pos));
    if (eat(t, pos, "product:")) {
      if (!eat(t, pos, "(")) throw std::invalid_argument("expected '(' after product:");
      std::vector<Ring> factors;
      factors.push_back(parse_at(t, pos));
      while (eat(t, pos, ",")) factors.push_back(parse_at(t, pos));
      if (!eat(t, pos, ")")) throw std::invalid_argument("expected ')' in product descriptor");
      if (factors.size() < 2) throw std::invalid_argument("product needs at least two factors");
      Ring acc = factors.back();
      for (std::size_t i = factors.size() - 1; i-- > 0;) acc = product(factors[i], acc);
      return acc;
    }
    throw std::invalid_argument("unknown ring descriptor: " + std::string(t));
  }

  std::shared_ptr<const Node> node_;
};

/// One prime-power factor of Z/n with the integers realizing the Chinese
/// Remainder isomorphism: x -> x mod modulus, and back via sum idempotent*x_i.
struct CrtFactor {
  PrimePower power;
  std::int64_t modulus = 1;     // p^e
  std::int64_t idempotent = 0;  // == 1 mod p^e, == 0 mod the other factors
};

inline std::vector<CrtFactor> crt_split(const Ring& ring) {
  if (ring.kind() != Ring::Kind::kZMod) throw std::invalid_argument("crt_split needs a zmod backend");
  std::int64_t n = ring.modulus();
  if (n < 2) throw std::invalid_argument("crt_split needs n >= 2");
  std::vector<CrtFactor> out;
  for (const auto& pp : factorize(n)) {
    std::int64_t cofactor = n / pp.value;
    // cofactor * (cofactor^-1 mod p^e) is 1 mod p^e and 0 mod the rest.
    std::int64_t e = mul_mod(cofactor, mod_inverse(cofactor % pp.value, pp.value), n);
    if (pp.value == n) e = 1 % n;
    out.push_back({pp, pp.value, e});
  }
  return out;
}

}  // namespace dioph

#endif  // DIOPH_RING_HPP_
