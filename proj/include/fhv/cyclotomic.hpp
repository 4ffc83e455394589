#pragma once

// Exact arithmetic in Z[zeta_{2d}] (power basis modulo x^d + 1), in the field
// Q(zeta_{2d}) (power basis modulo the cyclotomic polynomial), and modular
// specialisation zeta -> omega in F_p.

#include <gmpxx.h>

#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <span>
#include <string>
#include <vector>

#include <json.hpp>

namespace fhv {

using BigInt = mpz_class;
using BigRational = mpq_class;

/// Element of Z[zeta] with zeta a primitive `order`-th root of unity,
/// order = 2d.  Stored as d integer coefficients of 1, zeta, ..., zeta^{d-1};
/// higher powers are folded with zeta^d = -1.  Two values compare equal iff
/// their coefficient vectors agree; use CyclotomicField::reduce to compare as
/// complex numbers.
class CycElt {
 public:
  CycElt() = default;

  /// Zero element of Z[zeta_order].  `order` must be even and >= 2.
  explicit CycElt(int order);

  /// Coefficients of an arbitrary-length polynomial in zeta; folded into the
  /// canonical window.
  CycElt(int order, std::span<const BigInt> poly);
  CycElt(int order, std::initializer_list<long> poly);

  static CycElt zero(int order) { return CycElt(order); }
  static CycElt one(int order);

  int order() const noexcept { return order_; }
  int half_order() const noexcept { return order_ / 2; }
  std::span<const BigInt> coeffs() const noexcept { return coeffs_; }
  const BigInt& coeff(std::size_t k) const { return coeffs_.at(k); }

  bool is_zero() const;

  CycElt& operator+=(const CycElt& other);
  CycElt& operator-=(const CycElt& other);
  CycElt& operator*=(const CycElt& other);
  CycElt& operator*=(const BigInt& scalar);

  /// Multiplication by zeta^e; a signed rotation of the coefficients.
  CycElt shifted(long long e) const;

  /// Image under the automorphism zeta -> zeta^k; requires gcd(k, order) = 1
  /// for it to be a field automorphism, but any k gives a ring endomorphism.
  CycElt galois(long long k) const;

  friend CycElt operator+(CycElt x, const CycElt& y) { return x += y; }
  friend CycElt operator-(CycElt x, const CycElt& y) { return x -= y; }
  friend CycElt operator*(const CycElt& x, const CycElt& y);
  friend CycElt operator-(CycElt x);
  friend bool operator==(const CycElt& x, const CycElt& y);

  /// "[c0,c1,...]" with decimal coefficients.
  std::string to_string() const;

 private:
  void check_same_order(const CycElt& other) const;

  int order_ = 0;
  std::vector<BigInt> coeffs_;
};

/// zeta_order^exponent in canonical form.
CycElt root_power(int order, long long exponent);

/// CycElt with a positive integer denominator, kept in lowest terms.
struct CycRational {
  CycElt numerator;
  BigInt denominator{1};

  CycRational() = default;
  CycRational(CycElt num, BigInt den);

  friend bool operator==(const CycRational&, const CycRational&) = default;
};

std::uint64_t euler_phi(std::uint64_t m);

/// Coefficients (constant term first) of the m-th cyclotomic polynomial.
std::vector<BigInt> cyclotomic_polynomial(int m);

using FieldElt = std::vector<BigRational>;

/// Q(zeta_order) = Q[x] / Phi_order(x).
class CyclotomicField {
 public:
  explicit CyclotomicField(int order);

  int order() const noexcept { return order_; }
  std::size_t degree() const noexcept { return degree_; }
  const std::vector<BigInt>& minimal_polynomial() const noexcept { return minpoly_; }

  /// Remainder of the CycElt polynomial modulo Phi, length degree().
  FieldElt reduce(const CycElt& x) const;

  /// Same as reduce() but integral; Phi is monic so no denominators appear.
  std::vector<BigInt> reduce_integral(const CycElt& x) const;

  FieldElt add(const FieldElt& x, const FieldElt& y) const;
  FieldElt mul(const FieldElt& x, const FieldElt& y) const;
  std::vector<BigInt> mul_integral(std::span<const BigInt> x,
                                   std::span<const BigInt> y) const;
  /// Inverse via the extended Euclidean algorithm against Phi.  Throws on 0.
  FieldElt inverse(const FieldElt& x) const;

  bool is_zero(const CycElt& x) const;

 private:
  // Reduces a polynomial of arbitrary length in place; result has size degree_.
  template <class T>
  void reduce_poly(std::vector<T>& poly) const;

  int order_;
  std::size_t degree_;
  std::vector<BigInt> minpoly_;
};

bool is_prime(std::uint64_t p);
std::uint64_t smallest_primitive_root(std::uint64_t p);

/// Element of exact multiplicative order `order` in F_p, namely g^{(p-1)/order}
/// for the smallest primitive root g.  Requires p prime, p = 1 mod order and
/// p < 2^32.
std::uint64_t modular_embedding(int order, std::uint64_t p);

/// The first `count` primes p = 1 (mod order) with p > 2^20.
std::vector<std::uint64_t> admissible_primes(int order, std::size_t count);

/// Image of x under zeta -> omega in F_p.
std::uint64_t to_residue(const CycElt& x, std::uint64_t omega, std::uint64_t p);

nlohmann::json to_json(const CycElt& x);
CycElt cyc_from_json(const nlohmann::json& j);

}  // namespace fhv
