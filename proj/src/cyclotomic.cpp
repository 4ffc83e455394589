#include "fhv/cyclotomic.hpp"

#include <algorithm>
#include <map>
#include <mutex>
#include <numeric>

#include "fhv/error.hpp"

namespace fhv {

namespace {

long long floor_mod(long long a, long long m) {
  long long r = a % m;
  return r < 0 ? r + m : r;
}

void check_order(int order) {
  if (order < 2 || order % 2 != 0)
    invalid_argument("cyclotomic order must be even and >= 2, got " + std::to_string(order));
}

}  // namespace

CycElt::CycElt(int order) : order_(order) {
  check_order(order);
  coeffs_.assign(static_cast<std::size_t>(order / 2), BigInt(0));
}

CycElt::CycElt(int order, std::span<const BigInt> poly) : CycElt(order) {
  const std::size_t d = coeffs_.size();
  for (std::size_t k = 0; k < poly.size(); ++k) {
    const std::size_t e = k % static_cast<std::size_t>(order);
    if (e < d)
      coeffs_[e] += poly[k];
    else
      coeffs_[e - d] -= poly[k];
  }
}

CycElt::CycElt(int order, std::initializer_list<long> poly) : CycElt(order) {
  std::vector<BigInt> big(poly.begin(), poly.end());
  *this = CycElt(order, std::span<const BigInt>(big));
}

CycElt CycElt::one(int order) {
  CycElt x(order);
  x.coeffs_[0] = 1;
  return x;
}

bool CycElt::is_zero() const {
  return std::all_of(coeffs_.begin(), coeffs_.end(), [](const BigInt& c) { return c == 0; });
}

void CycElt::check_same_order(const CycElt& other) const {
  if (order_ != other.order_)
    invalid_argument("cyclotomic order mismatch: " + std::to_string(order_) + " vs " +
                     std::to_string(other.order_));
}

CycElt& CycElt::operator+=(const CycElt& other) {
  check_same_order(other);
  for (std::size_t k = 0; k < coeffs_.size(); ++k) coeffs_[k] += other.coeffs_[k];
  return *this;
}

CycElt& CycElt::operator-=(const CycElt& other) {
  check_same_order(other);
  for (std::size_t k = 0; k < coeffs_.size(); ++k) coeffs_[k] -= other.coeffs_[k];
  return *this;
}

CycElt& CycElt::operator*=(const CycElt& other) { return *this = *this * other; }

CycElt& CycElt::operator*=(const BigInt& scalar) {
  for (auto& c : coeffs_) c *= scalar;
  return *this;
}

CycElt operator*(const CycElt& x, const CycElt& y) {
  x.check_same_order(y);
  const std::size_t d = x.coeffs_.size();
  CycElt out(x.order_);
  BigInt t;
  for (std::size_t i = 0; i < d; ++i) {
    if (x.coeffs_[i] == 0) continue;
    for (std::size_t j = 0; j < d; ++j) {
      if (y.coeffs_[j] == 0) continue;
      t = x.coeffs_[i] * y.coeffs_[j];
      const std::size_t e = i + j;
      if (e < d)
        out.coeffs_[e] += t;
      else
        out.coeffs_[e - d] -= t;
    }
  }
  return out;
}

CycElt operator-(CycElt x) {
  for (auto& c : x.coeffs_) c = -c;
  return x;
}

bool operator==(const CycElt& x, const CycElt& y) {
  return x.order_ == y.order_ && x.coeffs_ == y.coeffs_;
}

CycElt CycElt::shifted(long long e) const {
  CycElt out(order_);
  const long long d = static_cast<long long>(coeffs_.size());
  for (long long k = 0; k < d; ++k) {
    if (coeffs_[k] == 0) continue;
    const long long t = floor_mod(k + e, order_);
    if (t < d)
      out.coeffs_[t] += coeffs_[k];
    else
      out.coeffs_[t - d] -= coeffs_[k];
  }
  return out;
}

CycElt CycElt::galois(long long k) const {
  CycElt out(order_);
  const long long d = static_cast<long long>(coeffs_.size());
  for (long long j = 0; j < d; ++j) {
    if (coeffs_[j] == 0) continue;
    const long long t = floor_mod(j * k, order_);
    if (t < d)
      out.coeffs_[t] += coeffs_[j];
    else
      out.coeffs_[t - d] -= coeffs_[j];
  }
  return out;
}

std::string CycElt::to_string() const {
  std::string s = "[";
  for (std::size_t k = 0; k < coeffs_.size(); ++k) {
    if (k) s += ',';
    s += coeffs_[k].get_str();
  }
  return s + "]";
}

CycElt root_power(int order, long long exponent) {
  return CycElt::one(order).shifted(exponent);
}

CycRational::CycRational(CycElt num, BigInt den) : numerator(std::move(num)), denominator(std::move(den)) {
  if (denominator == 0) invalid_argument("CycRational with zero denominator");
  BigInt g = denominator;
  for (const auto& c : numerator.coeffs()) {
    if (g == 1) break;
    mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), c.get_mpz_t());
  }
  if (denominator < 0) g = -g;
  if (g != 1) {
    std::vector<BigInt> reduced(numerator.coeffs().begin(), numerator.coeffs().end());
    for (auto& c : reduced) mpz_divexact(c.get_mpz_t(), c.get_mpz_t(), g.get_mpz_t());
    numerator = CycElt(numerator.order(), std::span<const BigInt>(reduced));
    mpz_divexact(denominator.get_mpz_t(), denominator.get_mpz_t(), g.get_mpz_t());
  }
}

std::uint64_t euler_phi(std::uint64_t m) {
  std::uint64_t result = m;
  for (std::uint64_t p = 2; p * p <= m; ++p) {
    if (m % p) continue;
    while (m % p == 0) m /= p;
    result -= result / p;
  }
  if (m > 1) result -= result / m;
  return result;
}

namespace {

// Exact quotient of `num` by the monic polynomial `den`.
std::vector<BigInt> divide_monic(std::vector<BigInt> num, const std::vector<BigInt>& den) {
  const std::size_t dn = den.size() - 1;
  std::vector<BigInt> q(num.size() - dn, BigInt(0));
  for (std::size_t k = num.size(); k-- > dn;) {
    const BigInt c = num[k];
    q[k - dn] = c;
    for (std::size_t j = 0; j <= dn; ++j) num[k - dn + j] -= c * den[j];
  }
  return q;
}

}  // namespace

std::vector<BigInt> cyclotomic_polynomial(int m) {
  if (m < 1) invalid_argument("cyclotomic_polynomial needs m >= 1");
  static std::mutex mutex;
  static std::map<int, std::vector<BigInt>> cache;
  {
    std::lock_guard lock(mutex);
    if (auto it = cache.find(m); it != cache.end()) return it->second;
  }
  std::vector<BigInt> poly(static_cast<std::size_t>(m) + 1, BigInt(0));
  poly[0] = -1;
  poly[static_cast<std::size_t>(m)] = 1;
  for (int e = 1; e < m; ++e)
    if (m % e == 0) poly = divide_monic(std::move(poly), cyclotomic_polynomial(e));
  std::lock_guard lock(mutex);
  cache.emplace(m, poly);
  return poly;
}

CyclotomicField::CyclotomicField(int order)
    : order_(order), degree_(0), minpoly_(cyclotomic_polynomial(order)) {
  check_order(order);
  degree_ = minpoly_.size() - 1;
}

template <class T>
void CyclotomicField::reduce_poly(std::vector<T>& poly) const {
  for (std::size_t k = poly.size(); k-- > degree_;) {
    if (poly[k] == 0) continue;
    const T c = poly[k];
    for (std::size_t j = 0; j <= degree_; ++j) poly[k - degree_ + j] -= c * minpoly_[j];
  }
  poly.resize(degree_, T(0));
}

FieldElt CyclotomicField::reduce(const CycElt& x) const {
  if (x.order() != order_) invalid_argument("reduce: element order does not match field order");
  FieldElt poly(x.coeffs().begin(), x.coeffs().end());
  reduce_poly(poly);
  return poly;
}

std::vector<BigInt> CyclotomicField::reduce_integral(const CycElt& x) const {
  if (x.order() != order_) invalid_argument("reduce: element order does not match field order");
  std::vector<BigInt> poly(x.coeffs().begin(), x.coeffs().end());
  reduce_poly(poly);
  return poly;
}

bool CyclotomicField::is_zero(const CycElt& x) const {
  const auto r = reduce_integral(x);
  return std::all_of(r.begin(), r.end(), [](const BigInt& c) { return c == 0; });
}

FieldElt CyclotomicField::add(const FieldElt& x, const FieldElt& y) const {
  FieldElt out(degree_);
  for (std::size_t k = 0; k < degree_; ++k) out[k] = x[k] + y[k];
  return out;
}

FieldElt CyclotomicField::mul(const FieldElt& x, const FieldElt& y) const {
  FieldElt prod(2 * degree_, BigRational(0));
  for (std::size_t i = 0; i < degree_; ++i)
    for (std::size_t j = 0; j < degree_; ++j) prod[i + j] += x[i] * y[j];
  reduce_poly(prod);
  return prod;
}

std::vector<BigInt> CyclotomicField::mul_integral(std::span<const BigInt> x,
                                                  std::span<const BigInt> y) const {
  std::vector<BigInt> prod(2 * degree_, BigInt(0));
  for (std::size_t i = 0; i < degree_; ++i) {
    if (x[i] == 0) continue;
    for (std::size_t j = 0; j < degree_; ++j) {
      if (y[j] == 0) continue;
      mpz_addmul(prod[i + j].get_mpz_t(), x[i].get_mpz_t(), y[j].get_mpz_t());
    }
  }
  reduce_poly(prod);
  return prod;
}

namespace {

using QPoly = std::vector<BigRational>;

void trim(QPoly& p) {
  while (!p.empty() && p.back() == 0) p.pop_back();
}

// Quotient and remainder of a / b over Q; b nonzero and trimmed.
std::pair<QPoly, QPoly> divmod(QPoly a, const QPoly& b) {
  trim(a);
  if (a.size() < b.size()) return {QPoly{}, a};
  const std::size_t shift = b.size() - 1;
  QPoly q(a.size() - shift, BigRational(0));
  for (std::size_t k = a.size(); k-- > shift;) {
    if (a[k] == 0) continue;
    const BigRational c = a[k] / b.back();
    q[k - shift] = c;
    for (std::size_t j = 0; j <= shift; ++j) a[k - shift + j] -= c * b[j];
  }
  trim(a);
  trim(q);
  return {q, a};
}

QPoly poly_sub_mul(const QPoly& a, const QPoly& q, const QPoly& b) {
  QPoly out(std::max(a.size(), q.size() + b.size()), BigRational(0));
  for (std::size_t k = 0; k < a.size(); ++k) out[k] += a[k];
  for (std::size_t i = 0; i < q.size(); ++i)
    for (std::size_t j = 0; j < b.size(); ++j) out[i + j] -= q[i] * b[j];
  trim(out);
  return out;
}

}  // namespace

FieldElt CyclotomicField::inverse(const FieldElt& x) const {
  // Maintain r_k = s_k * x (mod Phi).
  QPoly r0(minpoly_.begin(), minpoly_.end());
  QPoly r1 = x;
  trim(r1);
  if (r1.empty()) invalid_argument("inverse of zero field element");
  QPoly s0, s1{BigRational(1)};
  while (r1.size() > 1) {
    auto [q, r] = divmod(r0, r1);
    QPoly s = poly_sub_mul(s0, q, s1);
    r0 = std::move(r1);
    r1 = std::move(r);
    s0 = std::move(s1);
    s1 = std::move(s);
  }
  // r1 is a nonzero constant because Phi is irreducible.
  const BigRational c = r1.at(0);
  for (auto& v : s1) v /= c;
  reduce_poly(s1);
  return s1;
}

bool is_prime(std::uint64_t p) {
  if (p < 2) return false;
  for (std::uint64_t q = 2; q * q <= p; ++q)
    if (p % q == 0) return false;
  return true;
}

namespace {

std::uint64_t pow_mod(std::uint64_t base, std::uint64_t exp, std::uint64_t p) {
  std::uint64_t result = 1 % p;
  base %= p;
  while (exp) {
    if (exp & 1) result = result * base % p;
    base = base * base % p;
    exp >>= 1;
  }
  return result;
}

constexpr std::uint64_t kModulusLimit = std::uint64_t{1} << 32;

}  // namespace

std::uint64_t smallest_primitive_root(std::uint64_t p) {
  if (!is_prime(p)) invalid_argument(std::to_string(p) + " is not prime");
  if (p == 2) return 1;
  std::vector<std::uint64_t> factors;
  std::uint64_t m = p - 1;
  for (std::uint64_t q = 2; q * q <= m; ++q) {
    if (m % q) continue;
    factors.push_back(q);
    while (m % q == 0) m /= q;
  }
  if (m > 1) factors.push_back(m);
  for (std::uint64_t g = 2; g < p; ++g) {
    if (std::all_of(factors.begin(), factors.end(),
                    [&](std::uint64_t q) { return pow_mod(g, (p - 1) / q, p) != 1; }))
      return g;
  }
  throw Error(ErrorCode::Internal, "no primitive root found");
}

std::uint64_t modular_embedding(int order, std::uint64_t p) {
  check_order(order);
  if (p >= kModulusLimit) invalid_argument("modulus must be below 2^32");
  if (!is_prime(p)) invalid_argument(std::to_string(p) + " is not prime");
  if (p % static_cast<std::uint64_t>(order) != 1)
    invalid_argument("prime " + std::to_string(p) + " is not 1 mod " + std::to_string(order) +
                     ", so F_p has no element of order " + std::to_string(order));
  return pow_mod(smallest_primitive_root(p), (p - 1) / static_cast<std::uint64_t>(order), p);
}

std::vector<std::uint64_t> admissible_primes(int order, std::size_t count) {
  check_order(order);
  const auto step = static_cast<std::uint64_t>(order);
  std::uint64_t p = ((std::uint64_t{1} << 20) / step + 1) * step + 1;
  std::vector<std::uint64_t> out;
  for (; out.size() < count; p += step) {
    if (p >= kModulusLimit) throw Error(ErrorCode::Internal, "ran out of admissible primes");
    if (is_prime(p)) out.push_back(p);
  }
  return out;
}

std::uint64_t to_residue(const CycElt& x, std::uint64_t omega, std::uint64_t p) {
  std::uint64_t acc = 0;
  const auto coeffs = x.coeffs();
  for (std::size_t k = coeffs.size(); k-- > 0;) {
    const std::uint64_t c = mpz_fdiv_ui(coeffs[k].get_mpz_t(), p);
    acc = (acc * omega + c) % p;
  }
  return acc;
}

nlohmann::json to_json(const CycElt& x) {
  nlohmann::json coeffs = nlohmann::json::array();
  for (const auto& c : x.coeffs()) coeffs.push_back(c.get_str());
  return {{"order", x.order()}, {"coeffs", std::move(coeffs)}};
}

CycElt cyc_from_json(const nlohmann::json& j) {
  try {
    const int order = j.at("order").get<int>();
    const auto& arr = j.at("coeffs");
    if (!arr.is_array() || arr.size() != static_cast<std::size_t>(order / 2))
      throw Error(ErrorCode::Parse, "CycElt coeffs must have order/2 entries");
    std::vector<BigInt> coeffs;
    coeffs.reserve(arr.size());
    for (const auto& c : arr) {
      BigInt v;
      if (v.set_str(c.get<std::string>(), 10) != 0)
        throw Error(ErrorCode::Parse, "bad integer in CycElt: " + c.get<std::string>());
      coeffs.push_back(std::move(v));
    }
    return CycElt(order, std::span<const BigInt>(coeffs));
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::Parse, std::string("malformed CycElt: ") + e.what());
  }
}

}  // namespace fhv
