#include "supreg/prime_field.hpp"

#include <array>
#include <bit>

namespace supreg {

namespace detail {

u64 pow_mod(u64 base, u64 exp, u64 p) noexcept {
  u64 result = 1 % p;
  base %= p;
  while (exp > 0) {
    if (exp & 1) result = mul_mod(result, base, p);
    base = mul_mod(base, base, p);
    exp >>= 1;
  }
  return result;
}

u64 inv_mod(u64 a, u64 p) noexcept {
  // Invariant: r_i = s_i * a (mod p), tracked with signed 128-bit to avoid
  // overflow on s_i for moduli close to 2^63.
  __int128 r0 = static_cast<__int128>(p), r1 = static_cast<__int128>(a % p);
  __int128 s0 = 0, s1 = 1;
  while (r1 != 0) {
    __int128 q = r0 / r1;
    __int128 t = r0 - q * r1;
    r0 = r1;
    r1 = t;
    t = s0 - q * s1;
    s0 = s1;
    s1 = t;
  }
  if (s0 < 0) s0 += static_cast<__int128>(p);
  return static_cast<u64>(s0);
}

}  // namespace detail

namespace {

bool miller_rabin_witness(u64 n, u64 a, u64 d, int s) {
  u64 x = detail::pow_mod(a, d, n);
  if (x == 1 || x == n - 1) return false;
  for (int r = 1; r < s; ++r) {
    x = detail::mul_mod(x, x, n);
    if (x == n - 1) return false;
  }
  return true;
}

}  // namespace

bool is_prime(u64 n) noexcept {
  if (n < 2) return false;
  for (u64 small : {2ULL, 3ULL, 5ULL, 7ULL, 11ULL, 13ULL, 17ULL, 19ULL, 23ULL, 29ULL, 31ULL, 37ULL}) {
    if (n % small == 0) return n == small;
  }
  u64 d = n - 1;
  int s = std::countr_zero(d);
  d >>= s;
  // Jim Sinclair's base set, deterministic below 2^64.
  static constexpr std::array<u64, 7> kBases = {2, 325, 9375, 28178, 450775, 9780504, 1795265022};
  for (u64 a : kBases) {
    u64 base = a % n;
    if (base == 0) continue;
    if (miller_rabin_witness(n, base, d, s)) return false;
  }
  return true;
}

u64 next_prime(u64 n) noexcept {
  u64 c = n + 1;
  while (!is_prime(c)) ++c;
  return c;
}

PrimeField::PrimeField(u64 p) : p_(p) {
  if (p == 2) {
    raise(ErrorCode::InvalidArgument, "p = 2 is not supported; the modulus must be an odd prime");
  }
  if (p >= (1ULL << 63)) {
    raise(ErrorCode::InvalidArgument, "modulus " + std::to_string(p) + " exceeds 2^63");
  }
  if (!is_prime(p)) {
    raise(ErrorCode::NotPrime, std::to_string(p) + " is not prime");
  }
}

FieldElement PrimeField::element(std::int64_t v) const noexcept {
  std::int64_t r = v % static_cast<std::int64_t>(p_);
  if (r < 0) r += static_cast<std::int64_t>(p_);
  return {static_cast<u64>(r), p_};
}

std::vector<FieldElement> PrimeField::elements() const {
  std::vector<FieldElement> out;
  out.reserve(p_);
  for (u64 v = 0; v < p_; ++v) out.push_back({v, p_});
  return out;
}

void PrimeField::require_member(const FieldElement& x) const {
  if (x.modulus() != p_) {
    raise(ErrorCode::ModulusMismatch, "element of F_" + std::to_string(x.modulus()) +
                                          " used in F_" + std::to_string(p_));
  }
}

void require_same_field(const FieldElement& x, const FieldElement& y) {
  if (x.modulus() != y.modulus()) {
    raise(ErrorCode::ModulusMismatch, "F_" + std::to_string(x.modulus()) + " vs F_" +
                                          std::to_string(y.modulus()));
  }
}

FieldElement operator+(const FieldElement& x, const FieldElement& y) {
  require_same_field(x, y);
  return {detail::add_mod(x.value_, y.value_, x.modulus_), x.modulus_};
}

FieldElement operator-(const FieldElement& x, const FieldElement& y) {
  require_same_field(x, y);
  return {detail::sub_mod(x.value_, y.value_, x.modulus_), x.modulus_};
}

FieldElement operator*(const FieldElement& x, const FieldElement& y) {
  require_same_field(x, y);
  return {detail::mul_mod(x.value_, y.value_, x.modulus_), x.modulus_};
}

FieldElement operator/(const FieldElement& x, const FieldElement& y) {
  return x * inv(y);
}

FieldElement operator-(const FieldElement& x) {
  return {x.value_ == 0 ? 0 : x.modulus_ - x.value_, x.modulus_};
}

FieldElement add(const FieldElement& x, const FieldElement& y) { return x + y; }
FieldElement sub(const FieldElement& x, const FieldElement& y) { return x - y; }
FieldElement mul(const FieldElement& x, const FieldElement& y) { return x * y; }
FieldElement neg(const FieldElement& x) { return -x; }

FieldElement pow(const FieldElement& x, u64 exponent) {
  return FieldElement::unchecked(detail::pow_mod(x.value(), exponent, x.modulus()), x.modulus());
}

FieldElement inv(const FieldElement& x) {
  if (x.is_zero()) raise(ErrorCode::ZeroInverse, "0 has no inverse in F_" + std::to_string(x.modulus()));
  return FieldElement::unchecked(detail::inv_mod(x.value(), x.modulus()), x.modulus());
}

namespace {

// Reduces a run of ASCII digits modulo p without materializing the integer.
bool reduce_digits(std::string_view digits, u64 p, u64& out) {
  if (digits.empty()) return false;
  u64 acc = 0;
  for (char ch : digits) {
    if (ch < '0' || ch > '9') return false;
    acc = detail::add_mod(detail::mul_mod(acc, 10, p), static_cast<u64>(ch - '0') % p, p);
  }
  out = acc;
  return true;
}

}  // namespace

FieldElement parse_rational(std::string_view text, const PrimeField& field) {
  const u64 p = field.modulus();
  std::string_view rest = text;
  bool negative = false;
  if (!rest.empty() && rest.front() == '-') {
    negative = true;
    rest.remove_prefix(1);
  }
  std::string_view num_digits = rest;
  std::string_view den_digits;
  bool has_den = false;
  if (auto slash = rest.find('/'); slash != std::string_view::npos) {
    num_digits = rest.substr(0, slash);
    den_digits = rest.substr(slash + 1);
    has_den = true;
  }
  u64 num = 0, den = 1;
  if (!reduce_digits(num_digits, p, num) || (has_den && !reduce_digits(den_digits, p, den))) {
    raise(ErrorCode::ParseError, "malformed rational literal '" + std::string(text) + "'");
  }
  if (den == 0) {
    raise(ErrorCode::DenominatorZeroModP,
          "denominator of '" + std::string(text) + "' vanishes mod " + std::to_string(p));
  }
  FieldElement value = field.from_u64(num) * inv(field.from_u64(den));
  return negative ? -value : value;
}

int legendre(const FieldElement& u) {
  // Jacobi symbol via reciprocity; equals the Legendre symbol for prime p.
  u64 a = u.value();
  u64 n = u.modulus();
  if (a == 0) return 0;
  int result = 1;
  while (a != 0) {
    while ((a & 1) == 0) {
      a >>= 1;
      u64 r = n & 7;
      if (r == 3 || r == 5) result = -result;
    }
    std::swap(a, n);
    if ((a & 3) == 3 && (n & 3) == 3) result = -result;
    a %= n;
  }
  return n == 1 ? result : 0;
}

std::pair<FieldElement, FieldElement> sqrt_mod(const FieldElement& u) {
  const u64 p = u.modulus();
  if (u.is_zero()) return {u, u};
  if (legendre(u) != 1) {
    raise(ErrorCode::NonResidue, std::to_string(u.value()) + " is not a square mod " + std::to_string(p));
  }
  u64 root;
  if ((p & 3) == 3) {
    root = detail::pow_mod(u.value(), (p + 1) / 4, p);
  } else {
    // Tonelli-Shanks with p - 1 = q * 2^s.
    u64 q = p - 1;
    int s = std::countr_zero(q);
    q >>= s;
    u64 z = 2;
    while (legendre(FieldElement::unchecked(z, p)) != -1) ++z;
    u64 c = detail::pow_mod(z, q, p);
    u64 t = detail::pow_mod(u.value(), q, p);
    root = detail::pow_mod(u.value(), (q + 1) / 2, p);
    int m = s;
    while (t != 1) {
      int i = 0;
      u64 t2 = t;
      while (t2 != 1) {
        t2 = detail::mul_mod(t2, t2, p);
        ++i;
      }
      u64 b = c;
      for (int j = 0; j < m - i - 1; ++j) b = detail::mul_mod(b, b, p);
      m = i;
      c = detail::mul_mod(b, b, p);
      t = detail::mul_mod(t, c, p);
      root = detail::mul_mod(root, b, p);
    }
  }
  u64 other = p - root;
  if (other < root) std::swap(root, other);
  return {FieldElement::unchecked(root, p), FieldElement::unchecked(other, p)};
}

FieldElement solve_linear(const FieldElement& c, const FieldElement& d) {
  require_same_field(c, d);
  if (c.is_zero()) {
    raise(ErrorCode::DegenerateLinear,
          d.is_zero() ? "0*x + 0 = 0 holds for every x" : "0*x + d = 0 has no solution");
  }
  return -d / c;
}

}  // namespace supreg
