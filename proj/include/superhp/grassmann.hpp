#ifndef SUPERHP_GRASSMANN_HPP
#define SUPERHP_GRASSMANN_HPP

#include <bit>
#include <cmath>
#include <complex>
#include <cstdint>
#include <map>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

namespace superhp {

using cplx = std::complex<double>;

/// Specification of the coefficient algebra A = P^C (x) Lambda(C^r), where P
/// is a finite dimensional local parameter algebra with maximal ideal I,
/// I^N = 0.  The three kinds cover everything the deformation theory needs:
///   trivial     P = R            (N = 1)
///   polynomial  P = R[X]/(X^N)   (purely even)
///   exterior    P = Lambda(R^m)  (N = m+1, odd generators e_1..e_m)
struct AlgebraSpec {
  enum class Kind { trivial, polynomial, exterior };
  Kind kind = Kind::trivial;
  int nilpotency = 1;     // N with I^N = 0
  int odd_generators = 0; // m (exterior only)
  int r = 0;              // number of odd coordinates zeta_1..zeta_r

  static AlgebraSpec trivial(int r) { return {Kind::trivial, 1, 0, r}; }
  static AlgebraSpec polynomial(int N, int r) { return {Kind::polynomial, N, 0, r}; }
  static AlgebraSpec exterior(int m, int r) { return {Kind::exterior, m + 1, m, r}; }

  int param_dim() const {
    switch (kind) {
      case Kind::trivial: return 1;
      case Kind::polynomial: return nilpotency;
      case Kind::exterior: return 1 << odd_generators;
    }
    return 1;
  }
  /// Hard bound on the nilpotency degree of any scalar with zero body.
  int nilpotent_bound() const { return nilpotency * (r + 1); }

  friend bool operator==(const AlgebraSpec& a, const AlgebraSpec& b) {
    return a.kind == b.kind && a.nilpotency == b.nilpotency &&
           a.odd_generators == b.odd_generators && a.r == b.r;
  }
  friend bool operator!=(const AlgebraSpec& a, const AlgebraSpec& b) { return !(a == b); }
};

namespace detail {

/// Sign of e_A * e_B for exterior bitmask monomials (also used for zeta
/// masks): (-1)^{#inversions}, 0 encoded separately by the overlap test.
inline int merge_sign(std::uint32_t a, std::uint32_t b) {
  int inv = 0;
  std::uint32_t bb = b;
  while (bb) {
    std::uint32_t low = bb & (~bb + 1);  // lowest set bit of b
    inv += std::popcount(a & ~(low - 1) & ~low);  // bits of a strictly above it
    bb ^= low;
  }
  // count pairs (x in a, y in b) with x > y
  return (inv & 1) ? -1 : 1;
}

inline int pm_grade(const AlgebraSpec& s, std::uint32_t pmono) {
  return s.kind == AlgebraSpec::Kind::exterior ? (std::popcount(pmono) & 1) : 0;
}

inline int pm_ideal_degree(const AlgebraSpec& s, std::uint32_t pmono) {
  switch (s.kind) {
    case AlgebraSpec::Kind::trivial: return 0;
    case AlgebraSpec::Kind::polynomial: return int(pmono);
    case AlgebraSpec::Kind::exterior: return std::popcount(pmono);
  }
  return 0;
}

/// Product of parameter monomials; returns {sign, mono}, sign 0 when the
/// product vanishes in P.
inline std::pair<int, std::uint32_t> pm_mul(const AlgebraSpec& s, std::uint32_t a,
                                            std::uint32_t b) {
  switch (s.kind) {
    case AlgebraSpec::Kind::trivial:
      return {1, 0};
    case AlgebraSpec::Kind::polynomial: {
      std::uint32_t e = a + b;
      if (int(e) >= s.nilpotency) return {0, 0};
      return {1, e};
    }
    case AlgebraSpec::Kind::exterior: {
      if (a & b) return {0, 0};
      return {merge_sign(a, b), a | b};
    }
  }
  return {0, 0};
}

}  // namespace detail

/// Element of A = P^C (x) Lambda(C^r), stored sparsely as
///   sum of coeff * pmono * zeta^zmask.
/// Immutable in spirit: all operations return fresh values.
class SuperScalar {
 public:
  AlgebraSpec spec;
  // key = (pmono << 32) | zmask, ordered map for deterministic iteration
  std::map<std::uint64_t, cplx> terms;

  SuperScalar() = default;
  explicit SuperScalar(const AlgebraSpec& s) : spec(s) {}
  SuperScalar(const AlgebraSpec& s, cplx c) : spec(s) { add_term(0, 0, c); }

  static std::uint64_t key(std::uint32_t pmono, std::uint32_t zmask) {
    return (std::uint64_t(pmono) << 32) | zmask;
  }
  static std::uint32_t key_pmono(std::uint64_t k) { return std::uint32_t(k >> 32); }
  static std::uint32_t key_zmask(std::uint64_t k) { return std::uint32_t(k & 0xffffffffu); }

  static SuperScalar one(const AlgebraSpec& s) { return SuperScalar(s, 1.0); }
  static SuperScalar zero(const AlgebraSpec& s) { return SuperScalar(s); }

  /// zeta_i, i in 1..r
  static SuperScalar zeta(const AlgebraSpec& s, int i) {
    if (i < 1 || i > s.r) throw std::invalid_argument("zeta index out of range");
    SuperScalar x(s);
    x.add_term(0, 1u << (i - 1), 1.0);
    return x;
  }
  /// zeta^I for a subset mask
  static SuperScalar zeta_mask(const AlgebraSpec& s, std::uint32_t mask) {
    SuperScalar x(s);
    x.add_term(0, mask, 1.0);
    return x;
  }
  /// X (polynomial kind) or e_i (exterior kind, i in 1..m)
  static SuperScalar param_gen(const AlgebraSpec& s, int i = 1) {
    SuperScalar x(s);
    switch (s.kind) {
      case AlgebraSpec::Kind::polynomial:
        if (s.nilpotency < 2) return x;
        x.add_term(1, 0, 1.0);
        return x;
      case AlgebraSpec::Kind::exterior:
        if (i < 1 || i > s.odd_generators)
          throw std::invalid_argument("parameter generator index out of range");
        x.add_term(1u << (i - 1), 0, 1.0);
        return x;
      case AlgebraSpec::Kind::trivial:
        throw std::invalid_argument("trivial parameter algebra has no generators");
    }
    return x;
  }

  void add_term(std::uint32_t pmono, std::uint32_t zmask, cplx c) {
    if (c == cplx(0.0)) return;
    auto k = key(pmono, zmask);
    auto it = terms.find(k);
    if (it == terms.end()) terms.emplace(k, c);
    else {
      it->second += c;
      if (it->second == cplx(0.0)) terms.erase(it);
    }
  }

  bool is_zero() const { return terms.empty(); }

  /// l1 norm of the coefficients
  double norm() const {
    double s = 0;
    for (auto& [k, c] : terms) s += std::abs(c);
    return s;
  }

  /// Total Z2 grade of a term
  int term_grade(std::uint64_t k) const {
    return (detail::pm_grade(spec, key_pmono(k)) + std::popcount(key_zmask(k))) & 1;
  }

  /// Z2 parity if homogeneous, nullopt for mixed scalars.
  std::optional<int> parity() const {
    std::optional<int> p;
    for (auto& [k, c] : terms) {
      int g = term_grade(k);
      if (!p) p = g;
      else if (*p != g) return std::nullopt;
    }
    if (!p) return 0;  // zero counts as even
    return p;
  }

  /// body #: kill parameter ideal and all zeta
  cplx body() const {
    auto it = terms.find(0);
    return it == terms.end() ? cplx(0.0) : it->second;
  }

  /// relative body #': kill the parameter ideal only
  SuperScalar relative_body() const {
    SuperScalar out(spec);
    for (auto& [k, c] : terms)
      if (key_pmono(k) == 0) out.terms.emplace(k, c);
    return out;
  }

  /// nilpotent part a - #(a)
  SuperScalar nilpotent_part() const {
    SuperScalar out = *this;
    auto it = out.terms.find(0);
    if (it != out.terms.end()) out.terms.erase(it);
    return out;
  }

  SuperScalar operator-() const {
    SuperScalar out(spec);
    for (auto& [k, c] : terms) out.terms.emplace(k, -c);
    return out;
  }

  friend SuperScalar operator+(const SuperScalar& a, const SuperScalar& b) {
    a.check_spec(b);
    SuperScalar out = a;
    for (auto& [k, c] : b.terms) {
      auto it = out.terms.find(k);
      if (it == out.terms.end()) out.terms.emplace(k, c);
      else {
        it->second += c;
        if (it->second == cplx(0.0)) out.terms.erase(it);
      }
    }
    return out;
  }
  friend SuperScalar operator-(const SuperScalar& a, const SuperScalar& b) {
    return a + (-b);
  }
  friend SuperScalar operator*(cplx s, const SuperScalar& a) {
    SuperScalar out(a.spec);
    if (s == cplx(0.0)) return out;
    for (auto& [k, c] : a.terms) out.terms.emplace(k, s * c);
    return out;
  }
  friend SuperScalar operator*(const SuperScalar& a, cplx s) { return s * a; }

  /// Graded commutative product with Koszul signs.
  friend SuperScalar operator*(const SuperScalar& a, const SuperScalar& b) {
    a.check_spec(b);
    SuperScalar out(a.spec);
    for (auto& [ka, ca] : a.terms) {
      std::uint32_t pa = key_pmono(ka), za = key_zmask(ka);
      int za_deg = std::popcount(za);
      for (auto& [kb, cb] : b.terms) {
        std::uint32_t pb = key_pmono(kb), zb = key_zmask(kb);
        if (za & zb) continue;  // odd square vanishes
        auto [psign, pm] = detail::pm_mul(a.spec, pa, pb);
        if (psign == 0) continue;
        // Koszul sign: move zeta^za past the parameter monomial pb
        int sign = psign * detail::merge_sign(za, zb);
        if ((za_deg & 1) && detail::pm_grade(a.spec, pb)) sign = -sign;
        out.add_term(pm, za | zb, double(sign) * ca * cb);
      }
    }
    return out;
  }

  SuperScalar& operator+=(const SuperScalar& b) { *this = *this + b; return *this; }
  SuperScalar& operator-=(const SuperScalar& b) { *this = *this - b; return *this; }
  SuperScalar& operator*=(const SuperScalar& b) { *this = *this * b; return *this; }

  /// Conjugation anti-automorphism of A: conjugate coefficients, reverse odd
  /// monomials.  (e_{i1}..e_{id})* = e_{id}..e_{i1} = (-1)^{d(d-1)/2} e_I,
  /// same rule for zeta^I.
  SuperScalar star() const {
    SuperScalar out(spec);
    for (auto& [k, c] : terms) {
      int dp = (spec.kind == AlgebraSpec::Kind::exterior) ? std::popcount(key_pmono(k)) : 0;
      int dz = std::popcount(key_zmask(k));
      // reversal signs for both factors plus the sign from swapping them
      int rev = (dp * (dp - 1) / 2 + dz * (dz - 1) / 2 + dp * dz) & 1;
      out.terms.emplace(k, (rev ? -1.0 : 1.0) * std::conj(c));
    }
    return out;
  }

  /// Inverse of a unit: terminating Neumann series over the nilpotent part.
  SuperScalar invert_unit() const {
    cplx c = body();
    if (std::abs(c) == 0.0)
      throw std::domain_error("invert_unit: zero body, not a unit");
    SuperScalar n = nilpotent_part() * (1.0 / c);
    SuperScalar acc = SuperScalar::one(spec);
    SuperScalar pw = SuperScalar::one(spec);
    for (int j = 1; j <= spec.nilpotent_bound(); ++j) {
      pw = pw * n;
      if (pw.is_zero()) break;
      acc = acc + ((j & 1) ? -pw : pw);
    }
    return acc * (1.0 / c);
  }

  /// a^u for real u; requires positive real body (principal branch).
  /// Terminating binomial series over the nilpotent part.
  SuperScalar power_real(double u) const {
    cplx c = body();
    if (!(c.real() > 0.0) || std::abs(c.imag()) > 1e-12 * std::abs(c))
      throw std::domain_error("power_real: body is not positive real");
    SuperScalar n = nilpotent_part() * (1.0 / c);
    SuperScalar acc = SuperScalar::one(spec);
    SuperScalar pw = SuperScalar::one(spec);
    double binom = 1.0;
    for (int j = 1; j <= spec.nilpotent_bound(); ++j) {
      pw = pw * n;
      if (pw.is_zero()) break;
      binom *= (u - double(j - 1)) / double(j);
      acc = acc + binom * pw;
    }
    return std::pow(c.real(), u) * acc;
  }

  /// a^k for integer k (negative allowed on units).
  SuperScalar power_int(long long k) const {
    if (k < 0) return invert_unit().power_int(-k);
    SuperScalar acc = SuperScalar::one(spec);
    SuperScalar base = *this;
    while (k > 0) {
      if (k & 1) acc = acc * base;
      base = base * base;
      k >>= 1;
    }
    return acc;
  }

  void check_spec(const SuperScalar& b) const {
    if (spec != b.spec)
      throw std::invalid_argument("SuperScalar: mismatched algebra specs");
  }

  friend bool operator==(const SuperScalar& a, const SuperScalar& b) {
    return a.spec == b.spec && a.terms == b.terms;
  }

  std::string str() const {
    if (terms.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (auto& [k, c] : terms) {
      if (!first) os << " + ";
      first = false;
      os << "(" << c.real() << (c.imag() < 0 ? "" : "+") << c.imag() << "i)";
      std::uint32_t p = key_pmono(k), z = key_zmask(k);
      if (p) os << "*" << pmono_str(p);
      for (int i = 0; i < 32; ++i)
        if (z & (1u << i)) os << "*z" << (i + 1);
    }
    return os.str();
  }

  std::string pmono_str(std::uint32_t p) const {
    if (p == 0) return "1";
    if (spec.kind == AlgebraSpec::Kind::polynomial)
      return p == 1 ? "X" : ("X^" + std::to_string(p));
    std::string s;
    for (int i = 0; i < 32; ++i)
      if (p & (1u << i)) s += "e" + std::to_string(i + 1);
    return s;
  }
};

inline double dist(const SuperScalar& a, const SuperScalar& b) { return (a - b).norm(); }

/// Parse "1", "X^2", "e1e3" back to a monomial index.
inline std::uint32_t parse_pmono(const AlgebraSpec& s, const std::string& m) {
  if (m == "1" || m.empty()) return 0;
  if (s.kind == AlgebraSpec::Kind::polynomial) {
    if (m == "X") return 1;
    if (m.rfind("X^", 0) == 0) return std::uint32_t(std::stoul(m.substr(2)));
    throw std::invalid_argument("bad polynomial monomial: " + m);
  }
  if (s.kind == AlgebraSpec::Kind::exterior) {
    std::uint32_t mask = 0;
    size_t i = 0;
    while (i < m.size()) {
      if (m[i] != 'e') throw std::invalid_argument("bad exterior monomial: " + m);
      size_t j = i + 1;
      while (j < m.size() && isdigit(m[j])) ++j;
      mask |= 1u << (std::stoul(m.substr(i + 1, j - i - 1)) - 1);
      i = j;
    }
    return mask;
  }
  throw std::invalid_argument("trivial algebra has monomial '1' only");
}

}  // namespace superhp

#endif
