#ifndef SUPERHP_TESTUTIL_HPP
#define SUPERHP_TESTUTIL_HPP

#include <random>

#include "superhp/grassmann.hpp"

namespace superhp::testutil {

/// Deterministic RNG for all property sweeps.
inline std::mt19937_64& rng() {
  static std::mt19937_64 gen(0x5eed5eedULL);
  return gen;
}

inline double uniform(double lo, double hi) {
  std::uniform_real_distribution<double> d(lo, hi);
  return d(rng());
}

/// Dyadic rational in [-2,2] with denominator 16: sums/products of a few of
/// these are exact in double, which backs the "exact nilpotent bookkeeping"
/// assertions.
inline double dyadic() {
  std::uniform_int_distribution<int> d(-32, 32);
  return double(d(rng())) / 16.0;
}

inline cplx dyadic_cplx() { return cplx(dyadic(), dyadic()); }
inline cplx uniform_cplx(double a = 1.0) { return cplx(uniform(-a, a), uniform(-a, a)); }

/// Random scalar touching a bounded number of monomials.
inline SuperScalar random_scalar(const AlgebraSpec& s, bool exact, int max_terms = 6,
                                 bool with_body = true) {
  SuperScalar x(s);
  if (with_body) x.add_term(0, 0, exact ? dyadic_cplx() : uniform_cplx());
  std::uniform_int_distribution<int> nz(1, max_terms);
  int n = nz(rng());
  for (int t = 0; t < n; ++t) {
    std::uint32_t pm = 0;
    if (s.kind == AlgebraSpec::Kind::polynomial) {
      std::uniform_int_distribution<int> pe(0, s.nilpotency - 1);
      pm = std::uint32_t(pe(rng()));
    } else if (s.kind == AlgebraSpec::Kind::exterior) {
      std::uniform_int_distribution<int> pmask(0, (1 << s.odd_generators) - 1);
      pm = std::uint32_t(pmask(rng()));
    }
    std::uniform_int_distribution<int> zmask(0, (1 << s.r) - 1);
    x.add_term(pm, std::uint32_t(zmask(rng())), exact ? dyadic_cplx() : uniform_cplx());
  }
  return x;
}

/// Random Z2-homogeneous scalar of the given parity.
inline SuperScalar random_homogeneous(const AlgebraSpec& s, int want, bool exact,
                                      int max_terms = 6) {
  SuperScalar x(s);
  int placed = 0, guard = 0;
  while (placed < max_terms && guard < 200) {
    ++guard;
    SuperScalar probe = random_scalar(s, exact, 1, want == 0);
    for (auto& [k, c] : probe.terms) {
      if (probe.term_grade(k) == want) {
        x.add_term(SuperScalar::key_pmono(k), SuperScalar::key_zmask(k), c);
        ++placed;
      }
    }
  }
  return x;
}

}  // namespace superhp::testutil

#endif
