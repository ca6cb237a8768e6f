#ifndef SUPERHP_SUPERMATRIX_HPP
#define SUPERHP_SUPERMATRIX_HPP

#include <Eigen/Dense>
#include <vector>

#include "superhp/grassmann.hpp"

namespace superhp {

using CMat = Eigen::MatrixXcd;
using CVec = Eigen::VectorXcd;

/// Even (2|r)x(2|r) super matrix over A.  Row/column index < 2 is even,
/// >= 2 is odd.  Group elements of G^P live here, as do Lie algebra
/// elements of (P (x) g)_0.
class SuperMatrix {
 public:
  AlgebraSpec spec;
  int n = 2;  // 2 + r
  std::vector<SuperScalar> e;

  SuperMatrix() = default;
  explicit SuperMatrix(const AlgebraSpec& s)
      : spec(s), n(2 + s.r), e(std::size_t(n) * n, SuperScalar(s)) {}

  SuperScalar& at(int i, int j) { return e[std::size_t(i) * n + j]; }
  const SuperScalar& at(int i, int j) const { return e[std::size_t(i) * n + j]; }

  static int pos_parity(int i) { return i < 2 ? 0 : 1; }

  static SuperMatrix identity(const AlgebraSpec& s) {
    SuperMatrix m(s);
    for (int i = 0; i < m.n; ++i) m.at(i, i) = SuperScalar::one(s);
    return m;
  }

  /// Embed a complex (2+r)x(2+r) matrix (e.g. a body-level group element).
  static SuperMatrix from_complex(const AlgebraSpec& s, const CMat& m) {
    SuperMatrix out(s);
    for (int i = 0; i < out.n; ++i)
      for (int j = 0; j < out.n; ++j)
        if (m(i, j) != cplx(0.0)) out.at(i, j) = SuperScalar(s, m(i, j));
    return out;
  }

  /// diag(h, 1_r) embedding of SL(2,R) (or any 2x2).
  static SuperMatrix embed_sl2(const AlgebraSpec& s, const Eigen::Matrix2cd& h) {
    CMat m = CMat::Identity(2 + s.r, 2 + s.r);
    m.topLeftCorner(2, 2) = h;
    return from_complex(s, m);
  }

  /// diag(eps*h, E) block element of G.
  static SuperMatrix block_diag(const AlgebraSpec& s, cplx eps, const Eigen::Matrix2cd& h,
                                const CMat& E) {
    CMat m = CMat::Zero(2 + s.r, 2 + s.r);
    m.topLeftCorner(2, 2) = eps * h;
    m.bottomRightCorner(s.r, s.r) = E;
    return from_complex(s, m);
  }

  CMat body() const {
    CMat m(n, n);
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) m(i, j) = at(i, j).body();
    return m;
  }

  SuperMatrix relative_body() const {
    SuperMatrix out(spec);
    for (std::size_t i = 0; i < e.size(); ++i) out.e[i] = e[i].relative_body();
    return out;
  }

  double norm() const {
    double s = 0;
    for (auto& x : e) s += x.norm();
    return s;
  }

  /// Max deviation from the even block structure.
  double evenness_residual() const {
    double worst = 0;
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) {
        int want = pos_parity(i) ^ pos_parity(j);
        for (auto& [k, c] : at(i, j).terms)
          if (at(i, j).term_grade(k) != want) worst = std::max(worst, std::abs(c));
      }
    return worst;
  }

  friend SuperMatrix operator*(const SuperMatrix& a, const SuperMatrix& b) {
    if (a.spec != b.spec) throw std::invalid_argument("SuperMatrix: spec mismatch");
    SuperMatrix out(a.spec);
    for (int i = 0; i < a.n; ++i)
      for (int j = 0; j < a.n; ++j) {
        SuperScalar acc(a.spec);
        for (int k = 0; k < a.n; ++k) acc += a.at(i, k) * b.at(k, j);
        out.at(i, j) = acc;
      }
    return out;
  }

  friend SuperMatrix operator+(const SuperMatrix& a, const SuperMatrix& b) {
    SuperMatrix out(a.spec);
    for (std::size_t i = 0; i < a.e.size(); ++i) out.e[i] = a.e[i] + b.e[i];
    return out;
  }
  friend SuperMatrix operator-(const SuperMatrix& a, const SuperMatrix& b) {
    SuperMatrix out(a.spec);
    for (std::size_t i = 0; i < a.e.size(); ++i) out.e[i] = a.e[i] - b.e[i];
    return out;
  }
  friend SuperMatrix operator*(cplx s, const SuperMatrix& a) {
    SuperMatrix out(a.spec);
    for (std::size_t i = 0; i < a.e.size(); ++i) out.e[i] = s * a.e[i];
    return out;
  }

  SuperMatrix pow(long long k) const;

  /// Super adjoint: (g*)_{ij} = i^{p_i xor p_j} star_A(g_{ji}).  The i-twist
  /// on the odd blocks is what makes g I g* = I hold on exp(g_1)-elements
  /// with the paper's form matrix I.
  SuperMatrix star() const {
    SuperMatrix out(spec);
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) {
        SuperScalar s = at(j, i).star();
        if (pos_parity(i) != pos_parity(j)) s = cplx(0.0, 1.0) * s;
        out.at(i, j) = s;
      }
    return out;
  }

  /// The invariant form I = diag((0 i; -i 0), 1_r).
  static SuperMatrix form_I(const AlgebraSpec& s) {
    CMat m = CMat::Identity(2 + s.r, 2 + s.r);
    m.topLeftCorner(2, 2) << cplx(0, 0), cplx(0, 1), cplx(0, -1), cplx(0, 0);
    return from_complex(s, m);
  }
};

namespace detail {

/// Determinant of a square block with even entries (they commute), by
/// Gaussian elimination over A with body-magnitude pivoting.
inline SuperScalar even_det(const AlgebraSpec& spec, std::vector<SuperScalar> m, int n) {
  auto at = [&](int i, int j) -> SuperScalar& { return m[std::size_t(i) * n + j]; };
  SuperScalar det = SuperScalar::one(spec);
  int sign = 1;
  for (int col = 0; col < n; ++col) {
    int piv = -1;
    double best = 0;
    for (int i = col; i < n; ++i) {
      double b = std::abs(at(i, col).body());
      if (b > best) { best = b; piv = i; }
    }
    if (piv < 0) return SuperScalar::zero(spec);  // body-singular
    if (piv != col) {
      for (int j = 0; j < n; ++j) std::swap(at(piv, j), at(col, j));
      sign = -sign;
    }
    det = det * at(col, col);
    SuperScalar inv = at(col, col).invert_unit();
    for (int i = col + 1; i < n; ++i) {
      SuperScalar f = at(i, col) * inv;
      if (f.is_zero()) continue;
      for (int j = col; j < n; ++j) at(i, j) = at(i, j) - f * at(col, j);
    }
  }
  return double(sign) * det;
}

}  // namespace detail

/// Berezinian Ber g = det(A - B E^{-1} C) det(E)^{-1} for the block split
/// A 2x2, B 2xr, C rx2, E rxr.  Requires det of the body of E nonzero.
inline SuperScalar berezinian(const SuperMatrix& g) {
  const auto& spec = g.spec;
  int r = spec.r;
  if (r == 0)
    return detail::even_det(spec, {g.at(0, 0), g.at(0, 1), g.at(1, 0), g.at(1, 1)}, 2);

  // E^{-1} via Gauss-Jordan over A (entries even, bodies must be invertible)
  std::vector<SuperScalar> E(std::size_t(r) * r, SuperScalar(spec)),
      Einv(std::size_t(r) * r, SuperScalar(spec));
  for (int i = 0; i < r; ++i)
    for (int j = 0; j < r; ++j) E[std::size_t(i) * r + j] = g.at(2 + i, 2 + j);
  {
    CMat eb(r, r);
    for (int i = 0; i < r; ++i)
      for (int j = 0; j < r; ++j) eb(i, j) = E[std::size_t(i) * r + j].body();
    if (std::abs(eb.determinant()) < 1e-300)
      throw std::domain_error("berezinian: E block has singular body");
  }
  // augmented elimination
  std::vector<SuperScalar> aug(std::size_t(r) * 2 * r, SuperScalar(spec));
  auto A_ = [&](int i, int j) -> SuperScalar& { return aug[std::size_t(i) * 2 * r + j]; };
  for (int i = 0; i < r; ++i) {
    for (int j = 0; j < r; ++j) A_(i, j) = E[std::size_t(i) * r + j];
    A_(i, r + i) = SuperScalar::one(spec);
  }
  for (int col = 0; col < r; ++col) {
    int piv = -1;
    double best = 0;
    for (int i = col; i < r; ++i) {
      double b = std::abs(A_(i, col).body());
      if (b > best) { best = b; piv = i; }
    }
    if (piv != col)
      for (int j = 0; j < 2 * r; ++j) std::swap(A_(piv, j), A_(col, j));
    SuperScalar inv = A_(col, col).invert_unit();
    for (int j = 0; j < 2 * r; ++j) A_(col, j) = A_(col, j) * inv;
    for (int i = 0; i < r; ++i) {
      if (i == col || A_(i, col).is_zero()) continue;
      SuperScalar f = A_(i, col);
      for (int j = 0; j < 2 * r; ++j) A_(i, j) = A_(i, j) - f * A_(col, j);
    }
  }
  for (int i = 0; i < r; ++i)
    for (int j = 0; j < r; ++j) Einv[std::size_t(i) * r + j] = A_(i, r + j);

  // S = A - B E^{-1} C (2x2, even entries: odd*odd products are even)
  std::vector<SuperScalar> S(4, SuperScalar(spec));
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j) {
      SuperScalar acc = g.at(i, j);
      for (int a = 0; a < r; ++a)
        for (int b = 0; b < r; ++b)
          acc -= g.at(i, 2 + a) * Einv[std::size_t(a) * r + b] * g.at(2 + b, j);
      S[std::size_t(i) * 2 + j] = acc;
    }
  SuperScalar detS = detail::even_det(spec, S, 2);
  SuperScalar detE = detail::even_det(spec, E, r);
  return detS * detE.invert_unit();
}

/// Inverse of an even super matrix by blockwise Gauss-Jordan over A.
/// Pivots stay inside the diagonal blocks so they are always even units.
inline SuperMatrix inverse(const SuperMatrix& g) {
  const auto& spec = g.spec;
  int n = g.n;
  std::vector<SuperScalar> aug(std::size_t(n) * 2 * n, SuperScalar(spec));
  auto A_ = [&](int i, int j) -> SuperScalar& { return aug[std::size_t(i) * 2 * n + j]; };
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) A_(i, j) = g.at(i, j);
    A_(i, n + i) = SuperScalar::one(spec);
  }
  for (int col = 0; col < n; ++col) {
    int lo = col < 2 ? col : col, hi = col < 2 ? 2 : n;  // pivot within the block
    int piv = -1;
    double best = 0;
    for (int i = lo; i < hi; ++i) {
      double b = std::abs(A_(i, col).body());
      if (b > best) { best = b; piv = i; }
    }
    if (piv < 0) throw std::domain_error("inverse: body-singular diagonal block");
    if (piv != col)
      for (int j = 0; j < 2 * n; ++j) std::swap(A_(piv, j), A_(col, j));
    SuperScalar inv = A_(col, col).invert_unit();
    for (int j = 0; j < 2 * n; ++j) A_(col, j) = A_(col, j) * inv;
    for (int i = 0; i < n; ++i) {
      if (i == col || A_(i, col).is_zero()) continue;
      SuperScalar f = A_(i, col);
      for (int j = 0; j < 2 * n; ++j) A_(i, j) = A_(i, j) - f * A_(col, j);
    }
  }
  SuperMatrix out(spec);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) out.at(i, j) = A_(i, n + j);
  return out;
}

inline SuperMatrix SuperMatrix::pow(long long k) const {
  if (k < 0) return inverse(*this).pow(-k);
  SuperMatrix acc = identity(spec), base = *this;
  while (k > 0) {
    if (k & 1) acc = acc * base;
    base = base * base;
    k >>= 1;
  }
  return acc;
}

struct MembershipReport {
  double form_residual = 0;   // ||g I g* - I||
  double ber_residual = 0;    // ||Ber g - 1||
  double evenness = 0;
  bool member(double tol = 1e-10) const {
    return form_residual <= tol && ber_residual <= tol && evenness <= tol;
  }
};

inline MembershipReport check_group_membership(const SuperMatrix& g) {
  MembershipReport rep;
  auto I = SuperMatrix::form_I(g.spec);
  rep.form_residual = (g * I * g.star() - I).norm();
  rep.ber_residual = (berezinian(g) - SuperScalar::one(g.spec)).norm();
  rep.evenness = g.evenness_residual();
  return rep;
}

/// Cheap inverse for group elements: g^{-1} = I g* I^{-1}.
inline SuperMatrix group_inverse(const SuperMatrix& g) {
  auto I = SuperMatrix::form_I(g.spec);
  auto Iinv = inverse(I);
  SuperMatrix cand = I * g.star() * Iinv;
  if ((cand * g - SuperMatrix::identity(g.spec)).norm() < 1e-9) return cand;
  return inverse(g);
}

/// Body map # : G -> Aut H as a PSL(2,R) representative (2x2 real, det 1,
/// sign-normalized).  Throws if the body is not of the form diag(eps h, E).
inline Eigen::Matrix2d body_to_AutH(const SuperMatrix& g, double tol = 1e-9) {
  CMat b = g.body();
  int r = g.spec.r;
  if (b.topRightCorner(2, r).norm() > tol || b.bottomLeftCorner(r, 2).norm() > tol)
    throw std::domain_error("body_to_AutH: body has odd blocks");
  Eigen::Matrix2cd M = b.topLeftCorner(2, 2);
  cplx det = M.determinant();
  if (std::abs(det) < tol) throw std::domain_error("body_to_AutH: singular body");
  cplx eps = std::sqrt(det);
  Eigen::Matrix2cd h = M / eps;
  if (h.imag().norm() > tol) {
    eps = -eps;
    h = M / eps;
  }
  if (h.imag().norm() > tol)
    throw std::domain_error("body_to_AutH: body not in G (upper block not eps*SL(2,R))");
  Eigen::Matrix2d hr = h.real();
  // PSL sign normalization
  double lead = std::abs(hr(0, 0)) > tol ? hr(0, 0) : (std::abs(hr(0, 1)) > tol ? hr(0, 1) : hr(1, 0));
  if (lead < 0) hr = -hr;
  return hr;
}

/// Matrix exponential exp(t X) over A by scaling-squaring plus plain series.
/// Nilpotent tails terminate structurally; body series converge since all
/// our bodies are bounded.
inline SuperMatrix exp_point(const SuperMatrix& X, cplx t = 1.0) {
  SuperMatrix Y = t * X;
  double nrm = Y.norm();
  int squarings = 0;
  while (nrm > 1.0 && squarings < 40) {
    Y = 0.5 * Y;
    nrm *= 0.5;
    ++squarings;
  }
  SuperMatrix acc = SuperMatrix::identity(X.spec);
  SuperMatrix term = SuperMatrix::identity(X.spec);
  for (int k = 1; k <= 120; ++k) {
    term = term * Y;
    term = (1.0 / double(k)) * term;
    acc = acc + term;
    if (term.norm() < 1e-19 * (1.0 + acc.norm())) break;
  }
  for (int s = 0; s < squarings; ++s) acc = acc * acc;
  return acc;
}

/// log(1 + Delta) for Delta with vanishing relative body: the series
/// terminates exactly on the nilpotent filtration.
inline SuperMatrix log_unipotent(const SuperMatrix& g) {
  SuperMatrix Delta = g - SuperMatrix::identity(g.spec);
  if (Delta.relative_body().norm() > 1e-8)
    throw std::domain_error("log_unipotent: relative body is not 1");
  SuperMatrix acc(g.spec), pw = Delta;
  int bound = g.spec.nilpotent_bound() + 1;
  for (int k = 1; k <= bound; ++k) {
    acc = acc + (((k & 1) ? 1.0 : -1.0) / double(k)) * pw;
    pw = pw * Delta;
    if (pw.norm() == 0.0) break;
  }
  return acc;
}

/// Unique x with exp(x) = g and x^{#'} = base, found by the filtration
/// Newton step x <- x + log(exp(-x) g).  Needs the eigenvalue-gap condition
/// on ad_base (D_n window), which the callers certify; failure to converge
/// is reported as an error.
inline SuperMatrix log_point(const SuperMatrix& g, const SuperMatrix& base,
                             double tol = 1e-13,
                             const SuperMatrix* start_perturbation = nullptr) {
  if ((exp_point(base) - g.relative_body()).norm() > 1e-8)
    throw std::domain_error("log_point: relative body of g is not exp(base)");
  SuperMatrix x = base;
  if (start_perturbation) x = x + *start_perturbation;
  int N = g.spec.nilpotency + 3;
  double res = 0;
  for (int it = 0; it < N + 4; ++it) {
    SuperMatrix em = exp_point(x, -1.0);
    SuperMatrix y = log_unipotent(em * g);
    x = x + y;
    res = (exp_point(x) - g).norm();
    if (res < tol) return x;
  }
  if (res < 1e-9) return x;
  throw std::runtime_error("log_point: Newton iteration did not converge (residual " +
                           std::to_string(res) + ")");
}

/// --- Lie algebra g = g_0 + g_1 -------------------------------------------

/// g_0 element from sl(2,R) coordinates (a,b,c) and D in u(r)
/// (anti-Hermitian): diag([[a,b],[c,-a]] + (1/2)tr D, D).
inline SuperMatrix lie_even(const AlgebraSpec& s, double a, double b, double c,
                            const CMat& D) {
  int r = s.r;
  CMat m = CMat::Zero(2 + r, 2 + r);
  cplx half_tr = r > 0 ? 0.5 * D.trace() : cplx(0.0);
  m(0, 0) = a + half_tr;
  m(0, 1) = b;
  m(1, 0) = c;
  m(1, 1) = -a + half_tr;
  if (r > 0) m.bottomRightCorner(r, r) = D;
  return SuperMatrix::from_complex(s, m);
}

/// g_1 element from u, v in C^r: top-right rows (v*, -u*), bottom-left
/// columns (u v).
inline SuperMatrix lie_odd(const AlgebraSpec& s, const CVec& u, const CVec& v) {
  int r = s.r;
  CMat m = CMat::Zero(2 + r, 2 + r);
  for (int j = 0; j < r; ++j) {
    m(0, 2 + j) = std::conj(v(j));
    m(1, 2 + j) = -std::conj(u(j));
    m(2 + j, 0) = u(j);
    m(2 + j, 1) = v(j);
  }
  return SuperMatrix::from_complex(s, m);
}

/// Real basis of g: 3 sl(2,R) directions, r^2 u(r) directions, 4r odd
/// directions.  Index order fixed; used by every H^1 rank computation.
inline std::vector<SuperMatrix> lie_basis(const AlgebraSpec& s) {
  int r = s.r;
  std::vector<SuperMatrix> basis;
  basis.push_back(lie_even(s, 1, 0, 0, CMat::Zero(r, r)));
  basis.push_back(lie_even(s, 0, 1, 0, CMat::Zero(r, r)));
  basis.push_back(lie_even(s, 0, 0, 1, CMat::Zero(r, r)));
  for (int j = 0; j < r; ++j) {
    CMat D = CMat::Zero(r, r);
    D(j, j) = cplx(0, 1);
    basis.push_back(lie_even(s, 0, 0, 0, D));
  }
  for (int j = 0; j < r; ++j)
    for (int k = j + 1; k < r; ++k) {
      CMat D = CMat::Zero(r, r);
      D(j, k) = 1;
      D(k, j) = -1;
      basis.push_back(lie_even(s, 0, 0, 0, D));
      D = CMat::Zero(r, r);
      D(j, k) = cplx(0, 1);
      D(k, j) = cplx(0, 1);
      basis.push_back(lie_even(s, 0, 0, 0, D));
    }
  for (int j = 0; j < r; ++j) {
    CVec u = CVec::Zero(r), v = CVec::Zero(r);
    u(j) = 1;
    basis.push_back(lie_odd(s, u, CVec::Zero(r)));
    u(j) = cplx(0, 1);
    basis.push_back(lie_odd(s, u, CVec::Zero(r)));
    v(j) = 1;
    basis.push_back(lie_odd(s, CVec::Zero(r), v));
    v(j) = cplx(0, 1);
    basis.push_back(lie_odd(s, CVec::Zero(r), v));
  }
  return basis;
}

/// Z2 parity of the basis element at the given index (matches lie_basis).
inline int lie_basis_parity(const AlgebraSpec& s, int idx) {
  return idx < 3 + s.r * s.r ? 0 : 1;
}

/// sAd_g x = g x g^{-1}
inline SuperMatrix sAd(const SuperMatrix& g, const SuperMatrix& x) {
  return g * x * group_inverse(g);
}

/// Lie bracket over A.
inline SuperMatrix bracket(const SuperMatrix& x, const SuperMatrix& y) {
  return x * y - y * x;
}

}  // namespace superhp

#endif
