#include <sstream>

#include "walkspec/bounds.hpp"
#include "walkspec/error.hpp"
#include "walkspec/factor.hpp"
#include "walkspec/snf.hpp"

namespace walkspec {

namespace {

IntMatrix shifted(const IntMatrix& a, const Integer& lambda) {
  IntMatrix b = a;
  for (std::size_t i = 0; i < b.rows(); ++i) b(i, i) -= lambda;
  return b;
}

IntVector sum_vectors(const IntVector& a, const IntVector& b, const Integer& scale_b) {
  IntVector r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i] + scale_b * b[i];
  return r;
}

Integer entry_sum(const IntVector& v) {
  Integer s = 0;
  for (const auto& x : v) s += x;
  return s;
}

// W^T y = (e^T y)(1, lambda, ..., lambda^{n-1})^T (mod modulus)
bool walk_relation(const IntMatrix& walk, const IntVector& y, const Integer& lambda, const Integer& modulus) {
  const IntVector lhs = mat_vec(walk.transpose(), y);
  const Integer sum = entry_sum(y);
  Integer lambda_power = 1;
  for (std::size_t k = 0; k < lhs.size(); ++k) {
    if (!mpz_divisible_p(Integer(lhs[k] - sum * lambda_power).get_mpz_t(), modulus.get_mpz_t())) return false;
    lambda_power = mod_floor(lambda_power * lambda, modulus);
  }
  return true;
}

}  // namespace

FourCongWitness extract_four_cong_witness(const Graph& g, const RatRegOrtho& q, const Integer& p) {
  if (p == 2 || !is_probable_prime(p)) throw DomainError("extract_four_cong_witness: p must be an odd prime");
  if (q.order() != g.order()) throw DomainError("extract_four_cong_witness: order mismatch");
  const std::size_t n = g.order();
  FourCongWitness w;
  w.p = p;
  w.tau = valuation(q.level(), p);
  if (w.tau == 0) throw DomainError("extract_four_cong_witness: tau = v_p(level) is 0");
  const IntMatrix walk = walk_matrix(g);
  if (rank_mod_p(walk, p) + 1 != n) throw DomainError("extract_four_cong_witness: rank_p W != n-1");
  conjugate(q, g);  // throws unless q is in Q(G)

  const Integer pt = power(p, w.tau);
  const Integer p2t = pt * pt;
  const IntMatrix& qhat = q.scaled();
  std::size_t col = n;
  for (std::size_t j = 0; j < n && col == n; ++j)
    if (!is_zero_mod(qhat.column(j), p)) col = j;
  if (col == n) throw InvariantViolation("extract_four_cong_witness: l*Q vanishes mod p");
  w.column = col;
  w.z0 = qhat.column(col);

  // A z0 = lambda z0 (mod p^tau) is read off at a unit coordinate of z0.
  const IntMatrix a = g.adjacency();
  const IntVector az0 = mat_vec(a, w.z0);
  std::size_t unit = 0;
  while (mpz_divisible_p(w.z0[unit].get_mpz_t(), p.get_mpz_t())) ++unit;
  Integer inv;
  const Integer zu = mod_floor(w.z0[unit], pt);
  mpz_invert(inv.get_mpz_t(), zu.get_mpz_t(), pt.get_mpz_t());
  w.lambda0 = mod_floor(az0[unit] * inv, pt);

  w.norm_check = mpz_divisible_p(dot(w.z0, w.z0).get_mpz_t(), p2t.get_mpz_t()) != 0;
  w.quadratic_check = mpz_divisible_p(dot(w.z0, az0).get_mpz_t(), p2t.get_mpz_t()) != 0;
  w.walk_check = is_zero_mod(mat_vec(walk.transpose(), w.z0), pt);
  w.eigen_check = is_zero_mod(sum_vectors(az0, w.z0, Integer(-w.lambda0)), pt);
  if (!w.all()) {
    std::ostringstream msg;
    msg << "four-congruence witness failed at p = " << p << ", tau = " << w.tau << ":"
        << (w.norm_check ? "" : " norm") << (w.quadratic_check ? "" : " quadratic")
        << (w.walk_check ? "" : " walk") << (w.eigen_check ? "" : " eigen");
    throw InvariantViolation(msg.str());
  }
  return w;
}

LemmaReport verify_proof_lemmas(const Graph& g, const FourCongWitness& w) {
  LemmaReport r;
  r.p = w.p;
  r.tau = w.tau;
  r.lambda0 = w.lambda0;
  const std::size_t n = g.order();
  const Integer& p = w.p;
  const unsigned tau = w.tau;
  const Integer pt = power(p, tau);
  const Integer p2t = pt * pt;
  const IntMatrix a = g.adjacency();
  const IntMatrix walk = walk_matrix(g);
  const IntMatrix b = shifted(a, w.lambda0);
  const IntVector& z0 = w.z0;
  auto fail = [&](const std::string& what) { r.failures.push_back(what); };

  // Shape of the SNF of A - lambda0 I.
  const SnfResult snf_b = snf_mod_pk(b, p, tau);
  r.shifted_exponents = snf_b.exponents;
  r.shifted_rank = snf_b.rank();
  r.last_vanishes = r.shifted_rank + 1 <= n;
  r.unit_prefix = r.shifted_rank + 2 >= n;
  for (std::size_t i = 0; r.unit_prefix && i + 2 < n; ++i) r.unit_prefix = snf_b.exponents[i] == 0;
  r.c = (r.shifted_rank + 1 == n) ? snf_b.exponents[n - 2] : tau;
  if (!r.unit_prefix) fail("f_{n-2} of A - lambda0 I is not a unit mod p");
  if (!r.last_vanishes) fail("f_n of A - lambda0 I does not vanish mod p^tau");

  // Bordered matrix M = [A - lambda0 I, z0].
  IntMatrix m(n, n + 1);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) m(i, j) = b(i, j);
    m(i, n) = z0[i];
  }
  r.bordered_annihilated = is_zero_mod(mat_vec(m.transpose(), z0), pt);
  const SnfResult snf_m = snf_mod_pk(m, p, tau);
  r.bordered_shape = snf_m.rank() + 1 == n;
  for (unsigned c : snf_m.exponents) r.bordered_shape = r.bordered_shape && c == 0;
  if (!r.bordered_annihilated) fail("z0^T [A - lambda0 I, z0] != 0 mod p^tau");
  if (!r.bordered_shape) fail("SNF of [A - lambda0 I, z0] is not [diag(I_{n-1}, 0), 0]");

  // z1 with (A - lambda0 I) z1 = p^c z0 and e^T z1 a unit.
  r.case_number = r.c == 0 ? 1 : (r.c == tau ? 2 : 3);
  r.first_solvable_c = tau + 1;
  Solvability at_c;
  for (unsigned i = 0; i <= tau; ++i) {
    IntVector rhs = z0;
    for (auto& x : rhs) x *= power(p, i);
    Solvability s = solvable_mod_pk(b, rhs, p, tau);
    if (s.solvable) {
      r.first_solvable_c = i;
      at_c = std::move(s);
      break;
    }
  }
  if (r.first_solvable_c != r.c) fail("first solvable exponent differs from the SNF exponent c");
  if (r.case_number == 2) {
    const KernelShape ker = kernel_shape(b, p, tau);
    if (!ker.free_basis || ker.free_rank != 2) {
      fail("kernel of A - lambda0 I is not free of rank 2 in the c = tau case");
    } else {
      const std::vector<IntVector> basis = extend_basis({reduce_mod(z0, pt)}, *ker.free_basis, p, tau);
      r.z1 = basis.at(1);
      r.z1_found = true;
    }
  } else if (at_c.solvable) {
    r.z1 = at_c.solution;
    r.z1_found = true;
  }
  if (r.z1_found) {
    const Integer pc = power(p, r.c);
    if (!is_zero_mod(sum_vectors(mat_vec(b, r.z1), z0, Integer(-pc)), pt)) fail("z1 does not solve its congruence");
    r.z1_sum_unit = !mpz_divisible_p(entry_sum(r.z1).get_mpz_t(), p.get_mpz_t());
    if (!r.z1_sum_unit) fail("e^T z1 = 0 mod p");
  } else {
    fail("no z1 found");
  }

  // Walk relations on z0, z1, and the lifted vector z0 - p^tau y.
  r.walk_relation_z0 = walk_relation(walk, z0, w.lambda0, pt);
  if (!r.walk_relation_z0) fail("walk relation fails on z0");
  if (r.z1_found) {
    r.walk_relation_z1 = walk_relation(walk, r.z1, w.lambda0, pt);
    if (!r.walk_relation_z1) fail("walk relation fails on z1");
  }
  IntVector bz0 = mat_vec(b, z0);
  for (auto& x : bz0) mpz_divexact(x.get_mpz_t(), x.get_mpz_t(), pt.get_mpz_t());
  const Solvability ys = solvable_mod_pk(m, bz0, p, tau);
  if (!ys.solvable) {
    fail("(A - lambda0 I) z0 / p^tau is not in the column module of [A - lambda0 I, z0]");
  } else {
    r.y.assign(ys.solution.begin(), ys.solution.begin() + static_cast<std::ptrdiff_t>(n));
    r.s = ys.solution[n];
    const IntVector lift = sum_vectors(z0, r.y, Integer(-pt));
    const IntVector lhs = sum_vectors(mat_vec(b, lift), z0, Integer(-r.s * pt));
    r.walk_relation_lift = is_zero_mod(lhs, p2t) && walk_relation(walk, lift, w.lambda0, p2t);
    if (!r.walk_relation_lift) fail("walk relation fails on z0 - p^tau y mod p^{2 tau}");
  }

  const Integer d = det(walk);
  r.theorem_holds = d != 0 && valuation(d, p) >= 2 * tau;
  if (!r.theorem_holds) fail("v_p(det W) < 2 tau");
  return r;
}

}  // namespace walkspec
