#pragma once

// The generic Type III unprojection family and its machine checks.
//
// For n >= 1 the ambient ring is k[a_ij, z_j] (1 <= i <= n, 1 <= j <= n+1),
// M = (a_ij), f_i(z) = sum_j a_ij z_j, and Delta1 is the determinant of M
// with its first column deleted.  Quotient-ring ideals are handled through
// their lifts to the ambient ring: I_D is (z_1..z_{n+1}) + I_X and I_r is
// (z_1, Delta1) + I_X.
//
// The unprojection ring O_X[I_r^-1] is never built from fractions.  It is
// represented by the presentation k[a, z, T_2..T_{n+1}] / ker(phi) with
// T_i standing for z_i / z_1, and ker(phi) is obtained by saturating
// I_X + (z_1 T_i - z_i) at z_1.  phi is the identity on the ambient
// variables, so no elimination step is involved.

#include <algorithm>
#include <array>
#include <atomic>
#include <chrono>
#include <functional>
#include <stdexcept>
#include <string>
#include <thread>
#include <vector>

#include "unproj/expr_io.hpp"
#include "unproj/ideal_ops.hpp"
#include "unproj/matrix.hpp"
#include "unproj/report.hpp"

namespace unproj {

template <CoefficientField F>
struct UnprojectionFamily {
  int n = 0;
  RingPtr<F> ambient;   // a11 > ... > a_{n,n+1} > z1 > ... > z_{n+1}
  RingPtr<F> psi_ring;  // ambient + T1..T_{n+1}, weight 1 on the T's
  RingPtr<F> phi_ring;  // ambient + T2..T_{n+1}
  PolyMatrix<F> matrix;
  std::vector<Polynomial<F>> f_z;  // in ambient
  std::vector<Polynomial<F>> f_T;  // in psi_ring
  Polynomial<F> delta1;            // in ambient
  Ideal<F> ix;
  Ideal<F> id_lift;
  Ideal<F> ir_lift;

  static std::string a_name(int i, int j) { return "a" + std::to_string(i) + std::to_string(j); }
  static std::string z_name(int j) { return "z" + std::to_string(j); }
  static std::string t_name(int j) { return "T" + std::to_string(j); }

  Polynomial<F> a(int i, int j, const RingPtr<F>& ring) const { return Polynomial<F>::variable(ring, a_name(i, j)); }
  Polynomial<F> z(int j, const RingPtr<F>& ring) const { return Polynomial<F>::variable(ring, z_name(j)); }
  Polynomial<F> z(int j) const { return z(j, ambient); }
  Polynomial<F> t(int j, const RingPtr<F>& ring) const { return Polynomial<F>::variable(ring, t_name(j)); }
};

template <CoefficientField F>
UnprojectionFamily<F> build_generic_family(int n, const F& field = F{}) {
  if (n < 1) throw std::invalid_argument("the generic family needs n >= 1");
  using Fam = UnprojectionFamily<F>;
  std::vector<std::string> amb;
  for (int i = 1; i <= n; ++i)
    for (int j = 1; j <= n + 1; ++j) amb.push_back(Fam::a_name(i, j));
  for (int j = 1; j <= n + 1; ++j) amb.push_back(Fam::z_name(j));

  std::vector<std::string> psi_vars = amb, phi_vars = amb;
  for (int j = 1; j <= n + 1; ++j) psi_vars.push_back(Fam::t_name(j));
  for (int j = 2; j <= n + 1; ++j) phi_vars.push_back(Fam::t_name(j));
  Grading weights(psi_vars.size(), 0);
  std::fill(weights.end() - (n + 1), weights.end(), 1u);

  auto ambient = make_ring(field, amb);
  auto psi_ring = make_ring(field, psi_vars, OrderKind::grevlex, weights);
  auto phi_ring = make_ring(field, phi_vars);

  PolyMatrix<F> m(ambient, n, n + 1);
  for (int i = 1; i <= n; ++i)
    for (int j = 1; j <= n + 1; ++j) m.at(i - 1, j - 1) = Polynomial<F>::variable(ambient, Fam::a_name(i, j));

  std::vector<Polynomial<F>> f_z, f_T;
  for (int i = 1; i <= n; ++i) {
    Polynomial<F> fz(ambient), ft(psi_ring);
    for (int j = 1; j <= n + 1; ++j) {
      fz += m.at(i - 1, j - 1) * Polynomial<F>::variable(ambient, Fam::z_name(j));
      ft += Polynomial<F>::variable(psi_ring, Fam::a_name(i, j)) * Polynomial<F>::variable(psi_ring, Fam::t_name(j));
    }
    f_z.push_back(fz);
    f_T.push_back(ft);
  }
  auto delta1 = determinant(m.without_column(0));

  Ideal<F> ix(ambient, f_z);
  std::vector<Polynomial<F>> d_gens, r_gens;
  for (int j = 1; j <= n + 1; ++j) d_gens.push_back(Polynomial<F>::variable(ambient, Fam::z_name(j)));
  d_gens.insert(d_gens.end(), f_z.begin(), f_z.end());
  r_gens = {Polynomial<F>::variable(ambient, Fam::z_name(1)), delta1};
  r_gens.insert(r_gens.end(), f_z.begin(), f_z.end());

  return UnprojectionFamily<F>{n,      ambient, psi_ring, phi_ring, std::move(m), std::move(f_z), std::move(f_T),
                               delta1, ix,      Ideal<F>(ambient, d_gens),     Ideal<F>(ambient, r_gens)};
}

/// Lift of the residual ideal ((z) + Q) : D of D/Q with respect to z, for
/// ideals given by their lifts containing the modulus Q.
template <CoefficientField F>
Ideal<F> residual_ideal(const Ideal<F>& modulus, const Ideal<F>& divisor, const Polynomial<F>& z,
                        const Budget& budget = Budget::unlimited()) {
  if (ideal_membership(z, modulus, budget)) throw std::invalid_argument("z is zero in the quotient ring");
  if (!ideal_membership(z, divisor, budget)) throw std::invalid_argument("z does not lie in the divisor ideal");
  return quotient(modulus + Ideal<F>(modulus.ring(), {z}), divisor, budget);
}

template <CoefficientField F>
struct ClaimedIdeals {
  Ideal<F> ker_psi;  // in psi_ring
  Ideal<F> j;        // in psi_ring
  Ideal<F> ker_phi;  // in phi_ring
};

/// The generator lists stated for ker(psi), its largest homogeneous
/// subideal J, and ker(phi).  f_j ranges over 1 <= j <= n.
template <CoefficientField F>
ClaimedIdeals<F> claimed_ideals(const UnprojectionFamily<F>& fam) {
  const int n = fam.n;
  const auto& R1 = fam.psi_ring;
  const auto& R2 = fam.phi_ring;
  std::vector<Polynomial<F>> psi, j, phi;
  for (int i = 1; i <= n + 1; ++i) psi.push_back(fam.t(i, R1) - fam.z(i, R1));
  for (const auto& f : fam.f_z) psi.push_back(map_to_ring(f, R1));

  for (int a = 1; a <= n + 1; ++a)
    for (int b = a + 1; b <= n + 1; ++b) j.push_back(fam.z(a, R1) * fam.t(b, R1) - fam.z(b, R1) * fam.t(a, R1));
  for (const auto& f : fam.f_z) j.push_back(map_to_ring(f, R1));
  for (const auto& f : fam.f_T) j.push_back(f);

  for (int i = 2; i <= n + 1; ++i) phi.push_back(fam.z(i, R2) - fam.z(1, R2) * fam.t(i, R2));
  for (int r = 1; r <= n; ++r) {
    // f_r(1, T_2, ..., T_{n+1})
    Polynomial<F> g = fam.a(r, 1, R2);
    for (int c = 2; c <= n + 1; ++c) g += fam.a(r, c, R2) * fam.t(c, R2);
    phi.push_back(g);
  }
  return {Ideal<F>(R1, psi), Ideal<F>(R1, j), Ideal<F>(R2, phi)};
}

/// psi: T_i -> z_i into O_X.
template <CoefficientField F>
AlgebraMap<F> psi_map(const UnprojectionFamily<F>& fam) {
  std::vector<std::pair<std::string, Polynomial<F>>> images;
  for (int i = 1; i <= fam.n + 1; ++i) images.emplace_back(fam.t_name(i), fam.z(i));
  return AlgebraMap<F>(fam.psi_ring, fam.ambient, std::move(images), std::nullopt, fam.ix);
}

/// phi: T_i -> z_i / z_1 into the fraction field of O_X.
template <CoefficientField F>
AlgebraMap<F> phi_map(const UnprojectionFamily<F>& fam) {
  std::vector<std::pair<std::string, Polynomial<F>>> images;
  for (int i = 2; i <= fam.n + 1; ++i) images.emplace_back(fam.t_name(i), fam.z(i));
  return AlgebraMap<F>(fam.phi_ring, fam.ambient, std::move(images), fam.z(1), fam.ix);
}

/// p with Delta1 * z_j - z_1 * p in I_X, read off the adjugate of the
/// submatrix N of M without its first column: Delta1 z' = adj(N)(f - a_1 z_1).
template <CoefficientField F>
Polynomial<F> cramer_cofactor(const UnprojectionFamily<F>& fam, int j) {
  if (j == 1) return fam.delta1;
  const auto n_mat = fam.matrix.without_column(0);
  const std::size_t k = static_cast<std::size_t>(j - 2);
  Polynomial<F> p(fam.ambient);
  for (std::size_t i = 0; i < n_mat.rows(); ++i) {
    // adj(N)[k][i] = (-1)^(i+k) det(N without row i, column k)
    auto minor = determinant(n_mat.without(i, k));
    auto term = minor * fam.matrix.at(i, 0);
    p = ((i + k) % 2 == 0) ? p - term : p + term;
  }
  return p;
}

// ---------------------------------------------------------------------------
// Polynomial-ring certificate

struct RingCertificate {
  bool pass = false;
  std::vector<std::string> residual;  // variables of the polynomial ring, on pass
  std::string reason;                 // on fail
};

/// Passes iff the reduced basis of K under a block order with `eliminable`
/// first is { e - g_e } with distinct bare variables e from `eliminable` and
/// tails g_e free of those variables.  Then ring/K is the polynomial ring on
/// the remaining variables.
template <CoefficientField F>
RingCertificate polynomial_ring_certificate(const Ideal<F>& ideal, const std::vector<std::string>& eliminable,
                                            const Budget& budget = Budget::unlimited()) {
  const auto& ring = ideal.ring();
  auto elim = elimination_ring(*ring, eliminable);
  std::vector<Polynomial<F>> gens;
  for (const auto& g : ideal.generators()) gens.push_back(map_to_ring(g, elim));
  auto basis = buchberger(elim, gens, budget);

  const std::size_t e = eliminable.size();
  const std::uint64_t front = e == 0 ? 0 : (std::uint64_t{1} << e) - 1;
  std::vector<bool> used(elim->size(), false);
  RingCertificate cert;
  for (const auto& g : basis.elements) {
    const auto& lm = g.lead_monomial();
    const std::string text = print_polynomial(g);
    if (lm.degree() != 1 || (lm.support() & ~front) != 0) {
      cert.reason = "leading term of " + text + " is not a bare eliminable variable";
      return cert;
    }
    std::size_t var = static_cast<std::size_t>(__builtin_ctzll(lm.support()));
    auto tail = g - Polynomial<F>::term(elim, g.lead_coeff(), lm);
    if ((tail.support() & front) != 0) {
      cert.reason = "tail of " + text + " involves an eliminable variable";
      return cert;
    }
    if (used[var]) {
      cert.reason = "variable " + elim->name(var) + " leads two basis elements";
      return cert;
    }
    used[var] = true;
  }
  cert.pass = true;
  for (std::size_t i = 0; i < ring->size(); ++i) {
    auto slot = elim->index(ring->name(i));
    if (!used[slot]) cert.residual.push_back(ring->name(i));
  }
  return cert;
}

// ---------------------------------------------------------------------------
// Checks

inline constexpr std::array<const char*, 11> kCheckIds = {
    "residual", "intersection", "codim_ID", "codim_Ir", "reverse_colon", "ker_psi",
    "biggest_homog", "claim1", "cramer", "theorem", "polyring_cert"};

inline bool is_check_id(const std::string& id) {
  return std::find(kCheckIds.begin(), kCheckIds.end(), id) != kCheckIds.end();
}

/// The independently computed sides of each ideal identity.
template <CoefficientField F>
struct ComputedSides {
  static Ideal<F> residual(const UnprojectionFamily<F>& fam, const Budget& b) {
    return residual_ideal(fam.ix, fam.id_lift, fam.z(1), b);
  }
  static Ideal<F> intersection(const UnprojectionFamily<F>& fam, const Budget& b) {
    return intersect(fam.id_lift, fam.ir_lift, b);
  }
  static Ideal<F> reverse_colon(const UnprojectionFamily<F>& fam, const Budget& b) {
    return residual_ideal(fam.ix, fam.ir_lift, fam.z(1), b);
  }
  static Ideal<F> ker_psi(const UnprojectionFamily<F>& fam, const Budget& b) {
    return algebra_map_kernel(psi_map(fam), b);
  }
  static Ideal<F> biggest_homog(const UnprojectionFamily<F>& fam, const Budget& b) {
    return largest_homogeneous_subideal(ker_psi(fam, b), std::nullopt, b);
  }
  static Ideal<F> ker_phi(const UnprojectionFamily<F>& fam, const Budget& b) {
    return algebra_map_kernel(phi_map(fam), b);
  }
};

/// The variables eliminated by the polynomial-ring certificate:
/// z_2..z_{n+1} and a_11..a_n1.
template <CoefficientField F>
std::vector<std::string> certificate_variables(const UnprojectionFamily<F>& fam) {
  std::vector<std::string> e;
  for (int j = 2; j <= fam.n + 1; ++j) e.push_back(fam.z_name(j));
  for (int i = 1; i <= fam.n; ++i) e.push_back(fam.a_name(i, 1));
  return e;
}

/// Expected residual variables: a_ij with j >= 2, z_1, T_2..T_{n+1}.
template <CoefficientField F>
std::vector<std::string> expected_polynomial_ring_variables(const UnprojectionFamily<F>& fam) {
  std::vector<std::string> v;
  for (int i = 1; i <= fam.n; ++i)
    for (int j = 2; j <= fam.n + 1; ++j) v.push_back(fam.a_name(i, j));
  v.push_back(fam.z_name(1));
  for (int j = 2; j <= fam.n + 1; ++j) v.push_back(fam.t_name(j));
  return v;
}

namespace detail {

struct Outcome {
  bool ok;
  std::string detail;
};

template <CoefficientField F>
Outcome compare_ideals(const Ideal<F>& lhs, const Ideal<F>& rhs, const Budget& budget) {
  auto a = groebner_basis(lhs, budget);
  auto b = groebner_basis(rhs, budget);
  if (a.elements == b.elements)
    return {true, "reduced bases agree (" + std::to_string(a.elements.size()) + " elements)"};
  std::string msg = "reduced bases differ: computed has " + std::to_string(a.elements.size()) + " elements, claimed " +
                    std::to_string(b.elements.size());
  for (const auto& g : a.elements)
    if (std::find(b.elements.begin(), b.elements.end(), g) == b.elements.end()) {
      msg += "; e.g. computed element " + print_polynomial(g) + " not in claimed basis";
      break;
    }
  return {false, msg};
}

template <CoefficientField F>
Outcome run_check(const UnprojectionFamily<F>& fam, const std::string& id, const Budget& budget) {
  using Sides = ComputedSides<F>;
  const int n = fam.n;
  if (id == "residual") return compare_ideals(Sides::residual(fam, budget), fam.ir_lift, budget);
  if (id == "intersection") {
    Ideal<F> rhs = fam.ix + Ideal<F>(fam.ambient, {fam.z(1)});
    return compare_ideals(Sides::intersection(fam, budget), rhs, budget);
  }
  if (id == "codim_ID" || id == "codim_Ir") {
    int dx = dimension(fam.ix, budget);
    Ideal<F> other = id == "codim_ID" ? fam.ix + fam.id_lift : fam.ix + Sides::residual(fam, budget);
    int dother = dimension(other, budget);
    std::string d = "dim O_amb/I_X = " + std::to_string(dx) + ", dim of the quotient by " +
                    (id == "codim_ID" ? std::string("I_X + I_D") : std::string("I_X + I_r")) + " = " +
                    std::to_string(dother);
    return {dx - dother == 1, d};
  }
  if (id == "reverse_colon") return compare_ideals(Sides::reverse_colon(fam, budget), fam.id_lift, budget);
  if (id == "ker_psi") return compare_ideals(Sides::ker_psi(fam, budget), claimed_ideals(fam).ker_psi, budget);
  if (id == "biggest_homog") return compare_ideals(Sides::biggest_homog(fam, budget), claimed_ideals(fam).j, budget);
  if (id == "theorem") return compare_ideals(Sides::ker_phi(fam, budget), claimed_ideals(fam).ker_phi, budget);
  if (id == "claim1") {
    const auto& R = fam.psi_ring;
    std::vector<Polynomial<F>> binomials;
    for (int a = 1; a <= n + 1; ++a)
      for (int b = a + 1; b <= n + 1; ++b) binomials.push_back(fam.z(a, R) * fam.t(b, R) - fam.z(b, R) * fam.t(a, R));
    Ideal<F> minors = Ideal<F>(R, binomials).with_basis(budget);
    int count = 0;
    for (int k = 1; k <= n + 1; ++k)
      for (int l = 1; l <= n; ++l) {
        auto lhs = fam.z(k, R) * fam.f_T[l - 1] - fam.t(k, R) * map_to_ring(fam.f_z[l - 1], R);
        Polynomial<F> expansion(R);
        for (int j = 1; j <= n + 1; ++j)
          expansion += fam.a(l, j, R) * (fam.z(k, R) * fam.t(j, R) - fam.t(k, R) * fam.z(j, R));
        if (!(lhs == expansion))
          return {false, "expansion identity fails for k=" + std::to_string(k) + ", l=" + std::to_string(l)};
        if (!ideal_membership(lhs, minors, budget))
          return {false, "z" + std::to_string(k) + "*f" + std::to_string(l) + "(T) - T" + std::to_string(k) + "*f" +
                             std::to_string(l) + "(z) is not in (z_i*T_j - z_j*T_i)"};
        ++count;
      }
    return {true, std::to_string(count) + " memberships hold"};
  }
  if (id == "cramer") {
    std::vector<Polynomial<F>> gens{fam.z(1)};
    gens.insert(gens.end(), fam.f_z.begin(), fam.f_z.end());
    Ideal<F> target = Ideal<F>(fam.ambient, gens).with_basis(budget);
    for (int j = 1; j <= n + 1; ++j)
      if (!ideal_membership(fam.delta1 * fam.z(j), target, budget))
        return {false, "Delta1*z" + std::to_string(j) + " is not in (z1, f_1..f_n)"};
    return {true, std::to_string(n + 1) + " memberships hold"};
  }
  if (id == "polyring_cert") {
    auto cert = polynomial_ring_certificate(Sides::ker_phi(fam, budget), certificate_variables(fam), budget);
    if (!cert.pass) return {false, cert.reason};
    auto expected = expected_polynomial_ring_variables(fam);
    auto got = cert.residual;
    std::sort(expected.begin(), expected.end());
    std::sort(got.begin(), got.end());
    std::string vars;
    for (const auto& v : cert.residual) vars += (vars.empty() ? "" : ", ") + v;
    if (got != expected) return {false, "unexpected residual variables: " + vars};
    return {true, "polynomial ring on " + vars};
  }
  throw std::invalid_argument("unknown check id '" + id + "'");
}

}  // namespace detail

/// Runs one named check.  Budget exhaustion becomes a timeout record; any
/// other failure inside the computation becomes a fail record.
template <CoefficientField F>
CheckRecord verify_claim(int n, const std::string& id, const F& field, const Budget& budget) {
  if (!is_check_id(id)) throw std::invalid_argument("unknown check id '" + id + "'");
  if (n < 1) throw std::invalid_argument("the generic family needs n >= 1");
  const auto start = std::chrono::steady_clock::now();
  CheckRecord rec;
  rec.id = id;
  try {
    auto fam = build_generic_family<F>(n, field);
    auto outcome = detail::run_check(fam, id, budget);
    rec.status = outcome.ok ? CheckStatus::pass : CheckStatus::fail;
    rec.detail = outcome.detail;
  } catch (const Timeout& e) {
    rec.status = CheckStatus::timeout;
    rec.detail = e.what();
  } catch (const std::exception& e) {
    rec.status = CheckStatus::fail;
    rec.detail = std::string("error: ") + e.what();
  }
  rec.elapsed_ms = std::chrono::duration_cast<std::chrono::milliseconds>(std::chrono::steady_clock::now() - start)
                       .count();
  return rec;
}

/// Runs the listed checks (all of them when `ids` is empty), each under a
/// fresh budget from `make_budget`, on up to `workers` threads.  Records
/// come back in the order requested.
template <CoefficientField F>
ReportDocument verify_all(int n, const F& field, const std::function<Budget()>& make_budget,
                          std::vector<std::string> ids = {}, unsigned workers = 0) {
  if (ids.empty()) ids.assign(kCheckIds.begin(), kCheckIds.end());
  if (workers == 0) workers = std::max(1u, std::thread::hardware_concurrency());
  workers = std::min<unsigned>(workers, static_cast<unsigned>(ids.size()));

  ReportDocument report;
  report.n = n;
  report.field = field.name();
  report.checks.resize(ids.size());
  std::atomic<std::size_t> next{0};
  auto work = [&] {
    for (std::size_t i; (i = next++) < ids.size();) report.checks[i] = verify_claim(n, ids[i], field, make_budget());
  };
  if (workers <= 1) {
    work();
  } else {
    std::vector<std::jthread> pool;
    for (unsigned w = 0; w < workers; ++w) pool.emplace_back(work);
  }
  return report;
}

template <CoefficientField F>
ReportDocument verify_all(int n, const F& field, double timeout_seconds) {
  return verify_all<F>(n, field, [timeout_seconds] { return Budget::seconds(timeout_seconds); });
}

/// Family export: the ring with T_1..T_{n+1} and weights, and the ideals
/// IX, ID, Ir, Delta1, ker_psi, J, ker_phi as stated.  Printed under lex so
/// terms come out in subscript order (Delta1 = a12*a23 - a13*a22 at n=2).
template <CoefficientField F>
std::string family_problem_file(const UnprojectionFamily<F>& fam) {
  const auto R = with_order(*fam.psi_ring, MonomialOrder::simple(OrderKind::lex, fam.psi_ring->size()));
  auto lift = [&](const std::vector<Polynomial<F>>& ps) {
    std::vector<Polynomial<F>> out;
    for (const auto& p : ps) out.push_back(map_to_ring(p, R));
    return out;
  };
  auto claimed = claimed_ideals(fam);
  std::vector<std::pair<std::string, std::vector<Polynomial<F>>>> ideals = {
      {"IX", lift(fam.ix.generators())},
      {"ID", lift(fam.id_lift.generators())},
      {"Ir", lift(fam.ir_lift.generators())},
      {"Delta1", lift({fam.delta1})},
      {"ker_psi", lift(claimed.ker_psi.generators())},
      {"J", lift(claimed.j.generators())},
      {"ker_phi", lift(claimed.ker_phi.generators())},
  };
  return print_problem_file(*R, ideals);
}

}  // namespace unproj
