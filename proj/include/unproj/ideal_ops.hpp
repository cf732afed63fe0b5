#pragma once

// Ideal operations reduced to elimination: intersection, colon, saturation,
// kernels of algebra maps, and the largest weighted-homogeneous subideal.
//
// Every operation adjoins auxiliary variables in a leading grevlex block and
// keeps the basis elements free of them.  Under such a block order the
// surviving elements of a reduced basis form the reduced basis of the
// elimination ideal in the remaining variables, so results carry their basis.
//
// Largest homogeneous subideal.  For a grading w and a fresh variable u let
// s(f) = f(u^w1 x1, ..., u^wn xn) = sum_d u^d f_d, where f_d are the
// w-components of f.  Over k[x, u, 1/u] the substitution is an automorphism,
// and s^-1(h) = sum_d u^-d h_d for h in k[x].  Hence h lies in s(I)k[x,u,1/u]
// exactly when every component h_d lies in I.  Contracting, this set equals
// (s(I) : u^inf) intersected with k[x], which is what is computed.

#include <algorithm>
#include <optional>
#include <string>
#include <vector>

#include "unproj/groebner.hpp"

namespace unproj {

namespace detail {

template <CoefficientField F>
std::string fresh_name(const Ring<F>& ring, const std::string& stem) {
  for (int k = 0;; ++k) {
    std::string name = "_" + stem + (k ? std::to_string(k) : "");
    if (!ring.find(name)) return name;
  }
}

/// Same ideal re-expressed in an equal-named ring, keeping its basis.
template <CoefficientField F>
Ideal<F> rebase(const Ideal<F>& ideal, const RingPtr<F>& ring) {
  if (ideal.ring() == ring) return ideal;
  if (ideal.cached_basis()) {
    GroebnerBasis<F> basis{ring, {}};
    for (const auto& g : ideal.cached_basis()->elements) basis.elements.push_back(map_to_ring(g, ring));
    if (*ring == *ideal.ring()) return Ideal<F>::from_basis(std::move(basis));
    // different order: the cached basis no longer applies
    return Ideal<F>(ring, basis.elements);
  }
  std::vector<Polynomial<F>> gens;
  for (const auto& g : ideal.generators()) gens.push_back(map_to_ring(g, ring));
  return Ideal<F>(ring, gens);
}

template <CoefficientField F>
Polynomial<F> divide_exact(const Polynomial<F>& f, const Polynomial<F>& g) {
  std::vector<Term<F>> q;
  Polynomial<F> rest = f;
  while (!rest.is_zero()) {
    if (!divides(g.lead_monomial(), rest.lead_monomial()))
      throw std::logic_error("inexact polynomial division in colon computation");
    auto c = rest.lead_coeff() / g.lead_coeff();
    Monomial m = quotient(rest.lead_monomial(), g.lead_monomial());
    q.push_back({c, m});
    rest = rest.sub_mul_cancel_lead(c, m, g);
  }
  return Polynomial<F>::from_sorted(f.ring(), std::move(q));
}

template <CoefficientField F>
void require_post(bool ok, const char* what) {
  if (!ok) throw PostconditionError(what);
}

}  // namespace detail

/// I intersected with the subring on the variables outside `vars`.  The
/// result lives in the ring with `vars` removed.
template <CoefficientField F>
Ideal<F> eliminate(const Ideal<F>& ideal, const std::vector<std::string>& vars,
                   const Budget& budget = Budget::unlimited(), OrderKind block_kind = OrderKind::grevlex) {
  const auto& ring = ideal.ring();
  std::vector<bool> keep(ring->size(), true);
  for (const auto& v : vars) keep[ring->index(v)] = false;
  auto rest = restrict_ring(*ring, keep);
  if (vars.empty()) return detail::rebase(ideal, rest);

  auto elim = elimination_ring(*ring, vars, block_kind);
  std::vector<Polynomial<F>> gens;
  for (const auto& g : ideal.generators()) gens.push_back(map_to_ring(g, elim));
  auto basis = buchberger(elim, gens, budget);

  const std::uint64_t front = (std::uint64_t{1} << vars.size()) - 1;
  GroebnerBasis<F> kept{rest, {}};
  for (const auto& g : basis.elements)
    if ((g.support() & front) == 0) kept.elements.push_back(map_to_ring(g, rest));
  auto result = Ideal<F>::from_basis(std::move(kept));

  if (postcondition_checks()) {
    for (const auto& g : result.generators())
      detail::require_post<F>(ideal_membership(map_to_ring(g, ring), ideal, budget),
                              "eliminate: generator outside the input ideal");
  }
  return result;
}

template <CoefficientField F>
Ideal<F> intersect(const Ideal<F>& a, const Ideal<F>& b, const Budget& budget = Budget::unlimited()) {
  if (!same_ring(a.ring(), b.ring())) throw RingError("ideals belong to different rings");
  const auto& ring = a.ring();
  if (a.is_zero() || b.is_zero()) return Ideal<F>(ring);
  const std::string t = detail::fresh_name(*ring, "t");
  auto ext = prepend_block(*ring, {t});
  auto tv = Polynomial<F>::variable(ext, t);
  auto one_minus_t = Polynomial<F>::constant(ext, 1) - tv;
  std::vector<Polynomial<F>> gens;
  for (const auto& g : a.generators()) gens.push_back(tv * map_to_ring(g, ext));
  for (const auto& h : b.generators()) gens.push_back(one_minus_t * map_to_ring(h, ext));
  auto result = detail::rebase(eliminate(Ideal<F>(ext, gens), {t}, budget), ring);

  if (postcondition_checks()) {
    detail::require_post<F>(ideal_contains(a, result, budget), "intersect: result not contained in the first ideal");
    detail::require_post<F>(ideal_contains(b, result, budget), "intersect: result not contained in the second ideal");
  }
  return result;
}

/// The colon ideal I : J = { f : f J in I }, as the intersection over
/// generators g of J of (I intersect (g)) / g.
template <CoefficientField F>
Ideal<F> quotient(const Ideal<F>& num, const Ideal<F>& den, const Budget& budget = Budget::unlimited()) {
  if (!same_ring(num.ring(), den.ring())) throw RingError("ideals belong to different rings");
  if (den.is_zero()) throw std::invalid_argument("colon by the zero ideal");
  const auto& ring = num.ring();
  const auto num_b = num.with_basis(budget);

  std::optional<Ideal<F>> result;
  for (const auto& g : den.generators()) {
    if (ideal_membership(g, num_b, budget)) continue;  // I : g is the unit ideal
    auto meet = intersect(num_b, Ideal<F>(ring, {g}), budget);
    std::vector<Polynomial<F>> gens;
    for (const auto& h : meet.generators()) gens.push_back(detail::divide_exact(h, g));
    Ideal<F> colon(ring, gens);
    result = result ? intersect(*result, colon, budget) : colon.with_basis(budget);
  }
  Ideal<F> out = result ? *result : Ideal<F>(ring, {Polynomial<F>::constant(ring, 1)}).with_basis(budget);

  if (postcondition_checks()) {
    detail::require_post<F>(ideal_contains(out, num, budget), "quotient: input not contained in the colon");
    detail::require_post<F>(ideal_contains(num_b, out * den, budget), "quotient: colon times divisor escapes");
  }
  return out;
}

/// I : g^inf via I + (1 - t g) with t eliminated.
template <CoefficientField F>
Ideal<F> saturate(const Ideal<F>& ideal, const Polynomial<F>& g, const Budget& budget = Budget::unlimited()) {
  if (g.is_zero()) throw std::invalid_argument("saturation by zero");
  const auto& ring = ideal.ring();
  if (g.is_constant()) return ideal.with_basis(budget);
  const std::string t = detail::fresh_name(*ring, "t");
  auto ext = prepend_block(*ring, {t});
  std::vector<Polynomial<F>> gens;
  for (const auto& f : ideal.generators()) gens.push_back(map_to_ring(f, ext));
  gens.push_back(Polynomial<F>::constant(ext, 1) - Polynomial<F>::variable(ext, t) * map_to_ring(g, ext));
  auto result = detail::rebase(eliminate(Ideal<F>(ext, gens), {t}, budget), ring);

  if (postcondition_checks()) {
    detail::require_post<F>(ideal_contains(result, ideal, budget), "saturate: input not contained in the saturation");
    bool stable = ideal_equal(quotient(result, Ideal<F>(ring, {g}), budget), result, budget);
    detail::require_post<F>(stable, "saturate: result is not saturated");
  }
  return result;
}

// ---------------------------------------------------------------------------
// Algebra maps

/// A map from `source` into the localization (target / modulus)[1/denominator].
/// Variables present in both rings are base variables and map to themselves;
/// every source-only variable has an image numerator / denominator.
template <CoefficientField F>
struct AlgebraMap {
  RingPtr<F> source;
  RingPtr<F> target;
  std::vector<std::pair<std::string, Polynomial<F>>> images;
  Polynomial<F> denominator;
  Ideal<F> modulus;

  AlgebraMap(RingPtr<F> src, RingPtr<F> tgt, std::vector<std::pair<std::string, Polynomial<F>>> imgs,
             std::optional<Polynomial<F>> den = std::nullopt, std::optional<Ideal<F>> mod = std::nullopt)
      : source(std::move(src)),
        target(std::move(tgt)),
        images(std::move(imgs)),
        denominator(den ? map_to_ring(*den, target) : Polynomial<F>::constant(target, 1)),
        modulus(mod ? detail::rebase(*mod, target) : Ideal<F>(target)) {
    if (denominator.is_zero()) throw std::invalid_argument("algebra map with zero denominator");
    for (auto& [name, img] : images) {
      if (target->find(name)) throw std::invalid_argument("image given for base variable " + name);
      source->index(name);
      img = map_to_ring(img, target);
    }
    for (const auto& v : source->variables()) {
      if (target->find(v)) continue;
      bool has = std::any_of(images.begin(), images.end(), [&](const auto& p) { return p.first == v; });
      if (!has) throw std::invalid_argument("no image for source variable " + v);
    }
  }

  std::vector<std::string> target_only() const {
    std::vector<std::string> out;
    for (const auto& v : target->variables())
      if (!source->find(v)) out.push_back(v);
    return out;
  }

  const Polynomial<F>& image_of(const std::string& v) const {
    for (const auto& p : images)
      if (p.first == v) return p.second;
    throw std::invalid_argument("no image for " + v);
  }
};

/// d^e * f(images / d) in the target ring, e the largest source-only degree
/// of a term of f.  f lies in the kernel iff this lies in modulus : d^inf.
template <CoefficientField F>
Polynomial<F> cleared_image(const AlgebraMap<F>& map, const Polynomial<F>& f) {
  const auto& src = *map.source;
  std::vector<std::optional<std::size_t>> base_slot(src.size());
  std::vector<const Polynomial<F>*> image(src.size(), nullptr);
  for (std::size_t i = 0; i < src.size(); ++i) {
    base_slot[i] = map.target->find(src.name(i));
    if (!base_slot[i]) image[i] = &map.image_of(src.name(i));
  }
  auto y_degree = [&](const Monomial& m) {
    unsigned e = 0;
    for (std::size_t i = 0; i < src.size(); ++i)
      if (image[i]) e += m[i];
    return e;
  };
  unsigned top = 0;
  for (const auto& t : f.terms()) top = std::max(top, y_degree(t.monomial));

  Polynomial<F> out(map.target);
  for (const auto& t : f.terms()) {
    Monomial base = map.target->one_monomial();
    Polynomial<F> p = Polynomial<F>::constant(map.target, t.coeff);
    for (std::size_t i = 0; i < src.size(); ++i) {
      if (!t.monomial[i]) continue;
      if (base_slot[i]) base.set(*base_slot[i], t.monomial[i]);
      else p *= image[i]->pow(t.monomial[i]);
    }
    p = p.mul_term(map.target->field().one(), base) * map.denominator.pow(top - y_degree(t.monomial));
    out += p;
  }
  return out;
}

/// Direct substitution test for kernel membership, independent of any
/// elimination: the cleared image must vanish modulo the modulus (or, when
/// the denominator is a zero divisor there, modulo its saturation).
template <CoefficientField F>
bool maps_to_zero(const AlgebraMap<F>& map, const Polynomial<F>& f, const Budget& budget = Budget::unlimited()) {
  auto h = cleared_image(map, map_to_ring(f, map.source));
  if (ideal_membership(h, map.modulus, budget)) return true;
  if (map.denominator.is_constant()) return false;
  return ideal_membership(h, saturate(map.modulus, map.denominator, budget), budget);
}

/// Kernel of the induced map: ((modulus + (d Y_j - num_j)) : d^inf) with the
/// target-only variables eliminated.
template <CoefficientField F>
Ideal<F> algebra_map_kernel(const AlgebraMap<F>& map, const Budget& budget = Budget::unlimited()) {
  const auto x_vars = map.target_only();
  auto combined = prepend_block(*map.source, x_vars);
  std::vector<Polynomial<F>> gens;
  for (const auto& q : map.modulus.generators()) gens.push_back(map_to_ring(q, combined));
  auto d = map_to_ring(map.denominator, combined);
  for (const auto& [name, num] : map.images)
    gens.push_back(d * Polynomial<F>::variable(combined, name) - map_to_ring(num, combined));

  Ideal<F> graph(combined, gens);
  Ideal<F> sat = d.is_constant() ? graph : saturate(graph, d, budget);
  Ideal<F> kernel = detail::rebase(x_vars.empty() ? sat : eliminate(sat, x_vars, budget), map.source);

  if (postcondition_checks()) {
    for (const auto& k : kernel.generators())
      detail::require_post<F>(maps_to_zero(map, k, budget), "kernel: generator does not map to zero");
  }
  return kernel;
}

/// The largest w-homogeneous ideal contained in I (see the header comment).
template <CoefficientField F>
Ideal<F> largest_homogeneous_subideal(const Ideal<F>& ideal, const std::optional<Grading>& grading = std::nullopt,
                                      const Budget& budget = Budget::unlimited()) {
  const auto& ring = ideal.ring();
  const Grading& w = require_grading(*ring, grading);
  const std::string t = detail::fresh_name(*ring, "t");
  const std::string u = detail::fresh_name(*ring, "u");
  auto ext = prepend_block(*ring, {t, u});
  const std::size_t ui = ext->index(u);

  // ext = [t, u] followed by the ring's variables in their original slots
  std::vector<Polynomial<F>> gens;
  for (const auto& f : ideal.generators()) {
    std::vector<Term<F>> terms;
    for (const auto& term : f.terms()) {
      Monomial m = ext->one_monomial();
      for (std::size_t i = 0; i < ring->size(); ++i) m.set(i + 2, term.monomial[i]);
      m.set(ui, weighted_degree(term.monomial, w));
      terms.push_back({term.coeff, m});
    }
    gens.push_back(Polynomial<F>(ext, std::move(terms)));
  }
  gens.push_back(Polynomial<F>::constant(ext, 1) - Polynomial<F>::variable(ext, t) * Polynomial<F>::variable(ext, u));
  auto result = detail::rebase(eliminate(Ideal<F>(ext, gens), {t, u}, budget), ring);

  if (postcondition_checks()) {
    for (const auto& g : result.generators()) {
      detail::require_post<F>(is_homogeneous(g, w), "largest homogeneous subideal: inhomogeneous generator");
      detail::require_post<F>(ideal_membership(g, ideal, budget), "largest homogeneous subideal: generator outside I");
    }
  }
  return result;
}

}  // namespace unproj
