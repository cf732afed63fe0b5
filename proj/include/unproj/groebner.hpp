#pragma once

// Buchberger's algorithm and everything built directly on a Groebner basis:
// normal forms, reduced bases, membership, equality and Krull dimension.
//
// Determinism: divisors are tried in list order, the leading reducible term is
// reduced first, and critical pairs are processed by increasing lcm with ties
// broken by creation order.  Equal inputs give byte-identical outputs.

#include <algorithm>
#include <memory>
#include <set>
#include <span>
#include <stdexcept>
#include <vector>

#include "unproj/budget.hpp"
#include "unproj/polynomial.hpp"

namespace unproj {

namespace detail {

// Cheap deadline polling inside long reductions.
class BudgetPoll {
 public:
  explicit BudgetPoll(const Budget& budget) : budget_(budget) {}
  void tick() {
    if (++count_ % 256 == 0) budget_.check();
  }

 private:
  const Budget& budget_;
  std::size_t count_ = 0;
};

}  // namespace detail

/// Remainder of multivariate division of f by `divisors` (zero divisors are
/// ignored).  No term of the result is divisible by a leading monomial.
template <CoefficientField F>
Polynomial<F> normal_form(const Polynomial<F>& f, std::span<const Polynomial<F>> divisors,
                          const Budget& budget = Budget::unlimited()) {
  const auto& ring = f.ring();
  const auto& order = ring->order();
  detail::BudgetPoll poll(budget);
  std::vector<Term<F>> remainder;
  std::vector<Term<F>> cur = f.terms();
  std::vector<Term<F>> next;
  std::size_t pos = 0;
  while (pos < cur.size()) {
    const Term<F>& lt = cur[pos];
    const Polynomial<F>* divisor = nullptr;
    for (const auto& g : divisors) {
      if (!g.is_zero() && divides(g.lead_monomial(), lt.monomial)) {
        divisor = &g;
        break;
      }
    }
    if (!divisor) {
      remainder.push_back(lt);
      ++pos;
      continue;
    }
    poll.tick();
    auto c = lt.coeff / divisor->lead_coeff();
    Monomial m = quotient(lt.monomial, divisor->lead_monomial());
    next.clear();
    next.reserve(cur.size() - pos + divisor->size());
    const auto& dt = divisor->terms();
    detail::merge_terms<F>(order, next, cur.begin() + static_cast<std::ptrdiff_t>(pos) + 1, cur.end(), dt.begin() + 1,
                           dt.end(), &c, &m, true);
    std::swap(cur, next);
    pos = 0;
  }
  return Polynomial<F>::from_sorted(ring, std::move(remainder));
}

template <CoefficientField F>
Polynomial<F> normal_form(const Polynomial<F>& f, const std::vector<Polynomial<F>>& divisors,
                          const Budget& budget = Budget::unlimited()) {
  return normal_form(f, std::span<const Polynomial<F>>(divisors), budget);
}

template <CoefficientField F>
Polynomial<F> s_polynomial(const Polynomial<F>& f, const Polynomial<F>& g) {
  if (f.is_zero() || g.is_zero()) throw std::invalid_argument("S-polynomial of a zero polynomial");
  Monomial l = lcm(f.lead_monomial(), g.lead_monomial());
  auto a = f.mul_term(f.lead_coeff().inverse(), quotient(l, f.lead_monomial()));
  auto b = g.mul_term(g.lead_coeff().inverse(), quotient(l, g.lead_monomial()));
  return a - b;
}

template <CoefficientField F>
struct GroebnerBasis {
  RingPtr<F> ring;
  std::vector<Polynomial<F>> elements;

  bool is_unit() const { return elements.size() == 1 && elements[0].is_constant(); }
  friend bool operator==(const GroebnerBasis& a, const GroebnerBasis& b) {
    return same_ring(a.ring, b.ring) && a.elements == b.elements;
  }
};

/// The unique reduced monic basis, sorted ascending by leading monomial.
/// For a Groebner basis this is the reduced Groebner basis; other inputs are
/// still autoreduced (leading monomials pairwise non-dividing, tails reduced)
/// without changing the ideal.
template <CoefficientField F>
GroebnerBasis<F> reduce_basis(const GroebnerBasis<F>& basis, const Budget& budget = Budget::unlimited()) {
  const auto& order = basis.ring->order();
  auto by_lead = [&](const Polynomial<F>& a, const Polynomial<F>& b) {
    return order.less(a.lead_monomial(), b.lead_monomial());
  };
  std::vector<Polynomial<F>> work;
  for (const auto& p : basis.elements)
    if (!p.is_zero()) work.push_back(p.monic());
  std::stable_sort(work.begin(), work.end(), by_lead);
  std::reverse(work.begin(), work.end());  // smallest lead at the back

  std::vector<Polynomial<F>> kept;
  while (!work.empty()) {
    auto p = normal_form(work.back(), kept, budget);
    work.pop_back();
    if (p.is_zero()) continue;
    p = p.monic();
    // kept elements whose lead became reducible go back to the work list
    bool requeued = false;
    for (std::size_t k = kept.size(); k-- > 0;) {
      if (divides(p.lead_monomial(), kept[k].lead_monomial())) {
        work.push_back(std::move(kept[k]));
        kept.erase(kept.begin() + static_cast<std::ptrdiff_t>(k));
        requeued = true;
      }
    }
    kept.push_back(std::move(p));
    if (requeued) {
      std::stable_sort(work.begin(), work.end(), by_lead);
      std::reverse(work.begin(), work.end());
    }
  }

  std::stable_sort(kept.begin(), kept.end(), by_lead);
  GroebnerBasis<F> out{basis.ring, {}};
  out.elements.reserve(kept.size());
  std::vector<Polynomial<F>> others;
  for (std::size_t i = 0; i < kept.size(); ++i) {
    others.clear();
    for (std::size_t j = 0; j < kept.size(); ++j)
      if (j != i) others.push_back(j < i ? out.elements[j] : kept[j]);
    out.elements.push_back(normal_form(kept[i], others, budget).monic());
  }
  return out;
}

/// Buchberger's algorithm with the coprime-leading-monomial and chain
/// criteria; returns the reduced basis of the ideal generated by `gens`
/// with respect to the ring's order.
template <CoefficientField F>
GroebnerBasis<F> buchberger(const RingPtr<F>& ring, const std::vector<Polynomial<F>>& gens,
                            const Budget& budget = Budget::unlimited()) {
  budget.check();
  const auto& order = ring->order();

  struct Pair {
    std::size_t i, j;
    Monomial lcm;
    std::size_t seq;
  };
  auto pair_less = [&order](const Pair& a, const Pair& b) {
    auto c = order.compare(a.lcm, b.lcm);
    if (c != std::strong_ordering::equal) return c == std::strong_ordering::less;
    return a.seq < b.seq;
  };
  std::set<Pair, decltype(pair_less)> queue(pair_less);
  std::vector<std::vector<char>> pending;  // pending[j][i], i < j
  std::vector<Polynomial<F>> basis;
  std::size_t seq = 0;

  auto is_pending = [&](std::size_t a, std::size_t b) {
    if (a > b) std::swap(a, b);
    return pending[b][a] != 0;
  };

  auto add = [&](Polynomial<F> h) {
    std::size_t k = basis.size();
    basis.push_back(std::move(h));
    pending.emplace_back(k, 0);
    const Monomial& lk = basis[k].lead_monomial();
    for (std::size_t i = 0; i < k; ++i) {
      const Monomial& li = basis[i].lead_monomial();
      if (coprime(li, lk)) continue;
      queue.insert(Pair{i, k, lcm(li, lk), seq++});
      pending[k][i] = 1;
    }
  };

  for (const auto& g : gens) {
    if (!same_ring(g.ring(), ring)) throw RingError("generator from a different ring");
    auto h = normal_form(g, basis, budget);
    if (h.is_zero()) continue;
    if (h.is_constant()) return GroebnerBasis<F>{ring, {Polynomial<F>::constant(ring, 1)}};
    add(h.monic());
  }

  std::size_t processed = 0;
  while (!queue.empty()) {
    Pair p = *queue.begin();
    queue.erase(queue.begin());
    pending[p.j][p.i] = 0;
    budget.check();
    budget.check_pairs(++processed);

    bool chain = false;
    for (std::size_t k = 0; k < basis.size() && !chain; ++k) {
      if (k == p.i || k == p.j) continue;
      if (divides(basis[k].lead_monomial(), p.lcm) && !is_pending(p.i, k) && !is_pending(p.j, k)) chain = true;
    }
    if (chain) continue;

    auto h = normal_form(s_polynomial(basis[p.i], basis[p.j]), basis, budget);
    if (h.is_zero()) continue;
    if (h.is_constant()) return GroebnerBasis<F>{ring, {Polynomial<F>::constant(ring, 1)}};
    add(h.monic());
  }
  return reduce_basis(GroebnerBasis<F>{ring, std::move(basis)}, budget);
}

// ---------------------------------------------------------------------------
// Ideals

template <CoefficientField F>
class Ideal {
 public:
  explicit Ideal(RingPtr<F> ring) : ring_(std::move(ring)) {}

  Ideal(RingPtr<F> ring, const std::vector<Polynomial<F>>& gens) : ring_(std::move(ring)) {
    for (const auto& g : gens) add(g);
  }

  const RingPtr<F>& ring() const { return ring_; }
  const std::vector<Polynomial<F>>& generators() const { return gens_; }
  bool is_zero() const { return gens_.empty(); }

  /// The cached reduced basis, when one has been attached.
  const std::shared_ptr<const GroebnerBasis<F>>& cached_basis() const { return basis_; }

  /// Copy with its reduced basis computed and attached.
  Ideal with_basis(const Budget& budget = Budget::unlimited()) const {
    if (basis_) return *this;
    Ideal out = *this;
    out.basis_ = std::make_shared<const GroebnerBasis<F>>(buchberger(ring_, gens_, budget));
    return out;
  }

  /// Ideal generated by a known reduced basis.
  static Ideal from_basis(GroebnerBasis<F> basis) {
    Ideal out(basis.ring, basis.elements);
    out.basis_ = std::make_shared<const GroebnerBasis<F>>(std::move(basis));
    return out;
  }

  friend Ideal operator+(const Ideal& a, const Ideal& b) {
    if (!same_ring(a.ring_, b.ring_)) throw RingError("ideals belong to different rings");
    Ideal out(a.ring_, a.gens_);
    for (const auto& g : b.gens_) out.add(g);
    return out;
  }

  friend Ideal operator*(const Ideal& a, const Ideal& b) {
    if (!same_ring(a.ring_, b.ring_)) throw RingError("ideals belong to different rings");
    Ideal out(a.ring_);
    for (const auto& f : a.gens_)
      for (const auto& g : b.gens_) out.add(f * g);
    return out;
  }

 private:
  void add(const Polynomial<F>& g) {
    if (g.is_zero()) return;
    gens_.push_back(map_to_ring(g, ring_));
  }

  RingPtr<F> ring_;
  std::vector<Polynomial<F>> gens_;
  std::shared_ptr<const GroebnerBasis<F>> basis_;
};

template <CoefficientField F>
GroebnerBasis<F> groebner_basis(const Ideal<F>& ideal, const Budget& budget = Budget::unlimited()) {
  if (ideal.cached_basis()) return *ideal.cached_basis();
  return buchberger(ideal.ring(), ideal.generators(), budget);
}

template <CoefficientField F>
bool ideal_membership(const Polynomial<F>& f, const Ideal<F>& ideal, const Budget& budget = Budget::unlimited()) {
  if (!same_ring(f.ring(), ideal.ring())) throw RingError("polynomial and ideal belong to different rings");
  if (f.is_zero()) return true;
  const auto basis = groebner_basis(ideal, budget);
  return normal_form(f, basis.elements, budget).is_zero();
}

/// Every generator of `inner` lies in `outer`.
template <CoefficientField F>
bool ideal_contains(const Ideal<F>& outer, const Ideal<F>& inner, const Budget& budget = Budget::unlimited()) {
  if (!same_ring(outer.ring(), inner.ring())) throw RingError("ideals belong to different rings");
  const auto basis = groebner_basis(outer, budget);
  return std::all_of(inner.generators().begin(), inner.generators().end(), [&](const Polynomial<F>& g) {
    return normal_form(g, basis.elements, budget).is_zero();
  });
}

template <CoefficientField F>
bool ideal_equal(const Ideal<F>& a, const Ideal<F>& b, const Budget& budget = Budget::unlimited()) {
  if (!same_ring(a.ring(), b.ring())) throw RingError("ideals belong to different rings");
  return groebner_basis(a, budget).elements == groebner_basis(b, budget).elements;
}

namespace detail {

// Largest subset S of the variables such that no mask is contained in S.
inline int max_independent_set(std::size_t nvars, std::vector<std::uint64_t> masks) {
  std::sort(masks.begin(), masks.end());
  masks.erase(std::unique(masks.begin(), masks.end()), masks.end());
  // Only minimal masks matter.
  std::vector<std::uint64_t> minimal;
  std::sort(masks.begin(), masks.end(),
            [](std::uint64_t a, std::uint64_t b) { return __builtin_popcountll(a) < __builtin_popcountll(b); });
  for (auto m : masks)
    if (std::none_of(minimal.begin(), minimal.end(), [&](std::uint64_t q) { return (q & ~m) == 0; }))
      minimal.push_back(m);

  int best = -1;
  auto feasible = [&](std::uint64_t set) {
    return std::none_of(minimal.begin(), minimal.end(), [&](std::uint64_t q) { return (q & ~set) == 0; });
  };
  // Depth-first over variables, trying inclusion first.
  auto search = [&](auto&& self, std::size_t i, std::uint64_t set, int size) -> void {
    if (size + static_cast<int>(nvars - i) <= best) return;
    if (i == nvars) {
      best = size;
      return;
    }
    std::uint64_t with = set | (std::uint64_t{1} << i);
    if (feasible(with)) self(self, i + 1, with, size + 1);
    self(self, i + 1, set, size);
  };
  search(search, 0, 0, 0);
  return best;
}

}  // namespace detail

/// Krull dimension of ring/I; -1 when I is the unit ideal.
template <CoefficientField F>
int dimension(const Ideal<F>& ideal, const Budget& budget = Budget::unlimited()) {
  const auto basis = groebner_basis(ideal, budget);
  if (basis.is_unit()) return -1;
  std::vector<std::uint64_t> masks;
  for (const auto& g : basis.elements) masks.push_back(g.lead_monomial().support());
  return detail::max_independent_set(ideal.ring()->size(), std::move(masks));
}

}  // namespace unproj
