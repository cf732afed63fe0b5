#pragma once

// Sparse polynomials in canonical form: nonzero coefficients, distinct
// monomials, terms sorted descending in the ring's monomial order.

#include <algorithm>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "unproj/ring.hpp"

namespace unproj {

template <CoefficientField F>
struct Term {
  typename F::Element coeff;
  Monomial monomial;
  friend bool operator==(const Term&, const Term&) = default;
};

namespace detail {

template <CoefficientField F>
using TermIter = typename std::vector<Term<F>>::const_iterator;

// out += [ai, ae) -/+ c*m*[bi, be), both ranges sorted descending; c and m
// may be null.
template <CoefficientField F>
void merge_terms(const MonomialOrder& order, std::vector<Term<F>>& out, TermIter<F> ai, TermIter<F> ae,
                 TermIter<F> bi, TermIter<F> be, const typename F::Element* c, const Monomial* m, bool subtract) {
  auto b_term = [&](const Term<F>& t) -> Term<F> {
    Term<F> r = t;
    if (c) r.coeff = r.coeff * *c;
    if (m) r.monomial = r.monomial * *m;
    if (subtract) r.coeff = -r.coeff;
    return r;
  };
  std::optional<Term<F>> pending;
  if (bi != be) pending = b_term(*bi);
  while (ai != ae && pending) {
    auto cmp = order.compare(ai->monomial, pending->monomial);
    if (cmp == std::strong_ordering::greater) {
      out.push_back(*ai++);
    } else if (cmp == std::strong_ordering::less) {
      out.push_back(std::move(*pending));
      pending.reset();
      if (++bi != be) pending = b_term(*bi);
    } else {
      auto s = ai->coeff + pending->coeff;
      if (!s.is_zero()) out.push_back({std::move(s), ai->monomial});
      ++ai;
      pending.reset();
      if (++bi != be) pending = b_term(*bi);
    }
  }
  for (; ai != ae; ++ai) out.push_back(*ai);
  if (pending) {
    out.push_back(std::move(*pending));
    for (++bi; bi != be; ++bi) out.push_back(b_term(*bi));
  }
}

}  // namespace detail

template <CoefficientField F>
class Polynomial {
 public:
  using Coeff = typename F::Element;
  using TermT = Term<F>;

  explicit Polynomial(RingPtr<F> ring) : ring_(std::move(ring)) {}

  /// Arbitrary term list; sorted and combined here.
  Polynomial(RingPtr<F> ring, std::vector<TermT> terms) : ring_(std::move(ring)), terms_(std::move(terms)) {
    canonicalize();
  }

  static Polynomial constant(RingPtr<F> ring, const Coeff& c) {
    Polynomial p(ring);
    if (!c.is_zero()) p.terms_.push_back({c, ring->one_monomial()});
    return p;
  }
  static Polynomial constant(RingPtr<F> ring, long c) {
    auto k = ring->field().from_integer(Integer(c));
    return constant(std::move(ring), k);
  }
  static Polynomial variable(RingPtr<F> ring, std::size_t i, unsigned exponent = 1) {
    Monomial m = ring->one_monomial();
    m.set(i, exponent);
    Polynomial p(ring);
    p.terms_.push_back({ring->field().one(), m});
    return p;
  }
  static Polynomial variable(RingPtr<F> ring, const std::string& name, unsigned exponent = 1) {
    auto i = ring->index(name);
    return variable(std::move(ring), i, exponent);
  }
  static Polynomial term(RingPtr<F> ring, const Coeff& c, const Monomial& m) {
    Polynomial p(ring);
    if (!c.is_zero()) p.terms_.push_back({c, m});
    return p;
  }
  /// Trusted constructor: `terms` already canonical.
  static Polynomial from_sorted(RingPtr<F> ring, std::vector<TermT> terms) {
    Polynomial p(std::move(ring));
    p.terms_ = std::move(terms);
    return p;
  }

  const RingPtr<F>& ring() const { return ring_; }
  const std::vector<TermT>& terms() const { return terms_; }
  std::size_t size() const { return terms_.size(); }
  bool is_zero() const { return terms_.empty(); }
  bool is_constant() const { return terms_.empty() || (terms_.size() == 1 && terms_[0].monomial.is_one()); }

  const TermT& lead_term() const { return require_nonzero().terms_.front(); }
  const Monomial& lead_monomial() const { return lead_term().monomial; }
  const Coeff& lead_coeff() const { return lead_term().coeff; }

  std::uint32_t total_degree() const {
    std::uint32_t d = 0;
    for (const auto& t : terms_) d = std::max(d, t.monomial.degree());
    return d;
  }

  /// Bit i set iff variable i occurs in some term.
  std::uint64_t support() const {
    std::uint64_t s = 0;
    for (const auto& t : terms_) s |= t.monomial.support();
    return s;
  }
  bool involves(std::size_t var) const { return (support() >> var) & 1u; }

  Polynomial monic() const {
    if (is_zero() || lead_coeff().is_one()) return *this;
    return scale(lead_coeff().inverse());
  }

  Polynomial scale(const Coeff& c) const {
    if (c.is_zero()) return Polynomial(ring_);
    Polynomial r(ring_);
    r.terms_.reserve(terms_.size());
    for (const auto& t : terms_) r.terms_.push_back({t.coeff * c, t.monomial});
    return r;
  }

  /// c * m * this; stays sorted because the order is multiplicative.
  Polynomial mul_term(const Coeff& c, const Monomial& m) const {
    if (c.is_zero()) return Polynomial(ring_);
    Polynomial r(ring_);
    r.terms_.reserve(terms_.size());
    for (const auto& t : terms_) r.terms_.push_back({t.coeff * c, t.monomial * m});
    return r;
  }

  Polynomial operator-() const { return scale(-ring_->field().one()); }

  friend Polynomial operator+(const Polynomial& a, const Polynomial& b) { return a.merge(b, false); }
  friend Polynomial operator-(const Polynomial& a, const Polynomial& b) { return a.merge(b, true); }
  friend Polynomial operator*(const Polynomial& a, const Polynomial& b) {
    a.check_ring(b);
    if (a.is_zero() || b.is_zero()) return Polynomial(a.ring_);
    std::vector<TermT> prod;
    prod.reserve(a.size() * b.size());
    for (const auto& s : a.terms_)
      for (const auto& t : b.terms_) prod.push_back({s.coeff * t.coeff, s.monomial * t.monomial});
    return Polynomial(a.ring_, std::move(prod));
  }
  Polynomial& operator+=(const Polynomial& b) { return *this = *this + b; }
  Polynomial& operator-=(const Polynomial& b) { return *this = *this - b; }
  Polynomial& operator*=(const Polynomial& b) { return *this = *this * b; }

  Polynomial pow(unsigned e) const {
    Polynomial result = constant(ring_, 1);
    Polynomial base = *this;
    while (e) {
      if (e & 1u) result *= base;
      e >>= 1;
      if (e) base *= base;
    }
    return result;
  }

  /// this - c*m*g, where the leading terms are known to cancel.
  Polynomial sub_mul_cancel_lead(const Coeff& c, const Monomial& m, const Polynomial& g) const {
    std::vector<TermT> out;
    out.reserve(terms_.size() + g.terms_.size());
    detail::merge_terms<F>(ring_->order(), out, terms_.begin() + 1, terms_.end(), g.terms_.begin() + 1, g.terms_.end(),
                           &c, &m, true);
    return from_sorted(ring_, std::move(out));
  }

  friend bool operator==(const Polynomial& a, const Polynomial& b) {
    return same_ring(a.ring_, b.ring_) && a.terms_ == b.terms_;
  }

 private:
  const Polynomial& require_nonzero() const {
    if (terms_.empty()) throw std::logic_error("leading term of the zero polynomial");
    return *this;
  }

  void check_ring(const Polynomial& b) const {
    if (!same_ring(ring_, b.ring_)) throw RingError("polynomials belong to different rings");
  }

  void canonicalize() {
    const auto& order = ring_->order();
    std::sort(terms_.begin(), terms_.end(),
              [&](const TermT& a, const TermT& b) { return order.less(b.monomial, a.monomial); });
    std::vector<TermT> out;
    out.reserve(terms_.size());
    for (auto& t : terms_) {
      if (!out.empty() && out.back().monomial == t.monomial) {
        out.back().coeff += t.coeff;
      } else {
        if (!out.empty() && out.back().coeff.is_zero()) out.pop_back();
        out.push_back(std::move(t));
      }
    }
    if (!out.empty() && out.back().coeff.is_zero()) out.pop_back();
    terms_ = std::move(out);
  }

  Polynomial merge(const Polynomial& b, bool subtract) const {
    check_ring(b);
    std::vector<TermT> out;
    out.reserve(terms_.size() + b.terms_.size());
    detail::merge_terms<F>(ring_->order(), out, terms_.begin(), terms_.end(), b.terms_.begin(), b.terms_.end(), nullptr,
                           nullptr, subtract);
    return from_sorted(ring_, std::move(out));
  }

  RingPtr<F> ring_;
  std::vector<TermT> terms_;
};

// ---------------------------------------------------------------------------
// Gradings

inline unsigned weighted_degree(const Monomial& m, const Grading& w) {
  unsigned d = 0;
  for (std::size_t i = 0; i < m.size(); ++i) d += w[i] * m[i];
  return d;
}

template <CoefficientField F>
const Grading& require_grading(const Ring<F>& ring, const std::optional<Grading>& explicit_grading) {
  if (explicit_grading) {
    if (explicit_grading->size() != ring.size()) throw RingError("grading must weight every variable");
    return *explicit_grading;
  }
  if (!ring.grading()) throw RingError("ring has no grading; pass weights explicitly");
  return *ring.grading();
}

/// Weighted-homogeneous components keyed by degree; zero components omitted.
template <CoefficientField F>
std::map<unsigned, Polynomial<F>> weighted_components(const Polynomial<F>& f,
                                                      const std::optional<Grading>& grading = std::nullopt) {
  const Grading& w = require_grading(*f.ring(), grading);
  std::map<unsigned, std::vector<Term<F>>> buckets;
  for (const auto& t : f.terms()) buckets[weighted_degree(t.monomial, w)].push_back(t);
  std::map<unsigned, Polynomial<F>> out;
  for (auto& [d, terms] : buckets) out.emplace(d, Polynomial<F>::from_sorted(f.ring(), std::move(terms)));
  return out;
}

template <CoefficientField F>
bool is_homogeneous(const Polynomial<F>& f, const std::optional<Grading>& grading = std::nullopt) {
  return weighted_components(f, grading).size() <= 1;
}

// ---------------------------------------------------------------------------
// Substitution and change of ring

/// Image of f under x_i -> images[i]; all images share one target ring.
template <CoefficientField F>
Polynomial<F> substitute(const Polynomial<F>& f, const RingPtr<F>& target, const std::vector<Polynomial<F>>& images) {
  if (images.size() != f.ring()->size()) throw RingError("substitution needs one image per variable");
  std::vector<std::vector<Polynomial<F>>> powers(images.size());
  auto power = [&](std::size_t i, unsigned e) -> const Polynomial<F>& {
    auto& cache = powers[i];
    if (cache.empty()) cache.push_back(Polynomial<F>::constant(target, 1));
    while (cache.size() <= e) cache.push_back(cache.back() * images[i]);
    return cache[e];
  };
  std::vector<Term<F>> acc;
  for (const auto& t : f.terms()) {
    Polynomial<F> p = Polynomial<F>::constant(target, t.coeff);
    for (std::size_t i = 0; i < t.monomial.size() && !p.is_zero(); ++i)
      if (t.monomial[i]) p *= power(i, t.monomial[i]);
    for (auto& s : p.terms()) acc.push_back(s);
  }
  return Polynomial<F>(target, std::move(acc));
}

/// Re-expresses f in `target`, matching variables by name.
template <CoefficientField F>
Polynomial<F> map_to_ring(const Polynomial<F>& f, const RingPtr<F>& target) {
  const auto& src = *f.ring();
  if (f.ring() == target) return f;
  std::vector<std::optional<std::size_t>> slot(src.size());
  std::uint64_t used = f.support();
  for (std::size_t i = 0; i < src.size(); ++i) {
    slot[i] = target->find(src.name(i));
    if (!slot[i] && ((used >> i) & 1u))
      throw RingError("variable '" + src.name(i) + "' does not exist in the target ring");
  }
  std::vector<Term<F>> terms;
  terms.reserve(f.size());
  for (const auto& t : f.terms()) {
    Monomial m = target->one_monomial();
    for (std::size_t i = 0; i < src.size(); ++i)
      if (t.monomial[i]) m.set(*slot[i], t.monomial[i]);
    terms.push_back({t.coeff, m});
  }
  return Polynomial<F>(target, std::move(terms));
}

/// Sets the named variables to given polynomials, keeping the ring.
template <CoefficientField F>
Polynomial<F> substitute_variables(const Polynomial<F>& f,
                                   const std::vector<std::pair<std::string, Polynomial<F>>>& assignments) {
  const auto& ring = f.ring();
  std::vector<Polynomial<F>> images;
  images.reserve(ring->size());
  for (std::size_t i = 0; i < ring->size(); ++i) images.push_back(Polynomial<F>::variable(ring, i));
  for (const auto& [name, value] : assignments) images[ring->index(name)] = map_to_ring(value, ring);
  return substitute(f, ring, images);
}

/// Coefficient-wise change of field, e.g. reduction of a rational polynomial mod p.
template <CoefficientField F, CoefficientField G, class Fn>
Polynomial<G> map_coefficients(const Polynomial<F>& f, const RingPtr<G>& target, Fn&& fn) {
  std::vector<Term<G>> terms;
  for (const auto& t : f.terms()) terms.push_back({fn(t.coeff), t.monomial});
  return Polynomial<G>(target, std::move(terms));
}

/// hvar^d * h(x / hvar) for the graded variables: each term is padded with
/// hvar^(d - its weighted degree).
template <CoefficientField F>
Polynomial<F> homogenize(const Polynomial<F>& h, const std::string& hvar, unsigned d,
                         const std::optional<Grading>& grading = std::nullopt) {
  const auto& ring = *h.ring();
  const Grading& w = require_grading(ring, grading);
  std::size_t v = ring.index(hvar);
  if (h.involves(v)) throw std::invalid_argument("homogenize: polynomial already involves " + hvar);
  if (w[v] != 1) throw std::invalid_argument("homogenize: variable " + hvar + " must have weight 1");
  std::vector<Term<F>> terms;
  for (const auto& t : h.terms()) {
    unsigned deg = weighted_degree(t.monomial, w);
    if (deg > d)
      throw std::invalid_argument("homogenize: degree " + std::to_string(d) + " is below the degree " +
                                  std::to_string(deg) + " of a term");
    Monomial m = t.monomial;
    m.set(v, d - deg);
    terms.push_back({t.coeff, m});
  }
  return Polynomial<F>(h.ring(), std::move(terms));
}

}  // namespace unproj
