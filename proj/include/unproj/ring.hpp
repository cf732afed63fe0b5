#pragma once

// Polynomial ring contexts: variable names, monomial order, optional integer
// grading, and the coefficient field.

#include <algorithm>
#include <cctype>
#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <vector>

#include "unproj/arith.hpp"
#include "unproj/monomial.hpp"

namespace unproj {

class RingError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

using Grading = std::vector<unsigned>;

inline bool is_identifier(const std::string& s) {
  if (s.empty() || !(std::isalpha(static_cast<unsigned char>(s[0])) || s[0] == '_')) return false;
  return std::all_of(s.begin(), s.end(), [](char c) { return std::isalnum(static_cast<unsigned char>(c)) || c == '_'; });
}

template <CoefficientField F>
class Ring;

template <CoefficientField F>
using RingPtr = std::shared_ptr<const Ring<F>>;

template <CoefficientField F>
class Ring {
 public:
  using Field = F;
  using Coeff = typename F::Element;

  Ring(F field, std::vector<std::string> variables, MonomialOrder order, std::optional<Grading> grading)
      : field_(std::move(field)), vars_(std::move(variables)), order_(std::move(order)), grading_(std::move(grading)) {
    if (vars_.size() > kMaxVariables)
      throw RingError("rings are limited to " + std::to_string(kMaxVariables) + " variables");
    for (std::size_t i = 0; i < vars_.size(); ++i) {
      if (!is_identifier(vars_[i])) throw RingError("malformed variable name '" + vars_[i] + "'");
      if (!index_.emplace(vars_[i], i).second) throw RingError("duplicate variable '" + vars_[i] + "'");
    }
    if (order_.size() != vars_.size()) throw RingError("monomial order does not cover the variables");
    if (grading_ && grading_->size() != vars_.size()) throw RingError("grading must weight every variable");
  }

  const F& field() const { return field_; }
  const std::vector<std::string>& variables() const { return vars_; }
  std::size_t size() const { return vars_.size(); }
  const std::string& name(std::size_t i) const { return vars_[i]; }
  const MonomialOrder& order() const { return order_; }
  const std::optional<Grading>& grading() const { return grading_; }

  std::optional<std::size_t> find(const std::string& name) const {
    auto it = index_.find(name);
    if (it == index_.end()) return std::nullopt;
    return it->second;
  }
  std::size_t index(const std::string& name) const {
    auto i = find(name);
    if (!i) throw RingError("unknown variable '" + name + "'");
    return *i;
  }

  Monomial one_monomial() const { return Monomial(size()); }

  friend bool operator==(const Ring& a, const Ring& b) {
    return a.field_ == b.field_ && a.vars_ == b.vars_ && a.order_ == b.order_ && a.grading_ == b.grading_;
  }

 private:
  F field_;
  std::vector<std::string> vars_;
  MonomialOrder order_;
  std::optional<Grading> grading_;
  std::unordered_map<std::string, std::size_t> index_;
};

template <CoefficientField F>
RingPtr<F> make_ring(F field, std::vector<std::string> variables, MonomialOrder order,
                     std::optional<Grading> grading = std::nullopt) {
  return std::make_shared<const Ring<F>>(std::move(field), std::move(variables), std::move(order), std::move(grading));
}

template <CoefficientField F>
RingPtr<F> make_ring(F field, std::vector<std::string> variables, OrderKind kind = OrderKind::grevlex,
                     std::optional<Grading> grading = std::nullopt) {
  auto order = MonomialOrder::simple(kind, variables.size());
  return make_ring(std::move(field), std::move(variables), std::move(order), std::move(grading));
}

template <CoefficientField F>
bool same_ring(const RingPtr<F>& a, const RingPtr<F>& b) {
  return a == b || *a == *b;
}

/// The ring with `front` prepended as one block of kind `front_kind`
/// (the front block dominates the order), existing blocks kept after it.
template <CoefficientField F>
RingPtr<F> prepend_block(const Ring<F>& ring, const std::vector<std::string>& front,
                         OrderKind front_kind = OrderKind::grevlex) {
  std::vector<std::string> vars = front;
  vars.insert(vars.end(), ring.variables().begin(), ring.variables().end());
  std::vector<MonomialOrder::Block> blocks;
  if (!front.empty()) blocks.push_back({0, front.size(), front_kind});
  for (auto b : ring.order().blocks()) blocks.push_back({b.begin + front.size(), b.end + front.size(), b.kind});
  std::optional<Grading> grading;
  if (ring.grading()) {
    grading = Grading(front.size(), 0);
    grading->insert(grading->end(), ring.grading()->begin(), ring.grading()->end());
  }
  return make_ring(ring.field(), std::move(vars), MonomialOrder(std::move(blocks)), std::move(grading));
}

/// The ring on `keep` (a subset of the variables, in ring order), with the
/// order restricted blockwise.
template <CoefficientField F>
RingPtr<F> restrict_ring(const Ring<F>& ring, const std::vector<bool>& keep) {
  std::vector<std::string> vars;
  std::vector<std::pair<std::size_t, OrderKind>> sizes;
  std::optional<Grading> grading;
  if (ring.grading()) grading.emplace();
  for (const auto& b : ring.order().blocks()) {
    std::size_t n = 0;
    for (std::size_t i = b.begin; i < b.end; ++i) {
      if (!keep[i]) continue;
      vars.push_back(ring.name(i));
      if (grading) grading->push_back((*ring.grading())[i]);
      ++n;
    }
    sizes.emplace_back(n, b.kind);
  }
  return make_ring(ring.field(), std::move(vars), MonomialOrder::block(sizes), std::move(grading));
}

/// Moves `front` into a leading block of kind `front_kind`; the remaining
/// variables keep their relative order and blocks.
template <CoefficientField F>
RingPtr<F> elimination_ring(const Ring<F>& ring, const std::vector<std::string>& front,
                            OrderKind front_kind = OrderKind::grevlex) {
  std::vector<bool> keep(ring.size(), true);
  std::vector<std::string> ordered_front;
  for (std::size_t i = 0; i < ring.size(); ++i) {
    if (std::find(front.begin(), front.end(), ring.name(i)) != front.end()) {
      keep[i] = false;
      ordered_front.push_back(ring.name(i));
    }
  }
  if (ordered_front.size() != front.size()) throw RingError("elimination variables must be distinct ring variables");
  auto rest = restrict_ring(ring, keep);
  auto full = prepend_block(*rest, ordered_front, front_kind);
  if (!ring.grading()) return full;
  // restore the original weights of the moved variables
  Grading g(full->size());
  for (std::size_t i = 0; i < full->size(); ++i) g[i] = (*ring.grading())[ring.index(full->name(i))];
  return make_ring(full->field(), full->variables(), full->order(), std::move(g));
}

/// Same variables and order, different grading.
template <CoefficientField F>
RingPtr<F> with_grading(const Ring<F>& ring, std::optional<Grading> grading) {
  return make_ring(ring.field(), ring.variables(), ring.order(), std::move(grading));
}

/// Same variables and grading, different order.
template <CoefficientField F>
RingPtr<F> with_order(const Ring<F>& ring, MonomialOrder order) {
  return make_ring(ring.field(), ring.variables(), std::move(order), ring.grading());
}

}  // namespace unproj
