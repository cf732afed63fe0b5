#pragma once

// Exponent vectors and monomial orders.

#include <algorithm>
#include <array>
#include <compare>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <initializer_list>
#include <stdexcept>
#include <string>
#include <vector>

namespace unproj {

/// Upper bound on ring size.  Exponents are stored inline so monomial
/// arithmetic never allocates.
inline constexpr std::size_t kMaxVariables = 48;

using Exponent = std::uint16_t;

class Monomial {
 public:
  Monomial() = default;
  explicit Monomial(std::size_t nvars) : nvars_(check_size(nvars)) {}
  Monomial(std::initializer_list<unsigned> exps) : nvars_(check_size(exps.size())) {
    std::size_t i = 0;
    for (unsigned e : exps) set(i++, e);
  }

  std::size_t size() const { return nvars_; }
  Exponent operator[](std::size_t i) const { return exps_[i]; }
  std::uint32_t degree() const { return degree_; }
  /// Bit i set iff variable i occurs.
  std::uint64_t support() const { return support_; }
  bool is_one() const { return degree_ == 0; }

  void set(std::size_t i, unsigned e) {
    if (e > UINT16_MAX) throw std::overflow_error("exponent overflow");
    degree_ = degree_ - exps_[i] + e;
    exps_[i] = static_cast<Exponent>(e);
    if (e) support_ |= bit(i);
    else support_ &= ~bit(i);
  }

  friend Monomial operator*(const Monomial& a, const Monomial& b) {
    Monomial r(a.nvars_);
    for (std::size_t i = 0; i < a.nvars_; ++i) {
      unsigned e = unsigned{a.exps_[i]} + b.exps_[i];
      if (e > UINT16_MAX) throw std::overflow_error("exponent overflow");
      r.exps_[i] = static_cast<Exponent>(e);
    }
    r.degree_ = a.degree_ + b.degree_;
    r.support_ = a.support_ | b.support_;
    return r;
  }

  /// a divides b.
  friend bool divides(const Monomial& a, const Monomial& b) {
    if ((a.support_ & ~b.support_) != 0 || a.degree_ > b.degree_) return false;
    for (std::size_t i = 0; i < a.nvars_; ++i)
      if (a.exps_[i] > b.exps_[i]) return false;
    return true;
  }

  /// b / a; requires divides(a, b).
  friend Monomial quotient(const Monomial& b, const Monomial& a) {
    Monomial r(b.nvars_);
    for (std::size_t i = 0; i < b.nvars_; ++i) {
      r.exps_[i] = static_cast<Exponent>(b.exps_[i] - a.exps_[i]);
      if (r.exps_[i]) r.support_ |= bit(i);
    }
    r.degree_ = b.degree_ - a.degree_;
    return r;
  }

  friend Monomial lcm(const Monomial& a, const Monomial& b) {
    Monomial r(a.nvars_);
    for (std::size_t i = 0; i < a.nvars_; ++i) r.exps_[i] = std::max(a.exps_[i], b.exps_[i]);
    r.degree_ = 0;
    for (std::size_t i = 0; i < a.nvars_; ++i) r.degree_ += r.exps_[i];
    r.support_ = a.support_ | b.support_;
    return r;
  }

  friend bool coprime(const Monomial& a, const Monomial& b) { return (a.support_ & b.support_) == 0; }

  friend bool operator==(const Monomial& a, const Monomial& b) {
    if (a.nvars_ != b.nvars_ || a.degree_ != b.degree_ || a.support_ != b.support_) return false;
    return std::equal(a.exps_.begin(), a.exps_.begin() + a.nvars_, b.exps_.begin());
  }

  std::size_t hash() const {
    std::size_t h = support_ * 0x9e3779b97f4a7c15ULL;
    for (std::size_t i = 0; i < nvars_; ++i) h = (h ^ exps_[i]) * 0x100000001b3ULL;
    return h;
  }

 private:
  static std::uint64_t bit(std::size_t i) { return std::uint64_t{1} << i; }
  static std::uint8_t check_size(std::size_t n) {
    if (n > kMaxVariables)
      throw std::length_error("rings are limited to " + std::to_string(kMaxVariables) + " variables");
    return static_cast<std::uint8_t>(n);
  }

  std::array<Exponent, kMaxVariables> exps_{};
  std::uint8_t nvars_ = 0;
  std::uint32_t degree_ = 0;
  std::uint64_t support_ = 0;
};

enum class OrderKind { lex, grevlex };

inline std::string to_string(OrderKind k) { return k == OrderKind::lex ? "lex" : "grevlex"; }

/// A block order over contiguous variable ranges; each block compares with
/// its own inner kind and earlier blocks dominate.  Plain lex and grevlex are
/// the one-block case.
class MonomialOrder {
 public:
  struct Block {
    std::size_t begin;
    std::size_t end;
    OrderKind kind;
    friend bool operator==(const Block&, const Block&) = default;
  };

  MonomialOrder() = default;

  static MonomialOrder lex(std::size_t nvars) { return simple(OrderKind::lex, nvars); }
  static MonomialOrder grevlex(std::size_t nvars) { return simple(OrderKind::grevlex, nvars); }
  static MonomialOrder simple(OrderKind kind, std::size_t nvars) {
    if (nvars == 0) return MonomialOrder(std::vector<Block>{});
    return MonomialOrder({{0, nvars, kind}});
  }

  /// Blocks given by their sizes, in order.
  static MonomialOrder block(const std::vector<std::pair<std::size_t, OrderKind>>& sizes) {
    std::vector<Block> blocks;
    std::size_t at = 0;
    for (auto [n, kind] : sizes) {
      if (n == 0) continue;
      blocks.push_back({at, at + n, kind});
      at += n;
    }
    return MonomialOrder(std::move(blocks));
  }

  explicit MonomialOrder(std::vector<Block> blocks) : blocks_(std::move(blocks)) {
    std::size_t at = 0;
    for (const auto& b : blocks_) {
      if (b.begin != at || b.end <= b.begin) throw std::invalid_argument("blocks must partition the variables");
      at = b.end;
    }
  }

  const std::vector<Block>& blocks() const { return blocks_; }
  std::size_t size() const { return blocks_.empty() ? 0 : blocks_.back().end; }
  bool is_block() const { return blocks_.size() > 1; }

  std::strong_ordering compare(const Monomial& a, const Monomial& b) const {
    for (const auto& blk : blocks_) {
      auto c = blk.kind == OrderKind::lex ? compare_lex(a, b, blk) : compare_grevlex(a, b, blk);
      if (c != std::strong_ordering::equal) return c;
    }
    return std::strong_ordering::equal;
  }

  bool less(const Monomial& a, const Monomial& b) const { return compare(a, b) == std::strong_ordering::less; }

  friend bool operator==(const MonomialOrder&, const MonomialOrder&) = default;

 private:
  static std::strong_ordering compare_lex(const Monomial& a, const Monomial& b, const Block& blk) {
    for (std::size_t i = blk.begin; i < blk.end; ++i)
      if (a[i] != b[i]) return a[i] <=> b[i];
    return std::strong_ordering::equal;
  }

  static std::strong_ordering compare_grevlex(const Monomial& a, const Monomial& b, const Block& blk) {
    std::uint32_t da = 0, db = 0;
    if (blk.begin == 0 && blk.end == a.size()) {
      da = a.degree();
      db = b.degree();
    } else {
      for (std::size_t i = blk.begin; i < blk.end; ++i) {
        da += a[i];
        db += b[i];
      }
    }
    if (da != db) return da <=> db;
    for (std::size_t i = blk.end; i-- > blk.begin;)
      if (a[i] != b[i]) return b[i] <=> a[i];
    return std::strong_ordering::equal;
  }

  std::vector<Block> blocks_;
};

inline std::strong_ordering monomial_compare(const Monomial& a, const Monomial& b, const MonomialOrder& order) {
  return order.compare(a, b);
}

}  // namespace unproj

template <>
struct std::hash<unproj::Monomial> {
  std::size_t operator()(const unproj::Monomial& m) const { return m.hash(); }
};
