#pragma once

#include <array>
#include <compare>
#include <cstdint>
#include <string>

namespace nondeg {

struct LatticePoint {
  long long i = 0;
  long long j = 0;

  auto operator<=>(const LatticePoint&) const = default;
  LatticePoint operator+(const LatticePoint& o) const { return {i + o.i, j + o.j}; }
  LatticePoint operator-(const LatticePoint& o) const { return {i - o.i, j - o.j}; }
};

std::string to_string(const LatticePoint& pt);

// (i, j) -> M (i, j) + translation, with |det M| = 1.
class AffineLatticeMap {
 public:
  using Matrix = std::array<std::array<long long, 2>, 2>;

  AffineLatticeMap() = default;
  // Throws NonUnimodularMatrix unless det = +-1.
  AffineLatticeMap(const Matrix& m, LatticePoint translation);

  static AffineLatticeMap identity() { return {}; }
  static AffineLatticeMap translation(LatticePoint t) { return {Matrix{{{1, 0}, {0, 1}}}, t}; }

  const Matrix& matrix() const noexcept { return m_; }
  const LatticePoint& offset() const noexcept { return t_; }
  long long det() const noexcept { return m_[0][0] * m_[1][1] - m_[0][1] * m_[1][0]; }

  LatticePoint apply(const LatticePoint& p) const {
    return {m_[0][0] * p.i + m_[0][1] * p.j + t_.i, m_[1][0] * p.i + m_[1][1] * p.j + t_.j};
  }
  // Linear part only (directions).
  LatticePoint apply_linear(const LatticePoint& p) const {
    return {m_[0][0] * p.i + m_[0][1] * p.j, m_[1][0] * p.i + m_[1][1] * p.j};
  }

  AffineLatticeMap inverse() const;
  // (this * other)(p) = this(other(p)).
  AffineLatticeMap compose(const AffineLatticeMap& other) const;

  bool operator==(const AffineLatticeMap&) const = default;

 private:
  Matrix m_{{{1, 0}, {0, 1}}};
  LatticePoint t_{};
};

}  // namespace nondeg
