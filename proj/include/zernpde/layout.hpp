#pragma once

#include <stdexcept>
#include <vector>

#include "zernpde/ball.hpp"

namespace zernpde {

enum class Parity { even, odd };

inline const char* parity_name(Parity p) { return p == Parity::even ? "even" : "odd"; }

// Mode bookkeeping for a given Size: coefficient slots live at angular index
// m in [0, D] and radial position j in [0, D_m], covering the Zernike degree
// n = m + 2j <= D with D = Size/2. Radial tail slots run to j = D+1 and
// angular band error slots to 2*Size.
struct Layout {
  int size = 0;
  int D = 0;

  Layout() = default;
  explicit Layout(int size_) : size(size_), D(size_ / 2) {
    if (size_ < 2) throw std::invalid_argument("Layout: Size must be >= 2");
  }

  int Dm(int m) const { return m > D ? -1 : (D - m) / 2; }
  int degree(int m, int j) const { return m + 2 * j; }
  bool coeff_active(int m, int j) const { return m >= 0 && m <= D && j >= 0 && j <= Dm(m); }
  int max_coeff_degree() const { return D; }

  // Canonical enumeration of all coefficient slots (both parities use it;
  // odd-parity data keeps the m = 0 row identically zero).
  int n_modes() const {
    int c = 0;
    for (int m = 0; m <= D; ++m) c += Dm(m) + 1;
    return c;
  }

  bool operator==(const Layout& o) const { return size == o.size; }
  bool operator!=(const Layout& o) const { return size != o.size; }
};

// Dense index over the coefficient slots of one parity, in (m, j) order.
struct ModeIndex {
  Layout layout;
  Parity parity = Parity::even;
  std::vector<std::pair<int, int>> modes;       // idx -> (m, j)
  std::vector<std::vector<int>> index_of;       // [m][j] -> idx or -1

  ModeIndex() = default;
  ModeIndex(Layout lay, Parity p) : layout(lay), parity(p) {
    index_of.assign(lay.D + 1, {});
    int m0 = (p == Parity::odd) ? 1 : 0;
    for (int m = 0; m <= lay.D; ++m) {
      index_of[m].assign(lay.Dm(m) + 1, -1);
      if (m < m0) continue;
      for (int j = 0; j <= lay.Dm(m); ++j) {
        index_of[m][j] = static_cast<int>(modes.size());
        modes.emplace_back(m, j);
      }
    }
  }

  int count() const { return static_cast<int>(modes.size()); }
  int at(int m, int j) const {
    if (m < 0 || m >= static_cast<int>(index_of.size()) || j < 0 ||
        j >= static_cast<int>(index_of[m].size()))
      return -1;
    return index_of[m][j];
  }
};

// Names one slot of the enclosure representation.
struct ModeRef {
  enum class Kind { coefficient, radial_tail, band_error };
  Kind kind = Kind::coefficient;
  int m = 0;
  int j = 0;  // unused for band_error
};

}  // namespace zernpde
