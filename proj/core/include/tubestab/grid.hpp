#pragma once

#include <cstddef>
#include <functional>
#include <span>
#include <vector>

namespace tubestab {

/// Closed uniform grid on [0, l] including both endpoints.
class Grid {
 public:
  /// Throws InvalidArgument unless l > 0 and n_points >= 3.
  Grid(double l, std::size_t n_points);

  double length() const noexcept { return l_; }
  std::size_t size() const noexcept { return n_; }
  double spacing() const noexcept { return h_; }

  /// Node coordinate; the last node is exactly l.
  double x(std::size_t i) const noexcept {
    return i + 1 == n_ ? l_ : static_cast<double>(i) * h_;
  }

  bool operator==(const Grid&) const = default;

 private:
  double l_;
  std::size_t n_;
  double h_;
};

/// A spatial function sampled on a Grid. Values are always finite.
class Profile {
 public:
  Profile(Grid grid, std::vector<double> values);

  /// Zero profile on the grid.
  explicit Profile(Grid grid);

  static Profile sample(const Grid& grid, const std::function<double(double)>& f);

  const Grid& grid() const noexcept { return grid_; }
  std::span<const double> values() const noexcept { return values_; }
  std::size_t size() const noexcept { return values_.size(); }
  double operator[](std::size_t i) const noexcept { return values_[i]; }

  bool operator==(const Profile&) const = default;

 private:
  Grid grid_;
  std::vector<double> values_;
};

}  // namespace tubestab
