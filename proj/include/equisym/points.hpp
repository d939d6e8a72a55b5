#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "equisym/groups.hpp"

namespace equisym {

/// A point of a carrier space, passed by value.
///
/// index   - element of a finite set {0..n-1} (also finite coset ids)
/// vector  - point of R^d, stored as a d x 1 matrix
/// cloud   - n points of R^d, one per row
/// element - coset of a continuous coset space, held by its canonical representative
/// pair    - point of a product carrier
class Point {
 public:
  enum class Kind { index, vector, cloud, element, pair };

  Point() = default;
  static Point from_index(std::size_t i);
  static Point from_vector(Eigen::VectorXd v);
  static Point scalar(double v);
  static Point from_cloud(Eigen::MatrixXd rows);
  static Point from_element(GroupElement g);
  static Point from_pair(Point a, Point b);

  Kind kind() const { return kind_; }
  std::size_t index() const { return index_; }
  /// Coordinates of vector and cloud points.
  const Eigen::MatrixXd& coords() const { return coords_; }
  Eigen::VectorXd vector() const;
  const GroupElement& element() const { return element_; }
  const Point& first() const { return parts_.at(0); }
  const Point& second() const { return parts_.at(1); }

  /// Infinity-norm distance; discrete mismatches count 1, kind mismatches are infinite.
  double distance(const Point& other) const;
  /// Flattened real embedding (index -> its value, clouds row-major, pairs concatenated).
  Eigen::VectorXd embed() const;

  std::string to_string() const;

 private:
  Kind kind_ = Kind::index;
  std::size_t index_ = 0;
  Eigen::MatrixXd coords_;
  GroupElement element_;
  std::vector<Point> parts_;
};

}  // namespace equisym
