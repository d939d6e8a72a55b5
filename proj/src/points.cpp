#include "equisym/points.hpp"

#include <algorithm>
#include <limits>
#include <sstream>

namespace equisym {

Point Point::from_index(std::size_t i) {
  Point p;
  p.kind_ = Kind::index;
  p.index_ = i;
  return p;
}

Point Point::from_vector(Eigen::VectorXd v) {
  Point p;
  p.kind_ = Kind::vector;
  p.coords_ = std::move(v);
  return p;
}

Point Point::scalar(double v) { return from_vector(Eigen::VectorXd::Constant(1, v)); }

Point Point::from_cloud(Eigen::MatrixXd rows) {
  Point p;
  p.kind_ = Kind::cloud;
  p.coords_ = std::move(rows);
  return p;
}

Point Point::from_element(GroupElement g) {
  Point p;
  p.kind_ = Kind::element;
  p.element_ = std::move(g);
  return p;
}

Point Point::from_pair(Point a, Point b) {
  Point p;
  p.kind_ = Kind::pair;
  p.parts_.push_back(std::move(a));
  p.parts_.push_back(std::move(b));
  return p;
}

Eigen::VectorXd Point::vector() const { return Eigen::Map<const Eigen::VectorXd>(coords_.data(), coords_.size()); }

double Point::distance(const Point& other) const {
  constexpr double inf = std::numeric_limits<double>::infinity();
  if (kind_ != other.kind_) return inf;
  switch (kind_) {
    case Kind::index:
      return index_ == other.index_ ? 0.0 : 1.0;
    case Kind::vector:
    case Kind::cloud:
      if (coords_.rows() != other.coords_.rows() || coords_.cols() != other.coords_.cols())
        return inf;
      return coords_.size() == 0 ? 0.0 : (coords_ - other.coords_).cwiseAbs().maxCoeff();
    case Kind::element:
      return element_.distance(other.element_);
    case Kind::pair:
      return std::max(parts_[0].distance(other.parts_[0]), parts_[1].distance(other.parts_[1]));
  }
  return inf;
}

namespace {

void flatten_element(const GroupElement& g, std::vector<double>& out) {
  switch (g.kind()) {
    case GroupElement::Kind::index:
      out.push_back(static_cast<double>(g.index()));
      break;
    case GroupElement::Kind::permutation:
      for (int v : g.permutation()) out.push_back(v);
      break;
    case GroupElement::Kind::matrix:
      for (Eigen::Index i = 0; i < g.matrix().size(); ++i) out.push_back(g.matrix().data()[i]);
      break;
    case GroupElement::Kind::translation:
      for (Eigen::Index i = 0; i < g.translation().size(); ++i) out.push_back(g.translation()(i));
      break;
    case GroupElement::Kind::euclidean:
      for (Eigen::Index i = 0; i < g.matrix().size(); ++i) out.push_back(g.matrix().data()[i]);
      for (Eigen::Index i = 0; i < g.translation().size(); ++i) out.push_back(g.translation()(i));
      break;
    case GroupElement::Kind::pair:
      flatten_element(g.first(), out);
      flatten_element(g.second(), out);
      break;
  }
}

void flatten(const Point& p, std::vector<double>& out) {
  switch (p.kind()) {
    case Point::Kind::index:
      out.push_back(static_cast<double>(p.index()));
      break;
    case Point::Kind::vector:
      for (Eigen::Index i = 0; i < p.coords().size(); ++i) out.push_back(p.coords()(i));
      break;
    case Point::Kind::cloud:
      for (Eigen::Index i = 0; i < p.coords().rows(); ++i)
        for (Eigen::Index j = 0; j < p.coords().cols(); ++j) out.push_back(p.coords()(i, j));
      break;
    case Point::Kind::element:
      flatten_element(p.element(), out);
      break;
    case Point::Kind::pair:
      flatten(p.first(), out);
      flatten(p.second(), out);
      break;
  }
}

}  // namespace

Eigen::VectorXd Point::embed() const {
  std::vector<double> out;
  flatten(*this, out);
  return Eigen::Map<Eigen::VectorXd>(out.data(), static_cast<Eigen::Index>(out.size()));
}

std::string Point::to_string() const {
  std::ostringstream os;
  os.precision(6);
  switch (kind_) {
    case Kind::index:
      os << index_;
      break;
    case Kind::vector:
      os << "(";
      for (Eigen::Index i = 0; i < coords_.size(); ++i) os << (i ? " " : "") << coords_(i);
      os << ")";
      break;
    case Kind::cloud:
      os << "[";
      for (Eigen::Index i = 0; i < coords_.rows(); ++i) {
        os << (i ? "; " : "");
        for (Eigen::Index j = 0; j < coords_.cols(); ++j) os << (j ? " " : "") << coords_(i, j);
      }
      os << "]";
      break;
    case Kind::element:
      os << "[" << element_.to_string() << "]";
      break;
    case Kind::pair:
      os << "(" << parts_[0].to_string() << ", " << parts_[1].to_string() << ")";
      break;
  }
  return os.str();
}

}  // namespace equisym
