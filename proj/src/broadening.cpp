#include "mbd/broadening.hpp"

#include <cmath>

#include <Eigen/Eigenvalues>

#include "mbd/errors.hpp"

namespace mbd {

namespace {

void renormalize(std::vector<BroadeningNode>& nodes) {
  double total = 0.0;
  for (const auto& n : nodes) total += n.weight;
  if (!(total > 0.0)) {
    throw ConfigError("broadening: node weights sum to zero");
  }
  for (auto& n : nodes) n.weight /= total;
}

/// Golub-Welsch on the Hermite Jacobi matrix.  Returns abscissas of
/// \int e^{-x^2} f(x) dx together with weights normalized to sum 1.
std::vector<std::pair<double, double>> hermite_rule(int n) {
  Eigen::MatrixXd jacobi = Eigen::MatrixXd::Zero(n, n);
  for (int i = 0; i + 1 < n; ++i) {
    const double b = std::sqrt((i + 1) / 2.0);
    jacobi(i, i + 1) = b;
    jacobi(i + 1, i) = b;
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(jacobi);
  std::vector<std::pair<double, double>> rule(n);
  for (int i = 0; i < n; ++i) {
    const double v0 = es.eigenvectors()(0, i);
    rule[i] = {es.eigenvalues()(i), v0 * v0};
  }
  return rule;
}

}  // namespace

BroadeningModel BroadeningModel::sharp_line(double eta0) {
  return BroadeningModel(BroadeningKind::SharpLine, {{eta0, 1.0}});
}

BroadeningModel BroadeningModel::discrete(
    std::vector<std::pair<double, double>> raw) {
  if (raw.empty()) {
    throw EmptyNodeSet("broadening: discrete model needs at least one node");
  }
  std::vector<BroadeningNode> nodes;
  nodes.reserve(raw.size());
  for (const auto& [eta, w] : raw) {
    if (w < 0.0) {
      throw ConfigError("broadening: negative node weight");
    }
    nodes.push_back({eta, w});
  }
  renormalize(nodes);
  return BroadeningModel(BroadeningKind::Discrete, std::move(nodes));
}

BroadeningModel BroadeningModel::gaussian(double center, double width,
                                          int n_nodes) {
  if (!(width > 0.0)) {
    throw NonpositiveWidth("broadening: gaussian width must be > 0");
  }
  if (n_nodes < 2) {
    throw ConfigError("broadening: gaussian needs n_nodes >= 2");
  }
  const double scale = std::sqrt(2.0) * width;
  std::vector<BroadeningNode> nodes;
  nodes.reserve(n_nodes);
  for (const auto& [x, w] : hermite_rule(n_nodes)) {
    nodes.push_back({center + scale * x, w});
  }
  renormalize(nodes);
  return BroadeningModel(BroadeningKind::Gaussian, std::move(nodes));
}

BroadeningModel BroadeningModel::lorentzian(double center, double width,
                                            int n_nodes, double cutoff) {
  if (!(width > 0.0)) {
    throw NonpositiveWidth("broadening: lorentzian width must be > 0");
  }
  if (n_nodes < 2) {
    throw ConfigError("broadening: lorentzian needs n_nodes >= 2");
  }
  if (!(cutoff > 0.0)) {
    throw ConfigError("broadening: lorentzian cutoff must be > 0");
  }
  // eta = center + width*tan(theta) maps the density to a constant in
  // theta, so midpoint nodes carry equal weight 1/n exactly.
  const double theta_max = std::atan(cutoff / width);
  const double dtheta = 2.0 * theta_max / n_nodes;
  std::vector<BroadeningNode> nodes;
  nodes.reserve(n_nodes);
  for (int i = 0; i < n_nodes; ++i) {
    const double theta = -theta_max + (i + 0.5) * dtheta;
    nodes.push_back({center + width * std::tan(theta), 1.0 / n_nodes});
  }
  renormalize(nodes);
  return BroadeningModel(BroadeningKind::Lorentzian, std::move(nodes));
}

Complex BroadeningModel::average(
    const std::function<Complex(double)>& integrand) const {
  Complex acc{0.0, 0.0};
  for (const auto& n : nodes_) acc += n.weight * integrand(n.eta);
  return acc;
}

double BroadeningModel::average_real(
    const std::function<double(double)>& integrand) const {
  double acc = 0.0;
  for (const auto& n : nodes_) acc += n.weight * integrand(n.eta);
  return acc;
}

}  // namespace mbd
