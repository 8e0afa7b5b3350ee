#pragma once

#include <functional>
#include <utility>
#include <vector>

#include "mbd/types.hpp"

namespace mbd {

enum class BroadeningKind { SharpLine, Discrete, Gaussian, Lorentzian };

struct BroadeningNode {
  double eta;
  double weight;
};

/// Detuning distribution f(eta), materialized as normalized quadrature
/// nodes {(eta_i, w_i)}.  The averaging bracket <F> = \int f(eta) F deta
/// is evaluated as sum_i w_i F(eta_i) on exactly this node set, so field
/// equations and averages share one discretization.
class BroadeningModel {
 public:
  static BroadeningModel sharp_line(double eta0);
  static BroadeningModel discrete(std::vector<std::pair<double, double>> nodes);
  /// Gauss-Hermite nodes scaled by `width` about `center`; the weights of
  /// the normalized Gaussian density sum to 1.
  static BroadeningModel gaussian(double center, double width, int n_nodes);
  /// Uniform-in-arctan substitution nodes for the Lorentzian density,
  /// truncated to [center - cutoff, center + cutoff].
  static BroadeningModel lorentzian(double center, double width, int n_nodes,
                                    double cutoff);

  BroadeningKind kind() const { return kind_; }
  const std::vector<BroadeningNode>& nodes() const { return nodes_; }
  std::size_t size() const { return nodes_.size(); }
  double eta(std::size_t i) const { return nodes_[i].eta; }
  double weight(std::size_t i) const { return nodes_[i].weight; }

  Complex average(const std::function<Complex(double)>& integrand) const;
  double average_real(const std::function<double(double)>& integrand) const;

 private:
  BroadeningModel(BroadeningKind kind, std::vector<BroadeningNode> nodes)
      : kind_(kind), nodes_(std::move(nodes)) {}

  BroadeningKind kind_;
  std::vector<BroadeningNode> nodes_;
};

}  // namespace mbd
