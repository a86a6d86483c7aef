// Copyright 2026 The xaiselect Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <random>

#include "xaiselect/explainers.h"

namespace xaiselect::explainers {
namespace {

using Index = Eigen::Index;

void CheckPrototypeCount(const data::Dataset& subset, std::size_t k, const char* method) {
  if (subset.n() == 0) throw InvalidInput(std::string(method) + ": empty subset");
  if (k == 0 || k > subset.n()) {
    throw InvalidInput(std::string(method) + ": k=" + std::to_string(k) + " must lie in [1, " +
                       std::to_string(subset.n()) + "]");
  }
}

// Nearest and second-nearest medoid distance for every point.
struct Assignments {
  std::vector<std::size_t> nearest;  // position in the medoid list
  Eigen::VectorXd d1;
  Eigen::VectorXd d2;
};

Assignments Assign(const Eigen::MatrixXd& dist, const std::vector<std::size_t>& medoids) {
  const Index n = dist.rows();
  Assignments a{std::vector<std::size_t>(static_cast<std::size_t>(n)), Eigen::VectorXd(n), Eigen::VectorXd(n)};
  for (Index i = 0; i < n; ++i) {
    double best = std::numeric_limits<double>::infinity();
    double second = std::numeric_limits<double>::infinity();
    std::size_t arg = 0;
    for (std::size_t m = 0; m < medoids.size(); ++m) {
      const double v = dist(i, static_cast<Index>(medoids[m]));
      if (v < best) {
        second = best;
        best = v;
        arg = m;
      } else if (v < second) {
        second = v;
      }
    }
    a.nearest[static_cast<std::size_t>(i)] = arg;
    a.d1[i] = best;
    a.d2[i] = second;
  }
  return a;
}

std::vector<std::size_t> BuildInit(const Eigen::MatrixXd& dist, std::size_t k) {
  const Index n = dist.rows();
  std::vector<std::size_t> medoids;
  Index first = 0;
  dist.colwise().sum().minCoeff(&first);
  medoids.push_back(static_cast<std::size_t>(first));
  Eigen::VectorXd nearest = dist.col(first);
  std::vector<bool> chosen(static_cast<std::size_t>(n), false);
  chosen[static_cast<std::size_t>(first)] = true;
  while (medoids.size() < k) {
    double best_gain = -1.0;
    Index best = -1;
    for (Index c = 0; c < n; ++c) {
      if (chosen[static_cast<std::size_t>(c)]) continue;
      const double gain = (nearest - dist.col(c)).cwiseMax(0.0).sum();
      if (gain > best_gain) {
        best_gain = gain;
        best = c;
      }
    }
    medoids.push_back(static_cast<std::size_t>(best));
    chosen[static_cast<std::size_t>(best)] = true;
    nearest = nearest.cwiseMin(dist.col(best));
  }
  return medoids;
}

std::vector<std::size_t> HeuristicInit(const Eigen::MatrixXd& dist, std::size_t k) {
  const Eigen::VectorXd totals = dist.colwise().sum().transpose();
  std::vector<std::size_t> order(static_cast<std::size_t>(dist.rows()));
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) { return totals[static_cast<Index>(a)] < totals[static_cast<Index>(b)]; });
  order.resize(k);
  return order;
}

std::vector<std::size_t> RandomInit(std::size_t n, std::size_t k, std::uint64_t seed) {
  std::vector<std::size_t> all(n);
  std::iota(all.begin(), all.end(), 0);
  std::mt19937_64 rng(seed);
  for (std::size_t i = 0; i < k; ++i) {
    std::uniform_int_distribution<std::size_t> pick(i, n - 1);
    std::swap(all[i], all[pick(rng)]);
  }
  all.resize(k);
  return all;
}

// Best-improvement swap until no swap lowers the cost.
void PamSwap(const Eigen::MatrixXd& dist, std::vector<std::size_t>* medoids, std::size_t max_iter,
             std::vector<double>* trace) {
  const Index n = dist.rows();
  std::vector<bool> is_medoid(static_cast<std::size_t>(n), false);
  for (std::size_t m : *medoids) is_medoid[m] = true;
  for (std::size_t iter = 0; iter < max_iter; ++iter) {
    const Assignments a = Assign(dist, *medoids);
    double best_delta = 0.0;
    std::size_t best_out = 0;
    Index best_in = -1;
    for (std::size_t m = 0; m < medoids->size(); ++m) {
      for (Index o = 0; o < n; ++o) {
        if (is_medoid[static_cast<std::size_t>(o)]) continue;
        double delta = 0.0;
        for (Index i = 0; i < n; ++i) {
          const double dio = dist(i, o);
          if (a.nearest[static_cast<std::size_t>(i)] == m) {
            delta += std::min(a.d2[i], dio) - a.d1[i];
          } else {
            delta += std::min(a.d1[i], dio) - a.d1[i];
          }
        }
        if (delta < best_delta - 1e-12) {
          best_delta = delta;
          best_out = m;
          best_in = o;
        }
      }
    }
    if (best_in < 0) break;
    is_medoid[(*medoids)[best_out]] = false;
    is_medoid[static_cast<std::size_t>(best_in)] = true;
    (*medoids)[best_out] = static_cast<std::size_t>(best_in);
    trace->push_back(MedoidCost(dist, *medoids));
  }
}

// Assign points, then move each medoid to its cluster's most central member.
void Alternate(const Eigen::MatrixXd& dist, std::vector<std::size_t>* medoids, std::size_t max_iter,
               std::vector<double>* trace) {
  const Index n = dist.rows();
  for (std::size_t iter = 0; iter < max_iter; ++iter) {
    const Assignments a = Assign(dist, *medoids);
    bool changed = false;
    for (std::size_t m = 0; m < medoids->size(); ++m) {
      std::vector<Index> members;
      for (Index i = 0; i < n; ++i) {
        if (a.nearest[static_cast<std::size_t>(i)] == m) members.push_back(i);
      }
      if (members.empty()) continue;
      double best = std::numeric_limits<double>::infinity();
      Index arg = static_cast<Index>((*medoids)[m]);
      for (Index c : members) {
        double total = 0.0;
        for (Index i : members) total += dist(i, c);
        if (total < best - 1e-12 || (std::abs(total - best) <= 1e-12 && c == static_cast<Index>((*medoids)[m]))) {
          best = total;
          arg = c;
        }
      }
      if (static_cast<std::size_t>(arg) != (*medoids)[m]) {
        (*medoids)[m] = static_cast<std::size_t>(arg);
        changed = true;
      }
    }
    trace->push_back(MedoidCost(dist, *medoids));
    if (!changed) break;
  }
}

Eigen::MatrixXd RbfKernel(const data::Dataset& subset, double gamma) {
  return (-gamma * PairwiseSquaredEuclidean(subset.observations)).array().exp().matrix();
}

}  // namespace

double MedoidCost(const Eigen::MatrixXd& distances, const std::vector<std::size_t>& medoids) {
  double total = 0.0;
  for (Index i = 0; i < distances.rows(); ++i) {
    double best = std::numeric_limits<double>::infinity();
    for (std::size_t m : medoids) best = std::min(best, distances(i, static_cast<Index>(m)));
    total += best;
  }
  return total;
}

PrototypeSet KMedoidsExplain(const data::Dataset& subset, const KMedoidsParams& params, std::uint64_t seed) {
  CheckPrototypeCount(subset, params.k, "kmedoids");
  const Eigen::MatrixXd dist = PairwiseDistances(subset.observations, params.metric);
  std::vector<std::size_t> medoids;
  if (params.init == "build") {
    medoids = BuildInit(dist, params.k);
  } else if (params.init == "heuristic") {
    medoids = HeuristicInit(dist, params.k);
  } else if (params.init == "random") {
    medoids = RandomInit(subset.n(), params.k, seed);
  } else {
    throw InvalidInput("kmedoids: unknown init '" + params.init + "'");
  }
  PrototypeSet out;
  out.objective_trace.push_back(MedoidCost(dist, medoids));
  if (params.algorithm == "pam") {
    PamSwap(dist, &medoids, params.max_iter, &out.objective_trace);
  } else if (params.algorithm == "alternate") {
    Alternate(dist, &medoids, params.max_iter, &out.objective_trace);
  } else {
    throw InvalidInput("kmedoids: unknown algorithm '" + params.algorithm + "'");
  }
  out.indices = std::move(medoids);
  return out;
}

double SquaredMmd(const data::Dataset& subset, const std::vector<std::size_t>& prototypes, double gamma) {
  const Eigen::MatrixXd k = RbfKernel(subset, gamma);
  const double n = static_cast<double>(k.rows());
  const double m = static_cast<double>(prototypes.size());
  double cross = 0.0;
  double within = 0.0;
  for (std::size_t a : prototypes) {
    cross += k.col(static_cast<Index>(a)).sum();
    for (std::size_t b : prototypes) within += k(static_cast<Index>(a), static_cast<Index>(b));
  }
  return k.sum() / (n * n) - 2.0 * cross / (n * m) + within / (m * m);
}

PrototypeSet MmdCriticExplain(const data::Dataset& subset, const MmdCriticParams& params) {
  CheckPrototypeCount(subset, params.k, "mmd_critic");
  if (!(params.gamma > 0)) throw InvalidInput("mmd_critic: gamma must be positive");
  const Eigen::MatrixXd k = RbfKernel(subset, params.gamma);
  const Index n = k.rows();
  const double nd = static_cast<double>(n);
  const Eigen::VectorXd col_sums = k.colwise().sum().transpose();

  PrototypeSet out;
  std::vector<bool> chosen(static_cast<std::size_t>(n), false);
  double cross = 0.0;   // sum over data i, prototype j of k(i, j)
  double within = 0.0;  // sum over prototype pairs (ordered) of k(a, b)
  Eigen::VectorXd to_chosen = Eigen::VectorXd::Zero(n);  // sum_j in S k(c, j)
  while (out.indices.size() < params.k) {
    const double m = static_cast<double>(out.indices.size() + 1);
    double best = -std::numeric_limits<double>::infinity();
    Index arg = -1;
    for (Index c = 0; c < n; ++c) {
      if (chosen[static_cast<std::size_t>(c)]) continue;
      // Maximizing this is minimizing MMD^2 of S + {c}.
      const double gain =
          2.0 * (cross + col_sums[c]) / (nd * m) - (within + 2.0 * to_chosen[c] + k(c, c)) / (m * m);
      if (gain > best) {
        best = gain;
        arg = c;
      }
    }
    chosen[static_cast<std::size_t>(arg)] = true;
    cross += col_sums[arg];
    within += 2.0 * to_chosen[arg] + k(arg, arg);
    to_chosen += k.col(arg);
    out.indices.push_back(static_cast<std::size_t>(arg));
    out.objective_trace.push_back(best);
  }
  return out;
}

Eigen::MatrixXd ProtodashKernel(const data::Dataset& subset, const std::string& kernel, double sigma) {
  if (kernel == "gaussian") {
    if (!(sigma > 0)) throw InvalidInput("protodash: sigma must be positive");
    return RbfKernel(subset, 1.0 / (2.0 * sigma * sigma));
  }
  if (kernel == "linear") {
    const auto& obs = subset.observations;
    if (obs.is_sparse()) return Eigen::MatrixXd(obs.sparse() * data::SparseMatrix(obs.sparse().transpose()));
    return obs.dense() * obs.dense().transpose();
  }
  throw InvalidInput("protodash: unknown kernel '" + kernel + "'");
}

double ProtodashObjective(const Eigen::MatrixXd& kernel, const std::vector<std::size_t>& prototypes,
                          const std::vector<double>& weights) {
  const Eigen::VectorXd mu = kernel.colwise().mean().transpose();
  double value = 0.0;
  for (std::size_t a = 0; a < prototypes.size(); ++a) {
    const auto ia = static_cast<Index>(prototypes[a]);
    value += weights[a] * mu[ia];
    for (std::size_t b = 0; b < prototypes.size(); ++b) {
      value -= 0.5 * weights[a] * weights[b] * kernel(ia, static_cast<Index>(prototypes[b]));
    }
  }
  return value;
}

PrototypeSet ProtodashExplain(const data::Dataset& subset, const ProtodashParams& params) {
  CheckPrototypeCount(subset, params.k, "protodash");
  const Eigen::MatrixXd kernel = ProtodashKernel(subset, params.kernel, params.sigma);
  const Index n = kernel.rows();
  const Eigen::VectorXd mu = kernel.colwise().mean().transpose();

  PrototypeSet out;
  std::vector<bool> chosen(static_cast<std::size_t>(n), false);
  Eigen::VectorXd w;  // weights of the chosen prototypes, in selection order
  while (out.indices.size() < params.k) {
    // Gradient of the objective with respect to each candidate's weight at 0.
    Eigen::VectorXd kw = Eigen::VectorXd::Zero(n);
    for (std::size_t s = 0; s < out.indices.size(); ++s) {
      kw += w[static_cast<Index>(s)] * kernel.col(static_cast<Index>(out.indices[s]));
    }
    double best = 0.0;
    Index arg = -1;
    for (Index c = 0; c < n; ++c) {
      if (chosen[static_cast<std::size_t>(c)]) continue;
      const double grad = mu[c] - kw[c];
      if (grad > best) {
        best = grad;
        arg = c;
      }
    }
    if (arg < 0) {
      out.truncated = true;
      break;
    }
    chosen[static_cast<std::size_t>(arg)] = true;
    out.indices.push_back(static_cast<std::size_t>(arg));

    const auto m = static_cast<Index>(out.indices.size());
    Eigen::MatrixXd ks(m, m);
    Eigen::VectorXd mus(m);
    for (Index a = 0; a < m; ++a) {
      mus[a] = mu[static_cast<Index>(out.indices[static_cast<std::size_t>(a)])];
      for (Index b = 0; b < m; ++b) {
        ks(a, b) = kernel(static_cast<Index>(out.indices[static_cast<std::size_t>(a)]),
                          static_cast<Index>(out.indices[static_cast<std::size_t>(b)]));
      }
    }
    w.conservativeResize(m);
    w[m - 1] = 0.0;
    const double lipschitz = Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd>(ks, Eigen::EigenvaluesOnly).eigenvalues().cwiseAbs().maxCoeff();
    const double step = lipschitz > 0 ? 1.0 / lipschitz : 1.0;
    for (std::size_t it = 0; it < params.weight_iterations; ++it) {
      w = (w + step * (mus - ks * w)).cwiseMax(0.0);
    }
    std::vector<double> wv(w.data(), w.data() + w.size());
    out.objective_trace.push_back(ProtodashObjective(kernel, out.indices, wv));
  }
  out.weights.assign(w.data(), w.data() + w.size());
  return out;
}

}  // namespace xaiselect::explainers
