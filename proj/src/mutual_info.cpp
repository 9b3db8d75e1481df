#include "pubtrend/mutual_info.hpp"

#include <algorithm>
#include <cmath>
#include <map>

#include "pubtrend/errors.hpp"

namespace pubtrend {
namespace {

std::vector<int> dense_labels(std::span<const int> labels, std::size_t& n_classes) {
  std::map<int, int> ids;
  for (const int l : labels) ids.emplace(l, 0);
  int next = 0;
  for (auto& [label, id] : ids) id = next++;
  std::vector<int> out;
  out.reserve(labels.size());
  for (const int l : labels) out.push_back(ids[l]);
  n_classes = ids.size();
  return out;
}

double entropy_of_counts(const std::vector<long>& counts, long n) {
  double h = 0.0;
  for (const long c : counts) {
    if (c == 0) continue;
    const double p = static_cast<double>(c) / static_cast<double>(n);
    h -= p * std::log(p);
  }
  return h;
}

// Identical partitions up to relabeling: each row and column has one nonzero cell.
bool same_partition(const ContingencyTable& t) {
  if (t.counts.rows() != t.counts.cols()) return false;
  for (Eigen::Index i = 0; i < t.counts.rows(); ++i) {
    if ((t.counts.row(i).array() != 0).count() != 1) return false;
  }
  for (Eigen::Index j = 0; j < t.counts.cols(); ++j) {
    if ((t.counts.col(j).array() != 0).count() != 1) return false;
  }
  return true;
}

}  // namespace

ContingencyTable contingency_table(std::span<const int> u, std::span<const int> v) {
  if (u.size() != v.size()) throw InputError("labelings differ in length");
  if (u.empty()) throw InputError("labelings are empty");
  std::size_t nu = 0, nv = 0;
  const auto du = dense_labels(u, nu);
  const auto dv = dense_labels(v, nv);
  ContingencyTable t;
  t.n = static_cast<long>(u.size());
  t.counts = Eigen::Matrix<long, Eigen::Dynamic, Eigen::Dynamic>::Zero(static_cast<Eigen::Index>(nu),
                                                                      static_cast<Eigen::Index>(nv));
  for (std::size_t s = 0; s < du.size(); ++s) ++t.counts(du[s], dv[s]);
  for (Eigen::Index i = 0; i < t.counts.rows(); ++i) t.row_sums.push_back(t.counts.row(i).sum());
  for (Eigen::Index j = 0; j < t.counts.cols(); ++j) t.col_sums.push_back(t.counts.col(j).sum());
  return t;
}

double entropy(std::span<const int> labels) {
  if (labels.empty()) throw InputError("labeling is empty");
  std::map<int, long> counts;
  for (const int l : labels) ++counts[l];
  std::vector<long> c;
  for (const auto& [label, n] : counts) c.push_back(n);
  return entropy_of_counts(c, static_cast<long>(labels.size()));
}

double mutual_information(const ContingencyTable& t) {
  const double n = static_cast<double>(t.n);
  double mi = 0.0;
  for (Eigen::Index i = 0; i < t.counts.rows(); ++i) {
    for (Eigen::Index j = 0; j < t.counts.cols(); ++j) {
      const long nij = t.counts(i, j);
      if (nij == 0) continue;
      const double a = static_cast<double>(t.row_sums[static_cast<std::size_t>(i)]);
      const double b = static_cast<double>(t.col_sums[static_cast<std::size_t>(j)]);
      mi += (static_cast<double>(nij) / n) * std::log(n * static_cast<double>(nij) / (a * b));
    }
  }
  // Rounding can leave a tiny negative value for independent labelings.
  return std::max(mi, 0.0);
}

double mutual_information(std::span<const int> u, std::span<const int> v) {
  return mutual_information(contingency_table(u, v));
}

double expected_mutual_information(const ContingencyTable& t) {
  const long n = t.n;
  const double nd = static_cast<double>(n);
  const double lg_n = std::lgamma(nd + 1.0);
  double emi = 0.0;
  for (const long a : t.row_sums) {
    for (const long b : t.col_sums) {
      const double base = std::lgamma(a + 1.0) + std::lgamma(b + 1.0) + std::lgamma(nd - a + 1.0) +
                          std::lgamma(nd - b + 1.0) - lg_n;
      const long lo = std::max(1L, a + b - n);
      const long hi = std::min(a, b);
      for (long nij = lo; nij <= hi; ++nij) {
        const double term = (static_cast<double>(nij) / nd) *
                            std::log(nd * static_cast<double>(nij) / (static_cast<double>(a) * static_cast<double>(b)));
        const double log_p = base - std::lgamma(nij + 1.0) - std::lgamma(static_cast<double>(a - nij) + 1.0) -
                             std::lgamma(static_cast<double>(b - nij) + 1.0) -
                             std::lgamma(static_cast<double>(n - a - b + nij) + 1.0);
        emi += term * std::exp(log_p);
      }
    }
  }
  return emi;
}

double normalized_mi(std::span<const int> u, std::span<const int> v) {
  return compare_labelings(u, v).nmi;
}

double adjusted_mi(std::span<const int> u, std::span<const int> v) {
  return compare_labelings(u, v).ami;
}

MIReport compare_labelings(std::span<const int> u, std::span<const int> v) {
  const ContingencyTable t = contingency_table(u, v);
  MIReport r;
  r.mi = mutual_information(t);
  r.h_u = entropy_of_counts(t.row_sums, t.n);
  r.h_v = entropy_of_counts(t.col_sums, t.n);
  const double mean_h = 0.5 * (r.h_u + r.h_v);
  const bool identical = same_partition(t);

  if (mean_h == 0.0) {
    if (!identical) throw UndefinedError("NMI undefined for zero-entropy labelings that differ");
    r.nmi = 1.0;
  } else {
    r.nmi = r.mi / mean_h;
  }

  const double emi = expected_mutual_information(t);
  const double denom = mean_h - emi;
  if (std::abs(denom) < 1e-15) {
    r.ami = identical ? 1.0 : 0.0;
  } else {
    r.ami = (r.mi - emi) / denom;
  }
  return r;
}

}  // namespace pubtrend
