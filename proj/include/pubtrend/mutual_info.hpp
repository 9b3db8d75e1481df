#pragma once

#include <span>
#include <string>
#include <vector>

#include <Eigen/Core>

namespace pubtrend {

// |U_i ∩ V_j| over two labelings of the same samples. Label values are
// arbitrary ints; rows/columns follow ascending label value.
struct ContingencyTable {
  Eigen::Matrix<long, Eigen::Dynamic, Eigen::Dynamic> counts;
  std::vector<long> row_sums;  // |U_i|
  std::vector<long> col_sums;  // |V_j|
  long n = 0;
};

// Throws InputError on length mismatch or empty input.
ContingencyTable contingency_table(std::span<const int> u, std::span<const int> v);

// Natural-log entropy of a labeling. Throws InputError on empty input.
double entropy(std::span<const int> labels);

double mutual_information(std::span<const int> u, std::span<const int> v);
double mutual_information(const ContingencyTable& table);

// Expected MI under the hypergeometric model with the table's marginals.
double expected_mutual_information(const ContingencyTable& table);

// MI / mean(H(U), H(V)). When both entropies are 0 the labelings are both a
// single cluster and the score is 1.
double normalized_mi(std::span<const int> u, std::span<const int> v);

// (MI - E[MI]) / (mean(H(U), H(V)) - E[MI]); a zero denominator gives 1 for
// identical partitions and 0 otherwise.
double adjusted_mi(std::span<const int> u, std::span<const int> v);

struct MIReport {
  double mi = 0;
  double nmi = 0;
  double ami = 0;
  double h_u = 0;
  double h_v = 0;
};

MIReport compare_labelings(std::span<const int> u, std::span<const int> v);

}  // namespace pubtrend
