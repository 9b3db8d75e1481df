#include "pubtrend/kmeans.hpp"

#include <sstream>

#include <fmt/format.h>

namespace pubtrend {

std::string serialize_kmeans(const KMeansModel<double>& model, std::span<const std::string> doc_ids) {
  if (doc_ids.size() != model.assignments.size()) throw InputError("doc_ids and assignments differ in length");
  std::string out = fmt::format("K\t{}\nd\t{}\ninertia\t{}\niterations\t{}\nseed\t{}\ncentroids\n",
                                model.k(), model.dim(), model.inertia, model.iterations_run, model.seed);
  for (Eigen::Index c = 0; c < model.centroids.rows(); ++c) {
    for (Eigen::Index j = 0; j < model.centroids.cols(); ++j) {
      out += fmt::format("{}{}", j ? " " : "", model.centroids(c, j));
    }
    out.push_back('\n');
  }
  out += "assignments\n";
  for (std::size_t i = 0; i < doc_ids.size(); ++i) out += fmt::format("{}\t{}\n", doc_ids[i], model.assignments[i]);
  return out;
}

StoredKMeans deserialize_kmeans(std::string_view text) {
  std::istringstream in{std::string(text)};
  StoredKMeans s;
  auto expect = [&](const char* key) {
    std::string k;
    if (!(in >> k) || k != key) throw InputError(std::string("k-means model: expected '") + key + "'");
  };
  Eigen::Index k = 0, d = 0;
  expect("K");
  in >> k;
  expect("d");
  in >> d;
  expect("inertia");
  in >> s.model.inertia;
  expect("iterations");
  in >> s.model.iterations_run;
  expect("seed");
  in >> s.model.seed;
  expect("centroids");
  if (!in || k < 1 || d < 1) throw InputError("k-means model: malformed header");
  s.model.centroids.resize(k, d);
  for (Eigen::Index c = 0; c < k; ++c)
    for (Eigen::Index j = 0; j < d; ++j)
      if (!(in >> s.model.centroids(c, j))) throw InputError("k-means model: truncated centroids");
  expect("assignments");
  std::string id;
  int cluster = 0;
  while (in >> id >> cluster) {
    if (cluster < 0 || cluster >= k) throw InputError("k-means model: cluster id out of range");
    s.doc_ids.push_back(id);
    s.model.assignments.push_back(cluster);
  }
  if (!in.eof()) throw InputError("k-means model: malformed assignment");
  return s;
}

std::string serialize_elbow(const ElbowReport<double>& report) {
  std::string out = "k\tinertia\n";
  for (std::size_t i = 0; i < report.k_values.size(); ++i) {
    out += fmt::format("{}\t{}\n", report.k_values[i], report.inertias[i]);
  }
  return out;
}

}  // namespace pubtrend
