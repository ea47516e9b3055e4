#pragma once

#include "gws/mesh.hpp"
#include "gws/taskspace.hpp"
#include "gws/types.hpp"

#include <optional>
#include <span>
#include <string>
#include <vector>

namespace gws {

struct MetricReport {
  std::string case_id;
  std::string mesh_name;
  int m = 0;
  double mu = 0.0;
  std::string model = "pcf";
  double delta_deg = 0.0;
  int K = 0;
  int d_oracle = 0;
  double rle_e2 = 0.0;  // relative length error, 1e-2 units
  double sp_rad = 0.0;
  double eps = 0.0;
  double eps_t = 0.0;
  double time_ms = 0.0;
  bool fc = false;
};

/// Mean relative length error (q-1)/q of the boundary samples against the
/// d_oracle discretized-cone LP ground truth. Zero-norm samples are skipped;
/// empty after skipping yields nullopt.
std::optional<double> rle(const BoundarySampleSet& samples,
                          std::span<const Contact> contacts, int d_oracle);

/// RLE of the classic d_base-cone discretized boundary (ray-boundary points
/// along random directions) against the d_oracle ground truth.
double baseline_rle(std::span<const Contact> contacts, int d_base, int d_oracle,
                    int n_dirs, std::uint64_t seed);

/// Expected minimum angle from uniform probe directions to the sample
/// directions.
double sparsity(const BoundarySampleSet& samples, int probes, std::uint64_t seed);

/// Min sample magnitude behind the force-closure filter; 0 when the sampled
/// set fails the simplex check.
double epsilon_from_samples(const BoundarySampleSet& samples, int fc_trials = 1000);

/// Min magnitude of samples whose direction lies in the TWS sector; 0 when
/// some in-sector probe direction has non-positive sampled support. When no
/// sample direction lands in the sector (tight sectors at small K) the min
/// sampled-hull support over the sector probes is returned instead; nullopt
/// only for an empty sample set.
std::optional<double> epsilon_t_from_samples(const BoundarySampleSet& samples,
                                             const TaskWrenchSpace& tws,
                                             int probes = 1024);

struct BenchCase {
  std::string case_id;
  const TriMesh* mesh = nullptr;
  std::string mesh_name;
  int m = 5;
  FrictionModel friction = FrictionModel::pcf(0.5);
  EstimatorConfig est;
  int d_oracle = 64;
  int rle_subsample = 100;  // LP calls per case
  int sp_probes = 1000;
  int fc_trials = 1000;
  bool require_fc = true;  // resample contacts until force closure
  int max_resample = 50;
  int time_repeats = 5;
};

/// Samples contacts on the mesh, runs estimator + oracle + metrics, reports
/// one row. Throws if force closure cannot be reached within max_resample.
/// When picked_contacts is non-null it receives the contacts the case settled
/// on, in the frame the oracle metrics used (CPN-normalized when enabled).
MetricReport run_bench_case(const BenchCase& bc,
                            std::vector<Contact>* picked_contacts = nullptr);

/// Contacts from area-weighted surface samples (inward normals).
std::vector<Contact> sample_contacts(const TriMesh& mesh, int m,
                                     const FrictionModel& friction,
                                     std::uint64_t seed);

std::string metric_csv_header();
std::string metric_csv_row(const MetricReport& r);

}  // namespace gws
