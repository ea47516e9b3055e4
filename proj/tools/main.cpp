// Command-line surface: estimate, oracle, metrics, synth, bench, gradcheck,
// assets. JSON configs in, JSON/CSV/PLY artifacts out. Angles are degrees at
// this boundary and radians inside the library.
#include "gws/contacts.hpp"
#include "gws/estimator.hpp"
#include "gws/gradients.hpp"
#include "gws/mesh.hpp"
#include "gws/metrics.hpp"
#include "gws/oracle.hpp"
#include "gws/rig.hpp"
#include "gws/sampling.hpp"
#include "gws/synthesis.hpp"
#include "gws/taskspace.hpp"

#include "CLI11.hpp"
#include "json.hpp"

#include <omp.h>

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

using nlohmann::json;
using namespace gws;

namespace {

constexpr int kSchemaVersion = 1;

/// Config/schema problem: exit code 2, message names the offending field.
struct ConfigError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Numerical breakdown (LP failure, non-finite energy, ...): exit code 3.
struct NumericalError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::uint64_t fnv1a64(const std::string& s) {
  std::uint64_t h = 1469598103934665603ull;
  for (unsigned char c : s) {
    h ^= c;
    h *= 1099511628211ull;
  }
  return h;
}

std::string hex64(std::uint64_t v) {
  char buf[17];
  std::snprintf(buf, sizeof(buf), "%016llx", static_cast<unsigned long long>(v));
  return buf;
}

void atomic_write(const std::string& path, const std::string& content) {
  namespace fs = std::filesystem;
  const fs::path target(path);
  if (target.has_parent_path()) fs::create_directories(target.parent_path());
  const fs::path tmp = target.string() + ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw ConfigError("cannot open output path: " + path);
    out << content;
  }
  fs::rename(tmp, target);
}

json load_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot read file: " + path);
  try {
    return json::parse(in);
  } catch (const json::parse_error& e) {
    throw ConfigError(path + ": " + e.what());
  }
}

void apply_worker_env() {
  if (const char* env = std::getenv("GWS_WORKERS")) {
    const int n = std::atoi(env);
    if (n > 0) omp_set_num_threads(n);
  }
}

// ---------------------------------------------------------------------------
// Config schema

struct CliOverrides {
  std::optional<int> K;
  std::optional<double> delta_deg;
  std::optional<std::uint64_t> seed;
  std::optional<std::string> out;
};

struct TaskConfig {
  std::uint64_t seed = 0;
  FrictionModel friction = FrictionModel::pcf(0.5);
  EstimatorConfig estimator;
  std::optional<TaskWrenchSpace> tws;
  std::optional<std::string> mesh_path;
  std::optional<std::vector<Contact>> contacts;  // explicit, object frame
  struct RigBlock {
    std::string path;
    Vec3 root_translation = Vec3::Zero();
    Eigen::Quaterniond root_rotation = Eigen::Quaterniond::Identity();
    double perturb_translation = 0.02;
    double perturb_rotation = 0.2;
  };
  std::optional<RigBlock> rig;
  SynthesisConfig optimizer;
  std::string name = "case";
  std::string out_path;
  json raw;
};

double require_number(const json& j, const std::string& path) {
  if (!j.is_number()) throw ConfigError(path + ": expected a number");
  return j.get<double>();
}

Vec3 parse_vec3(const json& j, const std::string& path) {
  if (!j.is_array() || j.size() != 3) throw ConfigError(path + ": expected 3 reals");
  return Vec3(require_number(j[0], path), require_number(j[1], path),
              require_number(j[2], path));
}

Vec6 parse_vec6(const json& j, const std::string& path) {
  if (!j.is_array() || j.size() != 6) throw ConfigError(path + ": expected 6 reals");
  Vec6 v;
  for (int i = 0; i < 6; ++i) v[i] = require_number(j[static_cast<std::size_t>(i)], path);
  return v;
}

TaskConfig parse_config(const json& j, const CliOverrides& ov) {
  if (!j.is_object()) throw ConfigError("config: expected a JSON object");
  TaskConfig cfg;
  cfg.raw = j;
  if (j.contains("name")) cfg.name = j.at("name").get<std::string>();
  if (j.contains("seed")) cfg.seed = j.at("seed").get<std::uint64_t>();

  const std::string model = j.value("contact_model", "pcf");
  if (model == "pcf") {
    cfg.friction = FrictionModel::pcf(j.value("mu", 0.5));
  } else if (model == "sfc") {
    if (!j.contains("mu1") || !j.contains("mu2"))
      throw ConfigError("contact_model sfc requires mu1 and mu2");
    cfg.friction = FrictionModel::sfc(j.at("mu1").get<double>(), j.at("mu2").get<double>());
  } else {
    throw ConfigError("contact_model: expected \"pcf\" or \"sfc\", got \"" + model + "\"");
  }

  if (j.contains("estimator")) {
    const json& e = j.at("estimator");
    cfg.estimator.K = e.value("K", cfg.estimator.K);
    if (e.contains("delta_deg"))
      cfg.estimator.delta = e.at("delta_deg").get<double>() * kPi / 180.0;
    cfg.estimator.cpn = e.value("cpn", cfg.estimator.cpn);
    if (cfg.estimator.K <= 0) throw ConfigError("estimator.K: must be positive");
    if (cfg.estimator.delta < 0.0) throw ConfigError("estimator.delta_deg: must be >= 0");
  }

  if (j.contains("tws")) {
    const json& t = j.at("tws");
    TaskWrenchSpace tws;
    tws.w_t = parse_vec6(t.at("w_t"), "tws.w_t");
    const double n = tws.w_t.norm();
    if (n < 1e-12) throw ConfigError("tws.w_t: zero vector is not a task direction");
    tws.w_t /= n;
    const double gd = t.value("gamma_deg", 180.0);
    if (gd <= 0.0 || gd > 180.0) throw ConfigError("tws.gamma_deg: expected (0, 180]");
    tws.gamma = gd * kPi / 180.0;
    cfg.tws = tws;
  }

  if (j.contains("mesh")) cfg.mesh_path = j.at("mesh").get<std::string>();

  if (j.contains("contacts") && j.contains("rig"))
    throw ConfigError("config: exactly one of contacts/rig may be present");
  if (j.contains("contacts")) {
    std::vector<Contact> cs;
    const json& arr = j.at("contacts");
    if (!arr.is_array() || arr.empty()) throw ConfigError("contacts: expected non-empty array");
    for (std::size_t i = 0; i < arr.size(); ++i) {
      const std::string path = "contacts[" + std::to_string(i) + "]";
      const Vec3 p = parse_vec3(arr[i].at("p"), path + ".p");
      Vec3 n = parse_vec3(arr[i].at("n"), path + ".n");
      if (n.norm() < 1e-12) throw ConfigError(path + ".n: zero normal");
      cs.push_back(make_contact(p, n.normalized(), cfg.friction));
    }
    cfg.contacts = std::move(cs);
  }
  if (j.contains("rig")) {
    const json& r = j.at("rig");
    TaskConfig::RigBlock rb;
    rb.path = r.at("path").get<std::string>();
    if (r.contains("root_translation"))
      rb.root_translation = parse_vec3(r.at("root_translation"), "rig.root_translation");
    if (r.contains("root_rotation_xyzw")) {
      const json& q = r.at("root_rotation_xyzw");
      if (!q.is_array() || q.size() != 4)
        throw ConfigError("rig.root_rotation_xyzw: expected 4 reals");
      rb.root_rotation = Eigen::Quaterniond(q[3].get<double>(), q[0].get<double>(),
                                            q[1].get<double>(), q[2].get<double>())
                             .normalized();
    }
    if (r.contains("perturbation")) {
      rb.perturb_translation = r.at("perturbation").value("translation", rb.perturb_translation);
      rb.perturb_rotation = r.at("perturbation").value("rotation", rb.perturb_rotation);
    }
    cfg.rig = rb;
  }

  if (j.contains("optimizer")) {
    const json& o = j.at("optimizer");
    cfg.optimizer.iterations = o.value("iterations", cfg.optimizer.iterations);
    cfg.optimizer.initial_step = o.value("initial_step", cfg.optimizer.initial_step);
    cfg.optimizer.shrink = o.value("shrink", cfg.optimizer.shrink);
    cfg.optimizer.max_backtracks = o.value("max_backtracks", cfg.optimizer.max_backtracks);
    if (o.contains("weights")) {
      const json& w = o.at("weights");
      cfg.optimizer.w_task = w.value("task", cfg.optimizer.w_task);
      cfg.optimizer.w_dist = w.value("dist", cfg.optimizer.w_dist);
      cfg.optimizer.w_pen = w.value("pen", cfg.optimizer.w_pen);
      cfg.optimizer.w_selfpen = w.value("selfpen", cfg.optimizer.w_selfpen);
    }
    if (cfg.optimizer.iterations <= 0) throw ConfigError("optimizer.iterations: must be positive");
  }

  if (j.contains("out")) cfg.out_path = j.at("out").get<std::string>();

  if (ov.K) cfg.estimator.K = *ov.K;
  if (ov.delta_deg) cfg.estimator.delta = *ov.delta_deg * kPi / 180.0;
  if (ov.seed) cfg.seed = *ov.seed;
  if (ov.out) cfg.out_path = *ov.out;
  cfg.estimator.seed = cfg.seed;
  cfg.optimizer.seed = cfg.seed;
  cfg.optimizer.friction = cfg.friction;
  cfg.optimizer.estimator.cpn = cfg.estimator.cpn;
  return cfg;
}

json meta_block(const TaskConfig& cfg) {
  json meta;
  meta["schema_version"] = kSchemaVersion;
  meta["seed"] = cfg.seed;
  meta["config_hash"] = hex64(fnv1a64(cfg.raw.dump()));
  return meta;
}

std::vector<Contact> resolve_contacts(const TaskConfig& cfg) {
  if (cfg.contacts) return *cfg.contacts;
  if (cfg.rig) {
    if (!cfg.mesh_path) throw ConfigError("mesh: required when contacts come from a rig");
    const RigSpec spec = RigSpec::from_json_file(cfg.rig->path);
    RigState state = make_initial_state(spec);
    state.root_translation = cfg.rig->root_translation;
    state.root_rotation = cfg.rig->root_rotation;
    const RigPose pose = forward_kinematics(spec, state);
    const TriMesh mesh = TriMesh::load_obj(*cfg.mesh_path);
    return contact_projection(mesh, pose.contact_points, cfg.friction);
  }
  throw ConfigError("config: one of contacts/rig is required");
}

json samples_to_json(const BoundarySampleSet& out) {
  json u = json::array();
  json w = json::array();
  for (const auto& s : out.samples) {
    json ju = json::array(), jw = json::array();
    for (int i = 0; i < 6; ++i) {
      ju.push_back(s.u[i]);
      jw.push_back(s.w[i]);
    }
    u.push_back(std::move(ju));
    w.push_back(std::move(jw));
  }
  json j;
  j["u"] = std::move(u);
  j["w"] = std::move(w);
  j["cpn"] = {{"applied", out.cpn_applied},
              {"center", {out.cpn_center[0], out.cpn_center[1], out.cpn_center[2]}},
              {"scale", out.cpn_scale},
              {"degenerate", out.cpn_degenerate}};
  return j;
}

BoundarySampleSet samples_from_json(const json& j) {
  BoundarySampleSet out;
  const json& u = j.at("u");
  const json& w = j.at("w");
  if (u.size() != w.size()) throw ConfigError("boundary: u/w length mismatch");
  for (std::size_t k = 0; k < u.size(); ++k) {
    WrenchSample s;
    s.u = parse_vec6(u[k], "boundary.u");
    s.w = parse_vec6(w[k], "boundary.w");
    out.samples.push_back(s);
  }
  if (j.contains("cpn")) {
    const json& c = j.at("cpn");
    out.cpn_applied = c.value("applied", false);
    out.cpn_scale = c.value("scale", 1.0);
    if (c.contains("center")) out.cpn_center = parse_vec3(c.at("center"), "boundary.cpn.center");
  }
  return out;
}

void emit(const std::string& out_path, const std::string& content) {
  if (out_path.empty()) {
    std::fwrite(content.data(), 1, content.size(), stdout);
    if (!content.empty() && content.back() != '\n') std::fputc('\n', stdout);
  } else {
    atomic_write(out_path, content);
  }
}

// ---------------------------------------------------------------------------
// Subcommands

int cmd_estimate(const TaskConfig& cfg) {
  const auto contacts = resolve_contacts(cfg);
  const auto out = estimate_boundary(contacts, cfg.estimator);
  json j = samples_to_json(out);
  j["meta"] = meta_block(cfg);
  j["eps"] = epsilon_from_samples(out);
  if (cfg.tws) {
    const auto et = epsilon_t_from_samples(out, *cfg.tws);
    if (et) j["eps_t"] = *et;
  }
  emit(cfg.out_path, j.dump(2));
  return 0;
}

int cmd_oracle(const TaskConfig& cfg, const std::string& in_path, int d) {
  const auto contacts = resolve_contacts(cfg);
  const auto boundary = samples_from_json(load_json_file(in_path));
  // Compare against the same normalized frame the estimator sampled in.
  std::vector<Contact> oracleContacts = contacts;
  if (boundary.cpn_applied) oracleContacts = normalize_contacts(contacts).contacts;
  json qs = json::array();
  double qmin = std::numeric_limits<double>::infinity();
  double qmax = 0.0, qsum = 0.0;
  int counted = 0;
  for (const auto& s : boundary.samples) {
    if (s.w.norm() < 1e-9) {
      qs.push_back(nullptr);
      continue;
    }
    const auto res = boundary_ray(s.w, oracleContacts, d);
    if (res.status == LPStatus::Unbounded)
      throw NumericalError("oracle: unbounded LP for a boundary sample");
    qs.push_back(res.q);
    qmin = std::min(qmin, res.q);
    qmax = std::max(qmax, res.q);
    qsum += res.q;
    ++counted;
  }
  if (counted == 0) throw NumericalError("oracle: no nonzero boundary samples");
  json j;
  j["meta"] = meta_block(cfg);
  j["d"] = d;
  j["q"] = std::move(qs);
  j["mean_q"] = qsum / counted;
  j["min_q"] = qmin;
  j["max_q"] = qmax;
  j["eps_oracle"] = epsilon_oracle(oracleContacts, d, 20000, cfg.seed ^ 0xa11ce);
  emit(cfg.out_path, j.dump(2));
  return 0;
}

int cmd_metrics(const TaskConfig& cfg, const std::string& in_path, int d) {
  const auto boundary = samples_from_json(load_json_file(in_path));
  MetricReport r;
  r.case_id = cfg.name;
  r.mesh_name = cfg.mesh_path ? std::filesystem::path(*cfg.mesh_path).stem().string() : "-";
  r.m = cfg.contacts ? static_cast<int>(cfg.contacts->size()) : 0;
  r.mu = cfg.friction.mu;
  r.model = cfg.friction.kind == ContactModel::PCF ? "pcf" : "sfc";
  r.delta_deg = cfg.estimator.delta * 180.0 / kPi;
  r.K = static_cast<int>(boundary.samples.size());
  r.d_oracle = d;
  if (cfg.contacts) {
    std::vector<Contact> oracleContacts = *cfg.contacts;
    if (boundary.cpn_applied) oracleContacts = normalize_contacts(*cfg.contacts).contacts;
    const auto e = rle(boundary, oracleContacts, d);
    if (e) r.rle_e2 = *e * 1e2;
  }
  r.sp_rad = sparsity(boundary, 1000, cfg.seed ^ 0x5a);
  r.eps = epsilon_from_samples(boundary);
  r.fc = r.eps > 0.0;
  if (cfg.tws) {
    const auto et = epsilon_t_from_samples(boundary, *cfg.tws);
    if (et) r.eps_t = *et;
  }
  emit(cfg.out_path, metric_csv_header() + "\n" + metric_csv_row(r) + "\n");
  return 0;
}

std::string contacts_to_ply(const std::vector<Contact>& cs) {
  std::ostringstream os;
  os.precision(17);
  os << "ply\nformat ascii 1.0\nelement vertex " << cs.size()
     << "\nproperty double x\nproperty double y\nproperty double z\n"
        "property double nx\nproperty double ny\nproperty double nz\nend_header\n";
  for (const auto& c : cs)
    os << c.p[0] << " " << c.p[1] << " " << c.p[2] << " " << c.n[0] << " " << c.n[1]
       << " " << c.n[2] << "\n";
  return os.str();
}

int cmd_synth(const TaskConfig& cfg, int batch, const std::string& ply_path) {
  if (!cfg.rig) throw ConfigError("synth: config requires a rig block");
  if (!cfg.mesh_path) throw ConfigError("synth: config requires a mesh");
  if (batch < 1) throw ConfigError("--batch: must be >= 1");
  const RigSpec spec = RigSpec::from_json_file(cfg.rig->path);
  const TriMesh mesh = TriMesh::load_obj(*cfg.mesh_path);
  const TaskWrenchSpace tws = cfg.tws.value_or(TaskWrenchSpace{});

  std::vector<SynthesisResult> results(static_cast<std::size_t>(batch));
  std::vector<std::string> errors(static_cast<std::size_t>(batch));
#pragma omp parallel for schedule(dynamic)
  for (int b = 0; b < batch; ++b) {
    SynthesisConfig sc = cfg.optimizer;
    sc.seed = cfg.seed + static_cast<std::uint64_t>(b);
    sc.estimator.seed = sc.seed;
    sc.friction = cfg.friction;
    sc.perturb_translation = cfg.rig->perturb_translation;
    sc.perturb_rotation = cfg.rig->perturb_rotation;
    try {
      const RigState init =
          make_perturbed(spec, cfg.rig->root_translation, cfg.rig->root_rotation, sc);
      results[static_cast<std::size_t>(b)] = optimize(spec, mesh, tws, sc, init);
    } catch (const std::exception& e) {
      errors[static_cast<std::size_t>(b)] = e.what();
    }
  }
  for (const auto& e : errors)
    if (!e.empty()) throw NumericalError("synth: " + e);

  json arr = json::array();
  int best = 0;
  for (int b = 0; b < batch; ++b) {
    const auto& r = results[static_cast<std::size_t>(b)];
    if (r.final_energy.total < results[static_cast<std::size_t>(best)].final_energy.total)
      best = b;
    json jr;
    jr["seed"] = cfg.seed + static_cast<std::uint64_t>(b);
    jr["state"] = {{"root_translation",
                    {r.state.root_translation[0], r.state.root_translation[1],
                     r.state.root_translation[2]}},
                   {"root_rotation_xyzw",
                    {r.state.root_rotation.x(), r.state.root_rotation.y(),
                     r.state.root_rotation.z(), r.state.root_rotation.w()}},
                   {"joints", std::vector<double>(r.state.joints.begin(), r.state.joints.end())}};
    json jc = json::array();
    for (const auto& c : r.contacts)
      jc.push_back({{"p", {c.p[0], c.p[1], c.p[2]}}, {"n", {c.n[0], c.n[1], c.n[2]}}});
    jr["contacts"] = std::move(jc);
    jr["eps_t"] = r.eps_t;
    jr["max_penetration"] = r.max_penetration;
    jr["early_stop"] = r.early_stop;
    jr["energy"] = {{"task", r.final_energy.task},
                    {"dist", r.final_energy.dist},
                    {"pen", r.final_energy.pen},
                    {"selfpen", r.final_energy.selfpen},
                    {"total", r.final_energy.total}};
    jr["trace"] = r.trace;
    arr.push_back(std::move(jr));
  }
  json j;
  j["meta"] = meta_block(cfg);
  j["results"] = std::move(arr);
  j["best_index"] = best;
  emit(cfg.out_path, j.dump(2));
  if (!ply_path.empty())
    atomic_write(ply_path, contacts_to_ply(results[static_cast<std::size_t>(best)].contacts));
  return 0;
}

int cmd_bench(const TaskConfig& cfg, const std::string& suite, bool timing) {
  const TriMesh sphere = make_icosphere(1.0, 3);
  const TriMesh box = make_box(Vec3(1.2, 0.9, 0.7));
  const TriMesh cyl = make_cylinder(0.5, 1.2, 48);
  struct Named {
    const TriMesh* mesh;
    const char* name;
  };
  const Named meshes[3] = {{&sphere, "sphere"}, {&box, "box"}, {&cyl, "cylinder"}};

  std::vector<BenchCase> cases;
  auto base_case = [&](int idx, const std::string& id) {
    BenchCase bc;
    bc.case_id = id;
    bc.mesh = meshes[idx % 3].mesh;
    bc.mesh_name = meshes[idx % 3].name;
    bc.est = cfg.estimator;
    bc.friction = cfg.friction;
    bc.time_repeats = timing ? 3 : 1;
    return bc;
  };
  if (suite == "tableI") {
    const double mus[4] = {0.2, 0.3, 0.5, 1.0};
    int idx = 0;
    for (double mu : mus)
      for (int rep = 0; rep < 3; ++rep) {
        BenchCase bc = base_case(idx, "t1_mu" + std::to_string(mu).substr(0, 3) + "_r" +
                                          std::to_string(rep));
        bc.m = 5;
        bc.friction = FrictionModel::pcf(mu);
        bc.est.delta = 15.0 * kPi / 180.0;
        bc.est.seed = cfg.seed + static_cast<std::uint64_t>(idx);
        cases.push_back(bc);
        ++idx;
      }
  } else if (suite == "tableII") {
    const double deltas[4] = {0.0, 15.0, 30.0, 45.0};
    int idx = 0;
    for (double dd : deltas) {
      BenchCase bc = base_case(idx, "t2_delta" + std::to_string(static_cast<int>(dd)));
      bc.m = 5;
      bc.est.delta = dd * kPi / 180.0;
      bc.est.seed = cfg.seed + static_cast<std::uint64_t>(idx);
      cases.push_back(bc);
      ++idx;
    }
  } else {
    throw ConfigError("--suite: expected tableI or tableII, got \"" + suite + "\"");
  }

  std::ostringstream os;
  os << metric_csv_header() << "\n";
  for (const auto& bc : cases) {
    MetricReport r = run_bench_case(bc);
    if (!timing) r.time_ms = 0.0;  // keep the CSV byte-stable by default
    os << metric_csv_row(r) << "\n";
  }
  emit(cfg.out_path, os.str());
  return 0;
}

int cmd_gradcheck(const TaskConfig& cfg, int n_configs, double threshold) {
  // Random m-contact configurations on the unit sphere; analytic task-energy
  // gradient vs central finite differences of the energy value.
  const int m = cfg.contacts ? static_cast<int>(cfg.contacts->size()) : 4;
  EstimatorConfig est = cfg.estimator;
  est.K = std::min(est.K, 64);  // FD cost is 12 m evaluations per config
  TaskWrenchSpace tws = cfg.tws.value_or(TaskWrenchSpace{});
  const double h = 1e-5;

  int pass = 0;
  double maxRel = 0.0;
  int evaluated = 0;
#pragma omp parallel for schedule(dynamic) reduction(+ : pass, evaluated) \
    reduction(max : maxRel)
  for (int rep = 0; rep < n_configs; ++rep) {
    std::vector<Contact> cs;
    for (int i = 0; i < m; ++i) {
      const Vec3 n = unit_direction3(cfg.seed + 7 * static_cast<std::uint64_t>(rep),
                                     static_cast<std::uint64_t>(i));
      cs.push_back(make_contact(n, (-n).eval(), cfg.friction));
    }
    EstimatorConfig ec = est;
    ec.seed = cfg.seed + 1000 + static_cast<std::uint64_t>(rep);
    const auto res = task_energy_with_grad(cs, tws, ec);
    double worst = 0.0;
    bool ok = true;
    for (int i = 0; i < m && ok; ++i) {
      for (int axis = 0; axis < 6; ++axis) {
        auto perturbed = [&](double sign) {
          std::vector<Contact> mod = cs;
          if (axis < 3) {
            Vec3 p = mod[static_cast<std::size_t>(i)].p;
            p[axis] += sign * h;
            mod[static_cast<std::size_t>(i)] =
                make_contact(p, mod[static_cast<std::size_t>(i)].n, cfg.friction);
          } else {
            Vec3 nn = mod[static_cast<std::size_t>(i)].n;
            nn[axis - 3] += sign * h;
            mod[static_cast<std::size_t>(i)] =
                make_contact(mod[static_cast<std::size_t>(i)].p, nn.normalized(), cfg.friction);
          }
          return task_energy_with_grad(mod, tws, ec).report.value;
        };
        const double fd = (perturbed(1.0) - perturbed(-1.0)) / (2 * h);
        const double an = axis < 3 ? res.grads[static_cast<std::size_t>(i)].dp[axis]
                                   : res.grads[static_cast<std::size_t>(i)].dn[axis - 3];
        const double scale = std::max({std::abs(fd), std::abs(an), 1e-6});
        worst = std::max(worst, std::abs(fd - an) / scale);
      }
    }
    maxRel = std::max(maxRel, worst);
    if (worst <= threshold) ++pass;
    ++evaluated;
  }

  const double frac = static_cast<double>(pass) / std::max(1, evaluated);
  json j;
  j["meta"] = meta_block(cfg);
  j["configs"] = evaluated;
  j["threshold"] = threshold;
  j["pass_fraction"] = frac;
  j["max_rel_err"] = maxRel;
  j["pass"] = frac >= 0.95;
  emit(cfg.out_path, j.dump(2));
  if (frac < 0.95) throw NumericalError("gradcheck: pass fraction below 0.95");
  return 0;
}

int cmd_assets(const std::string& dir) {
  namespace fs = std::filesystem;
  fs::create_directories(fs::path(dir) / "meshes");
  fs::create_directories(fs::path(dir) / "rigs");
  fs::create_directories(fs::path(dir) / "tasks");

  make_icosphere(0.05, 3).save_obj(dir + "/meshes/sphere_r50mm.obj");
  make_cylinder(0.03, 0.08, 48).save_obj(dir + "/meshes/cylinder_r30mm.obj");
  make_box(Vec3(0.08, 0.08, 0.08)).save_obj(dir + "/meshes/box_80mm.obj");

  atomic_write(dir + "/rigs/pinch.json", make_pinch_rig().to_json_text());
  atomic_write(dir + "/rigs/tripod.json", make_tripod_rig().to_json_text());
  atomic_write(dir + "/rigs/fan.json", make_fan_rig().to_json_text());

  auto task = [&](const std::string& name, const std::string& mesh,
                  const std::string& rig, std::initializer_list<double> wt,
                  double gamma_deg, const Vec3& root) {
    json j;
    j["name"] = name;
    j["seed"] = 1;
    j["contact_model"] = "pcf";
    j["mu"] = 0.5;
    j["estimator"] = {{"K", 100}, {"delta_deg", 15.0}, {"cpn", true}};
    j["tws"] = {{"w_t", std::vector<double>(wt)}, {"gamma_deg", gamma_deg}};
    j["mesh"] = "assets/meshes/" + mesh;
    j["rig"] = {{"path", "assets/rigs/" + rig},
                {"root_translation", {root[0], root[1], root[2]}},
                {"perturbation", {{"translation", 0.01}, {"rotation", 0.15}}}};
    j["optimizer"] = {{"iterations", 150}};
    atomic_write(dir + "/tasks/" + name + ".json", j.dump(2));
  };
  task("lift_sphere", "sphere_r50mm.obj", "tripod.json", {0, 0, 1, 0, 0, 0}, 15.0,
       Vec3(0, 0, 0.125));
  task("screw_cylinder", "cylinder_r30mm.obj", "tripod.json", {0, 0, 0, 0, 0, 1}, 15.0,
       Vec3(0, 0, 0.115));
  task("push_box", "box_80mm.obj", "tripod.json", {-1, 0, 0, 0, 0, 0}, 15.0,
       Vec3(0, 0, 0.115));
  task("fc_sphere", "sphere_r50mm.obj", "fan.json", {0, 0, 1, 0, 0, 0}, 180.0,
       Vec3(0, 0, 0.125));
  std::puts("assets written");
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  apply_worker_env();

  CLI::App app{"Grasp wrench space estimation, oracles, metrics, and synthesis"};
  app.require_subcommand(1);

  std::string config_path, in_path, suite = "tableI", ply_path, assets_dir = "assets";
  CliOverrides ov;
  int oracle_d = 64, batch = 1, grad_n = 100;
  double grad_threshold = 1e-4;
  bool timing = false;

  auto add_common = [&](CLI::App* sub, bool need_config) {
    auto* opt = sub->add_option("--config", config_path, "task config JSON");
    if (need_config) opt->required();
    sub->add_option("--K", [&ov](const CLI::results_t& r) {
      ov.K = std::stoi(r[0]);
      return true;
    }, "override estimator.K");
    sub->add_option("--delta-deg", [&ov](const CLI::results_t& r) {
      ov.delta_deg = std::stod(r[0]);
      return true;
    }, "override estimator.delta_deg");
    sub->add_option("--seed", [&ov](const CLI::results_t& r) {
      ov.seed = std::stoull(r[0]);
      return true;
    }, "override seed");
    sub->add_option("--out", [&ov](const CLI::results_t& r) {
      ov.out = r[0];
      return true;
    }, "output path (default stdout)");
  };

  auto* est = app.add_subcommand("estimate", "sample the GWS boundary");
  add_common(est, true);
  auto* ora = app.add_subcommand("oracle", "LP-verify a boundary sample file");
  add_common(ora, true);
  ora->add_option("--in", in_path, "boundary JSON from estimate")->required();
  ora->add_option("--d", oracle_d, "oracle cone discretization");
  auto* met = app.add_subcommand("metrics", "metric CSV row for a boundary file");
  add_common(met, true);
  met->add_option("--in", in_path, "boundary JSON from estimate")->required();
  met->add_option("--d", oracle_d, "oracle cone discretization");
  auto* syn = app.add_subcommand("synth", "synthesize contact configurations");
  add_common(syn, true);
  syn->add_option("--batch", batch, "number of seeds to run");
  syn->add_option("--ply", ply_path, "PLY dump of best-result contact points");
  auto* ben = app.add_subcommand("bench", "metric table over a case suite");
  add_common(ben, false);
  ben->add_option("--suite", suite, "tableI or tableII");
  ben->add_flag("--timing", timing, "include wall-clock times in the CSV");
  auto* gra = app.add_subcommand("gradcheck", "analytic vs finite-difference gradients");
  add_common(gra, false);
  gra->add_option("--n", grad_n, "number of random configurations");
  gra->add_option("--threshold", grad_threshold, "relative error threshold");
  auto* ass = app.add_subcommand("assets", "regenerate bundled meshes/rigs/tasks");
  ass->add_option("--dir", assets_dir, "output directory");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    json raw = json::object();
    if (!config_path.empty()) raw = load_json_file(config_path);
    const TaskConfig cfg = parse_config(raw, ov);
    if (est->parsed()) return cmd_estimate(cfg);
    if (ora->parsed()) return cmd_oracle(cfg, in_path, oracle_d);
    if (met->parsed()) return cmd_metrics(cfg, in_path, oracle_d);
    if (syn->parsed()) return cmd_synth(cfg, batch, ply_path);
    if (ben->parsed()) return cmd_bench(cfg, suite, timing);
    if (gra->parsed()) return cmd_gradcheck(cfg, grad_n, grad_threshold);
    if (ass->parsed()) return cmd_assets(assets_dir);
  } catch (const ConfigError& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 2;
  } catch (const NumericalError& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 3;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 2;
  }
  return 0;
}
