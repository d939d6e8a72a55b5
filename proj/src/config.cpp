#include "equisym/config.hpp"

#include <algorithm>
#include <cstdlib>
#include <fstream>
#include <map>
#include <sstream>

#include "equisym/detsym.hpp"
#include "equisym/kernels.hpp"
#include "equisym/pipeline.hpp"
#include "equisym/stochsym.hpp"

namespace equisym {

namespace {

using json = nlohmann::json;

const json& field(const json& j, const std::string& key, const std::string& ctx) {
  if (!j.is_object() || !j.contains(key)) throw ConfigError(ctx + ": missing \"" + key + "\"");
  return j.at(key);
}

std::string str_field(const json& j, const std::string& key, const std::string& ctx,
                      const std::string& fallback = "") {
  if (!j.contains(key)) {
    if (fallback.empty()) throw ConfigError(ctx + ": missing \"" + key + "\"");
    return fallback;
  }
  if (!j[key].is_string()) throw ConfigError(ctx + ": \"" + key + "\" must be a string");
  return j[key].get<std::string>();
}

double num_field(const json& j, const std::string& key, double fallback) {
  if (!j.contains(key)) return fallback;
  if (!j[key].is_number()) throw ConfigError("\"" + key + "\" must be a number");
  return j[key].get<double>();
}

std::size_t count_field(const json& j, const std::string& key, std::size_t fallback) {
  if (!j.contains(key)) return fallback;
  if (!j[key].is_number_integer() || j[key].get<long long>() < 1)
    throw ConfigError("\"" + key + "\" must be a positive integer");
  return j[key].get<std::size_t>();
}

bool is_seed(const json& j) {
  return j.is_number_unsigned() || (j.is_number_integer() && j.get<long long>() >= 0);
}

/// FNV-1a; stable across platforms, unlike std::hash.
std::uint64_t fnv1a(const std::string& s) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : s) h = (h ^ c) * 0x100000001b3ULL;
  return h;
}

std::filesystem::path resolve(const std::filesystem::path& base, const std::string& p) {
  const std::filesystem::path path(p);
  return path.is_absolute() ? path : base / path;
}

GSet gset_of(const Group& g, const json& j, const std::string& ctx) {
  const Carrier c = Carrier::from_json(field(j, "carrier", ctx));
  return standard_gset(g, c, str_field(j, "action", ctx));
}

CosetSpace coset_space_for(const Group& g, const Group& h) {
  if (g.finite() && h.finite()) return CosetSpace::enumerate(g, standard_inclusion(h, g));
  if (h == Group::trivial()) return CosetSpace::regular(g);
  if (h == g) return CosetSpace::singleton(g);
  if (g.kind() == GroupKind::euclidean && h == Group::orthogonal(g.parameter()))
    return CosetSpace::euclidean_over_orthogonal(g.parameter());
  if (g.kind() == GroupKind::product && h.kind() == GroupKind::product)
    return CosetSpace::product(coset_space_for(g.left(), h.left()), coset_space_for(g.right(), h.right()));
  throw ConfigError("no coset space construction for " + g.name() + "/" + h.name());
}

Point map_coords(const Point& p, const std::function<Eigen::MatrixXd(const Eigen::MatrixXd&)>& f) {
  if (p.kind() == Point::Kind::vector) return Point::from_vector(f(p.coords()).col(0));
  if (p.kind() == Point::Kind::cloud) return Point::from_cloud(f(p.coords()));
  throw StructuralError("numeric map applied to " + p.to_string());
}

std::function<Point(const Point&)> build_map(const json& m, const Carrier& in, const Carrier& out) {
  const std::string kind = str_field(m, "kind", "map");
  const bool numeric = in.kind() == Carrier::Kind::vector || in.kind() == Carrier::Kind::cloud;
  auto need_numeric = [&]() {
    if (!numeric || in != out) throw ConfigError("map '" + kind + "' needs equal real carriers");
  };
  if (kind == "identity") {
    if (in != out) throw ConfigError("identity map needs equal carriers");
    return [](const Point& p) { return p; };
  }
  if (kind == "affine" || kind == "scale") {
    need_numeric();
    const double a = num_field(m, kind == "scale" ? "factor" : "scale", 1.0);
    const double b = kind == "scale" ? 0.0 : num_field(m, "shift", 0.0);
    return [a, b](const Point& p) {
      return map_coords(p, [a, b](const Eigen::MatrixXd& x) { return Eigen::MatrixXd((a * x.array() + b).matrix()); });
    };
  }
  if (kind == "square") {
    need_numeric();
    return [](const Point& p) {
      return map_coords(p, [](const Eigen::MatrixXd& x) { return Eigen::MatrixXd(x.array().square().matrix()); });
    };
  }
  if (kind == "table") {
    if (!in.enumerable() || !out.enumerable()) throw ConfigError("table map needs finite carriers");
    const auto values = field(m, "values", "table map").get<std::vector<std::size_t>>();
    if (values.size() != in.cardinality()) throw ConfigError("table map needs one value per input point");
    for (std::size_t v : values)
      if (v >= out.cardinality()) throw ConfigError("table map value out of range");
    return [values, in, out](const Point& p) { return out.point_at(values[in.index_of(p)]); };
  }
  if (kind == "cloud-mlp") {
    if (in.kind() != Carrier::Kind::cloud || in.dim() != 3 || in != out)
      throw ConfigError("cloud-mlp maps point-cloud(n, 3) to itself");
    const auto seed = m.value("seed", std::uint64_t{1});
    return point_cloud_base(static_cast<int>(in.size()), seed).fn;
  }
  throw ConfigError("unknown map kind '" + kind + "'");
}

GammaMap build_gamma(const json& g, const GSet& x, const CosetSpace& cs) {
  const std::string kind = str_field(g, "kind", "gamma");
  if (kind == "sign") {
    GammaMap s = sign_gamma();
    if (s.map.domain.carrier() != x.carrier() || s.cs.group() != cs.group() || s.cs.subgroup() != cs.subgroup())
      throw ConfigError("sign gamma is for C2 negation on real-vector(1) with H trivial");
    return s;
  }
  if (kind == "translation") {
    if (x.carrier().kind() != Carrier::Kind::vector) throw ConfigError("translation gamma needs a real-vector carrier");
    GammaMap t = translation_gamma(x.carrier().dim());
    if (t.cs.group() != cs.group() || t.cs.subgroup() != cs.subgroup())
      throw ConfigError("translation gamma is for T(d) with H trivial");
    return t;
  }
  if (kind == "centroid") return centroid_gamma(x, cs);
  if (kind == "pca") return pca_frame_gamma(x, cs);
  if (kind == "orbit") return orbit_gamma(x, cs);
  if (kind == "constant") return constant_gamma(x, cs);
  if (kind == "table") {
    if (!x.carrier().enumerable() || !cs.finite()) throw ConfigError("table gamma needs finite X and G/H");
    const auto values = field(g, "values", "table gamma").get<std::vector<std::size_t>>();
    if (values.size() != x.carrier().cardinality()) throw ConfigError("table gamma needs one coset per point");
    for (std::size_t v : values)
      if (v >= cs.size()) throw ConfigError("table gamma coset id out of range");
    const Carrier c = x.carrier();
    return make_gamma(x, cs, [values, c, cs](const Point& p) { return cs.coset(values[c.index_of(p)]); },
                      "table");
  }
  throw ConfigError("unknown gamma kind '" + kind + "'");
}

AuditMode build_mode(const json& check, std::uint64_t seed, bool finite) {
  const json mode = check.value("mode", json{{"kind", finite ? "exhaustive" : "sampled"}});
  const std::string kind = str_field(mode, "kind", "mode");
  if (kind == "exhaustive") return AuditMode::exhaustive();
  if (kind == "sampled") return AuditMode::sampled(count_field(mode, "n", 100), mode.value("seed", seed));
  throw ConfigError("unknown mode '" + kind + "'");
}

std::vector<Point> read_points(const std::filesystem::path& path, const Carrier& c) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot read points file " + path.string());
  std::vector<Point> out;
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty() || line[0] == '#') continue;
    std::vector<double> v;
    std::stringstream ss(line);
    std::string cell;
    while (std::getline(ss, cell, ',')) {
      try {
        v.push_back(std::stod(cell));
      } catch (const std::exception&) {
        throw ConfigError("points file cell is not a number: " + cell);
      }
    }
    if (c.kind() == Carrier::Kind::vector && static_cast<int>(v.size()) == c.dim()) {
      out.push_back(Point::from_vector(Eigen::Map<Eigen::VectorXd>(v.data(), c.dim())));
    } else if (c.kind() == Carrier::Kind::finite && v.size() == 1 && v[0] >= 0) {
      out.push_back(Point::from_index(static_cast<std::size_t>(v[0])));
    } else {
      throw ConfigError("points file row does not fit " + c.name());
    }
    c.validate(out.back());
  }
  return out;
}

std::vector<GroupElement> elements_for(const Group& g, std::size_t n, std::uint64_t seed) {
  if (g.finite()) return g.elements();
  RandomSource rng(seed);
  std::vector<GroupElement> out;
  for (std::size_t i = 0; i < n; ++i) out.push_back(g.sample(rng));
  return out;
}

AuditReport audit_map(const EquivariantMap& f, const json& check, std::uint64_t seed,
                      const std::filesystem::path& base_dir, const Exclusion& exclude, double tol) {
  CheckOptions o;
  o.tolerance = tol;
  o.exclude = exclude;
  o.instance = f.name;
  if (check.contains("points")) {
    const auto pts = read_points(resolve(base_dir, str_field(check, "points", "check")), f.domain.carrier());
    return check_equivariance_on(f, elements_for(f.group(), count_field(check, "elements", 20), seed), pts, o);
  }
  const bool finite = f.group().finite() && f.domain.carrier().enumerable();
  return check_equivariance(f, build_mode(check, seed, finite), o);
}

Exclusion build_exclusion(const json& check, const Exclusion& gamma) {
  const std::string ex = check.value("exclude", std::string("gamma"));
  if (ex == "gamma") return gamma;
  if (ex == "none") return nullptr;
  if (ex == "zero") return [](const Point& p) { return p.embed().cwiseAbs().maxCoeff() == 0.0; };
  throw ConfigError("unknown exclusion '" + ex + "' (gamma, zero, none)");
}

AuditReport run_symmetrize(const json& c, std::uint64_t seed, const std::filesystem::path& base) {
  const Group g = Group::from_json(field(c, "group", "symmetrize"));
  const Group h = c.contains("subgroup") ? Group::from_json(c["subgroup"]) : Group::trivial();
  const GSet x = gset_of(g, field(c, "domain", "symmetrize"), "domain");
  const GSet y = gset_of(g, field(c, "codomain", "symmetrize"), "codomain");
  const CosetSpace cs = coset_space_for(g, h);
  const GammaMap gamma = build_gamma(field(c, "gamma", "symmetrize"), x, cs);
  const Homomorphism& incl = cs.inclusion();
  const EquivariantMap f = make_map(restrict(incl, x), restrict(incl, y),
                                    build_map(field(c, "map", "symmetrize"), x.carrier(), y.carrier()),
                                    str_field(field(c, "map", "symmetrize"), "kind", "map"));
  SymOptions so;
  so.check_input = c.value("check_input", true);
  so.seed = RandomSource(seed).derive(7);
  const EquivariantMap sym = symmetrize(f, gamma, y, so);
  return audit_map(sym, c, seed, base, build_exclusion(c, gamma.exclusion), num_field(c, "tolerance", kNumericTolerance));
}

AuditReport run_check_map(const json& c, std::uint64_t seed, const std::filesystem::path& base) {
  const Group g = Group::from_json(field(c, "group", "check_map"));
  const GSet x = gset_of(g, field(c, "domain", "check_map"), "domain");
  const GSet y = gset_of(g, field(c, "codomain", "check_map"), "codomain");
  const json& m = field(c, "map", "check_map");
  const EquivariantMap f = make_map(x, y, build_map(m, x.carrier(), y.carrier()), str_field(m, "kind", "map"));
  return audit_map(f, c, seed, base, build_exclusion(c, nullptr), num_field(c, "tolerance", kNumericTolerance));
}

AuditReport run_kernel(const json& c, std::uint64_t seed, const std::filesystem::path& base) {
  const Group g = Group::from_json(field(c, "group", "kernel"));
  const GSet x = gset_of(g, field(c, "domain", "kernel"), "domain");
  const GSet y = gset_of(g, field(c, "codomain", "kernel"), "codomain");
  std::optional<FiniteTable> table;
  if (c.contains("table_file")) {
    table = FiniteTable::read_csv(resolve(base, str_field(c, "table_file", "kernel")).string());
  } else {
    const auto rows = field(c, "table", "kernel").get<std::vector<std::vector<double>>>();
    if (rows.empty()) throw ConfigError("kernel table is empty");
    Eigen::MatrixXd m(static_cast<Eigen::Index>(rows.size()), static_cast<Eigen::Index>(rows[0].size()));
    for (std::size_t i = 0; i < rows.size(); ++i) {
      if (rows[i].size() != rows[0].size()) throw ConfigError("kernel table rows differ in length");
      for (std::size_t j = 0; j < rows[i].size(); ++j)
        m(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = rows[i][j];
    }
    table = FiniteTable(std::move(m));
  }
  Kernel k = from_table(x, y, *table, c.value("kernel_name", std::string("k")));
  if (c.contains("symmetrize")) {
    const json& s = c["symmetrize"];
    const Group h = s.contains("subgroup") ? Group::from_json(s["subgroup"]) : Group::trivial();
    const CosetSpace cs = coset_space_for(g, h);
    const json& gj = field(s, "gamma", "symmetrize");
    const GammaKernel gamma = str_field(gj, "kind", "gamma") == "haar" ? haar_gamma(cs, x)
                                                                        : deterministic_gamma(build_gamma(gj, x, cs));
    const Homomorphism& incl = cs.inclusion();
    const Kernel kh = from_table(restrict(incl, x), restrict(incl, y), *table, k.name);
    StochOptions so;
    so.seed = RandomSource(seed).derive(7);
    k = stochastic_symmetrize(kh, gamma, y, so);
  }
  if (c.contains("export_table")) {
    if (!k.table) throw ConfigError("kernel has no exact table to export");
    k.table->write_csv(resolve(default_output_dir(), str_field(c, "export_table", "kernel")).string());
  }
  const std::string check = c.value("check", std::string("exact"));
  KernelCheckOptions ko;
  ko.tolerance = num_field(c, "tolerance", kProbTolerance);
  ko.instance = k.name;
  if (check == "exact") return check_kernel_equivariance_exact(k, ko);
  if (check == "density") return check_density_equivariance(k, ko);
  throw ConfigError("unknown kernel check '" + check + "' (exact, density)");
}

AuditReport run_demo_check(const json& c, std::uint64_t seed) {
  PointCloudDemoOptions o;
  o.samples = count_field(c, "samples", o.samples);
  o.pairs = count_field(c, "pairs", o.pairs);
  o.exact_pairs = count_field(c, "exact_pairs", o.exact_pairs);
  o.alpha = num_field(c, "alpha", o.alpha);
  if (!(o.alpha > 0.0 && o.alpha < 1.0)) throw ConfigError("alpha must lie in (0, 1)");
  if (c.contains("stages")) {
    o.stages.clear();
    for (const auto& s : c["stages"])
      o.stages.push_back({str_field(s, "upgrade", "stage"), str_field(s, "gamma", "stage")});
  }
  const std::string demo = c.value("demo", std::string("point-cloud"));
  if (demo != "point-cloud") throw ConfigError("unknown demo '" + demo + "'");
  const int n = static_cast<int>(count_field(c, "n", 5));
  return demo_point_cloud(n, c.value("seed", seed), o);
}

}  // namespace

AuditConfig parse_config(const json& j, const std::filesystem::path& base_dir) {
  if (!j.is_object()) throw ConfigError("config must be a JSON object");
  if (!j.contains("schema_version") || !j["schema_version"].is_number_integer())
    throw ConfigError("config needs an integer schema_version");
  if (j["schema_version"].get<int>() != kSchemaVersion)
    throw ConfigError("unsupported schema_version " + j["schema_version"].dump());
  AuditConfig cfg;
  cfg.raw = j;
  cfg.name = str_field(j, "name", "config");
  if (j.contains("seed")) {
    if (!is_seed(j["seed"])) throw ConfigError("seed must be a non-negative integer");
    cfg.seed = j["seed"].get<std::uint64_t>();
  }
  if (j.contains("output")) cfg.output = str_field(j, "output", "config");
  cfg.base_dir = base_dir;
  const json& checks = field(j, "checks", "config");
  if (!checks.is_array() || checks.empty()) throw ConfigError("\"checks\" must be a non-empty array");
  std::vector<std::string> names;
  for (const auto& c : checks) {
    names.push_back(str_field(c, "name", "check"));
    str_field(c, "type", "check " + names.back());
  }
  std::sort(names.begin(), names.end());
  if (std::adjacent_find(names.begin(), names.end()) != names.end())
    throw ConfigError("check names must be unique");
  return cfg;
}

AuditConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot read config " + path);
  json j;
  try {
    j = json::parse(in);
  } catch (const json::parse_error& e) {
    throw ConfigError(std::string("config is not valid JSON: ") + e.what());
  }
  return parse_config(j, std::filesystem::absolute(path).parent_path());
}

RunResult run_config(const AuditConfig& cfg) {
  std::vector<std::pair<std::string, json>> results;
  bool pass = true;
  const RandomSource master(cfg.seed);
  for (const auto& c : cfg.raw["checks"]) {
    const std::string name = c["name"];
    const std::string type = c["type"];
    const std::uint64_t seed = c.contains("seed") && is_seed(c["seed"])
                                   ? c["seed"].get<std::uint64_t>()
                                   : master.derive(fnv1a(name));
    json entry = {{"name", name}, {"type", type}, {"seed", seed}};
    try {
      AuditReport r;
      if (type == "symmetrize") r = run_symmetrize(c, seed, cfg.base_dir);
      else if (type == "check_map") r = run_check_map(c, seed, cfg.base_dir);
      else if (type == "kernel") r = run_kernel(c, seed, cfg.base_dir);
      else if (type == "demo" || type == "pipeline") r = run_demo_check(c, seed);
      else throw ConfigError("unknown check type '" + type + "'");
      entry["pass"] = r.pass;
      entry["report"] = r.to_json();
    } catch (const IllTypedInput& e) {
      entry["pass"] = false;
      entry["error"] = e.what();
    } catch (const ConfigError& e) {
      throw ConfigError("check " + name + ": " + e.what());
    } catch (const json::exception& e) {
      throw ConfigError("check " + name + ": " + e.what());
    } catch (const Error& e) {
      // Structural, unsupported and invalid-argument errors all mean the check is ill-formed.
      throw ConfigError("check " + name + ": " + e.what());
    }
    pass = pass && entry["pass"].get<bool>();
    results.emplace_back(name, std::move(entry));
  }
  std::sort(results.begin(), results.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
  json checks = json::array();
  for (auto& r : results) checks.push_back(std::move(r.second));
  RunResult out;
  out.pass = pass;
  out.report = {{"schema_version", kSchemaVersion}, {"version", kVersion}, {"name", cfg.name},
                {"seed", cfg.seed},                 {"pass", pass},        {"config", cfg.raw},
                {"checks", std::move(checks)}};
  return out;
}

// ---------------------------------------------------------------------------
// demos

namespace {

struct Demo {
  std::string description;
  std::function<json(std::uint64_t)> config;
};

json cloud_demo(const std::string& name, std::uint64_t seed, json stages) {
  return {{"schema_version", kSchemaVersion},
          {"name", name},
          {"seed", seed},
          {"checks", json::array({{{"name", name},
                                   {"type", "demo"},
                                   {"demo", "point-cloud"},
                                   {"n", 5},
                                   {"samples", 5000},
                                   {"pairs", 20},
                                   {"alpha", 0.01},
                                   {"stages", std::move(stages)}}})}};
}

const std::map<std::string, Demo>& demos() {
  static const std::map<std::string, Demo> table = {
      {"negation",
       {"C2 negation on R: sign canonicalisation of x + 1, and stability of 2x",
        [](std::uint64_t seed) {
          const json real1 = {{"carrier", {{"kind", "real-vector"}, {"d", 1}}}, {"action", "negation"}};
          return json{{"schema_version", kSchemaVersion},
                      {"name", "negation"},
                      {"seed", seed},
                      {"checks",
                       json::array({{{"name", "sym-shift"},
                                     {"type", "symmetrize"},
                                     {"group", {{"kind", "cyclic"}, {"n", 2}}},
                                     {"domain", real1},
                                     {"codomain", real1},
                                     {"map", {{"kind", "affine"}, {"scale", 1.0}, {"shift", 1.0}}},
                                     {"gamma", {{"kind", "sign"}}},
                                     {"mode", {{"kind", "sampled"}, {"n", 100}}}},
                                    {{"name", "sym-double"},
                                     {"type", "symmetrize"},
                                     {"group", {{"kind", "cyclic"}, {"n", 2}}},
                                     {"domain", real1},
                                     {"codomain", real1},
                                     {"map", {{"kind", "scale"}, {"factor", 2.0}}},
                                     {"gamma", {{"kind", "sign"}}},
                                     {"mode", {{"kind", "sampled"}, {"n", 100}}}}})}};
        }}},
      {"translation",
       {"T(1) on R: canonicalise x^2 to the origin",
        [](std::uint64_t seed) {
          const json real1 = {{"carrier", {{"kind", "real-vector"}, {"d", 1}}}, {"action", "translation"}};
          return json{{"schema_version", kSchemaVersion},
                      {"name", "translation"},
                      {"seed", seed},
                      {"checks", json::array({{{"name", "sym-square"},
                                               {"type", "symmetrize"},
                                               {"group", {{"kind", "translation"}, {"d", 1}}},
                                               {"domain", real1},
                                               {"codomain", real1},
                                               {"map", {{"kind", "square"}}},
                                               {"gamma", {{"kind", "translation"}}},
                                               {"mode", {{"kind", "sampled"}, {"n", 100}}}}})}};
        }}},
      {"swap-kernel",
       {"C2 swapping {0,1}: Haar symmetrisation of the point mass at 0",
        [](std::uint64_t seed) {
          const json set2 = {{"carrier", {{"kind", "finite-set"}, {"n", 2}}}, {"action", "natural"}};
          return json{{"schema_version", kSchemaVersion},
                      {"name", "swap-kernel"},
                      {"seed", seed},
                      {"checks", json::array({{{"name", "sym-dirac"},
                                               {"type", "kernel"},
                                               {"group", {{"kind", "cyclic"}, {"n", 2}}},
                                               {"domain", set2},
                                               {"codomain", set2},
                                               {"table", {{1.0, 0.0}, {1.0, 0.0}}},
                                               {"symmetrize", {{"gamma", {{"kind", "haar"}}}}},
                                               {"check", "exact"}}})}};
        }}},
      {"point-cloud",
       {"S5 -> O(3) x S5 (Haar) -> E(3) x S5 (centroid) on point-cloud(5, 3)",
        [](std::uint64_t seed) {
          return cloud_demo("point-cloud", seed,
                            json::array({{{"upgrade", "orthogonal"}, {"gamma", "haar"}},
                                         {{"upgrade", "euclidean"}, {"gamma", "centroid"}}}));
        }}},
      {"point-cloud-pca",
       {"S5 -> O(3) x S5 (PCA frame) -> E(3) x S5 (centroid), fully deterministic",
        [](std::uint64_t seed) {
          return cloud_demo("point-cloud-pca", seed,
                            json::array({{{"upgrade", "orthogonal"}, {"gamma", "pca"}},
                                         {{"upgrade", "euclidean"}, {"gamma", "centroid"}}}));
        }}},
      {"point-cloud-first-point",
       {"as point-cloud but translating by the first point: not S5-equivariant, fails",
        [](std::uint64_t seed) {
          return cloud_demo("point-cloud-first-point", seed,
                            json::array({{{"upgrade", "orthogonal"}, {"gamma", "haar"}},
                                         {{"upgrade", "euclidean"}, {"gamma", "first-point"}}}));
        }}},
  };
  return table;
}

}  // namespace

std::vector<std::string> demo_names() {
  std::vector<std::string> out;
  for (const auto& [name, _] : demos()) out.push_back(name);
  return out;
}

std::string demo_description(const std::string& name) {
  const auto it = demos().find(name);
  if (it == demos().end()) throw ConfigError("unknown demo '" + name + "'");
  return it->second.description;
}

json demo_config(const std::string& name, std::uint64_t seed) {
  const auto it = demos().find(name);
  if (it == demos().end()) throw ConfigError("unknown demo '" + name + "'");
  return it->second.config(seed);
}

std::filesystem::path default_output_dir() {
  if (const char* dir = std::getenv(kOutDirEnv); dir && *dir) return dir;
  return std::filesystem::current_path();
}

std::filesystem::path report_path(const AuditConfig& cfg) {
  if (!cfg.output.empty()) return resolve(default_output_dir(), cfg.output);
  return default_output_dir() / (cfg.name + ".report.json");
}

std::string canonical_report(const json& report) {
  json copy = report;
  copy.erase("wall_time_s");
  return copy.dump(2);
}

void write_report(const json& report, const std::filesystem::path& path) {
  if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
  std::ofstream out(path);
  if (!out) throw Error("cannot write report " + path.string());
  out << report.dump(2) << "\n";
}

}  // namespace equisym
