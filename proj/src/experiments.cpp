#include "frl/experiments.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <functional>
#include <limits>
#include <optional>
#include <random>

#include "frl/frequency.hpp"
#include "frl/integrals.hpp"
#include "frl/modes.hpp"
#include "frl/spherical.hpp"

namespace frl::experiments {

namespace fs = std::filesystem;
using config::Json;

namespace {

using Row = std::vector<std::string>;

struct Table {
  Row header;
  std::vector<Row> rows;
};

std::string cell(double v) { return format_number(v); }
std::string cell(long long v) { return std::to_string(v); }
std::string cell(std::size_t v) { return std::to_string(v); }
std::string cell(int v) { return std::to_string(v); }
std::string cell(bool v) { return v ? "1" : "0"; }

Json finite_or_null(double v) { return std::isfinite(v) ? Json(v) : Json(nullptr); }

// Files registered here are deleted unless commit() is reached.
class OutputSet {
 public:
  ~OutputSet() {
    if (committed_) return;
    std::error_code ec;
    for (const auto& f : files_) fs::remove(f, ec);
  }
  void add(const std::string& f) { files_.push_back(f); }
  void commit() { committed_ = true; }
  const std::vector<std::string>& files() const { return files_; }

 private:
  std::vector<std::string> files_;
  bool committed_ = false;
};

Json metadata(const config::ExperimentConfig& cfg) {
  Json m = Json::object();
  m["experiment"] = cfg.experiment;
  m["seed"] = cfg.seed;
  m["params"] = cfg.params;
  return m;
}

void write_text(OutputSet& out, const fs::path& path, const std::string& text) {
  out.add(path.string());
  std::ofstream f(path, std::ios::binary);
  if (!f) throw ResourceError("cannot write '" + path.string() + "'");
  f << text;
  if (!f) throw ResourceError("write failed for '" + path.string() + "'");
}

std::string csv_text(const Json& meta, const Table& t) {
  std::string s = "# " + meta.dump() + "\n";
  auto line = [&](const Row& r) {
    for (std::size_t i = 0; i < r.size(); ++i) s += (i ? "," : "") + r[i];
    s += "\n";
  };
  line(t.header);
  for (const auto& r : t.rows) line(r);
  return s;
}

std::vector<double> doubles(const Json& j) { return j.get<std::vector<double>>(); }

std::vector<double> log_grid(double lo, double hi, std::size_t n) {
  std::vector<double> g(n);
  for (std::size_t i = 0; i < n; ++i) {
    const double t = n == 1 ? 0.0 : static_cast<double>(i) / static_cast<double>(n - 1);
    g[i] = lo * std::pow(hi / lo, t);
  }
  return g;
}

double spread_of(const std::vector<double>& v) {
  double lo = std::numeric_limits<double>::infinity(), hi = 0.0;
  for (double x : v) {
    lo = std::min(lo, x);
    hi = std::max(hi, x);
  }
  return lo > 0.0 ? hi / lo : std::numeric_limits<double>::infinity();
}

modes::ModeKind mode_kind(const std::string& s) {
  return s == "zonal" ? modes::ModeKind::zonal : modes::ModeKind::highest_weight;
}

modes::SurfaceGeodesic sphere_geodesic(const std::string& s) {
  return s == "meridian" ? modes::meridian() : modes::equator();
}

spherical::SphericalKernel integral_kernel(const Json& p) {
  spherical::KernelOptions ko;
  ko.h_width = p["h_width"].get<double>();
  return spherical::make_kernel(p["lambda"].get<double>(), ko);
}

WeightBundle integral_weight(const Json& p) {
  return cantor_weight(p["alpha"].get<double>(), p["depth"].get<int>(), p["lambda"].get<double>(),
                       p["c_ell"].get<double>(), p["resolution_per_wavelength"].get<double>());
}

std::function<cplx(double)> phi_for(double lambda) {
  return [lambda](double x) { return integrals::standard_phi(lambda, x); };
}

struct Outcome {
  Table table;
  Json results = Json::object();
  Json flags = Json::object();
  std::vector<std::string> ops;
  bool converged = true;
};

Outcome run_measure(const config::ExperimentConfig& cfg) {
  const Json& p = cfg.params;
  Outcome o;
  o.ops = {"measures.make_cantor_measure", "measures.build_weight", "measures.interval_ratio_sweep",
           "measures.frostman_ratio"};
  const double alpha = p["alpha"].get<double>(), lambda = p["lambda"].get<double>();
  const auto nu = measures::make_cantor_measure(alpha, p["depth"].get<int>(), p["atom_budget"].get<std::size_t>());
  const auto bump = frequency::make_bump_pair();
  measures::WeightOptions wo;
  wo.c_ell = p["c_ell"].get<double>();
  wo.samples_per_wavelength = p["resolution_per_wavelength"].get<double>();
  const auto w = measures::build_weight(nu, lambda, bump, wo);
  const auto r = log_grid(1.0 / lambda, 1.0, p["r_points"].get<std::size_t>());
  const auto ratios = measures::interval_ratio_sweep(w, alpha, r);
  o.table.header = {"r", "sup_interval_ratio"};
  for (std::size_t i = 0; i < r.size(); ++i) o.table.rows.push_back({cell(r[i]), cell(ratios[i])});
  o.results["atoms"] = nu.atoms.size();
  o.results["measure_mass"] = nu.total_mass();
  o.results["atomic_frostman_ratio"] = measures::frostman_ratio(nu, r);
  o.results["weight_mass"] = w.total_mass();
  o.results["weight_grid_points"] = w.grid.size;
  o.results["sup_interval_ratio"] = *std::max_element(ratios.begin(), ratios.end());
  o.results["interval_ratio_spread"] = spread_of(ratios);
  return o;
}

Outcome run_energy(const config::ExperimentConfig& cfg) {
  const Json& p = cfg.params;
  Outcome o;
  o.ops = {"measures.build_weight", "frequency.fourier_energy_identity"};
  const double lambda = p["lambda"].get<double>();
  const auto b = cantor_weight(p["alpha"].get<double>(), p["depth"].get<int>(), lambda, p["c_ell"].get<double>(), 0.0);
  const auto phi = SampledFunction::tabulate(b.w.grid, phi_for(lambda));
  o.table.header = {"s", "lhs", "rhs", "relative_gap"};
  double worst = 0.0;
  for (double s : doubles(p["s"])) {
    const auto id = frequency::fourier_energy_identity(b.w, phi, s);
    worst = std::max(worst, id.relative_gap());
    o.table.rows.push_back({cell(s), cell(id.lhs), cell(id.rhs), cell(id.relative_gap())});
  }
  o.results["max_relative_gap"] = worst;
  o.results["riesz_gamma_half"] = frequency::riesz_gamma(0.5);
  return o;
}

Outcome run_kernel(const config::ExperimentConfig& cfg) {
  const Json& p = cfg.params;
  Outcome o;
  o.ops = {"spherical.make_kernel"};
  spherical::KernelOptions ko;
  ko.h_width = p["h_width"].get<double>();
  ko.x_max = p["x_max"].get<double>();
  ko.samples_per_wavelength = p["samples_per_wavelength"].get<double>();
  const double lambda = p["lambda"].get<double>();
  const auto k = spherical::make_kernel(lambda, ko);
  const auto n = p["points"].get<std::size_t>();
  const double reach = std::min(k.support_radius(), ko.x_max);
  o.table.header = {"x", "k", "decay_scaled"};
  double sup_scaled = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double x = reach * static_cast<double>(i) / static_cast<double>(n - 1);
    const double v = k(x);
    const double scaled = std::abs(v) * std::sqrt(1.0 + lambda * x) / lambda;
    sup_scaled = std::max(sup_scaled, scaled);
    o.table.rows.push_back({cell(x), cell(v), cell(scaled)});
  }
  o.results["k_at_0"] = k(0.0);
  o.results["decay_constant"] = sup_scaled;
  o.results["support_radius"] = k.support_radius();
  o.results["spectral_truncation"] = k.truncation();
  o.results["h_width"] = k.h_width();
  o.results["x_max"] = ko.x_max;
  return o;
}

Outcome run_hecke(const config::ExperimentConfig& cfg) {
  const Json& p = cfg.params;
  Outcome o;
  o.ops = {"hecke.coset_reps", "hecke.hecke_returns", "hecke.anisotropy_screen"};
  auto alg = hecke::make_algebra(p["a"].get<long long>(), p["b"].get<long long>());
  alg.q = p["q"].get<long long>();
  const auto n_max = p["n_max"].get<long long>();
  const auto gs = conjugator_grid(p["g_count"].get<std::size_t>());
  Json uncertified = Json::array();
  Json lower_bounds = Json::array();
  Json cosets = Json::array();
  for (long long n = 1; n <= n_max; ++n) {
    const auto cr = hecke::coset_reps(alg, n);
    cosets.push_back({{"n", n}, {"found", cr.reps.size()}, {"expected", cr.expected}, {"certified", cr.certified}});
    if (cr.expected == 0) {
      lower_bounds.push_back(n);
    } else if (!cr.certified) {
      uncertified.push_back(n);
    }
  }
  const auto rows = lemma51_shape(alg, n_max, doubles(p["kappas"]), gs);
  o.table.header = {"n", "kappa", "g_index", "returns", "shape_ratio"};
  double worst = 0.0;
  bool finite = true;
  for (const auto& r : rows) {
    o.table.rows.push_back({cell(r.n), cell(r.kappa), cell(r.g_index), cell(r.count), cell(r.shape_ratio)});
    worst = std::max(worst, r.shape_ratio);
    finite = finite && std::isfinite(r.shape_ratio);
  }
  o.results["max_shape_ratio"] = finite_or_null(worst);
  o.results["cosets"] = cosets;
  o.results["anisotropic_on_screen"] = hecke::anisotropy_screen(alg);
  o.flags["uncertified_coset_counts"] = uncertified;
  o.flags["coset_counts_lower_bound_only"] = lower_bounds;
  o.flags["shape_ratio_finite"] = finite;
  return o;
}

Outcome run_amplifier(const config::ExperimentConfig& cfg) {
  const Json& p = cfg.params;
  Outcome o;
  o.ops = {"hecke.amplifier_primes", "hecke.random_eigenvalues", "hecke.build_amplifier"};
  const auto N = p["N"].get<long long>(), q = p["q"].get<long long>();
  const auto draws = p["draws"].get<std::size_t>();
  const auto primes = hecke::amplifier_primes(N, q);
  const double threshold = 0.5 * static_cast<double>(primes.size());
  std::mt19937_64 rng(cfg.seed);
  o.table.header = {"draw", "functional", "l1", "l2_squared"};
  double worst = std::numeric_limits<double>::infinity();
  bool moments = true;
  for (std::size_t d = 0; d < draws; ++d) {
    const auto eig = hecke::random_eigenvalues(primes, rng);
    const auto amp = hecke::build_amplifier(N, eig, q);
    const double f = std::abs(amp.functional(eig));
    worst = std::min(worst, f);
    const double count = static_cast<double>(primes.size());
    moments = moments && amp.l1() == count && amp.l2_squared() == count;
    o.table.rows.push_back({cell(d), cell(f), cell(amp.l1()), cell(amp.l2_squared())});
  }
  o.results["prime_count"] = primes.size();
  o.results["threshold"] = threshold;
  o.results["min_functional"] = worst;
  o.flags["moment_identities_exact"] = moments;
  o.flags["lower_bound_holds"] = worst >= threshold;
  return o;
}

void add_report(Outcome& o, const integrals::IntegralReport& r) {
  if (!r.converged) o.converged = false;
}

Outcome run_integrals(const config::ExperimentConfig& cfg) {
  const Json& p = cfg.params;
  Outcome o;
  o.ops = {"spherical.make_kernel", "measures.build_weight", "integrals.eval_I"};
  const double lambda = p["lambda"].get<double>();
  const auto k = integral_kernel(p);
  const auto b = integral_weight(p);
  integrals::TestWindow win;
  win.half_width = p["half_width"].get<double>();
  const auto phi = integrals::weighted_phi(b.w, phi_for(lambda));
  const auto gs = conjugator_grid(p["g_count"].get<std::size_t>());
  o.table.header = {"g_index", "dist_to_identity", "abs_I", "re_I", "im_I", "error", "converged"};
  for (std::size_t i = 0; i < gs.size(); ++i) {
    const auto r = integrals::eval_I(k, win, phi, gs[i]);
    add_report(o, r);
    o.table.rows.push_back({cell(i), cell(geometry::dist_to_identity(gs[i]).value), cell(std::abs(r.value)),
                            cell(r.value.real()), cell(r.value.imag()), cell(r.error), cell(r.converged)});
  }
  o.results["phi_norm_squared_L2w"] = b.w.l2w_norm_squared(SampledFunction::tabulate(b.w.grid, phi_for(lambda)).values);
  if (p["uniform_bound"].get<bool>()) {
    o.ops.push_back("integrals.uniform_bound_experiment");
    o.results["uniform_bound_constant"] = integrals::uniform_bound_experiment(
        k, win, b.w, frequency::make_bump_pair(), std::sqrt(lambda), phi_for(lambda));
  }
  return o;
}

Outcome run_beta(const config::ExperimentConfig& cfg) {
  const Json& p = cfg.params;
  Outcome o;
  o.ops = {"spherical.make_kernel", "measures.build_weight", "frequency.band_project",
           "integrals.beta_scaling_experiment"};
  const double lambda = p["lambda"].get<double>(), alpha = p["alpha"].get<double>();
  const auto k = integral_kernel(p);
  const auto b = integral_weight(p);
  integrals::TestWindow win;
  win.half_width = p["half_width"].get<double>();
  std::vector<double> betas;
  for (double e : doubles(p["beta_exponents"])) betas.push_back(std::pow(lambda, e));
  const auto res = integrals::beta_scaling_experiment(k, win, b.w, frequency::make_bump_pair(), alpha, betas,
                                                      phi_for(lambda));
  o.table.header = {"beta", "abs_I", "normalized", "error", "converged"};
  for (const auto& r : res.rows) {
    o.converged = o.converged && r.converged;
    o.table.rows.push_back({cell(r.beta), cell(r.value), cell(r.normalized), cell(r.error), cell(r.converged)});
  }
  o.results["slope"] = res.slope;
  o.results["slope_bound"] = -(alpha - 0.5) + 0.15;
  o.results["phi_norm_squared_L2w"] = res.phi_norm_squared;
  return o;
}

Outcome run_decay(const config::ExperimentConfig& cfg) {
  const Json& p = cfg.params;
  Outcome o;
  o.ops = {"spherical.make_kernel", "measures.build_weight", "frequency.band_project",
           "integrals.rapid_decay_experiment"};
  const double lambda = p["lambda"].get<double>();
  const auto k = integral_kernel(p);
  const auto b = integral_weight(p);
  integrals::TestWindow win;
  win.half_width = p["half_width"].get<double>();
  const double beta = std::pow(lambda, p["beta_exponent"].get<double>());
  const auto res = integrals::rapid_decay_experiment(k, win, b.w, frequency::make_bump_pair(), beta,
                                                     p["epsilon0"].get<double>(), doubles(p["multipliers"]),
                                                     phi_for(lambda));
  o.table.header = {"t", "dist_to_A", "abs_I", "error", "converged"};
  for (const auto& r : res.rows) {
    o.converged = o.converged && r.converged;
    o.table.rows.push_back({cell(r.t), cell(r.dist_to_A), cell(r.value), cell(r.error), cell(r.converged)});
  }
  o.results["beta"] = beta;
  o.results["threshold"] = res.threshold;
  o.results["contrast"] = res.contrast;
  o.results["near_median"] = res.near_median;
  o.results["far_median"] = res.far_median;
  o.results["kernel_support"] = k.support_radius();
  // A far value that vanishes identically comes from compact support, not from oscillation.
  o.flags["far_value_exactly_zero"] = !res.rows.empty() && res.rows.back().value == 0.0;
  double inner = 0.0;
  for (const auto& r : res.rows) {
    if (r.t > 0.0 && r.value > 0.0) inner = r.value;
  }
  o.results["inner_contrast"] = res.rows.empty() || res.rows.front().value == 0.0 ? 0.0 : inner / res.rows.front().value;
  return o;
}

Outcome run_restrict(const config::ExperimentConfig& cfg) {
  const Json& p = cfg.params;
  Outcome o;
  o.ops = {"modes.make_mode", "measures.make_cantor_measure", "modes.restriction_norm", "modes.fit_exponent"};
  const double alpha = p["alpha"].get<double>();
  const auto nu = measures::make_cantor_measure(alpha, p["depth"].get<int>());
  const auto ell = sphere_geodesic(p["geodesic"].get<std::string>());
  std::vector<double> lambdas, values;
  o.table.header = {"degree", "lambda", "restriction_norm", "normalized"};
  for (int l : p["degrees"].get<std::vector<int>>()) {
    modes::ModeSpec spec;
    spec.kind = mode_kind(p["kind"].get<std::string>());
    spec.degree = l;
    const modes::Mode m(spec);
    const double v = modes::restriction_norm(m, ell, nu);
    lambdas.push_back(m.lambda());
    values.push_back(v);
    o.table.rows.push_back({cell(l), cell(m.lambda()), cell(v), cell(v / std::pow(m.lambda(), modes::gamma_exponent(alpha)))});
  }
  const auto fit = modes::fit_exponent(lambdas, values);
  o.results["fitted_exponent"] = fit.slope;
  o.results["fit_residual"] = fit.residual;
  o.results["predicted_exponent"] = modes::gamma_exponent(alpha);
  return o;
}

modes::KNOptions kn_options(const Json& p) {
  modes::KNOptions ko;
  ko.width_factor = p["width_factor"].get<double>();
  ko.spacing_factor = p["spacing_factor"].get<double>();
  ko.budget = p["budget"].get<std::size_t>();
  return ko;
}

Outcome run_kn(const config::ExperimentConfig& cfg) {
  const Json& p = cfg.params;
  Outcome o;
  o.ops = {"modes.make_mode", "modes.kn_norm"};
  modes::ModeSpec spec;
  spec.kind = mode_kind(p["kind"].get<std::string>());
  spec.degree = p["degree"].get<int>();
  const modes::Mode m(spec);
  const auto r = modes::kn_norm(m, kn_options(p));
  o.table.header = {"degree", "lambda", "half_width", "s_kn", "axis_x", "axis_y", "axis_z", "resolution", "candidates"};
  o.table.rows.push_back({cell(spec.degree), cell(r.lambda), cell(r.half_width), cell(r.s_kn), cell(r.axis[0]),
                          cell(r.axis[1]), cell(r.axis[2]), cell(r.resolution), cell(r.candidates)});
  o.results["s_kn"] = r.s_kn;
  o.results["axis"] = r.axis;
  o.results["half_width"] = r.half_width;
  return o;
}

Outcome run_theorem3(const config::ExperimentConfig& cfg) {
  const Json& p = cfg.params;
  Outcome o;
  o.ops = {"modes.make_mode", "measures.make_cantor_measure", "modes.restriction_norm", "modes.kn_norm",
           "modes.theorem3_check"};
  const double alpha = p["alpha"].get<double>();
  const auto nu = measures::make_cantor_measure(alpha, p["depth"].get<int>());
  const auto t = modes::theorem3_check(mode_kind(p["kind"].get<std::string>()), p["degrees"].get<std::vector<int>>(),
                                       nu, alpha, sphere_geodesic(p["geodesic"].get<std::string>()), kn_options(p));
  o.table.header = {"degree", "lambda", "lhs", "s_kn", "bound", "ratio"};
  for (const auto& r : t.rows) {
    o.table.rows.push_back({cell(r.degree), cell(r.lambda), cell(r.lhs), cell(r.skn), cell(r.bound), cell(r.ratio)});
  }
  o.results["spread"] = t.spread;
  return o;
}

Outcome run_exponents(const config::ExperimentConfig& cfg) {
  Outcome o;
  o.ops = {"modes.exponent_table", "modes.delta_exact"};
  const auto rows = modes::exponent_table(doubles(cfg.params["alpha_grid"]));
  o.table.header = {"alpha", "gamma", "delta", "marshall"};
  for (const auto& r : rows) {
    o.table.rows.push_back({cell(r.alpha), cell(r.gamma), std::isnan(r.delta) ? "" : cell(r.delta),
                            std::isnan(r.marshall) ? "" : cell(r.marshall)});
  }
  const auto d1 = modes::delta_exact(modes::ExactRational(1));
  o.results["delta_at_1"] = std::to_string(d1.numerator()) + "/" + std::to_string(d1.denominator());
  o.results["rows"] = rows.size();
  return o;
}

Outcome run_dyadic(const config::ExperimentConfig& cfg) {
  const Json& p = cfg.params;
  Outcome o;
  o.ops = {"modes.dyadic_kernel_check", "modes.partition_of_unity_error"};
  const double lambda = p["lambda"].get<double>(), alpha = p["alpha"].get<double>();
  const auto surface = p["surface"].get<std::string>() == "sphere" ? modes::DyadicSurface::sphere
                                                                   : modes::DyadicSurface::flat;
  std::optional<WeightBundle> b;
  if (p["with_weight"].get<bool>()) {
    o.ops.push_back("measures.build_weight");
    b = cantor_weight(alpha, p["depth"].get<int>(), lambda, p["c_ell"].get<double>(), 0.0);
  }
  const auto r = modes::dyadic_kernel_check(surface, lambda, p["scale"].get<double>(), doubles(p["separations"]),
                                            b ? &b->w : nullptr, alpha);
  o.table.header = {"separation", "scaled", "value", "ratio", "degenerate"};
  for (const auto& s : r.samples) {
    o.table.rows.push_back({cell(s.separation), cell(s.scaled), cell(s.value), cell(s.ratio), cell(s.degenerate)});
  }
  o.results["sup_ratio"] = r.sup_ratio;
  o.results["slope"] = r.slope;
  o.results["weight_ratio"] = r.weight_ratio;
  o.results["partition_of_unity_error"] = modes::partition_of_unity_error(lambda);
  o.flags["degenerate_phase"] = r.flagged;
  return o;
}

Outcome dispatch(const config::ExperimentConfig& cfg) {
  const std::string& e = cfg.experiment;
  if (e == "measure") return run_measure(cfg);
  if (e == "energy") return run_energy(cfg);
  if (e == "kernel") return run_kernel(cfg);
  if (e == "hecke-returns") return run_hecke(cfg);
  if (e == "amplifier") return run_amplifier(cfg);
  if (e == "integrals") return run_integrals(cfg);
  if (e == "beta-scaling") return run_beta(cfg);
  if (e == "rapid-decay") return run_decay(cfg);
  if (e == "restrict") return run_restrict(cfg);
  if (e == "kn") return run_kn(cfg);
  if (e == "theorem3") return run_theorem3(cfg);
  if (e == "exponents") return run_exponents(cfg);
  if (e == "dyadic") return run_dyadic(cfg);
  throw config::ConfigError("experiment", "unknown experiment '" + e + "'");
}

}  // namespace

std::string format_number(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, res.ptr);
}

std::vector<geometry::GroupElement> conjugator_grid(std::size_t count) {
  std::vector<geometry::GroupElement> out;
  if (count == 0) return out;
  out.push_back(geometry::GroupElement::identity());
  for (const auto& g : integrals::unit_ball_grid(count - 1, 1.0)) out.push_back(g);
  return out;
}

std::vector<ShapeRow> lemma51_shape(const hecke::QuatAlgebra& alg, long long n_max, const std::vector<double>& kappas,
                                    const std::vector<geometry::GroupElement>& gs) {
  std::vector<ShapeRow> rows;
  for (long long n = 1; n <= n_max; ++n) {
    for (std::size_t gi = 0; gi < gs.size(); ++gi) {
      for (double kappa : kappas) {
        ShapeRow r;
        r.n = n;
        r.kappa = kappa;
        r.g_index = gi;
        r.count = hecke::hecke_returns(alg, gs[gi], n, kappa);
        const double nd = static_cast<double>(n);
        const double shape = std::pow(nd / kappa, 0.1) * (nd * std::sqrt(kappa) + 1.0);
        r.shape_ratio = static_cast<double>(r.count) / shape;
        rows.push_back(r);
      }
    }
  }
  return rows;
}

WeightBundle cantor_weight(double alpha, int depth, double lambda, double c_ell, double samples_per_wavelength) {
  WeightBundle b;
  b.nu = measures::make_cantor_measure(alpha, depth);
  measures::WeightOptions wo;
  wo.c_ell = c_ell;
  wo.samples_per_wavelength = samples_per_wavelength;
  b.w = measures::build_weight(b.nu, lambda, frequency::make_bump_pair(), wo);
  return b;
}

RunResult run_experiment(const config::ExperimentConfig& cfg) {
  const fs::path dir(cfg.out_dir);
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec) throw ResourceError("cannot create output directory '" + cfg.out_dir + "': " + ec.message());
  OutputSet out;
  Outcome o = dispatch(cfg);
  const Json meta = metadata(cfg);
  write_text(out, dir / (cfg.experiment + ".csv"), csv_text(meta, o.table));
  Json summary = meta;
  summary["ops"] = o.ops;
  summary["results"] = o.results;
  o.flags["converged"] = o.converged;
  summary["flags"] = o.flags;
  write_text(out, dir / (cfg.experiment + "_summary.json"), summary.dump(2) + "\n");
  out.commit();
  RunResult r;
  r.files = out.files();
  r.summary = summary;
  r.converged = o.converged;
  return r;
}

}  // namespace frl::experiments
