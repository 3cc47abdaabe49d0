#include "cli.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <functional>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>

#include <CLI11.hpp>

#include "propsp/compat.hpp"
#include "propsp/error.hpp"
#include "propsp/json.hpp"
#include "propsp/matrix_io.hpp"
#include "propsp/random.hpp"
#include "propsp/schatten.hpp"
#include "propsp/spectra.hpp"
#include "propsp/studies.hpp"

namespace propsp::cli {

namespace {

constexpr int kExitOk = 0;
constexpr int kExitFail = 1;
constexpr int kExitUsage = 2;

/// Running max over trials plus a count of wrong boolean decisions.
struct Tally {
  double max_residual = 0.0;
  int wrong = 0;

  void residual(double r) { max_residual = std::max(max_residual, std::isnan(r) ? kInf : r); }
  void expect(bool ok) { wrong += ok ? 0 : 1; }
};

struct Instance {
  InstanceRng rng;
  SpacePtr ws;
  Index n;

  Instance(std::uint64_t seed, int dim) : rng(seed), n(dim) { ws = make_space(n, rng.pd_weight(n)); }

  Subspace random_subspace(Index r) { return span(ws, rng.gaussian(n, r)); }
  Index random_rank() { return n <= 1 ? 0 : rng.uniform_int(1, static_cast<int>(n) - 1); }
};

void suite_adjoint(Instance& in, Tally& tally) {
  const Operator t(in.ws, in.rng.gaussian(in.n, in.n));
  const Operator s(in.ws, in.rng.gaussian(in.n, in.n));
  const WeightedSpace& ws = *in.ws;
  const Operator tp = plus_adjoint(t);
  double worst = 0.0;
  for (Index j = 0; j < in.n; ++j) {
    const Vector f = Vector::Unit(in.n, j);
    for (Index l = 0; l < in.n; ++l) {
      const Vector g = Vector::Unit(in.n, l);
      worst = std::max(worst, std::abs(inner_L(ws, t.matrix() * f, g) - inner_L(ws, f, tp.matrix() * g)));
    }
  }
  const double tn = la::spectral_norm(t.matrix());
  tally.residual(worst / (tn * ws.weight_norm()));
  tally.residual(la::spectral_norm(plus_adjoint(tp).matrix() - t.matrix()) / tn);
  const Matrix ts_plus = compose(t, s).plus_matrix();
  tally.residual(la::spectral_norm(ts_plus - s.plus_matrix() * t.plus_matrix()) /
                 (tn * la::spectral_norm(s.matrix()) * la::condition_number(ws.weight())));
}

void suite_gz(Instance& in, Tally& tally) {
  const Operator t(in.ws, in.rng.gaussian(in.n, in.n));
  const GzReport r = gz_bound_check(t);
  tally.residual(std::max(0.0, r.lhs - r.rhs));
  tally.expect(r.sharp_holds);
}

void suite_buckholtz(Instance& in, Tally& tally) {
  const Index r = in.random_rank();
  const Subspace s = in.random_subspace(r);
  const Subspace t = in.random_subspace(in.n - r);
  const BuckholtzReport b = buckholtz_verify(s, t);
  tally.residual(std::max(b.res1, b.res2) / b.kappa);
  tally.residual(symm_identity_verify(s, t) / b.kappa);
}

void suite_compat(Instance& in, Tally& tally) {
  const Index r = in.random_rank();
  const Subspace s = in.random_subspace(r);
  const Subspace t1 = in.random_subspace(in.n - r);
  const Subspace t2 = in.random_subspace(in.n - r);
  const CompatProjection q1 = compat_projection(s, t1);
  const CompatProjection q2 = compat_projection(s, t2);
  tally.expect(q1.formula_used && q2.formula_used);
  if (!q1.formula_used || !q2.formula_used) return;
  const double kappa = std::max(q1.kappa_c, q2.kappa_c);
  tally.residual(la::spectral_norm(q1.formula - q2.formula) / kappa);
  tally.residual(q1.residual_cross / q1.kappa_c);
  tally.residual(q2.residual_cross / q2.kappa_c);
  const Matrix& q = q1.q.p.matrix();
  tally.residual(la::spectral_norm(q1.q.p.plus_matrix() - q) / std::max(1.0, la::spectral_norm(q)));
}

void suite_krein(Instance& in, Tally& tally) {
  const Index r = in.random_rank();
  const Subspace s = in.random_subspace(r);
  const Subspace t = in.random_subspace(in.n - r);
  const CompatProjection q = compat_projection(s);
  tally.expect(krein_check(s, q.q.p));
  tally.residual(max_principal_angle(range_of(q.q.p, 1e-8), s));
  tally.residual(max_principal_angle(kernel_of(q.q.p, 1e-8), complement_L(s)));
  // A random companion is generically tilted away from S^⊥∩E.
  const Operator tilted(in.ws, oblique_projection_matrix(s, t));
  tally.expect(!krein_check(s, tilted));
  const Subspace other = in.random_subspace(r);
  const Operator wrong_range(in.ws, oblique_projection_matrix(other, complement_L(other)));
  tally.expect(!krein_check(s, wrong_range));
}

void suite_lemma(Instance& in, Tally& tally) {
  const Index r = in.random_rank();
  const Operator t(in.ws, in.rng.low_rank(in.n, r));
  const NullspacePlusReport np = nullspace_plus_check(t);
  tally.residual(np.kernel_angle);
  tally.residual(np.range_angle);

  // disjoint ranges; kernels either generic or forced to coincide
  const Index r1 = std::max<Index>(1, r / 2);
  const Index r2 = std::max<Index>(1, std::min<Index>(in.n - r1, r - r1));
  const Matrix x1 = in.rng.gaussian(in.n, r1);
  const Matrix x2 = in.rng.gaussian(in.n, r2);
  const Matrix y1 = in.rng.gaussian(in.n, r1);
  const Matrix y2 = in.rng.uniform_int(0, 1) ? Matrix(in.rng.gaussian(in.n, r2)) : Matrix(y1.leftCols(std::min(r1, r2)) * in.rng.gaussian(std::min(r1, r2), r2));
  const Operator t1(in.ws, x1 * y1.adjoint());
  const Operator t2(in.ws, x2 * y2.adjoint());
  const AlgebraicLemmaReport lr = algebraic_lemma_check(t1, t2);
  tally.expect(lr.equivalence_holds);
  tally.expect(lr.remark_holds);
}

void suite_spectra(Instance& in, Tally& tally) {
  const Operator t(in.ws, in.rng.gaussian(in.n, in.n));
  const double scale = 1.0 + la::spectral_norm(t.matrix());
  const Vector e = spectrum(t, Algebra::E).values;
  tally.residual(la::multiset_distance(spectrum(t, Algebra::P).values, e) / scale);
  tally.residual(la::multiset_distance(spectrum(t, Algebra::L).values, e) / scale);
}

using SuiteFn = std::function<void(Instance&, Tally&)>;

const std::map<std::string, SuiteFn>& suites() {
  static const std::map<std::string, SuiteFn> table{
      {"adjoint", suite_adjoint}, {"buckholtz", suite_buckholtz}, {"compat", suite_compat}, {"krein", suite_krein},
      {"lemma", suite_lemma},     {"gz", suite_gz},               {"spectra", suite_spectra},
  };
  return table;
}

/// Output sink: stdout or the --out file.
class Sink {
 public:
  Sink(const std::string& path, std::ostream& fallback) : out_(&fallback) {
    if (!path.empty()) {
      file_.open(path);
      if (!file_) throw Error(ErrorKind::IoFailure, "cannot open '" + path + "' for writing");
      out_ = &file_;
    }
  }
  std::ostream& stream() { return *out_; }

 private:
  std::ofstream file_;
  std::ostream* out_;
};

std::vector<long> parse_list(const std::string& text) {
  std::vector<long> out;
  std::stringstream ss(text);
  std::string cell;
  while (std::getline(ss, cell, ',')) {
    try {
      std::size_t used = 0;
      out.push_back(std::stol(cell, &used));
      if (used != cell.size()) throw std::invalid_argument(cell);
    } catch (const std::exception&) {
      throw Error(ErrorKind::ParseError, "bad integer list '" + text + "'");
    }
  }
  if (out.empty()) throw Error(ErrorKind::ParseError, "empty integer list");
  return out;
}

struct DemoParams {
  std::string z, t, c, d, w, weight, lambda = "0";
  int k = 0;
  double eps = 0.4;
  int m = 64;
};

std::optional<Index> size_hint(int k) { return k > 0 ? std::optional<Index>(k) : std::nullopt; }

SpacePtr weight_space(const std::string& literal, Index n) {
  if (literal.empty()) return euclidean_space(n);
  return make_space(n, parse_matrix_literal(literal, n));
}

void emit_json(Sink& sink, const Json& j) { sink.stream() << j.dump(2) << '\n'; }

Json riesz_report(const DemoParams& p, bool& ok) {
  if (p.t.empty()) throw Error(ErrorKind::InvalidArgument, "--t is required");
  const Matrix tm = parse_matrix_literal(p.t, size_hint(p.k));
  const Operator t(weight_space(p.weight, tm.rows()), tm);
  const RieszResult r = riesz_projection(t, parse_complex(p.lambda), p.eps, p.m);
  ok = r.idempotency_res <= 1e-8 && r.plus_res <= 1e-8;
  Json j = to_json(r);
  j["spectra"] = Json::array({to_json(spectrum(t, Algebra::E)), to_json(spectrum(t, Algebra::L)),
                              to_json(spectrum(t, Algebra::P))});
  j["ok"] = ok;
  return j;
}

int demo_finite_rank(const RunConfig& cfg, Sink& sink) {
  Instance in(cfg.seed, cfg.dim);
  const Index m = std::min<Index>(3, in.n);
  const Matrix f = in.rng.gaussian(in.n, m);
  const Matrix h0 = in.rng.gaussian(in.n, m);
  // rescale h so that H* A F = I
  const Matrix h = h0 * Matrix((h0.adjoint() * in.ws->weight() * f).inverse()).adjoint();
  std::vector<Vector> fl, hl;
  for (Index i = 0; i < m; ++i) {
    fl.emplace_back(f.col(i));
    hl.emplace_back(h.col(i));
  }
  const ProjPair q = finite_rank_proper_projection(in.ws, fl, hl);
  const ProjPair swapped = finite_rank_proper_projection(in.ws, hl, fl);
  const Matrix& qm = q.p.matrix();
  const double idem = la::spectral_norm(qm * qm - qm);
  const double plus_vs_swapped = la::spectral_norm(q.p.plus_matrix() - swapped.p.matrix());
  const double kernel_angle = max_principal_angle(kernel_of(q.p_plus, 1e-8), complement_L(range_of(q.p, 1e-8)));
  const bool ok = idem <= 1e-10 * std::max(1.0, la::spectral_norm(qm)) && q.cross_residual <= 1e-9 * std::max(1.0, la::spectral_norm(qm)) &&
                  plus_vs_swapped <= 1e-9 * std::max(1.0, la::spectral_norm(qm)) && kernel_angle <= 1e-8;
  emit_json(sink, Json{{"demo", "finite_rank"},
                       {"rank", m},
                       {"idempotency_res", idem},
                       {"plus_cross_residual", q.cross_residual},
                       {"plus_vs_swapped", plus_vs_swapped},
                       {"kernel_plus_angle", kernel_angle},
                       {"ok", ok}});
  return ok ? kExitOk : kExitFail;
}

int run_demo(const std::string& name, const DemoParams& p, const RunConfig& cfg, Sink& sink) {
  if (name == "finite_rank") return demo_finite_rank(cfg, sink);
  if (name == "riesz") {
    bool ok = false;
    Json j = riesz_report(p, ok);
    j["demo"] = "riesz";
    emit_json(sink, j);
    return ok ? kExitOk : kExitFail;
  }
  if (name == "cq") {
    if (p.z.empty()) throw Error(ErrorKind::InvalidArgument, "--z is required");
    const Matrix z = parse_matrix_literal(p.z, size_hint(p.k));
    const CqReport r = cq_compat_demo(make_matrix_model(2 * static_cast<int>(z.rows())), z);
    const bool ok = r.compatible_direct && r.complement_residual_direct <= 1e-10;
    Json j = to_json(r);
    j["demo"] = "cq";
    j["ok"] = ok;
    emit_json(sink, j);
    return ok ? kExitOk : kExitFail;
  }
  if (name == "two_companions") {
    if (p.z.empty() || p.t.empty()) throw Error(ErrorKind::InvalidArgument, "--z and --t are required");
    const Matrix z = parse_matrix_literal(p.z, size_hint(p.k));
    const Matrix t = parse_matrix_literal(p.t, z.rows());
    const TwoCompanionsReport r = two_companions_demo(make_matrix_model(2 * static_cast<int>(z.rows())), z, t);
    Json j = to_json(r);
    j["demo"] = "two_companions";
    emit_json(sink, j);
    if (!r.violations.empty()) return kExitUsage;
    return r.ok ? kExitOk : kExitFail;
  }
  if (name == "sylvester") {
    if (p.c.empty() || p.d.empty()) throw Error(ErrorKind::InvalidArgument, "--c and --d are required");
    const Matrix c = parse_matrix_literal(p.c, size_hint(p.k));
    const Matrix d = parse_matrix_literal(p.d, c.rows());
    const Matrix w = p.w.empty() ? Matrix(Matrix::Ones(c.rows(), c.rows())) : parse_matrix_literal(p.w, c.rows());
    const SylvesterResult r = sylvester(c, d, w);
    bool ok = true;
    if (r.solvable)
      ok = r.residual <= 1e-8 * (la::spectral_norm(c) + la::spectral_norm(d)) * std::max(1.0, r.x->norm());
    Json j = to_json(r);
    j["demo"] = "sylvester";
    j["ok"] = ok;
    emit_json(sink, j);
    return ok ? kExitOk : kExitFail;
  }
  throw Error(ErrorKind::InvalidArgument, "unknown demo '" + name + "'");
}

int run_study(const std::string& kind, double beta, const std::string& dims, const std::string& ks, bool control,
              const RunConfig& cfg, Sink& sink) {
  const EmitFormat fmt = cfg.format == "csv" ? EmitFormat::csv : EmitFormat::json;
  bool ok = true;
  std::vector<StudyRow> rows;
  if (kind == "diverge") {
    rows = diverging_vector_study(parse_list(dims), beta, control ? DefiningVector::unit_first : DefiningVector::power_decay);
    for (std::size_t i = 1; i < rows.size(); ++i) {
      if (control) {
        ok = ok && std::abs(rows[i].q_norm - rows[0].q_norm) <= 1e-10;
      } else {
        ok = ok && rows[i].g_enorm > rows[i - 1].g_enorm;
        ok = ok && rows[i].q_norm >= rows[i - 1].q_norm - 1e-12;
      }
    }
  } else if (kind == "symmetry") {
    rows = symmetry_truncation_study(parse_list(ks));
    for (const StudyRow& r : rows)
      for (const auto& [name, value] : r.aux)
        if (name == "pair_margin" || name == "op_margin") ok = ok && value <= 1e-12;
  } else {
    throw Error(ErrorKind::InvalidArgument, "unknown study '" + kind + "'");
  }
  emit(rows, fmt, sink.stream());
  return ok ? kExitOk : kExitFail;
}

}  // namespace

SuiteSummary run_suite(const std::string& suite, const RunConfig& cfg) {
  const auto it = suites().find(suite);
  if (it == suites().end()) throw Error(ErrorKind::InvalidArgument, "unknown suite '" + suite + "'");
  if (cfg.dim < 2) throw Error(ErrorKind::InvalidArgument, "--dim must be at least 2");
  if (cfg.trials < 1) throw Error(ErrorKind::InvalidArgument, "--trials must be positive");
  Tally tally;
  for (int i = 0; i < cfg.trials; ++i) {
    Instance in(trial_seed(cfg.seed, static_cast<std::uint64_t>(i)), cfg.dim);
    try {
      it->second(in, tally);
    } catch (const Error& e) {
      if (e.kind() != ErrorKind::PostconditionFailed) throw;
      tally.expect(false);
    }
  }
  return {suite, cfg.trials, tally.max_residual, tally.wrong == 0 && tally.max_residual <= cfg.tol};
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Proper and compatible subspaces in finite two-norm models", "propsp"};
  app.fallthrough();
  app.require_subcommand(1);

  RunConfig cfg;
  app.add_option("--seed", cfg.seed, "seed for every random instance");
  app.add_option("--dim", cfg.dim, "ambient dimension of random instances");
  app.add_option("--trials", cfg.trials, "number of random instances");
  app.add_option("--tol", cfg.tol, "pass threshold for normalized residuals");
  app.add_option("--format", cfg.format, "output format")->check(CLI::IsMember({"json", "csv"}));
  app.add_option("--out", cfg.out, "write output to this path instead of stdout");

  std::string suite;
  auto* check = app.add_subcommand("check", "run a randomized identity suite");
  check->add_option("suite", suite, "suite name")->required()->check(CLI::IsMember(suite_names()));

  std::string demo_name;
  DemoParams p;
  auto* demo = app.add_subcommand("demo", "run a worked example");
  demo->add_option("name", demo_name, "demo name")
      ->required()
      ->check(CLI::IsMember({"finite_rank", "riesz", "cq", "two_companions", "sylvester"}));
  auto add_demo_params = [&p](CLI::App* sub) {
    sub->add_option("--t", p.t, "operator (riesz) or symmetry (two_companions) literal");
    sub->add_option("--lambda", p.lambda, "spectral point, e.g. 1 or 1+2i");
    sub->add_option("--eps", p.eps, "contour radius");
    sub->add_option("--m", p.m, "quadrature nodes");
    sub->add_option("--weight", p.weight, "weight matrix literal (default identity)");
  };
  add_demo_params(demo);
  demo->add_option("--z", p.z, "matrix literal for z");
  demo->add_option("--k", p.k, "block size for scalar literals");
  demo->add_option("--c", p.c, "Sylvester left coefficient");
  demo->add_option("--d", p.d, "Sylvester right coefficient");
  demo->add_option("--w", p.w, "Sylvester right-hand side (default all ones)");

  std::string study_kind, dims = "8,16,32,64", ks = "2,4,8";
  double beta = 0.5;
  bool control = false;
  auto* study = app.add_subcommand("study", "run a truncation study");
  study->add_option("kind", study_kind, "study kind")->required()->check(CLI::IsMember({"diverge", "symmetry"}));
  study->add_option("--beta", beta, "decay exponent of the defining vector");
  study->add_option("--dims", dims, "comma-separated dimensions");
  study->add_option("--ks", ks, "comma-separated even block sizes");
  study->add_flag("--control", control, "use g = e1 instead of the decaying vector");

  auto* riesz = app.add_subcommand("riesz", "Riesz projection and the three spectra of an operator");
  add_demo_params(riesz);
  riesz->add_option("--k", p.k, "size for scalar literals");

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    Sink sink(cfg.out, out);
    if (check->parsed()) {
      const SuiteSummary s = run_suite(suite, cfg);
      if (cfg.format == "csv") {
        sink.stream() << "suite,trials,max_residual,pass\n"
                      << s.suite << ',' << s.trials << ',' << std::setprecision(17) << s.max_residual << ','
                      << (s.pass ? "true" : "false") << '\n';
      } else {
        sink.stream() << Json{{"suite", s.suite}, {"trials", s.trials}, {"max_residual", json_number(s.max_residual)},
                              {"pass", s.pass}}
                             .dump()
                      << '\n';
      }
      return s.pass ? kExitOk : kExitFail;
    }
    if (demo->parsed()) return run_demo(demo_name, p, cfg, sink);
    if (study->parsed()) return run_study(study_kind, beta, dims, ks, control, cfg, sink);
    if (riesz->parsed()) {
      bool ok = false;
      emit_json(sink, riesz_report(p, ok));
      return ok ? kExitOk : kExitFail;
    }
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return e.is_usage_error() ? kExitUsage : kExitFail;
  }
  return kExitUsage;
}

}  // namespace propsp::cli
