#pragma once

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <iostream>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <type_traits>
#include <vector>

#include "CLI11.hpp"
#include "twinrep/twinrep.hpp"

namespace twinrep::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitRelationsFail = 1;
inline constexpr int kExitError = 2;
inline constexpr int kExitReducible = 10;

namespace detail {

struct UsageError : Error {
  using Error::Error;
};

class ToleranceGuard {
 public:
  ToleranceGuard() : saved_(Tolerance::standard()) {}
  ~ToleranceGuard() { Tolerance::set_standard(saved_.eps); }
  ToleranceGuard(const ToleranceGuard&) = delete;
  ToleranceGuard& operator=(const ToleranceGuard&) = delete;

 private:
  Tolerance saved_;
};

inline void apply_env_tolerance() {
  const char* env = std::getenv("TWINREP_EPS");
  if (env == nullptr || *env == '\0') return;
  char* end = nullptr;
  const double eps = std::strtod(env, &end);
  if (end == env || *end != '\0' || !(eps > 0.0) || !std::isfinite(eps)) {
    throw UsageError(std::string("TWINREP_EPS must be a positive number, got '") + env + "'");
  }
  Tolerance::set_standard(eps);
}

inline std::vector<std::string> split_list(const std::string& text) {
  std::vector<std::string> out;
  std::string item;
  std::istringstream in(text);
  while (std::getline(in, item, ',')) {
    item.erase(std::remove_if(item.begin(), item.end(), [](unsigned char ch) { return std::isspace(ch); }),
               item.end());
    if (!item.empty()) out.push_back(item);
  }
  return out;
}

/// Named scalar inputs of one invocation, parsed once so the backend can be
/// chosen before any arithmetic happens.
class Inputs {
 public:
  void add(const std::string& name, const std::string& text) {
    try {
      values_.emplace_back(name, parse_scalar(text));
    } catch (const ParseError& e) {
      throw ParseError("--" + name + ": " + e.what());
    }
  }

  bool all_exact() const {
    return std::all_of(values_.begin(), values_.end(),
                       [](const auto& nv) { return std::holds_alternative<GaussianRational>(nv.second); });
  }

  template <Scalar F>
  F get(const std::string& name) const {
    for (const auto& [key, value] : values_) {
      if (key == name) return convert<F>(name, value);
    }
    throw UsageError("missing --" + name);
  }

  template <Scalar F>
  std::vector<F> get_all(const std::string& prefix) const {
    std::vector<F> out;
    for (const auto& [key, value] : values_) {
      if (key.rfind(prefix, 0) == 0) out.push_back(convert<F>(key, value));
    }
    return out;
  }

 private:
  template <Scalar F>
  static F convert(const std::string& name, const AnyScalar& value) {
    if constexpr (F::is_exact) {
      if (const auto* q = std::get_if<GaussianRational>(&value)) return *q;
      throw UsageError("--" + name + " is a float value but the exact backend was requested");
    } else {
      return std::visit([](const auto& x) { return scalar_cast<ComplexFloat>(x); }, value);
    }
  }

  std::vector<std::pair<std::string, AnyScalar>> values_;
};

/// Calls body(std::type_identity<F>{}) with the selected backend.
template <class Body>
int dispatch(const std::string& backend, const Inputs& inputs, Body&& body) {
  bool exact = inputs.all_exact();
  if (backend == "exact") {
    if (!exact) throw UsageError("exact backend requested but some inputs are float");
  } else if (backend == "float") {
    exact = false;
  }
  if (exact) return body(std::type_identity<GaussianRational>{});
  return body(std::type_identity<ComplexFloat>{});
}

inline json gap_json(double gap) { return std::isfinite(gap) ? json(gap) : json(nullptr); }

template <Scalar F>
json generators_json(const std::vector<GeneratorImage<F>>& images) {
  json arr = json::array();
  for (const auto& g : images) arr.push_back({{"k", g.index}, {"matrix", to_json(g.matrix)}});
  return arr;
}

struct RepArgs {
  int family = 1;
  int n = 0;
  std::string a, b, c, sign = "1";
};

inline void add_rep_options(CLI::App* cmd, RepArgs& r, bool with_family) {
  if (with_family) cmd->add_option("--family", r.family, "representation family")->check(CLI::IsMember({1, 2, 3}));
  cmd->add_option("--n", r.n, "number of strands")->required();
  cmd->add_option("--a", r.a, "parameter a");
  cmd->add_option("--b", r.b, "parameter b (nonzero)");
  if (with_family) {
    cmd->add_option("--c", r.c, "family 2 parameter c");
    cmd->add_option("--sign", r.sign, "family 2 sign")->check(CLI::IsMember({"1", "+1", "-1"}));
  }
}

inline Inputs rep_inputs(const RepArgs& r) {
  Inputs in;
  if (r.family == 1) {
    if (r.a.empty()) throw UsageError("family 1 requires --a");
    if (r.b.empty()) throw UsageError("family 1 requires --b");
    in.add("a", r.a);
    in.add("b", r.b);
  } else if (r.family == 2) {
    in.add("c", r.c.empty() ? "0" : r.c);
  }
  return in;
}

template <Scalar F>
RepSpec<F> rep_spec(const RepArgs& r, const Inputs& in) {
  RepSpec<F> spec;
  spec.n = r.n;
  spec.family = static_cast<Family>(r.family);
  if (r.family == 1) {
    spec.a = in.get<F>("a");
    spec.b = in.get<F>("b");
  } else if (r.family == 2) {
    spec.c = in.get<F>("c");
    spec.sign = r.sign == "-1" ? -1 : 1;
  }
  spec.validate();
  return spec;
}

inline Inputs ab_inputs(const std::string& a, const std::string& b) {
  if (a.empty()) throw UsageError("missing --a");
  if (b.empty()) throw UsageError("missing --b");
  Inputs in;
  in.add("a", a);
  in.add("b", b);
  return in;
}

inline void emit(std::ostream& out, const json& j) { out << j.dump(2) << '\n'; }

}  // namespace detail

/// Runs one command line (without the program name). JSON and CSV go to
/// `out`, diagnostics to `err`.
inline int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  using namespace detail;
  ToleranceGuard guard;

  CLI::App app{"Homogeneous 2-local representations of twin groups"};
  app.require_subcommand(1);
  std::string backend = "auto";
  const auto backend_check = CLI::IsMember({"auto", "exact", "float"});

  // gen
  RepArgs gen_args;
  int gen_k = 0;
  bool gen_all = false;
  std::string gen_out = "json";
  auto* gen = app.add_subcommand("gen", "generator images of a representation");
  add_rep_options(gen, gen_args, true);
  auto* gen_k_opt = gen->add_option("--k", gen_k, "generator index (1-based)");
  auto* gen_all_opt = gen->add_flag("--all", gen_all, "all generators");
  gen_k_opt->excludes(gen_all_opt);
  gen->add_option("--out", gen_out)->check(CLI::IsMember({"json"}));
  gen->add_option("--backend", backend)->check(backend_check);

  // verify
  RepArgs ver_args;
  std::string ver_block;
  auto* ver = app.add_subcommand("verify", "check the twin group relations");
  add_rep_options(ver, ver_args, true);
  ver->add_option("--block", ver_block, "explicit 2x2 block m11,m12,m21,m22");
  ver->add_option("--backend", backend)->check(backend_check);

  // reduce
  RepArgs red_args;
  std::string red_basis = "std";
  std::string red_out = "json";
  auto* red = app.add_subcommand("reduce", "quotient by the invariant line");
  add_rep_options(red, red_args, false);
  red->add_option("--basis", red_basis)->check(CLI::IsMember({"std", "B"}));
  red->add_option("--out", red_out)->check(CLI::IsMember({"json"}));
  red->add_option("--backend", backend)->check(backend_check);

  // delta
  RepArgs del_args;
  std::string del_mode = "both";
  auto* del = app.add_subcommand("delta", "the determinant Delta");
  add_rep_options(del, del_args, false);
  del->add_option("--mode", del_mode)->check(CLI::IsMember({"closed", "direct", "both"}));
  del->add_option("--backend", backend)->check(backend_check);

  // decide
  RepArgs dec_args;
  bool dec_witness = false;
  auto* dec = app.add_subcommand("decide", "irreducibility verdict for the reduced representation");
  add_rep_options(dec, dec_args, false);
  dec->add_flag("--emit-witness", dec_witness);
  dec->add_option("--backend", backend)->check(backend_check);

  // roots
  int roots_n = 0;
  bool roots_csv = false;
  auto* roots = app.add_subcommand("roots", "nonzero roots of the criterion polynomial");
  roots->add_option("--n", roots_n)->required();
  roots->add_flag("--csv", roots_csv);
  roots->add_option("--backend", backend)->check(backend_check);

  // oracle
  RepArgs orc_args;
  bool orc_reduced = false;
  auto* orc = app.add_subcommand("oracle", "matrix algebra dimension and invariant lines");
  add_rep_options(orc, orc_args, true);
  orc->add_flag("--reduced", orc_reduced, "use the (n-1)-dimensional reduced family 1");
  orc->add_option("--backend", backend)->check(backend_check);

  // sweep
  int sw_n = 0, sw_n_min = 0, sw_n_max = 0;
  std::string sw_b = "1";
  std::optional<std::string> sw_list;
  std::string sw_exclude;
  std::string sw_re_min, sw_re_max, sw_im_min = "0", sw_im_max = "0";
  int sw_re_steps = 0, sw_im_steps = 1;
  double sw_radius = 1.0;
  int sw_circle = 0;
  bool sw_oracle = false;
  std::size_t sw_cap = kDefaultSweepCap;
  unsigned sw_jobs = 1;
  auto* sw = app.add_subcommand("sweep", "decide over a grid of parameters, CSV output");
  auto* sw_n_opt = sw->add_option("--n", sw_n);
  auto* sw_nmin_opt = sw->add_option("--n-min", sw_n_min);
  auto* sw_nmax_opt = sw->add_option("--n-max", sw_n_max);
  sw_n_opt->excludes(sw_nmin_opt)->excludes(sw_nmax_opt);
  sw->add_option("--b", sw_b);
  sw->add_option("--a-list", sw_list, "comma separated a values");
  sw->add_option("--exclude", sw_exclude, "comma separated a values to skip");
  sw->add_option("--re-min", sw_re_min);
  sw->add_option("--re-max", sw_re_max);
  sw->add_option("--re-steps", sw_re_steps);
  sw->add_option("--im-min", sw_im_min);
  sw->add_option("--im-max", sw_im_max);
  sw->add_option("--im-steps", sw_im_steps);
  sw->add_option("--circle-radius", sw_radius);
  sw->add_option("--circle-count", sw_circle);
  sw->add_flag("--with-oracle", sw_oracle);
  sw->add_option("--max-points", sw_cap);
  sw->add_option("--jobs", sw_jobs);
  sw->add_option("--backend", backend)->check(backend_check);

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitError;
  }

  try {
    apply_env_tolerance();

    if (gen->parsed()) {
      if (!gen_all && gen_k == 0) throw UsageError("gen needs --k K or --all");
      const Inputs in = rep_inputs(gen_args);
      return dispatch(backend, in, [&](auto tag) {
        using F = typename decltype(tag)::type;
        const RepSpec<F> spec = rep_spec<F>(gen_args, in);
        std::vector<GeneratorImage<F>> images;
        if (gen_all) {
          images = build_generators(spec);
        } else {
          images.push_back(build_generator(spec, gen_k));
        }
        emit(out, {{"family", gen_args.family},
                   {"n", gen_args.n},
                   {"backend", std::string(F::backend_name)},
                   {"generators", generators_json(images)}});
        return kExitOk;
      });
    }

    if (ver->parsed()) {
      Inputs in;
      std::vector<std::string> entries;
      if (!ver_block.empty()) {
        entries = split_list(ver_block);
        if (entries.size() != 4) throw UsageError("--block needs exactly four entries");
        for (std::size_t i = 0; i < 4; ++i) in.add("m" + std::to_string(i), entries[i]);
      } else {
        in = rep_inputs(ver_args);
      }
      return dispatch(backend, in, [&](auto tag) {
        using F = typename decltype(tag)::type;
        std::vector<GeneratorImage<F>> images;
        json doc = {{"n", ver_args.n}, {"backend", std::string(F::backend_name)}};
        if (!ver_block.empty()) {
          if (ver_args.n < 2) throw DomainError("n must be at least 2");
          const auto m = in.get_all<F>("m");
          const Matrix<F> block{{m[0], m[1]}, {m[2], m[3]}};
          for (int k = 1; k <= ver_args.n - 1; ++k) images.push_back({k, embed_block(block, ver_args.n, k)});
          doc["block_class"] = to_string(classify_block(block).kind);
        } else {
          images = build_generators(rep_spec<F>(ver_args, in));
          doc["family"] = ver_args.family;
        }
        const RelationReport report = verify_relations(images);
        json failures = json::array();
        std::string summary;
        for (const auto& f : report.failures) {
          failures.push_back(f.describe());
          summary += (summary.empty() ? "" : "; ") + f.describe();
        }
        doc["relations_hold"] = report.ok();
        doc["failures"] = failures;
        doc["report"] = report.ok() ? "all relations hold" : summary;
        emit(out, doc);
        if (!report.ok()) err << report.failures.size() << " relation(s) fail\n";
        return report.ok() ? kExitOk : kExitRelationsFail;
      });
    }

    if (red->parsed()) {
      const Inputs in = ab_inputs(red_args.a, red_args.b);
      return dispatch(backend, in, [&](auto tag) {
        using F = typename decltype(tag)::type;
        const F a = in.get<F>("a");
        const F b = in.get<F>("b");
        json doc = {{"n", red_args.n}, {"basis", red_basis}, {"backend", std::string(F::backend_name)}};
        if (red_basis == "std") {
          const ReductionBundle<F> r = make_reduction(red_args.n, a, b);
          doc["v"] = to_json(r.v);
          doc["Q"] = to_json(r.q.forward);
          doc["Q_inverse"] = to_json(r.q.inverse);
          doc["generators"] = generators_json(r.reduced);
        } else {
          const BasisBBundle<F> r = make_basis_b(red_args.n, a, b);
          doc["w"] = to_json(r.w);
          doc["P"] = to_json(r.p.forward);
          doc["P_inverse"] = to_json(r.p.inverse);
          json s = json::array();
          for (std::size_t j = 0; j < r.s.size(); ++j) s.push_back({{"j", j + 1}, {"matrix", to_json(r.s[j])}});
          doc["S"] = s;
        }
        emit(out, doc);
        return kExitOk;
      });
    }

    if (del->parsed()) {
      const Inputs in = ab_inputs(del_args.a, del_args.b);
      return dispatch(backend, in, [&](auto tag) {
        using F = typename decltype(tag)::type;
        const F a = in.get<F>("a");
        const F b = in.get<F>("b");
        json doc = {{"n", del_args.n}, {"mode", del_mode}, {"backend", std::string(F::backend_name)}};
        std::optional<F> closed, direct;
        if (del_mode != "direct") {
          closed = delta(del_args.n, a, b);
          doc["closed"] = to_json(*closed);
          doc["closed_text"] = format_scalar(*closed);
        }
        if (del_mode != "closed") {
          direct = delta_direct(del_args.n, a, b);
          doc["direct"] = to_json(*direct);
          doc["direct_text"] = format_scalar(*direct);
        }
        if (closed && direct) doc["agree"] = approx_equal(*closed, *direct);
        emit(out, doc);
        return kExitOk;
      });
    }

    if (dec->parsed()) {
      const Inputs in = ab_inputs(dec_args.a, dec_args.b);
      return dispatch(backend, in, [&](auto tag) {
        using F = typename decltype(tag)::type;
        const Verdict<F> v = decide(dec_args.n, in.get<F>("a"), in.get<F>("b"));
        json diag = {{"witness_verified", v.diagnostics.witness_verified}};
        if (v.diagnostics.rank_gap) diag["rank_gap"] = gap_json(*v.diagnostics.rank_gap);
        if (v.diagnostics.residual) diag["residual"] = *v.diagnostics.residual;
        json doc = {{"n", dec_args.n},
                    {"backend", std::string(F::backend_name)},
                    {"status", to_string(v.status)},
                    {"reason", to_string(v.reason)},
                    {"diagnostics", diag}};
        if (dec_witness && v.witness) doc["witness"] = to_json(*v.witness);
        emit(out, doc);
        if (v.reducible() && !v.diagnostics.witness_verified) err << "warning: witness failed verification\n";
        return v.reducible() ? kExitReducible : kExitOk;
      });
    }

    if (roots->parsed()) {
      if (backend == "exact") throw UsageError("roots are computed in floating point only");
      const CriterionRoots r = roots_of_P(roots_n);
      if (roots_csv) {
        out << "n,re,im,residual\n";
        for (const auto& root : r.roots) {
          out << roots_n << ',' << twinrep::detail::format_double(root.value.real()) << ',' << twinrep::detail::format_double(root.value.imag())
              << ',' << twinrep::detail::format_double(root.residual) << '\n';
        }
      } else {
        json arr = json::array();
        for (const auto& root : r.roots) {
          arr.push_back({{"re", root.value.real()}, {"im", root.value.imag()}, {"residual", root.residual}});
        }
        emit(out, {{"n", roots_n},
                   {"polynomial", cleared_poly(roots_n).poly.to_string()},
                   {"zero_multiplicity", r.zero_multiplicity},
                   {"iterations", r.iterations},
                   {"worst_residual", r.worst_residual},
                   {"roots", arr}});
      }
      return kExitOk;
    }

    if (orc->parsed()) {
      if (orc_reduced && orc_args.family != 1) throw UsageError("--reduced applies to family 1 only");
      const Inputs in = rep_inputs(orc_args);
      return dispatch(backend, in, [&](auto tag) {
        using F = typename decltype(tag)::type;
        const RepSpec<F> spec = rep_spec<F>(orc_args, in);
        const auto images =
            matrices_of(orc_reduced ? reduced_generators(spec.n, spec.a, spec.b) : build_generators(spec));
        const AlgebraBasis<F> alg = algebra_closure(std::span<const Matrix<F>>(images));
        json lines = json::array();
        for (const auto& l : common_eigenlines(images)) lines.push_back(to_json(l.basis().front()));
        const bool irreducible = alg.dimension() == alg.full_dimension();
        json doc = {{"family", orc_args.family},
                    {"reduced", orc_reduced},
                    {"n", orc_args.n},
                    {"backend", std::string(F::backend_name)},
                    {"algebra_dim", alg.dimension()},
                    {"full_dim", alg.full_dimension()},
                    {"irreducible", irreducible},
                    {"eigenlines", lines}};
        if constexpr (!F::is_exact) doc["rank_gap"] = gap_json(alg.stats.gap());
        emit(out, doc);
        return irreducible ? kExitOk : kExitReducible;
      });
    }

    if (sw->parsed()) {
      int n_min = sw_n, n_max = sw_n;
      if (sw_n_opt->count() == 0) {
        if (sw_nmin_opt->count() == 0 || sw_nmax_opt->count() == 0) {
          throw UsageError("sweep needs --n or both --n-min and --n-max");
        }
        n_min = sw_n_min;
        n_max = sw_n_max;
      }
      const bool rect = sw_re_steps > 0;
      const bool circle = sw_circle > 0;
      if (static_cast<int>(sw_list.has_value()) + static_cast<int>(rect) + static_cast<int>(circle) != 1) {
        throw UsageError("sweep needs exactly one grid: --a-list, --re-min/--re-max/--re-steps, or --circle-count");
      }
      if (rect && (sw_re_min.empty() || sw_re_max.empty())) throw UsageError("rectangle grid needs --re-min and --re-max");
      if (rect && sw_im_steps < 1) throw UsageError("--im-steps must be >= 1");

      Inputs in;
      in.add("b", sw_b);
      if (sw_list) {
        const auto items = split_list(*sw_list);
        for (std::size_t i = 0; i < items.size(); ++i) in.add("pt" + std::to_string(i), items[i]);
      }
      if (rect) {
        in.add("re-min", sw_re_min);
        in.add("re-max", sw_re_max);
        in.add("im-min", sw_im_min);
        in.add("im-max", sw_im_max);
      }
      const auto excluded = split_list(sw_exclude);
      for (std::size_t i = 0; i < excluded.size(); ++i) in.add("ex" + std::to_string(i), excluded[i]);
      std::string chosen = backend;
      if (circle) {
        if (backend == "exact") throw UsageError("circle grids need the float backend");
        chosen = "float";
      }
      return dispatch(chosen, in, [&](auto tag) {
        using F = typename decltype(tag)::type;
        SweepSpec<F> spec;
        spec.n_min = n_min;
        spec.n_max = n_max;
        spec.b = in.get<F>("b");
        spec.with_oracle = sw_oracle;
        spec.max_points = sw_cap;
        spec.jobs = sw_jobs;
        std::vector<F> points;
        if (sw_list) points = in.get_all<F>("pt");
        if (rect) {
          points = rectangle_grid(in.get<F>("re-min"), in.get<F>("re-max"), sw_re_steps, in.get<F>("im-min"),
                                  in.get<F>("im-max"), sw_im_steps);
        }
        if constexpr (!F::is_exact) {
          if (circle) points = circle_grid(sw_radius, sw_circle);
        }
        const auto skip = in.get_all<F>("ex");
        for (const auto& p : points) {
          const bool drop = std::any_of(skip.begin(), skip.end(), [&](const F& x) { return approx_equal(p, x); });
          if (!drop) spec.points.push_back(p);
        }
        write_sweep_csv(out, run_sweep(spec), sw_oracle);
        return kExitOk;
      });
    }
  } catch (const UsageError& e) {
    err << "usage error: " << e.what() << '\n';
    return kExitError;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitError;
  }
  return kExitError;
}

}  // namespace twinrep::cli
