#pragma once

#include <chrono>
#include <cstdlib>
#include <iomanip>
#include <optional>
#include <ostream>
#include <string>

#include "lcomm/fuzz.hpp"

namespace lcomm::cli {

using io::json;

enum Exit : int { kOk = 0, kViolation = 1, kInputError = 2 };

enum class Mutant { none, skip_condition_iv, corrupt_fixture };

inline constexpr std::uint64_t kDefaultSeed = 42;

struct AnalyzeArgs {
  std::string operator_path;
  std::string subspace_path;
  std::optional<std::string> operator_b_path;
  std::string out_path;
  std::optional<std::uint64_t> seed;
  std::string mutant;
};

struct LatticeArgs {
  std::string operator_path;
  std::optional<std::string> spectrum_path;
  std::string out_path;
  std::optional<std::uint64_t> seed;
};

struct FuzzArgs {
  std::optional<std::uint64_t> seed;
  long long cases = 50;
  long long dim_max = 4;
  std::optional<std::string> out_path;
  std::string mutant;
};

struct ExamplesArgs {
  bool verbose = false;
  std::string mutant;
};

namespace detail {

inline std::string one_line(std::string s) {
  for (char& c : s)
    if (c == '\n' || c == '\r') c = ' ';
  return s;
}

inline Mutant parse_mutant(const std::string& s) {
  if (s.empty()) return Mutant::none;
  if (s == "skip-condition-iv") return Mutant::skip_condition_iv;
  if (s == "corrupt-fixture") return Mutant::corrupt_fixture;
  throw Error(ErrorKind::ParseError, "unknown mutant '" + s + "'");
}

/// --seed wins; LCOMM_SEED only fills in when --seed is absent.
inline std::uint64_t effective_seed(const std::optional<std::uint64_t>& flag) {
  if (flag) return *flag;
  if (const char* env = std::getenv("LCOMM_SEED"); env && *env) {
    const std::string s(env);
    if (s.find_first_not_of("0123456789") != std::string::npos || s.size() > 20)
      throw Error(ErrorKind::ParseError, "LCOMM_SEED must be a non-negative integer");
    try {
      return std::stoull(s);
    } catch (const std::exception&) {
      throw Error(ErrorKind::ParseError, "LCOMM_SEED is out of range");
    }
  }
  return kDefaultSeed;
}

struct Loaded {
  json doc;
  std::string digest;
};

inline Loaded load(const std::string& path, const std::string& what) {
  const std::string text = io::read_file(path);
  return {io::parse_text(text, what + " '" + path + "'"), io::fnv1a64(text)};
}

inline json header(std::string_view command, std::uint64_t seed) {
  return json{{"schema_version", io::kSchemaVersion},
              {"tool", {{"name", io::kToolName}, {"version", io::kToolVersion}}},
              {"command", command},
              {"seed", seed},
              {"prng", SplitMix64::name}};
}

inline double elapsed_ms(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
}

/// Maps library errors onto the exit-code contract; diagnostics are one line on `err`.
template <class Fn>
int guarded(std::ostream& err, Fn&& fn) {
  try {
    return fn();
  } catch (const Error& e) {
    if (e.kind() == ErrorKind::InternalInconsistency) {
      err << "lcomm: property violation: " << one_line(e.what()) << "\n";
      return kViolation;
    }
    err << "lcomm: input error: " << one_line(e.what()) << "\n";
    return kInputError;
  } catch (const json::exception& e) {
    err << "lcomm: input error: " << one_line(e.what()) << "\n";
    return kInputError;
  } catch (const std::exception& e) {
    err << "lcomm: input error: " << one_line(e.what()) << "\n";
    return kInputError;
  }
}

template <Field F>
json verdict_json(const AlgebraVerdict& v) {
  return json{{"is_algebra", v.is_algebra},
              {"product_closed", v.via_product_closure},
              {"cm_within_girder", v.via_cm_subset_girder},
              {"cm_equals_girder", v.via_cm_equals_girder},
              {"girder_invariant", v.via_girder_invariant},
              {"conditions_agree", v.consistent}};
}

template <Field F>
json analyze_body(const json& ja, const json& jm, const json* jb, AlgebraStatusOptions opts, std::ostream& err) {
  const Matrix<F> a = io::matrix_from_json<F>(ja);
  require_square(a, "operator");
  const auto parsed = io::subspace_from_json<F>(jm);
  const Subspace<F>& m = parsed.space;
  require(m.ambient_dim() == a.rows(), ErrorKind::DimensionMismatch,
          "subspace ambient_dim " + std::to_string(m.ambient_dim()) + " differs from operator size " +
              std::to_string(a.rows()));
  if (!parsed.was_canonical) err << "lcomm: warning: subspace basis was not in reduced column echelon form; canonicalized\n";

  const auto an = analyze_algebra(a, m, opts);
  const auto closure = ultrainvariant_closure(a, m);
  json body{{"n", a.rows()},
            {"subspace", io::subspace_to_json(m)},
            {"dims",
             {{"subspace", m.dim()},
              {"commutant", commutant(a).dim()},
              {"local_commutant", an.local.dim()},
              {"alg_of_subspace", alg_of(m).dim()},
              {"cm_subspace", an.cm.dim()},
              {"girder", an.girder.dim()}}},
            {"girder", io::subspace_to_json(an.girder)},
            {"girder_equals_subspace", an.girder == m},
            {"scalar_short_circuit", an.verdict.is_scalar_operator},
            {"algebra_verdict", verdict_json<F>(an.verdict)},
            {"invariant", is_invariant(a, m)},
            {"ultrainvariant", an.verdict.ultrainvariant},
            {"ultrainvariant_via_girder", an.verdict.ultrainvariant_via_girder},
            {"closure", io::subspace_to_json(closure)}};
  if (jb) {
    const Matrix<F> b = io::matrix_from_json<F>(*jb);
    require_square(b, "operator-b");
    const auto local = intertwiner_space(a, b, m);
    body["intertwiner"] = json{{"b_size", b.rows()},
                               {"local_dim", local.dim()},
                               {"global_dim", intertwiners(a, b).dim()},
                               {"girder", io::subspace_to_json(girder_of(a, b, local))},
                               {"left_module_algebra_dim", left_module_algebra(a, b, m).dim()}};
  }
  return body;
}

template <Field F>
json lattice_json(const UltraLattice<F>& l) {
  json members = json::array();
  for (const auto& mem : l.members)
    members.push_back(json{{"exponents", mem.exponents},
                           {"dim", mem.space.dim()},
                           {"verified_ultrainvariant", mem.verified_ultrainvariant},
                           {"basis", io::subspace_to_json(mem.space)["basis"]}});
  json out{{"member_count", l.members.size()},
           {"orders", l.orders},
           {"closed_under_meet_join", l.closed_under_meet_join},
           {"members", std::move(members)}};
  if (!l.image_checks.empty()) {
    json checks = json::array();
    for (const auto& c : l.image_checks)
      checks.push_back(json{{"j", c.j},
                            {"image_dim", c.image.dim()},
                            {"image_equals_kernel", c.equals_kernel},
                            {"image_ultrainvariant", c.image_ultrainvariant},
                            {"closure_is_kernel", c.closure_is_kernel}});
    out["image_checks"] = std::move(checks);
  }
  return out;
}

template <Field F>
std::pair<json, bool> lattice_body(const json& ja, const json* jspec) {
  const Matrix<F> a = io::matrix_from_json<F>(ja);
  require_square(a, "operator");
  const Poly<F> q = minimal_polynomial(a);
  // q_A is monic, so A is nilpotent iff every lower coefficient vanishes.
  const bool nilpotent = std::all_of(q.begin(), q.end() - 1, [](const F& c) { return is_zero(c); });
  json body{{"n", a.rows()}, {"minimal_polynomial", poly_to_string(q)}};
  if (nilpotent && !jspec) {
    const auto l = nilpotent_ultra_lattice(a);
    body["path"] = "nilpotent";
    body["lattice"] = lattice_json(l);
    bool ok = l.closed_under_meet_join;
    for (const auto& c : l.image_checks) ok = ok && (c.equals_kernel || (!c.image_ultrainvariant && c.closure_is_kernel));
    return {std::move(body), ok};
  }
  SpectrumSpec<F> spec;
  if (jspec) spec = io::spectrum_from_json<F>(*jspec);
  else if constexpr (is_exact_v<F>) spec = exact_spectrum(a);
  else spec = float_spectrum(a);
  const auto l = algebraic_ultra_lattice(a, spec);
  std::size_t expected = 1;
  for (auto o : l.orders) expected *= o + 1;
  body["path"] = "algebraic";
  body["spectrum_source"] = to_string(spec.source);
  body["spectrum"] = io::spectrum_to_json(spec);
  body["lattice"] = lattice_json(l);
  body["expected_member_count"] = expected;
  return {std::move(body), l.closed_under_meet_join && l.members.size() == expected};
}

}  // namespace detail

inline int cmd_analyze(const AnalyzeArgs& args, std::ostream& out, std::ostream& err) {
  return detail::guarded(err, [&] {
    const auto t0 = std::chrono::steady_clock::now();
    const Mutant mutant = detail::parse_mutant(args.mutant);
    const std::uint64_t seed = detail::effective_seed(args.seed);
    const auto a = detail::load(args.operator_path, "operator file");
    const auto m = detail::load(args.subspace_path, "subspace file");
    std::optional<detail::Loaded> b;
    if (args.operator_b_path) b = detail::load(*args.operator_b_path, "operator-b file");

    const io::Backend backend = io::matrix_backend(a.doc);
    if (io::subspace_backend(m.doc, backend) != backend)
      throw Error(ErrorKind::ParseError, "subspace scalars do not match the operator backend");
    const AlgebraStatusOptions opts{mutant == Mutant::skip_condition_iv};

    json report = detail::header("analyze", seed);
    report["backend"] = io::backend_name(backend);
    report["inputs"] = json{{"operator", a.digest}, {"subspace", m.digest}};
    if (b) report["inputs"]["operator_b"] = b->digest;
    const json* jb = b ? &b->doc : nullptr;
    report["analysis"] = backend == io::Backend::exact
                             ? detail::analyze_body<GaussRational>(a.doc, m.doc, jb, opts, err)
                             : detail::analyze_body<Complex>(a.doc, m.doc, jb, opts, err);
    report["timing_ms"] = detail::elapsed_ms(t0);
    io::write_atomic(args.out_path, io::dump(report));
    const auto& v = report["analysis"]["algebra_verdict"];
    out << "algebra=" << (v["is_algebra"].get<bool>() ? "yes" : "no")
        << " ultrainvariant=" << (report["analysis"]["ultrainvariant"].get<bool>() ? "yes" : "no")
        << " dim C(A;M)=" << report["analysis"]["dims"]["local_commutant"].get<std::size_t>() << "\n";
    return static_cast<int>(kOk);
  });
}

inline int cmd_lattice(const LatticeArgs& args, std::ostream& out, std::ostream& err) {
  return detail::guarded(err, [&] {
    const auto t0 = std::chrono::steady_clock::now();
    const std::uint64_t seed = detail::effective_seed(args.seed);
    const auto a = detail::load(args.operator_path, "operator file");
    std::optional<detail::Loaded> sp;
    if (args.spectrum_path) sp = detail::load(*args.spectrum_path, "spectrum file");
    const io::Backend backend = io::matrix_backend(a.doc);

    json report = detail::header("lattice", seed);
    report["backend"] = io::backend_name(backend);
    report["inputs"] = json{{"operator", a.digest}};
    if (sp) report["inputs"]["spectrum"] = sp->digest;
    const json* js = sp ? &sp->doc : nullptr;
    auto [body, ok] = backend == io::Backend::exact ? detail::lattice_body<GaussRational>(a.doc, js)
                                                    : detail::lattice_body<Complex>(a.doc, js);
    report["lattice_report"] = std::move(body);
    report["ok"] = ok;
    report["timing_ms"] = detail::elapsed_ms(t0);
    io::write_atomic(args.out_path, io::dump(report));
    const auto& lr = report["lattice_report"];
    out << "path=" << lr["path"].get<std::string>()
        << " members=" << lr["lattice"]["member_count"].get<std::size_t>() << (ok ? "" : " CHECK FAILED") << "\n";
    return static_cast<int>(ok ? kOk : kViolation);
  });
}

inline int cmd_fuzz(const FuzzArgs& args, std::ostream& out, std::ostream& err) {
  return detail::guarded(err, [&] {
    const auto t0 = std::chrono::steady_clock::now();
    if (args.cases < 1) throw Error(ErrorKind::PreconditionViolated, "--cases must be at least 1");
    if (args.dim_max < 2 || args.dim_max > 6) throw Error(ErrorKind::PreconditionViolated, "--dim-max must lie in [2, 6]");
    const Mutant mutant = detail::parse_mutant(args.mutant);
    fuzz::Options opt;
    opt.seed = detail::effective_seed(args.seed);
    opt.cases = static_cast<std::size_t>(args.cases);
    opt.dim_max = static_cast<std::size_t>(args.dim_max);
    opt.skip_condition_iv = mutant == Mutant::skip_condition_iv;
    opt.corrupt_fixture = mutant == Mutant::corrupt_fixture;

    const fuzz::Report rep = fuzz::run(opt);
    json report = fuzz::report_to_json(rep, opt);
    report["timing_ms"] = detail::elapsed_ms(t0);
    if (args.out_path) io::write_atomic(*args.out_path, io::dump(report));

    std::size_t evaluated = 0;
    for (const auto& t : rep.tallies) evaluated += t.passed + t.failed;
    out << "seed=" << opt.seed << " instances=" << rep.instances << " laws=" << rep.tallies.size()
        << " evaluations=" << evaluated << " failures=" << rep.failures.size() << "\n";
    for (const auto& f : rep.fixture_facts)
      if (!f.ok) out << "fixture fact failed: " << f.name << "\n";
    if (rep.minimized) {
      out << "counterexample (minimized):\n" << io::dump(fuzz::failure_to_json(*rep.minimized));
    }
    return static_cast<int>(rep.ok() ? kOk : kViolation);
  });
}

inline int cmd_examples(const ExamplesArgs& args, std::ostream& out, std::ostream& err) {
  return detail::guarded(err, [&] {
    const bool corrupt = detail::parse_mutant(args.mutant) == Mutant::corrupt_fixture;
    struct Row {
      std::string name;
      std::vector<Fact> facts;
    };
    std::vector<Row> rows;
    for (auto [d1, d2, d3] : {std::tuple{1, 1, 1}, std::tuple{2, 2, 2}})
      rows.push_back({"projection " + std::to_string(d1) + "," + std::to_string(d2) + "," + std::to_string(d3),
                      projection_example_facts<GaussRational>(d1, d2, d3, corrupt)});
    for (auto [d1, d2, d3] : {std::tuple{1, 1, 1}, std::tuple{2, 2, 1}})
      rows.push_back({"graph " + std::to_string(d1) + "," + std::to_string(d2) + "," + std::to_string(d3),
                      graph_example_facts<GaussRational>(d1, d2, d3, corrupt)});
    bool all = true;
    out << std::left << std::setw(22) << "example" << std::setw(8) << "facts" << "result\n";
    for (const auto& r : rows) {
      const auto passed = std::count_if(r.facts.begin(), r.facts.end(), [](const Fact& f) { return f.ok; });
      const bool ok = static_cast<std::size_t>(passed) == r.facts.size();
      all = all && ok;
      out << std::setw(22) << r.name << std::setw(8) << (std::to_string(passed) + "/" + std::to_string(r.facts.size()))
          << (ok ? "PASS" : "FAIL") << "\n";
      if (args.verbose)
        for (const auto& f : r.facts) out << "    [" << (f.ok ? "ok" : "FAILED") << "] " << f.name << "\n";
    }
    return static_cast<int>(all ? kOk : kViolation);
  });
}

}  // namespace lcomm::cli
