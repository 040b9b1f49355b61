#pragma once

#include <chrono>
#include <cstdint>
#include <string>
#include <vector>

#include "lcomm/properties.hpp"

namespace lcomm::fuzz {

using props::Q;

struct Options {
  std::uint64_t seed = 42;
  std::size_t cases = 50;
  std::size_t dim_max = 4;
  bool skip_condition_iv = false;
  bool corrupt_fixture = false;
  std::size_t shrink_budget = 400;
};

struct LawTally {
  std::string module;
  std::string name;
  std::size_t passed = 0, skipped = 0, failed = 0;
};

struct Failure {
  std::string law;
  std::string instance;
  std::string detail;
  Matrix<Q> a;
  Subspace<Q> m;
  std::uint64_t aux_seed = 0;
};

struct Report {
  std::vector<LawTally> tallies;
  std::vector<Failure> failures;
  std::vector<Fact> fixture_facts;
  std::optional<Failure> minimized;
  std::size_t instances = 0;
  bool ok() const {
    if (!failures.empty()) return false;
    for (const auto& f : fixture_facts)
      if (!f.ok) return false;
    return true;
  }
};

/// Per-instance seed: independent of the order in which instances are run.
inline std::uint64_t case_seed(std::uint64_t seed, std::size_t kind_index, std::size_t i) {
  SplitMix64 r(seed ^ (0x100000001b3ULL * (kind_index + 1)));
  for (std::size_t k = 0; k <= i % 4; ++k) r.next();
  return r.next() ^ (static_cast<std::uint64_t>(i) << 20);
}

namespace detail {

inline bool still_fails(const props::Law& law, const props::Case& c) {
  return props::evaluate(law, c).status == props::Status::fail;
}

/// Removes coordinate i from A and from M.
inline props::Case drop_coordinate(const props::Case& c, std::size_t i) {
  const std::size_t n = c.a.rows();
  props::Case out = c;
  out.a = Matrix<Q>(n - 1, n - 1);
  for (std::size_t r = 0, rr = 0; r < n; ++r) {
    if (r == i) continue;
    for (std::size_t col = 0, cc = 0; col < n; ++col) {
      if (col == i) continue;
      out.a(rr, cc++) = c.a(r, col);
    }
    ++rr;
  }
  std::vector<Vector<Q>> vs;
  for (const auto& b : c.m.basis()) {
    Vector<Q> v;
    for (std::size_t k = 0; k < n; ++k)
      if (k != i) v.push_back(b[k]);
    vs.push_back(std::move(v));
  }
  out.m = canonicalize(vs, n - 1);
  return out;
}

}  // namespace detail

/// Greedy shrink: fewer coordinates, fewer basis vectors, then simpler entries.
inline Failure shrink(const props::Law& law, Failure f, const Options& opt) {
  props::Case cur{f.a, f.m, f.aux_seed, {opt.skip_condition_iv}};
  std::size_t budget = opt.shrink_budget;
  bool progress = true;
  auto attempt = [&](const props::Case& cand) {
    if (budget == 0) return false;
    --budget;
    if (!detail::still_fails(law, cand)) return false;
    cur = cand;
    progress = true;
    return true;
  };
  while (progress && budget > 0) {
    progress = false;
    for (std::size_t i = 0; cur.a.rows() > 1 && i < cur.a.rows(); ++i)
      if (attempt(detail::drop_coordinate(cur, i))) break;
    if (progress) continue;
    for (std::size_t j = 0; j < cur.m.dim(); ++j) {
      std::vector<Vector<Q>> vs = cur.m.basis();
      vs.erase(vs.begin() + static_cast<std::ptrdiff_t>(j));
      props::Case cand = cur;
      cand.m = canonicalize(vs, cur.m.ambient_dim());
      if (attempt(cand)) break;
    }
    if (progress) continue;
    for (std::size_t r = 0; r < cur.a.rows() && !progress; ++r)
      for (std::size_t c = 0; c < cur.a.cols() && !progress; ++c) {
        if (is_zero(cur.a(r, c))) continue;
        props::Case cand = cur;
        cand.a(r, c) = Q(0);
        if (attempt(cand)) break;
        if (cur.a(r, c) == Q(1)) continue;
        cand.a(r, c) = Q(1);
        attempt(cand);
      }
  }
  f.a = cur.a;
  f.m = cur.m;
  f.detail = props::evaluate(law, cur).detail;
  return f;
}

inline Report run(const Options& opt) {
  Report rep;
  const auto& laws = props::registry();
  for (const auto& l : laws) rep.tallies.push_back({std::string(l.module), std::string(l.name)});

  for (auto [d1, d2, d3] : {std::tuple{1, 1, 1}, std::tuple{2, 2, 2}})
    for (auto& f : projection_example_facts<Q>(d1, d2, d3, opt.corrupt_fixture)) rep.fixture_facts.push_back(f);
  for (auto [d1, d2, d3] : {std::tuple{2, 2, 1}, std::tuple{1, 1, 1}})
    for (auto& f : graph_example_facts<Q>(d1, d2, d3, opt.corrupt_fixture)) rep.fixture_facts.push_back(f);

  auto run_case = [&](const props::Case& c, const std::string& label) {
    ++rep.instances;
    for (std::size_t li = 0; li < laws.size(); ++li) {
      const auto out = props::evaluate(laws[li], c);
      auto& t = rep.tallies[li];
      if (out.status == props::Status::pass) ++t.passed;
      else if (out.status == props::Status::skip) ++t.skipped;
      else {
        ++t.failed;
        rep.failures.push_back({std::string(laws[li].name), label, out.detail, c.a, c.m, c.aux_seed});
      }
    }
  };

  // Anchor cases: the worked examples themselves.
  {
    const auto f = example_projection_3block<Q>(1, 1, 1);
    run_case({f.a, f.m, opt.seed, {opt.skip_condition_iv}}, "projection-3block/anchor(1,1,1)");
    const auto g = example_graph_subspace<Q>(2, 2, 1);
    run_case({g.a, g.m, opt.seed + 1, {opt.skip_condition_iv}}, "graph-subspace/anchor(2,2,1)");
  }

  std::size_t kind_index = 0;
  for (auto kind : kAllKinds) {
    for (std::size_t i = 0; i < opt.cases; ++i) {
      const InstanceSpec spec{case_seed(opt.seed, kind_index, i), kind, 2, opt.dim_max};
      const Instance<Q> inst = generate_instance<Q>(spec);
      const Instance<Q> again = generate_instance<Q>(spec);
      if (!(inst.a == again.a) || !(inst.m == again.m))
        rep.failures.push_back({"instance-determinism", inst.label, "regeneration differs", inst.a, inst.m, spec.seed});
      run_case({inst.a, inst.m, spec.seed * 31 + 7, {opt.skip_condition_iv}}, inst.label);
    }
    ++kind_index;
  }

  if (!rep.failures.empty()) {
    const Failure& first = rep.failures.front();
    if (const auto* law = props::find_law(first.law)) rep.minimized = shrink(*law, first, opt);
    else rep.minimized = first;
  }
  return rep;
}

inline io::json failure_to_json(const Failure& f) {
  return io::json{{"law", f.law},
                  {"instance", f.instance},
                  {"detail", f.detail},
                  {"aux_seed", f.aux_seed},
                  {"operator", io::matrix_to_json(f.a)},
                  {"subspace", io::subspace_to_json(f.m)}};
}

inline io::json report_to_json(const Report& r, const Options& opt) {
  io::json laws = io::json::array();
  for (const auto& t : r.tallies)
    laws.push_back(io::json{{"module", t.module}, {"law", t.name}, {"passed", t.passed}, {"skipped", t.skipped},
                            {"failed", t.failed}});
  io::json facts = io::json::array();
  for (const auto& f : r.fixture_facts) facts.push_back(io::json{{"fact", f.name}, {"ok", f.ok}});
  io::json fails = io::json::array();
  for (std::size_t i = 0; i < r.failures.size() && i < 20; ++i)
    fails.push_back(io::json{{"law", r.failures[i].law}, {"instance", r.failures[i].instance},
                             {"detail", r.failures[i].detail}});
  io::json j{{"schema_version", io::kSchemaVersion},
             {"tool", {{"name", io::kToolName}, {"version", io::kToolVersion}}},
             {"command", "fuzz"},
             {"seed", opt.seed},
             {"prng", SplitMix64::name},
             {"cases_per_kind", opt.cases},
             {"dim_max", opt.dim_max},
             {"instances", r.instances},
             {"ok", r.ok()},
             {"fixture_facts", std::move(facts)},
             {"laws", std::move(laws)},
             {"failure_count", r.failures.size()},
             {"failures", std::move(fails)}};
  if (r.minimized) j["counterexample"] = failure_to_json(*r.minimized);
  return j;
}

}  // namespace lcomm::fuzz
