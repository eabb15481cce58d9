#include "orlab/harness.hpp"

#include <algorithm>
#include <chrono>
#include <filesystem>
#include <functional>
#include <sstream>

#include "orlab/bounds.hpp"
#include "orlab/error.hpp"

namespace orlab {

namespace {

constexpr std::pair<Check, const char*> kCheckNames[] = {
    {Check::PPower, "p-power"}, {Check::FiveBeta, "5beta"},      {Check::ElevenK, "11k"},
    {Check::Nonpos, "nonpos"},  {Check::Dh, "dh"},               {Check::Collapse, "collapse"},
    {Check::Euler, "euler"},    {Check::SelfImmersion, "self-immersion"},
};

BoundVerdict verdict_from_name(const std::string& s) {
  for (auto v : {BoundVerdict::Pass, BoundVerdict::Fail, BoundVerdict::NotApplicable, BoundVerdict::Inconclusive}) {
    if (s == bound_verdict_name(v)) return v;
  }
  throw Error(ErrorCode::InvalidInput, "unknown verdict " + s);
}

BoundReport fail_report(std::string detail) {
  BoundReport r;
  r.verdict = BoundVerdict::Fail;
  r.detail = std::move(detail);
  return r;
}

BoundReport pass_report(std::string detail = {}) {
  BoundReport r;
  r.verdict = BoundVerdict::Pass;
  r.detail = std::move(detail);
  return r;
}

struct CollapseCheck {
  BoundReport report;
  bool certified = false;
  bool stuck = false;
  long steps = 0;
  long max_k = 0;
  Json evidence;
};

// Theorem notree on one branch map: find a component of Z' with freely
// trivial image and grow it back to Y' by almost-collapses.
CollapseCheck collapse_check(const CombMap& f, const RelatorSplit& split) {
  CollapseCheck out;
  EdgeClassification cls;
  try {
    cls = classify_edges(f, split);
  } catch (const Error& e) {
    out.report = fail_report(std::string("classification: ") + e.what());
    return out;
  }
  const TwoComplex z = remove_associated(f.source, cls);
  const auto triv = trivial_image_component(z, f);
  if (!triv) {
    out.report.verdict = BoundVerdict::NotApplicable;
    out.report.detail = "no component of Z' with trivial image";
    return out;
  }
  out.certified = true;
  const bool torsion_free = !f.has_branching();
  const CollapseOutcome o = almost_collapse_sequence(f, cls, triv->component, torsion_free);
  if (o.stuck) {
    out.stuck = true;
    out.report = fail_report("STUCK: " + o.stuck->reason);
    out.evidence = stuck_to_json(*o.stuck);
    return out;
  }
  const CollapseCertificate& cert = *o.certificate;
  out.evidence = certificate_to_json(cert);
  out.steps = static_cast<long>(cert.steps.size());
  for (const auto& s : cert.steps) out.max_k = std::max(out.max_k, s.k);
  try {
    replay_certificate(f.source, cert);
  } catch (const Error& e) {
    out.report = fail_report(std::string("replay: ") + e.what());
    return out;
  }
  if (!homology_bookkeeping_holds(f.source, cert)) {
    out.report = fail_report("H_1(Y') differs from H_1(T) plus the cyclic factors");
    return out;
  }
  if (torsion_free && out.max_k > 1) {
    out.report = fail_report("almost-collapse with k > 1 under an immersion");
    return out;
  }
  out.report = pass_report(std::to_string(out.steps) + " steps");
  return out;
}

BoundReport euler_check(const TwoComplex& k) {
  const long chi = euler_characteristic(k);
  std::vector<std::optional<long>> fields{std::nullopt, 2L, 3L};
  for (const auto& p : fields) {
    const BettiVector b = betti_numbers(k, p);
    if (b.b0 - b.b1 + b.b2 != chi) {
      BoundReport r = fail_report("b0 - b1 + b2 != chi over " + (p ? "F_" + std::to_string(*p) : std::string("Z")));
      r.lhs = b.b0 - b.b1 + b.b2;
      r.rhs = chi;
      return r;
    }
  }
  return pass_report();
}

struct SelfCheck {
  BoundReport report;
  long found = 0;
  std::optional<CombMap> offender;
};

SelfCheck self_immersion_check(const TwoComplex& k) {
  SelfCheck out;
  out.report = pass_report();
  for (const CombMap& g : immersions_between(k, k)) {
    ++out.found;
    if (!is_isomorphism(g) && !out.offender) {
      out.report = fail_report("self-immersion that is not an isomorphism");
      out.offender = g;
    }
  }
  return out;
}

class Runner {
 public:
  Runner(const SimpleEnlargement& y, const std::string& name, const SuiteOptions& opt) : y_(y), opt_(opt) {
    rep_.target = name;
    if (!opt_.witness_dir.empty()) std::filesystem::create_directories(opt_.witness_dir);
  }

  SuiteReport run() {
    const bool on_y = wants(Check::PPower) || wants(Check::Nonpos) || wants(Check::Collapse) ||
                      wants(Check::Euler) || wants(Check::SelfImmersion);
    if (wants(Check::Euler)) euler(y_.complex, "target");
    prepare();
    if (opt_.instances) {
      time("instances", [&] { check_instances(); });
    } else {
      // An empty budget admits no source at all.
      const bool empty = opt_.budget.vertices < 1;
      if (on_y && !empty) enumerate_target();
      if (!empty && y_.alpha && (wants(Check::FiveBeta) || wants(Check::ElevenK))) {
        for (long n : opt_.covers) enumerate_cover(covers_.at(n), n);
      }
    }
    if (y_.alpha && wants(Check::Dh)) {
      for (long n : opt_.covers) pictures(n);
    }
    if (!split_error_.empty()) summary(Check::Collapse, "").tallies["split_failed"] = 1;
    return std::move(rep_);
  }

 private:
  bool wants(Check c) const { return opt_.checks.count(c) > 0; }

  CheckSummary& summary(Check c, const std::string& params) {
    const std::string key = std::string(check_name(c)) + "/" + params;
    auto it = index_.find(key);
    if (it == index_.end()) {
      it = index_.emplace(key, rep_.checks.size()).first;
      rep_.checks.push_back(CheckSummary{c, params, 0, 0, 0, 0, 0, false, {}});
    }
    return rep_.checks[it->second];
  }

  void record(CheckSummary& s, const BoundReport& r, const std::function<Json()>& payload) {
    ++s.instances;
    switch (r.verdict) {
      case BoundVerdict::Pass: ++s.pass; break;
      case BoundVerdict::NotApplicable: ++s.not_applicable; break;
      case BoundVerdict::Inconclusive: ++s.inconclusive; break;
      case BoundVerdict::Fail: {
        ++s.fail;
        Json bundle = payload();
        bundle["check"] = check_name(s.check);
        bundle["verdict"] = bound_verdict_name(r.verdict);
        bundle["detail"] = r.detail;
        bundle["lhs"] = bigint_to_json(r.lhs);
        bundle["rhs"] = bigint_to_json(r.rhs);
        if (!opt_.witness_dir.empty()) {
          const int k = ++written_[check_name(s.check)];
          const auto path = std::filesystem::path(opt_.witness_dir) /
                            ("witness-" + std::string(check_name(s.check)) + "-" + std::to_string(k) + ".json");
          write_text_file(path.string(), dump_canonical(bundle));
          rep_.witness_files.push_back(path.string());
        }
        rep_.witnesses.push_back(std::move(bundle));
        break;
      }
    }
  }

  void euler(const TwoComplex& k, const std::string& params) {
    record(summary(Check::Euler, params), euler_check(k), [&] { return Json{{"complex", complex_to_json(k)}}; });
  }

  void self_immersion(const TwoComplex& k, const std::string& params) {
    const std::string key = dump_canonical(complex_to_json(k));
    if (!seen_sources_.insert(key).second) return;
    SelfCheck c = self_immersion_check(k);
    CheckSummary& s = summary(Check::SelfImmersion, params);
    s.tallies["self_immersions"] += c.found;
    record(s, c.report, [&] { return Json{{"complex", complex_to_json(k)}, {"immersion", map_to_json(*c.offender)}}; });
  }

  void time(const std::string& what, const std::function<void()>& body) {
    const auto start = std::chrono::steady_clock::now();
    body();
    rep_.seconds[what] += std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  }

  void prepare() {
    y_json_ = enlargement_to_json(y_);
    graph_based_ = y_.base().cells.empty();
    if (y_.alpha && wants(Check::Collapse)) {
      try {
        split_ = split_relator(y_, MagnusOrder());
      } catch (const Error& e) {
        split_error_ = e.what();
      }
    }
    if (y_.alpha) {
      for (long n : opt_.covers) covers_.emplace(n, branched_cover(y_, n));
    }
  }

  void check_instances() {
    for (std::size_t i = 0; i < opt_.instances->size(); ++i) {
      const CombMap& f = (*opt_.instances)[i];
      if (f.target == y_.complex) {
        visit_target(f);
        continue;
      }
      auto bc = std::find_if(covers_.begin(), covers_.end(),
                             [&](const auto& c) { return c.second.complex == f.target; });
      if (bc == covers_.end()) {
        throw Error(ErrorCode::Mismatch,
                    "instance " + std::to_string(i) + " maps to neither Y nor one of its branched covers");
      }
      visit_cover(f, bc->second, bc->first);
    }
  }

  void visit_target(const CombMap& f) {
    if (y_.alpha && wants(Check::PPower)) {
      for (long p : opt_.primes) {
        const BoundReport r = check_p_power_bound(f, *y_.alpha, p);
        record(summary(Check::PPower, "p=" + std::to_string(p)), r, [&] {
          return Json{{"map", map_to_json(f)}, {"params", {{"alpha", *y_.alpha}, {"p", p}}}};
        });
      }
    }
    if (wants(Check::Nonpos) && !f.has_branching()) {
      CheckSummary& s = summary(Check::Nonpos, "");
      if (!graph_based_) {
        ++s.instances;
        ++s.not_applicable;
      } else {
        const AuditEntry a = nonpositive_immersions_audit({f}).front();
        BoundReport r;
        r.verdict = a.verdict;
        r.detail = a.detail;
        r.lhs = a.euler;
        if (a.euler > 0) ++s.tallies["positive_chi"];
        record(s, r, [&] { return Json{{"map", map_to_json(f)}}; });
      }
    }
    if (y_.alpha && wants(Check::Collapse)) {
      CheckSummary& s = summary(Check::Collapse, "");
      if (!split_) {
        ++s.instances;
        ++s.not_applicable;
      } else {
        const CollapseCheck c = collapse_check(f, *split_);
        if (c.certified) {
          ++s.tallies["certified"];
          s.tallies["steps"] += c.steps;
          s.tallies["max_k"] = std::max(s.tallies["max_k"], c.max_k);
          if (!f.has_branching()) ++s.tallies["immersions_certified"];
        }
        if (c.stuck) ++s.tallies["stuck"];
        record(s, c.report, [&] {
          return Json{{"enlargement", y_json_}, {"map", map_to_json(f)}, {"evidence", c.evidence}};
        });
      }
    }
    if (wants(Check::Euler)) euler(f.source, "sources");
    if (wants(Check::SelfImmersion)) self_immersion(f.source, "sources");
  }

  void visit_cover(const CombMap& f, const BranchedCover& bc, long n) {
    const std::string params = "n=" + std::to_string(n);
    auto payload = [&] { return Json{{"map", map_to_json(f)}, {"params", {{"alpha", bc.alpha}, {"n", n}}}}; };
    if (wants(Check::FiveBeta)) record(summary(Check::FiveBeta, params), check_5beta(f, bc.alpha, n), payload);
    if (wants(Check::ElevenK)) record(summary(Check::ElevenK, params), check_11k(f, bc.alpha, n), payload);
    if (wants(Check::Euler)) euler(f.source, "sources");
    if (wants(Check::SelfImmersion)) self_immersion(f.source, "sources");
  }

  void enumerate_target() {
    EnumerationResult res;
    time("enumerate target", [&] {
      res = enumerate_immersions(y_.complex, opt_.budget, [&](const CombMap& f) { visit_target(f); });
    });
    if (res.partial) {
      for (auto& s : rep_.checks) s.partial = true;
    }
  }

  void enumerate_cover(const BranchedCover& bc, long n) {
    if (wants(Check::Euler)) euler(bc.complex, "cover");
    EnumerationBudget b = opt_.budget;
    b.max_degree = 1;
    const std::string params = "n=" + std::to_string(n);
    EnumerationResult res;
    time("enumerate cover " + params, [&] {
      res = enumerate_immersions(bc.complex, b, [&](const CombMap& f) { visit_cover(f, bc, n); });
    });
    if (res.partial) {
      for (Check c : {Check::FiveBeta, Check::ElevenK}) {
        if (wants(c)) summary(c, params).partial = true;
      }
    }
  }

  void pictures(long n) {
    const std::string params = "n=" + std::to_string(n);
    DhSuite suite;
    time("pictures " + params, [&] { suite = dh_suite(y_, n, opt_.picture_vertices, opt_.surfaces); });
    CheckSummary& s = summary(Check::Dh, params);
    s.tallies["matchings"] = suite.matchings;
    for (const DhCell& c : suite.cells) {
      s.instances += c.pictures;
      s.not_applicable += c.pictures - c.reduced;
      s.pass += c.reduced - c.fails;
      rep_.dh_cells.push_back(c);
    }
    // Failures are recorded through the witnesses (at most a few per run),
    // counts through the cells.
    long failing = 0;
    for (const DhCell& c : suite.cells) failing += c.fails;
    for (const Picture& p : suite.failures) {
      const DhReport d = check_dh(p, y_, n);
      BoundReport r = fail_report("boundary points < 2n(V-1) + 2chi on " + p.surface.name());
      r.lhs = d.count;
      r.rhs = d.bound;
      record(s, r, [&] {
        return Json{{"enlargement", y_json_}, {"picture", picture_to_json(p)}, {"params", {{"n", n}}}};
      });
      --s.instances;
      --failing;
    }
    s.fail += failing;
  }

  const SimpleEnlargement& y_;
  const SuiteOptions& opt_;
  SuiteReport rep_;
  std::map<std::string, std::size_t> index_;
  std::map<std::string, int> written_;
  std::set<std::string> seen_sources_;
  Json y_json_;
  bool graph_based_ = true;
  std::optional<RelatorSplit> split_;
  std::string split_error_;
  std::map<long, BranchedCover> covers_;
};

}  // namespace

const char* check_name(Check c) {
  for (const auto& [k, name] : kCheckNames) {
    if (k == c) return name;
  }
  return "?";
}

Check parse_check(const std::string& name) {
  for (const auto& [k, n] : kCheckNames) {
    if (name == n) return k;
  }
  throw Error(ErrorCode::InvalidInput, "unknown check " + name);
}

std::set<Check> all_checks() {
  std::set<Check> out;
  for (const auto& [k, name] : kCheckNames) out.insert(k);
  return out;
}

long SuiteReport::fails() const {
  long n = 0;
  for (const auto& c : checks) n += c.fail;
  return n;
}

Json SuiteReport::to_json() const {
  Json cs = Json::array();
  for (const auto& c : checks) {
    cs.push_back(Json{{"check", check_name(c.check)},
                      {"params", c.params},
                      {"instances", c.instances},
                      {"pass", c.pass},
                      {"fail", c.fail},
                      {"not_applicable", c.not_applicable},
                      {"inconclusive", c.inconclusive},
                      {"partial", c.partial},
                      {"tallies", c.tallies}});
  }
  Json dh = Json::array();
  for (const auto& c : dh_cells) {
    dh.push_back(Json{{"surface", c.surface.name()},
                      {"n", c.n},
                      {"vertices", c.vertices},
                      {"bound", c.bound},
                      {"pictures", c.pictures},
                      {"reduced", c.reduced},
                      {"fails", c.fails},
                      {"min_count", c.min_count ? Json(*c.min_count) : Json(nullptr)}});
  }
  return Json{{"target", target},
              {"checks", std::move(cs)},
              {"dh", std::move(dh)},
              {"fails", fails()},
              {"witnesses", witness_files}};
}

std::string SuiteReport::table() const {
  std::ostringstream out;
  out << "target " << target << "\n";
  for (const auto& c : checks) {
    out << check_name(c.check);
    if (!c.params.empty()) out << " " << c.params;
    out << ": " << c.instances << " instances, " << c.pass << " pass, " << c.fail << " fail, " << c.not_applicable
        << " n/a, " << c.inconclusive << " inconclusive";
    if (c.partial) out << " (partial)";
    for (const auto& [k, v] : c.tallies) out << ", " << k << " " << v;
    out << "\n";
  }
  return out.str();
}

SuiteReport run_suite(const SimpleEnlargement& y, const std::string& name, const SuiteOptions& options) {
  return Runner(y, name, options).run();
}

ReplayResult replay_witness(const Json& bundle) {
  ReplayResult out;
  if (!bundle.is_object() || !bundle.contains("check")) throw Error(ErrorCode::InvalidInput, "not a witness bundle");
  out.check = bundle["check"].get<std::string>();
  const Check c = parse_check(out.check);
  const Json params = bundle.value("params", Json::object());
  BoundReport r;
  switch (c) {
    case Check::PPower:
      r = check_p_power_bound(map_from_json(bundle.at("map")), params.at("alpha").get<Id>(), params.at("p").get<long>());
      break;
    case Check::FiveBeta:
      r = check_5beta(map_from_json(bundle.at("map")), params.at("alpha").get<Id>(), params.at("n").get<long>());
      break;
    case Check::ElevenK:
      r = check_11k(map_from_json(bundle.at("map")), params.at("alpha").get<Id>(), params.at("n").get<long>());
      break;
    case Check::Nonpos: {
      const AuditEntry a = nonpositive_immersions_audit({map_from_json(bundle.at("map"))}).front();
      r.verdict = a.verdict;
      r.detail = a.detail;
      break;
    }
    case Check::Collapse: {
      const SimpleEnlargement y = enlargement_from_json(bundle.at("enlargement"));
      r = collapse_check(map_from_json(bundle.at("map")), split_relator(y, MagnusOrder())).report;
      break;
    }
    case Check::Euler:
      r = euler_check(complex_from_json(bundle.at("complex")));
      break;
    case Check::SelfImmersion:
      r = self_immersion_check(complex_from_json(bundle.at("complex"))).report;
      break;
    case Check::Dh: {
      const SimpleEnlargement y = enlargement_from_json(bundle.at("enlargement"));
      const DhReport d = check_dh(picture_from_json(bundle.at("picture")), y, params.at("n").get<long>());
      r.verdict = d.verdict;
      r.detail = "count " + std::to_string(d.count) + ", bound " + std::to_string(d.bound);
      break;
    }
  }
  out.verdict = r.verdict;
  out.detail = r.detail;
  if (bundle.contains("verdict") && verdict_from_name(bundle["verdict"].get<std::string>()) != r.verdict) {
    out.detail += " (bundle recorded " + bundle["verdict"].get<std::string>() + ")";
  }
  return out;
}

SimpleEnlargement ab_family() {
  TwoComplex x;
  x.vertices = {0, 1};
  x.edges[0] = {0, 0};
  x.edges[1] = {1, 1};
  return build_simple_enlargement(x, {1, 0, 2}, std::vector<DirectedEdge>{{2, 1}, {0, 1}, {2, -1}, {1, 1}}, 0);
}

SimpleEnlargement klein_family() {
  TwoComplex x;
  x.vertices = {0};
  x.edges[0] = {0, 0};
  return build_simple_enlargement(x, {0, 0, 1}, std::vector<DirectedEdge>{{0, 1}, {1, 1}, {0, 1}, {1, -1}}, 0);
}

CoherenceStep demo_coherence_step(const CombMap& stage, const std::vector<DirectedEdge>& boundary, Id cell,
                                  std::size_t rotation) {
  require_valid_map(stage);
  auto target_cell = stage.target.cells.find(cell);
  if (target_cell == stage.target.cells.end()) {
    throw Error(ErrorCode::InvalidInput, "diagram cell " + std::to_string(cell) + " is not a cell of the target");
  }
  if (!is_closed_path(stage.source, boundary)) {
    throw Error(ErrorCode::InvalidInput, "diagram boundary is not a closed path in the stage");
  }
  const AttachingPath& image = target_cell->second;
  if (boundary.size() != image.size() || rotation >= image.size()) {
    throw Error(ErrorCode::InvalidInput, "diagram boundary length differs from the cell's attaching path");
  }
  for (std::size_t i = 0; i < boundary.size(); ++i) {
    if (stage.image(boundary[i]) != image[rotation + i]) {
      throw Error(ErrorCode::InvalidInput,
                  "diagram boundary position " + std::to_string(i) + " does not map along the cell");
    }
  }
  CombMap phi = stage;
  const Id disc = phi.source.next_cell_id();
  phi.source.cells[disc].edges = boundary;
  phi.cell_map[disc] = {cell, rotation, 1};
  FoldResult folded = fold_to_immersion(phi);

  CoherenceStep out;
  out.next = folded.folded;
  out.immersion = std::move(folded.immersion);
  out.inclusion = std::move(folded.surjection);
  out.inclusion.source = stage.source;
  out.inclusion.cell_map.erase(disc);
  out.log = std::move(folded.log);
  return out;
}

}  // namespace orlab
