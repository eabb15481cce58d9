#include "orlab/orlab.h"

#include <cstdlib>
#include <cstring>
#include <random>

#include "orlab/bounds.hpp"
#include "orlab/error.hpp"
#include "orlab/harness.hpp"

struct orlab_complex {
  orlab::TwoComplex k;
};

struct orlab_map {
  orlab::CombMap f;
  std::optional<orlab::Id> e;
  std::optional<orlab::Id> alpha;
};

namespace {

using namespace orlab;

static_assert(static_cast<int>(ErrorCode::Unsupported) + 1 == ORLAB_UNSUPPORTED);

thread_local std::string last_error;

template <class F>
orlab_status guarded(F&& body) {
  try {
    body();
    last_error.clear();
    return ORLAB_OK;
  } catch (const Error& e) {
    last_error = e.what();
    return static_cast<orlab_status>(static_cast<int>(e.code()) + 1);
  } catch (const Json::exception& e) {
    last_error = e.what();
    return ORLAB_INVALID_INPUT;
  } catch (const std::exception& e) {
    last_error = e.what();
    return ORLAB_INTERNAL;
  }
}

void need(const void* p, const char* what) {
  if (!p) throw Error(ErrorCode::InvalidInput, std::string(what) + " is null");
}

char* c_string(const std::string& s) {
  char* out = static_cast<char*>(std::malloc(s.size() + 1));
  if (!out) throw std::bad_alloc();
  std::memcpy(out, s.c_str(), s.size() + 1);
  return out;
}

void put(char** out, const Json& j) {
  if (out) *out = c_string(dump_canonical(j));
}

std::optional<Id> opt_id(int64_t v) { return v < 0 ? std::nullopt : std::optional<Id>(v); }

SimpleEnlargement enlargement(const char* y_json, int64_t e, int64_t alpha) {
  need(y_json, "enlargement");
  Json j = parse_json(y_json);
  if (e >= 0) j["e"] = e;
  if (alpha >= 0) j["alpha"] = alpha;
  return enlargement_from_json(j);
}

SimpleEnlargement target_enlargement(const orlab_map* f, int64_t e, int64_t alpha) {
  auto ee = e >= 0 ? opt_id(e) : f->e;
  auto aa = alpha >= 0 ? opt_id(alpha) : f->alpha;
  if (!ee) throw Error(ErrorCode::NoE, "the map's target needs an edge e");
  if (!aa && f->f.target.cells.size() == 1) aa = f->f.target.cells.begin()->first;
  return recognise_enlargement(f->f.target, *ee, aa);
}

EnumerationBudget budget_from(const Json& j) {
  EnumerationBudget b{8, 12, 4, 3, 0, true};
  b.vertices = j.value("vertices", b.vertices);
  b.edges = j.value("edges", b.edges);
  b.cells = j.value("cells", b.cells);
  b.max_degree = j.value("max_degree", b.max_degree);
  b.seconds = j.value("seconds", b.seconds);
  b.covered = j.value("covered", b.covered);
  return b;
}

Json split_json_or_error(const SimpleEnlargement& y, int budget) { return split_to_json(split_relator(y, MagnusOrder(budget))); }

Json comparison_json(const Comparison& c) {
  return Json{{"verdict", verdict_name(c.verdict)},
              {"deciding", format_monomial(c.deciding)},
              {"coefficient", bigint_to_json(c.coefficient)},
              {"degree", c.degree}};
}

Word random_word(std::mt19937_64& rng, int max_len) {
  std::uniform_int_distribution<int> len(0, max_len), letter(0, 3);
  Word w;
  const int n = len(rng);
  while (static_cast<int>(w.size()) < n) {
    const int x = letter(rng);
    const Letter l{x / 2, x % 2 ? -1 : 1};
    if (!w.empty() && w.back() == l.inverse()) continue;
    w.push_back(l);
  }
  return w;
}

OrderVerdict flip(OrderVerdict v) {
  if (v == OrderVerdict::Less) return OrderVerdict::Greater;
  if (v == OrderVerdict::Greater) return OrderVerdict::Less;
  return v;
}

}  // namespace

extern "C" {

const char* orlab_status_name(orlab_status s) {
  if (s == ORLAB_OK) return "OK";
  if (s == ORLAB_INTERNAL) return "INTERNAL";
  if (s > ORLAB_OK && s < ORLAB_INTERNAL) return error_code_name(static_cast<ErrorCode>(s - 1));
  return "UNKNOWN";
}

const char* orlab_last_error(void) { return last_error.c_str(); }

void orlab_free(char* s) { std::free(s); }

orlab_status orlab_complex_parse(const char* json, orlab_complex** out) {
  return guarded([&] {
    need(json, "json");
    need(out, "out");
    *out = new orlab_complex{complex_from_json(parse_json(json))};
  });
}

void orlab_complex_free(orlab_complex* k) { delete k; }

orlab_status orlab_complex_json(const orlab_complex* k, char** out) {
  return guarded([&] {
    need(k, "complex");
    put(out, complex_to_json(k->k));
  });
}

orlab_status orlab_complex_validate(const orlab_complex* k, int* valid, char** report) {
  return guarded([&] {
    need(k, "complex");
    const ValidationReport r = validate(k->k);
    if (valid) *valid = r.empty();
    put(report, Json{{"valid", r.empty()}, {"violations", violations_to_json(r)}});
  });
}

orlab_status orlab_complex_euler(const orlab_complex* k, int64_t* out) {
  return guarded([&] {
    need(k, "complex");
    need(out, "out");
    require_valid(k->k);
    *out = euler_characteristic(k->k);
  });
}

orlab_status orlab_complex_homology(const orlab_complex* k, int64_t p, char** out) {
  return guarded([&] {
    need(k, "complex");
    require_valid(k->k);
    const BettiVector b = betti_numbers(k->k, p ? std::optional<long>(p) : std::nullopt);
    Json j = betti_to_json(b);
    j["coefficients"] = p ? "F_" + std::to_string(p) : std::string("Z");
    j["euler"] = euler_characteristic(k->k);
    if (!p) j["hat_beta"] = hat_beta(k->k);
    put(out, j);
  });
}

orlab_status orlab_map_parse(const char* json, orlab_map** out) {
  return guarded([&] {
    need(json, "json");
    need(out, "out");
    const Json j = parse_json(json);
    auto m = std::make_unique<orlab_map>();
    m->f = map_from_json(j);
    const Json& t = j.at("target");
    if (t.contains("e")) m->e = t["e"].get<Id>();
    if (t.contains("alpha")) m->alpha = t["alpha"].get<Id>();
    *out = m.release();
  });
}

void orlab_map_free(orlab_map* f) { delete f; }

orlab_status orlab_map_json(const orlab_map* f, char** out) {
  return guarded([&] {
    need(f, "map");
    put(out, map_to_json(f->f));
  });
}

orlab_status orlab_map_validate(const orlab_map* f, int* valid, char** report) {
  return guarded([&] {
    need(f, "map");
    const ValidationReport r = validate_map(f->f);
    if (valid) *valid = r.empty();
    put(report, Json{{"valid", r.empty()}, {"violations", violations_to_json(r)}});
  });
}

orlab_status orlab_map_immersion(const orlab_map* f, int branch, int* ok, char** report) {
  return guarded([&] {
    need(f, "map");
    require_valid_map(f->f);
    const ImmersionVerdict v = branch ? is_branch_map(f->f) : is_immersion(f->f);
    if (ok) *ok = v.ok;
    Json j{{"condition", branch ? "branch map" : "immersion"}, {"holds", v.ok}};
    if (v.witness) {
      j["witness"] = Json{{"description", v.witness->describe()},
                          {"where", v.witness->where},
                          {"first", {v.witness->first.first, v.witness->first.second}},
                          {"second", {v.witness->second.first, v.witness->second.second}}};
    }
    put(report, j);
  });
}

orlab_status orlab_map_fold(const orlab_map* f, char** out) {
  return guarded([&] {
    need(f, "map");
    put(out, fold_to_json(fold_to_immersion(f->f)));
  });
}

orlab_status orlab_enlarge(const orlab_complex* x, int64_t e_source, int64_t e_target, int64_t e_id,
                           const char* relator, int64_t alpha_id, char** out) {
  return guarded([&] {
    need(x, "complex");
    const Id e = e_id >= 0 ? e_id : x->k.next_edge_id();
    std::optional<std::vector<DirectedEdge>> path;
    if (relator && *relator) path = parse_relator_path(relator, e);
    const SimpleEnlargement y = build_simple_enlargement(x->k, NewEdge{e_source, e_target, e}, path, opt_id(alpha_id));
    Json j = enlargement_to_json(y);
    Json evidence{{"crossings", y.evidence.crossings},
                  {"reduced_word", word_to_json(y.evidence.reduced_word)},
                  {"generators", y.evidence.generators},
                  {"note", y.evidence.note}};
    if (y.evidence.minimal_crossings) evidence["minimal_crossings"] = *y.evidence.minimal_crossings;
    if (y.evidence.proper_power) evidence["proper_power"] = *y.evidence.proper_power;
    // Extra fields are ignored by readers, so the output is itself a Y file.
    j["evidence"] = std::move(evidence);
    j["joins_components"] = y.joins_components;
    put(out, j);
  });
}

orlab_status orlab_branched_cover(const char* y_json, int64_t e, int64_t alpha, int64_t n, char** out) {
  return guarded([&] {
    const BranchedCover bc = branched_cover(enlargement(y_json, e, alpha), n);
    Json cover = complex_to_json(bc.complex);
    cover["alpha"] = bc.alpha;
    put(out, Json{{"cover", cover}, {"projection", map_to_json(bc.projection)}, {"n", bc.n}});
  });
}

orlab_status orlab_split_relator(const char* y_json, int64_t e, int64_t alpha, int order_budget, char** out) {
  return guarded([&] { put(out, split_json_or_error(enlargement(y_json, e, alpha), order_budget)); });
}

orlab_status orlab_classify_edges(const orlab_map* f, int64_t e, int64_t alpha, char** out) {
  return guarded([&] {
    need(f, "map");
    const SimpleEnlargement y = target_enlargement(f, e, alpha);
    const RelatorSplit split = split_relator(y, MagnusOrder());
    put(out, Json{{"split", split_to_json(split)}, {"classification", classification_to_json(classify_edges(f->f, split))}});
  });
}

orlab_status orlab_collapse(const orlab_map* f, int64_t e, int64_t alpha, int torsion_free, int* stuck, char** out) {
  return guarded([&] {
    need(f, "map");
    const SimpleEnlargement y = target_enlargement(f, e, alpha);
    const RelatorSplit split = split_relator(y, MagnusOrder());
    const EdgeClassification cls = classify_edges(f->f, split);
    const TwoComplex z = remove_associated(f->f.source, cls);
    Json j{{"classification", classification_to_json(cls)}, {"z", complex_to_json(z)}};
    const auto triv = trivial_image_component(z, f->f);
    if (stuck) *stuck = 0;
    if (!triv) {
      j["trivial_component"] = nullptr;
      j["note"] = "no component of Z' has freely trivial image";
      put(out, j);
      return;
    }
    Json images = Json::array();
    for (const auto& [edge, w] : triv->generator_images) images.push_back(Json::array({edge, word_to_json(w)}));
    j["trivial_component"] = Json{{"complex", complex_to_json(triv->component)}, {"generator_images", images}};
    const CollapseOutcome o = almost_collapse_sequence(f->f, cls, triv->component, torsion_free != 0);
    if (o.stuck) {
      j["stuck"] = stuck_to_json(*o.stuck);
      if (stuck) *stuck = 1;
      put(out, j);
      return;
    }
    j["certificate"] = certificate_to_json(*o.certificate);
    bool replay_ok = true;
    try {
      replay_certificate(f->f.source, *o.certificate);
    } catch (const Error& err) {
      replay_ok = false;
      j["replay_error"] = err.what();
    }
    j["replay_ok"] = replay_ok;
    j["homology_bookkeeping"] = homology_bookkeeping_holds(f->f.source, *o.certificate);
    if (stuck && !replay_ok) *stuck = 1;
    put(out, j);
  });
}

orlab_status orlab_verify_bounds(const char* y_json, int64_t e, int64_t alpha, const char* options_json,
                                 int64_t* fails, char** report) {
  return guarded([&] {
    const SimpleEnlargement y = enlargement(y_json, e, alpha);
    const Json o = options_json && *options_json ? parse_json(options_json) : Json::object();
    SuiteOptions opt;
    if (o.contains("budget")) opt.budget = budget_from(o["budget"]);
    if (o.contains("checks")) {
      opt.checks.clear();
      for (const auto& c : o["checks"]) opt.checks.insert(parse_check(c.get<std::string>()));
    }
    if (o.contains("primes")) opt.primes = o["primes"].get<std::vector<long>>();
    if (o.contains("covers")) opt.covers = o["covers"].get<std::vector<long>>();
    opt.picture_vertices = o.value("picture_vertices", opt.picture_vertices);
    if (o.contains("surfaces")) {
      opt.surfaces.clear();
      for (const auto& s : o["surfaces"]) opt.surfaces.push_back(Surface{s.at(0).get<int>(), s.at(1).get<int>()});
    }
    opt.witness_dir = o.value("witness_dir", std::string());
    if (o.contains("instances")) {
      opt.instances.emplace();
      for (const auto& m : o["instances"]) opt.instances->push_back(map_from_json(m));
    }
    const SuiteReport r = run_suite(y, o.value("name", std::string("Y")), opt);
    Json j = r.to_json();
    j["table"] = r.table();
    if (o.value("timings", false)) j["seconds"] = r.seconds;
    if (fails) *fails = r.fails();
    put(report, j);
  });
}

orlab_status orlab_replay_witness(const char* bundle_json, int* fail, char** out) {
  return guarded([&] {
    need(bundle_json, "bundle");
    const ReplayResult r = replay_witness(parse_json(bundle_json));
    if (fail) *fail = r.verdict == BoundVerdict::Fail;
    put(out, Json{{"check", r.check}, {"verdict", bound_verdict_name(r.verdict)}, {"detail", r.detail}});
  });
}

orlab_status orlab_enumerate(const char* target_json, const char* budget_json, char** out) {
  return guarded([&] {
    need(target_json, "target");
    const TwoComplex y = complex_from_json(parse_json(target_json));
    const Json b = budget_json && *budget_json ? parse_json(budget_json) : Json::object();
    const bool list = b.value("list", true);
    Json maps = Json::array();
    const EnumerationResult r = enumerate_immersions(y, budget_from(b), [&](const CombMap& f) {
      if (list) maps.push_back(map_to_json(f));
    });
    Json j{{"emitted", r.emitted}, {"partial", r.partial}};
    if (list) j["maps"] = std::move(maps);
    put(out, j);
  });
}

orlab_status orlab_picture_check(const char* picture_json, const char* y_json, int64_t e, int64_t alpha, int64_t n,
                                 int* fail, char** out) {
  return guarded([&] {
    need(picture_json, "picture");
    const Json pj = parse_json(picture_json);
    std::string y_text;
    if (y_json) {
      y_text = y_json;
    } else if (pj.contains("enlargement")) {
      y_text = pj["enlargement"].dump();
    } else {
      throw Error(ErrorCode::InvalidInput, "no target enlargement for the picture");
    }
    const SimpleEnlargement y = enlargement(y_text.c_str(), e, alpha);
    const Picture p = picture_from_json(pj);
    const ValidationReport v = validate_picture(p, y, n);
    if (fail) *fail = 0;
    Json j{{"valid", v.empty()}, {"violations", violations_to_json(v)}};
    if (v.empty()) {
      const ReducedVerdict red = is_reduced(p, y);
      j["reduced"] = red.reduced;
      if (red.pair) j["cancelling_pair"] = {red.pair->first, red.pair->second};
      if (red.arc) j["cancelling_arc"] = *red.arc;
      const DhReport d = check_dh(p, y, n);
      j["dh"] = Json{{"verdict", bound_verdict_name(d.verdict)},
                     {"boundary_points", d.count},
                     {"bound", d.bound},
                     {"vertices", d.vertices},
                     {"euler", p.surface.euler()}};
      if (d.at_most_one_vertex) j["dh"]["at_most_one_vertex"] = *d.at_most_one_vertex;
      if (fail) *fail = d.verdict == BoundVerdict::Fail;
    }
    put(out, j);
  });
}

orlab_status orlab_order_compare(const char* g, const char* h, int budget, char** out) {
  return guarded([&] {
    need(g, "g");
    need(h, "h");
    const Word wg = parse_word(g), wh = parse_word(h);
    Json j = comparison_json(compare(wg, wh, budget));
    j["g"] = word_to_json(free_reduce(wg));
    j["h"] = word_to_json(free_reduce(wh));
    put(out, j);
  });
}

orlab_status orlab_order_sample(int64_t samples, uint64_t seed, int budget, int64_t* fail, char** out) {
  return guarded([&] {
    std::mt19937_64 rng(seed);
    const MagnusOrder order(budget);
    long antisymmetry = 0, transitivity = 0, invariance = 0, degree = 0, undecided = 0;
    for (int64_t i = 0; i < samples; ++i) {
      const Word a = random_word(rng, 6), b = random_word(rng, 6), c = random_word(rng, 6);
      const Comparison ab = order.compare(a, b);
      const OrderVerdict ba = order.compare(b, a).verdict;
      const OrderVerdict bc = order.compare(b, c).verdict;
      const OrderVerdict ac = order.compare(a, c).verdict;
      if (ab.verdict == OrderVerdict::Undecided) ++undecided;
      if (ba != flip(ab.verdict)) ++antisymmetry;
      if (ab.verdict == bc && ab.verdict != OrderVerdict::Undecided && ac != ab.verdict) ++transitivity;
      if (order.compare(concat(c, a), concat(c, b)).verdict != ab.verdict) ++invariance;
      const std::size_t len = free_reduce(concat(inverse(a), b)).size();
      if (ab.verdict != OrderVerdict::Equal && ab.deciding.size() > len) ++degree;
    }
    if (fail) *fail = antisymmetry + transitivity + invariance + degree + undecided;
    put(out, Json{{"samples", samples},
                  {"seed", seed},
                  {"antisymmetry_violations", antisymmetry},
                  {"transitivity_violations", transitivity},
                  {"left_invariance_violations", invariance},
                  {"deciding_degree_violations", degree},
                  {"undecided", undecided}});
  });
}

orlab_status orlab_demo_step(const orlab_map* stage, const char* boundary, int64_t cell, int64_t rotation,
                             char** out) {
  return guarded([&] {
    need(stage, "stage");
    need(boundary, "boundary");
    if (rotation < 0) rotation = 0;
    const CoherenceStep s =
        demo_coherence_step(stage->f, parse_relator_path(boundary, -1), cell, static_cast<std::size_t>(rotation));
    Json log = fold_to_json(FoldResult{s.next, s.inclusion, s.immersion, s.log})["log"];
    put(out, Json{{"next", complex_to_json(s.next)},
                  {"immersion", map_to_json(s.immersion)},
                  {"stage_map", map_to_json(s.inclusion)},
                  {"fold_log", log},
                  {"betti_before", betti_to_json(betti_numbers(stage->f.source))},
                  {"betti_after", betti_to_json(betti_numbers(s.next))}});
  });
}

}  // extern "C"
