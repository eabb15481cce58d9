// Command-line front end. Every command goes through the C API.
#include <algorithm>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "orlab/orlab.h"

namespace {

using Json = nlohmann::json;

constexpr int kOk = 0;
constexpr int kFail = 1;
constexpr int kInputError = 2;

struct InputError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct Globals {
  uint64_t seed = 1;
  std::string budget;
  std::string out;
  std::string command;
};

std::string slurp(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot read " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

// Throws on a non-OK status; the message comes from the library.
void check(orlab_status s) {
  if (s != ORLAB_OK) throw InputError(std::string(orlab_status_name(s)) + ": " + orlab_last_error());
}

class Output {
 public:
  ~Output() { orlab_free(text_); }
  char** slot() { return &text_; }
  std::string str() const { return text_ ? text_ : ""; }

 private:
  char* text_ = nullptr;
};

struct Complex {
  orlab_complex* k = nullptr;
  explicit Complex(const std::string& path) { check(orlab_complex_parse(slurp(path).c_str(), &k)); }
  ~Complex() { orlab_complex_free(k); }
};

struct Map {
  orlab_map* f = nullptr;
  explicit Map(const std::string& path) { check(orlab_map_parse(slurp(path).c_str(), &f)); }
  ~Map() { orlab_map_free(f); }
};

void emit(const Globals& g, const std::string& json) {
  std::cout << json;
  if (!g.out.empty()) {
    std::filesystem::create_directories(g.out);
    std::ofstream(std::filesystem::path(g.out) / (g.command + ".json")) << json;
  }
}

// "v,e,c[,degree[,seconds]]"; a lone 0 is the empty budget.
Json parse_budget(const std::string& text) {
  Json b = Json::object();
  if (text.empty()) return b;
  std::vector<double> parts;
  std::stringstream ss(text);
  for (std::string item; std::getline(ss, item, ',');) {
    try {
      parts.push_back(std::stod(item));
    } catch (const std::exception&) {
      throw InputError("bad --budget " + text);
    }
  }
  const char* keys[] = {"vertices", "edges", "cells", "max_degree", "seconds"};
  if (parts.size() > 5) throw InputError("bad --budget " + text);
  for (std::size_t i = 0; i < parts.size(); ++i) {
    if (i < 4) {
      b[keys[i]] = static_cast<long>(parts[i]);
    } else {
      b[keys[i]] = parts[i];
    }
  }
  if (parts.size() == 1) b["edges"] = b["cells"] = 0;
  return b;
}

std::vector<std::string> split_list(const std::string& s) {
  std::vector<std::string> out;
  std::stringstream ss(s);
  for (std::string item; std::getline(ss, item, ',');) {
    if (!item.empty()) out.push_back(item);
  }
  return out;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"2-complexes, immersions and the bound checkers of one-relator products"};
  app.require_subcommand(1);
  app.fallthrough();
  Globals g;
  app.add_option("--seed", g.seed, "seed for sampled checks");
  app.add_option("--budget", g.budget, "enumeration budget v,e,c[,degree[,seconds]]");
  app.add_option("--out", g.out, "directory for output files");

  std::string file, file2;
  long p = 0, n = 2;
  int64_t e = ORLAB_NONE, alpha = ORLAB_NONE;
  auto ids = [&](CLI::App* c) {
    c->add_option("--e", e, "id of the edge e");
    c->add_option("--alpha", alpha, "id of the 2-cell alpha");
  };
  int result = kOk;
  std::function<void()> run;

  auto* validate = app.add_subcommand("validate", "validate a complex or map file");
  validate->add_option("file", file)->required();
  validate->callback([&] {
    run = [&] {
      const std::string text = slurp(file);
      Output out;
      int valid = 0;
      if (text.find("\"vertex_map\"") != std::string::npos) {
        Map m(file);
        check(orlab_map_validate(m.f, &valid, out.slot()));
      } else {
        Complex k(file);
        check(orlab_complex_validate(k.k, &valid, out.slot()));
      }
      emit(g, out.str());
      result = valid ? kOk : kFail;
    };
  });

  auto* euler = app.add_subcommand("euler", "Euler characteristic");
  euler->add_option("file", file)->required();
  euler->callback([&] {
    run = [&] {
      Complex k(file);
      int64_t chi = 0;
      check(orlab_complex_euler(k.k, &chi));
      emit(g, Json{{"euler", chi}}.dump() + "\n");
    };
  });

  auto* homology = app.add_subcommand("homology", "Betti numbers and torsion");
  homology->add_option("file", file)->required();
  homology->add_option("--mod", p, "prime coefficient field");
  homology->callback([&] {
    run = [&] {
      Complex k(file);
      Output out;
      check(orlab_complex_homology(k.k, p, out.slot()));
      emit(g, out.str());
    };
  });

  auto* fold = app.add_subcommand("fold", "factor a map through an immersion by folding");
  fold->add_option("map", file)->required();
  fold->callback([&] {
    run = [&] {
      Map m(file);
      Output out;
      check(orlab_map_fold(m.f, out.slot()));
      emit(g, out.str());
    };
  });

  bool branch = false;
  auto* imm = app.add_subcommand("immersion-check", "local injectivity of a map");
  imm->add_option("map", file)->required();
  imm->add_flag("--branch", branch, "check the branch-map condition");
  imm->callback([&] {
    run = [&] {
      Map m(file);
      Output out;
      int ok = 0;
      check(orlab_map_immersion(m.f, branch, &ok, out.slot()));
      emit(g, out.str());
      result = ok ? kOk : kFail;
    };
  });

  std::string relator;
  int64_t e_source = ORLAB_NONE, e_target = ORLAB_NONE;
  auto* enlarge = app.add_subcommand("enlarge", "add e and alpha to X and check the three conditions");
  enlarge->add_option("X", file)->required();
  enlarge->add_option("--relator", relator, "attaching path: edge ids, -id inverse, e / -e for the new edge");
  enlarge->add_option("--from", e_source, "source vertex of e");
  enlarge->add_option("--to", e_target, "target vertex of e");
  ids(enlarge);
  enlarge->callback([&] {
    run = [&] {
      Complex x(file);
      if (e_source < 0 || e_target < 0) {
        // A one-vertex X takes a loop.
        Output xs;
        check(orlab_complex_json(x.k, xs.slot()));
        const Json j = Json::parse(xs.str());
        if (j["vertices"].size() != 1) throw InputError("--from and --to are required when X has several vertices");
        e_source = e_target = j["vertices"][0].get<int64_t>();
      }
      Output out;
      check(orlab_enlarge(x.k, e_source, e_target, e, relator.c_str(), alpha, out.slot()));
      emit(g, out.str());
    };
  });

  auto* cover = app.add_subcommand("branched-cover", "n-fold branched cover");
  cover->add_option("Y", file)->required();
  cover->add_option("-n", n, "branch order")->required();
  ids(cover);
  cover->callback([&] {
    run = [&] {
      Output out;
      check(orlab_branched_cover(slurp(file).c_str(), e, alpha, n, out.slot()));
      emit(g, out.str());
    };
  });

  int order_budget = 16;
  auto* split = app.add_subcommand("split-relator", "order-minimal split R = U.V");
  split->add_option("Y", file)->required();
  split->add_option("--order-budget", order_budget, "maximum Magnus truncation degree");
  ids(split);
  split->callback([&] {
    run = [&] {
      Output out;
      check(orlab_split_relator(slurp(file).c_str(), e, alpha, order_budget, out.slot()));
      emit(g, out.str());
    };
  });

  auto* classify = app.add_subcommand("classify-edges", "low, high and associated edges of the cells over alpha");
  classify->add_option("map", file)->required();
  ids(classify);
  classify->callback([&] {
    run = [&] {
      Map m(file);
      Output out;
      check(orlab_classify_edges(m.f, e, alpha, out.slot()));
      emit(g, out.str());
    };
  });

  bool torsion_free = false;
  auto* collapse = app.add_subcommand("collapse", "low-edge almost-collapse sequence onto a trivial-image component");
  collapse->add_option("Y_prime", file)->required();
  collapse->add_option("map", file2)->required();
  collapse->add_flag("--torsion-free", torsion_free, "require k = 1 at every step");
  ids(collapse);
  collapse->callback([&] {
    run = [&] {
      Complex yp(file);
      Map m(file2);
      Output a, b;
      check(orlab_complex_json(yp.k, a.slot()));
      check(orlab_map_json(m.f, b.slot()));
      if (Json::parse(a.str()) != Json::parse(b.str())["source"]) {
        throw InputError("Y' differs from the source of the map");
      }
      Output out;
      int stuck = 0;
      check(orlab_collapse(m.f, e, alpha, torsion_free, &stuck, out.slot()));
      emit(g, out.str());
      result = stuck ? kFail : kOk;
    };
  });

  std::string suite, replay, checks, covers, primes;
  long pictures = -1;
  bool timings = false;
  auto* verify = app.add_subcommand("verify-bounds", "run the theorem checks; Pass/Fail table as JSON");
  verify->add_option("Y", file);
  verify->add_option("--suite", suite, "directory of map files to check instead of enumerating");
  verify->add_option("--replay", replay, "witness bundle to re-run");
  verify->add_option("--checks", checks, "comma-separated: p-power,5beta,11k,nonpos,dh,collapse,euler,self-immersion");
  verify->add_option("--covers", covers, "branch orders, e.g. 2,3");
  verify->add_option("--primes", primes, "primes for p-power, e.g. 2,3");
  verify->add_option("--pictures", pictures, "vertex limit for dh pictures");
  verify->add_flag("--timings", timings, "include run times (the report is then not reproducible)");
  ids(verify);
  verify->callback([&] {
    run = [&] {
      Output out;
      if (!replay.empty()) {
        int fail = 0;
        check(orlab_replay_witness(slurp(replay).c_str(), &fail, out.slot()));
        emit(g, out.str());
        result = fail ? kFail : kOk;
        return;
      }
      if (file.empty()) throw InputError("verify-bounds needs Y.json or --replay");
      Json opt = Json::object();
      if (!g.budget.empty()) opt["budget"] = parse_budget(g.budget);
      if (!checks.empty()) opt["checks"] = split_list(checks);
      auto numbers = [](const std::string& s) {
        std::vector<long> v;
        for (const auto& x : split_list(s)) {
          try {
            v.push_back(std::stol(x));
          } catch (const std::exception&) {
            throw InputError("not a number: " + x);
          }
        }
        return v;
      };
      if (!covers.empty()) opt["covers"] = numbers(covers);
      if (!primes.empty()) opt["primes"] = numbers(primes);
      if (pictures >= 0) opt["picture_vertices"] = pictures;
      if (!g.out.empty()) opt["witness_dir"] = g.out;
      opt["timings"] = timings;
      opt["name"] = std::filesystem::path(file).stem().string();
      if (!suite.empty()) {
        std::vector<std::filesystem::path> files;
        for (const auto& entry : std::filesystem::directory_iterator(suite)) {
          if (entry.path().extension() == ".json") files.push_back(entry.path());
        }
        std::sort(files.begin(), files.end());
        opt["instances"] = Json::array();
        for (const auto& f : files) {
          try {
            opt["instances"].push_back(Json::parse(slurp(f.string())));
          } catch (const Json::exception& ex) {
            throw InputError(f.string() + ": " + ex.what());
          }
        }
      }
      int64_t fails = 0;
      check(orlab_verify_bounds(slurp(file).c_str(), e, alpha, opt.dump().c_str(), &fails, out.slot()));
      const Json report = Json::parse(out.str());
      std::cerr << report["table"].get<std::string>();
      emit(g, out.str());
      if (!g.out.empty()) std::ofstream(std::filesystem::path(g.out) / "report.json") << out.str();
      result = fails ? kFail : kOk;
    };
  });

  int degree = 1;
  bool full = false, count_only = false;
  auto* enumerate = app.add_subcommand("enumerate", "sources immersing (or branch-mapping) into a complex");
  enumerate->add_option("Y", file)->required();
  enumerate->add_option("--degree", degree, "largest branch index (1 = immersions)");
  enumerate->add_flag("--full", full, "also sources with edges on no 2-cell");
  enumerate->add_flag("--count", count_only, "print the count only");
  enumerate->callback([&] {
    run = [&] {
      Json b = parse_budget(g.budget);
      b["max_degree"] = degree;
      b["covered"] = !full;
      b["list"] = !count_only;
      Output out;
      check(orlab_enumerate(slurp(file).c_str(), b.dump().c_str(), out.slot()));
      emit(g, out.str());
    };
  });

  std::string target;
  auto* picture = app.add_subcommand("picture-check", "validity, reducedness and the boundary-count bound");
  picture->add_option("picture", file)->required();
  picture->add_option("-n", n, "branch order")->required();
  picture->add_option("--target", target, "enlargement file (else the picture's \"enlargement\" field)");
  ids(picture);
  picture->callback([&] {
    run = [&] {
      Output out;
      int fail = 0;
      const std::string y = target.empty() ? std::string() : slurp(target);
      check(orlab_picture_check(slurp(file).c_str(), target.empty() ? nullptr : y.c_str(), e, alpha, n, &fail,
                                out.slot()));
      emit(g, out.str());
      result = fail ? kFail : kOk;
    };
  });

  std::string word_g, word_h;
  long samples = 0;
  auto* order = app.add_subcommand("order", "compare two free-group words in the Magnus order");
  order->add_option("G", word_g, "first word");
  order->add_option("H", word_h, "second word");
  order->add_option("--order-budget", order_budget, "maximum Magnus truncation degree");
  order->add_option("--sample", samples, "check the order axioms on this many random triples");
  order->callback([&] {
    run = [&] {
      Output out;
      if (samples > 0) {
        int64_t fail = 0;
        check(orlab_order_sample(samples, g.seed, order_budget, &fail, out.slot()));
        emit(g, out.str());
        result = fail ? kFail : kOk;
        return;
      }
      check(orlab_order_compare(word_g.c_str(), word_h.c_str(), order_budget, out.slot()));
      emit(g, out.str());
    };
  });

  std::string boundary;
  int64_t cell = 0, rotation = 0;
  auto* demo = app.add_subcommand("demo-step", "glue one disc to a stage and refold");
  demo->add_option("stage", file, "map file: stage into the target")->required();
  demo->add_option("--boundary", boundary, "closed path in the stage (edge ids, -id inverse)")->required();
  demo->add_option("--cell", cell, "target 2-cell the disc maps onto")->required();
  demo->add_option("--rotation", rotation, "position of the cell's path where the boundary starts");
  demo->callback([&] {
    run = [&] {
      Map m(file);
      Output out;
      check(orlab_demo_step(m.f, boundary.c_str(), cell, rotation, out.slot()));
      emit(g, out.str());
    };
  });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& err) {
    const int code = app.exit(err);
    return code == 0 ? kOk : kInputError;
  }
  for (auto* sub : app.get_subcommands()) g.command = sub->get_name();
  try {
    run();
  } catch (const std::exception& err) {
    std::cerr << "error: " << err.what() << "\n";
    return kInputError;
  }
  return result;
}
