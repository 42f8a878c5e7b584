// Copyright 2026 The opalg Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "cli.hpp"

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>

#include "CLI11.hpp"
#include "opalg/gallery.hpp"
#include "opalg/projlab.hpp"
#include "opalg/serialize.hpp"
#include "opalg/verify.hpp"

namespace opalg::cli {

namespace {

struct RunConfig {
  std::string example;
  bool all = false;
  std::string space_path, map_path, out_path;
  std::size_t level = 0;  // 0: smith level
  int restarts = 32;
  std::uint64_t seed = 0;
  std::string format = "text";
  Tolerances tol;
  int hermitian_points = 16;
};

// Raised for input problems that map to the usage exit code.
struct InputError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

Json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot read " + path);
  try {
    return Json::parse(in);
  } catch (const nlohmann::json::exception& e) {
    throw InputError(path + ": " + e.what());
  }
}

void emit(const std::string& text, const RunConfig& cfg, std::ostream& out) {
  if (cfg.out_path.empty()) {
    out << text;
    return;
  }
  std::ofstream f(cfg.out_path);
  if (!f) throw InputError("cannot write " + cfg.out_path);
  f << text;
}

std::string fmt9(double v) {
  return format_value(FieldValue{v});
}

// "path value" lines; witnesses are left to the JSON form.
void flatten(const Json& j, const std::string& path, std::ostringstream& os) {
  if (j.is_object() && j.contains("rows") && j.contains("entries")) {
    os << path << ' ' << format_value(FieldValue{cmat_from_json(j)}) << '\n';
  } else if (j.is_object()) {
    for (const auto& [k, v] : j.items()) {
      if (k == "witness" || k == "x") continue;
      flatten(v, path.empty() ? k : path + '.' + k, os);
    }
  } else if (j.is_array()) {
    for (std::size_t i = 0; i < j.size(); ++i) flatten(j[i], path + '[' + std::to_string(i) + ']', os);
  } else if (j.is_number_float()) {
    os << path << ' ' << fmt9(j.get<double>()) << '\n';
  } else if (j.is_null()) {
    os << path << " none\n";
  } else {
    os << path << ' ' << (j.is_string() ? j.get<std::string>() : j.dump()) << '\n';
  }
}

std::string render(const Json& j, const RunConfig& cfg) {
  if (cfg.format == "json") return j.dump(2) + '\n';
  std::ostringstream os;
  flatten(j, "", os);
  return os.str();
}

int cmd_list(const RunConfig& cfg, std::ostream& out) {
  const auto infos = list_examples();
  if (cfg.format == "json") {
    Json a = Json::array();
    for (const auto& i : infos)
      a.push_back({{"name", i.name}, {"description", i.description}, {"topic", i.topic}, {"experimental", i.experimental}});
    emit(a.dump(2) + '\n', cfg, out);
    return kExitOk;
  }
  std::ostringstream os;
  for (const auto& i : infos) {
    os << i.name << "\t" << i.topic << "\t" << i.description;
    if (i.experimental) os << "\tEXPERIMENTAL";
    os << '\n';
  }
  emit(os.str(), cfg, out);
  return kExitOk;
}

ExampleBundle load_example(const std::string& name) {
  try {
    return build_example(name);
  } catch (const Error& e) {
    throw InputError(e.what());
  }
}

int cmd_build(const RunConfig& cfg, std::ostream& out) {
  emit(to_json(load_example(cfg.example)).dump(2) + '\n', cfg, out);
  return kExitOk;
}

int cmd_classify(const RunConfig& cfg, std::ostream& out) {
  std::optional<ExampleBundle> bundle;
  OpMap p;
  try {
    if (!cfg.example.empty()) {
      bundle = load_example(cfg.example);
      if (bundle->kind != ExampleBundle::Kind::projection) throw InputError(cfg.example + " is not a projection");
      p = bundle->map;
    } else {
      const Json mj = read_json_file(cfg.map_path);
      const OpSpace s = space_from_json(read_json_file(cfg.space_path), cfg.tol);
      std::vector<CMat> images;
      for (const auto& x : mj.at("images")) images.push_back(cmat_from_json(x));
      p = make_map(s, mj.at("codomain_dim").get<std::size_t>(), std::move(images),
                   mj.value("name", std::string("P")));
    }
  } catch (const Error& e) {
    throw InputError(e.what());
  } catch (const nlohmann::json::exception& e) {
    throw InputError(std::string("map: ") + e.what());
  }

  ProjectionCertificates certs;
  ClassifyOptions opts;
  opts.max_level = cfg.level;
  opts.search = search_with_restarts(cfg.restarts);
  opts.hermitian_points = cfg.hermitian_points;
  if (bundle) {
    for (const auto& c : bundle->certificates) {
      if (c.target == "P") certs.p = c.certificate;
      if (c.target == "I-P") certs.complement = c.certificate;
      if (c.target == "2P-I") certs.reflection = c.certificate;
    }
    for (const auto& a : bundle->aux)
      if (a.tag == "extension") opts.extension = &a.map;
  }
  ProjectionReport rep;
  try {
    rep = classify_projection(p, cfg.tol, certs, opts);
  } catch (const Error& e) {
    throw InputError(e.what());
  }
  Json j;
  j["tolerances"] = to_json(cfg.tol);
  j["level"] = cfg.level;
  j["restarts"] = cfg.restarts;
  j["report"] = to_json(rep);
  emit(render(j, cfg), cfg, out);
  return kExitOk;
}

std::vector<std::string> selected(const RunConfig& cfg) {
  std::vector<std::string> names;
  if (cfg.all) {
    for (const auto& i : list_examples()) names.push_back(i.name);
  } else {
    load_example(cfg.example);  // validates the name
    names.push_back(cfg.example);
  }
  return names;
}

int cmd_verify(const RunConfig& cfg, std::ostream& out) {
  const auto names = selected(cfg);
  std::ostringstream os;
  Json all = Json::array();
  std::size_t pass = 0, fail = 0, skipped = 0;
  for (const auto& name : names) {
    const VerifyResult r = verify_bundle(load_example(name), cfg.tol);
    pass += r.count(Outcome::pass);
    fail += r.count(Outcome::fail);
    skipped += r.count(Outcome::skipped);
    if (cfg.format == "json") {
      Json j;
      j["name"] = r.name;
      j["experimental"] = r.experimental;
      Json a = Json::array();
      for (const auto& x : r.results) a.push_back(to_json(x));
      j["assertions"] = std::move(a);
      all.push_back(std::move(j));
      continue;
    }
    os << "== " << r.name << (r.experimental ? " (EXPERIMENTAL)" : "") << '\n';
    for (const auto& x : r.results) os << format_result(x) << '\n';
  }
  if (cfg.format == "json") {
    Json j;
    j["examples"] = std::move(all);
    j["summary"] = {{"pass", pass}, {"fail", fail}, {"skipped", skipped}};
    os << j.dump(2) << '\n';
  } else {
    os << "summary: " << pass << " PASS, " << fail << " FAIL, " << skipped << " SKIPPED\n";
  }
  emit(os.str(), cfg, out);
  return fail == 0 ? kExitOk : kExitFail;
}

int cmd_report(const RunConfig& cfg, std::ostream& out) {
  const auto names = selected(cfg);
  Json all = Json::array();
  std::size_t fail = 0;
  for (const auto& name : names) {
    VerifyResult r = verify_bundle(load_example(name), cfg.tol);
    fail += r.count(Outcome::fail);
    all.push_back(to_json(r));
  }
  Json j;
  j["tolerances"] = to_json(cfg.tol);
  j["examples"] = std::move(all);
  emit(render(j, cfg), cfg, out);
  return fail == 0 ? kExitOk : kExitFail;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  RunConfig cfg;
  if (const char* s = std::getenv("OPALG_SEED")) {
    try {
      cfg.seed = std::stoull(s);
    } catch (const std::exception&) {
      err << "OPALG_SEED must be a non-negative integer\n";
      return kExitUsage;
    }
  }

  CLI::App app{"Projections on operator algebras: gallery, classification and verification", "opalg"};
  app.require_subcommand(1);
  auto add_format = [&](CLI::App* sc) {
    sc->add_option("--format", cfg.format, "Output format")->check(CLI::IsMember({"json", "text"}));
    sc->add_option("--out", cfg.out_path, "Write output to this file");
  };
  auto add_tol = [&](CLI::App* sc) {
    sc->add_option("--seed", cfg.seed, "Random seed (default 0 or OPALG_SEED)");
    sc->add_option("--eps-eq", cfg.tol.eps_eq, "Entrywise equality tolerance");
    sc->add_option("--eps-psd", cfg.tol.eps_psd, "PSD eigenvalue floor");
    sc->add_option("--eps-norm", cfg.tol.eps_norm, "Norm slack");
  };

  CLI::App* list = app.add_subcommand("list", "List the gallery");
  add_format(list);

  CLI::App* build = app.add_subcommand("build", "Write a gallery bundle as JSON");
  build->add_option("name", cfg.example, "Example name")->required();
  build->add_option("--out", cfg.out_path, "Output file");

  CLI::App* classify = app.add_subcommand("classify", "Classify a projection");
  auto* sp = classify->add_option("--space", cfg.space_path, "OpSpace JSON file");
  auto* mp = classify->add_option("--map", cfg.map_path, "OpMap JSON file");
  auto* ex = classify->add_option("--example", cfg.example, "Gallery example name");
  sp->needs(mp);
  mp->needs(sp);
  ex->excludes(sp)->excludes(mp);
  classify->add_option("--level", cfg.level, "Highest amplification level (default: smith level)");
  classify->add_option("--restarts", cfg.restarts, "Random restarts per level")->check(CLI::NonNegativeNumber);
  classify->add_option("--hermitian-points", cfg.hermitian_points, "Grid size in t")->check(CLI::PositiveNumber);
  add_format(classify);
  add_tol(classify);

  CLI::App* verify = app.add_subcommand("verify", "Check expected assertions");
  CLI::App* report = app.add_subcommand("report", "Full evaluation report");
  for (CLI::App* sc : {verify, report}) {
    auto* n = sc->add_option("name", cfg.example, "Example name");
    auto* a = sc->add_flag("--all", cfg.all, "Every registry entry");
    n->excludes(a);
    add_format(sc);
    add_tol(sc);
  }

  std::vector<std::string> rev(args.rbegin(), args.rend());
  try {
    app.parse(rev);
  } catch (const CLI::CallForHelp& e) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::CallForAllHelp& e) {
    out << app.help("", CLI::AppFormatMode::All);
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  }
  cfg.tol.seed = cfg.seed;

  try {
    cfg.tol.validate();
    if (*list) return cmd_list(cfg, out);
    if (*build) return cmd_build(cfg, out);
    if (*classify) {
      if (cfg.example.empty() && cfg.space_path.empty()) {
        throw InputError("classify needs --space and --map, or --example");
      }
      return cmd_classify(cfg, out);
    }
    if (cfg.example.empty() && !cfg.all) throw InputError("give an example name or --all");
    if (*verify) return cmd_verify(cfg, out);
    return cmd_report(cfg, out);
  } catch (const InputError& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  }
}

}  // namespace opalg::cli
