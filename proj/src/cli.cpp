#include "rbcm/cli.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <algorithm>
#include <cerrno>
#include <cstring>
#include <fstream>
#include <map>
#include <ostream>
#include <sstream>

#include "rbcm/map_topology.hpp"

namespace rbcm::cli {

using nlohmann::json;

std::string to_string(Mode m) {
  switch (m) {
    case Mode::closed_form:
      return "closed_form";
    case Mode::brute_force:
      return "brute_force";
    case Mode::cross_validate:
      return "cross_validate";
    case Mode::a5:
      return "a5";
    case Mode::genus_atlas:
      return "genus_atlas";
  }
  return "?";
}

std::string to_string(OutputFormat f) {
  switch (f) {
    case OutputFormat::table:
      return "table";
    case OutputFormat::json:
      return "json";
    case OutputFormat::csv:
      return "csv";
  }
  return "?";
}

namespace {

bool wants(const RunConfig& cfg, RbcmType t) {
  return std::find(cfg.types.begin(), cfg.types.end(), t) != cfg.types.end();
}

std::vector<std::uint32_t> entries(const ProjMat& m) {
  return {m.entries[0].value, m.entries[1].value, m.entries[2].value, m.entries[3].value};
}

ClassRecord record_for(const ProjectiveGroup& group, const DenseGroup& dense, const IsoClass& cls) {
  const RbcmSpec& spec = cls.representative;
  const CayleyMapStruct map = map_from_spec(group, dense, spec);
  const MapSummary s = summarize(group, spec, map);
  ClassRecord r;
  r.p = group.p();
  r.type = to_string(spec.type);
  r.valence = spec.valence;
  if (cls.provenance) {
    r.family = to_string(cls.provenance->family);
    r.params = cls.provenance->describe();
  }
  r.sigma_entries = entries(spec.sigma);
  r.omega_entries = entries(spec.omega);
  r.genus = s.genus;
  r.face_length = s.face_length;
  r.vertices = s.vertices;
  r.edges = s.edges;
  r.faces = s.faces;
  return r;
}

void check_prime(std::uint32_t p, Mode mode) {
  if (p <= 3 || !is_prime(p))
    throw UsageError("invalid prime " + std::to_string(p) + ": need a prime p > 3");
  if (p > ProjectiveGroup::kMaxPrime)
    throw UsageError("p = " + std::to_string(p) + " exceeds the supported maximum " +
                     std::to_string(ProjectiveGroup::kMaxPrime));
  if ((mode == Mode::brute_force || mode == Mode::cross_validate || mode == Mode::genus_atlas) &&
      p > max_search_prime())
    throw UsageError("p = " + std::to_string(p) + " exceeds the brute-force bound " +
                     std::to_string(max_search_prime()) + " (set RBCM_MAX_P to raise it)");
}

std::map<CanonicalKey, FamilyParams> closed_form_provenance(const ProjectiveGroup& group, const Canonicalizer& canon,
                                                           RbcmType type) {
  std::map<CanonicalKey, FamilyParams> out;
  for (const auto& c : enumerate_closed_form(group, type))
    if (!c.violation)
      out.try_emplace(canon.key(c.spec), c.params);
  return out;
}

PrimeReport prime_report(const RunConfig& cfg, std::uint32_t p, int& exit_code) {
  const ProjectiveGroup group(make_context(p));
  const auto& ctx = group.field();
  const DenseGroup dense = DenseGroup::psl(group);
  PrimeReport rep;
  rep.p = p;
  rep.e = ctx.e().value;
  rep.w1 = ctx.w1().value;
  rep.w2 = ctx.w2().value;

  if (cfg.mode == Mode::cross_validate) {
    ValidationReport vr = cross_validate(group, SearchOptions{cfg.jobs});
    for (RbcmType t : {RbcmType::I, RbcmType::II}) {
      if (!wants(cfg, t))
        continue;
      for (const auto& cls : t == RbcmType::I ? vr.classes_I : vr.classes_II)
        rep.classes.push_back(record_for(group, dense, cls));
    }
    std::erase_if(vr.buckets, [&](const BucketReport& b) { return !wants(cfg, b.type); });
    rep.findings = vr.findings;
    if (!vr.agrees())
      exit_code = kExitDisagree;
    rep.validation = std::move(vr);
    return rep;
  }

  const Canonicalizer canon(group);
  for (RbcmType t : {RbcmType::I, RbcmType::II}) {
    if (!wants(cfg, t))
      continue;
    std::vector<IsoClass> classes;
    if (cfg.mode == Mode::closed_form) {
      std::vector<RbcmSpec> valid;
      std::vector<FamilyParams> params;
      for (const auto& c : enumerate_closed_form(group, t)) {
        if (c.violation) {
          rep.findings.push_back({"spurious_candidate", "type " + to_string(t) + " " + to_string(c.params.family) +
                                                            " " + c.params.describe() + ": " + *c.violation});
          exit_code = kExitDisagree;
          continue;
        }
        valid.push_back(c.spec);
        params.push_back(c.params);
      }
      classes = reduce_to_iso_classes(canon, valid);
      std::map<CanonicalKey, FamilyParams> first;
      for (std::size_t i = 0; i < valid.size(); ++i)
        first.try_emplace(canon.key(valid[i]), params[i]);
      for (auto& c : classes)
        c.provenance = first.at(c.key);
    } else {
      const SearchResult sr = enumerate_rbcms(group, t, SearchOptions{cfg.jobs});
      for (const auto& w : sr.warnings)
        rep.findings.push_back({"orbit_size_counterexample", w});
      classes = reduce_to_iso_classes(canon, sr.specs);
      const auto prov = closed_form_provenance(group, canon, t);
      for (auto& c : classes)
        if (auto it = prov.find(c.key); it != prov.end())
          c.provenance = it->second;
    }
    for (const auto& c : classes)
      rep.classes.push_back(record_for(group, dense, c));
  }
  return rep;
}

PrimeReport a5_report(const RunConfig& cfg, int& exit_code) {
  PrimeReport rep;
  rep.p = 5;
  rep.permutation_model = true;
  const ProjectiveGroup group(make_context(5));
  rep.e = group.field().e().value;
  rep.w1 = group.field().w1().value;
  rep.w2 = group.field().w2().value;

  const auto a5 = alternating_group();
  auto index_of = [&](const Perm5& g) {
    return static_cast<std::uint32_t>(std::lower_bound(a5.begin(), a5.end(), g) - a5.begin());
  };
  const DenseGroup dense(a5.size(), index_of(Perm5::identity()),
                         [&](std::uint32_t x, std::uint32_t y) { return index_of(compose(a5[x], a5[y])); });

  for (RbcmType t : {RbcmType::I, RbcmType::II}) {
    if (!wants(cfg, t))
      continue;
    const auto classes = enumerate_a5_rbcms(t == RbcmType::I ? PermRbcmType::I : PermRbcmType::II);
    std::map<std::uint32_t, std::size_t> perm_counts, matrix_counts;
    std::vector<std::uint32_t> valences;
    int index = 0;
    for (const auto& c : classes) {
      std::vector<std::uint32_t> omega, rho;
      Perm5 w = c.omega;
      for (int i = 0; i < c.valence; ++i) {
        omega.push_back(index_of(w));
        rho.push_back(static_cast<std::uint32_t>((i + 1) % c.valence));
        w = conjugate(w, c.sigma);
      }
      const CayleyMapStruct map = build_map(dense, omega, rho);
      ClassRecord r;
      r.p = 5;
      r.type = to_string(t);
      r.valence = static_cast<std::uint32_t>(c.valence);
      r.family = to_string(Family::a5);
      r.params = "n=" + std::to_string(t == RbcmType::I ? c.valence / 2 : c.valence) + ",index=" + std::to_string(index++);
      r.sigma_cycles = c.sigma.to_cycles();
      r.omega_cycles = c.omega.to_cycles();
      r.genus = map.genus;
      r.face_length = uniform_face_length(map);
      r.vertices = map.vertex_count;
      r.edges = map.edge_count;
      r.faces = map.face_count();
      rep.classes.push_back(r);
      ++perm_counts[r.valence];
      if (valences.empty() || valences.back() != r.valence)
        valences.push_back(r.valence);
    }

    const auto matrix_classes = reduce_to_iso_classes(group, enumerate_rbcms(group, t, SearchOptions{cfg.jobs}).specs);
    for (const auto& c : matrix_classes)
      ++matrix_counts[c.key.valence];
    if (perm_counts != matrix_counts) {
      rep.findings.push_back({"a5_model_mismatch", "type " + to_string(t) +
                                                       ": permutation and matrix models give different class counts"});
      exit_code = kExitDisagree;
    }

    const std::vector<std::uint32_t> expected =
        t == RbcmType::I ? std::vector<std::uint32_t>{4, 6} : std::vector<std::uint32_t>{3, 5};
    if (valences != expected) {
      std::string list;
      for (auto v : valences)
        list += (list.empty() ? "" : ",") + std::to_string(v);
      rep.findings.push_back({"a5_valences", "type " + to_string(t) + " classes occur at valences " + list});
    }
  }

  rep.steps = verify_worked_steps();
  for (const auto& s : rep.steps)
    if (!s.pass)
      exit_code = kExitDisagree;
  return rep;
}

json matrix_json(const std::vector<std::uint32_t>& m, const std::string& cycles) {
  if (!cycles.empty())
    return cycles;
  return json(m);
}

std::string matrix_text(const std::vector<std::uint32_t>& m, const std::string& cycles) {
  if (!cycles.empty())
    return cycles;
  std::string s;
  for (auto v : m)
    s += (s.empty() ? "" : " ") + std::to_string(v);
  return s;
}

json class_json(const ClassRecord& r, Mode mode) {
  json j;
  j["type"] = r.type;
  j["valence"] = r.valence;
  j["family"] = r.family.empty() ? json(nullptr) : json(r.family);
  j["params"] = r.params.empty() ? json(nullptr) : json(r.params);
  j["sigma"] = matrix_json(r.sigma_entries, r.sigma_cycles);
  j["omega"] = matrix_json(r.omega_entries, r.omega_cycles);
  j["genus"] = r.genus;
  j["face_length"] = r.face_length;
  if (mode == Mode::genus_atlas) {
    j["vertices"] = r.vertices;
    j["edges"] = r.edges;
    j["faces"] = r.faces;
  }
  return j;
}

json validation_json(const ValidationReport& vr) {
  json buckets = json::array();
  for (const auto& b : vr.buckets) {
    json jb;
    jb["type"] = to_string(b.type);
    jb["valence"] = b.valence;
    jb["brute_force_classes"] = b.brute_force_classes;
    jb["closed_form_candidates"] = b.closed_form_candidates;
    jb["closed_form_classes"] = b.closed_form_classes;
    jb["matched"] = b.matched;
    jb["misses"] = json::array();
    for (const auto& k : b.misses)
      jb["misses"].push_back({{"sigma", entries(k.sigma)}, {"omega", entries(k.omega)}});
    jb["spuria"] = json::array();
    for (const auto& s : b.spuria)
      jb["spuria"].push_back({{"family", to_string(s.params.family)}, {"params", s.params.describe()}, {"reason", s.reason}});
    jb["duplicates"] = json::array();
    for (const auto& d : b.duplicates)
      jb["duplicates"].push_back({{"family", to_string(d.second.family)},
                                  {"first", d.first.describe()},
                                  {"second", d.second.describe()},
                                  {"witness", d.witness ? json(entries(*d.witness)) : json(nullptr)}});
    jb["agrees"] = b.agrees();
    buckets.push_back(std::move(jb));
  }
  return {{"agrees", vr.agrees()}, {"buckets", std::move(buckets)}};
}

json report_json(const PrimeReport& rep, const RunConfig& cfg) {
  json doc;
  doc["meta"] = {{"p", rep.p}, {"e", rep.e}, {"w1", rep.w1}, {"w2", rep.w2}, {"version", kVersion},
                 {"mode", to_string(cfg.mode)}};
  if (rep.permutation_model)
    doc["meta"]["model"] = "permutation";
  doc["classes"] = json::array();
  for (const auto& r : rep.classes)
    doc["classes"].push_back(class_json(r, cfg.mode));
  doc["findings"] = json::array();
  for (const auto& f : rep.findings)
    doc["findings"].push_back({{"code", f.code}, {"message", f.message}});
  if (rep.validation)
    doc["validation"] = validation_json(*rep.validation);
  if (!rep.steps.empty()) {
    doc["steps"] = json::array();
    for (const auto& s : rep.steps)
      doc["steps"].push_back({{"label", s.label}, {"expected", s.expected}, {"actual", s.actual}, {"pass", s.pass}});
  }
  return doc;
}

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos)
    return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"')
      out += '"';
    out += c;
  }
  return out + "\"";
}

std::string render_csv(const RunResult& result) {
  std::ostringstream os;
  os << "p,type,valence,family,params,sigma,omega,genus,face_length\n";
  for (const auto& rep : result.reports)
    for (const auto& r : rep.classes)
      os << r.p << ',' << r.type << ',' << r.valence << ',' << csv_field(r.family) << ',' << csv_field(r.params) << ','
         << csv_field(matrix_text(r.sigma_entries, r.sigma_cycles)) << ','
         << csv_field(matrix_text(r.omega_entries, r.omega_cycles)) << ',' << r.genus << ',' << r.face_length << '\n';
  return os.str();
}

std::string render_table(const RunResult& result, const RunConfig& cfg) {
  std::ostringstream os;
  for (const auto& rep : result.reports) {
    os << "p=" << rep.p << " e=" << rep.e << " w1=" << rep.w1 << " w2=" << rep.w2 << " mode=" << to_string(cfg.mode)
       << (rep.permutation_model ? " model=permutation" : "") << '\n';
    os << "  type valence family    genus face  params / sigma / omega\n";
    for (const auto& r : rep.classes) {
      std::string family = r.family.empty() ? "-" : r.family;
      family.resize(std::max<std::size_t>(family.size(), 9), ' ');
      os << "  " << (r.type == "I" ? "I   " : "II  ") << ' ' << r.valence << std::string(r.valence < 10 ? 7 : 6, ' ')
         << family << ' ' << r.genus << std::string(r.genus < 10 ? 5 : r.genus < 100 ? 4 : r.genus < 1000 ? 3 : 2, ' ')
         << r.face_length << std::string(r.face_length < 10 ? 5 : 4, ' ') << (r.params.empty() ? "-" : r.params)
         << " / " << matrix_text(r.sigma_entries, r.sigma_cycles) << " / "
         << matrix_text(r.omega_entries, r.omega_cycles);
      if (cfg.mode == Mode::genus_atlas)
        os << " / V=" << r.vertices << " E=" << r.edges << " F=" << r.faces;
      os << '\n';
    }
    if (rep.validation) {
      os << "  validation: " << (rep.validation->agrees() ? "agree" : "DISAGREE") << '\n';
      for (const auto& b : rep.validation->buckets) {
        std::size_t witnessed = 0;
        for (const auto& d : b.duplicates)
          witnessed += d.witness.has_value();
        os << "    " << to_string(b.type) << " valence " << b.valence << ": brute " << b.brute_force_classes
           << ", candidates " << b.closed_form_candidates << ", classes " << b.closed_form_classes << ", matched "
           << b.matched << ", misses " << b.misses.size() << ", spuria " << b.spuria.size() << ", duplicates "
           << b.duplicates.size() << " (witnessed " << witnessed << ")\n";
      }
    }
    if (!rep.steps.empty()) {
      std::size_t passed = 0;
      for (const auto& s : rep.steps)
        passed += s.pass;
      os << "  worked steps: " << passed << "/" << rep.steps.size() << " pass\n";
      for (const auto& s : rep.steps)
        if (!s.pass)
          os << "    FAIL " << s.label << ": expected " << s.expected << ", got " << s.actual << '\n';
    }
    if (!rep.findings.empty()) {
      os << "  findings:\n";
      for (const auto& f : rep.findings)
        os << "    [" << f.code << "] " << f.message << '\n';
    }
  }
  return os.str();
}

}  // namespace

RunResult run(const RunConfig& config) {
  RunResult result;
  if (config.mode == Mode::a5) {
    result.reports.push_back(a5_report(config, result.exit_code));
    return result;
  }
  if (config.primes.empty())
    throw UsageError("no prime given (use --p)");
  for (std::uint32_t p : config.primes)
    check_prime(p, config.mode);
  for (std::uint32_t p : config.primes)
    result.reports.push_back(prime_report(config, p, result.exit_code));
  return result;
}

std::string render(const RunResult& result, const RunConfig& config) {
  switch (config.format) {
    case OutputFormat::json: {
      if (result.reports.size() == 1)
        return report_json(result.reports.front(), config).dump(2) + "\n";
      json arr = json::array();
      for (const auto& rep : result.reports)
        arr.push_back(report_json(rep, config));
      return arr.dump(2) + "\n";
    }
    case OutputFormat::csv:
      return render_csv(result);
    case OutputFormat::table:
      break;
  }
  return render_table(result, config);
}

std::size_t emit_report(const std::string& payload, const std::optional<std::string>& path, std::ostream& out) {
  if (!path) {
    out << payload;
    out.flush();
    return payload.size();
  }
  std::ofstream file(*path, std::ios::binary | std::ios::trunc);
  if (!file)
    throw std::runtime_error("cannot open " + *path + " for writing: " + std::strerror(errno));
  file << payload;
  file.flush();
  if (!file)
    throw std::runtime_error("write to " + *path + " failed: " + std::strerror(errno));
  return payload.size();
}

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Regular balanced Cayley maps on PSL(2,p)", "rbcm"};
  app.set_version_flag("--version", kVersion);
  app.require_subcommand(1);

  RunConfig cfg;
  std::vector<std::string> types;
  std::string mode, format;
  std::optional<std::string> out_path;

  const std::map<std::string, Mode> modes{{"closed_form", Mode::closed_form},
                                          {"brute_force", Mode::brute_force},
                                          {"cross_validate", Mode::cross_validate},
                                          {"a5", Mode::a5},
                                          {"genus_atlas", Mode::genus_atlas}};
  const std::map<std::string, OutputFormat> formats{
      {"table", OutputFormat::table}, {"json", OutputFormat::json}, {"csv", OutputFormat::csv}};

  auto add_common = [&](CLI::App* sub) {
    sub->add_option("--p", cfg.primes, "Prime (repeatable)");
    sub->add_option("--type", types, "RBCM type, I or II (repeatable; default both)")
        ->check(CLI::IsMember({"I", "II"}));
    sub->add_option("--mode", mode, "closed_form | brute_force | cross_validate | a5 | genus_atlas")
        ->check(CLI::IsMember({"closed_form", "brute_force", "cross_validate", "a5", "genus_atlas"}));
    sub->add_option("--format", format, "table | json | csv")->check(CLI::IsMember({"table", "json", "csv"}));
    sub->add_option("--out", out_path, "Output file (default stdout)");
    sub->add_option("--jobs", cfg.jobs, "Worker threads for the exhaustive search (0 = all cores)");
  };
  CLI::App* classify = app.add_subcommand("classify", "List isomorphism classes");
  CLI::App* verify = app.add_subcommand("verify", "Compare closed forms with the exhaustive search");
  CLI::App* a5 = app.add_subcommand("a5", "The A5 case in the permutation model");
  for (CLI::App* sub : {classify, verify, a5})
    add_common(sub);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? 0 : kExitUsage;
  }

  if (mode.empty())
    cfg.mode = verify->parsed() ? Mode::cross_validate : a5->parsed() ? Mode::a5 : Mode::closed_form;
  else
    cfg.mode = modes.at(mode);
  cfg.format = format.empty() ? OutputFormat::table : formats.at(format);
  cfg.output_path = out_path;
  if (!types.empty()) {
    cfg.types.clear();
    for (const auto& t : {std::string("I"), std::string("II")})
      if (std::find(types.begin(), types.end(), t) != types.end())
        cfg.types.push_back(t == "I" ? RbcmType::I : RbcmType::II);
  }

  RunResult result;
  try {
    result = run(cfg);
  } catch (const UsageError& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  }
  try {
    emit_report(render(result, cfg), cfg.output_path, out);
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  }
  return result.exit_code;
}

}  // namespace rbcm::cli
