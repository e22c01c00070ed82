#include "torlog/cli.hpp"

#include <fstream>
#include <sstream>

#include <json.hpp>

namespace torlog::cli {

using json = nlohmann::ordered_json;

namespace {

constexpr const char* kVersion = "0.1.0";

std::vector<std::string> tokenize(const std::string& line) {
  std::vector<std::string> toks;
  std::istringstream is(line);
  std::string t;
  while (is >> t) toks.push_back(t);
  return toks;
}

Int parse_int(const std::string& s, int lineno) {
  try {
    return Int(s);
  } catch (const std::invalid_argument&) {
    throw ParseError(lineno, "expected an integer, got '" + s + "'");
  }
}

// integers grouped into vectors of the ambient dimension
std::vector<VecZ> parse_vectors(const std::vector<std::string>& toks, size_t from, size_t to,
                                size_t dim, int lineno) {
  if (dim == 0) throw ParseError(lineno, "ambient dimension is zero");
  if ((to - from) % dim != 0)
    throw ParseError(lineno, "coordinate count is not a multiple of the ambient dimension");
  std::vector<VecZ> out;
  for (size_t i = from; i < to; i += dim) {
    VecZ v;
    for (size_t j = 0; j < dim; ++j) v.push_back(parse_int(toks[i + j], lineno));
    out.push_back(v);
  }
  return out;
}

json json_int(const Int& x) {
  if (x.fits_slong_p()) return json(x.get_si());
  return json(x.get_str());
}

json json_vec(const VecZ& v) {
  json a = json::array();
  for (const auto& x : v) a.push_back(json_int(x));
  return a;
}

json json_vecs(const std::vector<VecZ>& vs) {
  json a = json::array();
  for (const auto& v : vs) a.push_back(json_vec(v));
  return a;
}

std::string plain_vec(const VecZ& v) { return vec_to_string(v); }

std::string plain_vecs(const std::vector<VecZ>& vs) {
  std::string s;
  for (size_t i = 0; i < vs.size(); ++i) {
    if (i) s += " ";
    s += plain_vec(vs[i]);
  }
  return s.empty() ? "-" : s;
}

}  // namespace

const MonoidEntry& ParsedFile::entry(const std::string& name) const {
  if (monoids.empty()) throw ValidationError("input declares no monoid");
  if (name.empty()) return monoids.front();
  for (const auto& m : monoids)
    if (m.name == name) return m;
  throw ValidationError("no monoid named '" + name + "'");
}

ParsedFile parse_monoid_text(const std::string& text) {
  ParsedFile out;
  struct PendingMonoid {
    std::string name;
    size_t ambient = 0;
    std::vector<VecZ> gens;
    int lineno = 0;
    std::vector<std::tuple<int, std::vector<std::string>, std::string>> deferred;  // line, toks, raw
  };
  std::vector<PendingMonoid> pending;

  std::istringstream is(text);
  std::string raw;
  int lineno = 0;
  while (std::getline(is, raw)) {
    ++lineno;
    std::string line = raw.substr(0, raw.find('#'));
    auto toks = tokenize(line);
    if (toks.empty()) continue;
    const std::string& kw = toks[0];
    if (kw == "monoid") {
      if (toks.size() != 4 || toks[2] != "ambient")
        throw ParseError(lineno, "expected: monoid <name> ambient <k>");
      PendingMonoid m;
      m.name = toks[1];
      Int k = parse_int(toks[3], lineno);
      if (k < 1 || !k.fits_ulong_p()) throw ParseError(lineno, "ambient rank must be positive");
      m.ambient = k.get_ui();
      m.lineno = lineno;
      pending.push_back(m);
    } else if (kw == "gen") {
      if (pending.empty()) throw ParseError(lineno, "gen before any monoid");
      auto vs = parse_vectors(toks, 1, toks.size(), pending.back().ambient, lineno);
      if (vs.size() != 1) throw ParseError(lineno, "gen expects exactly one vector");
      pending.back().gens.push_back(vs[0]);
    } else if (kw == "ideal" || kw == "module" || kw == "flag") {
      if (pending.empty()) throw ParseError(lineno, kw + " before any monoid");
      pending.back().deferred.push_back({lineno, toks, line});
    } else {
      throw ParseError(lineno, "unknown keyword '" + kw + "'");
    }
  }

  for (const auto& pm : pending) {
    if (pm.gens.empty())
      throw ParseError(pm.lineno, "monoid '" + pm.name + "' declares no generators");
    MonoidEntry entry;
    entry.name = pm.name;
    entry.monoid = MonoidPresentation(pm.ambient, pm.gens);
    const MonoidPresentation& p = entry.monoid;

    for (const auto& [ln, toks, line] : pm.deferred) {
      try {
        if (toks[0] == "ideal") {
          if (toks.size() < 3 || toks[2] != "gens")
            throw ParseError(ln, "expected: ideal <name> gens <coords...>");
          auto gens = parse_vectors(toks, 3, toks.size(), pm.ambient, ln);
          entry.ideals.push_back({toks[1], MonoidIdeal(p, gens)});
        } else if (toks[0] == "module") {
          // module <name> num <coords...> [den <coords...>] [rel <ideal>]
          if (toks.size() < 3 || toks[2] != "num")
            throw ParseError(ln, "expected: module <name> num ... [den ...] [rel <ideal>]");
          size_t den_at = toks.size(), rel_at = toks.size();
          for (size_t i = 3; i < toks.size(); ++i) {
            if (toks[i] == "den") den_at = i;
            if (toks[i] == "rel") rel_at = i;
          }
          size_t num_end = std::min(den_at, rel_at);
          auto num = parse_vectors(toks, 3, num_end, pm.ambient, ln);
          std::vector<VecZ> den;
          if (den_at < toks.size())
            den = parse_vectors(toks, den_at + 1, std::min(rel_at, toks.size()), pm.ambient, ln);
          MonoidIdeal rel = MonoidIdeal::empty(p);
          std::string rel_name;
          if (rel_at < toks.size()) {
            if (rel_at + 1 >= toks.size()) throw ParseError(ln, "rel expects an ideal name");
            rel_name = toks[rel_at + 1];
            bool found = false;
            for (const auto& ni : entry.ideals)
              if (ni.name == rel_name) {
                rel = ni.ideal;
                found = true;
              }
            if (!found) throw ParseError(ln, "unknown ideal '" + rel_name + "'");
          }
          entry.modules.push_back(
              {toks[1], CombinatorialModule(p, FractionalIdeal(p, num), FractionalIdeal(p, den), rel),
               rel_name});
        } else {  // flag
          // flag <name> [complete] faces <idx...> ; <idx...> ; ...
          size_t at = 2;
          bool declared_complete = false;
          if (at < toks.size() && toks[at] == "complete") {
            declared_complete = true;
            ++at;
          }
          if (at >= toks.size() || toks[at] != "faces")
            throw ParseError(ln, "expected: flag <name> [complete] faces i j ; k l ...");
          auto pos = line.find("faces");
          std::string rest = line.substr(pos + 5);
          Flag flag;
          std::string chunk;
          std::istringstream rs(rest);
          std::vector<std::string> chunks;
          while (std::getline(rs, chunk, ';')) chunks.push_back(chunk);
          for (const auto& c : chunks) {
            std::vector<size_t> subset;
            for (const auto& t : tokenize(c)) {
              Int i = parse_int(t, ln);
              if (i < 0 || !i.fits_ulong_p()) throw ParseError(ln, "bad generator index");
              subset.push_back(i.get_ui());
            }
            flag.faces.push_back(p.face_from_generators(subset));
          }
          if (declared_complete && !flag.is_complete())
            throw ParseError(ln, "flag '" + toks[1] + "' declared complete but is not");
          entry.flags.push_back({toks[1], flag, declared_complete});
        }
      } catch (const ParseError&) {
        throw;
      } catch (const Error& e) {
        throw ParseError(ln, e.what());
      }
    }
    out.monoids.push_back(std::move(entry));
  }
  return out;
}

ParsedFile parse_monoid_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ValidationError("cannot open input file '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_monoid_text(ss.str());
}

std::string serialize(const ParsedFile& f) {
  std::ostringstream os;
  for (const auto& e : f.monoids) {
    os << "monoid " << e.name << " ambient " << e.monoid.ambient_rank() << "\n";
    for (const auto& g : e.monoid.generators()) {
      os << "gen";
      for (const auto& x : g) os << " " << x;
      os << "\n";
    }
    for (const auto& ni : e.ideals) {
      os << "ideal " << ni.name << " gens";
      for (const auto& g : ni.ideal.generators())
        for (const auto& x : g) os << " " << x;
      os << "\n";
    }
    for (const auto& nm : e.modules) {
      os << "module " << nm.name << " num";
      for (const auto& g : nm.module.numerator().generators())
        for (const auto& x : g) os << " " << x;
      if (!nm.module.denominator().generators().empty()) {
        os << " den";
        for (const auto& g : nm.module.denominator().generators())
          for (const auto& x : g) os << " " << x;
      }
      if (!nm.rel_name.empty()) os << " rel " << nm.rel_name;
      os << "\n";
    }
    for (const auto& nf : e.flags) {
      os << "flag " << nf.name;
      if (nf.declared_complete) os << " complete";
      os << " faces";
      for (size_t i = 0; i < nf.flag.faces.size(); ++i) {
        if (i) os << " ;";
        for (size_t idx : nf.flag.faces[i].generator_subset) os << " " << idx;
      }
      os << "\n";
    }
  }
  return os.str();
}

namespace {

json monoid_summary(const MonoidEntry& e) {
  json j;
  j["name"] = e.name;
  j["ambient"] = e.monoid.ambient_rank();
  j["generators"] = json_vecs(e.monoid.generators());
  return j;
}

json group_json(const AbelianGroupPresentation& g) {
  json j;
  j["free_rank"] = g.free_rank;
  json t = json::array();
  for (const auto& d : g.torsion_orders) t.push_back(json_int(d));
  j["torsion_orders"] = t;
  return j;
}

json quotient_element_json(const QuotientElement& e) {
  json j;
  j["free"] = json_vec(e.free);
  j["torsion"] = json_vec(e.torsion);
  return j;
}

const NamedModule& find_module(const MonoidEntry& e, const std::string& name) {
  if (e.modules.empty()) throw ValidationError("input declares no module for this monoid");
  if (name.empty()) return e.modules.front();
  for (const auto& m : e.modules)
    if (m.name == name) return m;
  throw ValidationError("no module named '" + name + "'");
}

struct CommandOutput {
  json machine;
  std::string text;
  int exit_code = 0;
};

CommandOutput cmd_info(const MonoidEntry& e) {
  const MonoidPresentation& p = e.monoid;
  auto q = p.sharp_quotient();
  CommandOutput out;
  json r;
  r["dimension"] = p.dimension();
  r["gp_rank"] = p.gp_rank();
  r["unit_rank"] = p.unit_rank();
  r["unit_basis"] = json_vecs(p.unit_group());
  r["sharp"] = p.is_sharp();
  r["torsion_free"] = true;  // submonoids of a lattice are torsion-free
  r["saturated"] = p.is_saturated();
  r["face_count"] = p.faces().size();
  r["prime_count"] = prime_ideals(p).size();
  r["sharp_quotient"] = group_json(q.group);
  r["sharp_quotient_torsion_free"] = is_torsion_free_quotient(q);
  json imgs = json::array();
  for (const auto& img : q.gen_images) imgs.push_back(quotient_element_json(img));
  r["generator_images"] = imgs;
  out.machine = r;

  std::ostringstream os;
  os << "monoid " << e.name << ": ambient " << p.ambient_rank() << ", " << p.generators().size()
     << " generators\n";
  os << "dimension " << p.dimension() << ", gp rank " << p.gp_rank() << ", unit rank "
     << p.unit_rank() << "\n";
  os << "sharp: " << (p.is_sharp() ? "yes" : "no") << ", saturated: "
     << (p.is_saturated() ? "yes" : "no") << ", torsion-free: yes\n";
  os << "faces: " << p.faces().size() << ", primes: " << prime_ideals(p).size() << "\n";
  os << "sharp quotient: Z^" << q.group.free_rank;
  for (const auto& d : q.group.torsion_orders) os << " + Z/" << d;
  os << (is_torsion_free_quotient(q) ? " (torsion-free)" : " (has torsion)") << "\n";
  out.text = os.str();
  return out;
}

CommandOutput cmd_saturate(const MonoidEntry& e) {
  CommandOutput out;
  MonoidPresentation sat = e.monoid.saturation();
  json r;
  r["saturated_already"] = e.monoid.is_saturated();
  r["saturation_generators"] = json_vecs(sat.generators());
  out.machine = r;
  std::ostringstream os;
  os << "saturated already: " << (e.monoid.is_saturated() ? "yes" : "no") << "\n";
  os << "saturation generators: " << plain_vecs(sat.generators()) << "\n";
  out.text = os.str();
  return out;
}

CommandOutput cmd_faces(const MonoidEntry& e) {
  CommandOutput out;
  json faces = json::array();
  std::ostringstream os;
  auto fs = e.monoid.faces();
  auto primes = prime_ideals(e.monoid);
  for (size_t i = 0; i < fs.size(); ++i) {
    json f;
    f["generator_indices"] = fs[i].generator_subset;
    f["rank"] = fs[i].rank();
    f["prime_complement_generators"] = json_vecs(primes[i].generators());
    faces.push_back(f);
    os << "face {";
    for (size_t j = 0; j < fs[i].generator_subset.size(); ++j)
      os << (j ? " " : "") << fs[i].generator_subset[j];
    os << "} rank " << fs[i].rank() << ", prime: " << plain_vecs(primes[i].generators()) << "\n";
  }
  json r;
  r["faces"] = faces;
  out.machine = r;
  out.text = os.str();
  return out;
}

CommandOutput cmd_embed(const MonoidEntry& e, const SessionSpec& spec) {
  const MonoidPresentation& p = e.monoid;
  Flag flag;
  std::string flag_origin;
  if (!spec.flag_name.empty()) {
    bool found = false;
    for (const auto& nf : e.flags)
      if (nf.name == spec.flag_name) {
        flag = nf.flag;
        found = true;
      }
    if (!found) throw ValidationError("no flag named '" + spec.flag_name + "'");
    flag_origin = spec.flag_name;
  } else if (!e.flags.empty()) {
    flag = e.flags.front().flag;
    flag_origin = e.flags.front().name;
  } else {
    flag = p.complete_flag();
    flag_origin = "(computed)";
  }
  FlagEmbedding emb = flag_embedding(p, flag);
  EmbeddingCertificate cert = verify_embedding(emb, spec.bound);

  CommandOutput out;
  json r;
  r["flag"] = flag_origin;
  r["target_dim"] = emb.target_dim();
  json rows = json::array();
  for (size_t i = 0; i < emb.matrix.rows(); ++i) rows.push_back(json_vec(emb.matrix.row(i)));
  r["matrix"] = rows;
  r["denominator"] = json_int(emb.denom);
  json imgs = json::array();
  for (const auto& g : p.generators()) {
    json im;
    im["generator"] = json_vec(g);
    im["image"] = json_vec(emb.apply(g));
    imgs.push_back(im);
  }
  r["images"] = imgs;
  json cj;
  cj["verified"] = cert.ok;
  if (!cert.ok) {
    cj["violated"] = cert.violated_clause;
    cj["detail"] = cert.detail;
  }
  out.machine = r;
  out.machine["certificate"] = cj;

  std::ostringstream os;
  os << "embedding into N^" << emb.target_dim() << " (flag " << flag_origin << ")\n";
  for (const auto& g : p.generators())
    os << "  " << plain_vec(g) << " -> " << plain_vec(emb.apply(g)) << "\n";
  os << "verified: " << (cert.ok ? "yes" : ("NO (" + cert.violated_clause + ")")) << "\n";
  out.text = os.str();
  if (!cert.ok) out.exit_code = 1;
  return out;
}

CommandOutput cmd_filtration(const MonoidEntry& e, const SessionSpec& spec) {
  const NamedModule& nm = find_module(e, spec.module_name);
  PrimeFiltration f = prime_filtration(nm.module);
  bool ok = replay_filtration(f);
  CommandOutput out;
  json steps = json::array();
  std::ostringstream os;
  os << "prime filtration of module " << nm.name << ": " << f.steps.size() << " steps\n";
  for (const auto& s : f.steps) {
    json sj;
    sj["prime_generators"] = json_vecs(s.prime.generators());
    sj["witness_degree"] = json_vec(s.witness_degree);
    steps.push_back(sj);
    os << "  prime (" << plain_vecs(s.prime.generators()) << ") at degree "
       << plain_vec(s.witness_degree) << "\n";
  }
  os << "replay certificate: " << (ok ? "valid" : "INVALID") << "\n";
  json r;
  r["module"] = nm.name;
  r["steps"] = steps;
  out.machine = r;
  out.machine["certificate"] = json{{"replay_valid", ok}};
  out.text = os.str();
  if (!ok) out.exit_code = 1;
  return out;
}

CommandOutput cmd_tflat(const MonoidEntry& e, const SessionSpec& spec) {
  const NamedModule& nm = find_module(e, spec.module_name);
  TorVerdict v = is_tflat(nm.module, nm.module.relative_to(), spec.bound, spec.jobs);
  CommandOutput out;
  json r;
  r["module"] = nm.name;
  r["bound"] = json_int(v.bound);
  r["primes_checked"] = v.primes_checked;
  std::ostringstream os;
  if (v.flat_up_to_bound) {
    r["verdict"] = "t-flat-up-to-bound";
    os << "module " << nm.name << ": t-flat up to weight " << v.bound << " (" << v.primes_checked
       << " primes checked)\n";
  } else {
    r["verdict"] = "not-t-flat";
    r["witness_prime"] = json_vecs(v.witness_prime.generators());
    r["witness_degree"] = json_vec(v.witness_degree);
    r["kernel_rank"] = v.kernel_rank;
    os << "module " << nm.name << ": NOT t-flat; witness prime ("
       << plain_vecs(v.witness_prime.generators()) << "), degree " << plain_vec(v.witness_degree)
       << ", kernel rank " << v.kernel_rank << "\n";
  }
  out.machine = r;
  out.text = os.str();
  if (spec.expect_tflat && !v.flat_up_to_bound) out.exit_code = 1;
  return out;
}

CommandOutput cmd_report(const MonoidEntry& e) {
  LogRegularityReport rep = log_regularity_report(e.monoid);
  CommandOutput out;
  json r;
  r["dimension"] = rep.dimension;
  r["gp_rank"] = rep.gp_rank;
  r["saturated"] = rep.saturated;
  r["normal_coordinate_ring"] = rep.saturated;
  r["sharp_quotient"] = group_json(rep.sharp_quotient_group);
  json hs = json::array();
  for (const auto& ph : rep.prime_heights) {
    json h;
    h["prime_generators"] = json_vecs(ph.prime.generators());
    h["localized_dimension"] = ph.localized_dimension;
    hs.push_back(h);
  }
  r["prime_heights"] = hs;
  r["log_regular"] = rep.log_regular;
  r["justification"] = rep.justification;
  out.machine = r;

  std::ostringstream os;
  os << "log regularity report\n";
  os << "dimension " << rep.dimension << ", gp rank " << rep.gp_rank << "\n";
  os << "saturated (normal coordinate ring): " << (rep.saturated ? "yes" : "no") << "\n";
  for (const auto& ph : rep.prime_heights)
    os << "  prime (" << plain_vecs(ph.prime.generators()) << "): localization has dimension "
       << ph.localized_dimension << "\n";
  os << "log regular: " << (rep.log_regular ? "yes" : "no") << " [" << rep.justification << "]\n";
  out.text = os.str();
  return out;
}

}  // namespace

RunResult run_on(const ParsedFile& file, const SessionSpec& spec) {
  RunResult res;
  try {
    const MonoidEntry& e = file.entry(spec.monoid_name);
    CommandOutput out;
    std::string cmd_name;
    switch (spec.command) {
      case Command::info: out = cmd_info(e); cmd_name = "info"; break;
      case Command::saturate: out = cmd_saturate(e); cmd_name = "saturate"; break;
      case Command::faces: out = cmd_faces(e); cmd_name = "faces"; break;
      case Command::embed: out = cmd_embed(e, spec); cmd_name = "embed"; break;
      case Command::filtration: out = cmd_filtration(e, spec); cmd_name = "filtration"; break;
      case Command::tflat: out = cmd_tflat(e, spec); cmd_name = "tflat"; break;
      case Command::report: out = cmd_report(e); cmd_name = "report"; break;
    }
    res.exit_code = out.exit_code;
    if (spec.format == OutputFormat::json) {
      json top;
      top["version"] = kVersion;
      top["command"] = cmd_name;
      json inputs;
      inputs["monoid"] = monoid_summary(e);
      top["inputs"] = inputs;
      json result = out.machine;
      json certificates = json::object();
      if (result.contains("certificate")) {
        certificates = result["certificate"];
        result.erase("certificate");
      }
      top["result"] = result;
      top["certificates"] = certificates;
      res.output = top.dump(2) + "\n";
    } else {
      res.output = out.text;
    }
  } catch (const Error& e) {
    res.exit_code = 2;
    res.error = e.what();
  }
  return res;
}

RunResult run(const SessionSpec& spec) {
  try {
    ParsedFile file = parse_monoid_file(spec.input_path);
    return run_on(file, spec);
  } catch (const Error& e) {
    RunResult res;
    res.exit_code = 2;
    res.error = e.what();
    return res;
  }
}

}  // namespace torlog::cli
