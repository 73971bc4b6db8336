// Command line front end.  Exit codes: 0 verified, 1 mathematical failure,
// 2 usage or parse error, 3 resource limit.

#include <CLI11.hpp>
#include <json.hpp>

#include <functional>
#include <iostream>
#include <sstream>

#include "neron/blowup.hpp"
#include "neron/dgal.hpp"
#include "neron/images.hpp"
#include "neron/presentation_file.hpp"
#include "neron/reps.hpp"

using json = nlohmann::ordered_json;
using namespace neron;

namespace {

constexpr int kSchemaVersion = 1;

struct Options {
  std::string file;
  std::string group, morphism, rep, connection;
  std::string centre, subgroup, numerator, cover, quotient, quotient_rep;
  unsigned level = 0, depth = 3, power = 0, order = 4, levels = 5;
  int degree_bound = 0;
  std::size_t max_pairs = GroebnerConfig{}.max_pairs;
  std::string format = "text";
};

struct Outcome {
  bool ok = true;
  std::string status = "ok";
  json result = json::object();
  std::string text;
};

// JSON and text renderings -------------------------------------------------

json strings(const std::vector<Poly>& ps) {
  json a = json::array();
  for (const auto& p : ps) a.push_back(p.str());
  return a;
}

json group_json(const HopfPresentation& h) {
  json c = json::object(), e = json::object(), s = json::object();
  for (const auto& x : h.vars()) {
    c[x] = h.comul.image(x).str();
    e[x] = h.counit.image(x).str();
    s[x] = h.antipode.image(x).str();
  }
  json out = {{"name", h.name}, {"vars", h.vars()}, {"relations", strings(h.relations.generators())},
              {"comul", c},     {"counit", e},      {"antipode", s}};
  out["level"] = h.level ? json(*h.level) : json(nullptr);
  return out;
}

json report_json(const Report& r) {
  json items = json::array();
  for (const auto& it : r.items) items.push_back({{"check", it.check}, {"ok", it.ok}, {"detail", it.detail}});
  return {{"passed", r.passed()}, {"items", items}};
}

std::string report_text(const Report& r) {
  std::ostringstream os;
  for (const auto& it : r.items) {
    os << (it.ok ? "  ok    " : "  FAIL  ") << it.check;
    if (!it.detail.empty()) os << ": " << it.detail;
    os << "\n";
  }
  return os.str();
}

json matrix_json(const PolyMatrix& m) {
  json a = json::array();
  for (const auto& row : m) a.push_back(strings(row));
  return a;
}

json matrix_json(const LaurentMatrix& m) {
  json a = json::array();
  for (const auto& row : m) {
    json r = json::array();
    for (const auto& e : row) r.push_back(e.str());
    a.push_back(r);
  }
  return a;
}

json pullback_json(const GroupMorphism& m) {
  json o = json::object();
  for (const auto& y : m.target.vars()) o[y] = m.pullback.image(y).str();
  return o;
}

std::string pullback_text(const GroupMorphism& m) {
  std::string s;
  for (const auto& y : m.target.vars()) s += "  " + y + " -> " + m.pullback.image(y).str() + "\n";
  return s;
}

json blowup_json(const BlowupResult& b, const GroebnerConfig& cfg) {
  json f = json::object();
  for (const auto& [w, fr] : b.fractions) f[w] = fr.str();
  return {{"blown", group_json(b.blown)},
          {"centre", b.centre.canonical_str(cfg)},
          {"fractions", f},
          {"adjoined", b.adjoined},
          {"projection", pullback_json(b.projection)}};
}

std::string blowup_text(const BlowupResult& b, const GroebnerConfig& cfg) {
  std::ostringstream os;
  os << group_block_text(b.blown) << "centre: " << b.centre.canonical_str(cfg) << "\nfractions:\n";
  for (const auto& [w, fr] : b.fractions) os << "  " << w << " = " << fr.str() << "\n";
  os << "projection:\n" << pullback_text(b.projection);
  return os.str();
}

json rep_json(const RepMatrix& v) {
  return {{"group", group_json(v.group)}, {"matrix", matrix_json(v.entries)}, {"det_inverse", v.det_inverse.str()}};
}

// Input helpers ---------------------------------------------------------------

struct Context {
  Options opt;
  GroebnerConfig cfg;
  PresentationFile file;

  HopfPresentation group() const {
    if (!opt.group.empty()) return resolve_group(file, opt.group);
    if (file.groups.empty()) throw Error(ErrorKind::UndefinedName, "the file defines no group");
    return resolve_group(file, file.groups.front().name);
  }
  GroupMorphism morphism() const {
    if (!opt.morphism.empty()) return resolve_morphism(file, opt.morphism);
    if (file.morphisms.empty()) throw Error(ErrorKind::UndefinedName, "the file defines no morphism");
    return resolve_morphism(file, file.morphisms.front().name);
  }
  RepMatrix rep() const {
    if (!opt.rep.empty()) return resolve_rep(file, opt.rep);
    if (file.reps.empty()) throw Error(ErrorKind::UndefinedName, "the file defines no rep");
    return resolve_rep(file, file.reps.front().name);
  }
  Connection connection() const {
    if (!opt.connection.empty()) return resolve_connection(file, opt.connection);
    if (file.connections.empty()) throw Error(ErrorKind::UndefinedName, "the file defines no connection");
    return resolve_connection(file, file.connections.front().name);
  }
  Ideal ideal(const std::string& text, const RingPtr& ring, const char* what) const {
    if (text.empty()) throw Error(ErrorKind::SyntaxError, std::string("missing --") + what);
    return Ideal(ring, parse_poly_list(text, ring));
  }
};

// Commands --------------------------------------------------------------------

Outcome cmd_check_hopf(const Context& c) {
  auto h = c.group();
  Report r = check_hopf(h, c.cfg);
  Outcome o;
  o.ok = r.passed();
  o.result = {{"group", h.name}, {"report", report_json(r)}};
  o.text = "check-hopf " + h.name + "\n" + report_text(r);
  return o;
}

Outcome cmd_check_flat(const Context& c) {
  auto h = c.group();
  Outcome o;
  o.ok = check_flat(h, c.cfg);
  std::string witness;
  if (!o.ok) {
    Ideal sat = saturate(h.relations, Poly::pi(h.ring), c.cfg);
    for (const auto& g : sat.generators())
      if (!h.relations.contains(g, c.cfg)) {
        witness = g.str();
        break;
      }
  }
  o.result = {{"group", h.name}, {"flat", o.ok}, {"witness", witness}};
  o.text = h.name + (o.ok ? " is flat\n" : " is not flat: pi*(" + witness + ") lies in the relations\n");
  return o;
}

Outcome cmd_fibre(const Context& c) {
  auto k = special_fibre(c.group());
  GroupType t = recognise_group(k, c.cfg);
  Outcome o;
  o.result = {{"fibre", group_json(k)}, {"type", to_string(t)}};
  o.text = group_block_text(k) + "type: " + to_string(t) + "\n";
  return o;
}

Outcome cmd_reduce_mod(const Context& c) {
  ReductionResult r;
  if (!c.opt.morphism.empty())
    r = reduce_mod(c.morphism(), c.opt.level, c.cfg);
  else
    r = reduce_mod(c.group(), c.opt.level, c.cfg);
  Outcome o;
  o.result = {{"level", c.opt.level},
              {"presentation", group_json(r.presentation)},
              {"trivial", r.trivial},
              {"nontrivial_witnesses", r.nontrivial_witnesses}};
  std::string w;
  for (const auto& s : r.nontrivial_witnesses) w += "  " + s + "\n";
  o.text = group_block_text(r.presentation) + "trivial over R_" + std::to_string(c.opt.level) + ": " +
           (r.trivial ? "yes" : "no") + "\n" + w;
  return o;
}

Outcome cmd_blowup(const Context& c) {
  auto g = c.group();
  auto b = neron_blowup(g, c.ideal(c.opt.centre, g.ring, "centre"), c.cfg);
  Outcome o;
  o.result = blowup_json(b, c.cfg);
  o.text = blowup_text(b, c.cfg);
  return o;
}

Outcome cmd_partial_blowup(const Context& c) {
  auto g = c.group();
  auto b = partial_blowup(g, c.ideal(c.opt.subgroup, g.ring, "subgroup"), c.opt.level, c.cfg);
  Outcome o;
  o.result = blowup_json(b, c.cfg);
  o.result["level"] = c.opt.level;
  o.text = blowup_text(b, c.cfg);
  return o;
}

Outcome cmd_auto_trunc(const Context& c) {
  auto b = automatic_truncation(c.group(), c.opt.level, c.cfg);
  Outcome o;
  o.result = blowup_json(b, c.cfg);
  o.result["level"] = c.opt.level;
  o.text = blowup_text(b, c.cfg);
  return o;
}

Outcome cmd_auto_member(const Context& c) {
  auto g = c.group();
  if (c.opt.numerator.empty()) throw Error(ErrorKind::SyntaxError, "missing --numerator");
  Poly f = parse_poly(c.opt.numerator, g.ring);
  bool member = automatic_member(f, c.opt.power, g);
  Fraction fr{f, c.opt.power};
  Outcome o;
  o.ok = member;
  o.status = member ? "member" : "not-member";
  o.result = {{"fraction", fr.str()}, {"member", member}};
  o.text = fr.str() + (member ? " lies" : " does not lie") + " in the automatic blowup of " + g.name + "\n";
  return o;
}

Outcome cmd_standard_seq(const Context& c) {
  auto seq = standard_sequence(c.morphism(), c.opt.depth, c.cfg);
  Outcome o;
  json stages = json::array();
  std::ostringstream os;
  for (std::size_t i = 0; i < seq.stages.size(); ++i) {
    const auto& st = seq.stages[i];
    std::string centre = st.centre.canonical_str(c.cfg);
    stages.push_back({{"index", i}, {"group", group_json(st.group)}, {"centre", centre},
                      {"lifted", pullback_json(st.lifted)}});
    os << "stage " << i << "\n" << group_block_text(st.group) << "centre: " << centre << "\n";
  }
  o.result = {{"depth", seq.depth}, {"stages", stages}};
  o.text = os.str();
  return o;
}

Outcome cmd_strict_transform(const Context& c) {
  auto g = c.group();
  auto b = neron_blowup(g, c.ideal(c.opt.centre, g.ring, "centre"), c.cfg);
  Ideal t = strict_transform(b, c.ideal(c.opt.subgroup, g.ring, "subgroup"), c.cfg);
  Outcome o;
  o.result = {{"blowup", blowup_json(b, c.cfg)}, {"strict_transform", t.canonical_str(c.cfg)}};
  o.text = blowup_text(b, c.cfg) + "strict transform: " + t.canonical_str(c.cfg) + "\n";
  return o;
}

Outcome cmd_check_constancy(const Context& c) {
  auto g = c.group();
  Report r = check_constancy(g, c.ideal(c.opt.subgroup, g.ring, "subgroup"), c.opt.depth, c.cfg);
  Outcome o;
  o.ok = r.passed();
  o.result = {{"group", g.name}, {"depth", c.opt.depth}, {"report", report_json(r)}};
  o.text = "check-constancy " + g.name + "\n" + report_text(r);
  return o;
}

Outcome rep_outcome(const RepMatrix& v, const std::string& title, const GroebnerConfig& cfg) {
  Report r = validate_rep(v, cfg);
  Outcome o;
  o.ok = r.passed();
  o.result = rep_json(v);
  o.result["validation"] = report_json(r);
  o.text = group_block_text(v.group) + title + ": " + v.str() + "\ndet_inverse: " + v.det_inverse.str() + "\n" +
           report_text(r);
  return o;
}

Outcome cmd_rep_validate(const Context& c) { return rep_outcome(c.rep(), "matrix", c.cfg); }

Outcome cmd_rep_blowup_identity(const Context& c) {
  auto v = c.rep();
  auto b = neron_blowup(v.group, augmentation_ideal(v.group).with({Poly::pi(v.group.ring)}), c.cfg);
  auto out = identity_blowup_rep(v, b, c.cfg);
  Outcome o = rep_outcome(out, "matrix", c.cfg);
  Report conj = check_conjugation(v, out, b, c.cfg);
  json orig = json::array();
  const std::size_t r = v.size();
  for (std::size_t i = 0; i < 2 * r; ++i) {
    json row = json::array();
    for (std::size_t j = 0; j < 2 * r; ++j) {
      std::string s;
      if (i < r && j < r)
        s = v.at(i, j).str();
      else if (i < r)
        s = Fraction{v.at(i, j - r) - Poly::constant(v.group.ring, i == j - r ? 1 : 0), 1}.str();
      else
        s = (i == j) ? "1" : "0";
      row.push_back(s);
    }
    orig.push_back(row);
  }
  o.ok = o.ok && conj.passed();
  o.result["original_form"] = orig;
  o.result["blowup"] = blowup_json(b, c.cfg);
  o.result["conjugation"] = report_json(conj);
  std::ostringstream os;
  os << "in terms of the original coordinates: [";
  for (std::size_t i = 0; i < orig.size(); ++i) {
    os << (i ? ", [" : "[");
    for (std::size_t j = 0; j < orig[i].size(); ++j) os << (j ? ", " : "") << orig[i][j].get<std::string>();
    os << "]";
  }
  os << "]\nconjugation by beta:\n" << report_text(conj);
  o.text += os.str();
  return o;
}

BlowupResult centre_blowup(const Context& c, const RepMatrix& v, const Ideal& fallback) {
  Ideal centre = c.opt.centre.empty() ? fallback : c.ideal(c.opt.centre, v.group.ring, "centre");
  return neron_blowup(v.group, centre, c.cfg);
}

Outcome cmd_rep_blowup_line(const Context& c) {
  auto v = c.rep();
  // Default centre: the stabilizer of the first basis vector.
  Ideal vector_stab = stabilizer_ideal(v, 0).with({v.at(0, 0) - Poly::constant(v.group.ring, 1)});
  auto b = centre_blowup(c, v, vector_stab);
  std::optional<RepMatrix> cover;
  if (!c.opt.cover.empty()) {
    PolyMatrix m;
    for (const auto& row : parse_matrix(c.opt.cover)) {
      std::vector<Poly> r;
      for (const auto& e : row) r.push_back(to_poly(e, b.blown.ring));
      m.push_back(std::move(r));
    }
    cover = make_rep(b.blown, std::move(m), std::nullopt, c.cfg);
  }
  auto out = line_blowup_rep(v, b, cover, c.cfg);
  Outcome o = rep_outcome(out, "matrix", c.cfg);
  o.result["blowup"] = blowup_json(b, c.cfg);
  return o;
}

Outcome cmd_rep_rescale(const Context& c) {
  auto v = c.rep();
  auto b = centre_blowup(c, v, stabilizer_ideal(v, 0));
  auto res = rescaled_rep(v, b, c.cfg);
  Outcome o = rep_outcome(res.rescaled, "rescaled", c.cfg);
  Report sum = validate_rep(res.sum, c.cfg);
  auto f = verify_faithful(res.sum, c.cfg);
  o.ok = o.ok && sum.passed();
  o.result["blowup"] = blowup_json(b, c.cfg);
  o.result["sum"] = {{"matrix", matrix_json(res.sum.entries)},
                     {"det_inverse", res.sum.det_inverse.str()},
                     {"validation", report_json(sum)},
                     {"faithful", to_string(f.verdict)}};
  o.text += "sum: " + res.sum.str() + "\nsum faithful: " + to_string(f.verdict) + "\n";
  return o;
}

Outcome cmd_rep_sum(const Context& c) {
  auto rho = c.rep();
  if (c.opt.quotient.empty() || c.opt.quotient_rep.empty())
    throw Error(ErrorKind::SyntaxError, "rep-sum needs --quotient and --quotient-rep");
  auto q = resolve_morphism(c.file, c.opt.quotient);
  auto tau = resolve_rep(c.file, c.opt.quotient_rep);
  std::vector<Poly> centre{Poly::pi(rho.group.ring)};
  for (const auto& a : augmentation_ideal(q.target).generators()) centre.push_back(q.pull(a));
  auto b = neron_blowup(rho.group, Ideal(rho.group.ring, centre), c.cfg);
  auto ab = neron_blowup(q.target, augmentation_ideal(q.target).with({Poly::pi(q.target.ring)}), c.cfg);
  auto sigma = identity_blowup_rep(tau, ab, c.cfg);
  auto out = sum_faithful(rho, sigma, b, q, ab, c.cfg);
  Outcome o = rep_outcome(out, "sum", c.cfg);
  auto f = verify_faithful(out, c.cfg);
  o.result["faithful"] = to_string(f.verdict);
  o.result["sigma"] = rep_json(sigma);
  o.text += "faithful: " + to_string(f.verdict) + "\n";
  return o;
}

Outcome cmd_rep_faithful(const Context& c) {
  auto v = c.rep();
  auto f = verify_faithful(v, c.cfg);
  Outcome o;
  o.ok = f.verdict == Faithfulness::Faithful;
  o.status = to_string(f.verdict);
  o.result = {{"verdict", to_string(f.verdict)}, {"details", f.details}, {"matrix", matrix_json(v.entries)}};
  std::string d;
  for (const auto& s : f.details) d += "  " + s + "\n";
  o.text = "faithfulness of " + v.str() + " over " + v.group.name + ": " + to_string(f.verdict) + "\n" + d;
  return o;
}

Outcome cmd_conormal(const Context& c) {
  auto g = c.group();
  auto k = special_fibre(g);
  auto data = conormal_rep(k, c.ideal(c.opt.subgroup, k.ring, "subgroup"), c.cfg);
  Outcome o;
  o.result = {{"basis", strings(data.basis)}};
  std::string text = "basis: [";
  for (std::size_t i = 0; i < data.basis.size(); ++i) text += (i ? ", " : "") + data.basis[i].str();
  text += "]\n";
  if (data.action) {
    Report r = validate_rep(*data.action, c.cfg);
    o.ok = r.passed();
    o.result["subgroup"] = group_json(data.action->group);
    o.result["matrix"] = matrix_json(data.action->entries);
    o.result["validation"] = report_json(r);
    text += "action: " + data.action->str() + "\n" + report_text(r);
  } else {
    o.result["matrix"] = json::array();
    text += "action: []\n";
  }
  o.text = text;
  return o;
}

Outcome cmd_image(const Context& c) {
  auto img = image_hopf(c.morphism(), c.cfg);
  Outcome o;
  o.result = {{"psi", group_json(img.psi)}, {"factor", pullback_json(img.factor)}};
  o.text = group_block_text(img.psi);
  return o;
}

json diptych_json(const Diptych& d, const GroebnerConfig& cfg) {
  json stages = json::array();
  for (std::size_t i = 0; i < d.stages.size(); ++i)
    stages.push_back({{"index", i},
                      {"group", group_json(d.stages[i].group)},
                      {"centre", d.stages[i].centre.canonical_str(cfg)},
                      {"projection", pullback_json(d.stages[i].projection)}});
  return {{"psi", group_json(d.image.psi)}, {"stages", stages}, {"stabilized", d.stabilized}};
}

std::string diptych_text(const Diptych& d, const GroebnerConfig& cfg) {
  std::ostringstream os;
  for (std::size_t i = 0; i < d.stages.size(); ++i)
    os << "stage " << i << "\n"
       << group_block_text(d.stages[i].group) << "centre: " << d.stages[i].centre.canonical_str(cfg) << "\n";
  os << "stabilized: " << (d.stabilized ? "yes" : "no") << "\n";
  return os.str();
}

Outcome cmd_diptych(const Context& c) {
  auto d = saturated_image(c.morphism(), c.opt.depth, c.cfg);
  Outcome o;
  o.result = diptych_json(d, c.cfg);
  o.text = diptych_text(d, c.cfg);
  return o;
}

Outcome cmd_triptych(const Context& c) {
  auto t = triptych(c.morphism(), c.opt.depth, c.cfg);
  auto u = check_unipotent_kernel(t, c.cfg);
  Outcome o;
  o.ok = t.checks.passed();
  auto entry = [&](const HopfPresentation& h) {
    return json{{"type", to_string(recognise_group(h, c.cfg))}, {"group", group_json(h)}};
  };
  o.result = {{"psi_prime_k", entry(t.psi_prime_k)},
              {"im_rho_k", entry(t.im_rho_k)},
              {"psi_k", entry(t.psi_k)},
              {"prime_embeds", t.prime_embeds},
              {"checks", report_json(t.checks)},
              {"unipotent_kernel",
               {{"certified", u.certified}, {"filtration", u.filtration}, {"detail", u.detail}}},
              {"diptych", diptych_json(t.diptych, c.cfg)}};
  std::ostringstream os;
  os << "psi'_k: " << to_string(recognise_group(t.psi_prime_k, c.cfg)) << "\n"
     << group_block_text(t.psi_prime_k) << "Im(rho_k): " << to_string(recognise_group(t.im_rho_k, c.cfg)) << "\n"
     << group_block_text(t.im_rho_k) << "psi_k: " << to_string(recognise_group(t.psi_k, c.cfg)) << "\n"
     << group_block_text(t.psi_k) << report_text(t.checks) << "kernel of psi'_k -> Im(rho_k): "
     << (u.certified ? "unipotent (" + u.detail + ")" : u.detail) << "\n";
  o.text = os.str();
  return o;
}

Outcome cmd_dgal_solve(const Context& c) {
  auto conn = c.connection();
  auto y = formal_solution(conn, c.opt.order);
  Outcome o;
  o.result = {{"order", c.opt.order}, {"solution", matrix_json(y)}};
  o.text = "Y = " + matrix_str(y) + "\n";
  return o;
}

json level_json(const TrivialityLevel& t) {
  return {{"level", t.level},
          {"status", to_string(t.status)},
          {"gauge", t.gauge ? matrix_json(*t.gauge) : json(nullptr)},
          {"obstruction", t.obstruction},
          {"degree_bound", t.degree_bound}};
}

std::string level_text(const TrivialityLevel& t) {
  std::string s = "level " + std::to_string(t.level) + ": " + to_string(t.status);
  if (t.gauge) s += ", gauge " + matrix_str(*t.gauge);
  if (!t.obstruction.empty()) s += ", " + t.obstruction;
  return s + "\n";
}

Outcome cmd_dgal_trivial(const Context& c) {
  auto t = triviality_mod(c.connection(), c.opt.level, c.opt.degree_bound);
  Outcome o;
  o.ok = t.trivial();
  o.status = to_string(t.status);
  o.result = level_json(t);
  o.text = level_text(t);
  return o;
}

Outcome cmd_dgal_diagnose(const Context& c) {
  auto d = galois_diagnostic(c.connection(), c.opt.levels, c.opt.degree_bound);
  Outcome o;
  json levels = json::array();
  std::string text;
  for (const auto& l : d.levels) {
    levels.push_back(level_json(l));
    text += level_text(l);
  }
  o.result = {{"levels", levels}, {"trivial_through", d.trivial_through}, {"summary", d.summary}};
  o.text = text + d.summary + "\n";
  return o;
}

int exit_code(ErrorKind k) {
  switch (k) {
    case ErrorKind::SyntaxError:
    case ErrorKind::UndefinedName:
    case ErrorKind::UnknownVariable:
      return 2;
    case ErrorKind::ResourceLimit:
      return 3;
    default:
      return 1;
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Neron blowups of affine group schemes over a DVR"};
  app.require_subcommand(1);
  app.fallthrough();
  Options opt;
  app.add_option("--format", opt.format, "text or json")->check(CLI::IsMember({"text", "json"}));
  app.add_option("--depth", opt.depth, "number of blowup steps");
  app.add_option("--degree-bound", opt.degree_bound, "Groebner degree bound and gauge degree bound");
  app.add_option("--max-pairs", opt.max_pairs, "critical pair budget");

  using Handler = std::function<Outcome(const Context&)>;
  std::vector<std::pair<CLI::App*, Handler>> commands;
  auto add = [&](const std::string& name, const std::string& help, Handler h) {
    CLI::App* sub = app.add_subcommand(name, help);
    sub->add_option("file", opt.file, "presentation file")->required();
    commands.emplace_back(sub, std::move(h));
    return sub;
  };
  auto group_opt = [&](CLI::App* s) { s->add_option("--group", opt.group, "group block name"); };
  auto morphism_opt = [&](CLI::App* s) { s->add_option("--morphism", opt.morphism, "morphism block name"); };
  auto rep_opt = [&](CLI::App* s) { s->add_option("--rep", opt.rep, "rep block name"); };
  auto conn_opt = [&](CLI::App* s) { s->add_option("--connection", opt.connection, "connection block name"); };

  group_opt(add("check-hopf", "verify the Hopf algebra axioms", cmd_check_hopf));
  group_opt(add("check-flat", "test pi-torsion freeness", cmd_check_flat));
  group_opt(add("fibre", "special fibre", cmd_fibre));
  {
    auto s = add("reduce-mod", "reduction modulo pi^(n+1)", cmd_reduce_mod);
    group_opt(s);
    morphism_opt(s);
    s->add_option("--level", opt.level, "n")->required();
  }
  {
    auto s = add("blowup", "Neron blowup", cmd_blowup);
    group_opt(s);
    s->add_option("--centre,--center", opt.centre, "generators of the centre, containing pi")->required();
  }
  {
    auto s = add("partial-blowup", "blowup along a flat subgroup at a level", cmd_partial_blowup);
    group_opt(s);
    s->add_option("--subgroup", opt.subgroup, "ideal of the subgroup")->required();
    s->add_option("--level", opt.level, "n")->required();
  }
  {
    auto s = add("auto-trunc", "automatic truncation", cmd_auto_trunc);
    group_opt(s);
    s->add_option("--level", opt.level, "n")->required();
  }
  {
    auto s = add("auto-member", "membership in the automatic blowup", cmd_auto_member);
    group_opt(s);
    s->add_option("--numerator", opt.numerator, "f")->required();
    s->add_option("--power", opt.power, "m")->required();
  }
  morphism_opt(add("standard-seq", "standard sequence of a morphism", cmd_standard_seq));
  {
    auto s = add("strict-transform", "strict transform of a subgroup", cmd_strict_transform);
    group_opt(s);
    s->add_option("--centre,--center", opt.centre, "centre")->required();
    s->add_option("--subgroup", opt.subgroup, "subgroup")->required();
  }
  {
    auto s = add("check-constancy", "constancy of centres along repeated blowups", cmd_check_constancy);
    group_opt(s);
    s->add_option("--subgroup", opt.subgroup, "subgroup")->required();
  }
  rep_opt(add("rep-validate", "comodule axioms", cmd_rep_validate));
  rep_opt(add("rep-blowup-identity", "faithful representation of the identity blowup", cmd_rep_blowup_identity));
  {
    auto s = add("rep-blowup-line", "representation of a line stabilizer blowup", cmd_rep_blowup_line);
    rep_opt(s);
    s->add_option("--centre,--center", opt.centre, "centre (default: stabilizer of the first basis vector)");
    s->add_option("--cover", opt.cover, "matrix of the cover over the blown group");
  }
  {
    auto s = add("rep-rescale", "rescaled representation", cmd_rep_rescale);
    rep_opt(s);
    s->add_option("--centre,--center", opt.centre, "centre (default: stabilizer of the first basis line)");
  }
  {
    auto s = add("rep-sum", "faithful sum for a normal subgroup", cmd_rep_sum);
    rep_opt(s);
    s->add_option("--quotient", opt.quotient, "morphism G -> A")->required();
    s->add_option("--quotient-rep", opt.quotient_rep, "faithful rep of A")->required();
  }
  rep_opt(add("rep-faithful", "faithfulness test", cmd_rep_faithful));
  {
    auto s = add("conormal", "conormal representation", cmd_conormal);
    group_opt(s);
    s->add_option("--subgroup", opt.subgroup, "ideal of H_0 in the special fibre")->required();
  }
  morphism_opt(add("image", "schematic image", cmd_image));
  morphism_opt(add("diptych", "diptych by repeated blowups", cmd_diptych));
  morphism_opt(add("triptych", "special fibres of the diptych", cmd_triptych));
  {
    auto s = add("dgal-solve", "formal solution at 0", cmd_dgal_solve);
    conn_opt(s);
    s->add_option("--order", opt.order, "truncation order");
  }
  {
    auto s = add("dgal-trivial", "triviality modulo pi^(n+1)", cmd_dgal_trivial);
    conn_opt(s);
    s->add_option("--level", opt.level, "n")->required();
  }
  {
    auto s = add("dgal-diagnose", "Galois diagnostics", cmd_dgal_diagnose);
    conn_opt(s);
    s->add_option("--levels", opt.levels, "highest level tested");
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  std::string name;
  Handler handler;
  for (const auto& [sub, h] : commands)
    if (sub->parsed()) {
      name = sub->get_name();
      handler = h;
    }

  const bool as_json = opt.format == "json";
  auto emit_error = [&](const std::string& kind, const std::string& message, int code) {
    if (as_json) {
      json out = {{"schema_version", kSchemaVersion}, {"command", name}, {"status", "error"}, {"result", nullptr},
                  {"error", {{"kind", kind}, {"message", message}}}};
      std::cout << out.dump(2) << "\n";
    } else {
      std::cerr << "error: " << message << "\n";
    }
    return code;
  };

  try {
    Context ctx;
    ctx.opt = opt;
    ctx.cfg.max_pairs = opt.max_pairs;
    if (opt.degree_bound > 0) ctx.cfg.max_degree = opt.degree_bound;
    ctx.file = load_presentation(opt.file);
    Outcome o = handler(ctx);
    if (!o.ok && o.status == "ok") o.status = "failed";
    if (as_json) {
      json out = {{"schema_version", kSchemaVersion}, {"command", name}, {"status", o.status}, {"result", o.result}};
      std::cout << out.dump(2) << "\n";
    } else {
      std::cout << o.text << "status: " << o.status << "\n";
    }
    return o.ok ? 0 : 1;
  } catch (const Error& e) {
    std::string kind = to_string(e.kind()), message = e.what();
    if (as_json && message.rfind(kind + ": ", 0) == 0) message.erase(0, kind.size() + 2);
    return emit_error(kind, message, exit_code(e.kind()));
  } catch (const std::exception& e) {
    return emit_error("Internal", e.what(), 1);
  }
}
