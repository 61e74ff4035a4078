#include "omlkit/cli.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <algorithm>
#include <cstdlib>
#include <fstream>
#include <sstream>

#include "omlkit/boolean.hpp"
#include "omlkit/dot.hpp"
#include "omlkit/greechie.hpp"
#include "omlkit/interchange.hpp"
#include "omlkit/modal.hpp"
#include "omlkit/sheaf.hpp"
#include "omlkit/vectors.hpp"

namespace omlkit {

using Json = nlohmann::ordered_json;

namespace {

const std::vector<std::string> kCommands = {"check", "blocks", "center", "solve", "modal", "actualize", "export"};

struct Cli {
  CLI::App app{"Finite orthomodular lattice toolkit", "omlkit"};
  RunConfig config;
  std::string format = "text";
  bool seedless = false;

  Cli() {
    app.add_option("command", config.command, "check | blocks | center | solve | modal | actualize | export")
        ->required()
        ->check(CLI::IsMember(kCommands));
    app.add_option("input", config.input_path, "input file (.gd, .ksv or .oml)")->required();
    app.add_option("--input-format", config.input_format, "override format detection")
        ->check(CLI::IsMember({"gd", "ksv", "oml"}));
    app.add_option("--mode", config.mode, "poset for solve: all | blocks")->check(CLI::IsMember({"all", "blocks"}));
    app.add_option("--extend", config.extend, "modal extension: identity | diagonal:k");
    app.add_option("--enumerate-all", config.enumerate_all, "list up to N global sections");
    app.add_option("--format", format, "text | structured")->check(CLI::IsMember({"text", "structured"}));
    app.add_flag("--seedless", seedless, "reserved");
    app.add_flag("--as-hypergraph", config.as_hypergraph, "solve a .gd file over its contexts only");
    app.add_option("--context", config.context, "actualize: block label or index");
    app.add_option("--prop", config.prop, "actualize: element name");
    app.add_option("--nu", config.nu, "actualize: index into Sec(◇L)");
    app.add_option("--to", config.export_to, "export: dot | oml | gd")->check(CLI::IsMember({"dot", "oml", "gd"}));
    app.add_option("--jobs", config.jobs, "solver threads")->check(CLI::Range(1u, 256u));
  }

  void parse(const std::vector<std::string>& args) {
    std::vector<std::string> rev(args.rbegin(), args.rend());
    app.parse(rev);
    config.structured = format == "structured";
    if (seedless) throw Error(Errc::Usage, "--seedless is reserved: nothing in omlkit is randomized");
  }
};

int exit_code(Errc code) {
  switch (category(code)) {
    case ErrorCategory::Input:
      return 2;
    case ErrorCategory::Validation:
      return 3;
    case ErrorCategory::Limit:
      return 4;
  }
  return 2;
}

std::string detect_format(const RunConfig& c) {
  if (c.input_format) return *c.input_format;
  const auto dot = c.input_path.rfind('.');
  const std::string ext = dot == std::string::npos ? "" : c.input_path.substr(dot + 1);
  if (ext == "gd" || ext == "ksv" || ext == "oml") return ext;
  throw Error(Errc::Usage, "cannot tell the format of '" + c.input_path + "'; use --input-format");
}

void require(bool ok, const std::string& flag, const std::string& command) {
  if (!ok) throw Error(Errc::Usage, flag + " does not apply to '" + command + "'");
}

void validate_flags(const RunConfig& c) {
  const std::string& cmd = c.command;
  require(!c.mode || cmd == "solve", "--mode", cmd);
  require(!c.enumerate_all || cmd == "solve", "--enumerate-all", cmd);
  require(!c.as_hypergraph || cmd == "solve", "--as-hypergraph", cmd);
  require(c.jobs == 1 || cmd == "solve", "--jobs", cmd);
  require(!c.extend || cmd == "modal" || cmd == "actualize", "--extend", cmd);
  require((!c.context && !c.prop && !c.nu) || cmd == "actualize", "--context/--prop/--nu", cmd);
  require(!c.export_to || cmd == "export", "--to", cmd);
  if (c.enumerate_all && *c.enumerate_all == 0) throw Error(Errc::Usage, "--enumerate-all needs N >= 1");
  if (cmd == "actualize" && (!c.context || !c.prop))
    throw Error(Errc::Usage, "actualize needs --context and --prop");
}

/// Everything a command may need from the input, built on demand.
class Input {
 public:
  Input(const RunConfig& c, std::string_view text) : config_(c), format_(detect_format(c)), text_(text) {
    if (format_ == "gd") {
      diagram_ = parse_greechie(text_);
    } else if (format_ == "ksv") {
      hyper_ = parse_vectors(text_);
    } else {
      candidate_ = parse_interchange(text_);
    }
  }

  const std::string& format() const { return format_; }
  const std::optional<GreechieDiagram>& diagram() const { return diagram_; }
  const std::optional<OmlCandidate>& candidate() const { return candidate_; }

  bool has_lattice() const { return format_ != "ksv"; }

  const LatticePtr& lattice() {
    if (lattice_) return lattice_;
    if (format_ == "ksv")
      throw Error(Errc::Usage, "'" + config_.command + "' needs a lattice; vector files only support check, blocks, solve, export");
    if (diagram_) {
      if (auto loop = find_short_loop(*diagram_)) {
        std::string names;
        for (std::size_t b : *loop) names += " B" + std::to_string(b + 1);
        throw Error(Errc::LoopViolation, "blocks form a loop of order " + std::to_string(loop->size()) + ":" + names,
                    *loop);
      }
      lattice_ = paste(*diagram_, config_.limits);
    } else {
      lattice_ = make_lattice(*candidate_, config_.limits);
    }
    return lattice_;
  }

  const ContextHypergraph& hypergraph() {
    if (!hyper_) {
      if (!diagram_) throw Error(Errc::Usage, "interchange files have no context hypergraph");
      hyper_ = hypergraph_from_diagram(*diagram_);
    }
    return *hyper_;
  }

  const std::vector<std::string>& warnings() const {
    static const std::vector<std::string> none;
    return hyper_ ? hyper_->warnings : none;
  }

 private:
  const RunConfig& config_;
  std::string format_;
  std::string text_;
  std::optional<GreechieDiagram> diagram_;
  std::optional<ContextHypergraph> hyper_;
  std::optional<OmlCandidate> candidate_;
  LatticePtr lattice_;
};

std::string join_names(const FiniteOML& L, const std::vector<Element>& elems) {
  std::string s;
  for (std::size_t i = 0; i < elems.size(); ++i) s += (i ? ", " : "") + L.name(elems[i]);
  return s;
}

Json names_json(const FiniteOML& L, const std::vector<Element>& elems) {
  Json arr = Json::array();
  for (Element e : elems) arr.push_back(L.name(e));
  return arr;
}

std::string context_label(const ContextHypergraph& g, const std::vector<std::size_t>& ctx) {
  std::string s = "<";
  for (std::size_t i = 0; i < ctx.size(); ++i) s += (i ? "," : "") + g.names[ctx[i]];
  return s + ">";
}

struct Output {
  std::ostringstream text;
  Json doc = Json::object();
};

// ---------------------------------------------------------------------------

void cmd_check(Input& in, Output& o) {
  if (!in.has_lattice()) {
    const auto& g = in.hypergraph();
    o.text << "ok: " << g.vectors.size() << " rays in dimension " << g.dim << ", " << g.contexts.size()
           << " contexts\n";
    o.doc["valid"] = true;
    o.doc["rays"] = g.vectors.size();
    o.doc["dimension"] = g.dim;
    o.doc["contexts"] = g.contexts.size();
    o.doc["submaximal_cliques"] = g.submaximal_cliques;
    return;
  }
  const FiniteOML& L = *in.lattice();
  const auto blocks = enumerate_blocks(in.lattice());
  const auto Z = center(L);
  o.text << "ok: orthomodular lattice, " << L.size() << " elements, " << L.atoms().size() << " atoms, "
         << blocks.size() << " blocks" << (Z.size() == L.size() ? ", Boolean" : "") << '\n';
  o.doc["valid"] = true;
  o.doc["elements"] = L.size();
  o.doc["atoms"] = L.atoms().size();
  o.doc["blocks"] = blocks.size();
  o.doc["boolean"] = Z.size() == L.size();
}

void cmd_blocks(Input& in, Output& o) {
  Json arr = Json::array();
  if (!in.has_lattice()) {
    const auto& g = in.hypergraph();
    o.text << "contexts: " << g.contexts.size() << '\n';
    for (const auto& ctx : g.contexts) {
      o.text << context_label(g, ctx) << '\n';
      Json names = Json::array();
      for (std::size_t v : ctx) names.push_back(g.names[v]);
      arr.push_back(names);
    }
    o.doc["contexts"] = arr;
    return;
  }
  const auto blocks = enumerate_blocks(in.lattice());
  o.text << "blocks: " << blocks.size() << '\n';
  for (const auto& B : blocks) {
    o.text << B.label() << '\n';
    arr.push_back(names_json(B.host(), B.atoms()));
  }
  o.doc["blocks"] = arr;
}

void cmd_center(Input& in, Output& o) {
  const FiniteOML& L = *in.lattice();
  const auto Z = center(L);
  o.text << join_names(L, Z) << '\n';
  o.doc["center"] = names_json(L, Z);
}

void cmd_solve(Input& in, const RunConfig& c, Output& o) {
  PosetPtr P;
  std::string mode;
  if (!in.has_lattice() || c.as_hypergraph) {
    if (c.mode && *c.mode == "all")
      throw Error(Errc::Usage, "--mode all needs a lattice; context hypergraphs only support blocks");
    P = SubalgebraPoset::from_hypergraph(in.hypergraph());
    mode = "blocks";
  } else {
    mode = c.mode.value_or("all");
    P = SubalgebraPoset::from_lattice(in.lattice(), mode == "all" ? PosetMode::all : PosetMode::blocks);
  }
  SolveOptions opts;
  opts.max_solutions = c.enumerate_all.value_or(1);
  opts.workers = c.jobs;
  const GlobalResult r = solve_global(P, opts);
  o.text << format_answer(*P, r, c.enumerate_all.has_value());

  o.doc["verdict"] = r.sat ? "SAT" : "UNSAT";
  o.doc["mode"] = mode;
  o.doc["nodes"] = P->size();
  o.doc["maximal_nodes"] = P->maximal().size();
  if (r.sat) {
    Json sections = Json::array();
    for (const auto& s : r.sections) {
      Json sec = Json::array();
      for (std::size_t i = 0; i < s.domain.size(); ++i)
        sec.push_back({{"node", P->node(s.domain[i]).label}, {"atom", P->atom_label(s.domain[i], s.choice[i])}});
      sections.push_back(sec);
    }
    o.doc["sections"] = sections;
    o.doc["truncated"] = r.truncated;
  } else {
    Json cert = Json::array();
    for (std::size_t b : r.certificate) cert.push_back(P->node(b).label);
    o.doc["certificate"] = cert;
  }
}

ExtensionPtr extension_for(Input& in, const RunConfig& c) {
  return modal_extend(in.lattice(), ExtensionSpec::parse(c.extend.value_or("identity")), c.limits);
}

void cmd_modal(Input& in, const RunConfig& c, Output& o) {
  const ExtensionPtr E = extension_for(in, c);
  const ModalStructure& M = E->extension();
  const FiniteOML& T = M.lattice();
  const PossibilitySpace space = possibility_space(E);
  const auto secs = sec_diamond(space);
  const AxiomReport report = check_modal_axioms(M);

  o.text << "extension: " << ExtensionSpec::parse(c.extend.value_or("identity")).to_string() << ", " << T.size()
         << " elements\n";
  o.text << "center: " << join_names(T, M.center()) << '\n';
  o.text << "element\tbox\tdiamond\n";
  Json table = Json::array();
  for (Element a = 0; a < T.size(); ++a) {
    o.text << T.name(a) << '\t' << T.name(M.box(a)) << '\t' << T.name(M.diamond(a)) << '\n';
    table.push_back({{"element", T.name(a)}, {"box", T.name(M.box(a))}, {"diamond", T.name(M.diamond(a))}});
  }
  Json axioms = Json::array();
  for (const auto& ax : report.axioms) {
    o.text << ax.name << ' ' << (ax.holds ? "holds" : "fails") << "  " << ax.law;
    Json w = Json::array();
    if (!ax.holds) {
      o.text << "  witness:";
      for (std::size_t i = 0; i < ax.witness.size(); ++i) {
        o.text << ' ' << (i ? "y=" : "x=") << T.name(ax.witness[i]);
        w.push_back(T.name(ax.witness[i]));
      }
    }
    o.text << '\n';
    axioms.push_back({{"axiom", ax.name}, {"law", ax.law}, {"holds", ax.holds}, {"witness", w}});
  }
  o.text << "possibility space: " << join_names(T, space.carrier.carrier()) << '\n';
  o.text << "Sec(◇L): " << secs.size() << '\n';

  o.doc["extension"] = ExtensionSpec::parse(c.extend.value_or("identity")).to_string();
  o.doc["elements"] = T.size();
  o.doc["center"] = names_json(T, M.center());
  o.doc["table"] = table;
  o.doc["axioms"] = axioms;
  o.doc["possibility_space"] = names_json(T, space.carrier.carrier());
  o.doc["possibility_sections"] = secs.size();
}

void cmd_actualize(Input& in, const RunConfig& c, Output& o) {
  const ExtensionPtr E = extension_for(in, c);
  const FiniteOML& L = E->base();
  const FiniteOML& T = E->extension().lattice();
  const auto blocks = enumerate_blocks(E->base_ptr());

  const BooleanSubalgebra* W = nullptr;
  for (const auto& B : blocks)
    if (B.label() == *c.context) W = &B;
  if (!W && !c.context->empty() &&
      std::all_of(c.context->begin(), c.context->end(), [](char ch) { return ch >= '0' && ch <= '9'; })) {
    const std::size_t idx = std::stoul(*c.context);
    if (idx < blocks.size()) W = &blocks[idx];
  }
  if (!W) throw Error(Errc::Usage, "no block '" + *c.context + "' (see the blocks command)");
  const auto q = L.find(*c.prop);
  if (!q) throw Error(Errc::Usage, "no element named '" + *c.prop + "'");

  const PossibilitySpace space = possibility_space(E);
  const auto secs = sec_diamond(space);
  const std::size_t nu_index = c.nu.value_or(0);
  if (nu_index >= secs.size())
    throw Error(Errc::Usage, "--nu " + std::to_string(nu_index) + " out of range; Sec(◇L) has " +
                                 std::to_string(secs.size()) + " members");
  const Actualization A = actualize(space, *W, *q, secs[nu_index]);

  o.text << "context: " << A.context.label() << '\n';
  o.text << "F_q: generated by " << T.name(A.generated->generator()) << '\n';
  o.text << "F_M: generated by " << T.name(A.maximal->generator()) << '\n';
  Json values = Json::array();
  for (const auto& [e, v] : A.hom.assignment()) {
    o.text << T.name(e) << ": " << (v ? 1 : 0) << '\n';
    values.push_back({{"element", T.name(e)}, {"value", v ? 1 : 0}});
  }
  o.doc["context"] = A.context.label();
  o.doc["prop"] = L.name(*q);
  o.doc["nu"] = nu_index;
  o.doc["generated_filter"] = T.name(A.generated->generator());
  o.doc["maximal_filter"] = T.name(A.maximal->generator());
  o.doc["assignment"] = values;
}

void cmd_export(Input& in, const RunConfig& c, Output& o) {
  const std::string to = c.export_to.value_or(in.format() == "oml" ? "oml" : "dot");
  std::string body;
  if (to == "dot") {
    if (in.diagram())
      body = export_dot(*in.diagram());
    else if (!in.has_lattice())
      body = export_dot(in.hypergraph());
    else
      throw Error(Errc::Usage, "dot export needs a Greechie diagram or vector file");
  } else if (to == "gd") {
    if (!in.diagram()) throw Error(Errc::Usage, "gd export needs a Greechie diagram");
    body = render_greechie(*in.diagram());
  } else {
    body = write_interchange(*in.lattice());
  }
  o.text << body;
  o.doc["to"] = to;
  o.doc["document"] = body;
}

}  // namespace

// ---------------------------------------------------------------------------

RunConfig parse_args(const std::vector<std::string>& args) {
  Cli cli;
  try {
    cli.parse(args);
  } catch (const CLI::ParseError& e) {
    throw Error(Errc::Usage, e.what());
  }
  return cli.config;
}

void apply_environment(RunConfig& config) {
  const char* cap = std::getenv("OMLKIT_ELEMENT_CAP");
  if (!cap || !*cap) return;
  const std::string s = cap;
  if (s.size() > 9 || !std::all_of(s.begin(), s.end(), [](char ch) { return ch >= '0' && ch <= '9'; }))
    throw Error(Errc::Usage, "OMLKIT_ELEMENT_CAP must be a positive integer");
  const std::size_t v = std::stoul(s);
  if (v == 0 || v > Limits::kHardElementCap)
    throw Error(Errc::Usage, "OMLKIT_ELEMENT_CAP must be between 1 and " + std::to_string(Limits::kHardElementCap));
  config.limits.element_cap = v;
}

RunResult run(const RunConfig& config, std::string_view input) {
  RunResult result;
  Output o;
  std::vector<std::string> warnings;
  try {
    validate_flags(config);
    Input in(config, input);
    if (config.command == "check")
      cmd_check(in, o);
    else if (config.command == "blocks")
      cmd_blocks(in, o);
    else if (config.command == "center")
      cmd_center(in, o);
    else if (config.command == "solve")
      cmd_solve(in, config, o);
    else if (config.command == "modal")
      cmd_modal(in, config, o);
    else if (config.command == "actualize")
      cmd_actualize(in, config, o);
    else if (config.command == "export")
      cmd_export(in, config, o);
    else
      throw Error(Errc::Usage, "unknown command '" + config.command + "'");
    warnings = in.warnings();
  } catch (const Error& e) {
    result.exit_code = exit_code(e.code());
    std::string msg = std::string("error: ") + e.what() + '\n';
    if (!e.witness().empty()) {
      msg += "witness:";
      for (std::size_t w : e.witness()) msg += ' ' + std::to_string(w);
      msg += '\n';
    }
    if (config.structured) {
      Json err = {{"code", std::string(errc_name(e.code()))}, {"message", e.what()}, {"witness", e.witness()}};
      Json doc = {{"command", config.command}, {"exit_code", result.exit_code}, {"error", err}};
      result.out = doc.dump(2) + '\n';
    }
    result.err = msg;
    return result;
  }
  for (const auto& w : warnings) result.err += "warning: " + w + '\n';
  if (config.structured) {
    Json doc = {{"command", config.command}, {"exit_code", 0}};
    if (!warnings.empty()) doc["warnings"] = warnings;
    for (auto& [k, v] : o.doc.items()) doc[k] = v;
    result.out = doc.dump(2) + '\n';
  } else {
    result.out = o.text.str();
  }
  return result;
}

RunResult run_command_line(const std::vector<std::string>& args) {
  if (std::find(args.begin(), args.end(), "--help") != args.end() ||
      std::find(args.begin(), args.end(), "-h") != args.end()) {
    Cli cli;
    return {0, cli.app.help(), ""};
  }
  RunConfig config;
  try {
    config = parse_args(args);
    apply_environment(config);
  } catch (const Error& e) {
    return {2, "", std::string("error: ") + e.what() + "\nrun with --help for usage\n"};
  }
  std::ifstream file(config.input_path, std::ios::binary);
  if (!file) return {2, "", "error: cannot read '" + config.input_path + "'\n"};
  std::ostringstream buf;
  buf << file.rdbuf();
  return run(config, buf.str());
}

}  // namespace omlkit
