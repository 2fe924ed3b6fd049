#include "ptv/cli.hpp"

#include <CLI11.hpp>
#include <cstdio>
#include <fstream>
#include <iomanip>
#include <json.hpp>
#include <optional>
#include <sstream>

#include "ptv/catalog.hpp"
#include "ptv/correspond.hpp"
#include "ptv/errors.hpp"
#include "ptv/existence.hpp"
#include "ptv/prym.hpp"

namespace ptv {

namespace {

using ordered_json = nlohmann::ordered_json;

// A resolved computation context: the group with its lattice action,
// optionally a weight orbit, and the class-name aliases that apply.
struct Instance {
  std::string source;
  LatticeRep rep;
  std::optional<WeightOrbit> orbit;
  std::vector<std::pair<std::string, ElemIdx>> named;
};

ordered_json parse_json_file(const std::string& path) {
  std::ifstream f(path, std::ios::binary);
  if (!f) throw ParseError("FileNotFound", "cannot open '" + path + "'");
  try {
    return ordered_json::parse(f);
  } catch (const nlohmann::json::exception& e) {
    throw ParseError("BadJson", path + ": " + e.what());
  }
}

Rat entry_to_rat(const ordered_json& v, const std::string& where) {
  if (v.is_string()) return Rat::parse(v.get<std::string>());
  if (v.is_number_integer()) return Rat(v.get<long>());
  throw ParseError("BadRational", where + ": expected a rational string");
}

LatticeRep load_group_file(const std::string& path) {
  const ordered_json j = parse_json_file(path);
  if (!j.is_object() || !j.contains("rank") || !j.contains("generators"))
    throw ParseError("BadGroupFile",
                     path + ": expected {\"rank\", \"generators\", [\"cap\"]}");
  if (!j["rank"].is_number_integer() || j["rank"].get<long>() < 1)
    throw ParseError("BadGroupFile", path + ": rank must be a positive integer");
  const int rank = j["rank"].get<int>();
  std::size_t cap = FiniteMatrixGroup::kDefaultCap;
  if (j.contains("cap")) {
    if (!j["cap"].is_number_integer() || j["cap"].get<long>() < 1)
      throw ParseError("BadGroupFile", path + ": cap must be a positive integer");
    cap = static_cast<std::size_t>(j["cap"].get<long>());
  }
  if (!j["generators"].is_array() || j["generators"].empty())
    throw ParseError("BadGroupFile", path + ": generators must be a nonempty array");
  std::vector<QMat> gens;
  for (const auto& gj : j["generators"]) {
    if (!gj.is_array() || static_cast<int>(gj.size()) != rank)
      throw ParseError("BadGroupFile", path + ": generator is not rank x rank");
    std::vector<std::vector<Rat>> rows;
    for (const auto& rj : gj) {
      if (!rj.is_array() || static_cast<int>(rj.size()) != rank)
        throw ParseError("BadGroupFile", path + ": generator is not rank x rank");
      std::vector<Rat> row;
      for (const auto& ej : rj) row.push_back(entry_to_rat(ej, path));
      rows.push_back(std::move(row));
    }
    gens.push_back(QMat::from_rows(rows));
  }
  return LatticeRep(std::make_shared<const FiniteMatrixGroup>(
      FiniteMatrixGroup::enumerate(rank, gens, cap)));
}

QVec load_weight_file(const std::string& path) {
  const ordered_json j = parse_json_file(path);
  if (!j.is_array() || j.empty())
    throw ParseError("BadWeightFile",
                     path + ": expected a nonempty array of rational strings");
  std::vector<Rat> entries;
  for (const auto& ej : j) entries.push_back(entry_to_rat(ej, path));
  return QVec(std::move(entries));
}

Instance resolve_instance(const std::string& catalog_name,
                          const std::string& group_file,
                          const std::string& weight_file, bool need_orbit) {
  if (catalog_name.empty() == group_file.empty())
    throw ParseError("MissingSource",
                     "exactly one of --catalog or --group is required");

  if (!catalog_name.empty()) {
    const CatalogEntry& e = catalog_entry(catalog_name);
    Instance inst{"catalog:" + catalog_name, e.rep, e.orbit, e.named_classes};
    if (!weight_file.empty()) {
      const Weight w = validate_weight(e.rep, load_weight_file(weight_file));
      inst.orbit = weight_orbit(e.rep, w, invariant_form(e.rep, w));
    }
    return inst;
  }

  LatticeRep rep = load_group_file(group_file);
  Instance inst{"file:" + group_file, rep, std::nullopt, {}};
  if (!weight_file.empty()) {
    const Weight w = validate_weight(rep, load_weight_file(weight_file));
    inst.orbit = weight_orbit(rep, w, invariant_form(rep, w));
  } else if (need_orbit) {
    throw ParseError("MissingWeight",
                     "--group sources need --weight for this command");
  }
  return inst;
}

// Resolves "C1" / "K3" style class names against the instance.
ElemIdx class_by_name(const Instance& inst, const std::string& name) {
  for (const auto& [nm, el] : inst.named)
    if (nm == name) return el;
  const auto& g = inst.rep.group();
  if (name.size() >= 2 && name[0] == 'K' && name[1] != '0') {
    std::size_t pos = 0;
    int id = 0;
    try {
      id = std::stoi(name.substr(1), &pos);
    } catch (const std::exception&) {
      pos = 0;
    }
    if (pos == name.size() - 1) {
      for (const auto& cls : g.cyclic_subgroup_classes())
        if (cls.id == id) return cls.representative;
    }
  }
  throw ParseError("UnknownClassName", "no cyclic class named '" + name + "'");
}

std::string class_display(const Instance& inst, int id) {
  const auto& g = inst.rep.group();
  for (const auto& [nm, el] : inst.named)
    if (g.cyclic_class_id(el) == id) return nm;
  return "K" + std::to_string(id);
}

CoveringData parse_branch(const Instance& inst, const std::string& text) {
  if (text.empty())
    throw ParseError("BadBranchString", "empty branch string");
  CoveringData cov;
  std::stringstream ss(text);
  std::string token;
  while (std::getline(ss, token, ',')) {
    const auto colon = token.find(':');
    if (colon == std::string::npos || colon == 0 || colon + 1 == token.size())
      throw ParseError("BadBranchString",
                       "expected NAME:COUNT, got '" + token + "'");
    const std::string name = token.substr(0, colon);
    const std::string count = token.substr(colon + 1);
    if (count.find_first_not_of("0123456789") != std::string::npos)
      throw ParseError("BadBranchString",
                       "count must be a positive integer in '" + token + "'");
    long mult = 0;
    try {
      mult = std::stol(count);
    } catch (const std::exception&) {
      throw ParseError("BadBranchString", "count out of range in '" + token + "'");
    }
    cov.branch.push_back({class_by_name(inst, name), mult});
  }
  if (cov.branch.empty())
    throw ParseError("BadBranchString", "empty branch string");
  return cov;
}

std::string int_s(const Int& v) { return v.get_str(); }

ordered_json matrix_json(const QMat& m) {
  ordered_json rows = ordered_json::array();
  for (int i = 0; i < m.rows(); ++i) {
    ordered_json row = ordered_json::array();
    for (int j = 0; j < m.cols(); ++j) row.push_back(m.at(i, j).str());
    rows.push_back(std::move(row));
  }
  return rows;
}

ordered_json vector_json(const QVec& v) {
  ordered_json out = ordered_json::array();
  for (int i = 0; i < v.dim(); ++i) out.push_back(v[i].str());
  return out;
}

// All structured output goes through here: stdout by default, or an
// atomic replace of --out (write to a sibling temp file, then rename).
void write_output(const std::string& text, const std::string& out_path,
                  std::ostream& out) {
  if (out_path.empty()) {
    out << text;
    return;
  }
  const std::string tmp = out_path + ".tmp~";
  {
    std::ofstream f(tmp, std::ios::binary | std::ios::trunc);
    if (!f) throw ParseError("WriteFailed", "cannot open '" + tmp + "'");
    f << text;
    f.flush();
    if (!f) throw ParseError("WriteFailed", "short write to '" + tmp + "'");
  }
  if (std::rename(tmp.c_str(), out_path.c_str()) != 0)
    throw ParseError("WriteFailed", "cannot rename onto '" + out_path + "'");
}

std::string dump(const ordered_json& j) { return j.dump(2) + "\n"; }

// ---- catalog ----

int cmd_catalog_list(const std::string& format, const std::string& out_path,
                     std::ostream& out) {
  if (format == "json") {
    ordered_json j;
    j["version"] = kToolVersion;
    j["entries"] = catalog_names();
    write_output(dump(j), out_path, out);
  } else {
    std::string text;
    for (const auto& n : catalog_names()) text += n + "\n";
    write_output(text, out_path, out);
  }
  return 0;
}

int cmd_catalog_show(const std::string& name, const std::string& format,
                     const std::string& out_path, std::ostream& out) {
  const CatalogEntry& e = catalog_entry(name);
  const auto& g = e.orbit.group();
  const Int expo = exponent(e.orbit);
  const Int deg = kanev_degree(e.orbit);

  struct ClassInfo {
    std::string nm;
    int id, sub_order, fix;
    std::size_t size, dc;
  };
  std::vector<ClassInfo> classes;
  for (const auto& [nm, el] : e.named_classes) {
    const auto& cls = g.conjugacy_class_of_cyclic(el);
    const Subgroup k = g.subgroup_from_generators({el});
    classes.push_back({nm, cls.id, cls.subgroup_order,
                       fixed_subspace_dim(e.rep, k), cls.class_size,
                       double_cosets_via_orbit(e.orbit, k)});
  }

  if (format == "json") {
    ordered_json j;
    j["version"] = kToolVersion;
    j["name"] = e.name;
    j["rank"] = g.rank();
    j["group-order"] = static_cast<std::uint64_t>(g.order());
    j["orbit-size"] = e.orbit.size();
    j["stabilizer-order"] =
        static_cast<std::uint64_t>(e.orbit.stabilizer().order());
    j["weight"] = vector_json(e.weight.coords());
    j["ww"] = e.orbit.ww().str();
    j["exponent"] = int_s(expo);
    j["degree"] = int_s(deg);
    ordered_json arr = ordered_json::array();
    for (const auto& c : classes) {
      ordered_json cj;
      cj["name"] = c.nm;
      cj["class-id"] = c.id;
      cj["subgroup-order"] = c.sub_order;
      cj["class-size"] = static_cast<std::uint64_t>(c.size);
      cj["double-cosets"] = static_cast<std::uint64_t>(c.dc);
      cj["fix-dim"] = c.fix;
      arr.push_back(std::move(cj));
    }
    j["classes"] = std::move(arr);
    write_output(dump(j), out_path, out);
  } else {
    std::ostringstream t;
    t << "instance          " << e.name << "\n"
      << "rank              " << g.rank() << "\n"
      << "group order       " << g.order() << "\n"
      << "orbit size d      " << e.orbit.size() << "\n"
      << "stabilizer order  " << e.orbit.stabilizer().order() << "\n"
      << "weight            " << e.weight.coords().str() << "\n"
      << "(w,w)             " << e.orbit.ww().str() << "\n"
      << "exponent e        " << int_s(expo) << "\n"
      << "degree of K       " << int_s(deg) << "\n"
      << "classes:\n";
    t << "  name  id  |K|  class-size  double-cosets  fix\n";
    for (const auto& c : classes)
      t << "  " << std::left << std::setw(6) << c.nm << std::setw(4) << c.id
        << std::setw(5) << c.sub_order << std::setw(12) << c.size
        << std::setw(15) << c.dc << c.fix << "\n";
    write_output(t.str(), out_path, out);
  }
  return 0;
}

// ---- analyze ----

int cmd_analyze(const Instance& inst, const std::string& branch_str,
                const std::string& format, const std::string& out_path,
                bool emit_matrices, std::ostream& out) {
  const WeightOrbit& orbit = *inst.orbit;
  const CoveringData cov = parse_branch(inst, branch_str);
  verify_master_identity(orbit);
  const PrymReport r = analyze(inst.rep, orbit, cov);

  if (format == "json") {
    ordered_json j;
    j["version"] = kToolVersion;
    ordered_json echo;
    echo["source"] = inst.source;
    echo["weight"] = vector_json(orbit.weight());
    echo["branch"] = branch_str;
    j["input-echo"] = std::move(echo);
    ordered_json inv;
    inv["d"] = r.d;
    inv["e"] = int_s(r.e);
    inv["deg"] = int_s(r.degree);
    inv["ww"] = r.ww.str();
    inv["genus"] = int_s(r.genus);
    inv["dimP"] = int_s(r.dim_p);
    inv["F"] = int_s(r.fixed_points);
    inv["verdict"] = r.verdict;
    inv["group-order"] = static_cast<std::uint64_t>(r.group_order);
    inv["stabilizer-order"] = static_cast<std::uint64_t>(r.stab_order);
    inv["fixed-point-free"] = r.fixed_point_free;
    inv["family-dim"] = r.family_dim;
    inv["faithful"] = r.faithful;
    j["invariants"] = std::move(inv);
    ordered_json arr = ordered_json::array();
    for (const auto& c : r.classes) {
      ordered_json cj;
      cj["name"] = class_display(inst, c.class_id);
      cj["class-id"] = c.class_id;
      cj["subgroup-order"] = c.subgroup_order;
      cj["multiplicity"] = c.multiplicity;
      cj["double-cosets"] = static_cast<std::uint64_t>(c.double_cosets);
      cj["fix-dim"] = c.fix_dim;
      cj["f-contribution"] = int_s(c.f_contribution);
      arr.push_back(std::move(cj));
    }
    j["per-class"] = std::move(arr);
    if (emit_matrices) {
      ordered_json m;
      m["schur"] = matrix_json(schur_matrix(orbit));
      m["kanev"] = matrix_json(kanev_matrix(orbit));
      j["matrices"] = std::move(m);
    }
    write_output(dump(j), out_path, out);
  } else {
    std::ostringstream t;
    t << "source            " << inst.source << "\n"
      << "group order       " << r.group_order << "\n"
      << "orbit size d      " << r.d << "\n"
      << "stabilizer order  " << r.stab_order << "\n"
      << "(w,w)             " << r.ww.str() << "\n"
      << "exponent e        " << int_s(r.e) << "\n"
      << "degree of K       " << int_s(r.degree) << "\n"
      << "genus of C        " << int_s(r.genus) << "\n"
      << "dim P             " << int_s(r.dim_p) << "\n"
      << "fixed points F    " << int_s(r.fixed_points) << "\n"
      << "family dim        " << r.family_dim << "\n"
      << "faithful          " << (r.faithful ? "yes" : "no") << "\n"
      << "verdict           "
      << (r.verdict ? "certified, exponent " + int_s(r.e) : "not certified")
      << "\n"
      << "classes:\n"
      << "  name  alpha  double-cosets  fix  contribution\n";
    for (const auto& c : r.classes)
      t << "  " << std::left << std::setw(6) << class_display(inst, c.class_id)
        << std::setw(7) << c.multiplicity << std::setw(15) << c.double_cosets
        << std::setw(5) << c.fix_dim << int_s(c.f_contribution) << "\n";
    write_output(t.str(), out_path, out);
  }
  return 0;
}

// ---- kanev ----

int cmd_kanev(const Instance& inst, const std::string& format,
              const std::string& out_path, std::ostream& out) {
  const WeightOrbit& orbit = *inst.orbit;
  const QMat k = kanev_matrix(orbit);
  bool binary = true;
  for (int i = 0; i < k.rows() && binary; ++i)
    for (int j = 0; j < k.cols() && binary; ++j)
      binary = k.at(i, j) == Rat(0) || k.at(i, j) == Rat(1);
  std::optional<Int> degree;
  try {
    degree = kanev_degree(orbit);
  } catch (const Error&) {
    // Row sums disagree; dump the matrix without a degree claim.
  }

  if (format == "json") {
    ordered_json j;
    j["version"] = kToolVersion;
    ordered_json echo;
    echo["source"] = inst.source;
    echo["weight"] = vector_json(orbit.weight());
    j["input-echo"] = std::move(echo);
    j["d"] = orbit.size();
    if (degree) j["degree"] = int_s(*degree);
    j["binary"] = binary;
    j["entries"] = matrix_json(k);
    write_output(dump(j), out_path, out);
  } else {
    std::ostringstream t;
    t << "kanev matrix " << k.rows() << " x " << k.cols();
    if (degree) t << ", degree " << int_s(*degree);
    t << "\n";
    for (int i = 0; i < k.rows(); ++i) {
      if (binary) {
        for (int j = 0; j < k.cols(); ++j) t << (k.at(i, j) == Rat(1) ? '1' : '0');
      } else {
        for (int j = 0; j < k.cols(); ++j)
          t << (j ? " " : "") << k.at(i, j).str();
      }
      t << "\n";
    }
    write_output(t.str(), out_path, out);
  }
  return 0;
}

// ---- existence ----

int cmd_existence(const Instance& inst, const std::string& branch_str,
                  std::uint64_t seed, long budget, const std::string& format,
                  const std::string& out_path, std::ostream& out) {
  const auto& g = inst.rep.group();
  const CoveringData cov = parse_branch(inst, branch_str);
  const auto tuple = find_branch_tuple(g, cov, seed, budget);

  if (format == "json") {
    ordered_json j;
    j["version"] = kToolVersion;
    ordered_json echo;
    echo["source"] = inst.source;
    echo["branch"] = branch_str;
    echo["seed"] = seed;
    echo["budget"] = budget;
    j["input-echo"] = std::move(echo);
    j["found"] = tuple.has_value();
    if (tuple) {
      ordered_json arr = ordered_json::array();
      for (std::size_t i = 0; i < tuple->elements.size(); ++i) {
        ordered_json ej;
        ej["name"] = class_display(inst, tuple->class_ids[i]);
        ej["class-id"] = tuple->class_ids[i];
        ej["order"] = g.element_order(tuple->elements[i]);
        ej["matrix"] = matrix_json(g.element_matrix(tuple->elements[i]));
        arr.push_back(std::move(ej));
      }
      j["tuple"] = std::move(arr);
    }
    write_output(dump(j), out_path, out);
  } else {
    std::ostringstream t;
    if (tuple) {
      t << "found a tuple with " << tuple->elements.size()
        << " elements for branch " << branch_str << " (seed " << seed << ")\n";
      for (std::size_t i = 0; i < tuple->elements.size(); ++i) {
        t << "[" << i + 1 << "] class "
          << class_display(inst, tuple->class_ids[i]) << ", order "
          << g.element_order(tuple->elements[i]) << "\n";
        const QMat m = g.element_matrix(tuple->elements[i]);
        for (int r = 0; r < m.rows(); ++r) {
          t << "  ";
          for (int c = 0; c < m.cols(); ++c)
            t << (c ? " " : "") << m.at(r, c).str();
          t << "\n";
        }
      }
    } else {
      t << "no tuple found within " << budget
        << " attempts (inconclusive, not a nonexistence proof)\n";
    }
    write_output(t.str(), out_path, out);
  }
  return tuple ? 0 : 1;
}

// ---- classes ----

int cmd_classes(const Instance& inst, const std::string& format,
                const std::string& out_path, std::ostream& out) {
  const auto& g = inst.rep.group();
  if (format == "json") {
    ordered_json j;
    j["version"] = kToolVersion;
    ordered_json echo;
    echo["source"] = inst.source;
    j["input-echo"] = std::move(echo);
    ordered_json arr = ordered_json::array();
    for (const auto& cls : g.cyclic_subgroup_classes()) {
      ordered_json cj;
      cj["name"] = class_display(inst, cls.id);
      cj["class-id"] = cls.id;
      cj["subgroup-order"] = cls.subgroup_order;
      cj["class-size"] = static_cast<std::uint64_t>(cls.class_size);
      const Subgroup k = g.subgroup_from_generators({cls.representative});
      cj["fix-dim"] = fixed_subspace_dim(inst.rep, k);
      if (inst.orbit)
        cj["double-cosets"] =
            static_cast<std::uint64_t>(double_cosets_via_orbit(*inst.orbit, k));
      arr.push_back(std::move(cj));
    }
    j["classes"] = std::move(arr);
    write_output(dump(j), out_path, out);
  } else {
    std::ostringstream t;
    t << "cyclic subgroup classes of " << inst.source << " (order " << g.order()
      << ")\n";
    t << "  name  id  |K|  class-size  fix";
    if (inst.orbit) t << "  double-cosets";
    t << "\n";
    for (const auto& cls : g.cyclic_subgroup_classes()) {
      const Subgroup k = g.subgroup_from_generators({cls.representative});
      t << "  " << std::left << std::setw(6) << class_display(inst, cls.id)
        << std::setw(4) << cls.id << std::setw(5) << cls.subgroup_order
        << std::setw(12) << cls.class_size;
      if (inst.orbit)
        t << std::setw(5) << fixed_subspace_dim(inst.rep, k)
          << double_cosets_via_orbit(*inst.orbit, k);
      else
        t << fixed_subspace_dim(inst.rep, k);
      t << "\n";
    }
    write_output(t.str(), out_path, out);
  }
  return 0;
}

struct CommonOpts {
  std::string catalog, group_file, weight_file, branch, out_path;
  std::string format = "text";
  std::uint64_t seed = 1;
  long budget = kDefaultSearchBudget;
  bool emit_matrices = false;
};

void add_source_opts(CLI::App* cmd, CommonOpts& o, bool with_weight) {
  auto* cat = cmd->add_option("--catalog", o.catalog, "built-in instance name");
  auto* grp =
      cmd->add_option("--group", o.group_file, "group description file (JSON)");
  cat->excludes(grp);
  grp->excludes(cat);
  if (with_weight)
    cmd->add_option("--weight", o.weight_file,
                    "weight coordinate file (JSON array of rationals)");
  cmd->add_option("--format", o.format, "output format")
      ->check(CLI::IsMember({"json", "text"}));
  cmd->add_option("--out", o.out_path, "write the output atomically to PATH");
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out,
            std::ostream& err) {
  CLI::App app{
      "exact Schur/Kanev correspondences and Prym-Tyurin invariants\n"
      "for weight orbits of finite lattice matrix groups"};
  app.require_subcommand(1);

  auto* cat = app.add_subcommand("catalog", "built-in instances");
  cat->require_subcommand(1);
  CommonOpts list_o;
  auto* cat_list = cat->add_subcommand("list", "name every built-in instance");
  cat_list->add_option("--format", list_o.format, "output format")
      ->check(CLI::IsMember({"json", "text"}));
  cat_list->add_option("--out", list_o.out_path, "write output to PATH");
  std::string show_name;
  CommonOpts show_o;
  auto* cat_show = cat->add_subcommand("show", "summarize one built-in instance");
  cat_show->add_option("name", show_name, "instance name")->required();
  cat_show->add_option("--format", show_o.format, "output format")
      ->check(CLI::IsMember({"json", "text"}));
  cat_show->add_option("--out", show_o.out_path, "write output to PATH");

  CommonOpts an_o;
  auto* an = app.add_subcommand(
      "analyze", "full report: orbit, identity check, covering invariants");
  add_source_opts(an, an_o, true);
  an->add_option("--branch", an_o.branch, "branch data, e.g. \"C1:12,C2:2\"")
      ->required();
  an->add_flag("--emit-matrices", an_o.emit_matrices,
               "include the correspondence matrices in the JSON report");

  CommonOpts kv_o;
  auto* kv = app.add_subcommand("kanev", "emit the Kanev matrix");
  add_source_opts(kv, kv_o, true);

  CommonOpts ex_o;
  auto* ex = app.add_subcommand(
      "existence", "search for a branch tuple with product one generating G");
  add_source_opts(ex, ex_o, false);
  ex->add_option("--branch", ex_o.branch, "branch data, e.g. \"C1:12\"")
      ->required();
  ex->add_option("--seed", ex_o.seed, "search seed");
  ex->add_option("--budget", ex_o.budget, "maximum attempts")
      ->check(CLI::PositiveNumber);

  CommonOpts cl_o;
  auto* cl = app.add_subcommand("classes",
                                "list the cyclic subgroup classes of a group");
  add_source_opts(cl, cl_o, true);

  std::vector<const char*> argv;
  argv.reserve(args.size() + 1);
  argv.push_back("ptv");
  for (const auto& a : args) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e, out, err);
    return rc == 0 ? 0 : 2;
  }

  try {
    if (cat_list->parsed()) return cmd_catalog_list(list_o.format, list_o.out_path, out);
    if (cat_show->parsed())
      return cmd_catalog_show(show_name, show_o.format, show_o.out_path, out);
    if (an->parsed()) {
      const Instance inst =
          resolve_instance(an_o.catalog, an_o.group_file, an_o.weight_file, true);
      return cmd_analyze(inst, an_o.branch, an_o.format, an_o.out_path,
                         an_o.emit_matrices, out);
    }
    if (kv->parsed()) {
      const Instance inst =
          resolve_instance(kv_o.catalog, kv_o.group_file, kv_o.weight_file, true);
      return cmd_kanev(inst, kv_o.format, kv_o.out_path, out);
    }
    if (ex->parsed()) {
      const Instance inst =
          resolve_instance(ex_o.catalog, ex_o.group_file, "", false);
      return cmd_existence(inst, ex_o.branch, ex_o.seed, ex_o.budget, ex_o.format,
                           ex_o.out_path, out);
    }
    if (cl->parsed()) {
      const Instance inst =
          resolve_instance(cl_o.catalog, cl_o.group_file, cl_o.weight_file, false);
      return cmd_classes(inst, cl_o.format, cl_o.out_path, out);
    }
    err << "error: no command\n";
    return 2;
  } catch (const ParseError& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  } catch (const ValidationError& e) {
    err << "error: " << e.what() << "\n";
    return 3;
  } catch (const IdentityError& e) {
    err << "error: " << e.what() << "\n";
    return 4;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return 4;
  }
}

}  // namespace ptv
