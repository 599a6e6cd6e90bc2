// Command-line front end. Exit status: 0 success, 1 verification failure, 2 usage or input error.

#include "acceptance.hpp"

#include "toricsr/io.hpp"

#include "CLI11.hpp"

#include <fstream>
#include <iostream>

using namespace toricsr;
using io::Json;

namespace {

constexpr int kVerificationFailure = 1;
constexpr int kUsageError = 2;

struct Common {
  std::string input;
  std::string output;
  std::size_t max_points = 2'000'000;
};

void emit(const Common &c, const Json &j) {
  const std::string text = io::dump(j);
  if (c.output.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream out(c.output);
  if (!out)
    throw io::InputError("cannot write '" + c.output + "'");
  out << text;
}

// Reads the input document and refuses polytopes with more lattice points than the limit.
io::PolytopeDocument load(const Common &c) {
  auto doc = io::read_polytope_file(c.input);
  lattice_points(doc.polytope, false, c.max_points);
  return doc;
}

Json condition_m_json(const LatticePolytope &P, ConditionMMode mode) {
  return io::to_json(check_condition_m(P, mode), normal_fan(P));
}

struct ComputeFlags {
  bool width = false, fine = false, kodaira = false, classify = false, group = false,
       condition_m = false, hodge = false, all = false;
};

Json compute(const io::PolytopeDocument &doc, ComputeFlags f) {
  const bool none = !(f.width || f.fine || f.kodaira || f.classify || f.group ||
                      f.condition_m || f.hodge);
  if (f.all || none)
    f = {true, true, true, true, true, true, true, true};
  const LatticePolytope &P = doc.polytope;
  Json r{{"polytope", io::to_json(doc)}, {"dim", P.dim()}};
  if (f.width)
    r["width"] = P.dim() > 0 ? io::to_json(lattice_width(P)) : Json();
  if (f.fine)
    r["fine_interior"] = io::to_json(fine_interior(P));
  if (f.kodaira)
    r["kodaira"] = io::to_json(kodaira_dimension(P));
  if (f.classify)
    r["classification"] = io::to_json(toricsr::classify(P));
  // the toric invariants need a full-dimensional polytope
  const bool full = P.is_full_dimensional();
  if (f.group)
    r["class_group"] = full ? io::to_json(class_group(P)) : Json();
  if (f.condition_m)
    r["condition_m"] = full ? condition_m_json(P, ConditionMMode::Reduced) : Json();
  if (f.hodge)
    r["hodge"] = P.dim() >= 2 ? io::to_json(h_p0_compact(P)) : Json();
  return r;
}

SeedRegistry load_seeds(const std::vector<std::string> &files) {
  SeedRegistry seeds;
  for (const std::string &f : files) {
    auto doc = io::read_polytope_file(f);
    seeds.add(doc.name, doc.polytope, "seed document " + f);
  }
  return seeds;
}

} // namespace

int main(int argc, char **argv) {
  CLI::App app{"Lattice polytope invariants and stable-rationality obstructions"};
  app.require_subcommand(1);

  Common c;
  auto add_io = [&](CLI::App *sub, bool input) {
    if (input)
      sub->add_option("--input", c.input, "polytope document (JSON)")->required();
    sub->add_option("--output", c.output, "write the report here instead of stdout");
    sub->add_option("--max-points", c.max_points, "refuse polytopes with more lattice points");
  };

  ComputeFlags flags;
  auto *cmp = app.add_subcommand("compute", "invariants of a polytope");
  add_io(cmp, true);
  cmp->add_flag("--width", flags.width);
  cmp->add_flag("--fine-interior", flags.fine);
  cmp->add_flag("--kodaira", flags.kodaira);
  cmp->add_flag("--classify", flags.classify);
  cmp->add_flag("--class-group", flags.group);
  cmp->add_flag("--condition-m", flags.condition_m);
  cmp->add_flag("--hodge", flags.hodge);
  cmp->add_flag("--all", flags.all, "every invariant (the default)");

  auto *fi = app.add_subcommand("fine-interior", "Fine interior");
  add_io(fi, true);
  auto *wd = app.add_subcommand("width", "lattice width and a direction attaining it");
  add_io(wd, true);

  std::string mode = "reduced";
  auto *cm = app.add_subcommand("condition-m", "condition (M) with a per-ray witness table");
  add_io(cm, true);
  cm->add_option("--mode", mode)->check(CLI::IsMember({"reduced", "unrestricted"}));

  auto *cg = app.add_subcommand("class-group", "class group of the toric variety");
  add_io(cg, true);

  std::string request;
  auto *sd = app.add_subcommand("subdivide", "regular subdivision from heights or a recipe");
  add_io(sd, false);
  sd->add_option("--request", request, "subdivision request (JSON)")->required();

  bool uncollapsed = false;
  std::vector<std::string> seed_files;
  auto *lg = app.add_subcommand("ledger", "stable birational volume ledger and verdict");
  add_io(lg, false);
  lg->add_option("--request", request, "subdivision request (JSON)")->required();
  lg->add_flag("--uncollapsed", uncollapsed, "keep rational classes apart from the point");
  lg->add_option("--seed", seed_files, "polytope documents registered as seeds");

  std::string family, name;
  std::vector<long> params;
  auto *cs = app.add_subcommand("construct", "polytope of a named family");
  add_io(cs, false);
  cs->add_option("--family", family)
      ->required()
      ->check(CLI::IsMember({"hpt", "kollar_totaro", "cubic_empty", "tpq", "double_cover",
                             "schreieder", "dilated_simplex", "simplex_product", "general_type",
                             "hpt_double_cone"}));
  cs->add_option("--param", params, "family parameters in order");
  cs->add_option("--name", name, "document name (default: family and parameters)");

  std::string kind = "hypersurface";
  std::size_t n_min = 2, n_max = 8;
  bool grid = false;
  long grid_N = 40, grid_d = 8;
  auto *bt = app.add_subcommand("bounds-table", "ranges of N covered in each degree");
  add_io(bt, false);
  bt->add_option("--kind", kind)->check(CLI::IsMember({"hypersurface", "double-cover"}));
  bt->add_option("--n-min", n_min);
  bt->add_option("--n-max", n_max);
  bt->add_flag("--grid", grid, "emit the (N, degree) status grid instead of rows");
  bt->add_option("--grid-N-max", grid_N);
  bt->add_option("--grid-d-max", grid_d);

  acceptance::Options acc;
  acc.golden_dir = TORICSR_GOLDEN_DIR;
  std::vector<std::string> only;
  auto *vp = app.add_subcommand("verify-paper", "run the acceptance suite");
  vp->add_option("--golden-dir", acc.golden_dir);
  vp->add_option("--only", only, "criteria to run")
      ->check(CLI::IsMember(acceptance::criterion_names()));

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError &e) {
    return app.exit(e) == 0 ? 0 : kUsageError;
  }

  try {
    if (*cmp) {
      emit(c, compute(load(c), flags));
    } else if (*fi) {
      emit(c, io::to_json(fine_interior(load(c).polytope)));
    } else if (*wd) {
      emit(c, io::to_json(lattice_width(load(c).polytope)));
    } else if (*cm) {
      emit(c, condition_m_json(load(c).polytope,
                               mode == "reduced" ? ConditionMMode::Reduced
                                                 : ConditionMMode::Unrestricted));
    } else if (*cg) {
      emit(c, io::to_json(class_group(load(c).polytope)));
    } else if (*sd) {
      auto req = io::subdivision_request_from_json(io::read_json_file(request));
      lattice_points(req.polytope.polytope, false, c.max_points);
      auto S = regular_subdivision(req.polytope.polytope, req.heights);
      emit(c, Json{{"subdivision", io::to_json(S)}, {"validation", io::to_json(validate(S))}});
    } else if (*lg) {
      auto req = io::subdivision_request_from_json(io::read_json_file(request));
      lattice_points(req.polytope.polytope, false, c.max_points);
      auto S = regular_subdivision(req.polytope.polytope, req.heights);
      auto L = volume_ledger(S, load_seeds(seed_files), Exec::Parallel,
                             LedgerOptions{!uncollapsed});
      emit(c, Json{{"ledger", io::to_json(L)}, {"verdict", io::to_json(verdict(L))}});
    } else if (*cs) {
      auto P = build({family, params});
      if (name.empty()) {
        name = family;
        for (long p : params)
          name += "_" + std::to_string(p);
      }
      emit(c, io::to_json(io::PolytopeDocument{name, P}));
    } else if (*bt) {
      const BoundKind k = kind == "hypersurface" ? BoundKind::Hypersurface : BoundKind::DoubleCover;
      Json out{{"kind", kind}};
      if (grid) {
        Json cells = Json::array();
        for (const GridCell &g : bounds_grid(k, grid_N, grid_d))
          cells.push_back(io::to_json(g));
        out["grid"] = cells;
      } else {
        Json rows = Json::array();
        for (const BoundsRow &r : bounds_table(n_min, n_max, k))
          rows.push_back(io::to_json(r));
        out["rows"] = rows;
      }
      emit(c, out);
    } else if (*vp) {
      acc.only.insert(only.begin(), only.end());
      bool all = true;
      for (const auto &r : acceptance::run(acc)) {
        std::cout << acceptance::format(r) << std::endl;
        all = all && r.pass;
      }
      return all ? 0 : kVerificationFailure;
    }
  } catch (const ResourceLimitExceeded &e) {
    std::cerr << "resource limit: " << e.what() << "\n";
    return kUsageError;
  } catch (const InternalConsistencyError &e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return kVerificationFailure;
  } catch (const Error &e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsageError;
  } catch (const Json::exception &e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsageError;
  }
  return 0;
}
