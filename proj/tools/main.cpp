// fiberwalk command-line tool: basis computation, fiber enumeration,
// fiber sampling, and exact conditional goodness-of-fit tests, with
// reproducible manifests next to every file output.
//
// Exit codes: 0 success, 2 parse/file error, 3 enumeration or completion
// cap exceeded, 4 numeric failure (non-convergence, inconsistent fit),
// 5 configuration error, 1 anything else.

#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "fiberwalk/basis.hpp"
#include "fiberwalk/fiber.hpp"
#include "fiberwalk/gof.hpp"
#include "fiberwalk/io.hpp"
#include "fiberwalk/model.hpp"

namespace fw = fiberwalk;
using nlohmann::ordered_json;

namespace {

struct ModelArgs {
  std::string model;
  std::string dims;
  std::size_t nodes = 0;
  std::string reciprocity = "zero";
  std::string matrix_path;
};

void add_model_flags(CLI::App* cmd, ModelArgs& args) {
  cmd->add_option("--model", args.model,
                  "Model family: independence, p1, or generic");
  cmd->add_option("--dims", args.dims,
                  "Table dimensions d1,d2 (independence)");
  cmd->add_option("--nodes", args.nodes, "Node count (p1)");
  cmd->add_option("--reciprocity", args.reciprocity,
                  "p1 reciprocity: zero, constant, differential")
      ->check(CLI::IsMember({"zero", "constant", "differential"}));
  cmd->add_option("--matrix", args.matrix_path,
                  "Design matrix file (generic)");
}

std::pair<std::size_t, std::size_t> parse_dims(const std::string& dims) {
  const auto comma = dims.find(',');
  if (comma == std::string::npos)
    throw fw::ConfigError("--dims must look like d1,d2");
  try {
    const unsigned long d1 = std::stoul(dims.substr(0, comma));
    const unsigned long d2 = std::stoul(dims.substr(comma + 1));
    return {d1, d2};
  } catch (const std::exception&) {
    throw fw::ConfigError("--dims must look like d1,d2");
  }
}

fw::Reciprocity parse_reciprocity(const std::string& s) {
  if (s == "zero") return fw::Reciprocity::zero;
  if (s == "constant") return fw::Reciprocity::constant;
  return fw::Reciprocity::differential;
}

fw::ModelSpec build_spec(const ModelArgs& args) {
  std::string model = args.model;
  if (model.empty() && !args.matrix_path.empty()) model = "generic";
  if (model == "independence") {
    if (args.dims.empty())
      throw fw::ConfigError("independence model needs --dims d1,d2");
    const auto [d1, d2] = parse_dims(args.dims);
    return fw::independence_design(d1, d2);
  }
  if (model == "p1") {
    if (args.nodes == 0) throw fw::ConfigError("p1 model needs --nodes");
    return fw::p1_design(args.nodes, parse_reciprocity(args.reciprocity));
  }
  if (model == "generic") {
    if (args.matrix_path.empty())
      throw fw::ConfigError("generic model needs --matrix FILE");
    return fw::generic_design(fw::read_matrix_file(args.matrix_path));
  }
  throw fw::ConfigError(
      "--model must be independence, p1, or generic (or pass --matrix)");
}

fw::Table load_table(const fw::ModelSpec& spec, const std::string& data_path) {
  if (data_path.empty()) throw fw::ConfigError("missing --data FILE");
  if (spec.family == fw::Family::p1) {
    const fw::Graph g = fw::read_edge_list(data_path, spec.nodes);
    return fw::graph_to_table(g);
  }
  fw::Table t = fw::read_table_csv(data_path);
  if (spec.family == fw::Family::independence &&
      !(t.shape.dims == std::vector<std::size_t>{spec.d1, spec.d2}))
    throw fw::ConfigError("data table shape does not match --dims");
  if (t.cells.size() != spec.design.cols())
    throw fw::ConfigError("data cell count does not match the design");
  return fw::Table(spec.shape(), t.cells);
}

ordered_json model_options(const ModelArgs& args) {
  ordered_json j;
  j["model"] = args.model.empty() && !args.matrix_path.empty() ? "generic"
                                                               : args.model;
  if (!args.dims.empty()) j["dims"] = args.dims;
  if (args.nodes) j["nodes"] = args.nodes;
  if (j["model"] == "p1") j["reciprocity"] = args.reciprocity;
  if (!args.matrix_path.empty()) j["matrix"] = args.matrix_path;
  return j;
}

void write_text_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw fw::ParseError("cannot write file: " + path);
  out << content;
}

void write_manifest(const std::string& path, const std::string& command,
                    ordered_json options) {
  ordered_json m;
  m["command"] = command;
  m["tool"] = "fiberwalk";
  m["version"] = FIBERWALK_VERSION;
  m["options"] = std::move(options);
  write_text_file(path, m.dump(2) + "\n");
}

std::string statistics_header(const fw::ModelSpec& spec, const fw::Table& u) {
  const fw::IntVector t = fw::sufficient_statistics(spec, u);
  std::string line = "# statistics:";
  for (const auto& x : t) line += " " + x.str();
  return line + "\n";
}

std::string dump_states(const fw::ModelSpec& spec, const fw::Table& u,
                        const std::vector<fw::IntVector>& states) {
  std::string out = statistics_header(spec, u);
  for (const auto& v : states) {
    for (std::size_t c = 0; c < v.size(); ++c) {
      if (c) out += ' ';
      out += v[c].str();
    }
    out += '\n';
  }
  return out;
}

std::string histogram_csv(const std::vector<fw::HistogramBin>& bins) {
  std::string out = "bin_lo,bin_hi,count\n";
  for (const auto& b : bins)
    out += fw::format_double(b.lo) + "," + fw::format_double(b.hi) + "," +
           std::to_string(b.count) + "\n";
  return out;
}

std::string histogram_svg(const std::vector<fw::HistogramBin>& bins,
                          double observed) {
  const double x0 = 60, x1 = 620, y0 = 360, y1 = 20;
  std::string svg =
      "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"640\" "
      "height=\"400\" viewBox=\"0 0 640 400\">\n"
      "<rect width=\"640\" height=\"400\" fill=\"white\"/>\n";
  double lo = 0.0, hi = 1.0;
  std::size_t cmax = 1;
  if (!bins.empty()) {
    lo = bins.front().lo;
    hi = bins.back().hi;
    for (const auto& b : bins) cmax = std::max(cmax, b.count);
  }
  if (hi <= lo) hi = lo + 1.0;
  auto xmap = [&](double v) { return x0 + (v - lo) / (hi - lo) * (x1 - x0); };
  for (const auto& b : bins) {
    if (b.count == 0) continue;
    const double bx = xmap(b.lo);
    const double bw = std::max(1.0, xmap(b.hi) - bx);
    const double bh = (y0 - y1) * static_cast<double>(b.count) /
                      static_cast<double>(cmax);
    svg += "<rect x=\"" + fw::format_double(bx) + "\" y=\"" +
           fw::format_double(y0 - bh) + "\" width=\"" + fw::format_double(bw) +
           "\" height=\"" + fw::format_double(bh) +
           "\" fill=\"#5b8ac0\"/>\n";
  }
  const double ox = std::min(std::max(xmap(observed), x0), x1);
  svg += "<line x1=\"" + fw::format_double(ox) + "\" y1=\"" +
         fw::format_double(y1) + "\" x2=\"" + fw::format_double(ox) +
         "\" y2=\"" + fw::format_double(y0) +
         "\" stroke=\"red\" stroke-width=\"2\"/>\n";
  svg += "<line x1=\"60\" y1=\"360\" x2=\"620\" y2=\"360\" "
         "stroke=\"black\"/>\n"
         "<line x1=\"60\" y1=\"20\" x2=\"60\" y2=\"360\" stroke=\"black\"/>\n";
  svg += "<text x=\"60\" y=\"385\" font-family=\"sans-serif\" "
         "font-size=\"12\">" +
         fw::format_double(lo) + "</text>\n";
  svg += "<text x=\"620\" y=\"385\" font-family=\"sans-serif\" "
         "font-size=\"12\" text-anchor=\"end\">" +
         fw::format_double(hi) + "</text>\n";
  svg += "<text x=\"" + fw::format_double(ox) +
         "\" y=\"14\" font-family=\"sans-serif\" font-size=\"12\" "
         "fill=\"red\" text-anchor=\"middle\">observed " +
         fw::format_double(observed) + "</text>\n";
  svg += "<text x=\"8\" y=\"20\" font-family=\"sans-serif\" "
         "font-size=\"12\">" +
         std::to_string(cmax) + "</text>\n";
  return svg + "</svg>\n";
}

std::size_t basis_max_degree(const std::vector<fw::Move>& moves) {
  fw::Int best = 0;
  for (const auto& m : moves) {
    fw::Int dp = 0, dn = 0;
    for (const auto& x : m.positive_part) dp += x;
    for (const auto& x : m.negative_part) dn += x;
    if (dp > best) best = dp;
    if (dn > best) best = dn;
  }
  return best.convert_to<std::size_t>();
}

fw::MarkovBasis resolve_basis(const fw::ModelSpec& spec,
                              const std::string& basis_path,
                              const fw::CompletionCaps& caps,
                              fw::ProposalKind proposal) {
  fw::MarkovBasis basis;
  basis.design = spec.design;
  if (!basis_path.empty()) {
    basis.moves = fw::read_basis_file(basis_path);
    for (const auto& m : basis.moves)
      if (m.vector.size() != spec.design.cols() ||
          !fw::in_kernel(spec.design, m.vector))
        throw fw::ConfigError(
            "basis file move does not lie in the model kernel");
    return basis;
  }
  if (proposal == fw::ProposalKind::dynamic_p1) return basis;  // unused
  return fw::toric_markov_basis(spec.design, caps);
}

struct WalkArgs {
  std::size_t steps = 100000;
  std::size_t burnin = 0;
  bool burnin_given = false;
  std::size_t thin = 1;
  std::uint64_t seed = 0;
  std::string target = "hypergeometric";
  std::string proposal = "basis";
  std::string basis_path;
};

void add_walk_flags(CLI::App* cmd, WalkArgs& args) {
  cmd->add_option("--steps", args.steps, "Chain length (default 100000)");
  cmd->add_option("--burnin", args.burnin,
                  "Burn-in steps (default steps/10)");
  cmd->add_option("--thin", args.thin, "Thinning stride (default 1)");
  cmd->add_option("--seed", args.seed, "RNG seed (required)")->required();
  cmd->add_option("--target", args.target,
                  "Stationary target: uniform or hypergeometric")
      ->check(CLI::IsMember({"uniform", "hypergeometric"}));
  cmd->add_option("--proposal", args.proposal,
                  "Proposal scheme: basis or dynamic")
      ->check(CLI::IsMember({"basis", "dynamic"}));
  cmd->add_option("--basis", args.basis_path, "Markov basis file to use");
}

fw::WalkConfig make_walk_config(const WalkArgs& args, bool burnin_given) {
  fw::WalkConfig cfg;
  cfg.steps = args.steps;
  cfg.burn_in = burnin_given ? args.burnin : args.steps / 10;
  cfg.thin = args.thin;
  cfg.seed = args.seed;
  cfg.target = args.target == "uniform" ? fw::Target::uniform
                                        : fw::Target::hypergeometric;
  cfg.proposal = args.proposal == "dynamic" ? fw::ProposalKind::dynamic_p1
                                            : fw::ProposalKind::basis;
  return cfg;
}

ordered_json walk_options(const WalkArgs& args, const fw::WalkConfig& cfg) {
  ordered_json j;
  j["steps"] = cfg.steps;
  j["burnin"] = cfg.burn_in;
  j["thin"] = cfg.thin;
  j["seed"] = cfg.seed;
  j["target"] = args.target;
  j["proposal"] = args.proposal;
  if (!args.basis_path.empty()) j["basis"] = args.basis_path;
  return j;
}

int run(int argc, char** argv) {
  CLI::App app{"Markov-basis fiber walks and exact conditional tests"};
  app.set_version_flag("--version", FIBERWALK_VERSION);
  app.require_subcommand(1);

  // basis
  auto* basis_cmd =
      app.add_subcommand("basis", "Compute a Markov basis and write it out");
  ModelArgs basis_model;
  add_model_flags(basis_cmd, basis_model);
  std::string basis_output;
  std::size_t max_binomials = fw::CompletionCaps{}.max_binomials;
  std::size_t max_degree = fw::CompletionCaps{}.max_degree;
  basis_cmd->add_option("--output", basis_output, "Basis file to write")
      ->required();
  basis_cmd->add_option("--max-binomials", max_binomials,
                        "Completion cap on kept binomials");
  basis_cmd->add_option("--max-degree", max_degree,
                        "Completion cap on binomial degree");

  // enumerate
  auto* enum_cmd =
      app.add_subcommand("enumerate", "List every table in the data's fiber");
  ModelArgs enum_model;
  add_model_flags(enum_cmd, enum_model);
  std::string enum_data, enum_output;
  std::size_t enum_cap = 100000;
  enum_cmd->add_option("--data", enum_data, "Observed data file")->required();
  enum_cmd->add_option("--cap", enum_cap, "Fiber point cap (default 100000)");
  enum_cmd->add_option("--output", enum_output,
                       "Output file (default stdout)");

  // sample
  auto* sample_cmd =
      app.add_subcommand("sample", "Random-walk the fiber and dump states");
  ModelArgs sample_model;
  add_model_flags(sample_cmd, sample_model);
  WalkArgs sample_walk;
  add_walk_flags(sample_cmd, sample_walk);
  std::string sample_data, sample_output;
  sample_cmd->add_option("--data", sample_data, "Observed data file")
      ->required();
  sample_cmd->add_option("--output", sample_output,
                         "Output file (default stdout)");

  // test
  auto* test_cmd = app.add_subcommand(
      "test", "Exact conditional goodness-of-fit test via a fiber walk");
  ModelArgs test_model;
  add_model_flags(test_cmd, test_model);
  WalkArgs test_walk;
  add_walk_flags(test_cmd, test_walk);
  std::string test_data, test_outdir = ".";
  std::size_t test_chains = 1, test_bins = 50;
  test_cmd->add_option("--data", test_data, "Observed data file")->required();
  test_cmd->add_option("--output-dir", test_outdir,
                       "Directory for result files (default .)");
  test_cmd->add_option("--chains", test_chains,
                       "Independent chains pooled by index (default 1)");
  test_cmd->add_option("--bins", test_bins, "Histogram bin count");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : 5;
  }

  if (basis_cmd->parsed()) {
    const fw::ModelSpec spec = build_spec(basis_model);
    fw::CompletionCaps caps{max_binomials, max_degree};
    const fw::MarkovBasis basis = fw::toric_markov_basis(spec.design, caps);
    fw::write_basis_file(basis_output, basis.moves, spec.design.cols());
    ordered_json options = model_options(basis_model);
    options["max_binomials"] = caps.max_binomials;
    options["max_degree"] = caps.max_degree;
    options["output"] = basis_output;
    write_manifest(basis_output + ".manifest.json", "basis",
                   std::move(options));
    std::cout << "moves: " << basis.moves.size() << "\n"
              << "max degree: " << basis_max_degree(basis.moves) << "\n";
    return 0;
  }

  if (enum_cmd->parsed()) {
    const fw::ModelSpec spec = build_spec(enum_model);
    const fw::Table u = load_table(spec, enum_data);
    const auto fiber =
        fw::enumerate_fiber_vectors(spec.design, u.cells, enum_cap);
    const std::string text = dump_states(spec, u, fiber);
    if (enum_output.empty()) {
      std::cout << text;
    } else {
      write_text_file(enum_output, text);
      ordered_json options = model_options(enum_model);
      options["data"] = enum_data;
      options["cap"] = enum_cap;
      options["output"] = enum_output;
      write_manifest(enum_output + ".manifest.json", "enumerate",
                     std::move(options));
      std::cout << "points: " << fiber.size() << "\n";
    }
    return 0;
  }

  if (sample_cmd->parsed()) {
    const fw::ModelSpec spec = build_spec(sample_model);
    const fw::Table u = load_table(spec, sample_data);
    const fw::WalkConfig cfg =
        make_walk_config(sample_walk, sample_cmd->count("--burnin") > 0);
    const fw::MarkovBasis basis =
        resolve_basis(spec, sample_walk.basis_path, {}, cfg.proposal);
    const fw::WalkSample sample = fw::walk(spec, basis, u, cfg);
    const std::string text = dump_states(spec, u, sample.states);
    if (sample_output.empty()) {
      std::cout << text;
    } else {
      write_text_file(sample_output, text);
      ordered_json options = model_options(sample_model);
      options["data"] = sample_data;
      options.update(walk_options(sample_walk, cfg));
      options["output"] = sample_output;
      write_manifest(sample_output + ".manifest.json", "sample",
                     std::move(options));
      std::cout << "recorded: " << sample.states.size()
                << "\naccepted: " << sample.acceptance_count << "\n";
    }
    return 0;
  }

  // test
  const fw::ModelSpec spec = build_spec(test_model);
  const fw::Table u = load_table(spec, test_data);
  const fw::WalkConfig cfg =
      make_walk_config(test_walk, test_cmd->count("--burnin") > 0);
  const fw::MarkovBasis basis =
      resolve_basis(spec, test_walk.basis_path, {}, cfg.proposal);
  const fw::TestResult res =
      fw::exact_pvalue_mc(spec, u, basis, cfg, test_chains, test_bins);

  std::filesystem::create_directories(test_outdir);
  const auto out_path = [&](const char* name) {
    return (std::filesystem::path(test_outdir) / name).string();
  };
  ordered_json result;
  result["observed_stat"] = res.observed_stat;
  result["sample_size"] = res.sample_size;
  result["exceed_count"] = res.exceed_count;
  result["p_value"] = res.p_value;
  result["mc_std_error"] = res.mc_std_error;
  result["histogram"] = ordered_json::array();
  for (const auto& b : res.histogram)
    result["histogram"].push_back(
        ordered_json{{"bin_lo", b.lo}, {"bin_hi", b.hi}, {"count", b.count}});
  write_text_file(out_path("result.json"), result.dump(2) + "\n");
  write_text_file(out_path("histogram.csv"), histogram_csv(res.histogram));
  write_text_file(out_path("histogram.svg"),
                  histogram_svg(res.histogram, res.observed_stat));
  ordered_json options = model_options(test_model);
  options["data"] = test_data;
  options.update(walk_options(test_walk, cfg));
  options["chains"] = test_chains;
  options["bins"] = test_bins;
  options["output_dir"] = test_outdir;
  write_manifest(out_path("manifest.json"), "test", std::move(options));
  std::cout << "observed_stat: " << fw::format_double(res.observed_stat)
            << "\np_value: " << fw::format_double(res.p_value)
            << "\nmc_std_error: " << fw::format_double(res.mc_std_error)
            << "\nsample_size: " << res.sample_size << "\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  try {
    return run(argc, argv);
  } catch (const fw::ParseError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const fw::FiberCapError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  } catch (const fw::CompletionOverflow& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  } catch (const fw::NumericError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 4;
  } catch (const fw::ConfigError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 5;
  } catch (const fw::ModelError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 5;
  } catch (const fw::DimensionError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 5;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}
