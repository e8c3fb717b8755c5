#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <sstream>

#include "rcycle/classify.hpp"
#include "rcycle/cover.hpp"
#include "rcycle/homsearch.hpp"

namespace {

constexpr int kUsageError = 4;

rcycle::Word parse_word_arg(const std::string& text, const std::string& flag) {
  try {
    return rcycle::Word::parse(text);
  } catch (const rcycle::WordParseError& e) {
    throw rcycle::WordParseError(flag + ": " + e.what(), e.position);
  }
}

// --girth A..B (or a single girth)
std::pair<int, int> parse_girth_range(const std::string& text) {
  const auto dots = text.find("..");
  try {
    if (dots == std::string::npos) {
      const int n = std::stoi(text);
      return {n, n};
    }
    return {std::stoi(text.substr(0, dots)), std::stoi(text.substr(dots + 2))};
  } catch (const std::exception&) {
    throw CLI::ValidationError("--girth expects N or A..B");
  }
}

int cmd_enumerate(int n) {
  for (const auto& c : rcycle::enumerate_cycles(n)) std::cout << c.canonical_word.str() << '\n';
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"rcycle: a verification workbench for reflexive cycles"};
  app.require_subcommand(1);

  // enumerate
  int enum_girth = 0;
  auto* enumerate = app.add_subcommand("enumerate", "list canonical cycle words of one girth");
  enumerate->add_option("girth", enum_girth, "girth (>= 3)")->required();

  // classify
  rcycle::RunConfig config;
  std::string girth_range = "4..5", methods = "syntactic,bruteforce", format = "json", out_file;
  auto* classify = app.add_subcommand("classify", "classify cycles over a girth range");
  classify->add_option("--girth", girth_range, "girth range A..B (default 4..5)");
  classify->add_option("--methods", methods,
                       "comma list of syntactic,bruteforce,slupecki,wordcrit");
  classify->add_option("--arity", config.arity_override, "fix the slupecki search arity");
  classify->add_option("--witness-N", config.witness_n_override,
                       "repetition length for the word-criterion exploration");
  classify->add_option("--budget-nodes", config.budget_nodes, "search node cap per cycle/arity");
  classify->add_option("--budget-secs", config.budget_secs, "search wall cap per cycle/arity");
  classify->add_option("--jobs", config.jobs, "worker count");
  classify->add_option("--cache", config.cache_dir, "cache directory");
  classify->add_option("--format", format, "json|csv");
  classify->add_option("--out", out_file, "report file (default stdout)");

  // hom
  std::string hom_from, hom_to;
  std::vector<std::string> hom_pins;
  bool hom_from_cycle = false, hom_to_cycle = false;
  auto* hom = app.add_subcommand("hom", "search a homomorphism between path/cycle words");
  hom->add_option("--from", hom_from, "source word")->required();
  hom->add_option("--to", hom_to, "target word")->required();
  hom->add_flag("--from-cycle", hom_from_cycle, "interpret --from as a cycle");
  hom->add_flag("--to-cycle", hom_to_cycle, "interpret --to as a cycle");
  hom->add_option("--pin", hom_pins, "vertex pin u=v (repeatable)");

  // lift
  std::string lift_cycle;
  std::vector<std::string> lift_product;
  std::uint64_t lift_seed = 1;
  auto* lift_cmd = app.add_subcommand("lift", "lift a homomorphism through the universal cover");
  lift_cmd->add_option("--cycle", lift_cycle, "target cycle word")->required();
  lift_cmd->add_option("--product", lift_product,
                       "factor path words; K is their product (default: K = the cycle, f = id)");
  lift_cmd->add_option("--seed", lift_seed, "seed for sampling the homomorphism");

  // export-dot
  std::string dot_cycle, dot_path, dot_cover;
  int dot_levels = 1;
  bool dot_loops = false;
  auto* export_dot = app.add_subcommand("export-dot", "emit graphviz DOT");
  export_dot->add_option("--cycle", dot_cycle, "cycle word");
  export_dot->add_option("--path", dot_path, "path word");
  export_dot->add_option("--cover", dot_cover, "cycle word; exports its cover window");
  export_dot->add_option("--levels", dot_levels, "cover window level bound (default 1)");
  export_dot->add_flag("--loops", dot_loops, "render loops");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kUsageError;
  }

  try {
    if (*enumerate) return cmd_enumerate(enum_girth);

    if (*classify) {
      std::tie(config.girth_lo, config.girth_hi) = parse_girth_range(girth_range);
      if (config.girth_lo < 3 || config.girth_hi < config.girth_lo) {
        std::cerr << "usage error: bad girth range\n";
        return kUsageError;
      }
      config.run_syntactic = methods.find("syntactic") != std::string::npos;
      config.run_bruteforce = methods.find("bruteforce") != std::string::npos;
      config.run_slupecki = methods.find("slupecki") != std::string::npos;
      config.run_word_criterion = methods.find("wordcrit") != std::string::npos;
      if (format == "csv")
        config.format = rcycle::RunConfig::Format::Csv;
      else if (format != "json") {
        std::cerr << "usage error: --format expects json or csv\n";
        return kUsageError;
      }
      std::ofstream out_stream, timing_stream;
      std::ostream* report = &std::cout;
      std::ostream* timings = &std::cerr;
      if (!out_file.empty()) {
        out_stream.open(out_file);
        if (!out_stream) {
          std::cerr << "usage error: cannot open " << out_file << '\n';
          return kUsageError;
        }
        report = &out_stream;
        timing_stream.open(out_file + ".timings");
        timings = &timing_stream;
      }
      return rcycle::run_classification(config, *report, *timings, std::cerr);
    }

    if (*hom) {
      const auto from_word = parse_word_arg(hom_from, "--from");
      const auto to_word = parse_word_arg(hom_to, "--to");
      const auto k = hom_from_cycle ? rcycle::cycle_of_word(from_word)
                                    : rcycle::path_of_word(from_word);
      const auto h = hom_to_cycle ? rcycle::cycle_of_word(to_word) : rcycle::path_of_word(to_word);
      rcycle::PinSet pins;
      for (const auto& p : hom_pins) {
        const auto eq = p.find('=');
        if (eq == std::string::npos) {
          std::cerr << "usage error: --pin expects u=v\n";
          return kUsageError;
        }
        pins.pins.emplace_back(std::stoi(p.substr(0, eq)), std::stoi(p.substr(eq + 1)));
      }
      const auto result = rcycle::hom_search(k, h, pins);
      if (!result) {
        std::cout << "none\n";
        return 0;
      }
      for (std::size_t v = 0; v < result->size(); ++v)
        std::cout << v << " -> " << (*result)[v] << '\n';
      return 0;
    }

    if (*lift_cmd) {
      const auto cw = parse_word_arg(lift_cycle, "--cycle");
      const auto g = rcycle::cycle_of_word(cw);
      rcycle::Digraph k = g;
      std::vector<int> f(g.size());
      if (lift_product.empty()) {
        for (int v = 0; v < g.size(); ++v) f[v] = v;  // identity on the cycle
      } else {
        std::vector<rcycle::Digraph> factors;
        for (const auto& q : lift_product)
          factors.push_back(rcycle::path_of_word(parse_word_arg(q, "--product")));
        k = rcycle::product(factors);
        auto hom = rcycle::hom_search_randomized(k, g, {}, lift_seed);
        if (!hom) {
          std::cout << "no homomorphism from the product into the cycle\n";
          return 0;
        }
        f = *hom;
      }
      const auto result = rcycle::lift(k, f, 0, g);
      if (!result.ok) {
        std::cout << "no lift (nonzero winding)\n";
        return 0;
      }
      for (int v = 0; v < k.size(); ++v) {
        const int pos = result.assignment[v];
        std::cout << v << " -> (" << result.window.base_vertex[pos] << ", "
                  << result.window.level_of(pos) << ")\n";
      }
      return 0;
    }

    if (*export_dot) {
      const int picked =
          (!dot_cycle.empty() ? 1 : 0) + (!dot_path.empty() ? 1 : 0) + (!dot_cover.empty() ? 1 : 0);
      if (picked != 1) {
        std::cerr << "usage error: pass exactly one of --cycle, --path, --cover\n";
        return kUsageError;
      }
      rcycle::Digraph g;
      if (!dot_cycle.empty())
        g = rcycle::cycle_of_word(parse_word_arg(dot_cycle, "--cycle"));
      else if (!dot_path.empty())
        g = rcycle::path_of_word(parse_word_arg(dot_path, "--path"));
      else
        g = rcycle::cover_window(rcycle::cycle_of_word(parse_word_arg(dot_cover, "--cover")), 0,
                                 dot_levels)
                .path;
      std::cout << rcycle::to_dot(g, {.show_loops = dot_loops});
      return 0;
    }
  } catch (const rcycle::WordParseError& e) {
    std::cerr << "usage error: " << e.what() << '\n';
    return kUsageError;
  } catch (const std::invalid_argument& e) {
    std::cerr << "usage error: " << e.what() << '\n';
    return kUsageError;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return kUsageError;
}
