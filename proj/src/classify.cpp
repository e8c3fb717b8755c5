#include "rcycle/classify.hpp"

#include <json.hpp>

#include <atomic>
#include <chrono>
#include <filesystem>
#include <fstream>
#include <ostream>
#include <set>
#include <sstream>
#include <thread>

namespace rcycle {

namespace {

using Json = nlohmann::ordered_json;
using Clock = std::chrono::steady_clock;

double ms_since(Clock::time_point t0) {
  return std::chrono::duration<double, std::milli>(Clock::now() - t0).count();
}

std::uint64_t fnv1a(const std::string& data, std::uint64_t seed = 1469598103934665603ull) {
  std::uint64_t h = seed;
  for (unsigned char c : data) {
    h ^= c;
    h *= 1099511628211ull;
  }
  return h;
}

const char* verdict_name(SlupeckiOutcome::Verdict v) {
  switch (v) {
    case SlupeckiOutcome::Verdict::NoCounterexample: return "no-counterexample";
    case SlupeckiOutcome::Verdict::Counterexample: return "counterexample";
    case SlupeckiOutcome::Verdict::Inconclusive: return "inconclusive";
  }
  return "?";
}

SlupeckiOutcome::Verdict verdict_from_name(const std::string& s) {
  if (s == "no-counterexample") return SlupeckiOutcome::Verdict::NoCounterexample;
  if (s == "counterexample") return SlupeckiOutcome::Verdict::Counterexample;
  return SlupeckiOutcome::Verdict::Inconclusive;
}

Json verdict_json(const PathConditionVerdict& v) {
  Json j;
  j["fails"] = v.fails;
  switch (v.witness) {
    case PathConditionVerdict::Witness::None: j["witness"] = "none"; break;
    case PathConditionVerdict::Witness::AlmostSymmetric: j["witness"] = "almost-symmetric"; break;
    case PathConditionVerdict::Witness::SStarDecomposition:
      j["witness"] = Json{{"s", v.s.str()}, {"k", v.k}};
      break;
  }
  return j;
}

PathConditionVerdict verdict_from_json(const Json& j, PathConditionMethod method) {
  PathConditionVerdict v;
  v.method = method;
  v.fails = j.at("fails").get<bool>();
  const auto& w = j.at("witness");
  if (w.is_string()) {
    v.witness = w.get<std::string>() == "almost-symmetric"
                    ? PathConditionVerdict::Witness::AlmostSymmetric
                    : PathConditionVerdict::Witness::None;
  } else {
    v.witness = PathConditionVerdict::Witness::SStarDecomposition;
    v.s = Word::parse(w.at("s").get<std::string>());
    v.k = w.at("k").get<int>();
  }
  return v;
}

}  // namespace

std::string RunConfig::fingerprint() const {
  std::ostringstream os;
  os << "v=" << kVersion << ";syn=" << run_syntactic << ";bf=" << run_bruteforce
     << ";slu=" << run_slupecki << ";wc=" << run_word_criterion << ";N=" << witness_n_override
     << ";cap=" << bruteforce_girth_cap << ";k=" << arity_override << ";bn=" << budget_nodes
     << ";bs=" << budget_secs;
  return os.str();
}

std::vector<int> RunConfig::arity_ladder(int girth) const {
  if (arity_override > 0) return {arity_override};
  std::vector<int> ks;
  if (girth <= 6) ks.push_back(2);
  if (girth == 4) ks.push_back(3);
  return ks;
}

bool ClassificationRecord::methods_disagree() const {
  return syntactic && bruteforce && syntactic->fails != bruteforce->fails;
}

std::string ClassificationRecord::to_json() const {
  Json j;
  j["schema_version"] = schema_version;
  j["canonical_word"] = canonical_word;
  j["girth"] = girth;
  Json pc;
  pc["syntactic"] = syntactic ? verdict_json(*syntactic) : Json("skipped");
  pc["bruteforce"] = bruteforce ? verdict_json(*bruteforce) : Json("skipped");
  j["path_condition"] = pc;
  if (word_criterion) {
    j["word_criterion"] = Json{{"witness_n", word_criterion->witness_n},
                               {"certified", word_criterion->certified},
                               {"targets", word_criterion->targets}};
  }
  Json slu = Json::array();
  for (const auto& o : slupecki) {
    Json e;
    e["arity"] = o.arity;
    e["verdict"] = verdict_name(o.verdict);
    e["nodes"] = o.nodes_explored;
    if (o.table) {
      e["table"] = Json{{"arity", o.table->arity},
                        {"radix", o.table->domain},
                        {"values", o.table->table}};
    }
    slu.push_back(std::move(e));
  }
  j["slupecki"] = std::move(slu);
  j["automorphism_count"] = automorphism_count;
  return j.dump();
}

ClassificationRecord ClassificationRecord::from_json(const std::string& text) {
  const Json j = Json::parse(text);
  ClassificationRecord r;
  r.schema_version = j.at("schema_version").get<int>();
  r.canonical_word = j.at("canonical_word").get<std::string>();
  r.girth = j.at("girth").get<int>();
  const auto& pc = j.at("path_condition");
  if (!pc.at("syntactic").is_string())
    r.syntactic = verdict_from_json(pc.at("syntactic"), PathConditionMethod::Syntactic);
  if (!pc.at("bruteforce").is_string())
    r.bruteforce = verdict_from_json(pc.at("bruteforce"), PathConditionMethod::BruteForce);
  if (j.contains("word_criterion")) {
    WordCriterionSummary wc;
    wc.witness_n = j["word_criterion"].at("witness_n").get<int>();
    wc.certified = j["word_criterion"].at("certified").get<int>();
    wc.targets = j["word_criterion"].at("targets").get<int>();
    r.word_criterion = wc;
  }
  for (const auto& e : j.at("slupecki")) {
    SlupeckiOutcome o;
    o.arity = e.at("arity").get<int>();
    o.verdict = verdict_from_name(e.at("verdict").get<std::string>());
    o.nodes_explored = e.at("nodes").get<std::uint64_t>();
    if (e.contains("table")) {
      OperationTable t;
      t.arity = e["table"].at("arity").get<int>();
      t.domain = e["table"].at("radix").get<int>();
      t.table = e["table"].at("values").get<std::vector<int>>();
      o.table = std::move(t);
    }
    r.slupecki.push_back(std::move(o));
  }
  r.automorphism_count = j.at("automorphism_count").get<int>();
  return r;
}

ClassificationRecord classify_cycle(const CycleId& g, const RunConfig& config,
                                    PhaseTimings* timings) {
  ClassificationRecord r;
  r.canonical_word = g.canonical_word.str();
  r.girth = g.girth;

  if (config.run_syntactic) {
    const auto t0 = Clock::now();
    r.syntactic = path_condition_syntactic(g);
    if (timings) timings->syntactic_ms = ms_since(t0);
  }
  if (config.run_bruteforce && g.girth <= config.bruteforce_girth_cap) {
    const auto t0 = Clock::now();
    r.bruteforce = path_condition_bruteforce(g, config.bruteforce_girth_cap);
    if (timings) timings->bruteforce_ms = ms_since(t0);
  }
  if (config.run_word_criterion) {
    const auto t0 = Clock::now();
    ClassificationRecord::WordCriterionSummary wc;
    wc.witness_n =
        config.witness_n_override > 0 ? config.witness_n_override : default_witness_params(g.girth).n;
    const auto ps = induced_subpaths(g, g.girth - 1);
    std::set<Word> targets(ps.begin(), ps.end());
    for (const Word& p : targets) {
      ++wc.targets;
      if (check_word_criterion(g, p, w_construction(p, WitnessParams{wc.witness_n})))
        ++wc.certified;
    }
    r.word_criterion = wc;
    if (timings) timings->word_criterion_ms = ms_since(t0);
  }
  if (config.run_slupecki) {
    const auto t0 = Clock::now();
    for (int k : config.arity_ladder(g.girth)) {
      SearchBudget budget{config.budget_nodes, config.budget_secs};
      r.slupecki.push_back(find_slupecki_counterexample(g, k, budget));
    }
    if (timings) timings->slupecki_ms = ms_since(t0);
  }
  r.automorphism_count = static_cast<int>(automorphisms(cycle_of_word(g.canonical_word)).size());
  return r;
}

namespace {

std::optional<ClassificationRecord> cache_lookup(const RunConfig& config, const CycleId& g) {
  if (config.cache_dir.empty()) return std::nullopt;
  const auto key = fnv1a(g.canonical_word.str() + '\x1f' + config.fingerprint());
  std::ostringstream name;
  name << std::hex << key << ".json";
  const auto path = std::filesystem::path(config.cache_dir) / name.str();
  std::ifstream in(path);
  if (!in) return std::nullopt;
  std::stringstream buf;
  buf << in.rdbuf();
  try {
    auto r = ClassificationRecord::from_json(buf.str());
    if (r.canonical_word != g.canonical_word.str()) return std::nullopt;  // hash collision
    return r;
  } catch (const std::exception&) {
    return std::nullopt;  // stale or corrupt entry: recompute
  }
}

void cache_store(const RunConfig& config, const ClassificationRecord& r) {
  if (config.cache_dir.empty()) return;
  std::error_code ec;
  std::filesystem::create_directories(config.cache_dir, ec);
  const auto key = fnv1a(r.canonical_word + '\x1f' + config.fingerprint());
  std::ostringstream name;
  name << std::hex << key << ".json";
  const auto path = std::filesystem::path(config.cache_dir) / name.str();
  std::ofstream out(path);
  out << r.to_json() << '\n';
}

}  // namespace

std::string record_csv_header() {
  return "canonical_word,girth,syntactic_fails,syntactic_witness,bruteforce_fails,slupecki,"
         "automorphism_count";
}

std::string record_csv_row(const ClassificationRecord& r) {
  std::ostringstream os;
  os << r.canonical_word << ',' << r.girth << ',';
  if (r.syntactic) {
    os << (r.syntactic->fails ? "true" : "false") << ',';
    switch (r.syntactic->witness) {
      case PathConditionVerdict::Witness::None: os << "none"; break;
      case PathConditionVerdict::Witness::AlmostSymmetric: os << "almost-symmetric"; break;
      case PathConditionVerdict::Witness::SStarDecomposition:
        os << "(" << r.syntactic->s.str() << "**)^" << r.syntactic->k;
        break;
    }
    os << ',';
  } else {
    os << "skipped,,";
  }
  if (r.bruteforce)
    os << (r.bruteforce->fails ? "true" : "false") << ',';
  else
    os << "skipped,";
  for (std::size_t i = 0; i < r.slupecki.size(); ++i) {
    if (i) os << ';';
    os << "k" << r.slupecki[i].arity << ":" << verdict_name(r.slupecki[i].verdict);
  }
  os << ',' << r.automorphism_count;
  return os.str();
}

int run_classification(const RunConfig& config, std::ostream& report, std::ostream& timings,
                       std::ostream& diagnostics) {
  if (config.budget_nodes == 0 || config.budget_secs <= 0.0)
    throw std::invalid_argument("run_classification: budgets must be positive");
  std::vector<CycleId> cycles;
  for (int n = config.girth_lo; n <= config.girth_hi; ++n)
    for (auto& c : enumerate_cycles(n)) cycles.push_back(std::move(c));

  std::vector<ClassificationRecord> records(cycles.size());
  std::vector<PhaseTimings> phase(cycles.size());
  std::vector<std::string> errors(cycles.size());

  std::atomic<std::size_t> next{0};
  const int jobs = std::max(1, config.jobs);
  auto worker = [&] {
    while (true) {
      const std::size_t i = next.fetch_add(1);
      if (i >= cycles.size()) return;
      phase[i].canonical_word = cycles[i].canonical_word.str();
      try {
        if (auto cached = cache_lookup(config, cycles[i])) {
          records[i] = std::move(*cached);
          phase[i].from_cache = true;
        } else {
          records[i] = classify_cycle(cycles[i], config, &phase[i]);
          cache_store(config, records[i]);
        }
      } catch (const std::exception& e) {
        errors[i] = e.what();
      }
    }
  };
  std::vector<std::thread> pool;
  for (int j = 0; j < jobs; ++j) pool.emplace_back(worker);
  for (auto& t : pool) t.join();

  bool mismatch = false, inconclusive = false, had_error = false;
  if (config.format == RunConfig::Format::Csv) report << record_csv_header() << '\n';
  for (std::size_t i = 0; i < cycles.size(); ++i) {
    if (!errors[i].empty()) {
      had_error = true;
      diagnostics << "error: " << phase[i].canonical_word << ": " << errors[i] << '\n';
      continue;
    }
    const auto& r = records[i];
    if (config.format == RunConfig::Format::Json)
      report << r.to_json() << '\n';
    else
      report << record_csv_row(r) << '\n';
    if (r.methods_disagree()) {
      mismatch = true;
      diagnostics << "FATAL: verdict mismatch on " << r.canonical_word
                  << " (syntactic fails=" << r.syntactic->fails
                  << ", bruteforce fails=" << r.bruteforce->fails << ")\n";
    }
    for (const auto& o : r.slupecki)
      if (o.verdict == SlupeckiOutcome::Verdict::Inconclusive) inconclusive = true;

    Json t;
    t["canonical_word"] = phase[i].canonical_word;
    t["from_cache"] = phase[i].from_cache;
    t["syntactic_ms"] = phase[i].syntactic_ms;
    t["bruteforce_ms"] = phase[i].bruteforce_ms;
    t["slupecki_ms"] = phase[i].slupecki_ms;
    t["word_criterion_ms"] = phase[i].word_criterion_ms;
    timings << t.dump() << '\n';
  }
  if (mismatch) return 2;
  if (inconclusive) return 3;
  if (had_error) return 1;
  return 0;
}

}  // namespace rcycle
