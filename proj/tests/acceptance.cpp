// Copyright 2026 The darkspan Authors
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

// End-to-end acceptance checks. Prints one PASS/FAIL line per criterion and
// exits non-zero when any criterion fails.
//
// usage: acceptance <work-dir>

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <cstring>
#include <filesystem>
#include <iostream>
#include <map>
#include <numeric>
#include <sstream>
#include <string>
#include <unordered_map>
#include <vector>

#include <json.hpp>

#include "darkspan/darkspan.hpp"
#include "support/oracles.hpp"

namespace fs = std::filesystem;
using namespace darkspan;

namespace {

struct Verdict {
  bool pass = true;
  std::vector<std::string> notes;

  void check(bool ok, const std::string& what) {
    if (!ok) pass = false;
    notes.push_back(std::string(ok ? "ok   " : "MISS ") + what);
  }
  void note(const std::string& what) { notes.push_back("     " + what); }
};

std::string fmt(const char* f, double a) {
  char buf[128];
  std::snprintf(buf, sizeof buf, f, a);
  return buf;
}

std::string fmt(const char* f, double a, double b) {
  char buf[160];
  std::snprintf(buf, sizeof buf, f, a, b);
  return buf;
}

std::string slurp(const fs::path& p) { return io::read_text(p); }

std::map<std::string, std::string> tree(const fs::path& root) {
  std::map<std::string, std::string> out;
  for (const auto& e : fs::recursive_directory_iterator(root)) {
    if (e.is_regular_file()) out[fs::relative(e.path(), root).string()] = slurp(e.path());
  }
  return out;
}

int run_stage(const std::string& stage, const fs::path& config, const fs::path& out,
              std::optional<fs::path> manifest = std::nullopt) {
  pipeline::Options opt;
  opt.subcommand = stage;
  opt.config_path = config;
  opt.out_dir = out;
  if (manifest) opt.manifest = manifest->string();
  std::ostringstream err;
  const int code = pipeline::run(opt, err);
  if (code != 0) std::cerr << err.str();
  return code;
}

void write(const fs::path& p, const std::string& s) { io::atomic_write(p, s); }

// ---------------------------------------------------------------------------
// Shared end-to-end run

constexpr const char* kConfig =
    "seed = 42\n"
    "periods = 25\n"
    "sim_topics = 8\n"
    "sim_docs_per_topic = 200\n"
    "sim_periods = 25\n"
    "sim_websites = 20\n"
    "embedding_kind = hashing\n"
    "embedding_dim = 256\n"
    "min_cluster_size = 15\n"
    "min_samples = 15\n";

struct Planted {
  std::vector<std::string> shape;                 // per planted topic
  std::vector<std::vector<std::size_t>> counts;   // topic x period
  std::map<std::string, std::size_t> topic_of;    // snapshot id -> planted topic
};

struct Run {
  fs::path root, sim, out, config;
  double seconds = 0.0;
  bool ok = false;
  Planted planted;
  std::map<std::string, int> cluster_of;          // snapshot id -> raw cluster label
  std::map<int, std::size_t> match;               // cluster label -> planted topic
  std::map<int, double> purity;
};

Planted load_plan(const fs::path& sim) {
  Planted p;
  const auto plan = nlohmann::json::parse(slurp(sim / "plan.json"));
  for (const auto& t : plan.at("topics")) {
    p.shape.push_back(t.at("shape").get<std::string>());
    p.counts.push_back(t.at("counts").get<std::vector<std::size_t>>());
  }
  for (const auto& [id, topic] : simulate::load_ground_truth(sim / "ground_truth.jsonl")) p.topic_of[id] = topic;
  return p;
}

Run end_to_end(const fs::path& root) {
  Run r;
  r.root = root;
  r.sim = root / "sim";
  r.out = root / "run";
  r.config = root / "acceptance.cfg";
  write(r.config, kConfig);
  if (run_stage("simulate", r.config, r.sim) != 0) return r;
  const auto t0 = std::chrono::steady_clock::now();
  if (run_stage("all", r.config, r.out, r.sim / "manifest.jsonl") != 0) return r;
  r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  r.planted = load_plan(r.sim);
  for (const auto& row : pipeline::read_tsv(r.out / "assignments.tsv")) r.cluster_of[row[0]] = std::stoi(row[1]);

  std::map<int, std::map<std::size_t, std::size_t>> table;
  for (const auto& [id, label] : r.cluster_of) {
    if (label >= 0) ++table[label][r.planted.topic_of.at(id)];
  }
  for (const auto& [label, row] : table) {
    std::size_t best = 0, total = 0, arg = 0;
    for (const auto& [topic, n] : row) {
      total += n;
      if (n > best) best = n, arg = topic;
    }
    r.match[label] = arg;
    r.purity[label] = static_cast<double>(best) / static_cast<double>(total);
  }
  r.ok = true;
  return r;
}

// ---------------------------------------------------------------------------
// 1. Planted-topic recovery

Verdict planted_recovery(const Run& r) {
  Verdict v;
  if (!r.ok) {
    v.check(false, "pipeline run completed");
    return v;
  }
  std::size_t pure = 0;
  for (const auto& [label, p] : r.purity) {
    pure += p >= 0.9;
    v.note("cluster " + std::to_string(label) + " -> planted topic " + std::to_string(r.match.at(label)) + " (" +
           r.planted.shape[r.match.at(label)] + ")" + fmt(", purity %.3f", p));
  }
  v.check(pure >= 7, std::to_string(pure) + " of " + std::to_string(r.purity.size()) +
                         " clusters with best-match purity >= 0.9 (need >= 7)");
  v.check(r.seconds < 300.0, fmt("pipeline wall clock %.1f s (limit 300 s)", r.seconds));
  return v;
}

// ---------------------------------------------------------------------------
// 2. Lifecycle fidelity

Verdict lifecycle_fidelity(const Run& r) {
  Verdict v;
  if (!r.ok) {
    v.check(false, "pipeline run completed");
    return v;
  }
  // Raw clusters map one-to-one onto reported topics when no merge map is set.
  std::map<int, std::vector<std::string>> rows;
  std::istringstream in(slurp(r.out / "lifecycle.csv"));
  std::string line;
  std::getline(in, line);
  while (std::getline(in, line)) {
    const auto f = io::parse_csv_line(line);
    rows[std::stoi(f[0])] = f;
  }
  std::map<int, std::map<std::size_t, double>> share;
  std::istringstream pin(slurp(r.out / "prevalence.csv"));
  std::getline(pin, line);
  while (std::getline(pin, line)) {
    const auto f = io::parse_csv_line(line);
    share[std::stoi(f[0])][std::stoul(f[2])] = std::stod(f[4]);
  }

  double max_off = 0.0, min_on = 1.0;
  for (const auto& [label, topic] : r.match) {
    const auto& counts = r.planted.counts[topic];
    std::size_t first = counts.size(), last = 0;
    for (std::size_t p = 0; p < counts.size(); ++p) {
      if (counts[p] > 0) first = std::min(first, p), last = p;
      const double s = share[label][p];
      if (counts[p] > 0) {
        min_on = std::min(min_on, s);
      } else {
        max_off = std::max(max_off, s);
      }
    }
    const std::string& shape = r.planted.shape[topic];
    const auto it = rows.find(label);
    if (it == rows.end()) {
      v.check(false, "topic " + std::to_string(label) + " has no lifecycle row");
      continue;
    }
    const std::size_t got_first = std::stoul(it->second[2]), got_last = std::stoul(it->second[4]);
    const std::string& cls = it->second[11];
    const auto near = [](std::size_t a, std::size_t b) { return (a > b ? a - b : b - a) <= 1; };
    v.check(near(got_first, first) && near(got_last, last),
            "topic " + std::to_string(label) + " (" + shape + ") active " + std::to_string(got_first) + ".." +
                std::to_string(got_last) + ", planted " + std::to_string(first) + ".." + std::to_string(last) +
                ", class " + cls);
    if (shape == "Stable") v.check(cls == "Continuous", "Stable topic " + std::to_string(label) + " is Continuous");
    if (shape == "Episodic") v.check(cls == "Episodic", "Episodic topic " + std::to_string(label) + " is Episodic");
  }
  const auto summary = nlohmann::json::parse(slurp(r.out / "lifecycle_summary.json"));
  v.note(fmt("activity threshold tau = %g", summary.at("tau").get<double>()));
  v.note(fmt("soft-assignment leakage: max share outside planted periods %.4f, min share inside %.4f", max_off,
             min_on));
  return v;
}

// ---------------------------------------------------------------------------
// 3. Geometry oracles

Matrix from_rows(const oracle::Points& rows) {
  Matrix m;
  for (const auto& r : rows) m.push_row(r);
  return m;
}

Verdict geometry_oracles() {
  Verdict v;
  const oracle::Points line = {{0}, {1}, {2}, {10}, {11}, {12}};
  const Matrix lm = from_rows(line);
  const auto mr = cluster::mutual_reachability(lm, 2);
  const auto want = oracle::mutual_reachability(line, 2);
  bool exact = true;
  for (std::size_t a = 0; a < 6; ++a) {
    for (std::size_t b = 0; b < 6; ++b) exact = exact && mr(a, b) == want[a][b];
  }
  v.check(exact, "mutual reachability on {0,1,2,10,11,12}, min_samples 2, equals brute force exactly");

  Rng rng(2026);
  std::size_t agree = 0;
  for (int t = 0; t < 100; ++t) {
    const std::size_t n = 2 + static_cast<std::size_t>(rng.below(8));
    oracle::Points pts(n, std::vector<double>(2));
    for (auto& p : pts) {
      for (double& x : p) x = rng.uniform(0.0, 10.0);
    }
    const std::size_t ms = 1 + static_cast<std::size_t>(rng.below(n - 1));
    const Matrix m = from_rows(pts);
    const double got = cluster::total_weight(cluster::minimum_spanning_tree(n, cluster::mutual_reachability(m, ms)));
    agree += std::abs(got - oracle::exhaustive_mst_weight(oracle::mutual_reachability(pts, ms))) <= 1e-12;
  }
  v.check(agree == 100, std::to_string(agree) + "/100 MST weights equal the exhaustive minimum (n <= 9)");

  double worst = 0.0;
  for (int t = 0; t < 20; ++t) {
    oracle::Points x(20, std::vector<double>(6)), y(20, std::vector<double>(2));
    for (auto& p : x) {
      for (double& c : p) c = rng.normal();
    }
    for (auto& p : y) {
      for (double& c : p) c = rng.normal();
    }
    for (std::size_t k = 1; k < 10; ++k) {
      worst = std::max(worst, std::abs(reduce::trustworthiness(from_rows(x), from_rows(y), k) -
                                       oracle::trustworthiness(x, y, k)));
    }
  }
  v.check(worst <= 1e-12, fmt("trustworthiness vs brute force on n = 20: max |diff| = %.3g", worst));
  return v;
}

// ---------------------------------------------------------------------------
// 4. Reduction quality

// Two 100-point unit-variance Gaussian blobs in 50-D, centers uniform in
// [-10, 10]^50 (cosine distance 1.011 for seed 3).
Matrix two_blobs(std::uint64_t seed) {
  Rng rng(seed);
  std::vector<double> c[2];
  for (auto& v : c) {
    for (int d = 0; d < 50; ++d) v.push_back(rng.uniform(-10.0, 10.0));
  }
  Matrix m(200, 50);
  for (std::size_t i = 0; i < 200; ++i) {
    for (std::size_t d = 0; d < 50; ++d) m(i, d) = c[i / 100][d] + rng.normal();
  }
  return m;
}

Verdict reduction_quality() {
  Verdict v;
  const Matrix m = two_blobs(3);
  const Matrix a = reduce::reduce(m, {});
  const Matrix b = reduce::reduce(m, {});
  const double t = reduce::trustworthiness(m, a, 10);
  v.check(t >= 0.90, fmt("two-blob trustworthiness(k=10) = %.4f (need >= 0.90)", t));
  v.note("umap-learn scores 0.8943-0.8958 on this fixture (random states 1-3)");
  const bool same = a.rows() == b.rows() && a.cols() == b.cols() &&
                    std::memcmp(a.data().data(), b.data().data(), a.data().size() * sizeof(double)) == 0;
  v.check(same, "two runs with seed 42 give identical output bytes");
  return v;
}

// ---------------------------------------------------------------------------
// 5. Formula fixtures

Verdict formula_fixtures() {
  Verdict v;
  const auto w = topics::ctfidf_weights({{1, {"btc", "btc", "escrow"}}, {2, {"forum", "forum", "escrow"}}});
  const double btc = w.at(1).at("btc");
  v.check(std::abs(btc - 2.0 * std::log(2.5)) <= 1e-9, fmt("W(btc, c1) = %.12f vs 2 ln 2.5", btc));

  std::vector<std::string> a, b;
  for (int x : {0, 0, 0, 1, 1, 1, 1, 1, 1, 1}) a.push_back(std::to_string(x));
  for (int x : {0, 0, 1, 0, 1, 1, 1, 1, 1, 1}) b.push_back(std::to_string(x));
  const auto k = topics::cohen_kappa(a, b);
  v.check(std::abs(k.kappa - 0.238095) <= 1e-6,
          fmt("kappa for confusion [[2,1],[1,6]] = %.7f (stated 0.238095 +- 1e-6)", k.kappa));
  v.note(fmt("po = %.2f, pe = %.2f; (po - pe) / (1 - pe) = 0.5238095", k.observed_agreement, k.expected_agreement));

  const std::vector<double> shares = {0.125, 0.5, 0.25, 0.125};
  const auto c = timeline::concentration(shares);
  v.check(c.top_5 == 1.0 && c.min_topics_50 == 1u && c.min_topics_75 == 2u &&
              c.order == std::vector<std::size_t>{1, 2, 0, 3},
          "concentration of [0.125, 0.5, 0.25, 0.125] matches hand ranking and cutoffs");
  const auto ten = timeline::concentration(std::vector<double>(10, 0.1));
  v.check(std::abs(ten.top_5 - 0.5) <= 1e-15 && ten.min_topics_50 == 5u, "10 equal topics: top-5 share 0.5");

  const std::vector<std::string> labels = {"A", "B", "C", "D"};
  const timeline::CategoryMap map = {{"A", "Transactional"}, {"C", "Transactional"}, {"B", "Community"}};
  const auto roll = timeline::category_rollup(shares, labels, map);
  v.check(roll[0].share == 0.375 && roll[3].share == 0.5 && roll[4].share == 0.125 && roll[1].share == 0.0,
          "category rollup sums member shares exactly, unmapped topics under Uncategorized");
  return v;
}

// ---------------------------------------------------------------------------
// 6. Conservation

double row_mass(const std::string& field) {
  double s = 0.0;
  for (const auto& [id, p] : pipeline::parse_distribution(field)) s += p;
  return s;
}

Verdict conservation(const Run& r) {
  Verdict v;
  // Grouping and dedup on a hand-built set: 6 snapshots for one site (one
  // exact duplicate in the same quarter), 3 for another.
  std::vector<ingest::SnapshotMeta> metas;
  std::unordered_map<std::string, textnorm::TokenList> tokens;
  for (int i = 0; i < 6; ++i) {
    const std::string id = "a" + std::to_string(i);
    metas.push_back({id, "/a", "A", "2021-0" + std::to_string(1 + i) + "-10T00:00:00Z", "", ""});
    tokens[id] = {i == 1 ? "same" : "text" + std::to_string(i)};
  }
  tokens["a0"] = {"same"};
  for (int i = 0; i < 3; ++i) {
    const std::string id = "b" + std::to_string(i);
    metas.push_back({id, "/b", "B", "2021-05-0" + std::to_string(1 + i) + "T00:00:00Z", "", ""});
    tokens[id] = {"b"};
  }
  corpus::CorpusStats st;
  const auto hist = corpus::build_corpus(metas, tokens, [](UtcTime t) { return timeline::bucket(t, {}); }, 5, &st);
  v.check(st.accepted == st.retained + st.dedup_removed + st.dropped_group_snapshots && st.retained == 5 &&
              st.dedup_removed == 1 && st.dropped_group_snapshots == 3,
          "hand fixture: 9 accepted = 5 retained + 1 duplicate + 3 in a shallow group");

  if (!r.ok) {
    v.check(false, "pipeline run completed");
    return v;
  }
  const auto cs = nlohmann::json::parse(slurp(r.out / "corpus_stats.json"));
  const auto n = [&](const char* k) { return cs.at(k).get<std::size_t>(); };
  v.check(n("accepted") == n("retained") + n("dedup_removed") + n("dropped_group_snapshots"),
          "end-to-end corpus: " + std::to_string(n("accepted")) + " accepted = " + std::to_string(n("retained")) +
              " retained + " + std::to_string(n("dedup_removed")) + " duplicates + " +
              std::to_string(n("dropped_group_snapshots")) + " in shallow groups");

  // Merge two raw topics, then check mass before and after.
  const fs::path merged = r.root / "merged";
  fs::remove_all(merged);
  fs::copy(r.out, merged, fs::copy_options::recursive);
  write(r.root / "merge.tsv", "0\tMerged Pair\n1\tMerged Pair\n");
  write(r.root / "merged.cfg", std::string(kConfig) + "merge_map = merge.tsv\n");
  const bool ran = run_stage("all", r.root / "merged.cfg", merged, r.sim / "manifest.jsonl") == 0;
  v.check(ran, "pipeline with a merge map completed");
  if (!ran) return v;
  double worst_raw = 0.0, worst_merged = 0.0;
  for (const auto& row : pipeline::read_tsv(merged / "assignments.tsv")) {
    worst_raw = std::max(worst_raw, std::abs(row_mass(row[2]) - 1.0));
  }
  for (const auto& row : pipeline::read_tsv(merged / "merged_assignments.tsv")) {
    worst_merged = std::max(worst_merged, std::abs(row_mass(row[1]) - 1.0));
  }
  v.check(worst_raw <= 1e-9 && worst_merged <= 1e-9,
          fmt("per-document mass: max |sum - 1| = %.2g before merge, %.2g after", worst_raw, worst_merged));
  const auto topics_json = nlohmann::json::parse(slurp(merged / "topics.json"));
  v.note(std::to_string(r.purity.size()) + " raw topics -> " + std::to_string(topics_json.at("topics").size()) + " merged topics");

  std::size_t snapshots = 0;
  for (const auto& row : pipeline::read_tsv(r.out / "snapshots.tsv")) snapshots += !row.empty();
  for (const auto& [dir, name] : {std::pair{r.out, "base"}, std::pair{merged, "merged"}}) {
    const double g = nlohmann::json::parse(slurp(dir / "concentration.json")).at("grand_total_mass").get<double>();
    v.check(std::abs(g - static_cast<double>(snapshots)) <= 1e-9 * static_cast<double>(snapshots),
            std::string(name) + fmt(" run: grand prevalence mass %.9f vs %.0f snapshots", g, static_cast<double>(snapshots)));
  }
  return v;
}

// ---------------------------------------------------------------------------
// 7. Filter rules

Verdict filter_rules(const fs::path& root) {
  Verdict v;
  std::vector<ingest::SnapshotMeta> metas;
  for (int i = 0; i < 4; ++i) metas.push_back({"four" + std::to_string(i), "/four", "Four", "2021-01-1" + std::to_string(i) + "T00:00:00Z", "", ""});
  for (int i = 0; i < 5; ++i) metas.push_back({"five" + std::to_string(i), "/five", "Five", "2021-01-1" + std::to_string(i) + "T00:00:00Z", "", ""});
  const auto hist = corpus::build_websites(metas);
  v.check(hist.size() == 1 && hist[0].key.path == "/five" && hist[0].snapshots.size() == 5,
          "4-snapshot group dropped, 5-snapshot group kept");

  const std::string base = "vendor market escrow shipping listing product review ";
  const std::string t50 = (base + base).substr(0, 50), t51 = (base + base).substr(0, 51);
  const ingest::SnapshotMeta m{"s", "/s", "S", "2021-01-01T00:00:00Z", "s.html", ""};
  const auto r50 = ingest::validate_snapshot(m, t50);
  const auto r51 = ingest::validate_snapshot(m, t51);
  const bool short_rejected = std::holds_alternative<ingest::Rejection>(r50) &&
                              std::get<ingest::Rejection>(r50).reason == ingest::RejectionReason::TooShort;
  v.check(short_rejected && std::holds_alternative<ingest::ExtractedDoc>(r51),
          "50-character extraction rejected as too short, 51 accepted");

  const textnorm::Normalizer norm;
  const auto toks = norm.normalize("ox cat bcdfghjklmnpqrstvwxzbcdfg bcdfghjklmnpqrstvwxzbcdfgh");
  const bool lengths = std::all_of(toks.begin(), toks.end(), [](const std::string& t) { return t.size() >= 3 && t.size() <= 25; });
  v.check(lengths && toks.size() == 2 && toks[0] == "cat" && toks[1].size() == 25,
          "token length bounds [3, 25]: 2- and 26-letter tokens dropped, 3 and 25 kept");

  // A five-snapshot site with one French page, through ingest and normalize.
  const fs::path dir = root / "filter";
  fs::remove_all(dir);
  fs::create_directories(dir / "html");
  const std::string en = "The vendor ships every order with tracking and the escrow service releases payment "
                         "when the buyer confirms that the package has arrived in good condition.";
  const std::string fr = "Le vendeur expédie chaque commande avec un suivi et le service de séquestre libère le "
                         "paiement lorsque l'acheteur confirme que le colis est bien arrivé dans les délais.";
  std::string manifest;
  for (int i = 0; i < 6; ++i) {
    const std::string id = "p" + std::to_string(i);
    const std::string text = i == 3 ? fr : en + " Order number " + std::to_string(i) + " of the month " +
                                               std::string(static_cast<std::size_t>(i + 1), 'x') + ".";
    write(dir / "html" / (id + ".html"), "<html><body><main><p>" + text + "</p></main></body></html>");
    manifest += "{\"snapshot_id\":\"" + id + "\",\"website_path\":\"/shop\",\"page_title\":\"Shop\",\"timestamp\":\"2021-0" +
                std::to_string(i + 1) + "-02T00:00:00Z\",\"html_path\":\"html/" + id + ".html\"}\n";
  }
  write(dir / "manifest.jsonl", manifest);
  write(dir / "run.cfg", "manifest = manifest.jsonl\n");
  const bool ran = run_stage("ingest", dir / "run.cfg", dir / "out") == 0 &&
                   run_stage("normalize", dir / "run.cfg", dir / "out") == 0;
  bool dropped = false, kept = false;
  if (ran) {
    const std::string filtered = slurp(dir / "out/language_filtered.jsonl");
    const std::string tokens = slurp(dir / "out/tokens.jsonl");
    dropped = filtered.find("\"p3\"") != std::string::npos && tokens.find("\"p3\"") == std::string::npos;
    kept = tokens.find("\"p0\"") != std::string::npos && tokens.find("\"p5\"") != std::string::npos;
  }
  v.check(ran && dropped && kept, "French snapshot dropped by the language filter, English ones kept");
  return v;
}

// ---------------------------------------------------------------------------
// 8. Determinism

Verdict determinism(const Run& r) {
  Verdict v;
  if (!r.ok) {
    v.check(false, "pipeline run completed");
    return v;
  }
  const fs::path one = r.root / "threads-1", four = r.root / "threads-4";
  fs::remove_all(one);
  fs::remove_all(four);
  ::setenv("DARKSPAN_THREADS", "1", 1);
  const bool a = run_stage("all", r.config, one, r.sim / "manifest.jsonl") == 0;
  ::setenv("DARKSPAN_THREADS", "4", 1);
  const bool b = run_stage("all", r.config, four, r.sim / "manifest.jsonl") == 0;
  ::unsetenv("DARKSPAN_THREADS");
  v.check(a && b, "two further runs of 'all' completed");
  if (!a || !b) return v;
  const auto t0 = tree(r.out), t1 = tree(one), t4 = tree(four);
  std::size_t differing = 0;
  for (const auto& [name, content] : t0) {
    if (!t1.count(name) || t1.at(name) != content || !t4.count(name) || t4.at(name) != content) {
      ++differing;
      v.note("differs: " + name);
    }
  }
  v.check(differing == 0 && t0.size() == t1.size() && t0.size() == t4.size(),
          std::to_string(t0.size()) + " report files byte-identical across default, 1 and 4 threads");
  return v;
}

}  // namespace

int main(int argc, char** argv) {
  const fs::path root = argc > 1 ? fs::path(argv[1]) : fs::temp_directory_path() / "darkspan-acceptance";
  fs::remove_all(root);
  fs::create_directories(root);

  const Run run = end_to_end(root);
  const std::pair<const char*, Verdict> results[] = {
      {"1 planted-topic recovery", planted_recovery(run)},
      {"2 lifecycle fidelity", lifecycle_fidelity(run)},
      {"3 geometry oracles", geometry_oracles()},
      {"4 reduction quality", reduction_quality()},
      {"5 formula fixtures", formula_fixtures()},
      {"6 conservation", conservation(run)},
      {"7 filter rules", filter_rules(root)},
      {"8 determinism", determinism(run)},
  };

  int failed = 0;
  for (const auto& [name, v] : results) {
    std::cout << (v.pass ? "PASS " : "FAIL ") << name << "\n";
    for (const auto& n : v.notes) std::cout << "    " << n << "\n";
    failed += !v.pass;
  }
  std::cout << (8 - failed) << "/8 criteria passed\n";
  return failed == 0 ? 0 : 1;
}
