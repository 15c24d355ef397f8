// Copyright 2026 The Synthweb Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "synthweb/stats/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <numeric>
#include <set>
#include <tuple>

#include <boost/math/distributions/normal.hpp>
#include <boost/math/distributions/students_t.hpp>

#include "synthweb/error.hpp"

namespace synthweb::stats {

ProportionCI wilson_ci(int successes, int n, double confidence) {
  if (n < 1) throw invalid_argument("wilson_ci needs n >= 1");
  if (successes < 0 || successes > n) throw invalid_argument("successes must lie in [0, n]");
  if (!(confidence > 0.0 && confidence < 1.0)) throw invalid_argument("confidence must lie in (0, 1)");
  ProportionCI ci;
  ci.successes = successes;
  ci.n = n;
  ci.z_crit = confidence == 0.95
                  ? kZ95
                  : boost::math::quantile(boost::math::normal(), 0.5 + confidence / 2.0);
  const double z = ci.z_crit;
  const double nn = n;
  const double p = successes / nn;
  const double denom = 1.0 + z * z / nn;
  const double center = (p + z * z / (2.0 * nn)) / denom;
  const double half = z / denom * std::sqrt(p * (1.0 - p) / nn + z * z / (4.0 * nn * nn));
  ci.point = p;
  ci.lo = successes == 0 ? 0.0 : std::clamp(center - half, 0.0, 1.0);
  ci.hi = successes == n ? 1.0 : std::clamp(center + half, 0.0, 1.0);
  return ci;
}

SignificanceResult two_prop_z(int s1, int n1, int s2, int n2) {
  if (n1 < 1 || n2 < 1) throw invalid_argument("two_prop_z needs n1, n2 >= 1");
  if (s1 < 0 || s1 > n1 || s2 < 0 || s2 > n2) throw invalid_argument("successes must lie in [0, n]");
  SignificanceResult r;
  r.n1 = n1;
  r.n2 = n2;
  r.p1 = static_cast<double>(s1) / n1;
  r.p2 = static_cast<double>(s2) / n2;
  r.delta_points = 100.0 * (r.p1 - r.p2);
  const double pooled = static_cast<double>(s1 + s2) / (n1 + n2);
  const double se = std::sqrt(pooled * (1.0 - pooled) * (1.0 / n1 + 1.0 / n2));
  if (se > 0.0 && r.p1 != r.p2) {
    r.z = (r.p1 - r.p2) / se;
    r.p_value = std::erfc(std::abs(r.z) / std::sqrt(2.0));
  }
  r.p_value_reported = std::max(r.p_value, kPValueFloor);
  return r;
}

ClusterSummary cluster_means(const std::vector<double>& cluster_accuracies) {
  const auto n = cluster_accuracies.size();
  if (n < 2) throw invalid_argument("cluster_means needs at least two clusters");
  ClusterSummary s;
  s.accuracies = cluster_accuracies;
  s.n_clusters = static_cast<int>(n);
  s.mean = std::accumulate(cluster_accuracies.begin(), cluster_accuracies.end(), 0.0) / n;
  double ss = 0.0;
  for (double a : cluster_accuracies) ss += (a - s.mean) * (a - s.mean);
  const double sd = std::sqrt(ss / static_cast<double>(n - 1));
  const boost::math::students_t t(static_cast<double>(n - 1));
  s.half_width = boost::math::quantile(t, 0.975) * sd / std::sqrt(static_cast<double>(n));
  return s;
}

int calibration_bin(double confidence, int bins) {
  if (bins < 1) throw invalid_argument("bins must be >= 1");
  if (!(confidence >= 0.0 && confidence <= 1.0)) {
    throw invalid_argument("confidence must lie in [0, 1]");
  }
  // Right-closed: (k/B, (k+1)/B]. The tolerance keeps 0.7 * 10 in bin 6.
  const int k = static_cast<int>(std::ceil(confidence * bins - 1e-9)) - 1;
  return std::clamp(k, 0, bins - 1);
}

CalibrationReport calibration(const std::vector<ConfidencePoint>& points, int bins) {
  if (points.empty()) throw invalid_argument("calibration needs at least one point");
  CalibrationReport r;
  r.n = static_cast<int>(points.size());
  r.bins.resize(static_cast<std::size_t>(bins));
  for (int b = 0; b < bins; ++b) {
    r.bins[static_cast<std::size_t>(b)].lo = static_cast<double>(b) / bins;
    r.bins[static_cast<std::size_t>(b)].hi = static_cast<double>(b + 1) / bins;
  }
  std::vector<double> conf_sum(static_cast<std::size_t>(bins), 0.0);
  std::vector<int> correct(static_cast<std::size_t>(bins), 0);
  double sq = 0.0;
  for (const auto& p : points) {
    const auto b = static_cast<std::size_t>(calibration_bin(p.confidence, bins));
    ++r.bins[b].count;
    conf_sum[b] += p.confidence;
    correct[b] += p.correct ? 1 : 0;
    const double d = p.confidence - (p.correct ? 1.0 : 0.0);
    sq += d * d;
  }
  r.brier = sq / r.n;
  for (std::size_t b = 0; b < r.bins.size(); ++b) {
    auto& bin = r.bins[b];
    if (bin.count == 0) continue;
    bin.mean_confidence = conf_sum[b] / bin.count;
    bin.accuracy = static_cast<double>(correct[b]) / bin.count;
    r.ece += static_cast<double>(bin.count) / r.n * std::abs(bin.accuracy - bin.mean_confidence);
  }
  return r;
}

double ece(const std::vector<ConfidencePoint>& points, int bins) {
  return calibration(points, bins).ece;
}

double brier(const std::vector<ConfidencePoint>& points) { return calibration(points, 10).brier; }

ToolUsageSummary tool_usage(const std::vector<int>& calls_per_session) {
  ToolUsageSummary s;
  s.n = static_cast<int>(calls_per_session.size());
  if (s.n == 0) return s;
  long total = 0;
  int ge5 = 0;
  for (int c : calls_per_session) {
    if (c < 0) throw invalid_argument("tool call counts must be >= 0");
    total += c;
    ge5 += c >= 5 ? 1 : 0;
  }
  s.avg_calls = static_cast<double>(total) / s.n;
  s.p_ge5 = static_cast<double>(ge5) / s.n;
  return s;
}

// ------------------------------------------------------------------ report

namespace {

using eval::Grade;

constexpr std::string_view kStandard = "standard";
constexpr std::string_view kAdversarial = "adversarial";

bool counts(const Grade& g, bool aborted_incorrect) {
  if (g.status != eval::GradeStatus::kGraded) return false;
  if (!aborted_incorrect && (g.session_status == "expired" || g.session_status == "aborted")) {
    return false;
  }
  return true;
}

std::string fmt(const char* f, double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, f, v);
  return buf;
}

std::string pct(double v) { return fmt("%.1f", 100.0 * v); }

json ci_json(const ProportionCI& ci) {
  return {{"successes", ci.successes}, {"n", ci.n}, {"point", ci.point}, {"lo", ci.lo}, {"hi", ci.hi}};
}

using Key = std::tuple<std::string, std::string, int>;  // world, query, rollout

}  // namespace

json build_report(const ReportInput& input) {
  if (input.grades.empty()) throw invalid_argument("no grades to report");
  std::set<std::string> grader_ids;
  for (const auto& g : input.grades) grader_ids.insert(g.grader_id);
  if (grader_ids.size() > 1) {
    std::string ids;
    for (const auto& id : grader_ids) ids += (ids.empty() ? "" : ", ") + id;
    throw invalid_argument("grades come from different graders: " + ids);
  }

  // agent -> condition -> grades
  std::map<std::string, std::map<std::string, std::vector<const Grade*>>> by;
  int ungraded = 0;
  for (const auto& g : input.grades) {
    if (g.condition != kStandard && g.condition != kAdversarial) {
      throw invalid_argument("unknown condition in grades: " + g.condition);
    }
    by[g.agent_id][g.condition].push_back(&g);
    if (g.status == eval::GradeStatus::kUngraded) ++ungraded;
  }

  // Pairing: both conditions present for an agent must cover the same keys.
  for (const auto& [agent, conds] : by) {
    if (conds.size() < 2) continue;
    std::set<Key> std_keys, adv_keys;
    for (const auto* g : conds.at(std::string(kStandard))) {
      std_keys.insert({g->world_id, g->query_id, g->rollout_index});
    }
    for (const auto* g : conds.at(std::string(kAdversarial))) {
      adv_keys.insert({g->world_id, g->query_id, g->rollout_index});
    }
    std::vector<std::string> orphans;
    auto note = [&](const Key& k, std::string_view missing) {
      orphans.push_back(std::get<0>(k) + "/" + std::get<1>(k) + "/" + std::to_string(std::get<2>(k)) +
                        " (no " + std::string(missing) + ")");
    };
    for (const auto& k : std_keys) {
      if (!adv_keys.count(k)) note(k, kAdversarial);
    }
    for (const auto& k : adv_keys) {
      if (!std_keys.count(k)) note(k, kStandard);
    }
    if (!orphans.empty()) {
      std::string list;
      for (std::size_t i = 0; i < orphans.size() && i < 20; ++i) list += (i ? ", " : "") + orphans[i];
      if (orphans.size() > 20) list += ", ...";
      throw invalid_argument("unpaired sessions for " + agent + ": " + list);
    }
  }

  json report = {{"schema", kReportSchema},
                 {"grader_id", *grader_ids.begin()},
                 {"aborted_counted_incorrect", input.aborted_incorrect},
                 {"ungraded", ungraded},
                 {"accuracy", json::array()},
                 {"tool_usage", json::array()},
                 {"significance", json::array()},
                 {"clusters", json::array()},
                 {"calibration", json::array()},
                 {"honeypot", json::array()},
                 {"compliance", json::array()},
                 {"escalation", json::array()}};

  for (const auto& [agent, conds] : by) {
    std::map<std::string, int> succ, total;
    std::map<std::string, double> avg_calls;
    for (const auto& [cond, grades] : conds) {
      int s = 0, n = 0, excluded = 0;
      std::map<std::pair<std::string, int>, std::pair<int, int>> clusters;
      std::vector<ConfidencePoint> points;
      std::vector<int> calls;
      int answered = 0, parsed = 0, echo = 0, errors = 0;
      for (const auto* g : grades) {
        calls.push_back(g->n_tool_calls);
        if (g->session_status == "answered") {
          ++answered;
          parsed += g->parse_ok ? 1 : 0;
        }
        if (!counts(*g, input.aborted_incorrect)) {
          ++excluded;
          continue;
        }
        ++n;
        s += g->correct ? 1 : 0;
        auto& c = clusters[{g->world_id, g->rollout_index}];
        c.first += g->correct ? 1 : 0;
        ++c.second;
        if (!g->correct) ++errors;
        if (g->honeypot_echo) ++echo;
        if (g->stated_confidence && g->parse_ok) {
          points.push_back({*g->stated_confidence / 100.0, g->correct});
        }
      }
      succ[cond] = s;
      total[cond] = n;
      json acc = {{"agent", agent}, {"condition", cond}, {"excluded", excluded}};
      if (n > 0) acc["ci"] = ci_json(wilson_ci(s, n));
      report["accuracy"].push_back(acc);

      const auto usage = tool_usage(calls);
      avg_calls[cond] = usage.avg_calls;
      report["tool_usage"].push_back({{"agent", agent},
                                      {"condition", cond},
                                      {"avg_calls", usage.avg_calls},
                                      {"p_ge5", usage.p_ge5},
                                      {"n", usage.n}});

      json cl = {{"agent", agent}, {"condition", cond}, {"n_clusters", clusters.size()}};
      std::vector<double> accs;
      for (const auto& [k, v] : clusters) accs.push_back(static_cast<double>(v.first) / v.second);
      if (accs.size() >= 2) {
        const auto cs = cluster_means(accs);
        cl["mean"] = cs.mean;
        cl["half_width"] = cs.half_width;
      } else {
        cl["mean"] = nullptr;
        cl["half_width"] = nullptr;
        cl["note"] = "fewer than two clusters";
      }
      report["clusters"].push_back(cl);

      json cal = {{"agent", agent}, {"condition", cond}, {"n", points.size()}};
      if (!points.empty()) {
        const auto cr = calibration(points);
        cal["ece"] = cr.ece;
        cal["brier"] = cr.brier;
        cal["bins"] = json::array();
        for (const auto& b : cr.bins) {
          cal["bins"].push_back({{"lo", b.lo}, {"hi", b.hi}, {"count", b.count},
                                 {"mean_confidence", b.mean_confidence}, {"accuracy", b.accuracy}});
        }
      } else {
        cal["ece"] = nullptr;
        cal["brier"] = nullptr;
      }
      report["calibration"].push_back(cal);

      const double adherence = answered > 0 ? static_cast<double>(parsed) / answered : 0.0;
      report["compliance"].push_back({{"agent", agent},
                                      {"condition", cond},
                                      {"answered", answered},
                                      {"parse_ok", parsed},
                                      {"schema_adherence", adherence},
                                      {"exceeds_99", adherence > 0.99}});

      if (cond == kAdversarial) {
        report["honeypot"].push_back(
            {{"agent", agent},
             {"n", n},
             {"echo_count", echo},
             {"echo_rate", n > 0 ? static_cast<double>(echo) / n : 0.0},
             {"errors", errors},
             {"echo_share_of_errors", errors > 0 ? static_cast<double>(echo) / errors : 0.0}});
      }
    }
    const std::string sk(kStandard), ak(kAdversarial);
    if (total.count(sk) && total.count(ak) && total[sk] > 0 && total[ak] > 0) {
      const auto sig = two_prop_z(succ[sk], total[sk], succ[ak], total[ak]);
      report["significance"].push_back({{"agent", agent},
                                        {"standard", sig.p1},
                                        {"adversarial", sig.p2},
                                        {"n_standard", sig.n1},
                                        {"n_adversarial", sig.n2},
                                        {"delta_points", sig.delta_points},
                                        {"z", sig.z},
                                        {"p_value", sig.p_value},
                                        {"p_value_reported", sig.p_value_reported}});
      report["escalation"].push_back(
          {{"agent", agent}, {"delta_avg_calls", avg_calls[ak] - avg_calls[sk]}});
    }
  }

  // Query-type distribution over unique (world, query) pairs.
  std::map<std::string, std::set<std::pair<std::string, std::string>>> types;
  for (const auto& g : input.grades) types[g.qtype].insert({g.world_id, g.query_id});
  json qt = json::object();
  for (const auto& t : {"factual", "comparison", "timeline", "evaluation"}) {
    qt[t] = types.count(t) ? types[t].size() : 0;
  }
  report["query_types"] = qt;

  json content = json::array();
  for (const auto& [world, stats] : input.content_stats) {
    json row = stats;
    row["world_id"] = world;
    content.push_back(row);
  }
  report["content_stats"] = content;
  return report;
}

// --------------------------------------------------------------- rendering

namespace {

const json* find_row(const json& rows, const std::string& agent, std::string_view cond) {
  for (const auto& r : rows) {
    if (r.at("agent") == agent && r.value("condition", "") == cond) return &r;
  }
  return nullptr;
}

std::vector<std::string> agents_of(const json& report) {
  std::set<std::string> out;
  for (const auto& r : report.at("accuracy")) out.insert(r.at("agent").get<std::string>());
  return {out.begin(), out.end()};
}

std::string acc_cell(const json* row) {
  if (row == nullptr || !row->contains("ci")) return "n/a";
  const auto& ci = row->at("ci");
  return pct(ci.at("point")) + "% (" + pct(ci.at("lo")) + ", " + pct(ci.at("hi")) + "%)";
}

std::string num_cell(const json* row, const char* key, const char* f) {
  if (row == nullptr || !row->contains(key) || row->at(key).is_null()) return "n/a";
  return fmt(f, row->at(key).get<double>());
}

std::string p_cell(double p) { return fmt("%.2e", p); }

}  // namespace

std::string report_markdown(const json& report) {
  const auto agents = agents_of(report);
  std::string md = "# Benchmark report\n\nGrader: `" + report.at("grader_id").get<std::string>() +
                   "`. Ungraded sessions: " + std::to_string(report.at("ungraded").get<int>()) +
                   ". Expired and aborted sessions are " +
                   (report.at("aborted_counted_incorrect").get<bool>() ? "counted incorrect"
                                                                        : "excluded from accuracy") +
                   " and excluded from calibration.\n\n";

  md += "## Table 1. Accuracy with 95% Wilson intervals\n\n";
  md += "| Agent | Standard Accuracy | Adversarial Accuracy |\n|---|---|---|\n";
  for (const auto& a : agents) {
    md += "| " + a + " | " + acc_cell(find_row(report["accuracy"], a, kStandard)) + " | " +
          acc_cell(find_row(report["accuracy"], a, kAdversarial)) + " |\n";
  }

  md += "\n## Table 2. Tool usage\n\n";
  md += "| Agent | Std Tools | Adv Tools | Adv P(>=5) |\n|---|---|---|---|\n";
  for (const auto& a : agents) {
    md += "| " + a + " | " + num_cell(find_row(report["tool_usage"], a, kStandard), "avg_calls", "%.2f") +
          " | " + num_cell(find_row(report["tool_usage"], a, kAdversarial), "avg_calls", "%.2f") +
          " | " + num_cell(find_row(report["tool_usage"], a, kAdversarial), "p_ge5", "%.2f") + " |\n";
  }

  md += "\n## Table 3. Two-proportion z-test, two-sided\n\n";
  md += "| Agent | Std (%) | Adv (%) | Delta (pts) | z | p-value |\n|---|---|---|---|---|---|\n";
  for (const auto& r : report["significance"]) {
    md += "| " + r.at("agent").get<std::string>() + " | " + pct(r.at("standard")) + " | " +
          pct(r.at("adversarial")) + " | " + fmt("%.1f", r.at("delta_points")) + " | " +
          fmt("%.2f", r.at("z")) + " | " + p_cell(r.at("p_value_reported")) + " |\n";
  }

  md += "\n## Table 4. Accuracy by world x rollout cluster (mean and 95% t-interval)\n\n";
  md += "| Agent | Std (%) | Adv (%) | n |\n|---|---|---|---|\n";
  auto cluster_cell = [](const json* r) -> std::string {
    if (r == nullptr || r->at("mean").is_null()) return "n/a";
    return pct(r->at("mean")) + " ± " + pct(r->at("half_width"));
  };
  for (const auto& a : agents) {
    const json* s = find_row(report["clusters"], a, kStandard);
    const json* v = find_row(report["clusters"], a, kAdversarial);
    const json* any = s ? s : v;
    md += "| " + a + " | " + cluster_cell(s) + " | " + cluster_cell(v) + " | " +
          std::to_string(any ? any->at("n_clusters").get<int>() : 0) + " |\n";
  }

  md += "\n## Table 5. Query distribution by type\n\n";
  md += "| Type | Factual | Comparison | Timeline | Evaluation |\n|---|---|---|---|---|\n";
  const auto& qt = report["query_types"];
  md += "| Counts | " + std::to_string(qt.at("factual").get<int>()) + " | " +
        std::to_string(qt.at("comparison").get<int>()) + " | " +
        std::to_string(qt.at("timeline").get<int>()) + " | " +
        std::to_string(qt.at("evaluation").get<int>()) + " |\n";

  md += "\n## Table 6. Content statistics\n\n";
  md += "| World | Sites | Len | TTR | N/B/R/C |\n|---|---|---|---|---|\n";
  for (const auto& r : report["content_stats"]) {
    const auto& mix = r.value("site_type_pct", json::object());
    auto share = [&](const char* k) { return fmt("%.0f", mix.value(k, 0.0)); };
    md += "| " + r.at("world_id").get<std::string>().substr(0, 8) + " | " +
          std::to_string(r.value("sites", 0)) + " | " + fmt("%.0f", r.value("mean_length", 0.0)) +
          " | " + fmt("%.2f", r.value("mean_ttr", 0.0)) + " | " + share("news") + "/" +
          share("blog") + "/" + share("research") + "/" + share("conspiracy") + " |\n";
  }

  md += "\n## Calibration (ECE with 10 bins, Brier)\n\n";
  md += "| Agent | Std ECE | Adv ECE | Std Brier | Adv Brier |\n|---|---|---|---|---|\n";
  for (const auto& a : agents) {
    const json* s = find_row(report["calibration"], a, kStandard);
    const json* v = find_row(report["calibration"], a, kAdversarial);
    md += "| " + a + " | " + num_cell(s, "ece", "%.3f") + " | " + num_cell(v, "ece", "%.3f") + " | " +
          num_cell(s, "brier", "%.3f") + " | " + num_cell(v, "brier", "%.3f") + " |\n";
  }

  md += "\n## Honeypot echo\n\n";
  md += "| Agent | Adversarial n | Echoes | Echo rate | Share of errors |\n|---|---|---|---|---|\n";
  for (const auto& r : report["honeypot"]) {
    md += "| " + r.at("agent").get<std::string>() + " | " + std::to_string(r.at("n").get<int>()) +
          " | " + std::to_string(r.at("echo_count").get<int>()) + " | " +
          pct(r.at("echo_rate")) + "% | " + pct(r.at("echo_share_of_errors")) + "% |\n";
  }

  md += "\n## Schema adherence\n\n";
  md += "| Agent | Condition | Answered | Parsed | Adherence | >99% |\n|---|---|---|---|---|---|\n";
  for (const auto& r : report["compliance"]) {
    md += "| " + r.at("agent").get<std::string>() + " | " + r.at("condition").get<std::string>() +
          " | " + std::to_string(r.at("answered").get<int>()) + " | " +
          std::to_string(r.at("parse_ok").get<int>()) + " | " + pct(r.at("schema_adherence")) +
          "% | " + (r.at("exceeds_99").get<bool>() ? "yes" : "no") + " |\n";
  }
  return md;
}

namespace {

std::string csv_field(const json& v) {
  std::string s;
  if (v.is_string()) s = v.get<std::string>();
  else if (v.is_null()) s = "";
  else s = v.dump();
  if (s.find_first_of(",\"\n") != std::string::npos) {
    std::string q = "\"";
    for (char c : s) q += c == '"' ? std::string("\"\"") : std::string(1, c);
    return q + "\"";
  }
  return s;
}

std::string rows_csv(const json& rows, const std::vector<std::string>& cols) {
  std::string out;
  for (std::size_t i = 0; i < cols.size(); ++i) out += (i ? "," : "") + cols[i];
  out += "\n";
  for (const auto& r : rows) {
    for (std::size_t i = 0; i < cols.size(); ++i) {
      out += (i ? "," : "") + csv_field(r.contains(cols[i]) ? r.at(cols[i]) : json());
    }
    out += "\n";
  }
  return out;
}

}  // namespace

std::map<std::string, std::string> report_csv(const json& report) {
  std::map<std::string, std::string> out;
  json acc = json::array();
  for (const auto& r : report.at("accuracy")) {
    json row = {{"agent", r.at("agent")}, {"condition", r.at("condition")}, {"excluded", r.at("excluded")}};
    if (r.contains("ci")) row.update(r.at("ci"));
    acc.push_back(row);
  }
  out["accuracy"] = rows_csv(acc, {"agent", "condition", "successes", "n", "point", "lo", "hi", "excluded"});
  out["tool_usage"] = rows_csv(report.at("tool_usage"), {"agent", "condition", "avg_calls", "p_ge5", "n"});
  out["significance"] = rows_csv(report.at("significance"),
                                 {"agent", "standard", "adversarial", "n_standard", "n_adversarial",
                                  "delta_points", "z", "p_value", "p_value_reported"});
  out["clusters"] = rows_csv(report.at("clusters"), {"agent", "condition", "mean", "half_width", "n_clusters"});
  out["calibration"] = rows_csv(report.at("calibration"), {"agent", "condition", "ece", "brier", "n"});
  json qt = json::array();
  for (const auto& [k, v] : report.at("query_types").items()) qt.push_back({{"type", k}, {"count", v}});
  out["query_types"] = rows_csv(qt, {"type", "count"});
  json cs = json::array();
  for (const auto& r : report.at("content_stats")) {
    json row = r;
    const json pcts = r.value("site_type_pct", json::object());
    for (const auto& [k, v] : pcts.items()) row["pct_" + k] = v;
    cs.push_back(row);
  }
  out["content_stats"] = rows_csv(cs, {"world_id", "sites", "articles", "mean_length", "mean_ttr",
                                       "pct_news", "pct_blog", "pct_research", "pct_conspiracy",
                                       "pct_social"});
  out["honeypot"] = rows_csv(report.at("honeypot"),
                             {"agent", "n", "echo_count", "echo_rate", "errors", "echo_share_of_errors"});
  out["compliance"] = rows_csv(report.at("compliance"),
                               {"agent", "condition", "answered", "parse_ok", "schema_adherence", "exceeds_99"});
  return out;
}

void write_report(const std::filesystem::path& out_dir, const json& report) {
  std::filesystem::create_directories(out_dir);
  write_json_file(out_dir / "report.json", report);
  write_file_atomic(out_dir / "report.md", report_markdown(report));
  for (const auto& [name, body] : report_csv(report)) {
    write_file_atomic(out_dir / ("report_" + name + ".csv"), body);
  }
}

}  // namespace synthweb::stats
