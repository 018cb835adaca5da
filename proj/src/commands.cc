// Copyright 2026 The Caplab Authors.
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

#include "caplab/commands.h"

#include <charconv>
#include <cstring>
#include <filesystem>
#include <functional>
#include <map>
#include <ostream>

#include "caplab/ellsberg.h"
#include "caplab/emit.h"
#include "caplab/error.h"
#include "caplab/format.h"
#include "caplab/independence.h"
#include "caplab/kernels.h"
#include "caplab/measure.h"
#include "caplab/wlln.h"

namespace caplab::commands {
namespace {

using config::Config;
using emit::Bool;

struct Context {
  const Config& config;
  std::string out_dir;
  std::optional<std::uint64_t> seed_override;
  std::uint64_t seed;
  double tolerance;
  bool csv;
  bool svg;
  std::string kind;
  std::ostream& summary;
  RunResult result;

  void Write(const std::string& name, const std::string& content) {
    const std::string path =
        (std::filesystem::path(out_dir) / name).string();
    emit::WriteFileAtomic(path, content);
    result.artifacts.push_back(path);
    summary << "  wrote " << path << "\n";
  }
};

std::string Num(double v) { return FormatNumber(v); }

void Validate(Context& ctx) {
  const Config& c = ctx.config;
  for (const auto& [name, def] : c.urns) config::BuildUrn(c, name);
  for (const auto& [name, def] : c.models) {
    config::BuildModel(c, name);
    if (!def.phis.empty()) config::BuildPhis(c, name);
    if (!def.peng_phi.empty()) config::BuildPengPhi(c, name);
  }
  for (const auto& s : c.scenarios) s.Validate();
  ctx.summary << "config ok: " << c.spaces.size() << " spaces, "
              << c.urns.size() << " urns, " << c.phis.size() << " phis, "
              << c.models.size() << " models, " << c.scenarios.size()
              << " scenarios\n";
}

void Envelope(Context& ctx) {
  emit::Table t{{"urn", "upper_mean", "lower_mean"}, {}};
  for (const auto& [name, def] : ctx.config.urns) {
    const Urn u = config::BuildUrn(ctx.config, name);
    const double hi = UpperEnvelope(u.credal, u.x);
    const double lo = LowerEnvelope(u.credal, u.x);
    t.rows.push_back({name, Num(hi), Num(lo)});
    ctx.summary << "urn " << name << ": E[X] in [" << Num(lo) << ", "
                << Num(hi) << "]\n";
  }
  ctx.Write("envelope.csv", emit::ToCsv(t));
}

void Choquet(Context& ctx) {
  emit::Table t{{"urn", "upper_choquet", "lower_choquet"}, {}};
  for (const auto& [name, def] : ctx.config.urns) {
    const Urn u = config::BuildUrn(ctx.config, name);
    const Capacity upper = UpperCapacity(u.credal);
    const double hi = ChoquetIntegral(upper, u.x);
    const double lo = ChoquetIntegral(upper.Conjugate(), u.x);
    t.rows.push_back({name, Num(hi), Num(lo)});
    ctx.summary << "urn " << name << ": Choquet upper " << Num(hi)
                << ", lower " << Num(lo) << "\n";
  }
  ctx.Write("choquet.csv", emit::ToCsv(t));
}

void Classify(Context& ctx) {
  emit::Table t{{"urn", "atoms", "two_alternating", "totally_monotone",
                 "totally_alternating"},
                {}};
  for (const auto& [name, def] : ctx.config.urns) {
    const Urn u = config::BuildUrn(ctx.config, name);
    const CapacityClass k = ClassifyCapacity(UpperCapacity(u.credal));
    t.rows.push_back({name, std::to_string(u.x.size()),
                      Bool(k.two_alternating), Bool(k.totally_monotone),
                      Bool(k.totally_alternating)});
    ctx.summary << "urn " << name << ": 2-alternating "
                << Bool(k.two_alternating) << ", totally alternating "
                << Bool(k.totally_alternating) << "\n";
  }
  ctx.Write("classify.csv", emit::ToCsv(t));
}

void Pprime(Context& ctx) {
  emit::Table t{{"urn", "atom", "value", "pprime", "is_prob", "in_core",
                 "survival_match"},
                {}};
  for (const auto& [name, def] : ctx.config.urns) {
    const ellsberg::SortedUrn u(config::BuildUrn(ctx.config, name));
    const ProbabilityVector p = ellsberg::BuildPprime(u);
    const auto check = ellsberg::VerifyPprime(u, p);
    for (std::size_t k = 0; k < p.size(); ++k) {
      t.rows.push_back({name, u.urn().x.space().label(k), Num(u.urn().x[k]),
                        Num(p[k]), Bool(check.is_prob), Bool(check.in_core),
                        Bool(check.survival_match)});
    }
    ctx.summary << "urn " << name << ": P' probability " << Bool(check.is_prob)
                << ", in core " << Bool(check.in_core) << ", survival match "
                << Bool(check.survival_match) << "\n";
  }
  ctx.Write("pprime.csv", emit::ToCsv(t));
}

std::string Witness(const std::string& model, const std::string& detail) {
  return "model=" + model + (detail.empty() ? "" : ";" + detail);
}

std::vector<std::string> ReportRow(const independence::Report& r,
                                   const std::string& model,
                                   const std::string& prefix = "") {
  return {std::string(independence::KindName(r.kind)), Num(r.lhs), Num(r.rhs),
          Bool(r.holds), Num(r.max_gap), Witness(model, prefix + r.witness)};
}

// Rows of the independence table for one kind; empty when no model applies.
std::vector<std::vector<std::string>> IndependenceRows(Context& ctx,
                                                       const std::string& kind) {
  const Config& c = ctx.config;
  independence::Options opts;
  opts.tolerance = ctx.tolerance;
  opts.seed = ctx.seed;
  std::vector<std::vector<std::string>> rows;
  for (const auto& [name, def] : c.models) {
    if (kind == "peng") {
      if (def.peng_phi.empty()) continue;
      const auto m = config::BuildModel(c, name);
      const auto r = independence::PengCheck(
          m, config::BuildPengPhi(c, name), ctx.tolerance);
      rows.push_back({"peng", Num(r.lhs), Num(r.rhs), Bool(r.equal),
                      Num(RelativeGap(r.lhs, r.rhs)), Witness(name, "")});
      ctx.summary << "peng " << name << ": lhs " << Num(r.lhs) << ", rhs "
                  << Num(r.rhs) << ", equal " << Bool(r.equal) << "\n";
    } else if (kind == "mm") {
      if (def.urns.size() < 2) continue;
      const auto m = config::BuildModel(c, name);
      for (std::size_t i = 0; i < m.num_urns(); ++i) {
        for (std::size_t j = i + 1; j < m.num_urns(); ++j) {
          const auto r = independence::MmIndependent(m, i, j, ctx.tolerance);
          rows.push_back(ReportRow(r, name,
                                   "urns=" + std::to_string(i + 1) + "&" +
                                       std::to_string(j + 1) + ";"));
          ctx.summary << "mm " << name << " urns " << i + 1 << "," << j + 1
                      << ": holds " << Bool(r.holds) << ", max gap "
                      << Num(r.max_gap) << "\n";
        }
      }
    } else if (kind == "exp") {
      const auto m = config::BuildModel(c, name);
      const auto r = independence::ExpIndependent(m, opts);
      rows.push_back(ReportRow(r, name));
      ctx.summary << "exp " << name << ": holds " << Bool(r.holds)
                  << ", max gap " << Num(r.max_gap) << " over " << r.checks
                  << " checks (Choquet-form gap " << Num(r.choquet_max_gap)
                  << ")\n";
    } else if (kind == "fubini") {
      if (def.phis.empty()) continue;
      const auto m = config::BuildModel(c, name);
      const auto r = independence::FubiniIndependentChain(
          m, config::BuildPhis(c, name), ctx.tolerance);
      rows.push_back(ReportRow(r, name));
      ctx.summary << "fubini " << name << ": holds " << Bool(r.holds)
                  << ", max gap " << Num(r.max_gap) << "\n";
    } else {
      throw Error(ErrorKind::kInvalidArgument,
                  "unknown independence kind '" + kind +
                      "' (expected mm, exp, fubini or peng)");
    }
  }
  return rows;
}

const std::vector<std::string> kIndependenceHeader = {
    "kind", "lhs", "rhs", "holds", "max_gap", "witness"};

void CheckIndependence(Context& ctx) {
  if (ctx.kind.empty()) {
    throw Error(ErrorKind::kInvalidArgument,
                "check-independence needs --kind {mm|exp|fubini|peng}");
  }
  emit::Table t{kIndependenceHeader, IndependenceRows(ctx, ctx.kind)};
  if (t.rows.empty()) {
    throw Error(ErrorKind::kInvalidArgument,
                "no model in the config supports --kind " + ctx.kind);
  }
  ctx.Write("independence.csv", emit::ToCsv(t));
}

bool ProductFubini(Context& ctx, bool required) {
  emit::Table t{{"model", "alpha", "lhs", "iterated", "pprime_side", "gap",
                 "upper_ok", "lower_ok"},
                {}};
  for (const auto& [name, def] : ctx.config.models) {
    if (def.joint || def.phis.empty()) continue;
    const auto m = config::BuildModel(ctx.config, name);
    const auto r = ellsberg::VerifyProductFubini(
        m, config::BuildPhis(ctx.config, name), ctx.tolerance);
    for (const auto& row : r.rows) {
      t.rows.push_back({name, Num(row.alpha), Num(row.lhs), Num(row.iterated),
                        Num(row.pprime_side), Num(row.gap),
                        Bool(row.upper_ok), Bool(row.lower_ok)});
    }
    ctx.summary << "product fubini " << name << ": holds " << Bool(r.holds)
                << ", max gap " << Num(r.max_gap)
                << (r.holds ? "" : " at " + r.witness) << "\n";
  }
  if (t.rows.empty()) {
    if (required) {
      throw Error(ErrorKind::kInvalidArgument,
                  "product-fubini needs a product-law model with phis");
    }
    return false;
  }
  ctx.Write("product_fubini.csv", emit::ToCsv(t));
  return true;
}

void WllnExact(Context& ctx) {
  if (!ctx.config.exact) {
    throw Error(ErrorKind::kInvalidArgument,
                "wlln-exact needs a wlln.exact section");
  }
  const auto& def = *ctx.config.exact;
  const Urn u = config::BuildUrn(ctx.config, def.urn);
  emit::Table t{{"urn", "n", "epsilon", "exact_lower_prob"}, {}};
  emit::Series series{"exact lower probability (" + def.urn + ")", {}};
  for (int n : def.n_list) {
    const double v = wlln::ExactLowerProb(u, n, def.epsilon);
    t.rows.push_back({def.urn, std::to_string(n), Num(def.epsilon), Num(v)});
    series.points.emplace_back(n, v);
    ctx.summary << "exact lower probability n=" << n << ": " << Num(v) << "\n";
  }
  if (ctx.csv) ctx.Write("exact.csv", emit::ToCsv(t));
  if (ctx.svg) {
    ctx.Write("exact.svg",
              emit::ToSvg({"Exact lower probability of the band", "n",
                           "lower probability", {series}}));
  }
}

void WllnMc(Context& ctx) {
  if (ctx.config.scenarios.empty()) {
    throw Error(ErrorKind::kInvalidArgument,
                "wlln-mc needs at least one wlln scenario");
  }
  emit::Table samples{{"scenario", "n", "rep", "sample_mean", "in_band"}, {}};
  emit::Table curves{{"scenario", "n", "frequency"}, {}};
  emit::Chart chart{"Frequency of sample means inside the band", "n",
                    "frequency", {}};
  for (wlln::Scenario s : ctx.config.scenarios) {
    if (ctx.seed_override) s.seed = *ctx.seed_override;
    const auto report = wlln::McSimulate(s);
    for (const auto& x : report.samples) {
      samples.rows.push_back({s.name, std::to_string(x.n),
                              std::to_string(x.rep), Num(x.sample_mean),
                              Bool(x.in_band)});
    }
    emit::Series series{
        s.name + " (" + std::string(wlln::StrategyName(s.strategy)) + ")", {}};
    for (const auto& p : wlln::FrequencyCurve(report)) {
      curves.rows.push_back({s.name, std::to_string(p.n), Num(p.frequency)});
      series.points.emplace_back(p.n, p.frequency);
      ctx.summary << "scenario " << s.name << " n=" << p.n << ": frequency "
                  << Num(p.frequency) << "\n";
    }
    chart.series.push_back(std::move(series));
  }
  if (ctx.csv) {
    ctx.Write("samples.csv", emit::ToCsv(samples));
    ctx.Write("curves.csv", emit::ToCsv(curves));
  }
  if (ctx.svg) ctx.Write("curves.svg", emit::ToSvg(chart));
}

void Report(Context& ctx) {
  Validate(ctx);
  if (!ctx.config.urns.empty()) {
    Envelope(ctx);
    Choquet(ctx);
    bool small = true;
    for (const auto& [name, def] : ctx.config.urns) {
      small = small && def.values.size() <= kMaxExhaustiveAtoms;
    }
    if (small) Classify(ctx);
    Pprime(ctx);
  }
  emit::Table t{kIndependenceHeader, {}};
  for (const char* kind : {"peng", "fubini", "exp", "mm"}) {
    for (auto& row : IndependenceRows(ctx, kind)) t.rows.push_back(row);
  }
  if (!t.rows.empty()) ctx.Write("independence.csv", emit::ToCsv(t));
  ProductFubini(ctx, false);
  if (ctx.config.exact) WllnExact(ctx);
  if (!ctx.config.scenarios.empty()) WllnMc(ctx);
}

}  // namespace

const std::vector<std::string>& CommandNames() {
  static const std::vector<std::string> names = {
      "validate",        "choquet",    "envelope", "classify",
      "pprime",          "check-independence",     "product-fubini",
      "wlln-exact",      "wlln-mc",    "report"};
  return names;
}

std::optional<std::uint64_t> ResolveSeedOverride(
    std::optional<std::uint64_t> flag, const char* env) {
  if (flag) return flag;
  if (env == nullptr || *env == '\0') return std::nullopt;
  std::uint64_t value = 0;
  const char* end = env + std::strlen(env);
  const auto [ptr, ec] = std::from_chars(env, end, value);
  if (ec != std::errc() || ptr != end) {
    throw Error(ErrorKind::kInvalidArgument,
                "CAPLAB_SEED must be an unsigned integer");
  }
  return value;
}

RunResult RunCommand(const std::string& command, const Config& config,
                     const RunOptions& options, std::ostream& summary) {
  const std::string format =
      options.format.empty() ? config.output.format : options.format;
  if (format != "csv" && format != "svg" && format != "both") {
    throw Error(ErrorKind::kInvalidArgument,
                "format must be csv, svg or both");
  }
  kernels::SetThreadCount(options.threads);
  Context ctx{config,
              options.out_dir.empty() ? config.output.dir : options.out_dir,
              options.seed,
              options.seed.value_or(config.seed.value_or(config::kDefaultSeed)),
              options.tolerance.value_or(config.output.tolerance.value_or(1e-9)),
              format != "svg",
              format != "csv",
              options.kind,
              summary,
              {}};

  static const std::map<std::string, std::function<void(Context&)>> table = {
      {"validate", Validate},
      {"choquet", Choquet},
      {"envelope", Envelope},
      {"classify", Classify},
      {"pprime", Pprime},
      {"check-independence", CheckIndependence},
      {"product-fubini", [](Context& c) { ProductFubini(c, true); }},
      {"wlln-exact", WllnExact},
      {"wlln-mc", WllnMc},
      {"report", Report},
  };
  const auto it = table.find(command);
  if (it == table.end()) {
    throw Error(ErrorKind::kInvalidArgument,
                "unknown command '" + command + "'");
  }
  it->second(ctx);
  return ctx.result;
}

}  // namespace caplab::commands
