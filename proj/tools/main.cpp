// hillshare command-line tool.
#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <memory>
#include <optional>
#include <sstream>

#include "hillshare/allocator.hpp"
#include "hillshare/experiments.hpp"
#include "hillshare/mms.hpp"
#include "hillshare/shares.hpp"

using namespace hillshare;

namespace {

constexpr int kOk = 0;
constexpr int kViolation = 1;
constexpr int kUsage = 2;

// Stdout unless --out was given.
class Output {
 public:
  explicit Output(const std::string& path) {
    if (!path.empty()) {
      file_ = std::make_unique<std::ofstream>(path);
      if (!*file_) throw ValidationError("cannot write " + path);
    }
  }
  std::ostream& get() { return file_ ? *file_ : std::cout; }

 private:
  std::unique_ptr<std::ofstream> file_;
};

struct QueryFlags {
  std::int64_t n = 2;
  std::int64_t m = 0;
  bool unrestricted = false;
  std::string alpha;

  void add_to(CLI::App* cmd) {
    cmd->add_option("--n", n, "number of agents")->required();
    auto* m_opt = cmd->add_option("--m", m, "number of objects");
    cmd->add_flag("--unrestricted", unrestricted, "any number of objects (the default without --m)")
        ->excludes(m_opt);
    cmd->add_option("--alpha", alpha, "largest disutility, decimal or p/q")->required();
  }

  ShareQuery query(const CLI::App* cmd) const {
    ShareQuery q{n, std::nullopt, Rational::parse(alpha)};
    if (cmd->count("--m")) q.m = m;
    return q;
  }
};

std::string yes_no(bool b) { return b ? "true" : "false"; }

std::string join_indices(const std::vector<std::size_t>& bundle) {
  std::string out;
  for (std::size_t e : bundle) out += (out.empty() ? "" : " ") + std::to_string(e + 1);
  return out;
}

std::vector<std::size_t> parse_indices(const std::string& field, std::size_t m, std::size_t line) {
  std::vector<std::size_t> out;
  std::istringstream in(field);
  std::string token;
  while (in >> token) {
    std::size_t idx = 0;
    try {
      idx = std::stoul(token);
    } catch (const std::exception&) {
      throw ValidationError("line " + std::to_string(line) + ": bad object index '" + token + "'");
    }
    if (idx < 1 || idx > m) throw ValidationError("line " + std::to_string(line) + ": object " + token + " out of range");
    out.push_back(idx - 1);
  }
  return out;
}

// A one-row file with --agents k stands for k identical agents.
Instance load_instance(const std::string& path, std::size_t agents) {
  RawMatrix raw = read_instance_csv_file(path);
  if (raw.empty()) throw ValidationError(path + ": no agent rows");
  if (agents > 0) {
    if (raw.size() != 1) throw ValidationError("--agents needs a single-row instance");
    raw.assign(agents, raw.front());
  }
  return normalize(raw);
}

void print_report(std::ostream& out, const Instance& inst, const Allocation& alloc,
                  const std::vector<AgentReport>& agents) {
  bool all = true;
  for (const auto& a : agents) all = all && a.satisfied;
  out << "# n=" << inst.n() << " m=" << inst.m() << " all_satisfied=" << yes_no(all) << "\n";
  out << "agent,bundle,disutility,alpha,guarantee,satisfied\n";
  for (std::size_t i = 0; i < inst.n(); ++i) {
    const auto& a = agents[i];
    out << (i + 1) << "," << join_indices(alloc.bundles[i]) << "," << a.disutility << "," << a.alpha << ","
        << a.guarantee << "," << yes_no(a.satisfied) << "\n";
  }
}

void print_trace(std::ostream& out, const KnifeTrace& trace) {
  for (std::size_t l = 0; l < trace.levels.size(); ++l) {
    const auto& lv = trace.levels[l];
    out << "# level " << (l + 1) << ": agents=" << lv.agents.size() << " served=" << (lv.chosen + 1)
        << " positions=" << (lv.first_position + 1) << ".." << (lv.first_position + lv.prefix_length - (lv.exhausted ? 0 : 1))
        << " value=" << lv.served_value << (lv.exhausted ? " (remainder)" : "") << "\n";
  }
}

Allocation read_report(const std::string& path, std::size_t n, std::size_t m) {
  std::ifstream in(path);
  if (!in) throw ValidationError("cannot open " + path);
  Allocation alloc;
  alloc.bundles.assign(n, {});
  std::vector<char> seen(n, 0);
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty() || line.front() == '#' || line.rfind("agent", 0) == 0) continue;
    std::istringstream fields(line);
    std::string agent_field, bundle_field;
    std::getline(fields, agent_field, ',');
    std::getline(fields, bundle_field, ',');
    std::size_t agent = 0;
    try {
      agent = std::stoul(agent_field);
    } catch (const std::exception&) {
      throw ValidationError("line " + std::to_string(line_no) + ": bad agent '" + agent_field + "'");
    }
    if (agent < 1 || agent > n) throw ValidationError("line " + std::to_string(line_no) + ": agent out of range");
    if (seen[agent - 1]) throw ValidationError("line " + std::to_string(line_no) + ": agent listed twice");
    seen[agent - 1] = 1;
    alloc.bundles[agent - 1] = parse_indices(bundle_field, m, line_no);
  }
  validate_allocation(alloc, n, m);
  return alloc;
}

std::vector<std::int64_t> parse_list(const std::string& text) {
  std::vector<std::int64_t> out;
  std::istringstream in(text);
  std::string token;
  while (std::getline(in, token, ',')) {
    try {
      out.push_back(std::stoll(token));
    } catch (const std::exception&) {
      throw ValidationError("bad list entry '" + token + "'");
    }
  }
  return out;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Hill's share for indivisible bads: shares, witnesses, MinMaxShare, allocation"};
  app.require_subcommand(1);

  // share
  auto* share = app.add_subcommand("share", "evaluate a share formula");
  QueryFlags share_q;
  share_q.add_to(share);
  std::string share_kind = "upper";
  share->add_option("--kind", share_kind, "upper | lower | guarantee")
      ->check(CLI::IsMember({"upper", "lower", "guarantee"}));

  // witness
  auto* witness = app.add_subcommand("witness", "emit an instance attaining a bound");
  QueryFlags witness_q;
  witness_q.add_to(witness);
  std::string witness_kind = "upper";
  std::string witness_out;
  witness->add_option("--kind", witness_kind, "upper | lower")->check(CLI::IsMember({"upper", "lower"}));
  witness->add_option("--out", witness_out, "output path");

  // mms
  auto* mms = app.add_subcommand("mms", "exact MinMaxShare of one agent's row");
  std::string mms_instance;
  std::int64_t mms_n = 0;
  std::size_t mms_agent = 1;
  std::uint64_t max_nodes = SolverLimits{}.max_nodes;
  mms->add_option("--instance", mms_instance, "instance CSV")->required();
  mms->add_option("--n", mms_n, "number of bundles (default: number of rows)");
  mms->add_option("--agent", mms_agent, "1-based row to evaluate")->check(CLI::PositiveNumber);
  mms->add_option("--max-nodes", max_nodes, "search node budget");

  // allocate
  auto* alloc_cmd = app.add_subcommand("allocate", "allocate so every agent meets V_n(alpha_i)");
  std::string alloc_instance, alloc_out;
  std::size_t alloc_agents = 0;
  bool two_agent = false;
  bool show_trace = false;
  alloc_cmd->add_option("--instance", alloc_instance, "instance CSV")->required();
  alloc_cmd->add_option("--agents", alloc_agents, "replicate a single-row instance to this many agents");
  alloc_cmd->add_flag("--two-agent-tight", two_agent, "divide-and-choose by the exact MinMax partition (n = 2)");
  alloc_cmd->add_flag("--trace", show_trace, "print the moving-knife levels as comments");
  alloc_cmd->add_option("--out", alloc_out, "output path");

  // verify
  auto* verify = app.add_subcommand("verify", "check an allocation report against V_n(alpha_i)");
  std::string verify_instance, verify_allocation;
  std::size_t verify_agents = 0;
  verify->add_option("--instance", verify_instance, "instance CSV")->required();
  verify->add_option("--allocation", verify_allocation, "report written by allocate")->required();
  verify->add_option("--agents", verify_agents, "replicate a single-row instance to this many agents");

  // experiment
  auto* experiment = app.add_subcommand("experiment", "numerical studies");
  experiment->require_subcommand(1);
  std::uint64_t seed = 0;
  std::string exp_out;

  auto* synthetic = experiment->add_subcommand("synthetic", "ratio histogram on random segment instances");
  std::int64_t syn_n = 2;
  std::string syn_m = "8,9,10";
  std::int64_t syn_count = 100;
  std::string syn_arith = "float";
  std::string syn_records;
  synthetic->add_option("--n", syn_n, "number of agents")->required();
  synthetic->add_option("--m", syn_m, "comma-separated object counts");
  synthetic->add_option("--count", syn_count, "instances per object count");
  synthetic->add_option("--arithmetic", syn_arith, "exact | float")->check(CLI::IsMember({"exact", "float"}));
  synthetic->add_option("--records", syn_records, "also write per-instance records here");

  auto* curve = experiment->add_subcommand("curve", "share curves over an alpha grid");
  QueryFlags curve_q;
  std::int64_t grid_points = 1000;
  curve->add_option("--n", curve_q.n, "number of agents")->required();
  auto* curve_m = curve->add_option("--m", curve_q.m, "number of objects");
  curve->add_flag("--unrestricted", curve_q.unrestricted, "any number of objects")->excludes(curve_m);
  curve->add_option("--points", grid_points, "grid alpha = i/points, i = 1..points")->check(CLI::PositiveNumber);

  auto* csv = experiment->add_subcommand("csv", "ratios for the rows of a valuation CSV");
  std::string csv_input;
  std::int64_t csv_n = 2;
  csv->add_option("--input", csv_input, "valuation CSV")->required();
  csv->add_option("--n", csv_n, "number of agents")->required();

  for (auto* sub : {synthetic, curve, csv}) {
    sub->add_option("--seed", seed, "RNG seed, recorded in the output header")->required();
    sub->add_option("--out", exp_out, "output path");
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kUsage;
  }

  try {
    if (*share) {
      const ShareQuery q = share_q.query(share);
      Rational value;
      if (share_kind == "upper") {
        value = hill_share(q);
      } else if (share_kind == "lower") {
        value = mms_lower_bound(q);
      } else {
        if (q.n < 1) throw DomainError("n must be positive");
        value = guarantee(q.n, q.alpha);
      }
      std::cout << fraction_and_decimal(value) << "\n";
      return kOk;
    }

    if (*witness) {
      const ShareQuery q = witness_q.query(witness);
      const WitnessInstance w = witness_kind == "upper" ? witness_upper(q) : witness_lower(q);
      Output out(witness_out);
      out.get() << "# claimed_mms=" << fraction_and_decimal(w.claimed_mms) << "\n";
      out.get() << "# construction=" << w.construction << " n=" << q.n << "\n";
      write_instance_csv(out.get(), w.instance.rows());
      return kOk;
    }

    if (*mms) {
      const Instance inst = normalize(read_instance_csv_file(mms_instance));
      if (mms_agent > inst.n()) throw ValidationError("--agent exceeds the number of rows");
      const std::size_t n = mms_n > 0 ? static_cast<std::size_t>(mms_n) : inst.n();
      SolverLimits limits;
      limits.max_nodes = max_nodes;
      const MmsResult r = exact_mms_partition(inst.row(mms_agent - 1), n, limits);
      std::cout << fraction_and_decimal(r.value) << "\n";
      for (std::size_t b = 0; b < r.allocation.size(); ++b) {
        std::cout << "# bundle " << (b + 1) << ": " << join_indices(r.allocation.bundles[b]) << "\n";
      }
      return kOk;
    }

    if (*alloc_cmd) {
      const Instance inst = load_instance(alloc_instance, alloc_agents);
      Output out(alloc_out);
      if (two_agent) {
        const Allocation a = allocate_two_agents_tight(inst);
        print_report(out.get(), inst, a, evaluate_allocation(inst, a));
        return kOk;
      }
      const AllocationReport report = allocate(inst);
      if (show_trace) print_trace(out.get(), report.trace);
      print_report(out.get(), inst, report.allocation, report.agents);
      return kOk;
    }

    if (*verify) {
      const Instance inst = load_instance(verify_instance, verify_agents);
      const Allocation alloc = read_report(verify_allocation, inst.n(), inst.m());
      const auto agents = evaluate_allocation(inst, alloc);
      bool ok = true;
      std::cout << "agent,disutility,guarantee,satisfied,mms_within_guarantee\n";
      for (std::size_t i = 0; i < inst.n(); ++i) {
        std::string mms_check = "n/a";
        try {
          mms_check = yes_no(fits_under(inst.row(i), inst.n(), agents[i].guarantee));
        } catch (const ResourceLimitError&) {
        }
        ok = ok && agents[i].satisfied;
        std::cout << (i + 1) << "," << agents[i].disutility << "," << agents[i].guarantee << ","
                  << yes_no(agents[i].satisfied) << "," << mms_check << "\n";
      }
      if (!ok) {
        std::cerr << "guarantee violated\n";
        return kViolation;
      }
      return kOk;
    }

    if (*synthetic) {
      ExperimentConfig cfg;
      cfg.n = syn_n;
      cfg.m_values = parse_list(syn_m);
      cfg.instances_per_setting = syn_count;
      cfg.seed = seed;
      cfg.arithmetic = syn_arith == "exact" ? Arithmetic::Exact : Arithmetic::Float;
      const RatioHistogram hist = run_histogram(cfg);
      Output out(exp_out);
      write_histogram_csv(out.get(), cfg, hist);
      if (!syn_records.empty()) {
        Output rec(syn_records);
        write_records_csv(rec.get(), cfg.header(), hist.records);
      }
      return kOk;
    }

    if (*curve) {
      std::optional<std::int64_t> m;
      if (curve->count("--m")) m = curve_q.m;
      std::vector<Rational> grid;
      for (std::int64_t i = 1; i < grid_points; ++i) grid.emplace_back(i, grid_points);
      std::vector<std::string> warnings;
      const auto rows = curve_samples(curve_q.n, grid, m, &warnings);
      for (const auto& w : warnings) std::cerr << "warning: " << w << "\n";
      Output out(exp_out);
      const std::string header = "# curve n=" + std::to_string(curve_q.n) +
                                 " m=" + (m ? std::to_string(*m) : std::string("unrestricted")) +
                                 " points=" + std::to_string(grid_points) + " seed=" + std::to_string(seed);
      write_curve_csv(out.get(), header, rows);
      return kOk;
    }

    if (*csv) {
      std::vector<std::string> warnings;
      const auto rows = ingest_csv(csv_input, &warnings);
      for (const auto& w : warnings) std::cerr << "warning: " << w << "\n";
      std::vector<RatioRecord> records;
      for (const auto& v : rows) records.push_back(instance_ratio(v, csv_n));
      Output out(exp_out);
      write_records_csv(out.get(), "# csv input=" + csv_input + " n=" + std::to_string(csv_n) +
                                       " seed=" + std::to_string(seed),
                        records);
      return kOk;
    }
  } catch (const ResourceLimitError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsage;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsage;
  } catch (const std::domain_error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsage;
  }
  return kUsage;
}
