#include "cli.hpp"

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <functional>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <thread>

#include <CLI11.hpp>
#include <json.hpp>

#include "gwlp/counting.hpp"
#include "gwlp/error.hpp"
#include "gwlp/io.hpp"
#include "gwlp/removal.hpp"
#include "gwlp/version.hpp"
#include "gwlp/wstack.hpp"

namespace gwlp::cli {

namespace {

using json = nlohmann::ordered_json;
using io::Format;

struct Globals {
  std::string format = "text";
  std::string output;
  unsigned threads = std::max(1u, std::thread::hardware_concurrency());
};

std::string tuple_string(const std::vector<std::string>& items) {
  std::string out = "(";
  for (std::size_t i = 0; i < items.size(); ++i) {
    if (i) out += ", ";
    out += items[i];
  }
  return out + ")";
}

std::vector<std::size_t> distance_distribution(const Fraction& fraction) {
  std::vector<std::size_t> counts(fraction.space().factors() + 1, 0);
  for (std::size_t a = 0; a < fraction.size(); ++a) {
    for (std::size_t b = a + 1; b < fraction.size(); ++b) {
      std::size_t d = 0;
      for (std::size_t j = 0; j < fraction.space().factors(); ++j) d += fraction.run(a).codes[j] != fraction.run(b).codes[j];
      ++counts[d];
    }
  }
  return counts;
}

std::string run_check(const std::string& path, const Fraction& fraction, Format format) {
  const std::size_t t = counting::strength(fraction);
  const std::string cls = io::oa_class_string(fraction.space(), fraction.size(), t);
  const auto dist = distance_distribution(fraction);
  std::ostringstream out;
  if (format == Format::Json) {
    json j;
    j["input"] = path;
    j["n"] = fraction.size();
    j["m"] = fraction.space().factors();
    j["levels"] = std::vector<int>(fraction.space().levels().begin(), fraction.space().levels().end());
    j["distinct_runs"] = fraction.distinct().size();
    j["strength"] = t;
    j["class"] = cls;
    j["distance_distribution"] = dist;
    out << j.dump(2) << '\n';
    return out.str();
  }
  if (format == Format::Csv) {
    out << "key,value\n";
    out << "input," << path << '\n';
    out << "n," << fraction.size() << '\n';
    out << "m," << fraction.space().factors() << '\n';
    out << "distinct_runs," << fraction.distinct().size() << '\n';
    out << "strength," << t << '\n';
    out << "class,\"" << cls << "\"\n";
    for (std::size_t d = 0; d < dist.size(); ++d) out << "pairs_at_distance_" << d << ',' << dist[d] << '\n';
    return out.str();
  }
  out << cls << '\n';
  out << "runs: " << fraction.size() << " (" << fraction.distinct().size() << " distinct)\n";
  out << "levels:";
  for (int s : fraction.space().levels()) out << ' ' << s;
  out << "\nstrength: " << t << '\n';
  out << "pairwise Hamming distances:";
  for (std::size_t d = 0; d < dist.size(); ++d) {
    if (dist[d]) out << ' ' << d << ':' << dist[d];
  }
  out << '\n';
  return out.str();
}

std::string run_gwlp(const std::string& path, const Fraction& fraction, const std::string& engine, Format format) {
  std::vector<std::int64_t> num;
  std::int64_t den = 1;
  std::vector<double> approx;
  if (engine == "direct") {
    approx = counting::gwlp_direct(fraction);
  } else {
    const WStack w = engine == "twolevel" ? twolevel_wstack(fraction) : build_wstack(fraction);
    const GwlpExact g = gwlp_from_wstack(w);
    num.assign(g.numerators().begin(), g.numerators().end());
    den = g.denominator();
    approx = g.values();
  }
  std::ostringstream out;
  if (format == Format::Json) {
    json j;
    j["input"] = path;
    j["n"] = fraction.size();
    j["m"] = fraction.space().factors();
    j["engine"] = engine;
    if (!num.empty()) {
      j["gwlp_num"] = num;
      j["gwlp_den"] = den;
    }
    j["gwlp"] = approx;
    out << j.dump(2) << '\n';
    return out.str();
  }
  if (format == Format::Csv) {
    out << (num.empty() ? "j,A_j\n" : "j,numerator,denominator,A_j\n");
    for (std::size_t k = 0; k < approx.size(); ++k) {
      out << k << ',';
      if (!num.empty()) out << num[k] << ',' << den << ',' << io::format_fixed3(num[k], den) << '\n';
      else out << io::format_sig4(approx[k]) << '\n';
    }
    return out.str();
  }
  std::vector<std::string> rounded;
  for (double v : approx) rounded.push_back(io::format_sig4(std::abs(v) < 1e-12 ? 0.0 : v));
  out << tuple_string(rounded) << '\n';
  if (!num.empty()) {
    std::vector<std::string> exact;
    std::vector<std::string> raw;
    for (std::int64_t v : num) {
      exact.push_back(io::format_rational(v, den));
      raw.push_back(std::to_string(v));
    }
    out << "exact: " << tuple_string(exact) << '\n';
    out << "numerators: " << tuple_string(raw) << " / " << den << '\n';
  }
  return out.str();
}

std::string run_wmatrix(const Fraction& fraction, std::size_t order, Format format) {
  if (order > fraction.space().factors()) throw StructuralError("--order must be between 0 and m");
  const WStack w = build_wstack(fraction);
  const std::size_t n = w.size();
  std::ostringstream out;
  if (format == Format::Json) {
    json j;
    j["order"] = order;
    j["matrix"] = json::array();
    j["marginals"] = json::array();
    for (std::size_t f = 0; f < n; ++f) {
      j["matrix"].push_back(std::vector<std::int64_t>(w.row(order, f).begin(), w.row(order, f).end()));
      j["marginals"].push_back(w_marginal(w, order, f));
    }
    out << j.dump(2) << '\n';
    return out.str();
  }
  const bool csv = format == Format::Csv;
  const char* sep = csv ? "," : "\t";
  for (std::size_t g = 0; g < n; ++g) out << (g ? sep : "") << "f_" << g + 1;
  if (csv) {
    out << ",w_" << order << '\n';
  } else {
    out << "\t|\tw_{" << order << ",f}\n";
  }
  for (std::size_t f = 0; f < n; ++f) {
    for (std::size_t g = 0; g < n; ++g) out << (g ? sep : "") << w.at(order, f, g);
    out << (csv ? "," : "\t|\t") << w_marginal(w, order, f) << '\n';
  }
  return out.str();
}

std::string run_rank1(const std::string& path, const Fraction& fraction, Format format) {
  const auto ranking = rank_single_removals(build_wstack(fraction));
  const std::size_t m = fraction.space().factors();
  std::ostringstream out;
  if (format == Format::Json) {
    json j;
    j["input"] = path;
    j["p"] = 1;
    j["ranking"] = json::array();
    for (const SingleRemoval& r : ranking) {
      j["ranking"].push_back(json{{"index", r.index},
                                  {"gwlp_num", std::vector<std::int64_t>(r.gwlp.numerators().begin(), r.gwlp.numerators().end())},
                                  {"gwlp_den", r.gwlp.denominator()}});
    }
    out << j.dump(2) << '\n';
    return out.str();
  }
  const bool csv = format == Format::Csv;
  out << (csv ? "rank,point" : "rank\tpoint");
  for (std::size_t k = 1; k <= m; ++k) out << (csv ? "," : "\t") << "A_" << k;
  out << '\n';
  for (std::size_t r = 0; r < ranking.size(); ++r) {
    out << r + 1 << (csv ? "," : "\t") << "f_" << ranking[r].index;
    for (std::size_t k = 1; k <= m; ++k) {
      out << (csv ? "," : "\t") << io::format_fixed3(ranking[r].gwlp.numerator(k), ranking[r].gwlp.denominator());
    }
    out << '\n';
  }
  return out.str();
}

std::string run_greedy(const std::string& path, const Fraction& fraction, std::size_t p,
                       std::optional<std::size_t> first, Format format) {
  const auto steps = greedy_sequential(build_wstack(fraction), p, first);
  const std::size_t m = fraction.space().factors();
  std::ostringstream out;
  if (format == Format::Json) {
    json j;
    j["input"] = path;
    j["p"] = p;
    j["first"] = first ? json(*first) : json(nullptr);
    j["steps"] = json::array();
    for (const GreedyStep& s : steps) {
      j["steps"].push_back(json{{"removed", s.removed},
                                {"gwlp_num", std::vector<std::int64_t>(s.gwlp.numerators().begin(), s.gwlp.numerators().end())},
                                {"gwlp_den", s.gwlp.denominator()}});
    }
    out << j.dump(2) << '\n';
    return out.str();
  }
  const bool csv = format == Format::Csv;
  out << (csv ? "step,removed" : "step\tremoved");
  for (std::size_t k = 1; k <= m; ++k) out << (csv ? "," : "\t") << "A_" << k;
  out << '\n';
  for (std::size_t s = 0; s < steps.size(); ++s) {
    out << s + 1 << (csv ? "," : "\t") << "f_" << steps[s].removed;
    for (std::size_t k = 1; k <= m; ++k) {
      out << (csv ? "," : "\t") << io::format_fixed3(steps[s].gwlp.numerator(k), steps[s].gwlp.denominator());
    }
    out << '\n';
  }
  return out.str();
}

}  // namespace

int cli_main(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Generalized word-length patterns of orthogonal arrays and their sub-fractions", "oagwlp"};
  app.set_version_flag("--version", std::string(kVersion));
  app.require_subcommand(1);
  app.fallthrough();

  Globals globals;
  app.add_option("--format", globals.format, "Output format")->check(CLI::IsMember({"text", "csv", "json"}));
  app.add_option("-o,--output", globals.output, "Write data to this file instead of stdout");
  app.add_option("--threads", globals.threads, "Worker threads for exhaustive search")->check(CLI::PositiveNumber);

  std::string file;
  std::function<std::string(const std::string&, const Fraction&, Format)> action;

  auto* check = app.add_subcommand("check", "Strength and OA class of a design");
  check->add_option("file", file, "OA file")->required();
  check->callback([&] { action = [](const std::string& path, const Fraction& f, Format fmt) { return run_check(path, f, fmt); }; });

  std::string engine = "general";
  auto* gwlp_cmd = app.add_subcommand("gwlp", "Exact and rounded GWLP");
  gwlp_cmd->add_option("file", file, "OA file")->required();
  gwlp_cmd->add_option("--engine", engine, "general | twolevel | direct")
      ->check(CLI::IsMember({"general", "twolevel", "direct"}));
  gwlp_cmd->callback([&] {
    action = [&](const std::string& path, const Fraction& f, Format fmt) { return run_gwlp(path, f, engine, fmt); };
  });

  std::size_t order = 0;
  auto* wmatrix = app.add_subcommand("wmatrix", "W_j matrix with the w_{j,f} column");
  wmatrix->add_option("file", file, "OA file")->required();
  wmatrix->add_option("--order", order, "Order j")->required();
  wmatrix->callback([&] {
    action = [&](const std::string&, const Fraction& f, Format fmt) { return run_wmatrix(f, order, fmt); };
  });

  auto* rank1 = app.add_subcommand("rank1", "Rank all single-run removals");
  rank1->add_option("file", file, "OA file")->required();
  rank1->callback([&] { action = [](const std::string& path, const Fraction& f, Format fmt) { return run_rank1(path, f, fmt); }; });

  std::size_t p = 0;
  ExhaustiveOptions options;
  bool max_given = false;
  auto* remove = app.add_subcommand("remove", "Group all p-run removals by GWLP");
  remove->add_option("file", file, "OA file")->required();
  remove->add_option("--p", p, "Number of runs to remove")->required()->check(CLI::PositiveNumber);
  auto* max_opt = remove->add_option("--max-subsets", options.max_subsets, "Refuse above this many subsets");
  remove->add_option("--reps", options.representatives_per_group, "Representatives per group");
  remove->callback([&] {
    max_given = max_opt->count() > 0;
    action = [&](const std::string& path, const Fraction& f, Format fmt) {
      options.threads = globals.threads;
      options.force = max_given;
      return io::emit_report(io::make_report(path, f.space().factors(), exhaustive_search(build_wstack(f), p, options)), fmt);
    };
  });

  std::size_t greedy_p = 0;
  std::optional<std::size_t> first;
  auto* greedy = app.add_subcommand("greedy", "Remove runs one at a time, best single removal first");
  greedy->add_option("file", file, "OA file")->required();
  greedy->add_option("--p", greedy_p, "Number of runs to remove")->required()->check(CLI::PositiveNumber);
  greedy->add_option("--first", first, "Force the first removed run (1-based)");
  greedy->callback([&] {
    action = [&](const std::string& path, const Fraction& f, Format fmt) {
      return run_greedy(path, f, greedy_p, first, fmt);
    };
  });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    std::ostringstream sink;
    const int code = app.exit(e, e.get_exit_code() == 0 ? out : sink, err);
    if (e.get_exit_code() != 0) err << sink.str();
    return code == 0 ? kOk : kUsage;
  }

  if (!std::filesystem::is_regular_file(file)) {
    err << "error: cannot read " << file << '\n';
    return kParse;
  }
  try {
    const Fraction fraction = io::read_oa_file(file);
    const std::string data = action(file, fraction, io::parse_format(globals.format));
    if (globals.output.empty()) {
      out << data;
    } else {
      std::ofstream os(globals.output, std::ios::binary);
      if (!os) {
        err << "error: cannot write " << globals.output << '\n';
        return kUsage;
      }
      os << data;
    }
  } catch (const ParseError& e) {
    err << "parse error: " << file << ": " << e.what() << '\n';
    return kParse;
  } catch (const CapacityError& e) {
    err << "capacity: " << e.what() << '\n';
    return kCapacity;
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return kUsage;
  }
  return kOk;
}

}  // namespace gwlp::cli
