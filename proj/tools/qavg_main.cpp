#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "qavg/commands.hpp"
#include "qavg/errors.hpp"

namespace {

template <class T>
std::vector<T> parse_list(const std::string& text, const char* flag) {
  std::vector<T> out;
  std::stringstream in(text);
  std::string item;
  while (std::getline(in, item, ',')) {
    std::size_t used = 0;
    T value{};
    try {
      if constexpr (std::is_same_v<T, int>) {
        value = std::stoi(item, &used);
      } else {
        value = std::stod(item, &used);
      }
    } catch (const std::exception&) {
      used = 0;
    }
    while (used < item.size() && item[used] == ' ') ++used;
    if (item.empty() || used != item.size()) {
      throw qavg::ParseError(std::string(flag) + ": cannot parse '" + item + "'");
    }
    out.push_back(value);
  }
  if (out.empty()) throw qavg::ParseError(std::string(flag) + ": empty list");
  return out;
}

void emit(const qavg::Report& report, const std::string& format, const std::string& out) {
  const std::string text = qavg::render(report, qavg::parse_format(format));
  if (out.empty() || out == "-") {
    std::cout << text;
    return;
  }
  std::ofstream f(out, std::ios::binary);
  if (!f) throw qavg::InputError("cannot open '" + out + "' for writing");
  f << text;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Operator averaging expansions for perturbed quantum Hamiltonians"};
  app.require_subcommand(1);

  std::string out, format = "table";
  auto common = [&](CLI::App* cmd) {
    cmd->add_option("--out", out, "Write the report here instead of standard output");
    cmd->add_option("--format", format, "json, csv or table")->check(CLI::IsMember({"json", "csv", "table"}));
  };

  std::string epsilon_text, orders_text;

  qavg::ExampleOptions ex;
  std::size_t level_max = 0, truncation = 0;
  auto* example = app.add_subcommand("example", "Run a built-in model");
  example->add_option("name", ex.name, "anharmonic or henon-heiles")->required();
  example->add_option("--order", ex.order, "Expansion order N");
  example->add_option("--epsilon", epsilon_text, "Comma-separated perturbation strengths");
  auto* jmax = example->add_option("--jmax,--kmax", level_max, "Highest level reported");
  auto* trunc = example->add_option("--nmax,--cutoff", truncation, "Basis truncation");
  example->add_option("--alpha", ex.alpha, "Henon-Heiles alpha");
  example->add_option("--beta", ex.beta, "Henon-Heiles beta");
  example->add_flag("--exact", ex.with_exact, "Pair each state with exact diagonalization");
  common(example);

  qavg::ExpandCommandOptions xp;
  auto* expand = app.add_subcommand("expand", "Expand a model read from a JSON file");
  expand->add_option("model", xp.model_path, "Model file")->required();
  expand->add_option("--order", xp.order, "Expansion order N (at most 12)");
  expand->add_option("--epsilon", epsilon_text, "Comma-separated perturbation strengths");
  expand->add_flag("--exact", xp.with_exact, "Pair each state with exact diagonalization");
  common(expand);

  qavg::VerifyOptions vf;
  auto* verify = app.add_subcommand("verify", "Run the invariant suite on seeded random models");
  verify->add_option("--seed", vf.seed, "Generator seed");
  verify->add_option("--dim", vf.dim, "Hilbert space dimension");
  verify->add_option("--levels", vf.levels, "Number of distinct unperturbed levels");
  verify->add_option("--order", vf.order, "Expansion order N");
  verify->add_option("--trials", vf.trials, "Number of random models");
  common(verify);

  qavg::CompareOptions cp;
  auto* compare = app.add_subcommand("compare", "Fit error slopes against exact diagonalization");
  compare->add_option("model", cp.model, "Model file, anharmonic or henon-heiles")->required();
  compare->add_option("--orders", orders_text, "Comma-separated orders");
  compare->add_option("--epsilons,--epsilon", epsilon_text, "Comma-separated grid (at least 3 points)");
  compare->add_option("--jmax,--kmax", cp.level_max, "Highest level entering the fits");
  auto* ctrunc = compare->add_option("--nmax,--cutoff", truncation, "Basis truncation for built-in models");
  compare->add_option("--alpha", cp.alpha, "Henon-Heiles alpha");
  compare->add_option("--beta", cp.beta, "Henon-Heiles beta");
  common(compare);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    qavg::Report report;
    if (example->parsed()) {
      if (!epsilon_text.empty()) ex.epsilons = parse_list<double>(epsilon_text, "--epsilon");
      if (jmax->count()) ex.level_max = level_max;
      if (trunc->count()) ex.truncation = truncation;
      report = qavg::run_example(ex);
    } else if (expand->parsed()) {
      if (!epsilon_text.empty()) xp.epsilons = parse_list<double>(epsilon_text, "--epsilon");
      report = qavg::run_expand(xp);
    } else if (verify->parsed()) {
      report = qavg::run_verify(vf);
    } else {
      if (!epsilon_text.empty()) cp.epsilons = parse_list<double>(epsilon_text, "--epsilons");
      if (!orders_text.empty()) cp.orders = parse_list<int>(orders_text, "--orders");
      if (ctrunc->count()) cp.truncation = truncation;
      report = qavg::run_compare(cp);
    }
    emit(report, format, out);
    return report.passed() ? 0 : 1;
  } catch (const qavg::InputError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  } catch (const qavg::Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
}
