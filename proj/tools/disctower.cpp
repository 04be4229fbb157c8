#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <iterator>
#include <sstream>

#include "disctower/cli.hpp"

namespace {

bool read_input(const std::string& path, std::string& text) {
  if (path.empty() || path == "-") {
    text.assign(std::istreambuf_iterator<char>(std::cin), {});
    return true;
  }
  std::ifstream in(path, std::ios::binary);
  if (!in) return false;
  std::ostringstream buf;
  buf << in.rdbuf();
  text = buf.str();
  return true;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Discriminant towers for germs given as truncated power series"};
  app.require_subcommand(1);

  disctower::CliFlags flags;
  int precision = 0;
  std::uint64_t seed = 0;
  double escape = 0;
  auto* precision_opt = app.add_option("--precision", precision, "Override the document precision N");
  app.add_option("--height-bound", flags.height_bound, "Height bound for the linear-change search")->capture_default_str();
  app.add_option("--tolerance", flags.tolerance, "Relative clustering tolerance")->capture_default_str();
  app.add_option("--abs-floor", flags.abs_floor, "Absolute clustering floor near zero")->capture_default_str();
  app.add_option("--grid", flags.grid, "Sample points per parameter")->capture_default_str();
  app.add_option("--radius", flags.radius, "Parameter radius of the sample grid")->capture_default_str();
  auto* escape_opt = app.add_option("--escape", escape, "Flag samples with a root of modulus above this");
  auto* seed_opt = app.add_option("--seed", seed, "Seed for the randomized change search (stress mode)");

  std::string name;
  std::string path;
  for (const auto& sub : disctower::subcommand_names()) {
    auto* cmd = app.add_subcommand(sub, sub == "verify" ? "Check a normal-system report" : "Run the '" + sub + "' directive");
    cmd->fallthrough();
    cmd->add_option("input", path, "Input file; stdin when omitted or '-'");
    cmd->callback([&name, sub] { name = sub; });
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }
  if (*precision_opt) flags.precision = precision;
  if (*seed_opt) flags.seed = seed;
  if (*escape_opt) flags.escape = escape;

  std::string text;
  if (!read_input(path, text)) {
    std::cerr << "cannot read '" << path << "'\n";
    return 2;
  }
  const auto result = disctower::run_subcommand(name, text, flags);
  if (!result.diagnostic.empty()) std::cerr << result.diagnostic << "\n";
  if (!result.report.is_null()) std::cout << disctower::dump(result.report);
  return result.exit_code;
}
