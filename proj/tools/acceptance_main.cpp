#include "acceptance.hpp"

#include "CLI11.hpp"

#include <iostream>

int main(int argc, char **argv) {
  CLI::App app{"Acceptance criteria, one line each; exit status 0 iff all pass"};
  toricsr::acceptance::Options opts;
  opts.golden_dir = TORICSR_GOLDEN_DIR;
  std::vector<std::string> only;
  app.add_option("--golden-dir", opts.golden_dir, "directory of golden documents");
  app.add_option("--only", only, "run only these criteria")->check(
      CLI::IsMember(toricsr::acceptance::criterion_names()));
  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError &e) {
    return app.exit(e) == 0 ? 0 : 2;
  }
  opts.only.insert(only.begin(), only.end());
  bool all = true;
  for (const auto &r : toricsr::acceptance::run(opts)) {
    std::cout << toricsr::acceptance::format(r) << std::endl;
    all = all && r.pass;
  }
  return all ? 0 : 1;
}
