#include <fstream>
#include <iostream>

#include <CLI11.hpp>

#include "quadmod/quadmod.hpp"

namespace {

struct Invocation {
  std::string verb;
  std::string bundle_path;
  std::string out_path;
  std::string format = "text";
  quadmod::CommandOptions opts;
  std::size_t max_cosets = 0;
};

void add_common(CLI::App* sub, Invocation& inv) {
  sub->add_option("bundle", inv.bundle_path, "input bundle file")->required();
  sub->add_option("--out", inv.out_path, "write the result bundle here");
  sub->add_option("--format", inv.format, "report format")
      ->check(CLI::IsMember({"text", "machine"}));
  sub->add_option("--object", inv.opts.object, "object to operate on");
  sub->add_option("--hom", inv.opts.hom, "homomorphism (sigma, f, phi)");
  sub->add_option("--source", inv.opts.source, "source object");
  sub->add_option("--target", inv.opts.target, "target object");
  sub->add_option("--morphism", inv.opts.morphism, "quadratic morphism");
  sub->add_option("--max-order", inv.opts.max_order, "order bound for enumerations")
      ->check(CLI::PositiveNumber);
  sub->add_option("--max-cosets", inv.max_cosets, "coset enumeration cap")
      ->check(CLI::PositiveNumber);
  sub->add_option("--samples", inv.opts.samples, "samples per sampled law");
  sub->add_option("--seed", inv.opts.seed, "seed for sampled checks");
}

int emit(const Invocation& inv, const quadmod::CommandOutcome& out) {
  std::string written;
  if (out.bundle && !inv.out_path.empty()) {
    std::ofstream f(inv.out_path, std::ios::binary);
    if (!f) {
      std::cerr << "cannot write " << inv.out_path << "\n";
      return 2;
    }
    f << *out.bundle;
    written = inv.out_path;
  }
  std::cout << quadmod::render_outcome(out, inv.format == "machine", written);
  return out.exit_code;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"quadmod: nil(2)-modules, quadratic modules, pullbacks and induced modules"};
  app.require_subcommand(1);
  Invocation inv;
  for (const auto& verb : quadmod::command_verbs()) {
    auto* sub = app.add_subcommand(verb, "run " + verb);
    add_common(sub, inv);
    if (verb == "induce-nil2")
      sub->add_flag("--presentation", inv.opts.presentation, "dump and enumerate F(M x Q)/S");
    if (verb == "induce-quad")
      sub->add_flag("--close-omega", inv.opts.close_omega,
                    "also factor out omega of the kernel of C(x)C -> C'(x)C'");
    sub->callback([&inv, verb] { inv.verb = verb; });
  }
  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }
  if (inv.max_cosets) inv.opts.max_cosets = inv.max_cosets;

  quadmod::CommandOutcome out;
  try {
    const auto bundle = quadmod::parse_bundle_file(inv.bundle_path);
    out = quadmod::run_command(inv.verb, inv.opts, bundle);
  } catch (const quadmod::Error& e) {
    out.exit_code = quadmod::exit_code_for(e.kind());
    out.report["status"] = "error";
    out.report["error"] = quadmod::error_json(e);
    out.report["verb"] = inv.verb;
  }
  return emit(inv, out);
}
