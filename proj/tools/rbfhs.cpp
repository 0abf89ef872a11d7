// rbfhs: command-line front end (diag, sequential, bench, check, gen).

#include <iostream>

#include "CLI11.hpp"
#include "rbfhs/cli.hpp"

int main(int argc, char** argv) {
  using namespace rbfhs::cli;

  CLI::App app{"Leading minimal diagnoses by recursive best-first hitting-set search"};
  app.require_subcommand(1);

  DiagOptions diag;
  auto* d = app.add_subcommand("diag", "compute the ld most probable minimal diagnoses");
  d->add_option("--dpi", diag.dpi, "DPI file")->required()->check(CLI::ExistingFile);
  d->add_option("--algo", diag.algo, "rbfhs or hstree")->check(CLI::IsMember({"rbfhs", "hstree"}));
  d->add_option("--mode", diag.mode, "card or prob")->check(CLI::IsMember({"card", "prob"}));
  d->add_option("--ld", diag.ld, "number of leading diagnoses")->check(CLI::PositiveNumber);
  d->add_option("--trace", diag.trace, "write search events to FILE");
  d->add_option("--csv", diag.csv, "write a stats row to FILE");

  SequentialOptions seq;
  auto* s = app.add_subcommand("sequential", "run sequential diagnosis sessions");
  s->add_option("--dpi", seq.dpi, "DPI file")->required()->check(CLI::ExistingFile);
  s->add_option("--algo", seq.algo, "rbfhs or hstree")->check(CLI::IsMember({"rbfhs", "hstree"}));
  s->add_option("--mode", seq.mode, "card or prob")->check(CLI::IsMember({"card", "prob"}));
  s->add_option("--ld", seq.ld, "diagnoses per search (>= 2)")->check(CLI::Range(2, 1 << 30));
  s->add_option("--actual", seq.actual, "comma-separated actual diagnosis");
  s->add_option("--sessions", seq.sessions, "number of sessions")->check(CLI::PositiveNumber);
  s->add_option("--seed", seq.seed, "sampling seed");
  s->add_option("--oracle", seq.oracle, "simulated or interactive")
      ->check(CLI::IsMember({"simulated", "interactive"}));
  s->add_option("--trace", seq.trace, "write JSON-line iteration records to FILE");
  s->add_option("--csv", seq.csv, "write one stats row per session to FILE");

  BenchOptions bench;
  auto* b = app.add_subcommand("bench", "compare rbfhs and hstree over a fixture directory");
  b->add_option("--dir", bench.dir, "directory of .dpi files")->required()->check(CLI::ExistingDirectory);
  b->add_option("--ld", bench.ld, "comma-separated ld values");
  b->add_option("--sessions", bench.sessions, "sessions per instance")->check(CLI::PositiveNumber);
  b->add_option("--seed", bench.seed, "sampling seed");
  b->add_option("--mode", bench.mode, "card or prob")->check(CLI::IsMember({"card", "prob"}));
  b->add_option("--out", bench.out, "CSV output file (default stdout)");
  b->add_option("--plot", bench.plot, "write per-(dpi, ld) factors to FILE");

  CheckOptions check;
  auto* c = app.add_subcommand("check", "cross-check the searches against brute force");
  c->add_option("--dpi", check.dpi, "DPI file")->required()->check(CLI::ExistingFile);
  c->add_option("--mode", check.mode, "card or prob")->check(CLI::IsMember({"card", "prob"}));

  GenOptions gen;
  auto* g = app.add_subcommand("gen", "write random abstract instances");
  g->add_option("--out", gen.out, "output directory")->required();
  g->add_option("--count", gen.count, "number of instances");
  g->add_option("--components", gen.components, "components per instance")->check(CLI::PositiveNumber);
  g->add_option("--conflicts", gen.conflicts, "conflicts drawn per instance");
  g->add_option("--max-size", gen.max_size, "largest conflict")->check(CLI::PositiveNumber);
  g->add_option("--min-size", gen.min_size, "smallest conflict")->check(CLI::PositiveNumber);
  g->add_option("--seed", gen.seed, "first seed");
  g->add_option("--prefix", gen.prefix, "file name prefix");

  CLI11_PARSE(app, argc, argv);

  if (d->parsed()) return cmd_diag(diag, std::cout, std::cerr);
  if (s->parsed()) return cmd_sequential(seq, std::cin, std::cout, std::cerr);
  if (b->parsed()) return cmd_bench(bench, std::cout, std::cerr);
  if (c->parsed()) return cmd_check(check, std::cout, std::cerr);
  return cmd_gen(gen, std::cout, std::cerr);
}
