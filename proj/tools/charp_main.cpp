#include <algorithm>
#include <atomic>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <string>
#include <thread>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "charp/charp.h"

#ifndef CHARP_CORPUS_DIR
#define CHARP_CORPUS_DIR "corpus"
#endif

using nlohmann::json;

namespace {

int exit_code(int status) {
  switch (status) {
    case CHARP_OK:
      return 0;
    case CHARP_E_THEOREM:
      return 2;
    case CHARP_E_BUDGET:
    case CHARP_E_SIZE_GUARD:
      return 3;
    default:
      return 1;
  }
}

struct Args {
  std::string ring;
  std::string e;
  int i = -1;
  int gamma = -1;
  std::vector<std::string> primes;
  std::string module;
  std::string c;
  int emax = -1;
  std::string csv;
  std::string out;
};

json options(const Args& a) {
  json o = json::object();
  if (!a.e.empty()) o["e"] = a.e;
  if (a.i >= 0) o["i"] = a.i;
  if (a.gamma >= 0) o["gamma"] = a.gamma;
  if (!a.primes.empty()) o["primes"] = a.primes;
  if (!a.module.empty()) o["module"] = a.module;
  if (!a.c.empty()) o["c"] = a.c;
  if (a.emax >= 0) o["emax"] = a.emax;
  return o;
}

bool write_file(const std::string& path, const std::string& text) {
  std::ofstream f(path);
  if (!f) {
    std::cerr << "charp: cannot write " << path << "\n";
    return false;
  }
  f << text;
  return true;
}

int run_one(const std::string& command, const Args& a) {
  charp_ring* ring = nullptr;
  int st = charp_ring_load(a.ring.c_str(), &ring);
  if (st != CHARP_OK) {
    std::cerr << "charp: " << charp_last_error() << "\n";
    return exit_code(st);
  }
  char* report = nullptr;
  st = charp_run(ring, command.c_str(), options(a).dump().c_str(), &report);
  if (st != CHARP_OK) std::cerr << "charp: " << charp_last_error() << "\n";
  if (report) {
    if (a.out.empty())
      std::cout << report << "\n";
    else if (!write_file(a.out, std::string(report) + "\n"))
      st = CHARP_E_INPUT;
    if (!a.csv.empty()) {
      char* csv = nullptr;
      int cs = charp_report_csv(report, &csv);
      if (cs == CHARP_OK) {
        if (!write_file(a.csv, csv)) st = CHARP_E_INPUT;
      } else {
        std::cerr << "charp: " << charp_last_error() << "\n";
        if (st == CHARP_OK) st = cs;
      }
      charp_string_free(csv);
    }
  }
  charp_string_free(report);
  charp_ring_free(ring);
  return exit_code(st);
}

struct CorpusResult {
  std::string file;
  int status = 0;
  json summary;
};

int run_corpus(const std::string& dir, const Args& a, int jobs) {
  std::vector<std::string> files;
  std::error_code ec;
  for (const auto& entry : std::filesystem::directory_iterator(dir, ec))
    if (entry.path().extension() == ".ring") files.push_back(entry.path().string());
  if (ec) {
    std::cerr << "charp: cannot read " << dir << "\n";
    return 1;
  }
  std::sort(files.begin(), files.end());

  std::vector<CorpusResult> results(files.size());
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t k; (k = next++) < files.size();) {
      CorpusResult& r = results[k];
      r.file = std::filesystem::path(files[k]).filename().string();
      charp_ring* ring = nullptr;
      r.status = charp_ring_load(files[k].c_str(), &ring);
      if (r.status != CHARP_OK) {
        r.summary = {{"file", r.file}, {"status", r.status}, {"error", charp_last_error()}};
        continue;
      }
      char* report = nullptr;
      json opts = json::object();
      if (a.emax >= 0) opts["emax"] = a.emax;
      r.status = charp_run(ring, "check-all", opts.dump().c_str(), &report);
      r.summary = {{"file", r.file}, {"ring", charp_ring_name(ring)}, {"status", r.status}};
      if (report) {
        json rep = json::parse(report);
        std::size_t failed = 0;
        for (const auto& c : rep["checks"]) failed += c["passed"].get<bool>() ? 0 : 1;
        r.summary["checks"] = rep["checks"].size();
        r.summary["failed"] = failed;
        r.summary["passed"] = rep["passed"];
      } else {
        r.summary["error"] = charp_last_error();
      }
      charp_string_free(report);
      charp_ring_free(ring);
    }
  };
  std::vector<std::thread> pool;
  for (int t = 1; t < std::min<int>(jobs, static_cast<int>(files.size())); ++t) pool.emplace_back(worker);
  worker();
  for (auto& t : pool) t.join();

  json out{{"schema", "charp-report/1"}, {"command", "corpus"}, {"rings", json::array()}};
  int worst = 0;
  bool all = true;
  for (const auto& r : results) {
    out["rings"].push_back(r.summary);
    all = all && r.status == CHARP_OK;
    int code = exit_code(r.status);
    if (code == 2 || (worst != 2 && code > worst)) worst = code;
  }
  out["passed"] = all;
  if (a.out.empty())
    std::cout << out.dump(2) << "\n";
  else if (!write_file(a.out, out.dump(2) + "\n"))
    return 1;
  return worst;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"charp: Frobenius invariants of graded rings in characteristic p"};
  app.require_subcommand(1);
  app.fallthrough();
  std::uint64_t budget = 0;
  int jobs = 1;
  app.add_option("--budget", budget, "Groebner pair budget (CHARP_BUDGET when absent)");
  app.add_option("--jobs", jobs, "worker threads for corpus sweeps")->check(CLI::PositiveNumber);

  Args a;
  std::string corpus_dir = CHARP_CORPUS_DIR;
  struct Spec {
    const char* name;
    const char* help;
    bool e, i, gamma, primes, module, c;
  };
  const std::vector<Spec> specs{
      {"hk", "Hilbert-Kunz function lambda(R/m^[q])", true, false, false, false, false, false},
      {"betti", "Frobenius Betti and Euler sequences", true, true, true, true, true, false},
      {"chi", "local-global Euler characteristic comparison", true, true, false, true, true, false},
      {"split", "splitting numbers, splitting rate and ratio", true, false, false, true, true, false},
      {"splitprime", "splitting prime at m", false, false, false, false, false, false},
      {"fpure", "Fedder's criterion at m", false, false, false, false, false, false},
      {"sfr", "strong F-regularity certificate", false, false, false, false, false, true},
      {"stratify", "strata of constant splitting rate", true, false, false, true, true, false},
      {"check-all", "full theorem suite on one ring", false, false, false, false, false, false},
  };
  std::vector<std::pair<std::string, CLI::App*>> subs;
  for (const auto& s : specs) {
    CLI::App* sub = app.add_subcommand(s.name, s.help);
    sub->add_option("ring", a.ring, "ring file")->required()->check(CLI::ExistingFile);
    if (s.e) sub->add_option("--e", a.e, "exponent range, e.g. 1..3");
    if (s.i) sub->add_option("--i", a.i, "homological index")->check(CLI::NonNegativeNumber);
    if (s.gamma) sub->add_option("--gamma", a.gamma, "normalization exponent")->check(CLI::NonNegativeNumber);
    if (s.primes) sub->add_option("--primes", a.primes, "prime names or generators, ';'-separated")->delimiter(';');
    if (s.module) sub->add_option("--module", a.module, "module name from the ring file");
    if (s.c) sub->add_option("--c", a.c, "test element name or polynomial");
    sub->add_option("--emax", a.emax, "largest Frobenius exponent")->check(CLI::PositiveNumber);
    sub->add_option("--csv", a.csv, "also write the report table as CSV");
    sub->add_option("--out", a.out, "write the JSON report here instead of stdout");
    subs.emplace_back(s.name, sub);
  }
  CLI::App* corpus = app.add_subcommand("corpus", "run check-all over every ring file of a directory");
  corpus->add_option("dir", corpus_dir, "corpus directory")->check(CLI::ExistingDirectory);
  corpus->add_option("--emax", a.emax, "largest Frobenius exponent")->check(CLI::PositiveNumber);
  corpus->add_option("--out", a.out, "write the JSON summary here instead of stdout");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 1;
  }

  if (app.count("--budget") == 0)
    if (const char* env = std::getenv("CHARP_BUDGET")) {
      try {
        budget = std::stoull(env);
      } catch (const std::exception&) {
        std::cerr << "charp: CHARP_BUDGET must be a positive integer\n";
        return 1;
      }
    }
  if (budget > 0) charp_set_limit("budget", budget);
  charp_set_limit("jobs", static_cast<std::uint64_t>(jobs));

  if (corpus->parsed()) return run_corpus(corpus_dir, a, jobs);
  for (const auto& [name, sub] : subs)
    if (sub->parsed()) return run_one(name, a);
  return 1;
}
