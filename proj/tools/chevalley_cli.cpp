// chevalley: generate, scramble, recognize, and verify Chevalley Lie
// algebras over prime fields through the shared-library C API.

#include <chrono>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "chevalley.h"

namespace {

// exit codes: 0 ok, 1 verification failure, 2 usage, 3 recognition failure
int status_exit(chv_status s) {
  std::cerr << "error (" << chv_status_name(s) << "): " << chv_last_error() << "\n";
  return s == CHV_ERR_RECOGNITION ? 3 : 2;
}

std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t salt) {
  std::uint64_t z = seed + 0x9e3779b97f4a7c15ull * (salt + 1);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
  return z ^ (z >> 31);
}

struct AlgebraHandle {
  chv_algebra* p = nullptr;
  ~AlgebraHandle() { chv_algebra_free(p); }
};
struct RecoveryHandle {
  chv_recovery* p = nullptr;
  ~RecoveryHandle() { chv_recovery_free(p); }
};
struct MatrixHandle {
  chv_matrix* p = nullptr;
  ~MatrixHandle() { chv_matrix_free(p); }
};
struct SubspaceHandle {
  chv_subspace* p = nullptr;
  ~SubspaceHandle() { chv_subspace_free(p); }
};

int cmd_generate(const std::string& type, unsigned rank, unsigned long p,
                 const std::string& out) {
  AlgebraHandle a;
  if (auto s = chv_algebra_build(type[0], rank, p, &a.p); s != CHV_OK) return status_exit(s);
  if (auto s = chv_algebra_write(a.p, out.c_str()); s != CHV_OK) return status_exit(s);
  if (auto s = chv_algebra_write_tags(a.p, (out + ".tags").c_str()); s != CHV_OK)
    return status_exit(s);
  std::cout << "wrote " << out << " (d=" << chv_algebra_dim(a.p) << ", p=" << p << ") and "
            << out << ".tags\n";
  return 0;
}

int cmd_scramble(const std::string& in, std::uint64_t seed, const std::string& out,
                 const std::string& secret_out) {
  AlgebraHandle a, scr;
  MatrixHandle bc;
  if (auto s = chv_algebra_read(in.c_str(), &a.p); s != CHV_OK) return status_exit(s);
  if (auto s = chv_algebra_scramble(a.p, seed, &scr.p, &bc.p); s != CHV_OK)
    return status_exit(s);
  if (auto s = chv_algebra_write(scr.p, out.c_str()); s != CHV_OK) return status_exit(s);
  if (!secret_out.empty()) {
    if (auto s = chv_matrix_write(bc.p, secret_out.c_str()); s != CHV_OK) return status_exit(s);
  }
  std::cout << "wrote " << out;
  if (!secret_out.empty()) std::cout << " (secret basis change in " << secret_out << ")";
  std::cout << "\n";
  return 0;
}

int cmd_recover(const std::string& in, std::uint64_t seed, const std::string& h0_path,
                const std::string& out, bool verbose) {
  AlgebraHandle a;
  if (auto s = chv_algebra_read(in.c_str(), &a.p); s != CHV_OK) return status_exit(s);
  SubspaceHandle h0;
  if (!h0_path.empty()) {
    if (auto s = chv_subspace_read(h0_path.c_str(), &h0.p); s != CHV_OK) return status_exit(s);
  }
  RecoveryHandle rec;
  if (auto s = chv_recover(a.p, h0.p, seed, &rec.p); s != CHV_OK) return status_exit(s);
  if (auto s = chv_recovery_write(rec.p, out.c_str()); s != CHV_OK) return status_exit(s);
  std::cout << "recovered";
  for (unsigned i = 0; i < chv_recovery_component_count(rec.p); ++i) {
    char series;
    unsigned rank;
    chv_recovery_component_type(rec.p, i, &series, &rank);
    std::cout << " " << series << rank;
  }
  if (unsigned z = chv_recovery_center_dim(rec.p)) std::cout << " center=" << z;
  if (verbose) std::cout << " restarts=" << chv_recovery_restarts(rec.p);
  std::cout << " -> " << out << "\n";
  return 0;
}

int cmd_verify(const std::string& in, const std::string& recovered) {
  AlgebraHandle a;
  if (auto s = chv_algebra_read(in.c_str(), &a.p); s != CHV_OK) return status_exit(s);
  RecoveryHandle rec;
  if (auto s = chv_recovery_read(recovered.c_str(), &rec.p); s != CHV_OK) return status_exit(s);
  int passed = 0;
  char* report = nullptr;
  if (auto s = chv_verify(a.p, rec.p, &passed, &report); s != CHV_OK) return status_exit(s);
  std::cout << report;
  chv_string_free(report);
  std::cout << (passed ? "PASS" : "FAIL") << "\n";
  return passed ? 0 : 1;
}

int cmd_roundtrip(const std::string& type, unsigned rank, unsigned long p, unsigned trials,
                  std::uint64_t seed, bool verbose) {
  AlgebraHandle canon;
  if (auto s = chv_algebra_build(type[0], rank, p, &canon.p); s != CHV_OK)
    return status_exit(s);
  unsigned passed = 0;
  unsigned restarts = 0;
  for (unsigned t = 0; t < trials; ++t) {
    AlgebraHandle scr;
    if (auto s = chv_algebra_scramble(canon.p, mix_seed(seed, 2 * t), &scr.p, nullptr);
        s != CHV_OK)
      return status_exit(s);
    RecoveryHandle rec;
    chv_status s = chv_recover(scr.p, nullptr, mix_seed(seed, 2 * t + 1), &rec.p);
    if (s == CHV_ERR_RECOGNITION) {
      if (verbose) std::cout << "trial " << t << ": recognition failed\n";
      continue;
    }
    if (s != CHV_OK) return status_exit(s);
    int ok = 0;
    if (auto sv = chv_verify(scr.p, rec.p, &ok, nullptr); sv != CHV_OK) return status_exit(sv);
    restarts += chv_recovery_restarts(rec.p);
    if (ok) ++passed;
    if (verbose)
      std::cout << "trial " << t << ": " << (ok ? "PASS" : "FAIL") << " (restarts "
                << chv_recovery_restarts(rec.p) << ")\n";
  }
  std::cout << passed << "/" << trials << " PASS (retries " << restarts << ")\n";
  return passed == trials ? 0 : 1;
}

int cmd_bench(const std::string& series, unsigned lo, unsigned hi, unsigned long p,
              std::uint64_t seed) {
  std::vector<double> logd, logops;
  std::printf("%-6s %-6s %-14s %-10s\n", "rank", "d", "field_ops", "ms");
  for (unsigned n = lo; n <= hi; ++n) {
    AlgebraHandle canon;
    if (auto s = chv_algebra_build(series[0], n, p, &canon.p); s != CHV_OK)
      return status_exit(s);
    AlgebraHandle scr;
    if (auto s = chv_algebra_scramble(canon.p, mix_seed(seed, n), &scr.p, nullptr); s != CHV_OK)
      return status_exit(s);
    chv_field_ops_reset();
    auto t0 = std::chrono::steady_clock::now();
    RecoveryHandle rec;
    if (auto s = chv_recover(scr.p, nullptr, mix_seed(seed, 1000 + n), &rec.p); s != CHV_OK)
      return status_exit(s);
    auto t1 = std::chrono::steady_clock::now();
    unsigned long long ops = chv_field_ops();
    double ms = std::chrono::duration<double, std::milli>(t1 - t0).count();
    unsigned d = chv_algebra_dim(scr.p);
    std::printf("%-6u %-6u %-14llu %-10.1f\n", n, d, ops, ms);
    logd.push_back(std::log(static_cast<double>(d)));
    logops.push_back(std::log(static_cast<double>(ops)));
  }
  // least-squares slope of log(ops) against log(d)
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  std::size_t m = logd.size();
  for (std::size_t i = 0; i < m; ++i) {
    sx += logd[i];
    sy += logops[i];
    sxx += logd[i] * logd[i];
    sxy += logd[i] * logops[i];
  }
  double slope = (m * sxy - sx * sy) / (m * sxx - sx * sx);
  std::printf("fitted log-log slope: %.3f\n", slope);
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Chevalley Lie algebras over GF(p): construction, scrambled-basis recognition, "
               "verification"};
  app.require_subcommand(1);

  std::string type = "A", series = "A";
  unsigned rank = 1, trials = 20;
  unsigned long p = 7;
  std::uint64_t seed = 0;
  std::string in, out, h0, secret_out, recovered, ranks = "2..8";
  bool verbose = false;
  app.add_flag("-v,--verbose", verbose, "per-trial output");

  auto add_type = [&](CLI::App* c) {
    c->add_option("--type", type, "series A..G")->required()->check(CLI::IsMember(
        {"A", "B", "C", "D", "E", "F", "G"}));
    c->add_option("--rank", rank, "Lie rank")->required();
    c->add_option("--p", p, "field prime, at least 5")->required();
  };

  CLI::App* gen = app.add_subcommand("generate", "write a canonical Chevalley algebra");
  add_type(gen);
  gen->add_option("--out", out, "output path")->required();

  CLI::App* scr = app.add_subcommand("scramble", "re-express an algebra in a random basis");
  scr->add_option("--in", in, "input algebra")->required();
  scr->add_option("--seed", seed, "random seed (default 0)");
  scr->add_option("--out", out, "output path")->required();
  scr->add_option("--secret-out", secret_out, "where to store the basis change");

  CLI::App* rec = app.add_subcommand("recover", "recognize a Chevalley basis");
  rec->add_option("--in", in, "input algebra")->required();
  rec->add_option("--seed", seed, "random seed (default 0)");
  rec->add_option("--h0", h0, "optional split toral subalgebra file");
  rec->add_option("--out", out, "recovery output path")->required();

  CLI::App* ver = app.add_subcommand("verify", "check a recovery against the Chevalley axioms");
  ver->add_option("--in", in, "input algebra")->required();
  ver->add_option("--recovered", recovered, "recovery file")->required();

  CLI::App* rt = app.add_subcommand("roundtrip", "generate-scramble-recover-verify trials");
  add_type(rt);
  rt->add_option("--trials", trials, "number of trials (default 20)");
  rt->add_option("--seed", seed, "random seed (default 0)");

  CLI::App* bench = app.add_subcommand("bench", "field-operation counts against dimension");
  bench->add_option("--series", series, "series (default A)")->check(CLI::IsMember(
      {"A", "B", "C", "D"}));
  bench->add_option("--ranks", ranks, "rank range lo..hi (default 2..8)");
  bench->add_option("--p", p, "field prime (default 7)");
  bench->add_option("--seed", seed, "random seed (default 0)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (gen->parsed()) return cmd_generate(type, rank, p, out);
    if (scr->parsed()) return cmd_scramble(in, seed, out, secret_out);
    if (rec->parsed()) return cmd_recover(in, seed, h0, out, verbose);
    if (ver->parsed()) return cmd_verify(in, recovered);
    if (rt->parsed()) return cmd_roundtrip(type, rank, p, trials, seed, verbose);
    if (bench->parsed()) {
      auto dots = ranks.find("..");
      if (dots == std::string::npos) {
        std::cerr << "error: --ranks expects lo..hi\n";
        return 2;
      }
      unsigned lo = std::stoul(ranks.substr(0, dots));
      unsigned hi = std::stoul(ranks.substr(dots + 2));
      if (lo < 1 || hi < lo) {
        std::cerr << "error: bad rank range\n";
        return 2;
      }
      return cmd_bench(series, lo, hi, p, seed);
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 2;
}
