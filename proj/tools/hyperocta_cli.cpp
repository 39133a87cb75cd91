// Command-line driver: kernel verification sweeps, certificate production
// and checking, and tensor-model experiments.  Exit codes: 0 success,
// 1 a mathematical check failed, 2 bad input.
#include <algorithm>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "hyperocta/hyperocta.hpp"

namespace {

using namespace hyperocta;

constexpr int kExitOk = 0;
constexpr int kExitMathFailed = 1;
constexpr int kExitBadInput = 2;

void print_report_human(const KernelReport& r, std::ostream& os) {
  os << "n=" << r.n << " m=" << r.m << " k=" << r.k
     << " kernel_rank=" << r.kernel_rank << " g_rank=" << r.g_rank
     << " equal=" << (r.equal ? "true" : "false")
     << " elapsed_ms=" << r.elapsed_ms << "\n";
}

int run_verify_ek(int n, int m, int k, bool as_json) {
  const KernelReport rep = verify_ek_kernel(n, m, k);
  if (as_json)
    std::cout << report_to_json(rep).dump(2) << "\n";
  else
    print_report_human(rep, std::cout);
  return rep.equal ? kExitOk : kExitMathFailed;
}

int run_rewrite(const std::string& in_path, const std::string& out_path,
                int k) {
  const FormalSum lam = formal_sum_from_json(load_json_file(in_path));
  const Certificate cert = decompose(lam, k);
  if (!verify_certificate(lam, cert)) {
    std::cerr << "certificate failed self-verification\n";
    return kExitMathFailed;
  }
  const json j = certificate_to_json(cert);
  if (out_path.empty()) {
    std::cout << j.dump(2) << "\n";
  } else {
    save_json_file(out_path, j);
    std::cout << "verified certificate with " << cert.entries().size()
              << " entries written to " << out_path << "\n";
  }
  return kExitOk;
}

int run_check_cert(const std::string& relation_path,
                   const std::string& cert_path) {
  const FormalSum lam = formal_sum_from_json(load_json_file(relation_path));
  const Certificate cert = certificate_from_json(load_json_file(cert_path));
  if (verify_certificate(lam, cert)) {
    std::cout << "certificate verified: " << cert.entries().size()
              << " entries, k=" << cert.k() << "\n";
    return kExitOk;
  }
  std::cout << "certificate FAILED verification\n";
  return kExitMathFailed;
}

ModelSetup load_model(const std::string& arg) {
  if (arg.rfind("builtin:", 0) == 0) return builtin_model(arg.substr(8));
  const auto alg = algebra_from_json(load_json_file(arg));
  return ModelSetup(alg, default_point_class(alg), Tensor::unit(alg, 1));
}

int run_chow(const std::string& model_arg, const std::string& alpha_arg,
             int m, int n, bool as_json) {
  if (m > n) throw DomainError("chow: need m <= n");
  const ModelSetup setup = load_model(model_arg);
  Tensor alpha(setup.alg, m);
  const bool is_diagonal = (alpha_arg == "diagonal");
  if (is_diagonal) {
    alpha = diagonal(setup.alg, m);
  } else {
    alpha = tensor_from_json(setup.alg, load_json_file(alpha_arg));
    if (alpha.factors() != m)
      throw DomainError("chow: class has " + std::to_string(alpha.factors()) +
                        " factors but --m is " + std::to_string(m));
  }
  const int order = vanishing_order(alpha, setup);
  std::vector<Tensor> primes;
  for (int k = 0; k <= m; ++k) primes.push_back(modified_class(alpha, setup, k));
  const KernelReport rep = verify_class_kernel(alpha, setup, n);

  if (as_json) {
    json jp = json::array();
    for (int k = 0; k <= m; ++k)
      jp.push_back({{"k", k},
                    {"zero", primes[k].is_zero()},
                    {"class", tensor_to_json(primes[k])}});
    json out = {{"model", setup.alg->model_name()},
                {"alpha", is_diagonal ? "diagonal" : alpha_arg},
                {"vanishing_order", order},
                {"alpha_prime", std::move(jp)},
                {"report", report_to_json(rep)}};
    std::cout << out.dump(2) << "\n";
  } else {
    std::cout << "model " << setup.alg->model_name() << ", alpha "
              << (is_diagonal ? "diagonal" : alpha_arg) << ", m=" << m
              << ", n=" << n << "\n";
    for (int k = 0; k <= m; ++k)
      std::cout << "  modified class k=" << k << ": "
                << (primes[k].is_zero() ? "0"
                                        : std::to_string(primes[k].terms().size()) +
                                              " terms")
                << "\n";
    std::cout << "  vanishing order: " << order << "\n";
    if (is_diagonal) {
      if (order < m)
        std::cout << "  smallest vanishing modified diagonal: l=" << order + 1
                  << "\n";
      else
        std::cout << "  no modified diagonal vanishes up to l=" << m << "\n";
    }
    std::cout << "  ";
    print_report_human(rep, std::cout);
  }
  return rep.equal ? kExitOk : kExitMathFailed;
}

int run_sweep(int max_m, int extra, const std::string& out_path) {
  if (max_m < 0 || extra < 0)
    throw DomainError("sweep: bounds must be nonnegative");
  std::vector<KernelReport> rows;
  for (int m = 0; m <= max_m; ++m)
    for (int k = 0; k <= m; ++k)
      for (int n = m; n <= m + k + extra; ++n)
        rows.push_back(verify_ek_kernel(n, m, k));
  std::sort(rows.begin(), rows.end(), [](const KernelReport& a,
                                         const KernelReport& b) {
    return std::tie(a.n, a.m, a.k) < std::tie(b.n, b.m, b.k);
  });
  // built-in model checks on the diagonal class, same column layout
  for (const char* name : {"point", "p1", "p2", "p1xp1"}) {
    const ModelSetup setup = builtin_model(name);
    for (int m = 1; m <= std::min(3, max_m); ++m)
      for (int n = m; n <= m + extra; ++n)
        rows.push_back(verify_class_kernel(diagonal(setup.alg, m), setup, n));
  }

  std::ostringstream csv;
  csv << "n,m,k,kernel_rank,g_rank,equal,elapsed_ms\n";
  bool all_equal = true;
  for (const KernelReport& r : rows) {
    all_equal = all_equal && r.equal;
    csv << r.n << "," << r.m << "," << r.k << "," << r.kernel_rank << ","
        << r.g_rank << "," << (r.equal ? "true" : "false") << ","
        << r.elapsed_ms << "\n";
  }
  if (out_path.empty()) {
    std::cout << csv.str();
  } else {
    std::ofstream out(out_path);
    if (!out) throw DomainError("cannot open file for writing: " + out_path);
    out << csv.str();
    std::cout << rows.size() << " rows written to " << out_path
              << (all_equal ? ", all equal" : ", MISMATCH FOUND") << "\n";
  }
  return all_equal ? kExitOk : kExitMathFailed;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"exact verification of hyperoctahedral relation kernels"};
  app.require_subcommand(1);

  int n = 0, m = 0, k = 0;
  bool as_json = false;
  CLI::App* verify = app.add_subcommand(
      "verify-ek", "compare the e_k evaluation kernel with its generators");
  verify->add_option("--n", n, "ambient size")->required();
  verify->add_option("--m", m, "subset size")->required();
  verify->add_option("--k", k, "elementary symmetric index")->required();
  verify->add_flag("--json", as_json, "emit a JSON report");

  std::string in_path, out_path;
  int rewrite_k = 0;
  CLI::App* rewrite = app.add_subcommand(
      "rewrite", "decompose a relation into a hyperoctahedral certificate");
  rewrite->add_option("--in", in_path, "relation JSON file")->required();
  rewrite->add_option("--out", out_path, "certificate output file");
  rewrite->add_option("--k", rewrite_k, "elementary symmetric index")->required();

  std::string relation_path, cert_path;
  CLI::App* check = app.add_subcommand(
      "check-cert", "verify a certificate against a relation");
  check->add_option("--relation", relation_path, "relation JSON file")->required();
  check->add_option("--cert", cert_path, "certificate JSON file")->required();

  std::string model_arg, alpha_arg = "diagonal";
  int chow_m = 0, chow_n = 0;
  bool chow_json = false;
  CLI::App* chow = app.add_subcommand(
      "chow", "kernel of a placed tensor class in a finite model");
  chow->add_option("--model", model_arg,
                   "builtin:point|p1|p2|p1xp1 or a model JSON file")->required();
  chow->add_option("--alpha", alpha_arg, "diagonal or a tensor JSON file");
  chow->add_option("--m", chow_m, "factor count")->required();
  chow->add_option("--n", chow_n, "ambient factor count")->required();
  chow->add_flag("--json", chow_json, "emit a JSON report");

  int max_m = 0, extra = 0;
  std::string sweep_out;
  CLI::App* sweep = app.add_subcommand(
      "sweep", "run the kernel comparison over a parameter grid");
  sweep->add_option("--max-m", max_m, "largest subset size")->required();
  sweep->add_option("--extra", extra, "how far n may exceed m+k")->required();
  sweep->add_option("--out", sweep_out, "CSV output file");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : kExitBadInput;
  }

  try {
    if (*verify) return run_verify_ek(n, m, k, as_json);
    if (*rewrite) return run_rewrite(in_path, out_path, rewrite_k);
    if (*check) return run_check_cert(relation_path, cert_path);
    if (*chow) return run_chow(model_arg, alpha_arg, chow_m, chow_n, chow_json);
    if (*sweep) return run_sweep(max_m, extra, sweep_out);
  } catch (const NotARelation& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitBadInput;
  } catch (const DomainError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitBadInput;
  } catch (const ModelValidationError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitBadInput;
  } catch (const InvariantViolation& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return kExitMathFailed;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitBadInput;
  }
  return kExitBadInput;
}
