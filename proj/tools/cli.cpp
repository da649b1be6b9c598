// Copyright 2026 The ripforge Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "cli.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <optional>
#include <ostream>

#include "CLI11.hpp"
#include "ripforge/ripforge.hpp"

namespace ripforge::cli {
namespace {

using Json = nlohmann::ordered_json;

struct Outcome {
  int code;
  Json report;
};

std::optional<double> parse_kappa(const std::string& text) {
  if (text == "auto") return std::nullopt;
  std::size_t used = 0;
  double v = 0.0;
  try {
    v = std::stod(text, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (used != text.size() || !(v > 0.0)) throw Error(ErrorCode::kInvalidParams, "--kappa must be 'auto' or a positive number");
  return v;
}

Json matrix_summary(const Matrix& A) {
  Json j;
  j["rows"] = A.rows();
  j["cols"] = A.cols();
  j["field"] = to_string(A.field());
  j["meta"] = A.meta();
  return j;
}

Vector random_dense(std::size_t n, Field field, Rng& rng) {
  std::vector<cplx> x(n);
  for (cplx& v : x) v = field == Field::kComplex ? rng.complex_gaussian() : cplx(rng.gaussian(), 0.0);
  return Vector(field, std::move(x));
}

// --- construct -------------------------------------------------------------

struct ConstructOptions {
  std::uint64_t p = 0;
  std::size_t d = 0;
  std::uint64_t m = 0;
  std::uint64_t n = 0;
  std::size_t s = 0;
  std::uint64_t seed = 0;
  std::uint64_t max_rounds = 50;
  std::string kappa = "auto";
  std::string output;
};

Outcome write_constructed(const std::string& kind, const Matrix& A, const std::string& path, Json extra = Json::object()) {
  write_cmx(A, path);
  Json j;
  j["command"] = "construct";
  j["kind"] = kind;
  j["output"] = path;
  j.update(matrix_summary(A));
  j.update(extra);
  return {kSuccess, j};
}

// --- verify ----------------------------------------------------------------

Outcome verify_identities(const Matrix& B, std::uint64_t seed, std::uint64_t trials) {
  Rng rng(seed);
  double max_l2 = 0.0;
  double max_l4 = 0.0;
  double max_l4_split = 0.0;
  const bool with_l4 = B.cols() <= kMaxL4Columns;
  for (std::uint64_t t = 0; t < trials; ++t) {
    const Vector x = random_dense(B.cols(), Field::kComplex, rng);
    const IdentityReport l2 = l2_identity(B, x);
    max_l2 = std::max(max_l2, l2.abs_gap / std::max(1.0, l2.direct_value));
    if (with_l4) {
      const IdentityReport l4 = l4_identity(B, x);
      max_l4 = std::max(max_l4, l4.abs_gap / std::max(1.0, l4.direct_value));
      max_l4_split = std::max(max_l4_split, l4.abs_gap_split / std::max(1.0, l4.direct_value));
    }
  }
  constexpr double kTol = 1e-8;
  const bool pass = max_l2 <= kTol && max_l4 <= kTol && max_l4_split <= kTol;
  Json j;
  j["command"] = "verify identities";
  j["trials"] = trials;
  j["seed"] = seed;
  j["max_rel_gap_l2"] = max_l2;
  if (with_l4) {
    j["max_rel_gap_l4"] = max_l4;
    j["max_rel_gap_l4_split"] = max_l4_split;
  } else {
    j["l4_skipped"] = "more than 32 columns";
  }
  j["tolerance"] = kTol;
  j["pass"] = pass;
  return {pass ? kSuccess : kCheckFailed, j};
}

Outcome verify_isometry(const Matrix& M, std::uint64_t seed, std::uint64_t trials) {
  Rng rng(seed);
  double worst = 0.0;
  for (std::uint64_t t = 0; t < trials; ++t) {
    const Vector x = random_dense(M.cols(), Field::kComplex, rng);
    const double nx = norm(x, 2.0);
    worst = std::max(worst, std::abs(norm(matvec(M, x), 4.0) - nx) / nx);
  }
  constexpr double kTol = 1e-10;
  Json j;
  j["command"] = "verify isometry";
  j["trials"] = trials;
  j["seed"] = seed;
  j["max_rel_deviation_l4"] = worst;
  j["tolerance"] = kTol;
  j["pass"] = worst <= kTol;
  return {worst <= kTol ? kSuccess : kCheckFailed, j};
}

Outcome verify_embedding(const Matrix& A, std::uint64_t seed, std::uint64_t trials) {
  Rng rng(seed);
  double r1_min = std::numeric_limits<double>::infinity(), r1_max = 0.0;
  double r2_min = std::numeric_limits<double>::infinity(), r2_max = 0.0;
  double r4_max = 0.0;
  for (std::uint64_t t = 0; t < trials; ++t) {
    const auto r = embedding_ratios(A, random_dense(A.cols(), Field::kComplex, rng));
    r1_min = std::min(r1_min, r.r1);
    r1_max = std::max(r1_max, r.r1);
    r2_min = std::min(r2_min, r.r2);
    r2_max = std::max(r2_max, r.r2);
    r4_max = std::max(r4_max, r.r4);
  }
  const auto m = static_cast<double>(A.rows());
  constexpr double kSlack = 1e-9;
  const double lower = m / std::sqrt(2.0);
  const bool pass = r1_min >= lower * (1.0 - kSlack) && r1_max <= m * (1.0 + kSlack);
  Json j;
  j["command"] = "verify embedding";
  j["trials"] = trials;
  j["seed"] = seed;
  j["r1_min"] = r1_min;
  j["r1_max"] = r1_max;
  j["r2_min"] = r2_min;
  j["r2_max"] = r2_max;
  j["r4_max"] = r4_max;
  j["l1_lower_bound"] = lower;
  j["l1_upper_bound"] = m;
  j["empirical_distortion"] = r1_max / r1_min;
  j["distortion_is_lower_bound"] = true;
  j["pass"] = pass;
  return {pass ? kSuccess : kCheckFailed, j};
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"ripforge: deterministic and Las Vegas measurement matrices with certified embedding bounds",
               "ripforge"};
  app.require_subcommand(1);
  std::function<Outcome()> action;

  // construct
  auto* construct = app.add_subcommand("construct", "Build a measurement matrix and write it as CMX");
  construct->require_subcommand(1);
  ConstructOptions co;
  auto add_output = [&](CLI::App* sub) { sub->add_option("-o,--output", co.output, "Output CMX file")->required(); };

  auto* c_golomb = construct->add_subcommand(
      "golomb",
      "Golomb phase matrix A''_{j,k} = exp(2 pi i j g(k)/m), m = 6p^2-6p+1, g(k) = 2pk + (k^2 mod p). "
      "Columns are exactly orthogonal and m/sqrt(2)||x||_2 <= ||A''x||_1 <= m||x||_2 (l2 -> l1 distortion <= sqrt(2)).");
  c_golomb->add_option("--p", co.p, "Prime p >= 3")->required();
  add_output(c_golomb);
  c_golomb->callback([&] {
    action = [&] { return write_constructed("golomb", golomb_phase(co.p), co.output); };
  });

  auto* c_stacked = construct->add_subcommand(
      "golomb-stacked",
      "M = [(2m)^{-1/4} A'' ; 2^{-1/4} I_p], an exact isometry ||Mx||_4 = ||x||_2 on C^p.");
  c_stacked->add_option("--p", co.p, "Prime p >= 3")->required();
  add_output(c_stacked);
  c_stacked->callback([&] {
    action = [&] { return write_constructed("golomb-stacked", golomb_stacked(co.p), co.output); };
  });

  std::optional<std::uint64_t> weil_cols;
  auto* c_weil = construct->add_subcommand(
      "weil",
      "p x N matrix p^{-1/2} exp(2 pi i k f(k)/p) over polynomials f of degree <= d < p; coherence <= d/sqrt(p) "
      "by the Weil bound.");
  c_weil->add_option("--p", co.p, "Prime p")->required();
  c_weil->add_option("--d", co.d, "Degree bound, 1 <= d < p")->required();
  c_weil->add_option("--n", weil_cols, "Number of columns (default p^(d+1))");
  add_output(c_weil);
  c_weil->callback([&] {
    action = [&] { return write_constructed("weil", weil(co.p, co.d, weil_cols), co.output); };
  });

  auto* c_alltop = construct->add_subcommand(
      "alltop", "m x m^2 translations and modulations of the Alltop vector; coherence exactly 1/sqrt(m).");
  c_alltop->add_option("--m", co.m, "Prime m >= 5")->required();
  add_output(c_alltop);
  c_alltop->callback([&] {
    action = [&] { return write_constructed("alltop", alltop(co.m), co.output); };
  });

  auto* c_devore = construct->add_subcommand(
      "devore", "p^2 x p^{d+1} binary matrix with entries in {0, 1/sqrt(p)} from polynomial graphs; coherence <= d/p.");
  c_devore->add_option("--p", co.p, "Prime p")->required();
  c_devore->add_option("--d", co.d, "Degree bound, 1 <= d < p")->required();
  add_output(c_devore);
  c_devore->callback([&] {
    action = [&] { return write_constructed("devore", devore(co.p, co.d), co.output); };
  });

  auto* c_rad = construct->add_subcommand("rademacher", "m x N matrix of independent random signs.");
  c_rad->add_option("--m", co.m, "Rows")->required();
  c_rad->add_option("--n", co.n, "Columns")->required();
  c_rad->add_option("--seed", co.seed, "Random seed")->required();
  add_output(c_rad);
  c_rad->callback([&] {
    action = [&] { return write_constructed("rademacher", rademacher(co.m, co.n, co.seed), co.output); };
  });

  auto* c_lv = construct->add_subcommand(
      "lasvegas",
      "Draw Rademacher matrices until pair sums and quadruple sums of distinct columns are all <= kappa sqrt(m). "
      "A certified draw embeds s-sparse vectors from l2 into l1 with distortion <= sqrt(3)((1+delta)/(1-delta))^{3/2} "
      "once m >= kappa^2 delta^-2 s^4. Each round fails with probability <= 1/3 at kappa = sqrt(8 ln N).");
  c_lv->add_option("--m", co.m, "Rows")->required();
  c_lv->add_option("--n", co.n, "Columns")->required();
  c_lv->add_option("--seed", co.seed, "Random seed")->required();
  c_lv->add_option("--kappa", co.kappa, "'auto' (= sqrt(8 ln N)) or a positive value");
  c_lv->add_option("--max-rounds", co.max_rounds, "Round limit");
  add_output(c_lv);
  c_lv->callback([&] {
    action = [&]() -> Outcome {
      try {
        const auto res = las_vegas(co.m, co.n, parse_kappa(co.kappa), co.max_rounds, co.seed);
        return write_constructed("lasvegas", res.matrix, co.output,
                                 {{"rounds_used", res.rounds_used}, {"kappa", res.kappa}});
      } catch (const RoundsExhaustedError& e) {
        Json j;
        j["command"] = "construct";
        j["kind"] = "lasvegas";
        j["error"] = "RoundsExhausted";
        j["rounds"] = e.rounds;
        j["best_round"] = e.best_round;
        j["threshold"] = e.best_a.threshold;
        j["max_pair_sum"] = e.best_a.max_pair_sum;
        j["pair_witness"] = e.best_a.witness;
        j["max_quad_sum"] = e.best_b.max_quad_sum;
        j["quad_witness"] = e.best_b.witness;
        err << e.what() << '\n';
        return {kCheckFailed, j};
      }
    };
  });

  std::optional<std::uint64_t> composed_p;
  auto* c_comp = construct->add_subcommand(
      "composed",
      "Golomb x Weil product A = A'' A' (m = 6p^2-6p+1 rows, N columns). With p between 9s^2 ceil(ln^2 N) and "
      "18s^2 ceil(ln^2 N), m/sqrt(3)||x||_2 <= ||Ax||_1 <= 2m/sqrt(3)||x||_2 on s-sparse x. When that range is "
      "infeasible an explicit --p is required.");
  c_comp->add_option("--s", co.s, "Sparsity s >= 1")->required();
  c_comp->add_option("--n", co.n, "Columns N")->required();
  c_comp->add_option("--p", composed_p, "Prime p >= 3 overriding the default range");
  add_output(c_comp);
  c_comp->callback([&] {
    action = [&] { return write_constructed("composed", composed(co.s, co.n, composed_p), co.output); };
  });

  // certify
  auto* certify = app.add_subcommand("certify", "Certify a matrix file");
  certify->require_subcommand(1);
  std::string file;
  std::string kappa_text = "auto";
  std::size_t cert_s = 1;
  double cert_delta = 0.5;

  auto* c_coh = certify->add_subcommand("coherence", "Coherence max_{j != l} |<a_j, a_l>| of the normalized columns.");
  c_coh->add_option("file", file, "CMX file")->required();
  c_coh->callback([&] {
    action = [&]() -> Outcome {
      const Matrix A = read_cmx(file);
      Json j;
      j["command"] = "certify coherence";
      j["rows"] = A.rows();
      j["cols"] = A.cols();
      j["coherence"] = coherence(A);
      return {kSuccess, j};
    };
  });

  auto* c_cond = certify->add_subcommand(
      "cond",
      "Check |sum_j A_jk A_jk'| <= kappa sqrt(m) and |sum_j A_jk A_jk' A_jl A_jl'| <= kappa sqrt(m) over distinct "
      "columns of a sign matrix, and report the l2 -> l1 bounds alpha m, beta m valid on s-sparse x once "
      "m >= kappa^2 delta^-2 s^4. Exit 1 if either condition fails.");
  c_cond->add_option("file", file, "CMX file with +-1 entries")->required();
  c_cond->add_option("--kappa", kappa_text, "'auto' (= sqrt(8 ln N)) or a positive value");
  c_cond->add_option("--s", cert_s, "Sparsity for the bound arithmetic");
  c_cond->add_option("--delta", cert_delta, "delta in (0, 1) for the bound arithmetic");
  c_cond->callback([&] {
    action = [&]() -> Outcome {
      const Matrix A = read_cmx(file);
      const double kappa = parse_kappa(kappa_text).value_or(default_kappa(A.cols()));
      const CertReport rep = certify_sign_matrix(A, kappa, cert_delta, cert_s);
      Json j;
      j["command"] = "certify cond";
      j.update(to_json(rep));
      return {rep.cond_a_pass && rep.cond_b_pass ? kSuccess : kCheckFailed, j};
    };
  });

  auto* c_ric = certify->add_subcommand(
      "ric",
      "Exact restricted isometry constant delta_s of the column-normalized matrix by enumerating all s-subsets; "
      "compared with the coherence bound delta_s < s mu. Exit 1 if delta_s >= 1.");
  c_ric->add_option("file", file, "CMX file")->required();
  c_ric->add_option("--s", cert_s, "Sparsity")->required();
  c_ric->callback([&] {
    action = [&]() -> Outcome {
      const Matrix A = read_cmx(file);
      const double ric = exact_ric(A, cert_s);
      const double mu = coherence(A);
      Json j;
      j["command"] = "certify ric";
      j["s"] = cert_s;
      j["delta_s"] = ric;
      j["coherence"] = mu;
      j["coherence_bound"] = static_cast<double>(cert_s) * mu;
      j["below_coherence_bound"] = ric < static_cast<double>(cert_s) * mu;
      j["pass"] = ric < 1.0;
      return {ric < 1.0 ? kSuccess : kCheckFailed, j};
    };
  });

  // probe
  std::uint64_t trials = 1000;
  std::uint64_t seed = 0;
  auto* probe = app.add_subcommand(
      "probe",
      "Sample ||Ax||_1 / ||x||_2 over random s-sparse x. The reported distortion is a lower bound on the true one.");
  probe->add_option("file", file, "CMX file")->required();
  probe->add_option("--s", cert_s, "Sparsity")->required();
  probe->add_option("--trials", trials, "Number of samples")->required();
  probe->add_option("--seed", seed, "Random seed")->required();
  probe->callback([&] {
    action = [&]() -> Outcome {
      const Matrix A = read_cmx(file);
      Json j;
      j["command"] = "probe";
      j["seed"] = seed;
      j.update(to_json(probe_l1(A, cert_s, trials, seed)));
      return {kSuccess, j};
    };
  });

  // verify
  auto* verify = app.add_subcommand("verify", "Numerical checks of the norm identities and embeddings");
  verify->require_subcommand(1);
  std::uint64_t verify_trials = 100;
  auto* v_id = verify->add_subcommand(
      "identities",
      "For unimodular B: ||Bx||_2^2 = q||x||_2^2 + cross terms, and ||Bx||_4^4 = 2||x||_2^2||Bx||_2^2 - q||x||_4^4 "
      "+ Sigma_1 (also in the Sigma_2 form), on random complex x.");
  v_id->add_option("file", file, "CMX file")->required();
  v_id->add_option("--seed", seed, "Random seed (default 0)");
  v_id->add_option("--trials", verify_trials, "Random vectors (default 100)");
  v_id->callback([&] {
    action = [&] { return verify_identities(read_cmx(file), seed, verify_trials); };
  });

  auto* v_iso = verify->add_subcommand("isometry", "Check ||Mx||_4 = ||x||_2 to relative 1e-10 on random complex x.");
  v_iso->add_option("file", file, "CMX file")->required();
  v_iso->add_option("--seed", seed, "Random seed (default 0)");
  v_iso->add_option("--trials", verify_trials, "Random vectors (default 100)");
  v_iso->callback([&] {
    action = [&] { return verify_isometry(read_cmx(file), seed, verify_trials); };
  });

  auto* v_emb = verify->add_subcommand(
      "embedding", "Check m/sqrt(2)||x||_2 <= ||Ax||_1 <= m||x||_2 (m = rows), the Golomb phase l2 -> l1 embedding.");
  v_emb->add_option("file", file, "CMX file")->required();
  v_emb->add_option("--seed", seed, "Random seed (default 0)");
  v_emb->add_option("--trials", verify_trials, "Random vectors (default 100)");
  v_emb->callback([&] {
    action = [&] { return verify_embedding(read_cmx(file), seed, verify_trials); };
  });

  // design
  auto* design = app.add_subcommand("design", "Spherical design quantities");
  design->require_subcommand(1);
  std::size_t dn = 0;
  std::size_t dk = 0;
  std::string field_text = "real";
  std::optional<std::uint64_t> samples;
  std::string design_out;

  auto* d_delta = design->add_subcommand(
      "delta",
      "delta_{n,2k} = int |<x,y>|^{2k} dsigma(y): (2k-1)!!/(n(n+2)...(n+2k-2)) over R, k!/(n(n+1)...(n+k-1)) "
      "over C. With --samples, also a Monte Carlo estimate.");
  d_delta->add_option("--n", dn, "Dimension n >= 1")->required();
  d_delta->add_option("--k", dk, "Half moment order k >= 1")->required();
  d_delta->add_option("--field", field_text, "real or complex")->required();
  d_delta->add_option("--samples", samples, "Monte Carlo samples (>= 1000)");
  d_delta->add_option("--seed", seed, "Monte Carlo seed");
  d_delta->callback([&] {
    action = [&]() -> Outcome {
      const Field f = parse_field(field_text);
      Json j;
      j["command"] = "design delta";
      j["n"] = dn;
      j["k"] = dk;
      j["field"] = to_string(f);
      j["delta"] = delta_closed_form(dn, dk, f);
      if (samples) {
        const auto mc = delta_monte_carlo(dn, dk, f, *samples, seed);
        j["monte_carlo"] = {{"samples", *samples}, {"seed", seed}, {"estimate", mc.estimate},
                            {"standard_error", mc.standard_error}};
      }
      return {kSuccess, j};
    };
  });

  auto* d_defect = design->add_subcommand(
      "defect",
      "Design defect sum tau_i tau_j |<x_i,x_j>|^{2k} - delta_{n,2k} of a point-set CMX (rows = points, weights in "
      "meta), equal to the squared distance to the distribution tensor and nonnegative (Sidelnikov).");
  d_defect->add_option("file", file, "Point-set CMX file")->required();
  d_defect->add_option("--k", dk, "k >= 1")->required();
  d_defect->callback([&] {
    action = [&]() -> Outcome {
      const WeightedPointSet ps = point_set_from_matrix(read_cmx(file));
      const double defect = design_defect(ps, dk);
      Json j;
      j["command"] = "design defect";
      j["k"] = dk;
      j["n"] = ps.dim();
      j["points"] = ps.size();
      j["delta"] = delta_closed_form(ps.dim(), dk, ps.field());
      j["defect"] = defect;
      if (dk == 1 && ps.dim() <= 64) j["tensor_defect_explicit"] = tensor_defect_explicit(ps, 1);
      const bool ok = defect >= -1e-10;
      j["sidelnikov_holds"] = ok;
      return {ok ? kSuccess : kCheckFailed, j};
    };
  });

  auto* d_from = design->add_subcommand(
      "from-matrix",
      "Turn the rows a_i^* of a matrix into x_i = a_i/||a_i||_2 with weights ||a_i||_2^{2k}/S; an exact l2 -> l2k "
      "isometry gives defect 0.");
  d_from->add_option("file", file, "CMX file")->required();
  d_from->add_option("--k", dk, "k >= 1")->required();
  d_from->add_option("-o,--output", design_out, "Write the point set as CMX");
  d_from->callback([&] {
    action = [&]() -> Outcome {
      const auto res = matrix_to_design(read_cmx(file), dk);
      if (!design_out.empty()) write_cmx(point_set_to_matrix(res.points), design_out);
      Json j;
      j["command"] = "design from-matrix";
      j["k"] = dk;
      j["n"] = res.points.dim();
      j["points"] = res.points.size();
      j["S"] = res.S;
      j["defect"] = design_defect(res.points, dk);
      if (!design_out.empty()) j["output"] = design_out;
      return {kSuccess, j};
    };
  });

  std::string direction;
  double eps = 0.0;
  auto* d_chain = design->add_subcommand(
      "chain",
      "Tolerance conversions: 2to3 eps3 = sqrt(eps2); 3to1 eps1 = eps3/delta; 1to2 eps2 = 4 eps1 delta (eps1 <= 1/2).");
  d_chain->add_option("--direction", direction, "2to3, 3to1 or 1to2")->required();
  d_chain->add_option("--eps", eps, "Input epsilon >= 0")->required();
  d_chain->add_option("--n", dn, "Dimension n")->required();
  d_chain->add_option("--k", dk, "k >= 1")->required();
  d_chain->add_option("--field", field_text, "real or complex")->required();
  d_chain->callback([&] {
    action = [&]() -> Outcome {
      Json j;
      j["command"] = "design chain";
      j["direction"] = direction;
      j["eps_in"] = eps;
      j["eps_out"] = epsilon_chain(parse_chain_direction(direction), eps, dn, dk, parse_field(field_text));
      return {kSuccess, j};
    };
  });

  // recover
  std::size_t max_iter = 500;
  double tol = 1e-9;
  auto* recover = app.add_subcommand(
      "recover",
      "Recover a random s-sparse x0 from y = A x0 by iterative hard thresholding (step 1/||A||_2^2). Exit 1 if the "
      "relative error exceeds 1e-6.");
  recover->add_option("file", file, "CMX file")->required();
  recover->add_option("--s", cert_s, "Sparsity")->required();
  recover->add_option("--seed", seed, "Seed for x0")->required();
  recover->add_option("--max-iter", max_iter, "Iteration cap (default 500)");
  recover->add_option("--tol", tol, "Relative residual tolerance (default 1e-9)");
  recover->callback([&] {
    action = [&]() -> Outcome {
      const Matrix A = read_cmx(file);
      const Vector x0 = random_sparse(A.cols(), cert_s, A.field(), seed);
      const Vector y = matvec(A, x0);
      const RecoveryResult res = iht(A, y, cert_s, max_iter, tol);
      double diff = 0.0;
      for (std::size_t i = 0; i < x0.size(); ++i) diff += std::norm(res.estimate[i] - x0[i]);
      const double nx = norm(x0, 2.0);
      const double rel = nx > 0.0 ? std::sqrt(diff) / nx : std::sqrt(diff);
      Json j;
      j["command"] = "recover";
      j["s"] = cert_s;
      j["seed"] = seed;
      j["iterations"] = res.iterations;
      j["converged"] = res.converged;
      j["final_residual"] = res.residual_history.empty() ? norm(y, 2.0) : res.residual_history.back();
      j["relative_error"] = rel;
      j["recovered"] = rel <= 1e-6;
      return {rel <= 1e-6 ? kSuccess : kCheckFailed, j};
    };
  });

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::ParseError& e) {
    app.exit(e, out, err);
    out << Json{{"error", "UsageError"}, {"message", e.what()}}.dump() << '\n';
    return kInvalidInput;
  }

  try {
    const Outcome outcome = action();
    out << outcome.report.dump() << '\n';
    return outcome.code;
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    out << Json{{"error", std::string(to_string(e.code()))}, {"message", e.what()}}.dump() << '\n';
    return kInvalidInput;
  }
}

}  // namespace ripforge::cli
