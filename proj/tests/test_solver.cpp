#include <dissoc/certificate_io.hpp>
#include <dissoc/solver.hpp>

#include <gtest/gtest.h>

#include <filesystem>

using namespace dissoc;
using DC = DissociationClass;

namespace {

FeasibilityOutcome probe(DC c, int n, const std::string& state, NoiseKind noise, double q) {
  const auto sys = build_system(c, n, noise);
  const auto cons = constraint_set(c, n, make_state(state, n).rho);
  return feasible(q, sys, cons, state, noise);
}

}  // namespace

TEST(Equalities, MinimumNormSolutionAndNullSpace) {
  for (DC c : kAllClasses)
    for (int n : {4, 6}) {
      const auto sys = build_system(c, n, NoiseKind::Global);
      const auto eq = detail::solve_equalities(sys, 0.3);
      EXPECT_LT(sys.residual(eq.f0, 0.3), 1e-12);
      if (eq.null_basis.cols() == 0) continue;
      EXPECT_LT((sys.coeffs * eq.null_basis).cwiseAbs().maxCoeff(), 1e-12);
      EXPECT_LT((eq.null_basis.transpose() * eq.null_basis -
                 Eigen::MatrixXd::Identity(eq.null_basis.cols(), eq.null_basis.cols()))
                    .cwiseAbs()
                    .maxCoeff(),
                1e-12);
      EXPECT_LT((eq.null_basis.transpose() * eq.f0).cwiseAbs().maxCoeff(), 1e-10);
    }
}

TEST(Solver, TrivialCertificateAtZero) {
  const auto o = probe(DC::EA, 3, "ghz", NoiseKind::Local, 0.0);
  ASSERT_TRUE(o.feasible);
  EXPECT_LT(o.certificate->verification.system_residual, 1e-12);
  EXPECT_LT(o.certificate->verification.transfer_residual, 1e-12);
  EXPECT_GE(o.certificate->verification.worst_min_eigenvalue, -1e-9);
}

TEST(Solver, GhzThreeBracket) {
  EXPECT_TRUE(probe(DC::EA, 3, "ghz", NoiseKind::Local, 0.49).feasible);
  const auto high = probe(DC::EA, 3, "ghz", NoiseKind::Local, 0.60);
  EXPECT_FALSE(high.feasible);
  EXPECT_FALSE(high.certificate.has_value());
}

TEST(Verification, DetectsPerturbedF) {
  auto cert = *probe(DC::OneDetached, 3, "w", NoiseKind::Local, 0.5).certificate;
  ASSERT_TRUE(verify_certificate(cert).valid);
  cert.f.values[1] += 1e-3;
  const auto rep = verify_certificate(cert);
  EXPECT_FALSE(rep.valid);
  EXPECT_GT(rep.transfer_residual, 1e-8);
}

TEST(Verification, DetectsWrongQAndBadInput) {
  auto cert = *probe(DC::EA, 3, "ghz", NoiseKind::Global, 0.1).certificate;
  cert.q = 0.2;
  EXPECT_FALSE(verify_certificate(cert).valid);
  cert.q = 1.5;
  EXPECT_EQ(verify_certificate(cert).failure, "q outside [0, 1]");
  cert.q = 0.1;
  cert.f.profiles.pop_back();
  cert.f.values.pop_back();
  EXPECT_FALSE(verify_certificate(cert).valid);
  cert = *probe(DC::EA, 3, "ghz", NoiseKind::Global, 0.1).certificate;
  cert.state = "ghz-but-not";
  EXPECT_FALSE(verify_certificate(cert).valid);
}

TEST(CertificateIo, JsonRoundTrip) {
  const auto cert = *probe(DC::EA, 3, "ghz", NoiseKind::Local, 0.4).certificate;
  const auto back = certificate_from_json(to_json(cert));
  EXPECT_EQ(back.cls, cert.cls);
  EXPECT_EQ(back.n, cert.n);
  EXPECT_EQ(back.noise, cert.noise);
  EXPECT_EQ(back.q, cert.q);
  EXPECT_EQ(back.state, cert.state);
  EXPECT_EQ(back.f.profiles, cert.f.profiles);
  EXPECT_EQ(back.f.values, cert.f.values);
  EXPECT_EQ(back.verification.valid, cert.verification.valid);
  EXPECT_EQ(back.solver.method, cert.solver.method);
  EXPECT_TRUE(verify_certificate(back).valid);

  const auto path = (std::filesystem::temp_directory_path() / "dissoc_roundtrip.json").string();
  save_certificate(cert, path);
  EXPECT_EQ(load_certificate(path).f.values, cert.f.values);
  EXPECT_THROW(certificate_from_json(nlohmann::json{{"format", "dissoc-certificate"}}), std::runtime_error);
  EXPECT_THROW(load_certificate(path + ".missing"), std::runtime_error);
}

TEST(Threshold, GhzThreeLocalValueAndMonotonicity) {
  const auto r = max_threshold(DC::EA, 3, "ghz", NoiseKind::Local);
  ASSERT_EQ(r.status, ThresholdStatus::Ok);
  ASSERT_TRUE(r.certificate);
  EXPECT_EQ(r.certificate->q, r.q_star);
  EXPECT_NEAR(r.q_star, 0.490, 0.015);
  EXPECT_TRUE(r.certificate->verification.valid);
  EXPECT_TRUE(probe(DC::EA, 3, "ghz", NoiseKind::Local, r.q_star / 2).feasible);
  EXPECT_FALSE(probe(DC::EA, 3, "ghz", NoiseKind::Local, r.q_star + 2e-3).feasible);
}

TEST(Threshold, DedupDoesNotChangeTheValue) {
  SolverOptions on, off;
  off.dedup = false;
  for (const char* st : {"ghz", "w"})
    for (DC c : {DC::PairClusters, DC::HalfPlusSingles}) {
      const auto a = max_threshold(c, 4, st, NoiseKind::Global, on);
      const auto b = max_threshold(c, 4, st, NoiseKind::Global, off);
      EXPECT_NEAR(a.q_star, b.q_star, on.resolution) << st << " " << class_name(c);
      EXPECT_LT(a.certificate->solver.constraints, b.certificate->solver.constraints);
    }
}

TEST(Threshold, ClassOrderingFourQubits) {
  SolverOptions opt;
  for (const char* st : {"ghz", "w", "cluster"})
    for (auto noise : {NoiseKind::Local, NoiseKind::Global}) {
      const double ea = max_threshold(DC::EA, 4, st, noise, opt).q_star;
      const double dge = max_threshold(DC::OneDetached, 4, st, noise, opt).q_star;
      for (DC c : {DC::PairClusters, DC::HalfPlusSingles, DC::HalfClusters}) {
        const double v = max_threshold(c, 4, st, noise, opt).q_star;
        EXPECT_LE(ea, v + 1e-12) << st << " " << class_name(c);
        EXPECT_LE(v, dge + 2 * opt.resolution) << st << " " << class_name(c);
      }
    }
}

TEST(Threshold, MaximallyMixedInputIsAlwaysFeasible) {
  const auto r = max_threshold(DC::EA, 3, "mixed", NoiseKind::Local);
  EXPECT_EQ(r.q_star, 1.0);
  EXPECT_EQ(r.probes.size(), 2u);
}

TEST(Threshold, NothingAboveZeroIsGivingUp) {
  SolverOptions coarse;
  coarse.resolution = 0.9;  // probes 0, 1 and 0.5 only
  const auto r = max_threshold(DC::EA, 3, "ghz", NoiseKind::Local, coarse);
  EXPECT_EQ(r.status, ThresholdStatus::GaveUp);
  EXPECT_EQ(r.q_star, 0.0);
  EXPECT_EQ(r.probes.size(), 3u);
}
