#include <gtest/gtest.h>

#include "hitchin/parse.hpp"
#include "hitchin/picard.hpp"
#include "support.hpp"

using namespace hitchin;
using namespace hitchin::picard;
using hitchin::fixtures::uniform;

namespace {

CoeffNG C(const std::string& s) { return parse_coeff(s); }

BaseClass lam(const std::string& s) { return BaseClass::lambda(C(s)); }
BaseClass del(const std::string& s) { return BaseClass::delta(C(s)); }
BaseClass ph(const std::string& s) { return BaseClass::phi(C(s)); }

// Evaluates n only, keeping g symbolic.
BaseClass at_n(const BaseClass& x, long n) {
  BaseClass out;
  for (auto k : kBasis) out[k] = evaluate(x[k], "n", Rational(n));
  return out;
}

CoeffNG random_coeff() {
  CoeffNG c = coeff(fixtures::small_rational(4, 2));
  if (uniform(0, 1)) c = c + coeff(fixtures::small_rational(3, 1)) * var_n();
  if (uniform(0, 1)) c = c + coeff(fixtures::small_rational(3, 1)) * var_g() * var_n();
  return c;
}

BaseClass random_base() {
  return BaseClass::lambda(random_coeff()) + BaseClass::delta(random_coeff()) + BaseClass::phi(random_coeff());
}

// A random codimension-two class on the universal spectral curve.
CoverExpr random_cover_class() {
  CoverExpr out;
  for (int k = 0; k < 4; ++k) {
    CoverExpr piece;
    switch (uniform(0, 6)) {
      case 0: piece = CoverExpr::Psi() * CoverExpr::Psi(); break;
      case 1: piece = CoverExpr::Psi() * CoverExpr::pull(random_base()); break;
      case 2: piece = CoverExpr::Psi() * CoverExpr::B(); break;
      case 3: piece = CoverExpr::pull(random_base()) * CoverExpr::B(); break;
      case 4: piece = CoverExpr::B() * CoverExpr::B(); break;
      case 5: piece = CoverExpr::D(static_cast<Stratum>(uniform(0, 2))); break;
      default: piece = CoverExpr::pull(random_base()) * CoverExpr::pull(random_base()); break;
    }
    out = out + random_coeff() * piece;
  }
  return out;
}

FiberExpr random_fiber_class() {
  FiberExpr out;
  for (int k = 0; k < 3; ++k) {
    FiberExpr piece;
    switch (uniform(0, 2)) {
      case 0: piece = FiberExpr::psi() * FiberExpr::psi(); break;
      case 1: piece = FiberExpr::psi() * FiberExpr::pull(random_base()); break;
      default: piece = FiberExpr::pull(random_base()) * FiberExpr::pull(random_base()); break;
    }
    out = out + random_coeff() * piece;
  }
  return out;
}

}  // namespace

// --- universal curve ----------------------------------------------------------------

TEST(PushforwardBase, Rules) {
  EXPECT_EQ(pushforward_base(FiberExpr::psi() * FiberExpr::psi()), lam("12") + del("-1"));
  EXPECT_EQ(pushforward_base(FiberExpr::psi() * FiberExpr::pull(BaseClass::phi())), ph("2*g - 2"));
  EXPECT_TRUE(pushforward_base(FiberExpr::pull(BaseClass::lambda()) * FiberExpr::pull(BaseClass::phi())).is_zero());
  EXPECT_THROW(pushforward_base(FiberExpr::psi()), CodimensionError);
  FiberExpr two = FiberExpr::psi() * FiberExpr::psi();
  EXPECT_THROW(two * FiberExpr::psi(), CodimensionError);
}

TEST(ClassOfB, Pushforwards) {
  EXPECT_EQ(class_of_B().degree(), 1u);
  EXPECT_EQ(pushforward_base(FiberExpr::psi() * class_of_B()), closed_form::psi_B());
  EXPECT_EQ(pushforward_base(FiberExpr::pull(BaseClass::phi()) * class_of_B()), ph("2*n^2*g - 2*n^2 - 2*n*g + 2*n"));
}

TEST(PushforwardBase, Linearity) {
  for (int k = 0; k < 40; ++k) {
    FiberExpr x = random_fiber_class(), y = random_fiber_class();
    CoeffNG a = random_coeff(), b = random_coeff();
    EXPECT_EQ(pushforward_base(a * x + b * y), a * pushforward_base(x) + b * pushforward_base(y));
  }
}

// --- universal spectral curve --------------------------------------------------------

TEST(StrataInstances, Weights) {
  auto n = var_n();
  const CoverExpr Psi = CoverExpr::Psi(), B = CoverExpr::B(), phi = CoverExpr::pull(BaseClass::phi());
  CoeffNG m = (n - coeff(2)) * (n - coeff(3));
  EXPECT_EQ(stratum_instance(Stratum::maxwell), m * ((Psi - phi) * B));
  EXPECT_EQ(stratum_instance(Stratum::caustic), (n - coeff(2)) * ((Psi - phi) * B));
  EXPECT_EQ(stratum_instance(Stratum::boundary), ((n + coeff(1)) * Psi - n * phi) * B);
}

TEST(PushforwardCover, Examples) {
  EXPECT_EQ(pushforward_cover(CoverExpr::Psi() * CoverExpr::B()), closed_form::psi_B());
  EXPECT_EQ(pushforward_cover(stratum_instance(Stratum::boundary)),
            C("n^2 - n") * (C("n + 1") * mumford() - ph("4*n*g + 2*g - 4*n - 2")));
  EXPECT_EQ(pushforward_cover(stratum_instance(Stratum::caustic)), C("n^3 - 3*n^2 + 2*n") * (mumford() - ph("4*g - 4")));
}

TEST(PushforwardCover, Linearity) {
  for (int k = 0; k < 40; ++k) {
    CoverExpr x = random_cover_class(), y = random_cover_class();
    CoeffNG a = random_coeff(), b = random_coeff();
    EXPECT_EQ(pushforward_cover(a * x + b * y), a * pushforward_cover(x) + b * pushforward_cover(y));
  }
}

// pull(alpha) against a divisor X pushes forward to deg(X / base) * alpha.
TEST(PushforwardCover, ProjectionFormula) {
  const CoeffNG n = var_n();
  const CoeffNG two_g_2 = C("2*g - 2");
  for (int k = 0; k < 20; ++k) {
    BaseClass a = random_base(), b = random_base();
    CoeffNG s = random_coeff();
    // degree of Bh over the base: fiber degree of B = n(n - 1)(2g - 2)
    EXPECT_EQ(pushforward_cover(CoverExpr::pull(a) * CoverExpr::B()), (n * (n - coeff(1)) * two_g_2) * a);
    // degree of Psi over the base: n sheets of degree 2g - 2
    EXPECT_EQ(pushforward_cover(CoverExpr::pull(a) * CoverExpr::Psi()), (n * two_g_2) * a);
    EXPECT_TRUE(pushforward_cover(CoverExpr::pull(a) * CoverExpr::pull(b)).is_zero());
    // linear in alpha
    EXPECT_EQ(pushforward_cover(CoverExpr::pull(a + s * b) * CoverExpr::B()),
              pushforward_cover(CoverExpr::pull(a) * CoverExpr::B()) + s * pushforward_cover(CoverExpr::pull(b) * CoverExpr::B()));
  }
  // Psi^2 pushes forward along n sheets.
  EXPECT_EQ(pushforward_cover(CoverExpr::Psi() * CoverExpr::Psi()), n * mumford());
}

TEST(PushforwardCover, NormalFormAndCodimension) {
  const MPoly bb = CoverExpr::B().poly() * CoverExpr::B().poly();
  CoverExpr raw = CoverExpr::raw(bb);
  EXPECT_FALSE(raw.is_normal());
  EXPECT_THROW(pushforward_cover(raw), CodimensionError);
  EXPECT_TRUE(raw.normalized().is_normal());
  EXPECT_EQ(pushforward_cover(raw.normalized()), derive_B_self_intersection());
  EXPECT_THROW(CoverExpr::Psi() * CoverExpr::D(Stratum::boundary), CodimensionError);
  EXPECT_THROW(pushforward_cover(CoverExpr::Psi()), CodimensionError);
}

// --- derived classes --------------------------------------------------------------------

TEST(StrataClasses, TotalDiscriminant) {
  auto s = derive_strata_classes();
  EXPECT_EQ(s.DW, closed_form::total_discriminant());
  EXPECT_EQ(s.DW, s.Db + coeff(2) * s.Dm + coeff(3) * s.Dc);
}

TEST(StrataClasses, Components) {
  auto s = derive_strata_classes();
  EXPECT_EQ(s.Db, closed_form::boundary());
  EXPECT_EQ(s.Dm, C("1/2*n^4 - 3*n^3 + 11/2*n^2 - 3*n") * (mumford() - ph("4*g - 4")));
  EXPECT_EQ(s.Dc, closed_form::caustic(-1));
  EXPECT_EQ(specialize(s.Dc, 3, 2), coeff(6) * (lam("12") + del("-1") + ph("-4")));
}

TEST(StrataClasses, SwappedBoundaryWeightsBreakTheTotal) {
  auto s = derive_strata_classes();
  BaseClass swapped = pushforward_cover(closed_form::boundary_instance_swapped());
  EXPECT_FALSE(swapped + coeff(2) * s.Dm + coeff(3) * s.Dc == closed_form::total_discriminant());
}

TEST(SelfIntersection, ClosedForm) {
  EXPECT_EQ(derive_B_self_intersection(), closed_form::B_self_intersection());
  auto s = derive_strata_classes();
  BaseClass at2 = at_n(derive_B_self_intersection(), 2);
  EXPECT_EQ(at2, -(mumford() - ph("2*g - 2")) + Rational(1, 2) * at_n(s.Db, 2));
  BaseClass x = specialize(derive_B_self_intersection(), 3, 2);
  BaseClass dbdc = specialize(s.Db + s.Dc, 3, 2);
  EXPECT_EQ(x[Basis::lambda], coeff(-36) + Rational(1, 2) * dbdc[Basis::lambda]);
}

TEST(OmegaSquared, ClosedForm) {
  BaseClass w = derive_omega_squared();
  EXPECT_EQ(w, closed_form::omega_squared());
  EXPECT_TRUE(w[Basis::lambda_hat].is_zero());
  // without the ramification divisor only n copies of psi^2 remain
  EXPECT_EQ(pushforward_cover(CoverExpr::Psi() * CoverExpr::Psi()), var_n() * mumford());
}

TEST(HodgeHat, ClosedForm) {
  BaseClass h = derive_hodge_hat();
  EXPECT_EQ(h, closed_form::hodge_hat());
  EXPECT_EQ(h[Basis::lambda], C("2*n^3 - n"));
  EXPECT_EQ(at_n(h, 1), BaseClass::lambda());
  EXPECT_EQ(specialize(h, 3, 2), lam("51") + del("-4") + ph("-13"));
}

TEST(HodgeHat, IntegerCoefficients) {
  BaseClass h = derive_hodge_hat();
  for (long n = 0; n <= 12; ++n)
    for (long g = 0; g <= 12; ++g) {
      BaseClass x = specialize(h, n, g);
      for (auto k : kBasis) EXPECT_EQ(x[k].constant_value().get_den(), 1) << "n=" << n << " g=" << g;
    }
}

TEST(HodgeHat, SolveRejectsNonInvertibleCoefficient) {
  EXPECT_THROW(solve_for_lambda_hat(BaseClass::lambda()), std::invalid_argument);
  EXPECT_THROW(solve_for_lambda_hat(BaseClass::lambda_hat(var_n())), std::invalid_argument);
}

// Specializing the pieces then combining equals combining then specializing.
TEST(Specialization, Coherence) {
  auto s = derive_strata_classes();
  BaseClass w = derive_omega_squared(), h = derive_hodge_hat();
  for (long n = 3; n <= 6; ++n)
    for (long g = 2; g <= 4; ++g) {
      auto sp = [&](const BaseClass& x) { return specialize(x, n, g); };
      EXPECT_EQ(sp(s.Db) + coeff(2) * sp(s.Dm) + coeff(3) * sp(s.Dc), sp(s.DW));
      EXPECT_EQ(sp(s.DW), sp(closed_form::total_discriminant()));
      EXPECT_EQ(Rational(1, 12) * (sp(w) + BaseClass::delta(coeff(n)) + sp(s.Db)), sp(h));
    }
}

// --- identity reports ----------------------------------------------------------------------

TEST(VerifyIdentity, Reports) {
  auto s = derive_strata_classes();
  auto ok = verify_identity(s.DW, closed_form::total_discriminant());
  EXPECT_TRUE(ok.equal);
  EXPECT_TRUE(ok.lines.empty());
  EXPECT_TRUE(verify_identity(derive_hodge_hat(), closed_form::hodge_hat()).equal);

  auto m = verify_identity(closed_form::maxwell(+1), s.Dm);
  EXPECT_FALSE(m.equal);
  EXPECT_EQ(m.diff, ph("4*n^4*g - 4*n^4 - 24*n^3*g + 24*n^3 + 44*n^2*g - 44*n^2 - 24*n*g + 24*n"));
  ASSERT_EQ(m.lines.size(), 1u);
  EXPECT_EQ(m.lines[0].rfind("phi: ", 0), 0u);

  auto c = verify_identity(closed_form::caustic(+1), s.Dc);
  EXPECT_EQ(c.diff, C("8*g - 8") * ph("n^3 - 3*n^2 + 2*n"));
}

TEST(BaseClassText, Printing) {
  EXPECT_EQ(to_string(BaseClass()), "0");
  EXPECT_EQ(to_string(lam("12") + del("-1")), "(12)*lambda + (-1)*delta");
}
