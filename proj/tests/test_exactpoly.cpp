#include <gtest/gtest.h>

#include "germ/jetpoly.hpp"
#include "germ/milnor.hpp"
#include "germ/poly_parser.hpp"

using namespace germ;

namespace {

JetPolynomial P(const std::string& s, std::vector<std::string> vars) {
    return parse_poly(s, std::move(vars));
}

TEST(Rational, ParseAndNormalize) {
    Rational r = parse_rational("6/4");
    EXPECT_EQ(numerator(r), 3);
    EXPECT_EQ(denominator(r), 2);
    EXPECT_EQ(to_string(parse_rational("-10/5")), "-2");
    EXPECT_THROW(parse_rational("1/0"), ParseError);
    EXPECT_THROW(parse_rational("abc"), ParseError);
}

TEST(Monomial, GrlexOrder) {
    GrlexLess lt;
    Monomial one(2);
    Monomial x(std::vector<int>{1, 0}), y(std::vector<int>{0, 1});
    Monomial x2(std::vector<int>{2, 0}), xy(std::vector<int>{1, 1});
    EXPECT_TRUE(lt(one, x));
    EXPECT_TRUE(lt(y, x));  // same degree, lex on exponents
    EXPECT_TRUE(lt(x, xy));
    EXPECT_TRUE(lt(xy, x2));
    EXPECT_FALSE(lt(x2, xy));
}

TEST(Parser, QuadricTranscription) {
    auto [p, vars] = parse_poly_auto("x^2 + y^2 + z^2 + w^2");
    EXPECT_EQ(vars, (std::vector<std::string>{"x", "y", "z", "w"}));
    EXPECT_EQ(p.terms().size(), 4u);
    EXPECT_EQ(p.order(), 2);
    EXPECT_EQ(p.total_degree(), 2);
}

TEST(Parser, ExpandsProducts) {
    auto p = P("x^2+y^2+(z+w^3)*(z-w^3)", {"x", "y", "z", "w"});
    auto q = P("z^2-w^6+x^2+y^2", {"x", "y", "z", "w"});
    EXPECT_EQ(p, q);
    EXPECT_EQ(p.order(), 6);
}

TEST(Parser, SyntaxErrorPosition) {
    try {
        parse_poly_auto("x^2 + + y");
        FAIL() << "expected ParseError";
    } catch (const ParseError& e) {
        EXPECT_EQ(e.position, 6u);
    }
}

TEST(Parser, UnknownVariable) {
    EXPECT_THROW(P("x + q", {"x", "y"}), ParseError);
}

TEST(Parser, ZeroDenominator) {
    EXPECT_THROW(parse_poly_auto("1/0 * x"), ParseError);
}

TEST(Parser, RationalCoefficients) {
    auto p = P("3/2*x - 1/2*x", {"x"});
    auto q = P("x", {"x"});
    EXPECT_EQ(p, q);
}

TEST(Parser, LeadingMinus) {
    auto p = P("-x + (-y + x)", {"x", "y"});
    auto q = P("y", {"x", "y"});
    EXPECT_EQ(p + q, JetPolynomial(2, 1));
}

TEST(JetPoly, TruncationSemantics) {
    auto p = P("x + x^3 + x^5", {"x"});
    auto t = p.truncated(3);
    EXPECT_EQ(t.terms().size(), 2u);
    EXPECT_EQ(t.order(), 3);
    auto prod = (t * t);
    EXPECT_EQ(prod.order(), 3);
    EXPECT_EQ(prod, P("x^2", {"x"}).truncated(3));  // x^4 and beyond cut
}

TEST(JetPoly, DerivativeDropsOrder) {
    auto p = P("x^2*y", {"x", "y"}).with_order(6);
    auto d = p.derivative(0);
    EXPECT_EQ(d, P("2*x*y", {"x", "y"}).with_order(5));
    EXPECT_EQ(d.order(), 5);
}

TEST(Jacobian, Quadric) {
    auto W = P("x^2+y^2+z^2+w^2", {"x", "y", "z", "w"});
    auto J = jacobian_ideal(W);
    ASSERT_EQ(J.size(), 4u);
    EXPECT_EQ(J[0], P("2*x", {"x", "y", "z", "w"}).truncated(1));
    EXPECT_EQ(J[3], P("2*w", {"x", "y", "z", "w"}).truncated(1));
}

TEST(Jacobian, OneVariableCube) {
    auto W = P("x^3", {"x"});
    auto J = jacobian_ideal(W);
    ASSERT_EQ(J.size(), 1u);
    EXPECT_EQ(J[0], P("3*x^2", {"x"}).truncated(2));
}

TEST(Jacobian, Zero) {
    JetPolynomial z(3, 4);
    auto J = jacobian_ideal(z);
    ASSERT_EQ(J.size(), 3u);
    for (const auto& g : J) EXPECT_TRUE(g.is_zero());
}

TEST(Jacobian, RejectsNonvanishingConstant) {
    EXPECT_THROW(jacobian_ideal(P("1 + x^2", {"x"})), PreconditionError);
}

// Euler identity: for weighted-homogeneous W with weights w_i and total
// weight d, sum (w_i/d) x_i dW_i = W exactly.
TEST(JetPoly, EulerIdentity) {
    auto W = P("x^3 + y^4 + z^2 + w^2", {"x", "y", "z", "w"});
    std::vector<Rational> wts = {Rational(1, 3), Rational(1, 4), Rational(1, 2), Rational(1, 2)};
    JetPolynomial acc(4, kUnboundedOrder);
    for (std::size_t i = 0; i < 4; ++i) {
        Monomial xi(4);
        xi.e[i] = 1;
        acc += monomial_poly(xi, wts[i]) * W.with_order(kUnboundedOrder).derivative(i);
    }
    EXPECT_EQ(acc.truncated(4), W.truncated(4));
}

}  // namespace
