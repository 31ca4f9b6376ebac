#include <doctest.h>

#include "nonloc/scalar.hpp"

using namespace nonloc;

TEST_CASE("quad arithmetic is closed and exact") {
  const Quad s2 = Quad::sqrt2();
  CHECK((s2 * s2) == Quad(2));
  CHECK(((Quad(1) + s2) * (Quad(1) - s2)) == Quad(-1));

  // (2 + sqrt2)/8 summed over the four sign patterns of the CHSH table.
  const Quad plus(Rat(1, 4), Rat(1, 8));
  const Quad minus(Rat(1, 4), Rat(-1, 8));
  CHECK((plus + plus + minus + minus) == Quad(1));

  CHECK((Quad(Rat(3, 4), Rat(-5, 6)) / Quad(Rat(3, 4), Rat(-5, 6))) ==
        Quad(1));
}

TEST_CASE("quad ordering never rounds") {
  CHECK(Quad(Rat(0), Rat(2)) > Quad(2));       // 2 sqrt2 > 2
  CHECK(Quad(Rat(3, 2)) > Quad::sqrt2());      // 9/4 > 2
  CHECK(Quad(Rat(7, 5)) < Quad::sqrt2());      // 49/25 < 2
  CHECK(Quad(Rat(-1), Rat(1)).sign() == 1);    // sqrt2 - 1 > 0
  CHECK(Quad(Rat(1), Rat(-1)).sign() == -1);   // 1 - sqrt2 < 0
  CHECK(Quad(Rat(0), Rat(0)).sign() == 0);

  // Continued-fraction convergents straddle sqrt2 at distance ~1e-12 and
  // must still be resolved exactly.
  CHECK(Quad(Rat(665857, 470832), Rat(-1)).sign() == 1);
  CHECK(Quad(Rat(275807, 195025), Rat(-1)).sign() == -1);
}

TEST_CASE("quad string round-trip") {
  const Quad q(Rat(-3, 8), Rat(5, 12));
  CHECK(q.str() == "-3/8+5/12*sqrt2");
  CHECK(Quad::parse(q.str()) == q);
  CHECK(Quad::parse("1/8-1/4*sqrt2") == Quad(Rat(1, 8), Rat(-1, 4)));
  CHECK(Quad::parse("3/4") == Quad(Rat(3, 4)));
  CHECK(Quad::parse("-2") == Quad(-2));
  CHECK(Quad::parse("1/2*sqrt2") == Quad(Rat(0), Rat(1, 2)));
  CHECK(Quad(Rat(0), Rat(1)).str() == "0/1+1/1*sqrt2");
  CHECK_THROWS(Quad::parse("1/8+nonsense"));
}

TEST_CASE("scalar backend rules") {
  const Scalar e = Scalar::exact(1, 3);
  const Scalar f = Scalar::floating(0.25);

  CHECK((e + e).is_exact());
  CHECK((e * Scalar::sqrt2()).is_exact());
  CHECK_FALSE((e + f).is_exact());
  CHECK((e + f).to_double() == doctest::Approx(1.0 / 3 + 0.25));

  CHECK(e.equals(Scalar::exact(2, 6)));
  CHECK_FALSE(e.equals(Scalar::exact(1, 3) + Scalar::exact(1, 1000000)));
  CHECK(f.equals(Scalar::floating(0.25 + 1e-13)));
  CHECK_FALSE(f.equals(Scalar::floating(0.25 + 1e-9)));

  CHECK_THROWS(f.quad());
  CHECK_THROWS(f.to_backend(Backend::exact));
  CHECK(e.to_backend(Backend::floating).to_double() ==
        doctest::Approx(1.0 / 3));
}

TEST_CASE("complex arithmetic") {
  const Complex i(Scalar::exact(0), Scalar::exact(1));
  CHECK((i * i).equals(Complex::exact(-1)));
  const Complex z(Scalar::exact(1, 2), Scalar::exact(-1, 2));
  CHECK(z.norm2().equals(Scalar::exact(1, 2)));
  CHECK((z / z).equals(Complex::exact(1)));
  CHECK((z * z.conj()).equals(Complex(z.norm2())));
}
