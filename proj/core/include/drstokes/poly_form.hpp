#pragma once

#include <random>

#include "drstokes/exterior.hpp"
#include "drstokes/polynomial.hpp"

namespace drstokes {

using PolyForm = Form<Polynomial>;

inline PolyForm zero_poly_form(int n, int q) { return PolyForm(n, q, Polynomial(n)); }

/// Random form whose coefficients are polynomials of total degree <= max_degree
/// with small integer coefficients.
template <class Rng>
PolyForm random_poly_form(int n, int q, int max_degree, Rng& rng, int terms_per_coeff = 4) {
  std::uniform_int_distribution<int> coef(-5, 5);
  std::uniform_int_distribution<int> axis(0, n - 1);
  std::uniform_int_distribution<int> deg(0, max_degree);
  PolyForm f = zero_poly_form(n, q);
  for (std::size_t a = 0; a < f.size(); ++a) {
    Polynomial p(n);
    for (int t = 0; t < terms_per_coeff; ++t) {
      Polynomial::Exponents e(n, 0);
      const int d = deg(rng);
      for (int k = 0; k < d; ++k) ++e[axis(rng)];
      p.add_term(e, coef(rng));
    }
    f[a] = p;
  }
  return f;
}

}  // namespace drstokes
