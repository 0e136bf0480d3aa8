#pragma once

#include <optional>
#include <utility>
#include <vector>

#include "nefcert/cohomology.hpp"

namespace nefcert {

// Polynomial sum c(i, j) x^i z^j with i <= 3, j <= 2.
struct BiForm {
  static constexpr int kX = 3, kZ = 2;
  std::vector<Fq> c;

  BiForm() = default;
  explicit BiForm(const FiniteField* f) : c((kX + 1) * (kZ + 1), f->zero()) {}
  Fq at(int i, int j) const { return c[i * (kZ + 1) + j]; }
  Fq& at(int i, int j) { return c[i * (kZ + 1) + j]; }
  bool is_zero() const;
  BiForm d_dx() const;
  BiForm d_dz() const;
};

// C -> P^1 x P^1 by (x, z), with |K| = <1, x> and |A| = <1, z>.
struct EmbeddingData {
  Curve curve;
  Divisor a_div;
  FunctionElement z;
  BiForm form;  // F(x, z) = 0 on C, normalized
  std::vector<FunctionElement> k_basis;
  std::vector<FunctionElement> a_basis;
};

EmbeddingData embed_bidegree_2_3(const Curve& c, const Divisor& a_div);
FunctionElement evaluate_form(const EmbeddingData& e, const BiForm& g);
// Degrees of the two rulings restricted to C: (z-ruling, x-ruling) = (3, 2).
std::pair<long, long> ruling_degrees(const EmbeddingData& e);
// Degrees of the summands of TX restricted to C.
std::pair<long, long> tangent_degrees(const EmbeddingData& e);
// 6 infinity + 2 A: poles allowed for forms of bidegree (3, 2).
Divisor form_pole_divisor(const EmbeddingData& e);

struct NormalBundle {
  BiForm aux;
  FunctionElement g;  // aux restricted to C
  Divisor n_div;      // div(g) + 6 infinity + 2 A, effective of degree 12
};

NormalBundle normal_bundle_divisor(const EmbeddingData& e, const BiForm& aux);
NormalBundle random_normal_bundle(const EmbeddingData& e, Rng& rng);

// Global splitting v0 = a(x) d/dx + b(z) d/dz (deg a, b <= 2), and the local
// preference between the two coordinate fields where v0 fails.
struct SplittingChoice {
  Poly a;
  Poly b;
  bool prefer_x = false;

  static SplittingChoice standard(const FiniteField* f);
};

// Class of 0 -> TC -> TX|C -> N -> 0 in H^1(C, O(-(N0 + div dx))), N0 = 6 infinity + 2 A.
TailClass beta_class(const EmbeddingData& e, const SplittingChoice& choice);

// Serre-dual functional on L(N_div + 2K).
struct BetaFunctional {
  RRSpace space;
  Vec values;

  bool is_zero() const { return vec_is_zero(values); }
  Fq evaluate(const FunctionElement& s) const;
  Fq evaluate_coords(const Vec& v) const;
};

BetaFunctional beta_functional(const EmbeddingData& e, const NormalBundle& n, const SplittingChoice& choice);
BetaFunctional beta_functional(const EmbeddingData& e, const NormalBundle& n);
// True if beta does not vanish identically on L(N_div + 2K - B).
bool beta_nonzero_on(const BetaFunctional& beta, const Divisor& b);

struct DeltaChoice {
  FunctionElement delta;
  Divisor d;  // div(delta) + N_div - rep(L): twelve distinct rational places
};

std::optional<DeltaChoice> choose_delta(const EmbeddingData& e, const NormalBundle& n, const PTorsionBundle& l, Rng& rng,
                                        int tries);

// Unique (up to scalar) section of K + L.
FunctionElement alpha_section(const Curve& c, const PTorsionBundle& l);

Fq obstruction_scalar(const BetaFunctional& beta, const FunctionElement& delta, const Differential& gamma,
                      const FunctionElement& alpha);

// Rank of the multiplication map L(D1) x L(D2) -> L(D1 + D2) and the span of its image.
struct ProductImage {
  size_t rank = 0;
  size_t target_dim = 0;
  std::vector<Vec> span;  // row-reduced coordinates in rr_space(D1 + D2)
};

ProductImage multiplication_image(const Curve& c, const Divisor& d1, const Divisor& d2);

bool twelve_distinct_rational(const Divisor& d);

}  // namespace nefcert
