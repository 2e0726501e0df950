/*
   Copyright 2026 The isocrystal authors

   Licensed under the Apache License, Version 2.0 (the "License");
   you may not use this file except in compliance with the License.
   You may obtain a copy of the License at

        http://www.apache.org/licenses/LICENSE-2.0

   Unless required by applicable law or agreed to in writing, software
   distributed under the License is distributed on an "AS IS" BASIS,
   WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
   See the License for the specific language governing permissions and
   limitations under the License.
*/

// Characteristic polynomials of tau-modules over finite fields, their
// Newton polygons at places, and the slope factorization over K((z)).

#ifndef ISOCRYSTAL_FROBENIUS_HPP
#define ISOCRYSTAL_FROBENIUS_HPP

#include <cstdint>
#include <vector>

#include "local_isocrystal.hpp"
#include "newton_polygon.hpp"
#include "place.hpp"
#include "ratfunc.hpp"
#include "tau_module.hpp"

namespace isoc {

using FqRat = RatFunc<FqElem>;
/// Global tau-module over GF(q^m)(t).
using GlobalModule = TauModule<FqRat>;
/// Monic polynomial in X with coefficients in F_q(t).
using CharPoly = Poly<FqRat>;
/// Monic polynomial in X with coefficients in K((z)).
using LocalPoly = Poly<Series<FqElem>>;

inline DifferenceRing global_ring(std::uint64_t q) { return {DifferenceRing::Kind::global, q, "F_q(t) (x) k"}; }

/// Rational function over GF(q^m) with all coefficients in `sub`, rewritten over `sub`.
FqRat descend(const FqRat& f, const FiniteField& sub);

/// The rm x rm matrix over F_q(t) of the F_q(t)-linear map tau on M, in the
/// basis u^a e_j (u the generator of GF(q^m)).
Matrix<FqRat> restriction_of_scalars(const GlobalModule& m);

/// P(X^k).
CharPoly substitute_power(const CharPoly& p, int k);

/// det_F(X - tau) computed on restriction_of_scalars.
CharPoly restricted_charpoly(const GlobalModule& m);

/// det(X - tau^m) descended to F_q(t). With `cross_check`, also verifies
/// char(X^m) = det_F(X - tau).
CharPoly charpoly_global(const GlobalModule& m, bool cross_check = true);

/// Slopes at a place from the root valuations of P: ord_p(lambda) = alpha m / d_p.
NewtonPolygon newton_at_place(const CharPoly& p, const Place& place, int m);

/// Coefficients expanded at a degree-1 place or infinity, modulo z^N.
LocalPoly localize_charpoly(const CharPoly& p, const Place& place, std::int64_t N);

struct SlopeFactor {
    Rational slope;  ///< root valuation times the scale
    LocalPoly factor;
};

/// P = prod P_alpha modulo z^N with each P_alpha pure; ascending slopes.
std::vector<SlopeFactor> slope_factorize(const LocalPoly& p, std::int64_t N, const Rational& scale = Rational(1));

struct FrobeniusStructure {
    GlobalModule module;
    Matrix<FqRat> frobenius;  ///< geometric Frobenius: the inverse of the matrix of tau^m
    CharPoly charpoly;
};

FrobeniusStructure frobenius_structure(const GlobalModule& m);

}  // namespace isoc

#endif
