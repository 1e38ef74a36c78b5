#pragma once

// JSON encodings shared by the CLI and the tests.
//
// Scalars: {"p":7,"val":-1,"unit_digits":[1,0,3],"prec":32}, the value
// p^val * sum d_i p^i with the unit known to prec digits (base-p digits low
// first, trailing zeros optional). Zero known modulo p^k is val = k with no
// digits and prec 0. Readers also accept an integer or a "num/den" string.
// Unramified elements of degree a > 1 are arrays of a scalars in the power
// basis of the default modulus; degree 1 elements are bare scalars.

#include <string>

#include "json.hpp"
#include "slopelab/isocrystal.hpp"
#include "slopelab/kernels.hpp"
#include "slopelab/np_calculus.hpp"

namespace slopelab::json_io {

using Json = nlohmann::ordered_json;

Json to_json(const PadicNumber& x);
PadicNumber padic_from_json(const Json& j, long p, long prec = kDefaultPrecision);

Json to_json(const UnramifiedElement& x);
UnramifiedElement element_from_json(const Json& j, const UnramifiedContext::Ptr& ctx);

/// {"p":..,"a":..,"rank":..,"matrix":[[..],..]}, plus "sigma_power" when it
/// is not 1. Reading accepts an optional "prec" for bare integer entries.
Json to_json(const Isocrystal& m);
Isocrystal isocrystal_from_json(const Json& j, long prec = kDefaultPrecision);

/// Arrays of "num/den" strings; polygons as arrays of [t, v] string pairs.
Json to_json(const SlopeMultiset& m);
SlopeMultiset multiset_from_json(const Json& j);
Json to_json(const NewtonPolygon& f);

Json to_json(const kernels::SweepStats& s);

/// Runs an hn-check document:
///   {"p":5, "sweep":{"max_rank":5,"pool":[-2,-1,0,1,2]},
///    "cases":[{"isocrystal":{..},"filtration":[[1],[0,1]]}]}
/// Both keys are optional; a case without "filtration" is checked against
/// every coordinate filtration. The report carries "passed".
Json run_hn_check(const Json& doc, int jobs = 1, long prec = kDefaultPrecision);

/// Parses text, turning syntax errors into ParseError.
Json parse(const std::string& text);

}  // namespace slopelab::json_io
