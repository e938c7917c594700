#pragma once

#include <filesystem>
#include <string>

#include <nlohmann/json.hpp>

#include "slopegap/decay.hpp"
#include "slopegap/module.hpp"
#include "slopegap/newton.hpp"
#include "slopegap/regularization.hpp"
#include "slopegap/slope_split.hpp"

namespace slopegap {

using Json = nlohmann::ordered_json;

// Scalars are [v, u, R]: the value p^v * u known modulo p^{v+R}. Input may
// also be an integer or a rational string, read at the enclosing precision.
Json to_json(const PadicScalar& x);
PadicScalar scalar_from_json(const Json& j, int p, int precision);

// {"precision", optional "window", "terms": [[exponent, scalar], ...]}.
Json to_json(const LaurentSeries& x);
LaurentSeries series_from_json(const Json& j, const RingShape& shape, int default_precision);

Json to_json(const SeriesMatrix& m);
Json to_json(const SigmaNablaModule& m);
// Throws Error(Parse) naming the offending location.
SigmaNablaModule module_from_json(const Json& j);

Json to_json(const NamedCheck& c);
Json to_json(const DecayWitness& w);
Json to_json(const NewtonPolygon& np);
Json to_json(const ConstancyReport& r);
Json to_json(const SplitResult& s, const UnitRootResult& u);
Json to_json(const RegularizationResult& r);
Json to_json(const ExtensionResult& e);

// Throws Error(Io) or Error(Parse).
Json read_json_file(const std::filesystem::path& path);
// Two-space indentation and a trailing newline. Throws Error(Io).
void write_json_file(const std::filesystem::path& path, const Json& j);

}  // namespace slopegap
