#pragma once

#include <iosfwd>

#include "json.hpp"
#include "povmlab/smearing.hpp"
#include "povmlab/sphere.hpp"

namespace povmlab {

using Json = nlohmann::ordered_json;

// Matrix wire format: {dim, re: row-major, im: row-major}. Doubles survive
// the round trip exactly (emitted with 17 significant digits).
Json matrix_to_json(const HermitianMatrix &a);
HermitianMatrix matrix_from_json(const Json &j);

// POVM wire format: {dim, N, elements: [matrix...]}.
Json povm_to_json(const FinitePovm &a);
FinitePovm povm_from_json(const Json &j);

// Kernel wire format: {L, N, rows: [[...], ...]}.
Json kernel_to_json(const MarkovKernel &k);
MarkovKernel kernel_from_json(const Json &j);

/// Sampled partition values as CSV: t, phi, f_1..f_N per grid node.
void write_partition_csv(const PartitionOfUnity &p, const SphereGrid &grid, std::ostream &out);

} // namespace povmlab
