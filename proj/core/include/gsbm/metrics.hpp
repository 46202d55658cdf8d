#pragma once

#include <cstdint>
#include <random>

#include "gsbm/partition.hpp"

namespace gsbm {

struct MetricConfig {
  /** Random size-matched references averaged by rnmi / rrnmi. */
  int samples = 100;
  std::uint64_t seed = 0;
};

/**
 * Normalized mutual information with natural logarithms,
 * NMI = 2 I(A; B) / (H(A) + H(B)), in [0, 1].
 *
 * Edge cases: if both partitions are single-block (H = 0 both) the
 * partitions are identical and NMI = 1; if exactly one is single-block,
 * I = 0 and NMI = 0. Throws SizeMismatchError if the partitions cover
 * different vertex counts, and SizeMismatchError for empty partitions.
 */
double nmi(const Partition& a, const Partition& b);

/**
 * A uniformly random partition with exactly the same community sizes as
 * `b`: a random permutation of the vertices is cut into consecutive
 * blocks of b's sizes.
 */
Partition sample_size_matched(const Partition& b, std::mt19937_64& rng);

/**
 * Reference-corrected NMI:
 * rnmi(A, B) = nmi(A, B) - E_C[nmi(A, C)] with C size-matched random
 * partitions (config.samples draws, draw t on the RNG stream derived from
 * (seed, 0, t) — the same streams the rrnmi numerator uses, so
 * rrnmi's numerator equals rnmi(planted, obtained) exactly). Near 0 for
 * structureless agreement; can be negative.
 */
double rnmi(const Partition& a, const Partition& b, const MetricConfig& config = {});

/**
 * Relative rNMI: rrnmi(planted, obtained) =
 * rnmi(planted, obtained) / rnmi(planted, planted). The numerator and
 * denominator use independent stream families derived from the same seed;
 * when `obtained` equals `planted` as a clustering the numerator reuses
 * the denominator streams, so rrnmi(A, A) == 1.0 exactly. Throws
 * DegenerateReferenceError when |rnmi(planted, planted)| < 1e-12.
 */
double rrnmi(const Partition& planted, const Partition& obtained,
             const MetricConfig& config = {});

}  // namespace gsbm
