#pragma once

#include <cstdint>
#include <random>

namespace wdro::rng {

/// Deterministic sampling layer. Every stochastic component of the library
/// draws through these functions so results are bit-reproducible across
/// platforms and compilers:
///
///  - engine: std::mt19937_64, whose output sequence is fixed by the C++
///    standard for a given seed;
///  - seed derivation: SplitMix64 (Steele, Lea & Flood 2014) applied to
///    base_seed + (stream_index + 1) * 0x9E3779B97F4A7C15;
///  - uniforms: top 53 bits of one engine draw, mapped into the open
///    interval (0,1);
///  - normals: inverse-CDF method using Wichura's AS 241 (PPND16)
///    approximation of the standard normal quantile, |error| < 1e-9;
///  - bounded integers: rejection sampling, no modulo bias.
///
/// None of std::uniform_int_distribution / std::normal_distribution are
/// used anywhere: their output is implementation-defined.

using engine = std::mt19937_64;

std::uint64_t splitmix64(std::uint64_t state);

/// Seed for an indexed substream (bootstrap replicate, simulation run, ...).
std::uint64_t derive_seed(std::uint64_t base_seed, std::uint64_t stream_index);

/// One engine draw mapped to (0,1), both endpoints excluded.
double uniform_open01(engine& eng);

/// Unbiased integer in [0, n), n >= 1.
std::uint64_t bounded(engine& eng, std::uint64_t n);

/// Standard normal quantile, Wichura's AS 241 (PPND16). p in (0,1).
double normal_inv_cdf(double p);

/// Standard normal density and CDF.
double normal_pdf(double z);
double normal_cdf(double z);

/// Gaussian draw via inverse CDF; consumes exactly one engine draw.
double normal(engine& eng, double mean, double stddev);

}  // namespace wdro::rng
