#pragma once

#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "streamspec/ep_word.hpp"
#include "streamspec/spec.hpp"
#include "streamspec/turing.hpp"

namespace streamspec {

// Outcome of a batch of checks; failures keep a short description each.
struct CheckTally {
  std::size_t cases = 0;
  std::vector<std::string> failures;

  bool ok() const { return failures.empty(); }
  void fail(std::string what);
  void merge(const CheckTally& other);
  std::string summary() const;
};

EpWord random_epword(std::mt19937_64& rng, std::size_t maxPrefix = 5, std::size_t maxPeriod = 4);

// zip_1(s) = s, zip_k(s)(2i) = s1(i), zip_k(s)(2i+1) = zip_{k-1}(s2..sk)(i),
// checked bitwise for i < positions.
CheckTally check_zip_law(const std::vector<EpWord>& streams, std::size_t positions);

// Properties of is_zeros, uhd, utl, natstr, nat and leq on the given words
// (leq on all ordered pairs).
CheckTally check_aux_lemmas(const std::vector<EpWord>& words);

// Rewriting and direct simulation agree on halting, output and step count.
CheckTally crosscheck_machine(const TuringMachine& m, const std::string& label,
                              const std::vector<std::uint64_t>& inputs, const std::vector<std::vector<EpWord>>& oracles,
                              std::uint64_t maxSteps = 2000);

// Randomized determinism, budget monotonicity and prefix coherence of the
// evaluator over the given specifications. Bits that are produced are also
// compared with the canonical model where it exists.
CheckTally check_engine_properties(const std::vector<Specification>& specs, std::size_t cases, std::uint64_t seed);

}  // namespace streamspec
